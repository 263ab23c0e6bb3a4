"""Scalars, 4x4 vertex matrices, triple-space embeddings and YBE residuals.

Two scalar realizations are supported:

* ``"rational"``: entries are :class:`fractions.Fraction` (exact, arbitrary precision);
* ``"complex"``: entries are Python :class:`complex` (approximate, tolerance based).

Plain ``int`` entries are neutral and adopt the realization of the other
entries. Mixing ``Fraction`` with ``float``/``complex`` raises
:class:`ScalarMixError`.

Double-index convention for a 4x4 vertex matrix ``R^{ij}_{kl}``: the row is
``2(i-1) + (j-1)`` and the column ``2(k-1) + (l-1)``, i.e. the left index
selects the 2x2 block.
"""
from __future__ import annotations

import cmath
import itertools
import math
import numbers
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

RATIONAL = "rational"
COMPLEX = "complex"
DEFAULT_TOL = 1e-10


class YangBaxterError(Exception):
    """Base class for errors raised by this package."""


class ScalarMixError(YangBaxterError, TypeError):
    pass


class SingularMatrixError(YangBaxterError, ArithmeticError):
    pass


class ConstraintError(YangBaxterError, ValueError):
    """A family constraint or non-degeneracy condition is violated."""

    def __init__(self, message: str, relation: str | None = None, residual=None):
        super().__init__(message)
        self.relation = relation
        self.residual = residual


class NoExactRootError(YangBaxterError, ValueError):
    pass


class DegenerateWarning(UserWarning):
    """Parameters sit on a degenerate stratum of a family."""


# ---------------------------------------------------------------------------
# scalars


def scalar_mode(value) -> str | None:
    """Realization of a single value; ``None`` for plain integers."""
    if isinstance(value, bool) or isinstance(value, int):
        return None
    if isinstance(value, Fraction):
        return RATIONAL
    if isinstance(value, numbers.Integral):
        return None
    if isinstance(value, numbers.Complex):
        return COMPLEX
    raise TypeError(f"not a scalar: {value!r}")


def common_mode(values: Iterable, mode: str | None = None) -> str:
    seen = {mode} if mode else set()
    for v in values:
        m = scalar_mode(v)
        if m:
            seen.add(m)
    if len(seen) > 1:
        raise ScalarMixError("cannot mix exact rationals with approximate complex scalars")
    return seen.pop() if seen else RATIONAL


def to_scalar(value, mode: str):
    if mode == RATIONAL:
        if isinstance(value, Fraction):
            return value
        if isinstance(value, numbers.Integral):
            return Fraction(int(value))
        raise ScalarMixError(f"{value!r} is not exact")
    return complex(value)


def as_scalars(*values, mode: str | None = None):
    """Coerce values into one realization; floats promote everything to complex.

    Unlike matrix construction this is lenient: an explicit Fraction next to a
    float is converted, because family parameters are often mixed on input.
    """
    if mode is None:
        mode = RATIONAL
        for v in values:
            if scalar_mode(v) == COMPLEX:
                mode = COMPLEX
                break
    if mode == COMPLEX:
        return mode, tuple(complex(v) for v in values)
    return mode, tuple(to_scalar(v, RATIONAL) for v in values)


def is_zero(value, tol: float | None = None) -> bool:
    if isinstance(value, complex) or isinstance(value, float):
        return abs(value) <= (DEFAULT_TOL if tol is None else tol)
    return value == 0


def exact_sqrt(value: Fraction) -> Fraction:
    value = Fraction(value)
    if value < 0:
        raise NoExactRootError(f"{value} has no real rational square root")
    n, d = math.isqrt(value.numerator), math.isqrt(value.denominator)
    if n * n != value.numerator or d * d != value.denominator:
        raise NoExactRootError(f"{value} is not a perfect square")
    return Fraction(n, d)


def sqrt(value):
    """Principal square root; exact for perfect rational squares, else an error."""
    if isinstance(value, (complex, float)):
        return cmath.sqrt(value)
    return exact_sqrt(value)


def format_scalar(value) -> str:
    if isinstance(value, Fraction):
        return str(value)
    value = complex(value)
    if value.imag == 0:
        return repr(value.real)
    return repr(value)


# ---------------------------------------------------------------------------
# matrices


class Matrix:
    """Immutable square matrix over one scalar realization."""

    __slots__ = ("_rows", "_mode", "_n", "_hash")

    def __init__(self, rows: Sequence[Sequence], mode: str | None = None):
        rows = [list(r) for r in rows]
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise ValueError("matrix must be square and non-empty")
        mode = common_mode(itertools.chain.from_iterable(rows), mode)
        self._rows = tuple(tuple(to_scalar(v, mode) for v in r) for r in rows)
        self._mode = mode
        self._n = n
        self._hash = None

    @classmethod
    def _raw(cls, rows, mode, n):
        m = object.__new__(cls)
        m._rows = rows
        m._mode = mode
        m._n = n
        m._hash = None
        return m

    @classmethod
    def identity(cls, n: int, mode: str = RATIONAL) -> "Matrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)], mode)

    @classmethod
    def zeros(cls, n: int, mode: str = RATIONAL) -> "Matrix":
        return cls([[0] * n for _ in range(n)], mode)

    @classmethod
    def diag(cls, *values, mode: str | None = None) -> "Matrix":
        n = len(values)
        return cls([[values[i] if i == j else 0 for j in range(n)] for i in range(n)], mode)

    @property
    def mode(self) -> str:
        return self._mode

    @property
    def n(self) -> int:
        return self._n

    @property
    def rows(self) -> tuple:
        return self._rows

    def __getitem__(self, rc):
        r, c = rc
        return self._rows[r][c]

    def at(self, i: int, j: int, k: int, l: int):
        """Entry ``R^{ij}_{kl}`` of a 4x4 matrix, indices in {1, 2}."""
        return self._rows[2 * (i - 1) + (j - 1)][2 * (k - 1) + (l - 1)]

    def entries(self) -> list:
        return [v for r in self._rows for v in r]

    def tolist(self) -> list:
        return [list(r) for r in self._rows]

    def __iter__(self):
        return iter(self._rows)

    def __repr__(self):
        body = "; ".join(", ".join(format_scalar(v) for v in r) for r in self._rows)
        return f"Matrix([{body}], mode={self._mode!r})"

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self._mode == other._mode and self._rows == other._rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._mode, self._rows))
        return self._hash

    def _check(self, other: "Matrix"):
        if self._mode != other._mode:
            raise ScalarMixError(f"{self._mode} matrix combined with {other._mode} matrix")
        if self._n != other._n:
            raise ValueError(f"shape mismatch: {self._n} vs {other._n}")

    def _coerce_scalar(self, c):
        m = scalar_mode(c)
        if m and m != self._mode:
            raise ScalarMixError(f"{m} scalar combined with {self._mode} matrix")
        return to_scalar(c, self._mode)

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        rows = tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self._rows, other._rows))
        return Matrix._raw(rows, self._mode, self._n)

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        rows = tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self._rows, other._rows))
        return Matrix._raw(rows, self._mode, self._n)

    def __neg__(self) -> "Matrix":
        return Matrix._raw(tuple(tuple(-a for a in r) for r in self._rows), self._mode, self._n)

    def scale(self, c) -> "Matrix":
        c = self._coerce_scalar(c)
        return Matrix._raw(tuple(tuple(c * a for a in r) for r in self._rows), self._mode, self._n)

    def __mul__(self, c):
        if isinstance(c, Matrix):
            return NotImplemented
        return self.scale(c)

    __rmul__ = __mul__

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        n = self._n
        zero = to_scalar(0, self._mode)
        cols = other._rows
        out = []
        for r in self._rows:
            acc = [zero] * n
            for k, a in enumerate(r):
                if a:
                    row_k = cols[k]
                    for j in range(n):
                        b = row_k[j]
                        if b:
                            acc[j] += a * b
            out.append(tuple(acc))
        return Matrix._raw(tuple(out), self._mode, n)

    @property
    def T(self) -> "Matrix":
        return Matrix._raw(tuple(zip(*self._rows)), self._mode, self._n)

    def to_complex(self) -> "Matrix":
        if self._mode == COMPLEX:
            return self
        return Matrix._raw(tuple(tuple(complex(v) for v in r) for r in self._rows), COMPLEX, self._n)

    def max_abs(self):
        """Largest entry magnitude (a Fraction in rational mode)."""
        return max(abs(v) for r in self._rows for v in r)

    def is_zero(self, tol: float | None = None) -> bool:
        if self._mode == RATIONAL:
            return all(v == 0 for r in self._rows for v in r)
        return self.max_abs() <= (DEFAULT_TOL if tol is None else tol)

    def det(self):
        return _eliminate(self, want_inverse=False)[0]

    def inverse(self, tol: float | None = None) -> "Matrix":
        det, inv = _eliminate(self, want_inverse=True, tol=tol)
        return inv


def _eliminate(m: Matrix, want_inverse: bool, tol: float | None = None):
    """Gauss-Jordan elimination with partial pivoting (largest magnitude)."""
    n = m.n
    exact = m.mode == RATIONAL
    zero, one = to_scalar(0, m.mode), to_scalar(1, m.mode)
    a = [list(r) + ([one if i == j else zero for j in range(n)] if want_inverse else []) for i, r in enumerate(m.rows)]
    scale = max(abs(v) for r in m.rows for v in r) or 1
    det = one
    for col in range(n):
        piv = max(range(col, n), key=lambda r: abs(a[r][col]))
        p = a[piv][col]
        if p == 0 or (not exact and abs(p) <= 1e-14 * scale):
            if want_inverse:
                raise SingularMatrixError("matrix is singular")
            return zero, None
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= p
        row = [v / p for v in a[col]]
        a[col] = row
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], row)]
    if not want_inverse:
        return det, None
    inv = tuple(tuple(r[n:]) for r in a)
    return det, Matrix._raw(inv, m.mode, n)


# ---------------------------------------------------------------------------
# tensor structure


class Triplet(NamedTuple):
    """Ordered ``(A, B, C)``; need not solve the Yang-Baxter equation."""

    A: Matrix
    B: Matrix
    C: Matrix

    @property
    def mode(self) -> str:
        if not (self.A.mode == self.B.mode == self.C.mode):
            raise ScalarMixError("triplet mixes scalar realizations")
        return self.A.mode

    def map(self, f) -> "Triplet":
        return Triplet(f(self.A), f(self.B), f(self.C))

    def to_complex(self) -> "Triplet":
        return self.map(Matrix.to_complex)


def kron(m: Matrix, n: Matrix) -> Matrix:
    """Kronecker product; ``(M (x) N)[a*p + b, c*p + d] = M[a, c] * N[b, d]``."""
    if m.mode != n.mode:
        raise ScalarMixError(f"{m.mode} matrix combined with {n.mode} matrix")
    p = n.n
    size = m.n * p
    rows = []
    for a in range(m.n):
        for b in range(p):
            rows.append(tuple(m[a, c] * n[b, d] for c in range(m.n) for d in range(p)))
    return Matrix._raw(tuple(rows), m.mode, size)


PAIRS = (12, 13, 23)


def embed(m: Matrix, pair: int) -> Matrix:
    """Act with a 4x4 matrix on factors ``pair`` of V (x) V (x) V, identity on the third."""
    if m.n != 4:
        raise ValueError("embed expects a 4x4 vertex matrix")
    if pair not in PAIRS:
        raise ValueError(f"pair must be one of {PAIRS}, got {pair!r}")
    zero = to_scalar(0, m.mode)
    rows = []
    for i1, i2, i3 in itertools.product((0, 1), repeat=3):
        row = []
        for j1, j2, j3 in itertools.product((0, 1), repeat=3):
            if pair == 12:
                v = m[2 * i1 + i2, 2 * j1 + j2] if i3 == j3 else zero
            elif pair == 13:
                v = m[2 * i1 + i3, 2 * j1 + j3] if i2 == j2 else zero
            else:
                v = m[2 * i2 + i3, 2 * j2 + j3] if i1 == j1 else zero
            row.append(v)
        rows.append(tuple(row))
    return Matrix._raw(tuple(rows), m.mode, 8)


def ybe_residual(t: Triplet) -> Matrix:
    """``A12 B13 C23 - C23 B13 A12`` as an 8x8 matrix."""
    a, b, c = t
    a._check(b)
    a._check(c)
    a12, b13, c23 = embed(a, 12), embed(b, 13), embed(c, 23)
    return a12 @ b13 @ c23 - c23 @ b13 @ a12


def constant_ybe_residual(r: Matrix) -> Matrix:
    return ybe_residual(Triplet(r, r, r))


def residual_norm(t: Triplet):
    return ybe_residual(t).max_abs()


def solves_ybe(t: Triplet, tol: float | None = None) -> bool:
    return ybe_residual(t).is_zero(tol)


def permutation_matrix(mode: str = RATIONAL) -> Matrix:
    """The swap ``P^{ij}_{kl} = delta^i_l delta^j_k``."""
    return Matrix([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], mode)


# ---------------------------------------------------------------------------
# projective comparison


def _pivot(values: Sequence, exact: bool) -> int:
    if exact:
        for i, v in enumerate(values):
            if v != 0:
                return i
        return -1
    mags = [abs(v) for v in values]
    top = max(mags)
    return mags.index(top) if top > 0 else -1


def projective_eq(m: Matrix, n: Matrix, tol: float | None = None) -> bool:
    """True iff ``m = c * n`` for some nonzero scalar ``c``."""
    m._check(n)
    x, y = m.entries(), n.entries()
    exact = m.mode == RATIONAL
    p = _pivot(x, exact)
    q = _pivot(y, exact)
    if p < 0 and q < 0:
        raise ValueError("projective class of the zero matrix is undefined")
    if p < 0 or q < 0:
        return False
    if exact:
        return all(a * y[p] == b * x[p] for a, b in zip(x, y))
    tol = DEFAULT_TOL if tol is None else tol
    if abs(y[p]) <= tol * abs(x[p]):
        return False
    xp, yp = x[p], y[p]
    return all(abs(a / xp - b / yp) <= tol for a, b in zip(x, y))


def projective_distance(m: Matrix, n: Matrix) -> float:
    """Max entrywise gap after normalizing both matrices at ``m``'s largest entry."""
    m._check(n)
    x, y = m.to_complex().entries(), n.to_complex().entries()
    p = _pivot(x, False)
    if p < 0 or y[p] == 0:
        return math.inf
    return max(abs(a / x[p] - b / y[p]) for a, b in zip(x, y))


def triplet_projective_eq(s: Triplet, t: Triplet, tol: float | None = None) -> bool:
    """Componentwise projective equality (each slot up to its own factor)."""
    return all(projective_eq(a, b, tol) for a, b in zip(s, t))


def triplet_projective_distance(s: Triplet, t: Triplet) -> float:
    return max(projective_distance(a, b) for a, b in zip(s, t))
