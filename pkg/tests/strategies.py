"""Shared hypothesis strategies."""
from fractions import Fraction

from hypothesis import strategies as st

from yangbax.core import Matrix, RATIONAL, Triplet

small_ints = st.integers(min_value=-9, max_value=9)
nonzero_ints = small_ints.filter(lambda n: n != 0)
fractions = st.builds(Fraction, small_ints, st.integers(min_value=1, max_value=5))


def matrices(n=4, elements=fractions, mode=RATIONAL):
    return st.lists(st.lists(elements, min_size=n, max_size=n), min_size=n, max_size=n).map(
        lambda rows: Matrix(rows, mode)
    )


def nonsingular_matrices(n=4):
    return matrices(n).filter(lambda m: m.det() != 0)


def eight_vertex_form(elements=nonzero_ints):
    def make(xs):
        x1, x2, x3, x4, x5, x6 = xs
        return Matrix([[x1, 0, 0, x3], [0, x2, x4, 0], [0, x5, x2, 0], [x6, 0, 0, x1]], RATIONAL)

    return st.lists(elements, min_size=6, max_size=6).map(make)


def six_vertex_form(elements=small_ints):
    def make(xs):
        a, b, c, d, e, f = xs
        return Matrix([[a, 0, 0, 0], [0, b, e, 0], [0, f, c, 0], [0, 0, 0, d]], RATIONAL)

    return st.lists(elements, min_size=6, max_size=6).map(make)


def triplets(inner):
    return st.tuples(inner, inner, inner).map(lambda t: Triplet(*t))




def _sl2(t):
    a, b, c = t
    return Matrix([[a, b], [c, Fraction(1 + b * c, a)]], RATIONAL)


sl2 = st.tuples(fractions.filter(bool), fractions, fractions).map(_sl2)
