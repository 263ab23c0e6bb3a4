"""JSON serialization of triplets.

Rationals are written as ``"p/q"`` strings and complex numbers as
``[re, im]`` pairs of float64, so rational documents round-trip exactly.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .core import COMPLEX, RATIONAL, Matrix, Triplet

FORMAT_VERSION = "1"


class DocumentError(ValueError):
    pass


def encode_scalar(value):
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, int):
        return f"{value}/1"
    value = complex(value)
    return [value.real, value.imag]


def decode_scalar(raw, mode: str):
    if mode == RATIONAL:
        if not isinstance(raw, str):
            raise DocumentError(f"rational entries must be 'p/q' strings, got {raw!r}")
        try:
            return Fraction(raw)
        except (ValueError, ZeroDivisionError) as exc:
            raise DocumentError(f"bad rational {raw!r}: {exc}") from None
    if isinstance(raw, list) and len(raw) == 2 and all(isinstance(x, (int, float)) for x in raw):
        return complex(float(raw[0]), float(raw[1]))
    if isinstance(raw, (int, float)) and not isinstance(raw, bool):
        return complex(float(raw), 0.0)
    raise DocumentError(f"complex entries must be [re, im] pairs, got {raw!r}")


def _plain(value):
    """Provenance values as JSON: exact numbers as strings, floats as floats."""
    if isinstance(value, (Fraction, int)) and not isinstance(value, bool):
        return str(value)
    if isinstance(value, complex):
        return value.real if value.imag == 0 else [value.real, value.imag]
    return value


@dataclass
class TripletDocument:
    triplet: Triplet
    provenance: dict | None = None
    format_version: str = FORMAT_VERSION
    extra: dict = field(default_factory=dict)

    @property
    def scalar_mode(self) -> str:
        return self.triplet.mode

    def to_dict(self) -> dict:
        out = {
            "format_version": self.format_version,
            "scalar_mode": self.scalar_mode,
            "matrices": {
                name: [[encode_scalar(x) for x in row] for row in m.rows]
                for name, m in zip("ABC", self.triplet)
            },
        }
        if self.provenance is not None:
            out["provenance"] = {
                "family": self.provenance.get("family"),
                "parameters": {k: _plain(v) for k, v in self.provenance.get("parameters", {}).items()},
            }
        out.update(self.extra)
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @classmethod
    def from_dict(cls, data: dict) -> "TripletDocument":
        if not isinstance(data, dict):
            raise DocumentError("document must be a JSON object")
        version = str(data.get("format_version", ""))
        if version != FORMAT_VERSION:
            raise DocumentError(f"unsupported format_version {version!r}")
        mode = data.get("scalar_mode")
        if mode not in (RATIONAL, COMPLEX):
            raise DocumentError(f"scalar_mode must be 'rational' or 'complex', got {mode!r}")
        mats = data.get("matrices")
        if not isinstance(mats, dict) or set(mats) != {"A", "B", "C"}:
            raise DocumentError("matrices must hold exactly A, B and C")
        out = []
        for name in "ABC":
            rows = mats[name]
            if not (isinstance(rows, list) and len(rows) == 4 and all(isinstance(r, list) and len(r) == 4 for r in rows)):
                raise DocumentError(f"matrix {name} must be 4x4")
            out.append(Matrix([[decode_scalar(x, mode) for x in r] for r in rows], mode))
        known = {"format_version", "scalar_mode", "matrices", "provenance"}
        extra = {k: v for k, v in data.items() if k not in known}
        return cls(Triplet(*out), data.get("provenance"), version, extra)

    @classmethod
    def from_json(cls, text: str) -> "TripletDocument":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise DocumentError(f"invalid JSON: {exc}") from None
        return cls.from_dict(data)

    @classmethod
    def load(cls, path) -> "TripletDocument":
        return cls.from_json(Path(path).read_text())

    def save(self, path) -> None:
        Path(path).write_text(self.to_json())
