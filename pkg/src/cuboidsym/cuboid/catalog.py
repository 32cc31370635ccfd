"""Golden catalog of factor equations and its JSON form."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from typing import Iterable

from ..errors import UsageError
from ..poly import Polynomial, format_polynomial, parse
from .system import CUBOID_VT, DISPLAY_ORDER, Verification, verify_polynomial

CATALOG_IDS = ("F1", "F2", "F3", "F4", "F5", "F6", "L1", "L2", "F7", "F8")


def normalize(p: Polynomial) -> Polynomial:
    """Integer coefficients with content 1 and a positive leading coefficient."""
    if p.is_zero():
        return p
    return p.primitive(DISPLAY_ORDER)


def is_normalized(p: Polynomial) -> bool:
    if p.is_zero():
        return True
    coeffs = [c for _, c in p.items()]
    if any(c.denominator != 1 for c in coeffs):
        return False
    g = math.gcd(*(c.numerator for c in coeffs))
    return g == 1 and p.leading_coefficient(DISPLAY_ORDER) > 0


@dataclass(frozen=True)
class FactorEquation:
    id: str
    lhs: Polynomial
    paper_eq: str = ""

    def __post_init__(self):
        if self.lhs.vt != CUBOID_VT:
            raise UsageError("factor equations live over the cuboid variable table")
        object.__setattr__(self, "lhs", normalize(self.lhs))

    def text(self) -> str:
        return format_polynomial(self.lhs, DISPLAY_ORDER)

    def to_json(self) -> dict:
        return {"id": self.id, "paper_eq": self.paper_eq, "lhs": self.text()}

    @classmethod
    def from_json(cls, data: dict) -> "FactorEquation":
        return cls(str(data["id"]), parse(data["lhs"], CUBOID_VT), str(data.get("paper_eq", "")))


def verify_factor_equation(f: FactorEquation | Polynomial) -> Verification:
    """Membership of the expanded left side in the cuboid ideal, with certificate."""
    lhs = f.lhs if isinstance(f, FactorEquation) else f
    return verify_polynomial(lhs)


def load_catalog(data: str | bytes | list) -> list[FactorEquation]:
    if isinstance(data, (str, bytes)):
        data = json.loads(data)
    if not isinstance(data, list):
        raise UsageError("catalog JSON must be a list of objects")
    return [FactorEquation.from_json(d) for d in data]


def dump_catalog(eqs: Iterable[FactorEquation]) -> str:
    return json.dumps([e.to_json() for e in eqs], indent=2) + "\n"


def factor_catalog() -> list[FactorEquation]:
    """The ten transcribed factor equations, normalized."""
    text = resources.files(__package__).joinpath("catalog.json").read_text(encoding="utf-8")
    return load_catalog(text)


def catalog_by_id() -> dict[str, FactorEquation]:
    return {f.id: f for f in factor_catalog()}


def first_difference(a: Polynomial, b: Polynomial):
    """First monomial (in display order) where ``a`` and ``b`` disagree, or ``None``."""
    monos = set(a.monomials()) | set(b.monomials())
    key = DISPLAY_ORDER.key(a.vt)
    for m in sorted(monos, key=key, reverse=True):
        ca, cb = a.coefficient(m), b.coefficient(m)
        if ca != cb:
            mono_text = format_polynomial(Polynomial.monomial(a.vt, m), DISPLAY_ORDER)
            return mono_text, Fraction(ca), Fraction(cb)
    return None
