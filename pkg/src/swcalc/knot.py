"""Symmetrized Alexander polynomials used as knot-surgery coefficients.

A knot enters the calculator only through its symmetrized Alexander
polynomial, so this module is the whole knot interface: exact torus-knot
polynomials, the alternating family with prescribed exponent spacing,
and a validator for user-supplied coefficient lists.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import GuardViolation
from .groupring import GroupRingElement, laurent, laurent_coeffs


@dataclass(frozen=True)
class AlexanderPoly:
    """Symmetric Laurent polynomial with value 1 at t = 1."""

    poly: GroupRingElement
    name: str | None = field(default=None, compare=False)

    def __post_init__(self):
        coeffs = laurent_coeffs(self.poly)
        for e, c in coeffs.items():
            if coeffs.get(-e, 0) != c:
                raise GuardViolation(
                    "Alexander polynomial must be symmetric under t -> 1/t",
                    requirement="symmetrized Alexander polynomial")
        if self.poly.evaluate_at_one() != 1:
            raise GuardViolation(
                "Alexander polynomial must evaluate to 1 at t = 1",
                requirement="Delta(1) = 1 normalization")

    def coeffs(self) -> dict[int, int]:
        return laurent_coeffs(self.poly)

    def term_count(self) -> int:
        return self.poly.monomial_count()

    def __mul__(self, other: "AlexanderPoly") -> "AlexanderPoly":
        return AlexanderPoly(self.poly * other.poly,
                             name=f"{self.label()}*{other.label()}")

    def label(self) -> str:
        return self.name if self.name is not None else self.poly.render(("t",))

    def render(self) -> str:
        return self.poly.render(("t",))

    def __repr__(self):
        return f"AlexanderPoly({self.render()!r}, name={self.name!r})"


def unknot() -> AlexanderPoly:
    """The trivial knot: constant polynomial 1, identity for knot surgery."""
    return AlexanderPoly(laurent({0: 1}), name="unknot")


def _divide_exact(num: dict[int, int], den: dict[int, int]) -> dict[int, int]:
    """Long division of Laurent polynomials known to divide exactly."""
    num = dict(num)
    quot: dict[int, int] = {}
    den_deg = max(den)
    den_lead = den[den_deg]
    while num:
        deg = max(num)
        lead = num[deg]
        if lead % den_lead != 0:
            raise ArithmeticError("division is not exact")
        q = lead // den_lead
        shift = deg - den_deg
        quot[shift] = quot.get(shift, 0) + q
        for e, c in den.items():
            e2 = e + shift
            new = num.get(e2, 0) - q * c
            if new == 0:
                num.pop(e2, None)
            else:
                num[e2] = new
    return quot


def _poly_mul(a: dict[int, int], b: dict[int, int]) -> dict[int, int]:
    out: dict[int, int] = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = ea + eb
            new = out.get(e, 0) + ca * cb
            if new == 0:
                out.pop(e, None)
            else:
                out[e] = new
    return out


def torus_knot(p: int, q: int) -> AlexanderPoly:
    """Alexander polynomial of the (p,q) torus knot.

    Computed by exact division of (t^{pq}-1)(t-1) by (t^p-1)(t^q-1),
    then centered so the lowest exponent is -(p-1)(q-1)/2.
    """
    if p < 2 or q < 2:
        raise GuardViolation("torus knot parameters must both be at least 2",
                             requirement="p, q >= 2")
    if math.gcd(p, q) != 1:
        raise GuardViolation(f"torus knot parameters must be coprime, got ({p},{q})",
                             requirement="gcd(p,q) = 1")
    num = _poly_mul({p * q: 1, 0: -1}, {1: 1, 0: -1})
    den = _poly_mul({p: 1, 0: -1}, {q: 1, 0: -1})
    quot = _divide_exact(num, den)
    genus2 = (p - 1) * (q - 1)
    centered = {e - genus2 // 2: c for e, c in quot.items()}
    return AlexanderPoly(laurent(centered), name=f"torus({p},{q})")


def alexander_family(d: int, n: int) -> AlexanderPoly:
    """Alternating family 1 + sum_{j=1}^{2d} (-1)^j (t^{jn} + t^{-jn}).

    Has exactly 4d+1 terms, all coefficients +-1, and value 1 at t = 1.
    The spacing parameter n keeps the exponents in distinct blocks after
    the t -> t^2 substitution used by knot surgery.
    """
    if d < 1 or n < 1:
        raise GuardViolation("family parameters must satisfy d >= 1 and n >= 1",
                             requirement="d >= 1, n >= 1")
    coeffs = {0: 1}
    for j in range(1, 2 * d + 1):
        sign = -1 if j % 2 else 1
        coeffs[j * n] = sign
        coeffs[-j * n] = sign
    return AlexanderPoly(laurent(coeffs), name=f"family({d},{n})")


def validate(p: GroupRingElement, name: str | None = None) -> AlexanderPoly:
    """Accept a rank-1 Laurent polynomial as an Alexander polynomial.

    Requires symmetry and value +-1 at t = 1; a value of -1 is fixed by
    negating, since all downstream verdicts are insensitive to the sign.
    """
    coeffs = laurent_coeffs(p)
    for e, c in coeffs.items():
        if coeffs.get(-e, 0) != c:
            raise GuardViolation("polynomial is not symmetric under t -> 1/t",
                                 requirement="symmetrized Alexander polynomial")
    total = p.evaluate_at_one()
    if total == 1:
        return AlexanderPoly(p, name=name)
    if total == -1:
        return AlexanderPoly(-p, name=name)
    raise GuardViolation(f"polynomial evaluates to {total} at t = 1, expected +-1",
                         requirement="Delta(1) = +-1")
