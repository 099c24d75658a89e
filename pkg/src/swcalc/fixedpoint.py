"""Finite combinatorial model of the cyclic fixed-point analysis.

Approximate solutions on a k-fold connected sum are tuples of gauge
angles, one per summand, taken modulo a single overall rotation.  The
cyclic generator shifts the tuple; a fixed tuple exists for each k-th
root of unity, and the gauge-invariant locus is the single component at
angle zero.  All angles are exact rationals modulo 1.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import GuardViolation


@dataclass(frozen=True)
class AngleTuple:
    """Gauge normal form: k angles in [0,1) with the last pinned to 0."""

    angles: tuple[Fraction, ...]

    def __post_init__(self):
        angles = tuple(Fraction(a) for a in self.angles)
        if not angles:
            raise ValueError("an angle tuple needs at least one entry")
        if any(not 0 <= a < 1 for a in angles):
            raise ValueError("angles must be reduced to [0,1)")
        if angles[-1] != 0:
            raise ValueError("normal form requires the last angle to be 0")
        object.__setattr__(self, "angles", angles)

    @property
    def k(self) -> int:
        return len(self.angles)

    def as_strings(self) -> list[str]:
        return [str(a) for a in self.angles]


def normalize(raw: Sequence[Fraction]) -> AngleTuple:
    """Quotient by the overall rotation: subtract the last entry, reduce mod 1."""
    raw = [Fraction(a) for a in raw]
    last = raw[-1]
    return AngleTuple(tuple((a - last) % 1 for a in raw))


def solve_fixed_points(k: int) -> list[tuple[Fraction, AngleTuple]]:
    """The k fixed tuples of the cyclic shift, one per angle theta = j/k.

    The congruences 0 = t1 + theta, t1 = t2 + theta, ..., t_{k-1} = theta
    force theta to be a k-th division point and determine the tuple
    ((k-1)theta, (k-2)theta, ..., theta, 0) modulo 1.
    """
    if k < 1:
        raise GuardViolation("the cyclic order must be at least 1", requirement="k >= 1")
    out = []
    for j in range(k):
        theta = Fraction(j, k)
        tup = AngleTuple(tuple(((k - 1 - i) * theta) % 1 for i in range(k)))
        out.append((theta, tup))
    return out


def invariant_locus(k: int) -> list[tuple[Fraction, AngleTuple]]:
    """The subset of fixed tuples whose gauge orbit contains invariant
    representatives, i.e. exactly the theta = 0 component."""
    return [(theta, tup) for theta, tup in solve_fixed_points(k) if theta == 0]


def apply_generator(t: AngleTuple, gauge: Fraction | int,
                    offsets: Sequence[Fraction | int]) -> AngleTuple:
    """One application of the cyclic generator followed by a global rotation.

    ``offsets`` are the per-summand rotation constants of a lift of the
    generator; they must sum to 0 mod 1 because the lift has order k.
    Each offset is trivial near the gluing necks, so a global gauge
    transformation cancels all of them exactly and only the cyclic shift
    survives in the normal form.
    """
    offsets = [Fraction(o) for o in offsets]
    if len(offsets) != t.k:
        raise GuardViolation(f"expected {t.k} offsets, got {len(offsets)}",
                             requirement="one offset per summand")
    if sum(offsets) % 1 != 0:
        raise GuardViolation("offsets must sum to 0 mod 1",
                             requirement="lift of finite order")
    shifted = (t.angles[-1],) + t.angles[:-1]
    gauge = Fraction(gauge)
    return normalize([(a + gauge) % 1 for a in shifted])


@dataclass(frozen=True)
class TorusAutomorphism:
    """Integer matrix of finite order acting on a torus H^1 lattice."""

    matrix: tuple[tuple[int, ...], ...]
    order: int

    def __post_init__(self):
        matrix = tuple(tuple(int(x) for x in row) for row in self.matrix)
        object.__setattr__(self, "matrix", matrix)
        n = len(matrix)
        if any(len(row) != n for row in matrix):
            raise ValueError("matrix must be square")
        if self.order < 1:
            raise ValueError("order must be positive")
        if _mat_pow(matrix, self.order) != _identity(n):
            raise GuardViolation(
                f"matrix to the power {self.order} is not the identity",
                requirement="finite order action")

    @property
    def dimension(self) -> int:
        return len(self.matrix)


def _identity(n: int) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def _mat_mul(a, b):
    n = len(a)
    return tuple(tuple(sum(a[i][t] * b[t][j] for t in range(n))
                       for j in range(n)) for i in range(n))


def _mat_pow(m, e: int):
    n = len(m)
    out = _identity(n)
    base = m
    while e:
        if e & 1:
            out = _mat_mul(out, base)
        base = _mat_mul(base, base)
        e >>= 1
    return out


@dataclass(frozen=True)
class FixedSubtorus:
    dimension: int
    basis: tuple[tuple[int, ...], ...]


def fixed_subtorus(aut: TorusAutomorphism) -> FixedSubtorus:
    """Rational fixed subtorus of a finite-order torus automorphism.

    Computes ker(D - I) over Q with a primitive integer basis and checks
    that the averaging projector P = (1/k) sum D^i is idempotent with
    image equal to that kernel, which is the algebraic content of
    averaging solutions onto the invariant locus.
    """
    from sympy import Matrix, Rational, eye, zeros

    n = aut.dimension
    d = Matrix(aut.matrix)
    if n == 0:
        return FixedSubtorus(0, ())
    kernel = (d - eye(n)).nullspace()

    p = zeros(n, n)
    power = eye(n)
    for _ in range(aut.order):
        p += power
        power = power * d
    p = p * Rational(1, aut.order)
    if p * p != p:
        raise AssertionError("averaging operator is not idempotent")
    if (d - eye(n)) * p != zeros(n, n):
        raise AssertionError("averaging operator does not land in the fixed space")
    if p.rank() != len(kernel):
        raise AssertionError("averaging image does not match the fixed space")

    basis = []
    for vec in kernel:
        lcm = math.lcm(*(int(x.q) for x in vec))
        ints = [int(x * lcm) for x in vec]
        g = math.gcd(*(abs(x) for x in ints))
        if g > 1:
            ints = [x // g for x in ints]
        first = next((x for x in ints if x != 0), 1)
        if first < 0:
            ints = [-x for x in ints]
        basis.append(tuple(ints))
    return FixedSubtorus(len(kernel), tuple(basis))
