"""Exact arithmetic in integral group rings of finitely generated abelian groups.

Every polynomial invariant in this package (Seiberg-Witten polynomials,
Alexander polynomials, equivariant transfer sums) is a finite formal
Z-linear combination of elements of a finitely generated abelian group,
multiplied by convolution.  Coefficients are arbitrary-precision Python
integers; torsion exponents are kept as canonical residues at all times,
so equality of elements is structural.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import AmbientMismatchError, UnsupportedOperation


@dataclass(frozen=True)
class FgAbelianGroup:
    """Z^free_rank plus one cyclic factor per entry of torsion_orders.

    Torsion orders are stored sorted ascending; two groups are equal
    exactly when their presentations agree.
    """

    free_rank: int
    torsion_orders: tuple[int, ...] = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("free_rank must be nonnegative")
        orders = tuple(sorted(int(o) for o in self.torsion_orders))
        if any(o < 2 for o in orders):
            raise ValueError("every torsion order must be at least 2")
        object.__setattr__(self, "torsion_orders", orders)

    @property
    def torsion_rank(self) -> int:
        return len(self.torsion_orders)

    def identity(self) -> "GroupElement":
        return GroupElement((0,) * self.free_rank, (0,) * self.torsion_rank)

    def element(self, free: Iterable[int] = (), torsion: Iterable[int] = ()) -> "GroupElement":
        """Build an element, reducing torsion entries to canonical residues."""
        free_t = tuple(int(x) for x in free)
        tors_t = tuple(int(x) for x in torsion)
        if len(free_t) != self.free_rank or len(tors_t) != self.torsion_rank:
            raise AmbientMismatchError(
                f"exponent vector shape ({len(free_t)},{len(tors_t)}) does not match "
                f"group of rank ({self.free_rank},{self.torsion_rank})")
        tors_t = tuple(e % o for e, o in zip(tors_t, self.torsion_orders))
        return GroupElement(free_t, tors_t)

    def compose(self, a: "GroupElement", b: "GroupElement") -> "GroupElement":
        free = tuple(x + y for x, y in zip(a.free, b.free))
        tors = tuple((x + y) % o for x, y, o in
                     zip(a.torsion, b.torsion, self.torsion_orders))
        return GroupElement(free, tors)


@dataclass(frozen=True, order=True)
class GroupElement:
    """Exponent vector of a monomial: free part then torsion part.

    Ordering is lexicographic on the free exponents, then torsion, which
    is also the canonical rendering order.
    """

    free: tuple[int, ...]
    torsion: tuple[int, ...] = ()


class GroupRingElement:
    """Immutable element of Z[A] for a finitely generated abelian A."""

    __slots__ = ("ambient", "_terms", "_hash")

    def __init__(self, ambient: FgAbelianGroup,
                 terms: Mapping[GroupElement, int] | Iterable[tuple[GroupElement, int]] = ()):
        canonical: dict[GroupElement, int] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for elem, coeff in items:
            coeff = int(coeff)
            if coeff == 0:
                continue
            elem = ambient.element(elem.free, elem.torsion)
            new = canonical.get(elem, 0) + coeff
            if new == 0:
                canonical.pop(elem, None)
            else:
                canonical[elem] = new
        object.__setattr__(self, "ambient", ambient)
        object.__setattr__(self, "_terms", canonical)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("GroupRingElement is immutable")

    # ----- constructors -----

    @classmethod
    def zero(cls, ambient: FgAbelianGroup) -> "GroupRingElement":
        return cls(ambient, {})

    @classmethod
    def one(cls, ambient: FgAbelianGroup) -> "GroupRingElement":
        return cls(ambient, {ambient.identity(): 1})

    @classmethod
    def monomial(cls, ambient: FgAbelianGroup, free: Iterable[int] = (),
                 torsion: Iterable[int] = (), coeff: int = 1) -> "GroupRingElement":
        return cls(ambient, {ambient.element(free, torsion): coeff})

    # ----- basic queries -----

    @property
    def terms(self) -> dict[GroupElement, int]:
        return dict(self._terms)

    def coefficient(self, elem: GroupElement) -> int:
        key = self.ambient.element(elem.free, elem.torsion)
        return self._terms.get(key, 0)

    def is_zero(self) -> bool:
        return not self._terms

    def monomial_count(self) -> int:
        """Number of stored monomials (after canonicalization)."""
        return len(self._terms)

    def evaluate_at_one(self) -> int:
        """Sum of all coefficients, i.e. image under A -> 1."""
        return sum(self._terms.values())

    def support(self) -> list[GroupElement]:
        return sorted(self._terms)

    # ----- ring operations -----

    def _check_ambient(self, other: "GroupRingElement"):
        if self.ambient != other.ambient:
            raise AmbientMismatchError(
                f"operands live in different groups: {self.ambient} vs {other.ambient}")

    def __add__(self, other):
        if isinstance(other, int):
            other = GroupRingElement.monomial(self.ambient, coeff=other) if other else \
                GroupRingElement.zero(self.ambient)
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        self._check_ambient(other)
        merged = dict(self._terms)
        for elem, coeff in other._terms.items():
            new = merged.get(elem, 0) + coeff
            if new == 0:
                merged.pop(elem, None)
            else:
                merged[elem] = new
        return GroupRingElement(self.ambient, merged)

    __radd__ = __add__

    def __neg__(self):
        return GroupRingElement(self.ambient, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            return self + (-other)
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return GroupRingElement(self.ambient,
                                    {e: c * other for e, c in self._terms.items()})
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        self._check_ambient(other)
        out: dict[GroupElement, int] = {}
        compose = self.ambient.compose
        for ea, ca in self._terms.items():
            for eb, cb in other._terms.items():
                key = compose(ea, eb)
                new = out.get(key, 0) + ca * cb
                if new == 0:
                    out.pop(key, None)
                else:
                    out[key] = new
        return GroupRingElement(self.ambient, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise UnsupportedOperation("negative ring powers are not defined")
        result = GroupRingElement.one(self.ambient)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    # ----- reductions and reindexings -----

    def mod2(self) -> "GroupRingElement":
        """Reduce every coefficient to {0,1}; monomials with even coefficient drop out."""
        return GroupRingElement(self.ambient,
                                {e: c % 2 for e, c in self._terms.items()})

    def substitute_power(self, s: int) -> "GroupRingElement":
        """Replace the single free generator t by t^s.

        Only defined over a rank-one torsion-free ambient group.  With
        s = 0 all monomials collapse onto the constant term.
        """
        g = self.ambient
        if g.free_rank != 1 or g.torsion_orders:
            raise UnsupportedOperation(
                "substitute_power needs a rank-1 torsion-free ambient group")
        return GroupRingElement(g, [(GroupElement((s * e.free[0],)), c)
                                    for e, c in self._terms.items()])

    def embed(self, target: FgAbelianGroup,
              free_map: tuple[int, ...] | None = None,
              torsion_map: tuple[int, ...] | None = None) -> "GroupRingElement":
        """Reindex into a larger group along an injection of generators.

        ``free_map[i]`` is the target free index of source free generator
        i; similarly for ``torsion_map``, where the cyclic orders must
        agree.  Defaults map generator i to target generator i.
        """
        src = self.ambient
        if free_map is None:
            free_map = tuple(range(src.free_rank))
        if torsion_map is None:
            torsion_map = tuple(range(src.torsion_rank))
        free_map = tuple(free_map)
        torsion_map = tuple(torsion_map)
        if len(free_map) != src.free_rank or len(torsion_map) != src.torsion_rank:
            raise AmbientMismatchError("injection must cover every source generator")
        if len(set(free_map)) != len(free_map) or len(set(torsion_map)) != len(torsion_map):
            raise AmbientMismatchError("injection must send generators to distinct targets")
        if any(not 0 <= j < target.free_rank for j in free_map):
            raise AmbientMismatchError("free generator mapped outside the target group")
        for i, j in enumerate(torsion_map):
            if not 0 <= j < target.torsion_rank:
                raise AmbientMismatchError("torsion generator mapped outside the target group")
            if target.torsion_orders[j] != src.torsion_orders[i]:
                raise AmbientMismatchError(
                    f"torsion generator of order {src.torsion_orders[i]} cannot map to "
                    f"one of order {target.torsion_orders[j]}")
        out: dict[GroupElement, int] = {}
        for elem, coeff in self._terms.items():
            free = [0] * target.free_rank
            for i, j in enumerate(free_map):
                free[j] = elem.free[i]
            tors = [0] * target.torsion_rank
            for i, j in enumerate(torsion_map):
                tors[j] = elem.torsion[i]
            out[target.element(free, tors)] = coeff
        return GroupRingElement(target, out)

    # ----- comparison, hashing, rendering -----

    def _key(self):
        return (self.ambient, tuple(sorted(self._terms.items())))

    def __eq__(self, other):
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash(self._key())
            object.__setattr__(self, "_hash", h)
        return h

    def render(self, free_names: tuple[str, ...] | None = None,
               torsion_names: tuple[str, ...] | None = None) -> str:
        """Canonical text form, monomials sorted by exponent vector."""
        g = self.ambient
        if free_names is None:
            free_names = ("T",) if g.free_rank == 1 else tuple(
                f"T{i + 1}" for i in range(g.free_rank))
        if torsion_names is None:
            torsion_names = ("a",) if g.torsion_rank == 1 else tuple(
                f"a{i + 1}" for i in range(g.torsion_rank))
        if not self._terms:
            return "0"
        pieces = []
        for elem in self.support():
            coeff = self._terms[elem]
            factors = []
            for name, e in zip(free_names, elem.free):
                if e == 1:
                    factors.append(name)
                elif e != 0:
                    factors.append(f"{name}^{e}")
            for name, e in zip(torsion_names, elem.torsion):
                if e == 1:
                    factors.append(name)
                elif e != 0:
                    factors.append(f"{name}^{e}")
            mono = "*".join(factors) if factors else "1"
            if mono == "1":
                body = str(abs(coeff))
            elif abs(coeff) == 1:
                body = mono
            else:
                body = f"{abs(coeff)}*{mono}"
            pieces.append((coeff < 0, body))
        out = []
        for i, (neg, body) in enumerate(pieces):
            if i == 0:
                out.append(f"-{body}" if neg else body)
            else:
                out.append(f" - {body}" if neg else f" + {body}")
        return "".join(out)

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"GroupRingElement({self.ambient}, {self.render()!r})"


RANK1 = FgAbelianGroup(1)


def laurent(coeffs: Mapping[int, int], ambient: FgAbelianGroup = RANK1) -> GroupRingElement:
    """Single-variable Laurent polynomial from an exponent -> coefficient map."""
    if ambient.free_rank != 1 or ambient.torsion_orders:
        raise UnsupportedOperation("laurent() needs a rank-1 torsion-free group")
    return GroupRingElement(ambient, {GroupElement((e,)): c for e, c in coeffs.items()})


def laurent_coeffs(p: GroupRingElement) -> dict[int, int]:
    """Inverse of :func:`laurent` for rank-1 torsion-free elements."""
    g = p.ambient
    if g.free_rank != 1 or g.torsion_orders:
        raise UnsupportedOperation("element is not a single-variable Laurent polynomial")
    return {e.free[0]: c for e, c in p.terms.items()}
