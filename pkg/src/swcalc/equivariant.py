"""Equivariant machinery: summand catalog, transfer formula, stable-class
rewriting, and the exotic-action family generator.

A catalog entry is a closed 4-manifold N with b2+ = 0 that carries a
cyclic action with a free orbit, an invariant positive scalar curvature
metric, and an equivariant Spin-c structure of maximal square.  Gluing k
copies of M to N along a free orbit transfers the mod-2 polynomial of M,
multiplied by the sum over the torsion classes of N.  Counting monomials
of the transferred polynomials separates smooth structures and hence
group actions on a common stabilized sum.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .errors import GuardViolation
from .groupring import FgAbelianGroup, GroupRingElement
from .knot import AlexanderPoly, alexander_family
from .lattice import QuadraticForm, spinc_with_max_square
from .manifold import (Fingerprint, IntersectionData, ManifoldDescriptor,
                       SWInfo, builtin, expected_sw_dimension,
                       mod2_basic_class_count)
from .surgery import (DissolutionVerdict, blowup, connected_sum_all,
                      dissolve, knot_surgery, log_transform)


# ----- spherical space forms -----

@dataclass(frozen=True)
class SpaceForm:
    """A finite group acting freely on the 3-sphere, known by family.

    Only the order and the abelianization enter any computation here;
    realizability of the action is geometric input, so the families are
    whitelisted and anything else needs an explicit assertion.
    """

    label: str
    order: int
    h1_orders: tuple[int, ...]
    quotient_label: str

    def __post_init__(self):
        object.__setattr__(self, "h1_orders",
                           tuple(sorted(self.h1_orders)))


def cyclic_space_form(order: int) -> SpaceForm:
    if order < 2:
        raise GuardViolation("a nontrivial group acting freely on S^3 has order >= 2",
                             requirement="order l >= 2")
    quotient = "RP3" if order == 2 else f"L({order},1)"
    return SpaceForm(f"Z{order}", order, (order,), quotient)


def quaternionic_space_form(m: int) -> SpaceForm:
    """Binary dihedral group of order 4m, m >= 2."""
    if m < 2:
        raise GuardViolation("binary dihedral parameter must be at least 2",
                             requirement="m >= 2")
    h1 = (2, 2) if m % 2 == 0 else (4,)
    return SpaceForm(f"Q{4 * m}", 4 * m, h1, f"S3/Q{4 * m}")


BINARY_TETRAHEDRAL = SpaceForm("2T", 24, (3,), "S3/2T")
BINARY_OCTAHEDRAL = SpaceForm("2O", 48, (2,), "S3/2O")
BINARY_ICOSAHEDRAL = SpaceForm("2I", 120, (), "S3/2I")

_EXCEPTIONAL_FORMS = (BINARY_TETRAHEDRAL, BINARY_OCTAHEDRAL, BINARY_ICOSAHEDRAL)


def space_form_candidates(order: int) -> list[SpaceForm]:
    out = []
    if order >= 2:
        out.append(cyclic_space_form(order))
    if order % 4 == 0 and order >= 8:
        out.append(quaternionic_space_form(order // 4))
    for sf in _EXCEPTIONAL_FORMS:
        if sf.order == order:
            out.append(sf)
    return out


def match_space_form(order: int, h1_orders: Sequence[int]) -> SpaceForm | None:
    wanted = tuple(sorted(int(x) for x in h1_orders))
    for sf in space_form_candidates(order):
        if sf.h1_orders == wanted:
            return sf
    return None


# ----- catalog entries -----

@dataclass(frozen=True)
class EquivariantData:
    """Hypotheses attached to a catalog entry for a cyclic order k action."""

    k: int
    h_order: int = 1
    h_label: str = "trivial"
    b1_invariant: int = 0          # nu, dimension of invariant 1-forms
    b2_plus_invariant: int = 0
    has_free_orbit: bool = False
    psc_invariant: bool = False
    spinc_max_c1sq: bool = False

    def __post_init__(self):
        if self.k < 2:
            raise GuardViolation("the cyclic order must be at least 2",
                                 requirement="k >= 2")


@dataclass(frozen=True)
class NCatalogEntry:
    descriptor: ManifoldDescriptor
    eq: EquivariantData
    kind: str  # S4 | CP2bar | S1xLensSum | HatS1L | Extended
    notes: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if self.eq.b1_invariant > self.descriptor.b1:
            raise ValueError("invariant 1-forms cannot exceed b1")
        if not self.eligible:
            raise GuardViolation(
                f"{self.descriptor.label} does not satisfy the summand hypotheses",
                requirement="free orbit, invariant psc, maximal-square Spin-c, b2+ = 0")

    @property
    def eligible(self) -> bool:
        return (self.eq.has_free_orbit and self.eq.psc_invariant
                and self.eq.spinc_max_c1sq and self.descriptor.b2_plus == 0)

    @property
    def spinc_count(self) -> int:
        return math.prod(self.descriptor.torsion_h1)


def hat_s1_l(h1_orders: Sequence[int], pi1_order: int, k: int = 2,
             strict: bool = True) -> NCatalogEntry:
    """Surgery on S1 x L along a circle factor, L a space-form quotient.

    The result is a rational homology 4-sphere with chi = 2 whose second
    cohomology is the torsion group H_1(L); every Spin-c structure is
    torsion, so the maximal-square condition is automatic.  The universal
    cover is |pi_1(L)| - 1 copies of S2xS2.
    """
    if pi1_order < 2:
        raise GuardViolation(
            "the fundamental group must be nontrivial (order l >= 2)",
            requirement="order l >= 2")
    sf = match_space_form(pi1_order, h1_orders)
    if sf is None:
        if strict:
            candidates = [f"{c.label} with H1 {list(c.h1_orders)}"
                          for c in space_form_candidates(pi1_order)]
            raise GuardViolation(
                f"no whitelisted space-form group of order {pi1_order} has "
                f"H1 of orders {sorted(h1_orders)}; known candidates: {candidates}",
                requirement="whitelisted spherical space form")
        sf = SpaceForm(f"asserted-{pi1_order}", pi1_order,
                       tuple(sorted(h1_orders)), f"asserted(S3/{pi1_order})")
    descriptor = ManifoldDescriptor(
        label=f"hat(S1x{sf.quotient_label})",
        simply_connected=False,
        b1=0,
        b2_plus=0,
        b2_minus=0,
        torsion_h1=sf.h1_orders,
        spin=True,
        sw=SWInfo.unknown(),
        intersection=IntersectionData(),
        admits_psc=True,
    )
    eq = EquivariantData(
        k=k, h_order=sf.order, h_label=sf.label,
        b1_invariant=0, b2_plus_invariant=0,
        has_free_orbit=True, psc_invariant=True, spinc_max_c1sq=True)
    notes = (f"universal cover: {sf.order - 1}*(S2xS2)",
             f"torsion Spin-c structures: {math.prod(sf.h1_orders)}")
    return NCatalogEntry(descriptor, eq, "HatS1L", notes)


def _certify_max_square(z: ManifoldDescriptor, depth: int = 2) -> None:
    """Check that z admits a Spin-c class of square -b2 on its free form."""
    inter = z.intersection
    if z.b2_plus != 0:
        raise GuardViolation(f"{z.label} has b2+ > 0", requirement="b2+(Z) = 0")
    if inter.h_count or inter.plus_count:
        raise GuardViolation(
            f"{z.label} stores indefinite or positive summands",
            requirement="negative definite form")
    n_tracked = len(inter.tracked_basis)
    size = n_tracked + inter.minus_count
    rows = []
    for i in range(size):
        row = []
        for j in range(size):
            if i < n_tracked and j < n_tracked:
                row.append(inter.gram[i][j])
            elif i == j:
                row.append(-1)
            else:
                row.append(0)
        rows.append(tuple(row))
    try:
        form = QuadraticForm(tuple(rows))
    except ValueError as err:
        raise GuardViolation(
            f"the form of {z.label} is not negative definite unimodular: {err}",
            requirement="negative definite unimodular form") from err
    if spinc_with_max_square(form, depth) is None:
        raise GuardViolation(
            f"no maximal-square Spin-c class found for {z.label} at depth {depth}",
            requirement="c1^2(s_Z) = -b2(Z)")


def n_catalog(kind: str, k: int = 2, **params) -> NCatalogEntry:
    """Catalog of summands usable as the N side of the gluing.

    Kinds: S4, CP2bar, S1xLensSum (orders=[...]), HatS1L (h1_orders,
    pi1_order), Extended (base entry plus k*l copies of a definite
    psc piece z).
    """
    if kind == "S4":
        eq = EquivariantData(k=k, has_free_orbit=True, psc_invariant=True,
                             spinc_max_c1sq=True)
        return NCatalogEntry(builtin("S4"), eq, "S4",
                             ("rotation with free generic orbits",))
    if kind == "CP2bar":
        z = builtin("CP2bar")
        _certify_max_square(z)
        eq = EquivariantData(k=k, has_free_orbit=True, psc_invariant=True,
                             spinc_max_c1sq=True)
        return NCatalogEntry(z, eq, "CP2bar",
                             ("weighted projective rotation",
                              "maximal-square class certified on diag(-1)"))
    if kind == "S1xLensSum":
        orders = tuple(sorted(int(o) for o in params.get("orders", ())))
        if any(o < 2 for o in orders):
            raise GuardViolation("every lens order must be at least 2",
                                 requirement="orders >= 2")
        label = "S1xS3" if not orders else \
            "S1x(" + "#".join(f"L({o})" for o in orders) + ")"
        descriptor = ManifoldDescriptor(
            label=label, simply_connected=False, b1=1, b2_plus=0, b2_minus=0,
            torsion_h1=orders, spin=True, sw=SWInfo.unknown(),
            intersection=IntersectionData(), admits_psc=True)
        eq = EquivariantData(
            k=k, b1_invariant=1, has_free_orbit=True, psc_invariant=True,
            spinc_max_c1sq=True)
        return NCatalogEntry(descriptor, eq, "S1xLensSum",
                             ("free rotation along the circle factor, nu = 1",))
    if kind == "HatS1L":
        return hat_s1_l(params["h1_orders"], params["pi1_order"], k=k,
                        strict=params.get("strict", True))
    if kind == "Extended":
        base: NCatalogEntry = params["base"]
        z: ManifoldDescriptor = params["z"]
        l = int(params["l"])
        if l < 0:
            raise GuardViolation("the copy parameter must be nonnegative",
                                 requirement="l >= 0")
        if base.eq.k != k:
            raise GuardViolation(
                f"base entry was instantiated for k = {base.eq.k}, not {k}",
                requirement="matching cyclic order")
        if not z.admits_psc:
            raise GuardViolation(f"{z.label} is not marked as carrying positive "
                                 "scalar curvature", requirement="psc piece")
        _certify_max_square(z)
        descriptor = connected_sum_all([base.descriptor] + [z] * (k * l))
        eq = EquivariantData(
            k=k, h_order=base.eq.h_order, h_label=base.eq.h_label,
            b1_invariant=base.eq.b1_invariant,
            b2_plus_invariant=base.eq.b2_plus_invariant,
            has_free_orbit=base.eq.has_free_orbit,
            psc_invariant=base.eq.psc_invariant and z.admits_psc,
            spinc_max_c1sq=base.eq.spinc_max_c1sq)
        return NCatalogEntry(descriptor, eq, "Extended",
                             base.notes + (f"extended by {k * l} copies of {z.label}",))
    raise GuardViolation(f"unknown catalog kind {kind!r}")


# ----- transfer of the mod-2 polynomial -----

def gmonopole_polynomial(m: ManifoldDescriptor, n_entry: NCatalogEntry,
                         k: int) -> GroupRingElement:
    """Mod-2 equivariant polynomial of k copies of M glued to N.

    The polynomial of M reduces mod 2, is reindexed into the group ring
    of H_2(M) plus the torsion classes of N, and is multiplied by the sum
    of all torsion classes.  The monomial count is therefore the mod-2
    count of M times the order of the torsion group.
    """
    _transfer_guards(m, n_entry, k)
    if n_entry.eq.b1_invariant != 0:
        raise GuardViolation(
            "the entry has invariant 1-forms (nu > 0); polynomial transfer "
            "does not apply, use gmono_eval for the determined values",
            requirement="nu = 0")
    torsion = n_entry.descriptor.torsion_h1
    if m.sw.is_zero:
        free_rank = len(m.intersection.tracked_basis)
        return GroupRingElement.zero(FgAbelianGroup(free_rank, torsion))
    base = m.sw.poly.mod2()
    target = FgAbelianGroup(base.ambient.free_rank, torsion)
    embedded = base.embed(target)
    zeros = (0,) * target.free_rank
    total = GroupRingElement(target, [
        (target.element(zeros, combo), 1)
        for combo in itertools.product(*(range(o) for o in target.torsion_orders))])
    return (embedded * total).mod2()


def _transfer_guards(m: ManifoldDescriptor, n_entry: NCatalogEntry, k: int):
    if k < 2:
        raise GuardViolation("the cyclic order must be at least 2",
                             requirement="k >= 2")
    if n_entry.eq.k != k:
        raise GuardViolation(
            f"catalog entry was instantiated for k = {n_entry.eq.k}, not {k}",
            requirement="matching cyclic order")
    if m.b2_plus <= 1:
        raise GuardViolation(
            f"{m.label} has b2+ = {m.b2_plus}; the transfer needs b2+ > 1",
            requirement="b2+(M) > 1")
    if not n_entry.eligible:
        raise GuardViolation(
            f"{n_entry.descriptor.label} is not an eligible summand",
            requirement="summand hypotheses")
    if m.sw.status == "unknown":
        raise GuardViolation(
            f"the polynomial of {m.label} is unknown; nothing to transfer",
            requirement="SW polynomial known or known zero")


class _Undetermined:
    """Sentinel for values outside the determined range of the transfer."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "Undetermined"


UNDETERMINED = _Undetermined()


@dataclass(frozen=True)
class EvalRequest:
    """A single pairing of the equivariant invariant.

    ``spinc_class`` selects the Spin-c structure by its monomial exponents
    over the tracked basis of M (identity when None); ``u_power`` is the
    exponent of the degree-two point class; ``one_forms`` are 1-cycle
    insertions; ``include_invariant_forms`` appends the full wedge of
    invariant 1-forms of N, which is required for a determined value
    whenever nu > 0.
    """

    spinc_class: Mapping[str, int] | None = None
    u_power: int = 0
    one_forms: tuple = ()
    include_invariant_forms: bool = False


def gmono_eval(m: ManifoldDescriptor, n_entry: NCatalogEntry, k: int,
               request: EvalRequest):
    """Evaluate one mod-2 equivariant pairing, or report it undetermined.

    With nu = 0 every pairing equals the corresponding pairing on M mod 2;
    with nu > 0 this holds only when the invariant 1-forms are wedged in.
    Stored descriptors carry the polynomial alone, so only degree-zero
    evaluations (u_power 0, no 1-cycles, simple-type classes) are
    readable; everything else is Undetermined rather than guessed.
    """
    _transfer_guards(m, n_entry, k)
    nu = n_entry.eq.b1_invariant
    if nu > 0 and not request.include_invariant_forms:
        return UNDETERMINED
    if request.one_forms:
        return UNDETERMINED
    if m.sw.is_zero:
        return 0
    if not m.sw.is_known:
        return UNDETERMINED
    tracked = m.intersection.tracked_basis
    exps = dict(request.spinc_class or {})
    if any(name not in tracked for name in exps):
        raise GuardViolation("class names must come from the tracked basis",
                             requirement="tracked Spin-c class")
    if request.u_power != 0:
        return UNDETERMINED
    if expected_sw_dimension(m, exps) != 0:
        return UNDETERMINED
    free = tuple(exps.get(name, 0) for name in tracked)
    elem = m.sw.poly.ambient.element(free)
    return m.sw.poly.coefficient(elem) % 2


# ----- stable-class rewriting -----

@dataclass(frozen=True)
class IdAtom:
    def render(self) -> str:
        return "Id"


@dataclass(frozen=True)
class BFAtom:
    label: str
    nontrivial: bool | None = None

    def render(self) -> str:
        return f"BF({self.label})"


@dataclass(frozen=True)
class BFGAtom:
    """Equivariant stable class of (count copies of summand) # n, or of n alone."""

    n: NCatalogEntry
    k: int
    summand: ManifoldDescriptor | None = None
    count: int = 0

    def render(self) -> str:
        if self.summand is None:
            return f"BFG({self.n.descriptor.label}, k={self.k})"
        return (f"BFG({self.count}*{self.summand.label} # "
                f"{self.n.descriptor.label}, k={self.k})")


@dataclass(frozen=True)
class Smash:
    factors: tuple

    def render(self) -> str:
        return " ^ ".join(f.render() for f in self.factors)


BFExpr = IdAtom | BFAtom | BFGAtom | Smash


def bf_atom(m: ManifoldDescriptor) -> BFExpr:
    """Stable class of a single manifold; flagged nontrivial when its
    mod-2 polynomial is."""
    count = mod2_basic_class_count(m)
    nontrivial = True if count else None
    return BFAtom(m.label, nontrivial)


def bfg_connected_sum(m: ManifoldDescriptor, count: int,
                      n_entry: NCatalogEntry, k: int) -> BFGAtom:
    if count != k:
        raise GuardViolation(
            f"the equivariant class needs exactly k = {k} copies of the "
            f"summand, got {count}",
            requirement="k summands of M")
    if n_entry.eq.k != k:
        raise GuardViolation(
            f"catalog entry was instantiated for k = {n_entry.eq.k}, not {k}",
            requirement="matching cyclic order")
    return BFGAtom(n_entry, k, m, count)


@dataclass(frozen=True)
class BFSimplified:
    expr: BFExpr
    verdict: str  # "nontrivial" or "unknown"
    trace: tuple[str, ...]


def _sort_key(node) -> tuple:
    rank = {IdAtom: 0, BFAtom: 1, BFGAtom: 2}.get(type(node), 3)
    return (rank, node.render())


def _rewrite(node, trace: list[str]):
    if isinstance(node, Smash):
        parts = []
        for f in node.factors:
            reduced = _rewrite(f, trace)
            if isinstance(reduced, Smash):
                parts.extend(reduced.factors)
            elif not isinstance(reduced, IdAtom):
                parts.append(reduced)
        if not parts:
            return IdAtom()
        if len(parts) == 1:
            return parts[0]
        return Smash(tuple(sorted(parts, key=_sort_key)))
    if isinstance(node, BFGAtom):
        if node.summand is not None:
            trace.append(
                f"sum_splitting: {node.render()} -> BF({node.summand.label}) "
                f"^ BFG({node.n.descriptor.label}, k={node.k})")
            rest = BFGAtom(node.n, node.k)
            return _rewrite(Smash((bf_atom(node.summand), rest)), trace)
        if node.n.eligible and node.n.eq.b1_invariant == 0:
            trace.append(
                f"identity_class: BFG({node.n.descriptor.label}, k={node.k}) -> Id")
            return IdAtom()
        return node
    if isinstance(node, BFAtom):
        if node.label == "S4":
            trace.append("identity_class: BF(S4) -> Id")
            return IdAtom()
        return node
    return node


def bf_simplify(expr: BFExpr) -> BFSimplified:
    """Normalize a smash expression and report nontriviality.

    The smash node is flattened and sorted, identity factors are
    absorbed, an equivariant class over an eligible summand with nu = 0
    is the identity, and a class of a k-fold sum splits off the plain
    class of the repeated summand.  The verdict is Nontrivial when the
    normal form is the identity or a single atom flagged nontrivial.
    """
    trace: list[str] = []
    normal = _rewrite(expr, trace)
    if isinstance(normal, IdAtom):
        verdict = "nontrivial"
    elif isinstance(normal, BFAtom) and normal.nontrivial:
        verdict = "nontrivial"
    else:
        verdict = "unknown"
    return BFSimplified(normal, verdict, tuple(trace))


# ----- covering check -----

def covering_consistency(m: ManifoldDescriptor, n_entry: NCatalogEntry,
                         k: int, l: int) -> bool:
    """Euler-characteristic and fingerprint consistency of the l-fold cover.

    The stabilized sum of k*l copies of M is an l-fold cover of k copies
    of M glued to the hat summand, and the universal cover of the hat
    summand is l-1 copies of S2xS2.
    """
    if n_entry.kind != "HatS1L":
        raise GuardViolation("the covering check applies to hat-type entries",
                             requirement="hat summand")
    if l < 2:
        raise GuardViolation("the covering group must be nontrivial",
                             requirement="order l >= 2")
    if n_entry.eq.h_order != l:
        raise GuardViolation(
            f"entry has |pi_1| = {n_entry.eq.h_order}, not {l}",
            requirement="matching covering order")
    s2 = builtin("S2xS2")
    cover = connected_sum_all([m] * (k * l) + [s2] * (l - 1))
    base = connected_sum_all([m] * k + [n_entry.descriptor])
    if cover.chi != l * base.chi:
        return False
    hat_cover = connected_sum_all([s2] * (l - 1))
    if hat_cover.chi != l * n_entry.descriptor.chi:
        return False
    if hat_cover.fingerprint != Fingerprint(True, l - 1, l - 1, "even"):
        return False
    return True


# ----- family generator -----

@dataclass(frozen=True)
class FamilyMember:
    label: str
    monomials: int
    count_basis: str  # "exact" or "lower_bound"
    fingerprint: Fingerprint
    gmono_rendered: str | None = None

    def to_json_dict(self) -> dict:
        return {
            "label": self.label,
            "monomials": self.monomials,
            "count_basis": self.count_basis,
            "fingerprint": list(self.fingerprint),
            "gmonopole_mod2": self.gmono_rendered,
        }


@dataclass(frozen=True)
class FamilyReport:
    construction: str
    k: int
    l: int
    space_form: str
    target_expression: str
    target_fingerprint: Fingerprint
    target_dissolution: DissolutionVerdict
    members: tuple[FamilyMember, ...]
    verdict: str
    covering_consistent: bool

    @property
    def counts(self) -> list[int]:
        return [mb.monomials for mb in self.members]

    def to_json_dict(self) -> dict:
        return {
            "construction": self.construction,
            "k": self.k,
            "l": self.l,
            "space_form": self.space_form,
            "target": {
                "expression": self.target_expression,
                "fingerprint": list(self.target_fingerprint),
                "dissolved": self.target_dissolution.to_json_dict(),
            },
            "members": [mb.to_json_dict() for mb in self.members],
            "counts": self.counts,
            "verdict": self.verdict,
            "covering_consistent": self.covering_consistent,
        }


def exotic_family(construction: str, k: int, l: int, size: int,
                  n: int = 1, n_prime: int = 2, m_prime: int = 1,
                  m: int = 1, space_form: SpaceForm | None = None,
                  multiplicities: Sequence[int] | None = None) -> FamilyReport:
    """Generate a family of group actions separated by monomial counts.

    Members are exotic smooth structures on a common base M; the actions
    of Z_k x H live on k*l copies of M summed with l-1 copies of S2xS2,
    and are distinguished by the monomial counts of the transferred mod-2
    polynomials.  Constructions:

    - ``k3_knot``: M = E(2n), members by knot surgery with the alternating
      family of spacing 2n.
    - ``cp2_knot``: M = E(n') blown up m' times, members by knot surgery
      with spacing n'.
    - ``s2xs2_hkw``: M = m copies of S2xS2, members carried count-only via
      logarithmic transforms of E(2n); the counts are lower bounds by
      construction.
    """
    if k < 2:
        raise GuardViolation("the cyclic order must be at least 2",
                             requirement="k >= 2")
    if l < 2:
        raise GuardViolation("the covering group H must be nontrivial",
                             requirement="order l >= 2")
    if size < 1:
        raise GuardViolation("a family needs at least one member",
                             requirement="size >= 1")
    sf = space_form or cyclic_space_form(l)
    if sf.order != l:
        raise GuardViolation(f"space form {sf.label} has order {sf.order}, not {l}",
                             requirement="matching order")
    hat = hat_s1_l(sf.h1_orders, sf.order, k=k)
    torsion_count = math.prod(sf.h1_orders)

    members: list[FamilyMember] = []
    if construction == "k3_knot":
        if n < 1:
            raise GuardViolation("the elliptic index parameter must be at least 1",
                                 requirement="n >= 1")
        base = builtin("E", 2 * n)
        for d in range(1, size + 1):
            member = knot_surgery(base, alexander_family(d, 2 * n))
            poly = gmonopole_polynomial(member, hat, k)
            members.append(FamilyMember(
                member.label, poly.monomial_count(), "exact",
                member.fingerprint,
                poly.render(member.intersection.tracked_basis or None)))
    elif construction == "cp2_knot":
        if n_prime < 2:
            raise GuardViolation("the elliptic index must be at least 2",
                                 requirement="n' >= 2")
        if m_prime < 1:
            raise GuardViolation("at least one blowup is required",
                                 requirement="m' >= 1")
        base = blowup(builtin("E", n_prime), m_prime)
        for d in range(1, size + 1):
            member = knot_surgery(base, alexander_family(d, n_prime))
            poly = gmonopole_polynomial(member, hat, k)
            members.append(FamilyMember(
                member.label, poly.monomial_count(), "exact",
                member.fingerprint,
                poly.render(member.intersection.tracked_basis or None)))
    elif construction == "s2xs2_hkw":
        if m < 1:
            raise GuardViolation("the base needs at least one S2xS2 summand",
                                 requirement="m >= 1")
        if n < 1:
            raise GuardViolation("the elliptic index parameter must be at least 1",
                                 requirement="n >= 1")
        base = connected_sum_all([builtin("S2xS2")] * m)
        rs = list(multiplicities) if multiplicities is not None else \
            list(range(1, size + 1))
        if len(rs) != size or len(set(rs)) != size:
            raise GuardViolation("multiplicities must be distinct, one per member",
                                 requirement="distinct multiplicities")
        for r in rs:
            sample = log_transform(2 * n, r)
            count = mod2_basic_class_count(sample) * torsion_count
            members.append(FamilyMember(
                f"fiber-sum carrying {sample.label}", count, "lower_bound",
                base.fingerprint, None))
    else:
        raise GuardViolation(f"unknown construction {construction!r}")

    target_factors = [base] * (k * l) + [builtin("S2xS2")] * (l - 1)
    target = connected_sum_all(target_factors)
    target_dissolution = dissolve(target_factors)
    counts = [mb.monomials for mb in members]
    fingerprints_equal = len({mb.fingerprint for mb in members}) == 1
    counts_distinct = len(set(counts)) == len(counts)
    verdict = "smoothly_distinct" if counts_distinct and fingerprints_equal \
        else "inconclusive"
    covering_ok = covering_consistency(base, hat, k, l)

    base_label = f"({base.label})" if " # " in base.label else base.label
    return FamilyReport(
        construction=construction,
        k=k,
        l=l,
        space_form=sf.label,
        target_expression=f"{k * l}*{base_label} # {l - 1}*S2xS2",
        target_fingerprint=target.fingerprint,
        target_dissolution=target_dissolution,
        members=tuple(members),
        verdict=verdict,
        covering_consistent=covering_ok,
    )
