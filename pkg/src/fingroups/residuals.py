"""Formation residuals and the residual identity for products of two subgroups."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Optional

from .chains import psn_marks
from .classify import Formation, in_formation, sections
from .errors import FormationAssertionFailed, HypothesisNotMet, InvalidParameter
from .group import GroupTable, quotient_group, restrict
from .lattice import Subgroup, all_subgroups


@dataclass(frozen=True)
class ResidualResult:
    formation: Formation
    residual: Subgroup
    witness_normals: tuple[Subgroup, ...]


def residual(G: GroupTable, F, check: bool = True) -> ResidualResult:
    """Intersection of the normal subgroups N with G/N in F.

    With ``check`` the quotient by the result is re-tabled and classified
    independently; a failure there is a classifier bug.
    """
    F = Formation.parse(F)
    lat = all_subgroups(G)
    S = sections(lat)
    top = lat.top
    witnesses = [k for k in S.normal_subgroups(top) if S.check(top, k, F)]
    m = G.full_mask
    for k in witnesses:
        m &= lat.masks[k]
    r = lat.index[m]
    minimal = [k for k in witnesses
               if not any(j != k and (lat.below[k] >> j) & 1 for j in witnesses)]
    if check:
        Q, _ = quotient_group(G, m)
        if not in_formation(Q, F):
            raise FormationAssertionFailed(f"G/residual is not in {F.value}")
    return ResidualResult(F, lat.subgroup(r), tuple(lat.subgroup(k) for k in minimal))


def nested_residual(G: GroupTable, inner, outer) -> Subgroup:
    """The ``outer``-residual of the ``inner``-residual, computed in the re-tabled subgroup."""
    R = residual(G, inner).residual
    T, embed = restrict(G, R)
    RR = residual(T, outer).residual
    return Subgroup(G, sum(1 << embed[x] for x in RR.members))


@dataclass
class Theorem1Report:
    name: str
    missing: list[str] = field(default_factory=list)
    wu_residual: Optional[Subgroup] = None
    a_residual: Optional[Subgroup] = None
    nested: Optional[Subgroup] = None
    identity_holds: bool = False
    g_in_wu: bool = False
    nilpotent_normals_checked: int = 0
    clause2_failures: list[tuple[int, str]] = field(default_factory=list)
    coprime: bool = False
    clause3_holds: Optional[bool] = None

    @property
    def hypotheses_met(self) -> bool:
        return not self.missing

    @property
    def clause2_holds(self) -> bool:
        return not self.clause2_failures

    @property
    def passed(self) -> bool:
        return self.identity_holds and self.clause2_holds and self.clause3_holds is not False

    def line(self) -> str:
        verdict = "equal" if self.identity_holds else "UNEQUAL"
        return (f"G={self.name} |G^{{wU}}|={self.wu_residual.order} "
                f"|(G^A)^N|={self.nested.order} verdict={verdict}")


def theorem1_hypotheses(G: GroupTable, A: Subgroup, B: Subgroup) -> list[str]:
    lat = all_subgroups(G)
    S = sections(lat)
    a, b = lat.find(A), lat.find(B)
    marks = psn_marks(lat)
    missing = []
    if lat.orders[a] * lat.orders[b] != G.order * lat.orders[lat.meet(a, b)]:
        missing.append("G = AB")
    if not S.member(a, Formation.W_SUPERSOLUBLE):
        missing.append("A w-supersoluble")
    if not S.member(b, Formation.W_SUPERSOLUBLE):
        missing.append("B w-supersoluble")
    if not (marks >> a) & 1:
        missing.append("A P-subnormal")
    if not (marks >> b) & 1:
        missing.append("B P-subnormal")
    return missing


@dataclass(frozen=True)
class _GroupSide:
    """The parts of the Theorem 1 check that depend on G alone."""

    wu_residual: Subgroup
    a_residual: Subgroup
    nested: Subgroup
    g_in_wu: bool
    nilpotent_normals: tuple[int, ...]


def _group_side(G: GroupTable) -> _GroupSide:
    lat = all_subgroups(G)
    cached = lat.__dict__.get("_theorem1")
    if cached is None:
        S = sections(lat)
        W, A, N = Formation.W_SUPERSOLUBLE, Formation.ABELIAN_SYLOW, Formation.NILPOTENT
        cached = lat.__dict__["_theorem1"] = _GroupSide(
            wu_residual=residual(G, W).residual,
            a_residual=residual(G, A).residual,
            nested=nested_residual(G, A, N),
            g_in_wu=in_formation(G, W),
            nilpotent_normals=tuple(k for k in S.normal_subgroups(lat.top) if S.member(k, N)),
        )
    return cached


def theorem1_identity_check(G: GroupTable, A: Subgroup, B: Subgroup, strict: bool = True,
                            name: Optional[str] = None) -> Theorem1Report:
    """Check the three clauses for G = AB.

    With ``strict`` a missing hypothesis raises HypothesisNotMet; otherwise it is
    recorded in the report and the clauses are still evaluated.
    """
    if A.parent is not G or B.parent is not G:
        raise InvalidParameter("factors must be subgroups of G")
    rep = Theorem1Report(name or G.name or G.expression or "G")
    rep.missing = theorem1_hypotheses(G, A, B)
    if strict and rep.missing:
        raise HypothesisNotMet(rep.missing)
    lat = all_subgroups(G)
    S = sections(lat)
    W = Formation.W_SUPERSOLUBLE
    side = _group_side(G)
    rep.wu_residual, rep.a_residual, rep.nested = side.wu_residual, side.a_residual, side.nested
    rep.identity_holds = rep.wu_residual == rep.nested
    rep.g_in_wu = side.g_in_wu
    a, b = lat.find(A), lat.find(B)
    for k in side.nilpotent_normals:
        rep.nilpotent_normals_checked += 1
        for label, f in (("AN", a), ("BN", b)):
            if not S.member(lat.join(f, k), W):
                rep.clause2_failures.append((lat.orders[k], label))
    qa = lat.orders[a] // lat.orders[S.residual(a, Formation.ABELIAN_SYLOW)]
    qb = lat.orders[b] // lat.orders[S.residual(b, Formation.ABELIAN_SYLOW)]
    rep.coprime = gcd(qa, qb) == 1
    if rep.coprime:
        rep.clause3_holds = rep.g_in_wu
    return rep
