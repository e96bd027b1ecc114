"""Named example groups, a deterministic desk-scale corpus, and factorization scans."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from math import gcd
from typing import Callable, Iterable, Iterator, Optional

from .chains import psn_marks, subnormal_in
from .classify import Formation, sections
from .errors import InvalidParameter, NoCandidatePassesBundle
from .group import (GroupTable, actions, alternating, cyclic, dihedral, direct_product,
                    elementary_abelian, export_cayley, is_isomorphic, restrict,
                    semidirect_product, symmetric)
from .lattice import LatticeCache, Subgroup, all_subgroups


class PaperGroupId(str, Enum):
    G18_3 = "g18_3"
    G24_8 = "g24_8"
    G72_40 = "g72_40"
    G144_115 = "g144_115"
    G216_157 = "g216_157"
    A4 = "a4"
    E25_Z3 = "e25_z3"

    @classmethod
    def parse(cls, value) -> "PaperGroupId":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise InvalidParameter(f"unknown example group {value!r}") from None


# -- subgroup helpers -----------------------------------------------------------------


def _iso(G: GroupTable, mask: int, ref: GroupTable) -> bool:
    if bin(mask).count("1") != ref.order:
        return False
    T, _ = restrict(G, mask)
    return is_isomorphic(T, ref)[0]


def _covers_product(lat: LatticeCache, a: int, b: int) -> bool:
    return lat.orders[a] * lat.orders[b] == lat.group.order * lat.orders[lat.meet(a, b)]


def chain_with_orders(lat: LatticeCache, start: int, orders: Iterable[int]) -> Optional[list[int]]:
    """A chain start < H1 < ... < G through subgroups of the given orders, each index prime.

    ``orders`` lists the intermediate orders only.  Returns lattice indices or None.
    """
    want = list(orders) + [lat.group.order]

    def walk(k, depth):
        if depth == len(want):
            return [k] if k == lat.top else None
        for j in lat.up[k]:
            if lat.orders[j] == want[depth]:
                rest = walk(j, depth + 1)
                if rest is not None:
                    return [k] + rest
        return None

    return walk(start, 0)


# -- property bundles ---------------------------------------------------------------------


@dataclass(frozen=True)
class BundleCheck:
    name: str
    ok: bool


@dataclass
class BundleResult:
    id: PaperGroupId
    checks: list[BundleCheck]
    A: Optional[Subgroup] = None
    B: Optional[Subgroup] = None

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.checks)

    def failures(self) -> list[str]:
        return [c.name for c in self.checks if not c.ok]


class _Bundle:
    """Collects named checks; stops evaluating after the first failure."""

    def __init__(self, pid: PaperGroupId):
        self.result = BundleResult(pid, [])
        self.alive = True

    def check(self, name: str, fn: Callable[[], bool]) -> bool:
        if not self.alive:
            self.result.checks.append(BundleCheck(name, False))
            return False
        ok = bool(fn())
        self.result.checks.append(BundleCheck(name, ok))
        self.alive = ok
        return ok


def _find_pair(lat: LatticeCache, left: list[int], right: list[int]) -> Optional[tuple[int, int]]:
    for a in left:
        for b in right:
            if _covers_product(lat, a, b):
                return a, b
    return None


def _sn_permutable(lat, a, b) -> bool:
    from .chains import mutually_sn_permutable_in
    return mutually_sn_permutable_in(lat, a, b)[0]


def _bundle_g18_3(G: GroupTable, bd: _Bundle) -> None:
    if not bd.check("order=18", lambda: G.order == 18):
        return
    lat = all_subgroups(G)
    marks = psn_marks(lat)
    E9, Z2 = elementary_abelian(3, 2), cyclic(2)
    As = [i for i in range(lat.size) if lat.orders[i] == 9 and _iso(G, lat.masks[i], E9)]
    Bs = [i for i in range(lat.size) if lat.orders[i] == 2]
    found = []
    for a in As:
        for b in Bs:
            if (_covers_product(lat, a, b) and (marks >> a) & 1 and (marks >> b) & 1
                    and not _sn_permutable(lat, a, b)):
                found.append((a, b))
    if bd.check("A~E9,B~Z2,AB=G,both P-subnormal,not mutually sn-permutable", lambda: bool(found)):
        bd.result.A, bd.result.B = lat.subgroup(found[0][0]), lat.subgroup(found[0][1])


def _is_metacyclic(lat: LatticeCache) -> bool:
    G = lat.group
    S = sections(lat)
    for k in S.normal_subgroups(lat.top):
        if max(G.element_order[x] for x in lat.subgroup(k).members) != lat.orders[k]:
            continue
        if S.check(lat.top, k, Formation.ABELIAN) and _quotient_cyclic(lat, k):
            return True
    return False


def _quotient_cyclic(lat: LatticeCache, k: int) -> bool:
    # G/K is cyclic iff some g has <g, K> = G
    G = lat.group
    gens = lat.gens[k]
    return any(G.generate((g,) + gens) == G.full_mask for g in range(G.order))


def _is_t_group(lat: LatticeCache) -> bool:
    return all(lat.normal[i] for i in range(lat.size) if subnormal_in(lat, i, lat.top))


def _bundle_g24_8(G: GroupTable, bd: _Bundle) -> None:
    if not bd.check("order=24", lambda: G.order == 24):
        return
    lat = all_subgroups(G)
    S = sections(lat)
    bd.check("siding", lambda: S.siding(lat.top))
    bd.check("not metacyclic", lambda: not _is_metacyclic(lat))
    bd.check("not a t-group", lambda: not _is_t_group(lat))
    bd.check("supersoluble", lambda: S.member(lat.top, Formation.SUPERSOLUBLE))


def _bundle_g72_40(G: GroupTable, bd: _Bundle) -> None:
    if not bd.check("order=72", lambda: G.order == 72):
        return
    lat = all_subgroups(G)
    S = sections(lat)
    marks = psn_marks(lat)
    bd.check("not w-supersoluble", lambda: not S.member(lat.top, Formation.W_SUPERSOLUBLE))
    ref = direct_product(cyclic(3), symmetric(3))
    As = [i for i in range(lat.size) if lat.orders[i] == 18 and (marks >> i) & 1
          and S.member(i, Formation.SUPERSOLUBLE) and _iso(G, lat.masks[i], ref)]
    if bd.check("P-subnormal supersoluble A~Z3xS3 of index 4", lambda: bool(As)):
        bd.result.A = lat.subgroup(As[0])
    bd.check("Sylow 2-subgroup maximal", lambda: lat.up[S.sylow(lat.top, 2)] == [lat.top])
    bd.check("not 2-closed", lambda: not lat.normal[S.sylow(lat.top, 2)])


def _bundle_g144_115(G: GroupTable, bd: _Bundle) -> None:
    if not bd.check("order=144", lambda: G.order == 144):
        return
    if not bd.check("has elements of order 12", lambda: 12 in G.element_order):
        return
    lat = all_subgroups(G)
    S = sections(lat)
    marks = psn_marks(lat)
    W = Formation.W_SUPERSOLUBLE
    if not bd.check("not w-supersoluble", lambda: not S.member(lat.top, W)):
        return
    S3 = symmetric(3)
    S3xS3 = direct_product(S3, S3)
    Z2xS3xS3 = direct_product(cyclic(2), S3xS3)
    D12, Z12 = dihedral(12), cyclic(12)

    def a_ok(i):
        if not ((marks >> i) & 1 and S.member(i, W) and _iso(G, lat.masks[i], D12)):
            return False
        for j in lat.up[i]:
            if lat.orders[j] == 36 and _iso(G, lat.masks[j], S3xS3):
                for k in lat.up[j]:
                    if lat.orders[k] == 72 and lat.up[k] == [lat.top] \
                            and _iso(G, lat.masks[k], Z2xS3xS3):
                        return True
        return False

    def b_ok(i):
        return ((marks >> i) & 1 and S.member(i, W) and _iso(G, lat.masks[i], Z12)
                and chain_with_orders(lat, i, [36, 72]) is not None)

    As = [i for i in range(lat.size) if lat.orders[i] == 12 and a_ok(i)]
    Bs = [i for i in range(lat.size) if lat.orders[i] == 12 and b_ok(i)]
    pair = _find_pair(lat, As, Bs)
    if bd.check("A~D12,B~Z12,AB=G,both w-supersoluble and P-subnormal via index 3,2,2 chains",
                lambda: pair is not None):
        a, b = pair
        bd.result.A, bd.result.B = lat.subgroup(a), lat.subgroup(b)
        bd.check("B nilpotent", lambda: S.member(b, Formation.NILPOTENT))
        bd.check("B not normal", lambda: not lat.normal[b])


def _bundle_g216_157(G: GroupTable, bd: _Bundle) -> None:
    if not bd.check("order=216", lambda: G.order == 216):
        return
    lat = all_subgroups(G)
    S = sections(lat)
    marks = psn_marks(lat)
    if not bd.check("not w-supersoluble", lambda: not S.member(lat.top, Formation.W_SUPERSOLUBLE)):
        return
    S3 = symmetric(3)
    refA = direct_product(S3, S3)
    refB = direct_product(elementary_abelian(3, 2), S3)
    As = [i for i in range(lat.size) if lat.orders[i] == 36 and (marks >> i) & 1
          and S.member(i, Formation.SUPERSOLUBLE) and _iso(G, lat.masks[i], refA)]
    Bs = [i for i in range(lat.size) if lat.orders[i] == 54 and subnormal_in(lat, i, lat.top)
          and S.siding(i) and _iso(G, lat.masks[i], refB)]
    pair = _find_pair(lat, As, Bs)
    if bd.check("A~S3xS3 P-subnormal supersoluble, B~Z3xZ3xS3 subnormal siding, AB=G",
                lambda: pair is not None):
        bd.result.A, bd.result.B = lat.subgroup(pair[0]), lat.subgroup(pair[1])
        bd.check("B not normal", lambda: not lat.normal[pair[1]])


def _bundle_a4(G: GroupTable, bd: _Bundle) -> None:
    if not bd.check("order=12", lambda: G.order == 12):
        return
    lat = all_subgroups(G)
    S = sections(lat)
    marks = psn_marks(lat)
    bd.check("abelian Sylow subgroups", lambda: S.member(lat.top, Formation.ABELIAN_SYLOW))
    bd.check("not w-supersoluble", lambda: not S.member(lat.top, Formation.W_SUPERSOLUBLE))
    E4 = elementary_abelian(2, 2)
    As = [i for i in range(lat.size) if lat.orders[i] == 4 and (marks >> i) & 1
          and S.member(i, Formation.SUPERSOLUBLE) and _iso(G, lat.masks[i], E4)]
    Bs = [i for i in range(lat.size) if lat.orders[i] == 3 and not (marks >> i) & 1]
    pair = _find_pair(lat, As, Bs)
    if bd.check("A~E4 P-subnormal supersoluble, B~Z3 not P-subnormal, AB=G",
                lambda: pair is not None):
        bd.result.A, bd.result.B = lat.subgroup(pair[0]), lat.subgroup(pair[1])


def _bundle_e25_z3(G: GroupTable, bd: _Bundle) -> None:
    if not bd.check("order=75", lambda: G.order == 75):
        return
    lat = all_subgroups(G)
    S = sections(lat)
    marks = psn_marks(lat)
    bd.check("not w-supersoluble", lambda: not S.member(lat.top, Formation.W_SUPERSOLUBLE))
    As = [i for i in range(lat.size) if lat.orders[i] == 25 and (marks >> i) & 1]
    Bs = [i for i in range(lat.size) if lat.orders[i] == 3 and S.member(i, Formation.NILPOTENT)]
    pair = _find_pair(lat, As, Bs)
    if bd.check("P-subnormal A of order 25 and nilpotent B of index 25 with AB=G",
                lambda: pair is not None):
        bd.result.A, bd.result.B = lat.subgroup(pair[0]), lat.subgroup(pair[1])


_BUNDLES = {
    PaperGroupId.G18_3: _bundle_g18_3,
    PaperGroupId.G24_8: _bundle_g24_8,
    PaperGroupId.G72_40: _bundle_g72_40,
    PaperGroupId.G144_115: _bundle_g144_115,
    PaperGroupId.G216_157: _bundle_g216_157,
    PaperGroupId.A4: _bundle_a4,
    PaperGroupId.E25_Z3: _bundle_e25_z3,
}


def check_bundle(pid, G: GroupTable) -> BundleResult:
    pid = PaperGroupId.parse(pid)
    bd = _Bundle(pid)
    _BUNDLES[pid](G, bd)
    return bd.result


# -- construction recipes -------------------------------------------------------------------


def _semidirect_candidates(N: GroupTable, H: GroupTable) -> Iterator[GroupTable]:
    for a in actions(N, H):
        yield semidirect_product(N, H, a)


def _candidates(pid: PaperGroupId) -> Iterator[GroupTable]:
    if pid is PaperGroupId.A4:
        yield alternating(4)
    elif pid is PaperGroupId.G18_3:
        yield from _semidirect_candidates(symmetric(3), cyclic(3))
    elif pid is PaperGroupId.G24_8:
        yield from _semidirect_candidates(direct_product(cyclic(6), cyclic(2)), cyclic(2))
    elif pid is PaperGroupId.G72_40:
        S3 = symmetric(3)
        yield from _semidirect_candidates(direct_product(S3, S3), cyclic(2))
    elif pid is PaperGroupId.E25_Z3:
        yield from _semidirect_candidates(elementary_abelian(5, 2), cyclic(3))
    elif pid is PaperGroupId.G216_157:
        yield direct_product(cyclic(3), paper_group(PaperGroupId.G72_40))
    elif pid is PaperGroupId.G144_115:
        E9, Z4, Z2 = elementary_abelian(3, 2), cyclic(4), cyclic(2)
        for inner in _distinct(_semidirect_candidates(E9, Z4)):
            yield from _semidirect_candidates(direct_product(Z2, inner), Z2)


def _distinct(groups: Iterable[GroupTable]) -> Iterator[GroupTable]:
    """Skip groups isomorphic to one already yielded."""
    seen: dict[tuple, list[GroupTable]] = {}
    for G in groups:
        bucket = seen.setdefault(G.fingerprint(), [])
        if any(is_isomorphic(G, H)[0] for H in bucket):
            continue
        bucket.append(G)
        yield G


@lru_cache(maxsize=None)
def _build(pid: PaperGroupId) -> tuple[GroupTable, BundleResult]:
    for G in _distinct(_candidates(pid)):
        res = check_bundle(pid, G)
        if res.passed:
            G.name = pid.value
            return G, res
    raise NoCandidatePassesBundle(f"no candidate construction satisfies the {pid.value} bundle")


def paper_group(pid) -> GroupTable:
    """Build the named example group; the result satisfies its property bundle."""
    return _build(PaperGroupId.parse(pid))[0]


def paper_factors(pid) -> tuple[Optional[Subgroup], Optional[Subgroup]]:
    """The factor subgroups found while checking the bundle (None where not applicable)."""
    res = _build(PaperGroupId.parse(pid))[1]
    return res.A, res.B


def bundle_report(pid) -> BundleResult:
    """Re-run the bundle on the built group."""
    pid = PaperGroupId.parse(pid)
    return check_bundle(pid, paper_group(pid))


# -- factorizations ---------------------------------------------------------------------------

FLAG_NAMES = ("w_supersoluble", "p_subnormal", "subnormal", "nilpotent", "siding", "normal")


@dataclass(frozen=True)
class FactorFlags:
    w_supersoluble: bool
    p_subnormal: bool
    subnormal: bool
    nilpotent: bool
    siding: bool
    normal: bool

    def render(self) -> str:
        return ",".join(n for n in FLAG_NAMES if getattr(self, n)) or "-"


@dataclass(frozen=True)
class FactorizationRecord:
    A: Subgroup
    B: Subgroup
    flags_A: FactorFlags
    flags_B: FactorFlags
    coprime_A_quotients: bool

    @property
    def flags(self) -> tuple[FactorFlags, FactorFlags]:
        return self.flags_A, self.flags_B

    def theorem1_hypotheses(self) -> bool:
        return all(f.w_supersoluble and f.p_subnormal for f in self.flags)


def factor_flags(lat: LatticeCache, i: int) -> FactorFlags:
    S = sections(lat)
    return FactorFlags(
        w_supersoluble=S.member(i, Formation.W_SUPERSOLUBLE),
        p_subnormal=bool((psn_marks(lat) >> i) & 1),
        subnormal=subnormal_in(lat, i, lat.top),
        nilpotent=S.member(i, Formation.NILPOTENT),
        siding=S.siding(i),
        normal=lat.normal[i],
    )


def factorization_pairs(lat: LatticeCache) -> list[tuple[int, int]]:
    """Unordered pairs (a, b), a >= b in lattice order, with AB = G; largest first."""
    n = lat.group.order
    orders = lat.orders
    out = []
    for a in range(lat.size - 1, -1, -1):
        oa = orders[a]
        for b in range(a, -1, -1):
            ob = orders[b]
            if oa * ob < n:
                break
            if oa * ob == n * orders[lat.meet(a, b)]:
                out.append((a, b))
    return out


def factorization_scan(G: GroupTable, filter: Optional[Callable[[FactorizationRecord], bool]] = None
                       ) -> list[FactorizationRecord]:
    lat = all_subgroups(G)
    S = sections(lat)
    flags: dict[int, FactorFlags] = {}
    aq: dict[int, int] = {}

    def fl(i):
        f = flags.get(i)
        if f is None:
            f = flags[i] = factor_flags(lat, i)
        return f

    def a_quot(i):
        q = aq.get(i)
        if q is None:
            q = aq[i] = lat.orders[i] // lat.orders[S.residual(i, Formation.ABELIAN_SYLOW)]
        return q

    records = []
    for a, b in factorization_pairs(lat):
        rec = FactorizationRecord(lat.subgroup(a), lat.subgroup(b), fl(a), fl(b),
                                  gcd(a_quot(a), a_quot(b)) == 1)
        if filter is None or filter(rec):
            records.append(rec)
    return records


# -- corpus -------------------------------------------------------------------------------------

# elementary abelian groups of rank above this are left out; their lattices explode
ELEMENTARY_RANK_LIMIT = 4


def _named(max_order: int) -> Iterator[GroupTable]:
    for m in range(2, max_order + 1):
        yield cyclic(m)
    for p in (2, 3, 5, 7):
        for t in range(2, ELEMENTARY_RANK_LIMIT + 1):
            if p ** t <= max_order:
                yield elementary_abelian(p, t)
    for n in (3, 4, 5):
        if _factorial(n) <= max_order:
            yield symmetric(n)
    for n in (4, 5):
        if _factorial(n) // 2 <= max_order:
            yield alternating(n)
    for m in range(6, max_order + 1, 2):
        yield dihedral(m)


def _factorial(n: int) -> int:
    r = 1
    for k in range(2, n + 1):
        r *= k
    return r


_PAPER_ORDERS = {
    PaperGroupId.A4: 12, PaperGroupId.G18_3: 18, PaperGroupId.G24_8: 24,
    PaperGroupId.G72_40: 72, PaperGroupId.E25_Z3: 75, PaperGroupId.G144_115: 144,
    PaperGroupId.G216_157: 216,
}


def _blocks() -> list[GroupTable]:
    out = [cyclic(m) for m in range(2, 13)]
    out += [elementary_abelian(2, 2), elementary_abelian(3, 2)]
    out += [dihedral(m) for m in (6, 8, 10, 12)]
    out += [alternating(4), symmetric(4)]
    return out


def _semidirect_inputs() -> tuple[list[GroupTable], list[GroupTable]]:
    bases = [cyclic(m) for m in range(3, 17)]
    bases += [elementary_abelian(2, 2), elementary_abelian(3, 2), elementary_abelian(5, 2),
              elementary_abelian(2, 3), direct_product(cyclic(2), cyclic(6)), dihedral(6)]
    tops = [cyclic(2), cyclic(3), cyclic(4), elementary_abelian(2, 2), cyclic(6), cyclic(7),
            cyclic(8), symmetric(3), dihedral(8)]
    return bases, tops


def _products(max_order: int) -> Iterator[GroupTable]:
    blocks = _blocks()
    for i, X in enumerate(blocks):
        for Y in blocks[i:]:
            if X.order * Y.order <= max_order:
                yield direct_product(X, Y)
    bases, tops = _semidirect_inputs()
    for N in bases:
        for H in tops:
            if N.order * H.order > max_order:
                continue
            for a in actions(N, H):
                if a.is_trivial():
                    continue
                yield semidirect_product(N, H, a)


def corpus_generate(max_order: int) -> list[GroupTable]:
    """Deterministic, isomorphism-free list of groups of order at most ``max_order``."""
    if max_order < 1:
        raise InvalidParameter("max_order must be positive")
    from .config import lattice_cap
    if max_order > lattice_cap():
        raise InvalidParameter(f"max_order {max_order} exceeds the lattice cap {lattice_cap()}")

    def stream():
        yield cyclic(1)
        yield from _named(max_order)
        for pid, n in _PAPER_ORDERS.items():
            if n <= max_order:
                yield paper_group(pid)
        yield from _products(max_order)

    out = []
    for G in _distinct(stream()):
        if G.name is None:
            G.name = G.expression
        out.append(G)
    return out


def manifest_lines(groups: Iterable[GroupTable]) -> list[str]:
    """One line per group: name, order, construction expression, fingerprint."""
    lines = []
    for G in groups:
        fp = G.fingerprint()
        fp_text = "order={};exp={};orders={};center={};derived={}".format(
            fp[0], fp[1], "/".join(f"{o}:{c}" for o, c in fp[2]), fp[3], fp[4])
        lines.append(f"{G.name}\t{G.order}\t{G.expression}\t{fp_text}")
    return lines


def export_paper_tables(directory) -> list[str]:
    """Write every example group's Cayley table to ``directory``; returns the file names."""
    from pathlib import Path
    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    names = []
    for pid in PaperGroupId:
        path = d / f"{pid.value}.cayley"
        path.write_text(export_cayley(paper_group(pid)))
        names.append(path.name)
    return names
