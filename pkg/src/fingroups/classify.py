"""Membership in the supported group classes and the structural predicates.

Two routes exist.  The ``in_formation``/``p_predicate`` family works on a
GroupTable directly.  ``Sections`` classifies a section H/N (N normal in H,
both subgroups of one parent) using only the parent's lattice, through the
correspondence between subgroups of H/N and subgroups between N and H.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

from .bits import members_of
from .chains import psn_marks, subnormal_in
from .errors import InvalidParameter, InvariantViolation
from .group import GroupTable, is_prime, p_part, prime_factors, quotient_group
from .lattice import (
    LatticeCache,
    Subgroup,
    all_subgroups,
    core_mask,
    derived_mask,
    fitting_mask,
    frattini_mask,
    is_normal_mask,
    is_soluble_group,
    mask_generators,
    o_p_mask,
    sylow_mask,
)


class Formation(str, Enum):
    ABELIAN = "Abelian"
    ABELIAN_SYLOW = "AbelianSylow"
    NILPOTENT = "Nilpotent"
    SOLUBLE = "Soluble"
    SUPERSOLUBLE = "Supersoluble"
    W_SUPERSOLUBLE = "WSupersoluble"
    METANILPOTENT = "Metanilpotent"

    @classmethod
    def parse(cls, name) -> "Formation":
        if isinstance(name, Formation):
            return name
        aliases = {"a": cls.ABELIAN_SYLOW, "n": cls.NILPOTENT, "u": cls.SUPERSOLUBLE,
                   "wu": cls.W_SUPERSOLUBLE}
        key = str(name).strip()
        for f in cls:
            if f.value.lower() == key.lower() or f.name.lower() == key.lower():
                return f
        if key.lower() in aliases:
            return aliases[key.lower()]
        raise InvalidParameter(f"unsupported formation {name!r}")


ALL_FORMATIONS = tuple(Formation)

# (smaller, larger): every group in the first class lies in the second
INCLUSIONS = (
    (Formation.ABELIAN, Formation.NILPOTENT),
    (Formation.NILPOTENT, Formation.SUPERSOLUBLE),
    (Formation.SUPERSOLUBLE, Formation.W_SUPERSOLUBLE),
    (Formation.W_SUPERSOLUBLE, Formation.SOLUBLE),
    (Formation.NILPOTENT, Formation.METANILPOTENT),
    (Formation.SUPERSOLUBLE, Formation.METANILPOTENT),
    (Formation.METANILPOTENT, Formation.SOLUBLE),
    (Formation.ABELIAN, Formation.ABELIAN_SYLOW),
)


def _commute(G: GroupTable, gens) -> bool:
    rows = G.rows
    return all(rows[a][b] == rows[b][a] for i, a in enumerate(gens) for b in gens[i + 1:])


# -- GroupTable-level predicates -------------------------------------------------


def is_nilpotent(G: GroupTable) -> bool:
    return all(is_normal_mask(G, sylow_mask(G, p)) for p in G.primes)


def has_abelian_sylows(G: GroupTable) -> bool:
    return all(_commute(G, mask_generators(G, sylow_mask(G, p))) for p in G.primes)


def is_supersoluble(G: GroupTable) -> bool:
    """Recursively split off a normal subgroup of prime order."""
    memo = G.__dict__.setdefault("_supersoluble", [])
    if memo:
        return memo[0]
    res = _supersoluble(G)
    memo.append(res)
    return res


def _supersoluble(G: GroupTable) -> bool:
    if G.order == 1:
        return True
    conj = G.conj
    for x in range(G.order):
        if not is_prime(G.element_order[x]):
            continue
        cyc = G.generate([x])
        if all((cyc >> conj[g][x]) & 1 for g in G.generators):
            Q, _ = quotient_group(G, cyc)
            # quotient closure: a failure here is a failure for G
            return _supersoluble(Q)
    return False


def is_metanilpotent(G: GroupTable) -> bool:
    F = fitting_mask(G)
    fgens = mask_generators(G, F)
    for p in G.primes:
        S = sylow_mask(G, p)
        if not is_normal_mask(G, G.generate(fgens + mask_generators(G, S))):
            return False
    return True


def is_w_supersoluble(G: GroupTable) -> bool:
    if not is_soluble_group(G):
        return False
    lat = all_subgroups(G)
    marks = psn_marks(lat)
    for p in G.primes:
        q = p_part(G.order, p)
        for i in range(lat.size):
            if lat.orders[i] == q and not (marks >> i) & 1:
                return False
    return True


def in_formation(G: GroupTable, F) -> bool:
    F = Formation.parse(F)
    if F is Formation.ABELIAN:
        return G.is_abelian
    if F is Formation.ABELIAN_SYLOW:
        return has_abelian_sylows(G)
    if F is Formation.NILPOTENT:
        return is_nilpotent(G)
    if F is Formation.SOLUBLE:
        return is_soluble_group(G)
    if F is Formation.SUPERSOLUBLE:
        return is_supersoluble(G)
    if F is Formation.W_SUPERSOLUBLE:
        return is_w_supersoluble(G)
    return is_metanilpotent(G)


def p_predicate(G: GroupTable, p: int, kind: str) -> bool:
    if not is_prime(p):
        raise InvalidParameter(f"{p} is not prime")
    if G.order % p:
        return True
    if kind == "p_closed":
        return is_normal_mask(G, sylow_mask(G, p))
    if kind == "p_nilpotent":
        # a normal Hall p'-subgroup must consist of exactly the p'-elements
        pprime = [x for x in range(G.order) if G.element_order[x] % p]
        return G.generate(pprime).bit_count() == G.order // p_part(G.order, p)
    raise InvalidParameter(f"unknown p-predicate {kind!r}")


def is_siding(G: GroupTable) -> bool:
    lat = all_subgroups(G)
    d = lat.find(G.derived_mask)
    return all(lat.normal[i] for i in lat.interval(d))


def has_supersoluble_sylow_tower(G: GroupTable) -> bool:
    if G.order == 1:
        return True
    p = G.primes[-1]
    S = sylow_mask(G, p)
    if not is_normal_mask(G, S):
        return False
    Q, _ = quotient_group(G, S)
    return has_supersoluble_sylow_tower(Q)


@dataclass(frozen=True)
class PrimitiveRecord:
    primitive: bool
    primitivator: Optional[Subgroup] = None
    minimal_normal: Optional[Subgroup] = None


def primitive_decomposition(G: GroupTable) -> PrimitiveRecord:
    lat = all_subgroups(G)
    M = None
    for i in sorted(lat.down[lat.top]):
        if core_mask(G, lat.masks[i]) == 1 << G.identity:
            M = i
            break
    if M is None:
        return PrimitiveRecord(False)
    minimal = [i for i in range(1, lat.size)
               if lat.normal[i] and not any(lat.normal[j] for j in members_of(lat.below[i]) if j not in (0, i))]
    unique = lat.subgroup(minimal[0]) if len(minimal) == 1 else None
    rec = PrimitiveRecord(True, lat.subgroup(M), unique)
    if is_soluble_group(G):
        _check_soluble_primitive(G, lat, rec)
    return rec


def _check_soluble_primitive(G: GroupTable, lat: LatticeCache, rec: PrimitiveRecord) -> None:
    e = 1 << G.identity
    problems = []
    if frattini_mask(G) != e:
        problems.append("Frattini subgroup is nontrivial")
    F = fitting_mask(G)
    ps = [p for p in G.primes if o_p_mask(G, p) != e]
    if len(ps) != 1 or o_p_mask(G, ps[0]) != F:
        problems.append("Fitting subgroup is not O_p for a single prime")
    if rec.minimal_normal is None or rec.minimal_normal.mask != F:
        problems.append("Fitting subgroup is not the unique minimal normal subgroup")
    from .lattice import centralizer_mask
    if centralizer_mask(G, F) != F:
        problems.append("Fitting subgroup is not self-centralizing")
    Fg = mask_generators(G, F)
    if not _commute(G, Fg) or any(not is_prime(G.element_order[x]) for x in Fg):
        problems.append("Fitting subgroup is not elementary abelian")
    M = rec.primitivator.mask
    if F & M != e or F.bit_count() * M.bit_count() != G.order:
        problems.append("G is not the semidirect product of F(G) and M")
    if ps and o_p_mask(G, ps[0], within=M) != e:
        problems.append("O_p(M) is nontrivial")
    if problems:
        raise InvariantViolation("; ".join(problems))


# -- section engine ------------------------------------------------------------------


class Sections:
    """Classify sections top/bottom of one group through its lattice."""

    def __init__(self, lat: LatticeCache):
        self.lat = lat
        self.G = lat.group
        self._memo: dict = {}
        self._sylows: dict = {}
        self.soluble = is_soluble_group(self.G)

    def sylows(self, top: int, p: int) -> list[int]:
        key = (top, p)
        r = self._sylows.get(key)
        if r is None:
            lat = self.lat
            q = p_part(lat.orders[top], p)
            r = self._sylows[key] = [i for i in lat.interval(top) if lat.orders[i] == q]
        return r

    def sylow(self, top: int, p: int) -> int:
        return self.sylows(top, p)[0]

    def primes(self, top: int, bottom: int = 0) -> list[int]:
        return prime_factors(self.lat.orders[top] // self.lat.orders[bottom])

    def normal_in(self, i: int, top: int) -> bool:
        return self.lat.is_normal_in(i, top)

    def check(self, top: int, bottom: int, tag) -> bool:
        key = (top, bottom, tag)
        r = self._memo.get(key)
        if r is None:
            r = self._memo[key] = getattr(self, "_" + _METHOD[tag])(top, bottom)
        return r

    def member(self, top: int, F, bottom: int = 0) -> bool:
        return self.check(top, bottom, Formation.parse(F))

    # individual predicates; every method assumes bottom is normal in top

    def _abelian(self, top, bottom):
        G, lat = self.G, self.lat
        nb = lat.masks[bottom]
        gens = lat.gens[top]
        return all((nb >> G.commutator(a, b)) & 1 for i, a in enumerate(gens) for b in gens[i + 1:])

    def _abelian_sylow(self, top, bottom):
        G, lat = self.G, self.lat
        nb = lat.masks[bottom]
        for p in self.primes(top, bottom):
            gens = lat.gens[self.sylow(top, p)]
            if not all((nb >> G.commutator(a, b)) & 1 for i, a in enumerate(gens) for b in gens[i + 1:]):
                return False
        return True

    def _nilpotent(self, top, bottom):
        lat = self.lat
        return all(self.normal_in(lat.join(self.sylow(top, p), bottom), top)
                   for p in self.primes(top, bottom))

    def _soluble(self, top, bottom):
        if self.soluble:
            return True
        G, lat = self.G, self.lat
        nb = lat.masks[bottom]
        d = lat.masks[top]
        while True:
            nxt = G.generate(mask_generators(G, derived_mask(G, d)) + lat.gens[bottom])
            if nxt == d:
                return d == nb
            d = nxt

    def _supersoluble(self, top, bottom):
        lat = self.lat
        ceiling = lat.below[top]
        seen = {bottom}
        stack = [bottom]
        while stack:
            k = stack.pop()
            if k == top:
                return True
            for j in lat.up[k]:
                if j in seen or not (ceiling >> j) & 1:
                    continue
                if is_prime(lat.orders[j] // lat.orders[k]) and self.normal_in(j, top):
                    seen.add(j)
                    stack.append(j)
        return False

    def _w_supersoluble(self, top, bottom):
        if not self._soluble(top, bottom):
            return False
        lat = self.lat
        marks = psn_marks(lat, top, bottom)
        for p in self.primes(top, bottom):
            for s in self.sylows(top, p):
                if not (marks >> lat.join(s, bottom)) & 1:
                    return False
        return True

    def _fitting(self, top, bottom) -> int:
        G, lat = self.G, self.lat
        gens = list(lat.gens[bottom])
        for p in self.primes(top, bottom):
            j = lat.join(self.sylow(top, p), bottom)
            gens += mask_generators(G, core_mask(G, lat.masks[j], within=lat.masks[top]))
        return lat.index[G.generate(gens)]

    def _metanilpotent(self, top, bottom):
        lat = self.lat
        f = self._fitting(top, bottom)
        return all(self.normal_in(lat.join(self.sylow(top, p), f), top)
                   for p in self.primes(top, bottom))

    def _siding(self, top, bottom):
        G, lat = self.G, self.lat
        d = lat.index[G.generate(mask_generators(G, derived_mask(G, lat.masks[top])) + lat.gens[bottom])]
        return all(self.normal_in(k, top) for k in lat.interval(d, bottom))

    def _sylow_tower(self, top, bottom):
        lat = self.lat
        cur = bottom
        for p in reversed(self.primes(top, bottom)):
            cur = lat.join(cur, self.sylow(top, p))
            if not self.normal_in(cur, top):
                return False
        return True

    # convenience wrappers

    def siding(self, top: int, bottom: int = 0) -> bool:
        return self.check(top, bottom, "siding")

    def sylow_tower(self, top: int, bottom: int = 0) -> bool:
        return self.check(top, bottom, "sylow_tower")

    def residual(self, top: int, F, bottom: int = 0) -> int:
        """Index of the F-residual of top/bottom (as a subgroup containing bottom)."""
        F = Formation.parse(F)
        key = ("residual", top, bottom, F)
        r = self._memo.get(key)
        if r is None:
            lat = self.lat
            m = lat.masks[top]
            for k in lat.interval(top, bottom):
                if self.normal_in(k, top) and self.check(top, k, F):
                    m &= lat.masks[k]
            r = self._memo[key] = lat.index[m]
        return r

    def normal_subgroups(self, top: int, bottom: int = 0) -> list[int]:
        return [k for k in self.lat.interval(top, bottom) if self.normal_in(k, top)]

    def subnormal(self, i: int, top: int) -> bool:
        return subnormal_in(self.lat, i, top)


_METHOD = {
    Formation.ABELIAN: "abelian",
    Formation.ABELIAN_SYLOW: "abelian_sylow",
    Formation.NILPOTENT: "nilpotent",
    Formation.SOLUBLE: "soluble",
    Formation.SUPERSOLUBLE: "supersoluble",
    Formation.W_SUPERSOLUBLE: "w_supersoluble",
    Formation.METANILPOTENT: "metanilpotent",
    "siding": "siding",
    "sylow_tower": "sylow_tower",
}


def sections(G_or_lat) -> Sections:
    lat = G_or_lat if isinstance(G_or_lat, LatticeCache) else all_subgroups(G_or_lat)
    s = lat.__dict__.get("_sections")
    if s is None:
        s = lat.__dict__["_sections"] = Sections(lat)
    return s


# -- report ----------------------------------------------------------------------------


@dataclass
class ClassificationReport:
    name: str
    order: int
    formations: dict = field(default_factory=dict)
    p_closed: dict = field(default_factory=dict)
    p_nilpotent: dict = field(default_factory=dict)
    siding: bool = False
    sylow_tower: bool = False
    primitive: Optional[PrimitiveRecord] = None

    def lines(self) -> list[tuple[str, object]]:
        out: list[tuple[str, object]] = [("order", self.order)]
        out += [(f.value, self.formations[f]) for f in ALL_FORMATIONS]
        out += [(f"p_closed[{p}]", v) for p, v in sorted(self.p_closed.items())]
        out += [(f"p_nilpotent[{p}]", v) for p, v in sorted(self.p_nilpotent.items())]
        out += [("Siding", self.siding), ("SupersolubleSylowTower", self.sylow_tower)]
        prim = self.primitive
        out.append(("Primitive", bool(prim and prim.primitive)))
        if prim and prim.primitive:
            out.append(("PrimitivatorOrder", prim.primitivator.order))
            if prim.minimal_normal is not None:
                out.append(("UniqueMinimalNormalOrder", prim.minimal_normal.order))
        return out

    def render_text(self) -> str:
        width = max(len(k) for k, _ in self.lines())
        return "\n".join(f"{k.ljust(width)}  {v}" for k, v in self.lines()) + "\n"

    def render_record(self) -> str:
        return "\n".join(f"group={self.name} check={k} value={v}" for k, v in self.lines()) + "\n"


def classification_report(G: GroupTable, name: Optional[str] = None) -> ClassificationReport:
    rep = ClassificationReport(name or G.name or G.expression or "G", G.order)
    for f in ALL_FORMATIONS:
        rep.formations[f] = in_formation(G, f)
    for p in G.primes:
        rep.p_closed[p] = p_predicate(G, p, "p_closed")
        rep.p_nilpotent[p] = p_predicate(G, p, "p_nilpotent")
    rep.siding = is_siding(G)
    rep.sylow_tower = has_supersoluble_sylow_tower(G)
    rep.primitive = primitive_decomposition(G)
    return rep
