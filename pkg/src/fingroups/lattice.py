"""Subgroups, the subgroup lattice, and the named subgroups built from them."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional

from . import config
from .bits import lowest, mask_of, members_of
from .errors import InvalidParameter, OrderCapExceeded
from .group import GroupTable, is_prime, p_part, prime_factors


@dataclass(frozen=True, eq=False)
class Subgroup:
    """A subgroup of ``parent`` stored as an element bitmask."""

    parent: GroupTable
    mask: int

    def __eq__(self, other):
        return isinstance(other, Subgroup) and other.parent is self.parent and other.mask == self.mask

    def __hash__(self):
        return hash(self.mask)

    def __repr__(self):
        return f"Subgroup(order={self.order}, members={list(self.members)})"

    @cached_property
    def members(self) -> tuple[int, ...]:
        return tuple(members_of(self.mask))

    @property
    def order(self) -> int:
        return self.mask.bit_count()

    def __contains__(self, x: int) -> bool:
        return bool((self.mask >> x) & 1)

    def __le__(self, other: "Subgroup") -> bool:
        return self.mask & ~other.mask == 0

    def __lt__(self, other: "Subgroup") -> bool:
        return self <= other and self.mask != other.mask

    def __and__(self, other: "Subgroup") -> "Subgroup":
        return Subgroup(self.parent, self.mask & other.mask)

    @property
    def is_trivial(self) -> bool:
        return self.order == 1

    @property
    def is_whole(self) -> bool:
        return self.mask == self.parent.full_mask

    @cached_property
    def generators(self) -> tuple[int, ...]:
        return mask_generators(self.parent, self.mask)


def _cache(G: GroupTable) -> dict:
    d = G.__dict__.get("_subgroup_cache")
    if d is None:
        d = G.__dict__["_subgroup_cache"] = {}
    return d


def mask_generators(G: GroupTable, mask: int) -> tuple[int, ...]:
    """A small generating set of the subgroup with the given mask."""
    cache = _cache(G)
    key = ("gens", mask)
    if key in cache:
        return cache[key]
    elems = sorted(members_of(mask), key=lambda x: (-G.element_order[x], x))
    gens: list[int] = []
    cur = 1 << G.identity
    for x in elems:
        if cur == mask:
            break
        if not (cur >> x) & 1:
            gens.append(x)
            cur = G.generate(gens)
    cache[key] = tuple(gens)
    return cache[key]


def conjugate_mask(G: GroupTable, g: int, mask: int) -> int:
    cg = G.conj[g]
    out = 0
    for x in members_of(mask):
        out |= 1 << cg[x]
    return out


def normalizer_mask(G: GroupTable, mask: int, gens: Optional[Iterable[int]] = None) -> int:
    gens = mask_generators(G, mask) if gens is None else tuple(gens)
    conj = G.conj
    out = 0
    for g in range(G.order):
        cg = conj[g]
        for k in gens:
            if not (mask >> cg[k]) & 1:
                break
        else:
            out |= 1 << g
    return out


def is_normal_mask(G: GroupTable, mask: int, within: Optional[int] = None) -> bool:
    """Is ``mask`` normalized by every element of ``within`` (default: G)?"""
    hgens = mask_generators(G, mask)
    wgens = G.generators if within is None else mask_generators(G, within)
    conj = G.conj
    for g in wgens:
        cg = conj[g]
        for k in hgens:
            if not (mask >> cg[k]) & 1:
                return False
    return True


def normal_closure_mask(G: GroupTable, mask: int, within: Optional[int] = None) -> int:
    wgens = G.generators if within is None else mask_generators(G, within)
    conj = G.conj
    seen = set(mask_generators(G, mask))
    todo = list(seen)
    while todo:
        x = todo.pop()
        for g in wgens:
            y = conj[g][x]
            if y not in seen:
                seen.add(y)
                todo.append(y)
    return G.generate(sorted(seen))


def core_mask(G: GroupTable, mask: int, within: Optional[int] = None) -> int:
    wgens = G.generators if within is None else mask_generators(G, within)
    x = mask
    while True:
        y = x
        for g in wgens:
            y &= conjugate_mask(G, g, x)
        if y == x:
            return x
        x = y


def centralizer_mask(G: GroupTable, mask: int) -> int:
    gens = mask_generators(G, mask)
    rows = G.rows
    out = 0
    for g in range(G.order):
        r = rows[g]
        if all(r[k] == rows[k][g] for k in gens):
            out |= 1 << g
    return out


def derived_mask(G: GroupTable, mask: int) -> int:
    """Derived subgroup of the subgroup with the given mask."""
    if mask == G.full_mask:
        return G.derived_mask
    gens = mask_generators(G, mask)
    comms = [G.commutator(a, b) for i, a in enumerate(gens) for b in gens[i + 1:]]
    return normal_closure_mask(G, G.generate(comms), within=mask)


def sylow_mask(G: GroupTable, p: int, within: Optional[int] = None) -> int:
    """A Sylow p-subgroup of ``within`` (default: G), grown through normalizers."""
    within = G.full_mask if within is None else within
    target = p_part(within.bit_count(), p)
    orders = G.element_order
    pelems = [x for x in members_of(within) if p_part(orders[x], p) == orders[x] and orders[x] > 1]
    P = 1 << G.identity
    gens: list[int] = []
    while P.bit_count() < target:
        N = normalizer_mask(G, P, gens) & within
        for x in pelems:
            if (N >> x) & 1 and not (P >> x) & 1:
                gens.append(x)
                P = G.generate(gens)
                break
        else:  # pragma: no cover - Sylow's theorem guarantees a candidate
            raise RuntimeError("no p-element in the normalizer")
    return P


def is_soluble_group(G: GroupTable) -> bool:
    cache = _cache(G)
    if "soluble" not in cache:
        m = G.full_mask
        while True:
            d = derived_mask(G, m)
            if d == m:
                break
            m = d
        cache["soluble"] = m == 1 << G.identity
    return cache["soluble"]


class LatticeCache:
    """All subgroups of a group, sorted by (order, member list).

    ``up[i]``/``down[i]`` are the covering relations; ``above[i]`` is a bitset
    over subgroup indices of the subgroups containing subgroup ``i``.
    """

    def __init__(self, G: GroupTable, cap: Optional[int] = None):
        cap = config.lattice_cap() if cap is None else cap
        if G.order > cap:
            raise OrderCapExceeded(f"lattice of a group of order {G.order} exceeds cap {cap}")
        self.group = G
        found = _enumerate(G)
        keyed = sorted(found.items(), key=lambda kv: (kv[0].bit_count(), members_of(kv[0])))
        self.masks: list[int] = [m for m, _ in keyed]
        self.gens: list[tuple[int, ...]] = [g for _, g in keyed]
        self.orders: list[int] = [m.bit_count() for m in self.masks]
        self.index: dict[int, int] = {m: i for i, m in enumerate(self.masks)}
        for m, g in keyed:
            _cache(G)[("gens", m)] = g
        self.size = len(self.masks)
        self.top = self.size - 1
        self.bottom = 0
        self._build_order()
        self.normal: list[bool] = [is_normal_mask(G, m) for m in self.masks]
        self._normalizers: dict[int, int] = {}
        self._below: Optional[list[int]] = None
        self._joins: dict[tuple[int, int], int] = {}

    def _build_order(self):
        G = self.group
        contains = [0] * G.order
        for i, m in enumerate(self.masks):
            bit = 1 << i
            for x in members_of(m):
                contains[x] |= bit
        everything = (1 << self.size) - 1
        above = []
        for i, gens in enumerate(self.gens):
            a = everything
            for g in gens:
                a &= contains[g]
            above.append(a)
        self.above = above
        up: list[list[int]] = []
        down: list[list[int]] = [[] for _ in range(self.size)]
        for i in range(self.size):
            cand = above[i] & ~(1 << i)
            covers = []
            while cand:
                j = lowest(cand)
                covers.append(j)
                cand &= ~above[j]
            up.append(covers)
            for j in covers:
                down[j].append(i)
        self.up = up
        self.down = down

    # -- lookups -------------------------------------------------------------

    def subgroup(self, i: int) -> Subgroup:
        return Subgroup(self.group, self.masks[i])

    def find(self, H) -> int:
        mask = H if isinstance(H, int) else H.mask
        return self.index[mask]

    @property
    def below(self) -> list[int]:
        """``below[i]``: bitset over indices of subgroups contained in ``i``."""
        if self._below is None:
            below = [0] * self.size
            for i, a in enumerate(self.above):
                bit = 1 << i
                for j in members_of(a):
                    below[j] |= bit
            self._below = below
        return self._below

    def normalizer(self, i: int) -> int:
        n = self._normalizers.get(i)
        if n is None:
            n = self._normalizers[i] = normalizer_mask(self.group, self.masks[i], self.gens[i])
        return n

    def is_normal_in(self, i: int, j: int) -> bool:
        """Is subgroup i (contained in j) normal in subgroup j?"""
        return self.masks[j] & ~self.normalizer(i) == 0

    def join(self, i: int, j: int) -> int:
        key = (i, j) if i <= j else (j, i)
        r = self._joins.get(key)
        if r is None:
            if self.above[j] >> i & 1:
                r = i
            elif self.above[i] >> j & 1:
                r = j
            else:
                r = self.index[self.group.generate(self.gens[i] + self.gens[j])]
            self._joins[key] = r
        return r

    def meet(self, i: int, j: int) -> int:
        return self.index[self.masks[i] & self.masks[j]]

    def interval(self, top: int, bottom: int = 0) -> list[int]:
        """Indices of subgroups K with bottom <= K <= top, ascending."""
        return members_of(self.below[top] & self.above[bottom])

    def report(self) -> str:
        lines = []
        for i, m in enumerate(self.masks):
            lines.append(f"{self.orders[i]} {members_of(m)} {'normal' if self.normal[i] else '-'}")
        return "\n".join(lines) + "\n"


def _enumerate(G: GroupTable) -> dict[int, tuple[int, ...]]:
    """Map subgroup mask -> generators, by cyclic extension from the trivial group."""
    e = G.identity
    found: dict[int, tuple[int, ...]] = {1 << e: ()}
    queue = [1 << e]
    rows = G.rows
    soluble = is_soluble_group(G)
    full = G.full_mask
    qi = 0
    while qi < len(queue):
        H = queue[qi]
        qi += 1
        hgens = found[H]
        hm = members_of(H)
        if soluble:
            # extend by x normalizing H with x of prime order modulo H
            cand = normalizer_mask(G, H, hgens) & ~H
            while cand:
                x = lowest(cand)
                k, y = 1, x
                while not (H >> y) & 1:
                    y = rows[y][x]
                    k += 1
                if not is_prime(k):
                    cand &= ~(1 << x)
                    continue
                K = H
                xi = x
                for _ in range(k - 1):
                    for h in hm:
                        K |= 1 << rows[h][xi]
                    xi = rows[xi][x]
                cand &= ~K
                if K not in found:
                    found[K] = hgens + (x,)
                    queue.append(K)
        else:
            done = H
            for x in range(G.order):
                if (done >> x) & 1:
                    continue
                for h in hm:
                    rh = rows[h]
                    for h2 in hm:
                        done |= 1 << rows[rh[x]][h2]
                K = G.generate(hgens + (x,))
                if K not in found:
                    found[K] = mask_generators(G, K) if K != full else G.generators
                    queue.append(K)
    return found


def all_subgroups(G: GroupTable, cap: Optional[int] = None) -> LatticeCache:
    """The lattice of G, computed once and then shared."""
    lat = G.__dict__.get("_lattice")
    if lat is None:
        lat = LatticeCache(G, cap)
        G.__dict__["_lattice"] = lat
    return lat


# -- spec-level operations ---------------------------------------------------------


def subgroup_generated(G: GroupTable, S: Iterable[int]) -> Subgroup:
    S = list(S)
    for x in S:
        if not 0 <= x < G.order:
            raise InvalidParameter(f"element index {x} out of range")
    return Subgroup(G, G.generate(S))


def whole(G: GroupTable) -> Subgroup:
    return Subgroup(G, G.full_mask)


def trivial(G: GroupTable) -> Subgroup:
    return Subgroup(G, 1 << G.identity)


def select_subgroups(G: GroupTable, kind: str) -> list[Subgroup]:
    lat = all_subgroups(G)
    if kind == "maximal":
        idx = lat.down[lat.top]
    elif kind == "normal":
        idx = [i for i in range(lat.size) if lat.normal[i]]
    elif kind == "minimal_normal":
        normals = [i for i in range(1, lat.size) if lat.normal[i]]
        idx = [i for i in normals
               if not any(j != i and lat.below[i] >> j & 1 for j in normals)]
    else:
        raise InvalidParameter(f"unknown subgroup kind {kind!r}")
    return [lat.subgroup(i) for i in idx]


def is_normal(G: GroupTable, H: Subgroup) -> bool:
    return is_normal_mask(G, H.mask)


def frattini_mask(G: GroupTable) -> int:
    lat = all_subgroups(G)
    m = G.full_mask
    for i in lat.down[lat.top]:
        m &= lat.masks[i]
    return m


def o_p_mask(G: GroupTable, p: int, within: Optional[int] = None) -> int:
    if within is None and G.order % p:
        return 1 << G.identity
    return core_mask(G, sylow_mask(G, p, within), within)


def fitting_mask(G: GroupTable, within: Optional[int] = None) -> int:
    order = G.order if within is None else within.bit_count()
    gens: list[int] = []
    for p in prime_factors(order):
        gens += mask_generators(G, o_p_mask(G, p, within))
    return G.generate(gens)


def characteristic_subgroup(G: GroupTable, kind: str, p: Optional[int] = None) -> Subgroup:
    if kind == "center":
        m = G.center_mask
    elif kind == "derived":
        m = G.derived_mask
    elif kind == "fitting":
        m = fitting_mask(G)
    elif kind == "frattini":
        m = frattini_mask(G)
    elif kind == "o_p":
        if p is None or not is_prime(p):
            raise InvalidParameter("o_p needs a prime p")
        m = o_p_mask(G, p)
    else:
        raise InvalidParameter(f"unknown characteristic subgroup {kind!r}")
    return Subgroup(G, m)


def relative_subgroup(G: GroupTable, H: Subgroup, kind: str) -> Subgroup:
    if kind == "core":
        m = core_mask(G, H.mask)
    elif kind == "normal_closure":
        m = normal_closure_mask(G, H.mask)
    elif kind == "centralizer":
        m = centralizer_mask(G, H.mask)
    elif kind == "normalizer":
        m = normalizer_mask(G, H.mask)
    else:
        raise InvalidParameter(f"unknown relative subgroup {kind!r}")
    return Subgroup(G, m)


def sylow(G: GroupTable, p: int) -> Subgroup:
    if not is_prime(p):
        raise InvalidParameter(f"{p} is not prime")
    if G.order % p:
        return trivial(G)
    return Subgroup(G, sylow_mask(G, p))


@dataclass(frozen=True)
class ComplexProduct:
    elements: int
    is_subgroup: bool
    equals_parent: bool

    @property
    def size(self) -> int:
        return self.elements.bit_count()


def product_set(G: GroupTable, a: int, b: int) -> int:
    rows = G.rows
    bm = members_of(b)
    out = 0
    for x in members_of(a):
        r = rows[x]
        for y in bm:
            out |= 1 << r[y]
    return out


def complex_product(A: Subgroup, B: Subgroup) -> ComplexProduct:
    if A.parent is not B.parent:
        raise InvalidParameter("subgroups of different parents")
    G = A.parent
    ab = product_set(G, A.mask, B.mask)
    ba = product_set(G, B.mask, A.mask)
    return ComplexProduct(ab, ab == ba, ab == G.full_mask)
