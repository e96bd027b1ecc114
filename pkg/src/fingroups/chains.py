"""Subnormality, P-subnormality with chain certificates, and sn-permutability."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from .bits import members_of
from .errors import InvalidParameter
from .group import GroupTable, is_prime
from .lattice import LatticeCache, Subgroup, all_subgroups, normal_closure_mask

prime_index = lru_cache(maxsize=None)(is_prime)


def _lattice_memo(lat: LatticeCache, name: str) -> dict:
    d = lat.__dict__.get(name)
    if d is None:
        d = lat.__dict__[name] = {}
    return d


# -- subnormality ---------------------------------------------------------------


def subnormal_mask(G: GroupTable, h: int, within: Optional[int] = None) -> bool:
    """Is the subgroup ``h`` subnormal in ``within`` (default G)?

    Runs the iterated normal-closure series down from ``within``.
    """
    x = G.full_mask if within is None else within
    while True:
        y = normal_closure_mask(G, h, within=x)
        if y == x:
            return x == h
        x = y


def is_subnormal(G: GroupTable, H: Subgroup) -> bool:
    return subnormal_mask(G, H.mask)


def subnormal_in(lat: LatticeCache, i: int, j: int) -> bool:
    """Is lattice subgroup i subnormal in lattice subgroup j (i <= j)?"""
    memo = _lattice_memo(lat, "_subnormal")
    key = (i, j)
    r = memo.get(key)
    if r is None:
        r = memo[key] = subnormal_mask(lat.group, lat.masks[i], lat.masks[j])
    return r


def subnormal_subgroups(lat: LatticeCache, j: int) -> list[int]:
    return [i for i in lat.interval(j) if subnormal_in(lat, i, j)]


# -- P-subnormality ------------------------------------------------------------------


def psn_marks(lat: LatticeCache, top: Optional[int] = None, bottom: int = 0) -> int:
    """Bitset of the subgroups K (bottom <= K <= top) with K/bottom P-subnormal in top/bottom.

    Marks ``top`` and then every subgroup having a marked cover at prime index.
    """
    top = lat.top if top is None else top
    memo = _lattice_memo(lat, "_psn")
    key = (top, bottom)
    r = memo.get(key)
    if r is not None:
        return r
    orders, down = lat.orders, lat.down
    floor = lat.above[bottom] if bottom else -1
    marks = 1 << top
    stack = [top]
    while stack:
        k = stack.pop()
        ok = orders[k]
        for j in down[k]:
            if (marks >> j) & 1 or not (floor >> j) & 1:
                continue
            if prime_index(ok // orders[j]):
                marks |= 1 << j
                stack.append(j)
    memo[key] = marks
    return marks


def is_p_subnormal(lat: LatticeCache, i: int, top: Optional[int] = None, bottom: int = 0) -> bool:
    return bool((psn_marks(lat, top, bottom) >> i) & 1)


@dataclass(frozen=True)
class ChainWitness:
    """H = H0 < H1 < ... < Hn = G with every index prime."""

    chain: tuple[Subgroup, ...]

    @property
    def length(self) -> int:
        return len(self.chain) - 1

    @property
    def indices(self) -> list[int]:
        return [b.order // a.order for a, b in zip(self.chain, self.chain[1:])]

    def validate(self, top: Optional[Subgroup] = None) -> bool:
        if not self.chain:
            return False
        G = self.chain[0].parent
        end = top.mask if top is not None else G.full_mask
        if self.chain[-1].mask != end:
            return False
        for a, b in zip(self.chain, self.chain[1:]):
            if not a < b or b.order % a.order or not is_prime(b.order // a.order):
                return False
            # b must really be a subgroup: closed under the table
            if G.generate(b.members) != b.mask:
                return False
        return G.generate(self.chain[0].members) == self.chain[0].mask

    def render(self) -> str:
        parts = [f"H0 (order {self.chain[0].order})"]
        for k, (a, b) in enumerate(zip(self.chain, self.chain[1:]), start=1):
            label = "G" if k == len(self.chain) - 1 else f"H{k}"
            parts.append(f"{label} (order {b.order}) [{b.order // a.order}]")
        return " < ".join(parts)

    def __str__(self):
        return self.render()


def witness_in(lat: LatticeCache, i: int, top: Optional[int] = None) -> Optional[ChainWitness]:
    top = lat.top if top is None else top
    marks = psn_marks(lat, top)
    if not (marks >> i) & 1:
        return None
    chain = [i]
    cur = i
    while cur != top:
        parents = [j for j in lat.up[cur]
                   if (marks >> j) & 1 and prime_index(lat.orders[j] // lat.orders[cur])]
        cur = min(parents)  # smallest order, then smallest member list
        chain.append(cur)
    return ChainWitness(tuple(lat.subgroup(k) for k in chain))


def p_subnormal_witness(G: GroupTable, H: Subgroup) -> Optional[ChainWitness]:
    lat = all_subgroups(G)
    return witness_in(lat, lat.find(H))


# -- mutual sn-permutability ----------------------------------------------------------


def permutes(lat: LatticeCache, i: int, j: int) -> bool:
    """Is the product set of subgroups i and j a subgroup?"""
    k = lat.join(i, j)
    return lat.orders[k] * lat.orders[lat.meet(i, j)] == lat.orders[i] * lat.orders[j]


def mutually_sn_permutable_in(lat: LatticeCache, a: int, b: int) -> tuple[bool, Optional[tuple[int, int]]]:
    for s in subnormal_subgroups(lat, b):
        if not permutes(lat, a, s):
            return False, (a, s)
    for s in subnormal_subgroups(lat, a):
        if not permutes(lat, b, s):
            return False, (b, s)
    return True, None


def mutually_sn_permutable(G: GroupTable, A: Subgroup, B: Subgroup
                           ) -> tuple[bool, Optional[tuple[Subgroup, Subgroup]]]:
    """Returns the verdict and, when false, the first non-permuting pair."""
    if A.parent is not G or B.parent is not G:
        raise InvalidParameter("subgroups must belong to G")
    lat = all_subgroups(G)
    ok, pair = mutually_sn_permutable_in(lat, lat.find(A), lat.find(B))
    if ok:
        return True, None
    return False, (lat.subgroup(pair[0]), lat.subgroup(pair[1]))
