"""Slow, independent reference computations used to cross-check the fast paths."""

from __future__ import annotations

from typing import Callable, Optional

from .classify import Formation, in_formation
from .group import GroupTable, is_prime, quotient_group
from .lattice import LatticeCache


def _close(G: GroupTable, mask: int) -> int:
    """Naive product closure of a nonempty element set."""
    rows = G.rows
    elems = [x for x in range(G.order) if (mask >> x) & 1]
    while True:
        new = mask
        for a in elems:
            ra = rows[a]
            for b in elems:
                new |= 1 << ra[b]
        if new == mask:
            return mask
        mask = new
        elems = [x for x in range(G.order) if (mask >> x) & 1]


def brute_force_subgroups(G: GroupTable) -> set[int]:
    """Every subset closed under products, as bitmasks.

    Walks the elements in index order deciding in/out; a branch dies as soon as
    the closure of the chosen elements hits an excluded one.  Each subgroup is
    reached by exactly one leaf.
    """
    n = G.order
    found: set[int] = set()
    start = 1 << G.identity

    def rec(i, chosen, excluded):
        if i == n:
            found.add(chosen)
            return
        if (chosen >> i) & 1:
            rec(i + 1, chosen, excluded)
            return
        rec(i + 1, chosen, excluded | (1 << i))
        c = _close(G, chosen | (1 << i))
        if not c & excluded:
            rec(i + 1, c, excluded)

    rec(0, start, 0)
    return found


def naive_p_subnormal(lat: LatticeCache, i: int) -> bool:
    """Search for an upward prime-index chain over all subgroups (no cover structure)."""
    masks, orders = lat.masks, lat.orders
    top = lat.top
    seen: dict[int, bool] = {}

    def up(k):
        if k == top:
            return True
        if k in seen:
            return seen[k]
        res = False
        for j in range(lat.size):
            if orders[j] > orders[k] and orders[j] % orders[k] == 0 \
                    and is_prime(orders[j] // orders[k]) and masks[k] & ~masks[j] == 0:
                if up(j):
                    res = True
                    break
        seen[k] = res
        return res

    return up(i)


def _normal_by_conjugation(G: GroupTable, mask: int) -> bool:
    rows, inv = G.rows, G.inverse
    elems = [x for x in range(G.order) if (mask >> x) & 1]
    for g in range(G.order):
        gi = inv[g]
        for x in elems:
            if not (mask >> rows[rows[g][x]][gi]) & 1:
                return False
    return True


def ascending_normal_scan(lat: LatticeCache, accept: Callable[[GroupTable], bool]) -> Optional[int]:
    """Mask of the first normal subgroup N, by increasing order, whose quotient is accepted."""
    G = lat.group
    for k in range(lat.size):  # the lattice is sorted by order
        m = lat.masks[k]
        if not _normal_by_conjugation(G, m):
            continue
        Q, _ = quotient_group(G, m)
        if accept(Q):
            return m
    return None


def residual_scan(lat: LatticeCache, F) -> int:
    """Smallest normal N with G/N in F, each quotient re-tabled and classified on its own."""
    F = Formation.parse(F)
    m = ascending_normal_scan(lat, lambda Q: in_formation(Q, F))
    assert m is not None  # G/G is trivial and lies in every class
    return m
