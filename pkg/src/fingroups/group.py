"""Finite groups as validated Cayley tables, plus the standard constructions."""

from __future__ import annotations

import math
import re
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Optional, Sequence

import numpy as np

from . import config
from .bits import mask_of, members_of
from .errors import (
    InvalidParameter,
    InvalidTable,
    NoIdentity,
    NotAssociative,
    NotAutomorphism,
    NotHomomorphism,
    NotLatinSquare,
    NotNormal,
    OrderCapExceeded,
)


def prime_factors(n: int) -> list[int]:
    """Distinct primes dividing n, ascending."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def is_prime(n: int) -> bool:
    return n >= 2 and prime_factors(n) == [n]


def p_part(n: int, p: int) -> int:
    q = 1
    while n % p == 0:
        n //= p
        q *= p
    return q


def _check_cap(n: int, cap: Optional[int]) -> None:
    cap = config.order_cap() if cap is None else cap
    if n > cap:
        raise OrderCapExceeded(f"group order {n} exceeds cap {cap}")


class GroupTable:
    """A finite group given by its multiplication table.

    ``table[i, j]`` is the index of ``x_i * x_j``.  Instances are immutable;
    derived data (conjugation table, lattice) is cached on first use.
    """

    def __init__(self, table, identity: int = 0, name: Optional[str] = None,
                 expression: Optional[str] = None):
        t = np.array(table, dtype=np.int32)
        t.setflags(write=False)
        self.table = t
        self.order = int(t.shape[0])
        self.identity = int(identity)
        self.name = name
        self.expression = expression
        self.rows: list[list[int]] = t.tolist()
        e = self.identity
        inv = np.argmax(t == e, axis=1)
        self.inverse: tuple[int, ...] = tuple(int(x) for x in inv)
        self.element_order: tuple[int, ...] = self._element_orders()

    def _element_orders(self) -> tuple[int, ...]:
        n, e, rows = self.order, self.identity, self.rows
        orders = [0] * n
        for x in range(n):
            if orders[x]:
                continue
            k, y = 1, x
            while y != e:
                y = rows[y][x]
                k += 1
            orders[x] = k
        return tuple(orders)

    def __repr__(self):
        label = self.name or self.expression or "group"
        return f"GroupTable({label}, order={self.order})"

    def __getstate__(self):
        return {"table": np.asarray(self.table), "identity": self.identity,
                "name": self.name, "expression": self.expression}

    def __setstate__(self, state):
        self.__init__(state["table"], state["identity"], state["name"], state["expression"])

    # -- basic arithmetic -------------------------------------------------

    def mul(self, a: int, b: int) -> int:
        return self.rows[a][b]

    def power(self, x: int, k: int) -> int:
        k %= self.element_order[x]
        y = self.identity
        row = self.rows
        for _ in range(k):
            y = row[y][x]
        return y

    def commutator(self, a: int, b: int) -> int:
        r, inv = self.rows, self.inverse
        return r[r[inv[a]][inv[b]]][r[a][b]]

    @cached_property
    def conj(self) -> list[list[int]]:
        """``conj[g][x] == g * x * g^-1``."""
        t = self.table
        inv = np.array(self.inverse)
        right = t[:, inv]  # right[x, g] = x * g^-1
        c = t[np.arange(self.order)[:, None], right.T]
        return c.tolist()

    @cached_property
    def primes(self) -> list[int]:
        return prime_factors(self.order)

    @cached_property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    @cached_property
    def exponent(self) -> int:
        return math.lcm(*self.element_order)

    @cached_property
    def full_mask(self) -> int:
        return (1 << self.order) - 1

    def generate(self, elements: Iterable[int]) -> int:
        """Mask of the subgroup generated by ``elements``."""
        rows = self.rows
        e = self.identity
        gens = list(dict.fromkeys(g for g in elements if g != e))
        mask = 1 << e
        todo = [e]
        # closure of {e} under right multiplication by the generators
        while todo:
            x = todo.pop()
            rx = rows[x]
            for g in gens:
                y = rx[g]
                if not (mask >> y) & 1:
                    mask |= 1 << y
                    todo.append(y)
        return mask

    @cached_property
    def center_mask(self) -> int:
        t = self.table
        return mask_of(np.nonzero((t == t.T).all(axis=1))[0].tolist())

    @cached_property
    def derived_mask(self) -> int:
        t, inv = self.table, np.array(self.inverse)
        ab = t
        ainv_binv = t[inv[:, None], inv[None, :]]
        comm = t[ainv_binv, ab]
        return self.generate(np.unique(comm).tolist())

    @cached_property
    def centralizer_orders(self) -> tuple[int, ...]:
        t = self.table
        return tuple(int(c) for c in (t == t.T).sum(axis=1))

    def fingerprint(self) -> tuple:
        hist = tuple(sorted(Counter(self.element_order).items()))
        return (self.order, self.exponent, hist, self.center_mask.bit_count(),
                self.derived_mask.bit_count())

    @cached_property
    def generators(self) -> tuple[int, ...]:
        """A small generating set, chosen greedily by decreasing element order."""
        order = sorted(range(self.order), key=lambda x: (-self.element_order[x], x))
        gens: list[int] = []
        mask = 1 << self.identity
        for x in order:
            if mask == self.full_mask:
                break
            if not (mask >> x) & 1:
                gens.append(x)
                mask = self.generate(gens)
        return tuple(gens)


# -- construction ------------------------------------------------------------


def from_cayley_table(n: int, table: Sequence[Sequence[int]], check_associative: bool = True,
                      name: Optional[str] = None) -> GroupTable:
    """Validate a raw multiplication table and wrap it."""
    if n <= 0:
        raise InvalidParameter("order must be positive")
    t = np.array(table, dtype=np.int64)
    if t.shape != (n, n):
        raise InvalidTable(f"expected a {n}x{n} table, got shape {t.shape}")
    bad = np.argwhere((t < 0) | (t >= n))
    if len(bad):
        i, j = bad[0]
        raise InvalidTable(f"entry ({i}, {j}) = {t[i, j]} out of range")
    full = np.arange(n)
    for i in range(n):
        if not np.array_equal(np.sort(t[i]), full):
            raise NotLatinSquare(f"row {i} is not a permutation")
    for j in range(n):
        if not np.array_equal(np.sort(t[:, j]), full):
            raise NotLatinSquare(f"column {j} is not a permutation")
    ids = [e for e in range(n) if np.array_equal(t[e], full) and np.array_equal(t[:, e], full)]
    if not ids:
        raise NoIdentity("no two-sided identity element")
    if check_associative:
        for a in range(n):
            left = t[t[a]]      # left[b, c] = (a*b)*c
            right = t[a][t]     # right[b, c] = a*(b*c)
            diff = np.argwhere(left != right)
            if len(diff):
                b, c = diff[0]
                raise NotAssociative(f"({a}*{b})*{c} != {a}*({b}*{c})")
    return GroupTable(t, identity=ids[0], name=name)


@dataclass(frozen=True)
class Permutation:
    degree: int
    images: tuple[int, ...]

    def __post_init__(self):
        if len(self.images) != self.degree or sorted(self.images) != list(range(self.degree)):
            raise InvalidParameter(f"not a permutation of 0..{self.degree - 1}: {self.images}")

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls(degree, tuple(range(degree)))

    @classmethod
    def from_cycles(cls, degree: int, cycles: Iterable[Sequence[int]]) -> "Permutation":
        img = list(range(degree))
        seen = set()
        for cyc in cycles:
            for a in cyc:
                if not 0 <= a < degree or a in seen:
                    raise InvalidParameter(f"bad cycle {tuple(cyc)} for degree {degree}")
                seen.add(a)
            for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                img[a] = b
        return cls(degree, tuple(img))

    @classmethod
    def parse(cls, degree: int, text: str) -> "Permutation":
        text = text.strip()
        if not re.fullmatch(r"(\(\s*(\d+(\s+\d+)*)?\s*\))+", text):
            raise InvalidParameter(f"bad cycle notation: {text!r}")
        cycles = [[int(a) for a in c.split()] for c in re.findall(r"\(([^)]*)\)", text)]
        return cls.from_cycles(degree, [c for c in cycles if c])

    def cycles(self) -> list[tuple[int, ...]]:
        seen, out = set(), []
        for start in range(self.degree):
            if start in seen or self.images[start] == start:
                continue
            cyc = [start]
            seen.add(start)
            x = self.images[start]
            while x != start:
                cyc.append(x)
                seen.add(x)
                x = self.images[x]
            out.append(tuple(cyc))
        return out

    def __str__(self):
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)

    def then(self, other: "Permutation") -> "Permutation":
        """Apply self first, then other."""
        return Permutation(self.degree, tuple(other.images[i] for i in self.images))


def _table_from_right_actions(n: int, right: np.ndarray, gens_count: int,
                              parent: list[tuple[int, int]]) -> np.ndarray:
    """Fill a Cayley table from right-multiplication-by-generator maps.

    ``right[k]`` maps element x to x*g_k; ``parent[y] = (y', k)`` records that
    y = y' * g_k, in BFS order from the identity (index 0).
    """
    table = np.empty((n, n), dtype=np.int32)
    table[:, 0] = np.arange(n)
    for y in range(1, n):
        yp, k = parent[y]
        table[:, y] = right[k][table[:, yp]]
    return table


def from_permutation_generators(degree: int, gens: Iterable[Permutation],
                                cap: Optional[int] = None, name: Optional[str] = None) -> GroupTable:
    cap = config.order_cap() if cap is None else cap
    gens = list(gens)
    for g in gens:
        if g.degree != degree:
            raise InvalidParameter("generators must share the degree")
    ident = tuple(range(degree))
    elems = [ident]
    index = {ident: 0}
    parent: list[tuple[int, int]] = [(0, -1)]
    i = 0
    while i < len(elems):
        x = elems[i]
        for k, g in enumerate(gens):
            y = tuple(g.images[a] for a in x)  # x then g
            if y not in index:
                if len(elems) >= cap:
                    raise OrderCapExceeded(f"closure grew past {cap} elements")
                index[y] = len(elems)
                elems.append(y)
                parent.append((i, k))
        i += 1
    n = len(elems)
    right = np.empty((max(len(gens), 1), n), dtype=np.int32)
    for k, g in enumerate(gens):
        for j, x in enumerate(elems):
            right[k, j] = index[tuple(g.images[a] for a in x)]
    G = GroupTable(_table_from_right_actions(n, right, len(gens), parent), name=name)
    G.permutations = elems
    return G


def cyclic(m: int) -> GroupTable:
    if m <= 0:
        raise InvalidParameter("cyclic order must be positive")
    _check_cap(m, None)
    r = np.arange(m)
    return GroupTable((r[:, None] + r[None, :]) % m, name=f"C{m}", expression=f"cyclic({m})")


def elementary_abelian(p: int, t: int) -> GroupTable:
    if not is_prime(p) or t <= 0:
        raise InvalidParameter(f"elementary abelian needs prime p and t >= 1, got ({p}, {t})")
    n = p ** t
    _check_cap(n, None)
    idx = np.arange(n)
    digits = np.stack([(idx // p ** k) % p for k in range(t)])
    s = (digits[:, :, None] + digits[:, None, :]) % p
    weights = np.array([p ** k for k in range(t)])[:, None, None]
    return GroupTable((s * weights).sum(axis=0), name=f"E{n}", expression=f"elementary({p},{t})")


def dihedral(order: int) -> GroupTable:
    """Dihedral group of the given (even) order: r^i -> i, s r^i -> n + i."""
    if order <= 0 or order % 2:
        raise InvalidParameter("dihedral order must be a positive even number")
    _check_cap(order, None)
    n = order // 2
    table = np.empty((order, order), dtype=np.int32)
    for a in range(order):
        sa, ia = divmod(a, n)
        for b in range(order):
            sb, ib = divmod(b, n)
            # (s^sa r^ia)(s^sb r^ib) = s^(sa+sb) r^((-1)^sb ia + ib)
            i = ((-ia if sb else ia) + ib) % n
            table[a, b] = ((sa + sb) % 2) * n + i
    return GroupTable(table, name=f"D{order}", expression=f"dihedral({order})")


def symmetric(n: int) -> GroupTable:
    if n <= 0:
        raise InvalidParameter("symmetric degree must be positive")
    _check_cap(math.factorial(n), None)
    gens = []
    if n >= 2:
        gens.append(Permutation.from_cycles(n, [(0, 1)]))
    if n >= 3:
        gens.append(Permutation.from_cycles(n, [tuple(range(n))]))
    G = from_permutation_generators(n, gens)
    G.name, G.expression = f"S{n}", f"symmetric({n})"
    return G


def alternating(n: int) -> GroupTable:
    if n <= 0:
        raise InvalidParameter("alternating degree must be positive")
    _check_cap(max(math.factorial(n) // 2, 1), None)
    gens = [Permutation.from_cycles(n, [(0, 1, k)]) for k in range(2, n)]
    G = from_permutation_generators(n, gens)
    G.name, G.expression = f"A{n}", f"alternating({n})"
    return G


def named_group(kind: str, *params: int) -> GroupTable:
    """``kind`` is one of cyclic, elementary_abelian, symmetric, alternating, dihedral."""
    builders = {
        "cyclic": (cyclic, 1),
        "elementary_abelian": (elementary_abelian, 2),
        "elementary": (elementary_abelian, 2),
        "symmetric": (symmetric, 1),
        "alternating": (alternating, 1),
        "dihedral": (dihedral, 1),
    }
    if kind not in builders:
        raise InvalidParameter(f"unknown group family {kind!r}")
    fn, arity = builders[kind]
    if len(params) != arity:
        raise InvalidParameter(f"{kind} takes {arity} parameter(s)")
    if any(int(p) <= 0 for p in params):
        raise InvalidParameter("parameters must be positive")
    return fn(*[int(p) for p in params])


def direct_product(G: GroupTable, H: GroupTable, cap: Optional[int] = None) -> GroupTable:
    """Pairs (g, h) are indexed g*|H| + h."""
    n, m = G.order, H.order
    _check_cap(n * m, cap)
    tg, th = G.table.astype(np.int64), H.table.astype(np.int64)
    t = tg[:, None, :, None] * m + th[None, :, None, :]
    t = t.reshape(n * m, n * m)
    expr = None
    if G.expression and H.expression:
        expr = f"product({G.expression},{H.expression})"
    name = f"{G.name}x{H.name}" if G.name and H.name else None
    return GroupTable(t, identity=G.identity * m + H.identity, name=name, expression=expr)


# -- actions and semidirect products ---------------------------------------


def is_automorphism(N: GroupTable, perm: Sequence[int]) -> bool:
    p = np.asarray(perm)
    if sorted(p.tolist()) != list(range(N.order)):
        return False
    t = N.table
    return bool(np.array_equal(t[p[:, None], p[None, :]], p[t]))


@dataclass(frozen=True)
class ActionSpec:
    """A homomorphism from ``acting`` into Aut(``target``).

    ``images[h]`` is the permutation of target elements induced by element h;
    element h acts by ``n -> images[h][n]``.
    """

    acting: GroupTable
    target: GroupTable
    images: tuple[tuple[int, ...], ...]
    label: Optional[str] = None

    def validate(self) -> None:
        H, N = self.acting, self.target
        if len(self.images) != H.order:
            raise NotHomomorphism("need one automorphism per acting element")
        for h, perm in enumerate(self.images):
            if len(perm) != N.order or not is_automorphism(N, perm):
                raise NotAutomorphism(f"image of acting element {h} is not an automorphism")
        phi = np.array(self.images)
        th = H.table
        for a in range(H.order):
            composed = phi[a][phi]  # composed[b, n] = phi_a(phi_b(n))
            expected = phi[th[a]]
            if not np.array_equal(composed, expected):
                b = int(np.argwhere((composed != expected).any(axis=1))[0][0])
                raise NotHomomorphism(f"action of {a}*{b} differs from composed actions")

    def is_trivial(self) -> bool:
        ident = tuple(range(self.target.order))
        return all(img == ident for img in self.images)

    @classmethod
    def trivial(cls, target: GroupTable, acting: GroupTable) -> "ActionSpec":
        ident = tuple(range(target.order))
        return cls(acting, target, tuple(ident for _ in range(acting.order)), label="trivial")

    @classmethod
    def from_generator_images(cls, target: GroupTable, acting: GroupTable,
                              gen_images: dict[int, Sequence[int]], label=None) -> "ActionSpec":
        """Extend an assignment on generators of ``acting`` to all elements."""
        images: list[Optional[tuple[int, ...]]] = [None] * acting.order
        images[acting.identity] = tuple(range(target.order))
        todo = [acting.identity]
        gens = {g: np.asarray(p) for g, p in gen_images.items()}
        rows = acting.rows
        while todo:
            x = todo.pop()
            px = np.asarray(images[x])
            for g, pg in gens.items():
                y = rows[x][g]
                # phi_{xg}(n) = phi_x(phi_g(n))
                img = tuple(px[pg].tolist())
                if images[y] is None:
                    images[y] = img
                    todo.append(y)
                elif images[y] != img:
                    raise NotHomomorphism("generator images do not define a homomorphism")
        if any(i is None for i in images):
            raise NotHomomorphism("given elements do not generate the acting group")
        spec = cls(acting, target, tuple(images), label=label)  # type: ignore[arg-type]
        spec.validate()
        return spec


def semidirect_product(N: GroupTable, H: GroupTable, action: ActionSpec,
                       cap: Optional[int] = None, validate: bool = True) -> GroupTable:
    """N ⋊ H with (n1,h1)(n2,h2) = (n1 * h1(n2), h1*h2); pairs indexed n*|H| + h."""
    if action.target is not N or action.acting is not H:
        if action.target.order != N.order or action.acting.order != H.order:
            raise NotHomomorphism("action does not match the given groups")
    if validate:
        action.validate()
    n, m = N.order, H.order
    _check_cap(n * m, cap)
    tn, th = N.table.astype(np.int64), H.table.astype(np.int64)
    phi = np.array(action.images, dtype=np.int64)  # (m, n)
    x = tn[:, phi]  # x[n1, h1, n2] = n1 * phi_h1(n2)
    t = x[:, :, :, None] * m + th[None, :, None, :]
    t = t.reshape(n * m, n * m)
    expr = None
    if N.expression and H.expression:
        expr = f"semidirect({N.expression},{H.expression},{action.label or 'action'})"
    return GroupTable(t, identity=N.identity * m + H.identity, expression=expr)


# -- quotients and restrictions --------------------------------------------


def _is_normal_mask(G: GroupTable, mask: int) -> bool:
    conj = G.conj
    elems = members_of(mask)
    for g in G.generators:
        cg = conj[g]
        for x in elems:
            if not (mask >> cg[x]) & 1:
                return False
    return True


def quotient_group(G: GroupTable, N) -> tuple[GroupTable, tuple[int, ...]]:
    """Return G/N and the projection map (element index -> coset index)."""
    mask = N if isinstance(N, int) else N.mask
    if not _is_normal_mask(G, mask):
        raise NotNormal("subgroup is not normal")
    elems = members_of(mask)
    proj = [-1] * G.order
    reps = []
    rows = G.rows
    for g in range(G.order):  # identity first, so the trivial coset is 0
        if proj[g] != -1:
            continue
        k = len(reps)
        reps.append(g)
        for x in elems:
            proj[rows[g][x]] = k
    q = len(reps)
    table = [[proj[rows[a][b]] for b in reps] for a in reps]
    Q = GroupTable(table, identity=proj[G.identity])
    return Q, tuple(proj)


def restrict(G: GroupTable, H) -> tuple[GroupTable, tuple[int, ...]]:
    """Re-table a subgroup; returns the table and the embedding (new -> old)."""
    mask = H if isinstance(H, int) else H.mask
    elems = members_of(mask)
    pos = {x: i for i, x in enumerate(elems)}
    rows = G.rows
    table = [[pos[rows[a][b]] for b in elems] for a in elems]
    return GroupTable(table, identity=pos[G.identity]), tuple(elems)


# -- homomorphisms and isomorphism -------------------------------------------


class _Budget:
    def __init__(self, limit: Optional[int]):
        self.limit = limit
        self.used = 0

    def tick(self):
        self.used += 1
        if self.limit is not None and self.used > self.limit:
            raise OrderCapExceeded(f"search budget of {self.limit} nodes exhausted")


def _extend(G: GroupTable, H: GroupTable, gens: Sequence[int], imgs: Sequence[int],
            injective: bool) -> Optional[list[int]]:
    """Extend gens -> imgs to the subgroup they generate; None on conflict."""
    phi = [-1] * G.order
    phi[G.identity] = H.identity
    used = {H.identity} if injective else None
    todo = [G.identity]
    grows, hrows = G.rows, H.rows
    pairs = list(zip(gens, imgs))
    while todo:
        x = todo.pop()
        fx = phi[x]
        for g, h in pairs:
            y = grows[x][g]
            fy = hrows[fx][h]
            if phi[y] == -1:
                if injective:
                    if fy in used:
                        return None
                    used.add(fy)
                phi[y] = fy
                todo.append(y)
            elif phi[y] != fy:
                return None
    return phi


def homomorphisms(G: GroupTable, H: GroupTable, injective: bool = False,
                  budget: Optional[int] = None) -> Iterator[tuple[int, ...]]:
    """Enumerate homomorphisms G -> H as element maps, in a deterministic order."""
    gens = list(G.generators)
    if not gens:
        yield (H.identity,) * G.order
        return
    b = _Budget(budget)
    if injective:
        cands = [[y for y in range(H.order)
                  if H.element_order[y] == G.element_order[g]
                  and (G.order != H.order or H.centralizer_orders[y] == G.centralizer_orders[g])]
                 for g in gens]
    else:
        cands = [[y for y in range(H.order) if G.element_order[g] % H.element_order[y] == 0]
                 for g in gens]

    def rec(i, chosen):
        b.tick()
        if i == len(gens):
            phi = _extend(G, H, gens, chosen, injective)
            if phi is not None and -1 not in phi:
                yield tuple(phi)
            return
        for y in cands[i]:
            nxt = chosen + [y]
            if i + 1 < len(gens) and _extend(G, H, gens[: i + 1], nxt, injective) is None:
                continue
            yield from rec(i + 1, nxt)

    yield from rec(0, [])


def is_isomorphic(G: GroupTable, H: GroupTable, budget: Optional[int] = 10**6
                  ) -> tuple[bool, Optional[tuple[int, ...]]]:
    if G.fingerprint() != H.fingerprint():
        return False, None
    if sorted(Counter(zip(G.element_order, G.centralizer_orders)).items()) != \
            sorted(Counter(zip(H.element_order, H.centralizer_orders)).items()):
        return False, None
    for phi in homomorphisms(G, H, injective=True, budget=budget):
        return True, phi
    return False, None


def automorphisms(G: GroupTable, budget: Optional[int] = 10**6) -> list[tuple[int, ...]]:
    return list(homomorphisms(G, G, injective=True, budget=budget))


def automorphism_group(G: GroupTable) -> tuple[GroupTable, list[tuple[int, ...]]]:
    """Aut(G) as a table, element k acting by ``auts[k]``; composition f*g = f∘g."""
    auts = automorphisms(G)
    ident = tuple(range(G.order))
    auts.sort(key=lambda a: (a != ident, a))
    pos = {a: i for i, a in enumerate(auts)}
    arr = np.array(auts)
    table = [[pos[tuple(arr[f][arr[g]].tolist())] for g in range(len(auts))]
             for f in range(len(auts))]
    return GroupTable(table), auts


def actions(N: GroupTable, H: GroupTable) -> list[ActionSpec]:
    """Every homomorphism H -> Aut(N), as action specs labelled action#k."""
    gens = H.generators
    if len(gens) <= 1:
        return _cyclic_actions(N, H)
    A, auts = automorphism_group(N)
    out = []
    for k, hom in enumerate(homomorphisms(H, A)):
        images = tuple(auts[a] for a in hom)
        out.append(ActionSpec(H, N, images, label=f"action#{k}"))
    return out


def _cyclic_actions(N: GroupTable, H: GroupTable) -> list[ActionSpec]:
    """For cyclic H = <g>: one action per automorphism a with a^|H| = 1, g acting as a."""
    ident = np.arange(N.order)
    if H.order == 1:
        return [ActionSpec.trivial(N, H)]
    g = H.generators[0]
    m = H.order
    powers = [H.identity]
    for _ in range(m - 1):
        powers.append(H.rows[powers[-1]][g])
    out = []
    for a in automorphisms(N):
        arr = np.asarray(a)
        seq = [ident]
        for _ in range(m - 1):
            seq.append(arr[seq[-1]])
        if not np.array_equal(arr[seq[-1]], ident):
            continue
        images: list = [None] * m
        for k, h in enumerate(powers):
            images[h] = tuple(seq[k].tolist())
        out.append(ActionSpec(H, N, tuple(images), label=f"action#{len(out)}"))
    return out


# -- text formats --------------------------------------------------------------


def export_cayley(G: GroupTable) -> str:
    lines = [f"order {G.order}"]
    lines += [" ".join(str(x) for x in row) for row in G.rows]
    return "\n".join(lines) + "\n"


def parse_cayley(text: str) -> GroupTable:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    m = re.fullmatch(r"\s*order\s+(\d+)\s*", lines[0]) if lines else None
    if not m:
        raise InvalidParameter("first line must be 'order n'")
    n = int(m.group(1))
    rows = [[int(x) for x in ln.split()] for ln in lines[1:]]
    if len(rows) != n:
        raise InvalidTable(f"expected {n} rows, got {len(rows)}")
    return from_cayley_table(n, rows)


def export_generators(degree: int, gens: Sequence[Permutation]) -> str:
    return "\n".join([f"degree {degree}"] + [str(g) for g in gens]) + "\n"


def parse_generators(text: str) -> tuple[int, list[Permutation]]:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    m = re.fullmatch(r"\s*degree\s+(\d+)\s*", lines[0]) if lines else None
    if not m:
        raise InvalidParameter("first line must be 'degree d'")
    d = int(m.group(1))
    return d, [Permutation.parse(d, ln) for ln in lines[1:]]
