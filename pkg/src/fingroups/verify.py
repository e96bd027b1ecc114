"""Property suites: every lemma and theorem checked exhaustively on concrete groups.

Each suite function takes a group and returns a list of ``Finding`` records, one per
(suite, check) pair, carrying the number of instances examined and the violations.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Callable, Iterable, Optional

from .bits import members_of
from .chains import mutually_sn_permutable_in, psn_marks, subnormal_in
from .classify import (ALL_FORMATIONS, INCLUSIONS, Formation, has_supersoluble_sylow_tower,
                       in_formation, is_siding, primitive_decomposition, sections)
from .corpus import FactorizationRecord, factorization_scan
from .errors import GroupError, InvariantViolation
from .group import GroupTable, is_prime, prime_factors, quotient_group
from .lattice import LatticeCache, all_subgroups, conjugate_mask, frattini_mask, is_soluble_group
from .oracles import ascending_normal_scan, brute_force_subgroups, naive_p_subnormal, residual_scan
from .residuals import nested_residual, residual, theorem1_identity_check

W = Formation.W_SUPERSOLUBLE
U = Formation.SUPERSOLUBLE
N = Formation.NILPOTENT
A = Formation.ABELIAN_SYLOW

# formations that are saturated, for the critical-group check
SATURATED = (N, U, W)


@dataclass
class Finding:
    suite: str
    group: str
    checked: int = 0
    violations: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def fail(self, detail: str) -> None:
        self.violations.append(detail)

    def expect(self, ok: bool, detail: Callable[[], str]) -> None:
        self.checked += 1
        if not ok:
            self.violations.append(detail())

    def lines(self) -> list[str]:
        out = list(self.notes)
        out.append(f"suite={self.suite} group={self.group} checked={self.checked} "
                   f"violations={len(self.violations)}")
        out += [f"suite={self.suite} group={self.group} violation={v}" for v in self.violations]
        return out


class Context:
    """Per-group data shared by the suites."""

    def __init__(self, G: GroupTable):
        self.G = G
        self.name = G.name or G.expression or "G"
        self.lat = all_subgroups(G)
        self.S = sections(self.lat)
        self.soluble = is_soluble_group(G)
        self._records: Optional[list[FactorizationRecord]] = None

    @property
    def records(self) -> list[FactorizationRecord]:
        if self._records is None:
            self._records = factorization_scan(self.G)
        return self._records

    def idx(self, H) -> int:
        return self.lat.find(H)

    def normals(self) -> list[int]:
        return self.S.normal_subgroups(self.lat.top)

    def label(self, i: int) -> str:
        return f"#{i}(order {self.lat.orders[i]})"


# -- residual algebra ---------------------------------------------------------------------


def suite_residual_oracle(c: Context) -> list[Finding]:
    f = Finding("residual_oracle", c.name)
    for F in ALL_FORMATIONS:
        r = residual(c.G, F).residual.mask
        s = residual_scan(c.lat, F)
        f.expect(r == s, lambda: f"{F.value}: intersection order {bin(r).count('1')} "
                                 f"scan order {bin(s).count('1')}")
    return [f]


def suite_lemma_1_3(c: Context) -> list[Finding]:
    G, lat, S = c.G, c.lat, c.S
    top = lat.top
    f1 = Finding("lemma_1_3_1_quotient_residual", c.name)
    f2 = Finding("lemma_1_3_2_product_residual", c.name)
    f3 = Finding("lemma_1_3_3_monotone", c.name)
    f4 = Finding("lemma_1_3_4_factor_residual", c.name)
    res = {F: S.residual(top, F) for F in ALL_FORMATIONS}
    normals = c.normals()

    # (1) residual of the re-tabled quotient against the projected residual
    for k in normals:
        Q, proj = quotient_group(G, lat.masks[k])
        for F in ALL_FORMATIONS:
            rq = residual(Q, F, check=False).residual.mask
            img = 0
            for x in members_of(lat.masks[lat.join(res[F], k)]):
                img |= 1 << proj[x]
            f1.expect(rq == img, lambda: f"{F.value} K={c.label(k)}")

    # (2) the smallest N with (G/N)^A nilpotent equals the N-residual of the A-residual
    def accept(Q):
        R = residual(Q, A, check=False).residual
        from .group import restrict
        T, _ = restrict(Q, R)
        return in_formation(T, N)

    scan = ascending_normal_scan(lat, accept)
    nested = nested_residual(G, A, N).mask
    f2.expect(scan == nested, lambda: f"scan order {bin(scan).count('1')} "
                                      f"nested order {bin(nested).count('1')}")

    # (3) smaller class, larger residual
    for small, big in INCLUSIONS:
        f3.expect(lat.masks[res[big]] & ~lat.masks[res[small]] == 0,
                  lambda: f"{small.value} within {big.value}")

    # (4) G = HK with K normal: H^F K = G^F K
    for k in normals:
        for h in range(lat.size):
            if lat.join(h, k) != top:
                continue
            for F in ALL_FORMATIONS:
                lhs = lat.join(S.residual(h, F), k)
                rhs = lat.join(res[F], k)
                f4.expect(lhs == rhs, lambda: f"{F.value} H={c.label(h)} K={c.label(k)}")
    return [f1, f2, f3, f4]


# -- classification --------------------------------------------------------------------------


def suite_classification(c: Context) -> list[Finding]:
    """Top-level predicates against the section engine, and the implication chain."""
    G, lat, S = c.G, c.lat, c.S
    f = Finding("classify_dual_route", c.name)
    g = Finding("classify_implications", c.name)
    verdict = {}
    for F in ALL_FORMATIONS:
        a, b = in_formation(G, F), S.member(lat.top, F)
        verdict[F] = a
        f.expect(a == b, lambda: f"{F.value}: predicate {a} sections {b}")
    a, b = is_siding(G), S.siding(lat.top)
    f.expect(a == b, lambda: f"siding: predicate {a} sections {b}")
    a, b = has_supersoluble_sylow_tower(G), S.sylow_tower(lat.top)
    f.expect(a == b, lambda: f"sylow tower: predicate {a} sections {b}")
    for small, big in INCLUSIONS:
        g.expect(not verdict[small] or verdict[big], lambda: f"{small.value} but not {big.value}")
    g.expect(not verdict[W] or S.sylow_tower(lat.top), lambda: "w-supersoluble without Sylow tower")
    return [f, g]


def suite_formation_axioms(c: Context) -> list[Finding]:
    """Quotient closure and closure under subdirect products N1 ∩ N2 = 1, through sections."""
    lat, S = c.lat, c.S
    top = lat.top
    f = Finding("formation_axioms", c.name)
    normals = c.normals()
    for F in ALL_FORMATIONS:
        if not S.member(top, F):
            continue
        for k in normals:
            f.expect(S.check(top, k, F), lambda: f"{F.value} not quotient closed at {c.label(k)}")
    for i, k1 in enumerate(normals):
        for k2 in normals[i:]:
            if lat.meet(k1, k2) != 0:
                continue
            for F in ALL_FORMATIONS:
                if S.check(top, k1, F) and S.check(top, k2, F):
                    f.expect(S.member(top, F), lambda: f"{F.value} subdirect {c.label(k1)},{c.label(k2)}")
    return [f]


def suite_lemma_1_1_1_2(c: Context) -> list[Finding]:
    lat, S = c.lat, c.S
    top = lat.top
    f1 = Finding("lemma_1_1_critical_primitive", c.name)
    f2 = Finding("lemma_1_2_primitive_structure", c.name)
    nontrivial = [k for k in c.normals() if k != 0]
    try:
        rec = primitive_decomposition(c.G)
        f2.checked += 1
    except InvariantViolation as e:
        f2.fail(str(e))
        return [f1, f2]
    for F in SATURATED:
        if S.member(top, F):
            continue
        if all(S.check(top, k, F) for k in nontrivial):
            f1.expect(rec.primitive, lambda: f"{F.value}-critical but not primitive")
    return [f1, f2]


def suite_lemma_1_4(c: Context) -> list[Finding]:
    lat, S = c.lat, c.S
    top = lat.top
    f = Finding("lemma_1_4_siding", c.name)
    if not S.siding(top):
        return [f]
    f.expect(S.member(top, U), lambda: "siding but not supersoluble")
    for k in c.normals():
        f.expect(S.siding(top, k), lambda: f"quotient by {c.label(k)} not siding")
    for h in range(lat.size):
        f.expect(S.siding(h), lambda: f"subgroup {c.label(h)} not siding")
    return [f]


def suite_lemma_1_5_to_1_7(c: Context) -> list[Finding]:
    G, lat = c.G, c.lat
    top = lat.top
    marks = psn_marks(lat)
    psn = [i for i in range(lat.size) if (marks >> i) & 1]
    normals = c.normals()
    f1 = Finding("lemma_1_5_1_lift", c.name)
    f2 = Finding("lemma_1_5_2_images", c.name)
    f3 = Finding("lemma_1_5_3_transitive", c.name)
    f4 = Finding("lemma_1_5_4_conjugates", c.name)
    g1 = Finding("lemma_1_6_1_intersect_subgroup", c.name)
    g2 = Finding("lemma_1_6_2_intersect_pair", c.name)
    h = Finding("lemma_1_7_subnormal", c.name)

    for k in normals:
        qmarks = psn_marks(lat, top, k)
        nmarks = psn_marks(lat, k)
        above_k = lat.above[k]
        for i in range(lat.size):
            if (above_k >> i) & 1 and (qmarks >> i) & 1:
                f1.expect((marks >> i) & 1, lambda: f"H={c.label(i)} N={c.label(k)}")
        for i in psn:
            j = lat.join(i, k)
            m = lat.meet(i, k)
            f2.expect((qmarks >> j) & 1 and (marks >> j) & 1 and (nmarks >> m) & 1,
                      lambda: f"H={c.label(i)} N={c.label(k)}")

    for kk in psn:
        inner = psn_marks(lat, kk)
        for i in lat.interval(kk):
            if (inner >> i) & 1:
                f3.expect((marks >> i) & 1, lambda: f"H={c.label(i)} K={c.label(kk)}")

    gens = G.generators
    for i in psn:
        for g in gens:
            j = lat.index[conjugate_mask(G, g, lat.masks[i])]
            f4.expect((marks >> j) & 1, lambda: f"H={c.label(i)} g={g}")

    if c.soluble:
        for kk in range(lat.size):
            inner = psn_marks(lat, kk)
            for i in psn:
                m = lat.meet(i, kk)
                g1.expect((inner >> m) & 1, lambda: f"H={c.label(i)} K={c.label(kk)}")
        for x, i in enumerate(psn):
            for j in psn[x:]:
                g2.expect((marks >> lat.meet(i, j)) & 1, lambda: f"{c.label(i)} and {c.label(j)}")
        for i in range(lat.size):
            if subnormal_in(lat, i, top):
                h.expect((marks >> i) & 1, lambda: f"H={c.label(i)}")
    return [f1, f2, f3, f4, g1, g2, h]


def suite_lemma_1_8(c: Context) -> list[Finding]:
    G, lat, S = c.G, c.lat, c.S
    top = lat.top
    f1 = Finding("lemma_1_8_hereditary", c.name)
    f2 = Finding("lemma_1_8_quotients", c.name)
    f3 = Finding("lemma_1_8_saturated", c.name)
    g_wu = S.member(top, W)
    if g_wu:
        for h in range(lat.size):
            f1.expect(S.member(h, W), lambda: f"subgroup {c.label(h)}")
        for k in c.normals():
            f2.expect(S.check(top, k, W), lambda: f"quotient by {c.label(k)}")
    phi = frattini_mask(G)
    Q, _ = quotient_group(G, phi)
    q_wu = in_formation(Q, W)
    f3.expect(not q_wu or g_wu, lambda: "G/Phi(G) w-supersoluble but G not")
    # same through the section engine
    f3.expect(S.check(top, lat.index[phi], W) == q_wu, lambda: "G/Phi(G) verdicts disagree")
    return [f1, f2, f3]


def suite_lemma_1_9(c: Context) -> list[Finding]:
    G, lat, S = c.G, c.lat, c.S
    top = lat.top
    f1 = Finding("lemma_1_9_1_residual_nilpotent", c.name)
    f2 = Finding("lemma_1_9_2_metanilpotent", c.name)
    f3 = Finding("lemma_1_9_3_tower_biprimary", c.name)
    g_wu = S.member(top, W)
    if g_wu:
        f1.expect(S.member(S.residual(top, A), N), lambda: "A-residual not nilpotent")
    meta_ok = all(S.member(h, U) for h in range(lat.size) if S.member(h, Formation.METANILPOTENT))
    f2.expect(meta_ok == g_wu, lambda: f"w-supersoluble={g_wu} metanilpotent-supersoluble={meta_ok}")
    bi_ok = all(S.member(h, U) for h in range(lat.size) if len(prime_factors(lat.orders[h])) == 2)
    rhs = S.sylow_tower(top) and bi_ok
    f3.expect(rhs == g_wu, lambda: f"w-supersoluble={g_wu} tower-and-biprimary={rhs}")
    return [f1, f2, f3]


def suite_lemma_2_2(c: Context) -> list[Finding]:
    lat, S = c.lat, c.S
    top = lat.top
    f = Finding("lemma_2_2_p_closed", c.name)
    marks = psn_marks(lat)
    n = c.G.order
    g_wu = S.member(top, W)
    closed = {p: lat.normal[S.sylow(top, p)] for p in c.G.primes}
    for i in range(lat.size):
        idx = n // lat.orders[i]
        ps = prime_factors(idx)
        if len(ps) != 1 or not closed[ps[0]]:
            continue
        if (marks >> i) & 1 and S.member(i, W):
            f.expect(g_wu, lambda: f"A={c.label(i)} p={ps[0]}")
    return [f]


# -- factorization suites ------------------------------------------------------------------------


def suite_factorizations(c: Context) -> list[Finding]:
    G, lat, S = c.G, c.lat, c.S
    top = lat.top
    t1 = Finding("theorem_1", c.name)
    ta = Finding("theorem_a", c.name)
    tb1 = Finding("theorem_b_1", c.name)
    tb2 = Finding("theorem_b_2", c.name)
    intro = Finding("msp_factors_p_subnormal", c.name)
    l21 = Finding("lemma_2_1_sylow_tower", c.name)
    l23 = Finding("lemma_2_3_greatest_prime", c.name)
    t33 = [Finding(f"theorem_3_3_{k}", c.name) for k in (1, 2, 3)]
    g_wu = S.member(top, W)
    g_tower = S.sylow_tower(top)
    pmax = max(c.G.primes) if c.G.order > 1 else None
    minimal_normals = [k for k in c.normals()
                       if k != 0 and not any(j != k and j != 0 and lat.is_normal_in(j, top)
                                             for j in lat.interval(k) if j != k)]
    reported = False

    for rec in c.records:
        a, b = c.idx(rec.A), c.idx(rec.B)
        fa, fb = rec.flags
        pair = f"A={c.label(a)} B={c.label(b)}"
        hyp = rec.theorem1_hypotheses()
        if hyp:
            rep = theorem1_identity_check(G, rec.A, rec.B, strict=True, name=c.name)
            if not reported:
                t1.notes.append(rep.line())
                reported = True
            t1.expect(rep.identity_holds, lambda: f"identity {pair} {rep.line()}")
            t1.expect(rep.clause2_holds, lambda: f"clause 2 {pair} {rep.clause2_failures}")
            if rep.coprime:
                t1.expect(rep.clause3_holds, lambda: f"clause 3 {pair}")
            if S.member(S.residual(top, A), N):
                ta.expect(g_wu, lambda: f"{pair}")
            # greatest prime index
            for x, y in ((a, b), (b, a)):
                ps = prime_factors(c.G.order // lat.orders[x])
                if len(ps) == 1 and ps[0] == pmax:
                    l23.expect(g_wu, lambda: f"A={c.label(x)} B={c.label(y)}")
        if fa.p_subnormal and fb.p_subnormal and S.sylow_tower(a) and S.sylow_tower(b):
            l21.expect(g_tower, lambda: pair)
        # Theorem 3.3 in both orientations
        for (x, fx), (y, fy) in (((a, fa), (b, fb)), ((b, fb), (a, fa))):
            if not (fx.w_supersoluble and fx.p_subnormal):
                continue
            if fy.nilpotent and fy.normal:
                t33[0].expect(g_wu, lambda: f"A={c.label(x)} B={c.label(y)}")
            if fy.nilpotent and is_prime(c.G.order // lat.orders[y]):
                t33[1].expect(g_wu, lambda: f"A={c.label(x)} B={c.label(y)}")
            if fy.normal and fy.siding:
                t33[2].expect(g_wu, lambda: f"A={c.label(x)} B={c.label(y)}")
        msp = None
        if c.soluble or (fa.w_supersoluble and fb.w_supersoluble):
            msp = mutually_sn_permutable_in(lat, a, b)[0]
        if c.soluble and msp:
            intro.expect(fa.p_subnormal and fb.p_subnormal, lambda: pair)
        if msp and fa.w_supersoluble and fb.w_supersoluble:
            for k in minimal_normals:
                tb1.expect(S.member(lat.join(a, k), W) and S.member(lat.join(b, k), W),
                           lambda: f"{pair} N={c.label(k)}")
            if rec.coprime_A_quotients:
                tb2.expect(g_wu, lambda: pair)
    return [t1, ta, tb1, tb2, intro, l21, l23] + t33


# -- lattice-level oracles -------------------------------------------------------------------------

LATTICE_ORACLE_MAX = 24
PSN_ORACLE_MAX = 48


def suite_oracles(c: Context) -> list[Finding]:
    G, lat = c.G, c.lat
    out = []
    if G.order <= LATTICE_ORACLE_MAX:
        f = Finding("oracle_all_subgroups", c.name)
        bf = brute_force_subgroups(G)
        f.expect(bf == set(lat.masks), lambda: f"lattice {lat.size} brute force {len(bf)}")
        out.append(f)
    if G.order <= PSN_ORACLE_MAX:
        f = Finding("oracle_p_subnormal", c.name)
        marks = psn_marks(lat)
        for i in range(lat.size):
            a, b = bool((marks >> i) & 1), naive_p_subnormal(lat, i)
            f.expect(a == b, lambda: f"{c.label(i)} marked={a} naive={b}")
        out.append(f)
    return out


# -- registry -------------------------------------------------------------------------------------

THEOREM_SUITES = {
    "factorizations": suite_factorizations,
}

LEMMA_SUITES = {
    "classification": suite_classification,
    "formation_axioms": suite_formation_axioms,
    "residual_oracle": suite_residual_oracle,
    "lemma_1_1_1_2": suite_lemma_1_1_1_2,
    "lemma_1_3": suite_lemma_1_3,
    "lemma_1_4": suite_lemma_1_4,
    "lemma_1_5_to_1_7": suite_lemma_1_5_to_1_7,
    "lemma_1_8": suite_lemma_1_8,
    "lemma_1_9": suite_lemma_1_9,
    "lemma_2_2": suite_lemma_2_2,
    "oracles": suite_oracles,
}

ALL_SUITES = {**THEOREM_SUITES, **LEMMA_SUITES}


def run_group(G: GroupTable, suites: Iterable[str]) -> list[Finding]:
    c = Context(G)
    out: list[Finding] = []
    for name in suites:
        try:
            out += ALL_SUITES[name](c)
        except GroupError as e:
            f = Finding(name, c.name)
            f.fail(f"error {type(e).__name__}: {e}")
            out.append(f)
    return out


# -- named examples --------------------------------------------------------------------------------


def _fidelity(pid, G: GroupTable) -> Finding:
    """Each example satisfies every hypothesis of the statement it answers except one."""
    from .corpus import PaperGroupId, factor_flags, paper_factors
    pid = PaperGroupId.parse(pid)
    f = Finding("example_fidelity", pid.value)
    lat = all_subgroups(G)
    S = sections(lat)
    top = lat.top
    if pid not in (PaperGroupId.G18_3, PaperGroupId.G24_8):
        f.expect(not S.member(top, W), lambda: "group is w-supersoluble")
    Am, Bm = paper_factors(pid)
    if pid is PaperGroupId.G24_8:
        f.expect(S.siding(top) and S.member(top, U), lambda: "siding group is not supersoluble")
        return f
    a = lat.find(Am)
    fa = factor_flags(lat, a)
    f.expect(fa.w_supersoluble and fa.p_subnormal, lambda: "A is not a w-supersoluble P-subnormal subgroup")
    if pid is PaperGroupId.G72_40:
        idx = G.order // lat.orders[a]
        f.expect(len(prime_factors(idx)) == 1, lambda: "index of A is not a prime power")
        p = prime_factors(idx)[0]
        f.expect(not lat.normal[S.sylow(top, p)], lambda: "G is p-closed")
        return f
    b = lat.find(Bm)
    fb = factor_flags(lat, b)
    f.expect(lat.join(a, b) == top and lat.orders[a] * lat.orders[b]
             == G.order * lat.orders[lat.meet(a, b)], lambda: "G is not AB")
    if pid is PaperGroupId.G18_3:
        f.expect(fb.p_subnormal and fb.w_supersoluble, lambda: "B is not w-supersoluble P-subnormal")
        f.expect(not mutually_sn_permutable_in(lat, a, b)[0], lambda: "factors are mutually sn-permutable")
    elif pid is PaperGroupId.G144_115:
        f.expect(fb.p_subnormal and fb.w_supersoluble and fb.nilpotent,
                 lambda: "B is not nilpotent P-subnormal")
        f.expect(not fb.normal, lambda: "B is normal")
    elif pid in (PaperGroupId.A4, PaperGroupId.E25_Z3):
        f.expect(fb.nilpotent, lambda: "B is not nilpotent")
        idx = G.order // lat.orders[b]
        f.expect(not is_prime(idx), lambda: "index of B is prime")
        if pid is PaperGroupId.E25_Z3:
            f.expect(idx == max(G.primes) ** 2, lambda: "index of B is not the square of the greatest prime")
    elif pid is PaperGroupId.G216_157:
        f.expect(fb.subnormal and fb.siding, lambda: "B is not subnormal siding")
        f.expect(not fb.normal, lambda: "B is normal")
    return f


def verify_example(pid) -> list[Finding]:
    from .corpus import bundle_report, paper_group
    r = bundle_report(pid)
    b = Finding("example_bundle", r.id.value)
    for chk in r.checks:
        b.expect(chk.ok, lambda: chk.name)
    out = [b]
    if not r.passed:
        return out
    G = paper_group(pid)
    out.append(_fidelity(pid, G))
    return out + run_group(G, ["factorizations"])
