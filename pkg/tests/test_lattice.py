import pytest

from fingroups.bits import members_of
from fingroups.corpus import paper_group
from fingroups.errors import InvalidParameter, OrderCapExceeded
from fingroups.group import (alternating, cyclic, dihedral, direct_product, elementary_abelian,
                             symmetric)
from fingroups.lattice import (Subgroup, all_subgroups, characteristic_subgroup, complex_product,
                               conjugate_mask, is_normal, relative_subgroup, select_subgroups,
                               subgroup_generated, sylow)
from fingroups.oracles import brute_force_subgroups


def three_cycle(G):
    return next(x for x in range(G.order) if G.element_order[x] == 3)


def involution(G):
    return next(x for x in range(G.order) if G.element_order[x] == 2)


def test_subgroup_generated(s3):
    assert subgroup_generated(s3, [s3.identity]).is_trivial
    assert subgroup_generated(s3, range(6)).is_whole
    assert subgroup_generated(s3, [three_cycle(s3)]).order == 3
    with pytest.raises(InvalidParameter):
        subgroup_generated(s3, [6])


@pytest.mark.parametrize("G,count", [
    (cyclic(7), 2), (symmetric(3), 6), (alternating(4), 10), (symmetric(4), 30),
    (dihedral(8), 10), (elementary_abelian(2, 3), 16), (elementary_abelian(2, 4), 67),
    (alternating(5), 59),
])
def test_subgroup_counts(G, count):
    assert all_subgroups(G).size == count


@pytest.mark.parametrize("G", [symmetric(3), alternating(4), dihedral(12),
                               direct_product(cyclic(2), symmetric(3)), cyclic(16)])
def test_lattice_matches_brute_force(G):
    assert set(all_subgroups(G).masks) == brute_force_subgroups(G)


def test_cover_relations_are_exact():
    lat = all_subgroups(symmetric(4))
    for i in range(lat.size):
        for j in lat.up[i]:
            assert lat.masks[i] & ~lat.masks[j] == 0 and i != j
            # nothing strictly between
            between = [k for k in range(lat.size) if k not in (i, j)
                       and lat.masks[i] & ~lat.masks[k] == 0 and lat.masks[k] & ~lat.masks[j] == 0]
            assert not between


def test_subgroup_invariants():
    G = dihedral(12)
    for i in range(all_subgroups(G).size):
        H = all_subgroups(G).subgroup(i)
        assert G.identity in H
        assert G.order % H.order == 0
        for a in H.members:
            assert G.inverse[a] in H
            for b in H.members:
                assert G.mul(a, b) in H


def test_lattice_cap(monkeypatch):
    monkeypatch.setenv("FINGROUPS_LATTICE_CAP", "10")
    with pytest.raises(OrderCapExceeded):
        all_subgroups(cyclic(12))


def test_select_subgroups(s3):
    assert sorted(H.order for H in select_subgroups(cyclic(6), "maximal")) == [2, 3]
    assert sorted(H.order for H in select_subgroups(s3, "normal")) == [1, 3, 6]
    mins = select_subgroups(alternating(4), "minimal_normal")
    assert [H.order for H in mins] == [4]


def test_is_normal(s3):
    assert is_normal(s3, subgroup_generated(s3, range(6)))
    G = dihedral(8)
    assert is_normal(G, characteristic_subgroup(G, "center"))
    assert not is_normal(s3, subgroup_generated(s3, [involution(s3)]))


def test_characteristic_subgroups(s3):
    assert characteristic_subgroup(cyclic(10), "derived").is_trivial
    assert characteristic_subgroup(cyclic(4), "frattini").order == 2
    assert characteristic_subgroup(s3, "fitting").order == 3
    assert characteristic_subgroup(s3, "o_p", 2).is_trivial
    assert characteristic_subgroup(symmetric(4), "fitting").order == 4
    assert characteristic_subgroup(cyclic(9), "o_p", 5).is_trivial


def test_relative_subgroups(s3):
    N = sylow(s3, 3)
    assert relative_subgroup(s3, N, "core") == N
    T = subgroup_generated(s3, [involution(s3)])
    assert relative_subgroup(s3, T, "core").is_trivial
    assert relative_subgroup(s3, T, "normal_closure").is_whole
    assert relative_subgroup(s3, T, "centralizer") == T
    assert relative_subgroup(s3, T, "normalizer") == T


def test_sylow(s3):
    assert sylow(cyclic(12), 3).order == 3
    assert sylow(alternating(4), 2).order == 4
    P = sylow(s3, 3)
    assert P.order == 3 and is_normal(s3, P)
    assert sylow(s3, 5).is_trivial


def test_sylow_conjugates_cover_p_elements():
    G = symmetric(4)
    for p in (2, 3):
        P = sylow(G, p)
        cover = 0
        for g in range(G.order):
            cover |= conjugate_mask(G, g, P.mask)
        p_elements = {x for x in range(G.order) if G.element_order[x] in (1, p, p * p, p ** 3)}
        assert p_elements <= set(members_of(cover))


def test_complex_product(s3):
    T = subgroup_generated(s3, [involution(s3)])
    r = complex_product(T, T)
    assert r.size == 2 and r.is_subgroup
    N = sylow(s3, 3)
    assert complex_product(N, T).is_subgroup
    G = paper_group("g18_3")
    A = next(H for H in (all_subgroups(G).subgroup(i) for i in range(all_subgroups(G).size))
             if H.order == 9)
    B = subgroup_generated(G, [involution(G)])
    assert complex_product(A, B).equals_parent


def test_product_size_formula():
    G = dihedral(12)
    lat = all_subgroups(G)
    for i in range(lat.size):
        for j in range(lat.size):
            A, B = lat.subgroup(i), lat.subgroup(j)
            assert complex_product(A, B).size * (A & B).order == A.order * B.order


def test_lattice_report_lines():
    text = all_subgroups(symmetric(3)).report()
    assert len(text.strip().splitlines()) == 6
