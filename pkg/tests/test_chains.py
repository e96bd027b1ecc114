import pytest

from fingroups.chains import (ChainWitness, is_p_subnormal, is_subnormal, mutually_sn_permutable,
                              p_subnormal_witness, psn_marks)
from fingroups.corpus import paper_factors, paper_group
from fingroups.group import alternating, dihedral, symmetric
from fingroups.lattice import all_subgroups, subgroup_generated, sylow, whole
from fingroups.oracles import naive_p_subnormal


def involution(G):
    return next(x for x in range(G.order) if G.element_order[x] == 2)


def test_subnormal(s3):
    assert is_subnormal(s3, sylow(s3, 3))
    assert is_subnormal(s3, whole(s3))
    assert not is_subnormal(s3, subgroup_generated(s3, [involution(s3)]))
    D8 = dihedral(8)
    # a non-normal reflection subgroup of D8 is still subnormal
    R = subgroup_generated(D8, [involution(D8)])
    assert is_subnormal(D8, R)


def test_witness_shapes():
    A4 = alternating(4)
    w = p_subnormal_witness(A4, whole(A4))
    assert w.length == 0 and w.validate()
    w = p_subnormal_witness(A4, sylow(A4, 2))
    assert w.length == 1 and w.indices == [3]
    assert p_subnormal_witness(A4, sylow(A4, 3)) is None


def test_witness_render():
    G = symmetric(4)
    w = p_subnormal_witness(G, sylow(G, 2))
    assert w.render() == "H0 (order 8) < G (order 24) [3]"
    T = subgroup_generated(G, [involution(G)])
    w = p_subnormal_witness(G, T)
    assert w.validate()
    assert w.render().endswith("G (order 24) [3]") or w.render().endswith("G (order 24) [2]")


def test_witness_validation_rejects_bad_chains():
    G = alternating(4)
    lat = all_subgroups(G)
    V = sylow(G, 2)
    bad = ChainWitness((lat.subgroup(0), V, whole(G)))  # index 4 first step
    assert not bad.validate()


def test_e9_in_order_18_example():
    G = paper_group("g18_3")
    A, B = paper_factors("g18_3")
    assert A.order == 9 and p_subnormal_witness(G, A) is not None
    ok, pair = mutually_sn_permutable(G, A, B)
    assert not ok and pair is not None


def test_mutual_permutability_positive(s3):
    G = s3
    assert mutually_sn_permutable(G, whole(G), whole(G)) == (True, None)
    N = sylow(G, 3)
    for x in range(G.order):
        if G.element_order[x] == 2:
            assert mutually_sn_permutable(G, N, subgroup_generated(G, [x]))[0]


@pytest.mark.parametrize("G", [symmetric(4), alternating(5), dihedral(24)], ids=lambda G: G.name)
def test_marks_match_naive_search(G):
    lat = all_subgroups(G)
    for i in range(lat.size):
        assert is_p_subnormal(lat, i) == naive_p_subnormal(lat, i)


def test_marks_over_sections():
    # P-subnormality in a quotient: V4 < S4, S4/V4 ~ S3 where order-2 images are P-subnormal
    G = symmetric(4)
    lat = all_subgroups(G)
    normals = [i for i in range(lat.size) if lat.normal[i] and lat.orders[i] == 4]
    (v,) = normals
    marks = psn_marks(lat, bottom=v)
    above = [i for i in range(lat.size) if lat.masks[v] & ~lat.masks[i] == 0]
    assert all((marks >> i) & 1 for i in above)
