import numpy as np
import pytest

from fingroups.errors import (InvalidParameter, NoIdentity, NotAssociative, NotAutomorphism,
                              NotHomomorphism, NotLatinSquare, NotNormal, OrderCapExceeded)
from fingroups.group import (ActionSpec, Permutation, actions, alternating, automorphisms, cyclic,
                             dihedral, direct_product, elementary_abelian, export_cayley,
                             export_generators, from_cayley_table, from_permutation_generators,
                             is_isomorphic, named_group, parse_cayley, parse_generators,
                             quotient_group, restrict, semidirect_product, symmetric)
from fingroups.lattice import sylow


def check_table(G):
    n = G.order
    t = np.asarray(G.table)
    for row in t:
        assert sorted(row) == list(range(n))
    for col in t.T:
        assert sorted(col) == list(range(n))
    e = G.identity
    assert list(t[e]) == list(range(n)) and list(t[:, e]) == list(range(n))
    for x in range(n):
        assert t[x][G.inverse[x]] == e
        assert n % G.element_order[x] == 0


def test_trivial_table():
    G = from_cayley_table(1, [[0]])
    assert G.order == 1 and G.identity == 0


def test_cyclic_three_from_table():
    G = from_cayley_table(3, [[(i + j) % 3 for j in range(3)] for i in range(3)])
    assert G.element_order == (1, 3, 3)


def test_permutation_table_is_nonabelian_order_six(s3_perm):
    assert s3_perm.order == 6
    assert not s3_perm.is_abelian
    check_table(s3_perm)


def test_bad_tables_name_the_violation():
    with pytest.raises(NotLatinSquare, match="row 0"):
        from_cayley_table(2, [[0, 0], [1, 0]])
    with pytest.raises(NoIdentity):
        from_cayley_table(3, [[0, 2, 1], [2, 1, 0], [1, 0, 2]])
    # a Latin square with identity 0 that is not associative
    quasi = [[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3], [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]]
    with pytest.raises(NotAssociative):
        from_cayley_table(5, quasi)


def test_permutation_generators():
    assert from_permutation_generators(4, []).order == 1
    G = from_permutation_generators(6, [Permutation.parse(6, "(0 1 2 3)(4 5)")])
    assert G.order == 4 and G.element_order.count(4) == 2
    with pytest.raises(OrderCapExceeded):
        from_permutation_generators(5, [Permutation.parse(5, "(0 1)"),
                                        Permutation.parse(5, "(0 1 2 3 4)")], cap=100)


def test_permutation_text():
    p = Permutation.parse(5, "(0 1)(2 3 4)")
    assert str(p) == "(0 1)(2 3 4)"
    assert str(Permutation.identity(3)) == "()"
    assert p.then(p).images == (0, 1, 4, 2, 3)


@pytest.mark.parametrize("kind,params,order", [
    ("cyclic", (12,), 12), ("elementary_abelian", (3, 2), 9), ("symmetric", (4,), 24),
    ("alternating", (4,), 12), ("dihedral", (10,), 10),
])
def test_named_orders(kind, params, order):
    G = named_group(kind, *params)
    assert G.order == order
    check_table(G)


def test_named_details():
    assert cyclic(12).is_abelian
    assert elementary_abelian(3, 2).exponent == 3
    with pytest.raises(InvalidParameter):
        named_group("cyclic", 0)
    with pytest.raises(InvalidParameter):
        named_group("elementary_abelian", 4, 2)
    with pytest.raises(InvalidParameter):
        named_group("quaternion", 8)


def test_direct_products():
    G = symmetric(3)
    assert is_isomorphic(direct_product(G, cyclic(1)), G)[0]
    Z6 = direct_product(cyclic(2), cyclic(3))
    assert 6 in Z6.element_order
    E9 = direct_product(cyclic(3), cyclic(3))
    assert E9.order == 9 and E9.exponent == 3


def test_semidirect_inversion_and_trivial():
    Z3, Z2 = cyclic(3), cyclic(2)
    inv = ActionSpec.from_generator_images(Z3, Z2, {1: (0, 2, 1)})
    G = semidirect_product(Z3, Z2, inv)
    assert G.order == 6 and not G.is_abelian
    N, H = dihedral(8), cyclic(3)
    T = semidirect_product(N, H, ActionSpec.trivial(N, H))
    assert np.array_equal(T.table, direct_product(N, H).table)


def test_semidirect_rejects_bad_actions():
    Z3, Z2 = cyclic(3), cyclic(2)
    with pytest.raises(NotAutomorphism):
        semidirect_product(Z3, Z2, ActionSpec(Z2, Z3, ((0, 1, 2), (1, 0, 2))))
    Z4 = cyclic(4)
    with pytest.raises(NotHomomorphism):
        # generator of Z4 sent to inversion, but element 2 also sent to inversion
        semidirect_product(Z3, Z4, ActionSpec(Z4, Z3, ((0, 1, 2), (0, 2, 1), (0, 2, 1), (0, 2, 1))))


def test_inner_block_with_kernel_of_order_two():
    E9, Z4 = elementary_abelian(3, 2), cyclic(4)
    found = []
    for a in actions(E9, Z4):
        kernel = [h for h in range(4) if a.images[h] == tuple(range(9))]
        if len(kernel) == 2:
            found.append(semidirect_product(E9, Z4, a))
    assert found and all(G.order == 36 for G in found)


def test_quotients(s3):
    Q, proj = quotient_group(s3, 1 << s3.identity)
    assert Q.order == 6 and sorted(proj) == list(range(6))
    A3 = sylow(s3, 3)
    Q, proj = quotient_group(s3, A3)
    assert Q.order == 2
    for a in range(6):
        for b in range(6):
            assert proj[s3.mul(a, b)] == Q.mul(proj[a], proj[b])
    with pytest.raises(NotNormal):
        quotient_group(s3, sylow(s3, 2))


def test_quotient_of_order_18_example():
    from fingroups.corpus import paper_group
    G = paper_group("g18_3")
    Q, _ = quotient_group(G, sylow(G, 3))
    assert Q.order == 2


def test_isomorphism():
    G = dihedral(12)
    ok, phi = is_isomorphic(G, G)
    assert ok and len(set(phi)) == 12
    assert not is_isomorphic(cyclic(4), elementary_abelian(2, 2))[0]
    H = direct_product(symmetric(3), cyclic(2))
    ok, phi = is_isomorphic(G, H)
    assert ok
    for a in range(12):
        for b in range(12):
            assert phi[G.mul(a, b)] == H.mul(phi[a], phi[b])
    assert not is_isomorphic(alternating(4), dihedral(12))[0]


def test_isomorphism_budget():
    G = elementary_abelian(2, 4)
    with pytest.raises(OrderCapExceeded):
        is_isomorphic(G, elementary_abelian(2, 4), budget=2)


def test_automorphism_counts():
    assert len(automorphisms(cyclic(8))) == 4
    assert len(automorphisms(elementary_abelian(2, 2))) == 6
    assert len(automorphisms(symmetric(3))) == 6


def test_restrict_embeds_subgroup():
    G = symmetric(4)
    H = sylow(G, 2)
    T, emb = restrict(G, H)
    assert T.order == 8 and is_isomorphic(T, dihedral(8))[0]
    for a in range(8):
        for b in range(8):
            assert emb[T.mul(a, b)] == G.mul(emb[a], emb[b])


def test_text_formats_round_trip(tmp_path):
    G = dihedral(10)
    text = export_cayley(G)
    assert text.startswith("order 10\n")
    H = parse_cayley(text)
    assert np.array_equal(H.table, G.table)
    assert export_cayley(H) == text
    gens = [Permutation.parse(4, "(0 1)(2 3)"), Permutation.parse(4, "(0 1 2)")]
    g_text = export_generators(4, gens)
    d, back = parse_generators(g_text)
    assert d == 4 and back == gens and export_generators(d, back) == g_text
