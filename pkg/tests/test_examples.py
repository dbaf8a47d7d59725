"""Small worked cases: SR(2,2), complete(S3) and a few groups, checked by hand or by enumeration.

In SR(2,2) a branch (x, s1, s2) has index x + 2*s1 + 4*s2, so 100 = 1, 010 = 2, 001 = 4.
"""

from collections import Counter

import pytest

import oracles as orc
from gtrellis.composition import refined_representative_array, schreier_array, x_composition_chain, y_composition_chain
from gtrellis.encoder import degradation_profile, encode, new_encoder
from gtrellis.generators import eta_check, factorize, generators_at, representative_array
from gtrellis.groups import (
    Chain,
    composition_refinement,
    cyclic,
    derived_series,
    direct_product,
    find_isomorphism,
    group_from_spec,
    intersect,
    is_normal,
    jordan_holder_factors,
    product_set,
    quotient_group,
    right_cosets,
    subgroup,
    subgroup_closure,
    symmetric,
)
from gtrellis.schreier import (
    adjacent_column_iso,
    column_shift_iso,
    controllable_form,
    dual_matrix,
    rectangle_family,
    schreier_matrix,
    star_chain,
    zassenhaus_iso,
)
from gtrellis.search import search_subdirect
from gtrellis.trellis import (
    complete_section,
    componentwise_product,
    join_paths,
    next_set,
    prev_in_pletty,
    prev_set,
    section_from_parts,
    shift_register_section,
)

SR22 = shift_register_section(2, 2)
S3 = symmetric(3)
CS3 = complete_section(S3)


def transposition():
    return next(x for x in range(6) if S3.element_orders[x] == 2)


def three_cycle():
    return next(x for x in range(6) if S3.element_orders[x] == 3)


# groups


def test_group_examples():
    assert cyclic(1).order == 1
    v4 = direct_product(cyclic(2), cyclic(2))
    assert sorted(v4.element_orders) == [1, 2, 2, 2]
    assert [H.order for H in derived_series(S3)] == [6, 3, 1]
    assert subgroup_closure(S3, []).order == 1
    assert subgroup_closure(cyclic(4), [2]).members == {0, 2}
    assert subgroup_closure(S3, [transposition(), three_cycle()]).order == 6
    assert is_normal(S3.whole, subgroup_closure(S3, [three_cycle()]))
    assert not is_normal(S3.whole, subgroup_closure(S3, [transposition()]))


def test_product_examples():
    B = SR22.B
    members, ok = product_set(B, {0, 1}, {0, 2})
    assert members == {0, 1, 2, 3} and ok
    t1 = transposition()
    t2 = next(x for x in range(6) if S3.element_orders[x] == 2 and x != t1)
    members, ok = product_set(S3, subgroup_closure(S3, [t1]).members, subgroup_closure(S3, [t2]).members)
    assert len(members) == 4 and not ok


def test_intersection_examples():
    ch = SR22.chains
    # X_1 = {(x,s1,0)}, Y_1 = {(0,s1,s2)}
    assert ch.X(1).members == {0, 1, 2, 3} and ch.Y(1).members == {0, 2, 4, 6}
    assert intersect(ch.X(1), ch.Y(1)).members == {0, 2}
    assert intersect(ch.X(1), ch.Y(0)).order == 1


def test_coset_and_quotient_examples():
    z4 = cyclic(4)
    cl = right_cosets(z4.whole, subgroup(z4, [0, 2]))
    assert cl.cosets == (frozenset({0, 2}), frozenset({1, 3})) and cl.transversal == (0, 1)
    assert [len(c) for c in right_cosets(S3.whole, subgroup_closure(S3, [three_cycle()])).cosets] == [3, 3]
    Q, _ = quotient_group(SR22.B.whole, SR22.X0)
    assert Q.order == 4 and sorted(Q.element_orders) == [1, 2, 2, 2]
    assert find_isomorphism(Q, group_from_spec("Z2xZ2")) is not None
    assert find_isomorphism(cyclic(4), group_from_spec("Z2xZ2")) is None


def test_refinement_examples():
    z4 = cyclic(4)
    assert [g.order for g in composition_refinement(Chain((z4.trivial, z4.whole)))] == [1, 2, 4]
    assert [g.order for g in composition_refinement(Chain((S3.trivial, S3.whole)))] == [1, 3, 6]
    z2 = cyclic(2)
    assert [g.order for g in composition_refinement(Chain((z2.trivial, z2.whole)))] == [1, 2]
    g = direct_product(S3, S3)
    left = subgroup(g, [x * 6 + S3.identity for x in range(6)])
    orders = composition_refinement(Chain((g.trivial, left, g.whole))).orders()
    assert Counter(b // a for a, b in zip(orders, orders[1:])) == Counter({2: 2, 3: 2})
    assert len(jordan_holder_factors(group_from_spec("Z2xZ2xZ2"))) == 3
    assert jordan_holder_factors(cyclic(1)) == ()


# sections


def test_section_examples():
    one = cyclic(1)
    assert section_from_parts(one, one, [0], [0]).chains.ell == 0
    z2 = cyclic(2)
    # B = Z2 x Z2 with index 2x + s, left = s, right = x
    sec = section_from_parts(direct_product(z2, z2), z2, [b % 2 for b in range(4)], [b // 2 for b in range(4)])
    assert sec.chains.ell == 1
    for (p, m), (nb, ns) in {(2, 1): (4, 2), (2, 2): (8, 4), (3, 1): (9, 3)}.items():
        s = shift_register_section(p, m)
        assert (s.B.order, s.S.order) == (nb, ns)
    assert CS3.B.order == 36 and not CS3.B.is_abelian and CS3.chains.ell == 1
    # X_0 = 1 x S3 and Y_0 = S3 x 1
    assert CS3.X0.members == {S3.identity * 6 + b for b in range(6)}
    assert CS3.Y0.members == {a * 6 + S3.identity for a in range(6)}


def test_next_and_previous_examples():
    ch = SR22.chains
    assert next_set(SR22, []) == frozenset()
    assert next_set(SR22, ch.X(0).members) == ch.X(1).members and ch.X(1).order == 4
    assert prev_set(SR22, ch.Y(0).members) == ch.Y(1).members and ch.Y(1).order == 4
    assert prev_in_pletty(SR22, 0, ch.X(1).members) == ch.X(0).members
    assert prev_in_pletty(SR22, 0, [2]) == orc.prev_of(SR22, [2]) & orc.x_oracle(SR22, 0)


def test_join_examples():
    e = SR22.B.identity
    assert join_paths(SR22, [e], 1) == {(e, x) for x in SR22.X0.members}
    assert len(join_paths(SR22, SR22.X0.members, 1)) == 4
    assert len(join_paths(SR22, SR22.X0.members, 2)) == 8
    assert componentwise_product(SR22, (1, 2, 4), (1, 2, 4)) == (0, 0, 0)


def test_schreier_examples():
    M = schreier_matrix(SR22)
    assert [M.entry(j, 2 - j).order for j in range(3)] == [2, 4, 8] and M.controllable
    cf = controllable_form(M)
    assert [cf[(0, r)].order for r in range(3)] == [1, 1, 2]
    assert [cf[(j, 2)].order for j in range(3)] == [2, 4, 8]
    D = dual_matrix(SR22)
    assert [D.entry(k, 2 - k).order for k in range(3)] == [2, 4, 8]
    assert dual_matrix(CS3).controllable
    assert schreier_matrix(CS3).entry(1, 0).order == 36
    assert [g.order for g in star_chain(SR22)] == [1, 1, 2, 2, 4, 8, 8]
    assert [g.order for g in star_chain(CS3)][:4] == [1, 1, 6, 36]


def test_isomorphism_examples():
    z = zassenhaus_iso(SR22, 0, 2)
    assert len(z.map) == 2 and z.order == 2
    assert column_shift_iso(CS3, 0).order == 6
    assert column_shift_iso(SR22, 0).order == column_shift_iso(SR22, 1).order == 2
    assert adjacent_column_iso(SR22, 0, 2, 1).order == 2
    assert adjacent_column_iso(SR22, 0, 2, 2).order == 2
    fam = rectangle_family(SR22, 2, 1, 2)
    assert fam.factor_orders() == [2, 2, 2]
    assert [h.order for h in fam.H] == [2, 4, 8] and [j.order for j in fam.J] == [1, 2, 4]
    assert rectangle_family(CS3, 1, 1, 1).factor_orders() == [6, 6]


# generators and encoder


def test_generator_table_examples():
    t = representative_array(SR22)
    big = {key: reps for key, reps in t.cells.items() if len(reps) > 1}
    assert big == {(0, 2): (0, 1), (1, 1): (0, 2), (2, 0): (0, 4)}
    f = factorize(t, 7)
    assert (f.parts[(0, 2)], f.parts[(1, 1)], f.parts[(2, 0)]) == (1, 2, 4)
    f = factorize(t, 2)
    assert {k: v for k, v in f.parts.items() if v != 0} == {(1, 1): 2}
    assert all(v == 0 for v in factorize(t, 0).parts.values())
    assert generators_at(t, 0) == [(0,)]
    assert sorted(generators_at(t, 2)) == [(0, 0, 0), (1, 2, 4)]
    assert eta_check(t)["eta_B"] == 3 and eta_check(t)["cells_product"] == 8
    c = representative_array(CS3)
    assert sorted(len(r) for r in c.cells.values() if len(r) > 1) == [6, 6]
    assert len(generators_at(c, 1)) == 6 and all(len(g) == 2 for g in generators_at(c, 1))
    e = eta_check(c)
    assert (e["eta_B"], e["cells_product"]) == (4, 36)


def test_encoder_examples():
    t = representative_array(SR22)
    assert new_encoder(t).state_branch() == 0
    c = representative_array(CS3)
    assert new_encoder(c).state_branch() == CS3.B.identity
    assert encode(c, [CS3.B.identity] * 3) == [CS3.B.identity] * 3
    assert encode(t, [1, 0, 0, 0, 0]) == [1, 2, 4, 0, 0]
    assert encode(t, [1, 1, 1]) == [1, 3, 7]


def test_offset_examples():
    a = (1, 2, 4)
    assert degradation_profile(SR22, a, a) == [-1, -1]
    for p in join_paths(CS3, range(36), 1):
        for q in join_paths(CS3, [p[0]], 1):
            assert degradation_profile(CS3, p, q)[0] <= 0


# composition


def test_composition_examples():
    xc = x_composition_chain(SR22)
    assert len(xc) == 3 and {n for n, _ in xc.factors()} == {2}
    col0 = [g for (j, _, _), g in xc.terms if j == 0]
    assert len({g.order for g in col0} - {1}) == 1
    c = x_composition_chain(CS3)
    orders = c.chain().orders()
    assert [b // a for a, b in zip(orders, orders[1:])] == [3, 2, 3, 2]
    assert [g.order for (j, k, s), g in c.terms if j == 0 and k == 0] == [1, 3, 6]
    assert len(y_composition_chain(SR22)) == 3 and len(y_composition_chain(CS3)) == 4
    assert schreier_array(SR22).page_lengths()[(0, 2)] == 1
    arr = schreier_array(CS3)
    # the page from X_0 to X_0(X_1 ∩ Y_0) = B
    assert [g.order for g in arr.page_groups(1, 0)][0] == 6 and arr.page_groups(1, 0)[-1].order == 36
    assert arr.page_lengths()[(1, 0)] == 2 and len(arr.chain()) - 1 == 4


def test_refined_table_examples():
    coarse, fine = representative_array(SR22), refined_representative_array(SR22)
    assert sorted(len(r) for r in coarse.cells.values() if len(r) > 1) == sorted(len(r) for r in fine.cells.values() if len(r) > 1)
    f = refined_representative_array(CS3)
    assert sorted(len(r) for r in f.cells.values() if len(r) > 1) == [2, 2, 3, 3]


@pytest.mark.parametrize("name,order", [("Z2", 4), ("S3", 36)])
def test_search_examples(name, order):
    hits = search_subdirect(group_from_spec(name), nonabelian=(name == "S3"))
    assert order in [h.section.B.order for h in hits]
