import pytest
from hypothesis import given, settings, strategies as st

import oracles
from ctlab.errors import InvalidPermutation, NotNormal, NotSolvable
from ctlab.forge import cyclic
from ctlab.permgroup import PermGroup, group_from_generators
from ctlab.perms import parse_cycles

from conftest import perm_group


def test_s3_from_generators(s3):
    assert s3.order == 6
    assert parse_cycles("(1 3)", 3) in s3
    assert parse_cycles("(1 2 3)", 3) in s3


def test_trivial_group():
    t = group_from_generators(1, [])
    assert t.order == 1 and t.is_trivial()


def test_sl25_order_by_brute_closure(sl25):
    # independent oracle: plain BFS closure of the generator set
    assert len(oracles.closure(sl25.degree, sl25.gens)) == 120
    assert sl25.order == 120


def test_invalid_generator_rejected():
    with pytest.raises(InvalidPermutation):
        group_from_generators(3, [(0, 0, 1)])


def test_class_data_s3(s3):
    cd = s3.conjugacy_classes()
    assert cd.sizes == [1, 3, 2]
    assert cd.element_orders == [1, 2, 3]
    assert cd.representatives[0] == s3.identity
    assert sum(cd.sizes) == 6
    assert all(s * c == 6 for s, c in zip(cd.sizes, cd.centralizer_orders))


def test_class_count_q8_and_sl25(q8, sl25):
    # oracle: brute-force conjugation partition
    assert len(oracles.conjugacy_partition(oracles.closure(q8.degree, q8.gens))) == 5
    assert len(q8.conjugacy_classes()) == 5
    assert len(sl25.conjugacy_classes()) == 9


def test_class_representatives_are_least_members(d8):
    cd = d8.conjugacy_classes()
    for rep, cls in zip(cd.representatives, cd.classes):
        assert rep == min(cls)


def test_classes_independent_of_generators(s4):
    other = perm_group(4, "(1 2 3 4)", "(1 2)", "(3 4)")
    assert other.order == 24
    cd1 = s4.conjugacy_classes()
    cd2 = other.conjugacy_classes()
    assert cd1.representatives == cd2.representatives
    assert cd1.sizes == cd2.sizes


def test_structure_queries_s3(s3):
    assert s3.center().order == 1
    assert s3.is_solvable()
    assert s3.p_core(2).order == 1
    assert s3.p_prime_core(2).order == 3


def test_structure_queries_q8(q8):
    assert q8.p_core(2).order == 8
    assert q8.p_prime_core(2).order == 1


def test_center_matches_oracle(d8, q8, s4):
    for g in (d8, q8, s4):
        elems = oracles.closure(g.degree, g.gens)
        assert g.center().order == len(oracles.center(elems))


def test_derived_series_and_solvability(s4, a5):
    series = s4.derived_series()
    assert [g.order for g in series] == [24, 12, 4, 1]
    assert s4.is_solvable()
    assert not a5.is_solvable()


def test_sylow_subgroups(s3, sl25):
    assert s3.sylow_subgroup(3).order == 3
    assert s3.sylow_subgroup(2).order == 2
    assert s3.sylow_subgroup(5).order == 1
    syl2 = sl25.sylow_subgroup(2)
    assert syl2.order == 8
    # exactly one involution: the quaternion group among order-8 groups
    from ctlab.perms import order as porder

    assert sum(1 for e in syl2.elements() if porder(e) == 2) == 1


def test_sylow_of_order72_is_normal_c3sq(build72):
    g = build72.group
    syl = g.sylow_subgroup(3)
    assert syl.order == 9
    assert g.is_normal(syl)
    assert syl.exponent() == 3


def test_sylow_orders_match_p_part_on_corpus(corpus):
    for name, g in corpus:
        if g.order > 100:
            continue
        for p in (2, 3, 5):
            assert g.sylow_subgroup(p).order == oracles.p_part(g.order, p), name


def test_quotient_s3(s3):
    a3 = s3.subgroup([parse_cycles("(1 2 3)", 3)])
    qr = s3.quotient(a3)
    assert qr.group.order == 2
    assert qr.hom.image(parse_cycles("(1 2)", 3)) != qr.group.identity
    assert qr.hom.kernel().order == 3


def test_quotient_requires_normal(s4):
    h = s4.subgroup([parse_cycles("(1 2)", 4)])
    with pytest.raises(NotNormal):
        s4.quotient(h)


def test_quotient_of_power_by_diagonal():
    # K^2 / W for K = C2 with W the product-one kernel: a hand trace
    from ctlab.forge import central_product_power

    cpp = central_product_power(cyclic(2), 2)
    assert cpp.group.order == 2
    assert cpp.w_subgroup.order == 2


def test_d8_central_quotient(d8):
    qr = d8.quotient(d8.center())
    assert qr.group.order == 4
    assert qr.group.exponent() == 2  # C2 x C2


def test_quotient_order_multiplies_back(corpus):
    for name, g in corpus:
        if g.order > 60 or g.order == 1:
            continue
        der = g.derived_subgroup()
        if 1 < der.order < g.order:
            qr = g.quotient(der)
            assert qr.group.order * der.order == g.order, name


def test_p_length_examples(s4, build864):
    assert cyclic(5).p_length(5) == 1
    assert cyclic(6).p_length(5) == 0
    assert s4.p_length(2) == 2
    assert s4.p_length(3) == 1
    assert build864.group.p_length(2) == 2


def test_p_length_requires_solvable(a5):
    with pytest.raises(NotSolvable):
        a5.p_length(2)


def test_p_length_generator_invariance():
    g1 = perm_group(4, "(1 2)", "(1 2 3 4)")
    g2 = perm_group(4, "(3 4)", "(1 3)(2 4)", "(1 2 3 4)")
    assert g2.order == 24
    assert g1.p_length(2) == g2.p_length(2) == 2


def test_p_prime_core_contains_every_normal_p_prime_closure(corpus):
    # Every normal p'-subgroup is a join of single-class normal closures,
    # so containment of those closures verifies maximality.
    for name, g in corpus:
        if g.order > 100:
            continue
        for p in (2, 3):
            core = g.p_prime_core(p)
            assert core.order % p != 0
            assert g.is_normal(core)
            for rep in g.conjugacy_classes().representatives:
                ncl = g.normal_closure([rep])
                if ncl.order % p != 0:
                    assert ncl.is_subgroup_of(core), name


def test_membership_matches_enumeration_small(corpus):
    for name, g in corpus:
        if g.order > 200:
            continue
        elems = oracles.closure(g.degree, g.gens)
        assert len(elems) == g.order, name
        for x in list(sorted(elems))[:25]:
            assert x in g, name


@settings(max_examples=40, deadline=None)
@given(st.lists(st.permutations(range(6)).map(tuple), min_size=1, max_size=3))
def test_random_small_groups_agree_with_oracle(gens):
    g = PermGroup(6, gens)
    elems = oracles.closure(6, gens)
    assert g.order == len(elems)
    assert 720 % g.order == 0
    cd = g.conjugacy_classes()
    assert sum(cd.sizes) == g.order
    assert len(cd) == len(oracles.conjugacy_partition(elems))


def test_normalizer_and_centralizer(d8, s4):
    z = d8.center()
    assert d8.normalizer(z).order == 8
    assert d8.centralizer_of_subgroup(z).order == 8
    c2 = s4.subgroup([parse_cycles("(1 2)", 4)])
    assert s4.normalizer(c2).order == 4
    assert s4.centralizer_of_subgroup(c2).order == 4
