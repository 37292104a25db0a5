import json
import os

import pytest

from ctlab.chartab import (character_kernel, character_predicates,
                           character_table, class_fusion, decompose,
                           direct_product_table, induce, inner_product,
                           irr_over, restrict, row_function, verify_orthogonality)
from ctlab.cyclo import ONE, rational
from ctlab.errors import BudgetExceeded, NotASubgroup, NotNormal, Budget
from ctlab.forge import cyclic, dihedral, extraspecial
from ctlab.permgroup import direct_product
from ctlab.perms import parse_cycles

from conftest import perm_group

GOLDEN = os.path.join(os.path.dirname(__file__), "golden")


def degree_multiset_forced(order, k, linear_count):
    """Oracle: the degree multisets allowed by sum d^2 = |G|, d | |G|,
    and the number of linear characters."""
    out = []

    def rec(remaining_sum, remaining_count, min_deg, acc):
        if remaining_count == 0:
            if remaining_sum == 0:
                out.append(tuple(acc))
            return
        d = min_deg
        while d * d * remaining_count <= remaining_sum if False else d * d <= remaining_sum:
            if order % d == 0:
                rec(remaining_sum - d * d, remaining_count - 1, d, acc + [d])
            d += 1

    rec(order - linear_count, k - linear_count, 2, [])
    return {tuple([1] * linear_count + list(t)) for t in out}


def test_s3_table_values(s3_table):
    t = s3_table
    assert t.degrees == (1, 1, 2)
    assert t.values[0] == (ONE, ONE, ONE)
    assert t.values[1] == (ONE, rational(-1), ONE)
    assert t.values[2] == (rational(2), rational(0), rational(-1))
    assert verify_orthogonality(t)


def test_q8_degrees_forced(q8):
    t = character_table(q8)
    # oracle: k = 5 classes, sum of squares 8, 4 linear characters force
    # the degree multiset (enumerated independently)
    der = q8.derived_subgroup()
    linear = q8.order // der.order
    allowed = degree_multiset_forced(8, 5, linear)
    assert allowed == {(1, 1, 1, 1, 2)}
    assert tuple(sorted(t.degrees)) in allowed
    assert verify_orthogonality(t)


def test_extraspecial27_degrees():
    g = extraspecial(3, "+")
    t = character_table(g)
    assert sorted(t.degrees) == [1] * 9 + [3, 3]
    assert len(t) == 11
    assert sum(d * d for d in t.degrees) == 27
    assert verify_orthogonality(t)


def test_sl25_degrees(sl25_table):
    assert sorted(sl25_table.degrees) == [1, 2, 2, 3, 3, 4, 4, 5, 6]
    assert verify_orthogonality(sl25_table)


def test_degrees_divide_order_and_linear_count(corpus_tables):
    for name, g, t in corpus_tables:
        assert sum(d * d for d in t.degrees) == g.order, name
        assert all(g.order % d == 0 for d in t.degrees), name
        linear = sum(1 for d in t.degrees if d == 1)
        assert linear == g.order // g.derived_subgroup().order, name


def test_orthogonality_whole_corpus(corpus_tables):
    for name, g, t in corpus_tables:
        assert verify_orthogonality(t), name


def test_budget_guard():
    with pytest.raises(BudgetExceeded):
        character_table(cyclic(30), budget=Budget(max_order=20))


def test_determinism_under_generator_permutation():
    g1 = perm_group(4, "(1 2)", "(1 2 3 4)")
    g2 = perm_group(4, "(1 2 3 4)", "(1 2)", "(1 3 2 4)")
    t1, t2 = character_table(g1), character_table(g2)
    assert t1.values == t2.values
    assert t1.classes.representatives == t2.classes.representatives
    assert t1.digest() == t2.digest()


def test_direct_product_table_equals_direct_table(s3_table):
    tc2 = character_table(cyclic(2))
    tp, (grp, _, _, _) = direct_product_table(s3_table, tc2)
    td = character_table(grp)
    assert tp.values == td.values
    assert tp.degrees == (1, 1, 1, 1, 2, 2)
    d8c3 = direct_product_table(character_table(dihedral(8)),
                                character_table(cyclic(3)))[0]
    direct = character_table(d8c3.group)
    assert d8c3.values == direct.values


def test_class_fusion_examples(d8, s3):
    z = d8.center()
    fus = class_fusion(z, d8)
    assert len(fus) == 2 and len(set(fus)) == 2
    a3 = s3.subgroup([parse_cycles("(1 2 3)", 3)])
    fus2 = class_fusion(a3, s3)
    assert len(fus2) == 3 and len(set(fus2)) == 2


def test_fusion_requires_subgroup(s3, d8):
    with pytest.raises(NotASubgroup):
        class_fusion(s3, d8)


def test_induction_from_a3(s3, s3_table):
    a3 = s3.subgroup([parse_cycles("(1 2 3)", 3)])
    ta3 = character_table(a3)
    fus = class_fusion(a3, s3)
    ind = induce(row_function(ta3, 0), s3_table.classes, fus)
    assert ind.values == (rational(2), rational(0), rational(2))
    # 1_H^G = trivial + sign
    mults = decompose(s3_table, ind)
    assert mults == [1, 1, 0]
    assert inner_product(ind, row_function(s3_table, 0)) == 1


def test_fully_ramified_induction_on_d8(d8, d8_table):
    z = d8.center()
    tz = character_table(z)
    fus = class_fusion(z, d8)
    lam = row_function(tz, 1)
    ind = induce(lam, d8_table.classes, fus)
    mults = decompose(d8_table, ind)
    assert mults == [0, 0, 0, 0, 2]     # lambda^G = 2 chi for the degree-2 chi
    assert d8_table.degrees[4] == 2


def test_restriction_of_trivial(s3, s3_table):
    a3 = s3.subgroup([parse_cycles("(1 2 3)", 3)])
    ta3 = character_table(a3)
    fus = class_fusion(a3, s3)
    res = restrict(row_function(s3_table, 0), ta3.classes, fus)
    assert all(v == ONE for v in res.values)


def test_frobenius_reciprocity(s4):
    d8_sub = s4.subgroup([parse_cycles("(1 2 3 4)", 4), parse_cycles("(1 3)", 4)])
    t_sub = character_table(d8_sub)
    t_big = character_table(s4)
    fus = class_fusion(d8_sub, s4)
    for i in range(len(t_sub)):
        theta = row_function(t_sub, i)
        ind = induce(theta, t_big.classes, fus)
        for j in range(len(t_big)):
            chi = row_function(t_big, j)
            lhs = inner_product(ind, chi)
            rhs = inner_product(theta, restrict(chi, t_sub.classes, fus))
            assert lhs == rhs


def test_irr_over_examples(d8, d8_table, s3, s3_table):
    z = d8.center()
    tz = character_table(z)
    assert irr_over(d8_table, z, tz, 1) == [4]
    # trivial lambda: everything inflated from G/N
    over_trivial = irr_over(d8_table, z, tz, 0)
    assert len(over_trivial) == 4
    a3 = s3.subgroup([parse_cycles("(1 2 3)", 3)])
    with pytest.raises(NotNormal):
        irr_over(s3_table, s3.subgroup([parse_cycles("(1 2)", 3)]),
                 character_table(s3.subgroup([parse_cycles("(1 2)", 3)])), 0)


def test_character_predicates(s3_table, d8_table):
    assert character_predicates(s3_table, 0) == {
        "kernel_order": 6, "is_faithful": False, "center_order": 6}
    assert character_predicates(s3_table, 1)["kernel_order"] == 3
    pred = character_predicates(d8_table, 4)
    assert pred["is_faithful"] and pred["center_order"] == 2
    assert character_kernel(s3_table, 1).order == 3


def test_inner_product_rows_orthonormal(sl25_table):
    for i in (0, 3, 8):
        assert inner_product(row_function(sl25_table, i),
                             row_function(sl25_table, i)) == 1


def test_golden_files(s3_table, d8_table):
    for name, table in [("s3", s3_table), ("d8", d8_table)]:
        path = os.path.join(GOLDEN, f"{name}_table.json")
        blob = json.dumps(table.to_json(), indent=1, sort_keys=True) + "\n"
        with open(path) as fh:
            assert fh.read() == blob, f"golden table mismatch for {name}"
