import pytest

from ctlab.chartab import character_table, direct_product_table
from ctlab.errors import (AmbiguousBasicSet, MissingDefectGroup,
                          NotCentralPPrime)
from ctlab.forge import cyclic
from ctlab.modrep import (NilpotencyCertificate, brauer_data,
                          brauer_data_for_product, brauer_kernel,
                          brauer_kernel_trivial, block_partition,
                          cartan_determinant, fong_block, ibr_fong_swan,
                          lifts_of, linear_characters, nilpotency_refute,
                          p_regular_classes, restriction)
from ctlab.permgroup import p_part

from conftest import perm_group


def test_p_regular_classes(s3_table, sl25_table):
    assert p_regular_classes(s3_table.classes, 3) == [0, 1]
    assert p_regular_classes(s3_table.classes, 2) == [0, 2]
    assert len(p_regular_classes(sl25_table.classes, 5)) == 5


def test_ibr_s3(s3_table):
    bd3 = brauer_data(s3_table, 3)
    assert bd3.ibr_degrees() == [1, 1]
    bd2 = brauer_data(s3_table, 2)
    assert bd2.ibr_degrees() == [1, 2]
    # chi_2 restricted to 3-regular classes = trivial + sign restrictions
    reg = bd3.regular
    chi2 = restriction(s3_table.values[2], reg)
    s = tuple(a + b for a, b in zip(bd3.ibr[0], bd3.ibr[1]))
    assert chi2 == s


def test_ibr_sl25_defining(sl25_table):
    bd = brauer_data(sl25_table, 5)
    assert bd.ibr_degrees() == [1, 2, 3, 4, 5]


def test_ibr_cross_check_symmetric_powers(sl25_table):
    from ctlab.instances import sl2_char_p_brauer

    bd_fs = brauer_data(sl25_table, 5)
    bd_sp = sl2_char_p_brauer(5)
    assert bd_fs.ibr == bd_sp.ibr


def test_ambiguous_basic_set_on_a5(a5):
    t = character_table(a5)
    with pytest.raises(AmbiguousBasicSet):
        ibr_fong_swan(t, 2)


def test_block_partition_s3(s3_table):
    blocks3 = block_partition(s3_table, 3)
    assert len(blocks3) == 1 and blocks3[0].defect == 1
    blocks2 = block_partition(s3_table, 2)
    assert len(blocks2) == 2
    assert blocks2[0].ordinary == (0, 1) and blocks2[0].defect == 1
    assert blocks2[1].ordinary == (2,) and blocks2[1].defect == 0


def test_decomposition_s3(s3_table):
    bd = brauer_data(s3_table, 3)
    rows = {tuple(r) for r in bd.decomposition}
    assert rows == {(1, 0), (0, 1), (1, 1)}
    assert cartan_determinant(bd.cartan) == 3
    bd2 = brauer_data(s3_table, 2)
    assert bd2.decomposition[2] == [0, 1]   # defect-0 row is a unit vector


def test_c4_principal_block(   ):
    c4 = cyclic(4)
    bd = brauer_data(character_table(c4), 2)
    assert [r[0] for r in bd.decomposition] == [1, 1, 1, 1]
    assert len(bd.blocks) == 1
    assert len(lifts_of(bd, 0)) == 4
    d = c4.sylow_subgroup(2)
    assert d.order // d.derived_subgroup().order == 4


def test_sl25_blocks_p3(sl25_table):
    bd = brauer_data(sl25_table, 3)
    assert bd.ibr_degrees() == [1, 2, 2, 3, 3, 4, 6]
    stats = sorted((b.k(), b.l(), b.defect) for b in bd.blocks)
    assert stats == [(1, 1, 0), (1, 1, 0), (1, 1, 0), (3, 2, 1), (3, 2, 1)]


def test_block_sums_and_cartan_on_corpus(corpus_tables):
    for name, g, t in corpus_tables:
        for p in (2, 3, 5):
            bd = brauer_data(t, p)
            assert sum(b.k() for b in bd.blocks) == len(t), name
            assert sum(b.l() for b in bd.blocks) == len(bd.ibr), name
            assert all(b.l() >= 1 for b in bd.blocks), name
            assert all(all(x >= 0 for x in row) for row in bd.decomposition)
            det = cartan_determinant(bd.cartan)
            assert det == p_part(det, p), (name, p, det)
            if g.order % p != 0:
                assert all(b.k() == 1 and b.l() == 1 and b.defect == 0
                           for b in bd.blocks), name
                reg = bd.regular
                rows = {restriction(r, reg) for r in t.values}
                assert rows == set(bd.ibr), name


def test_ibr_square_nonsingular(corpus_tables):
    from ctlab.modrep import linearly_independent

    for name, g, t in corpus_tables:
        if g.order > 72:
            continue
        for p in (2, 3):
            bd = brauer_data(t, p)
            assert len(bd.ibr) == len(bd.regular), name
            assert linearly_independent(bd.ibr), name


def test_fong_block_d8_p5(d8, d8_table):
    bd = brauer_data(d8_table, 5)
    z = d8.center()
    lams = linear_characters(z)
    fb = fong_block(bd, z, lams[1])
    assert fb.k == 1 and fb.l == 1 and fb.defect == 0


def test_fong_block_requires_central_p_prime(s3, s3_table):
    bd = brauer_data(s3_table, 3)
    a3 = s3.subgroup([__import__("ctlab.perms", fromlist=["parse_cycles"])
                      .parse_cycles("(1 2 3)", 3)])
    with pytest.raises(NotCentralPPrime):
        fong_block(bd, a3, linear_characters(a3)[0])


def test_fong_block_order72(build72):
    g = build72.group
    t = character_table(g)
    bd = brauer_data(t, 3)
    fb = fong_block(bd, build72.z_sub, build72.lam)
    assert (fb.k, fb.l, fb.defect, fb.maximal_defect) == (6, 1, 2, True)
    assert fb.block.defect_group.order == 9
    # IBr(B) via the decomposition matrix agrees with the Clifford route
    assert fb.block.brauer == fb.ibr_indices


def test_nilpotency_refutation_order72(build72):
    g = build72.group
    bd = brauer_data(character_table(g), 3)
    fb = fong_block(bd, build72.z_sub, build72.lam)
    res = nilpotency_refute(fb.block, bd)
    assert res.refuted
    assert "k(B) = 6" in res.reason and "k(D) = 9" in res.reason


def test_nilpotency_defect_zero_not_refuted(s3_table, s3):
    bd = brauer_data(s3_table, 2)
    blk = bd.blocks[1]
    assert blk.defect == 0
    res = nilpotency_refute(blk, bd, defect_group=s3.subgroup([]))
    assert not res.refuted and res.reason == "undetermined"


def test_nilpotency_needs_data(s3_table):
    bd = brauer_data(s3_table, 2)
    blk = bd.blocks[1]
    with pytest.raises(MissingDefectGroup):
        nilpotency_refute(blk, bd)


def test_nilpotency_certificate_route(s3_table):
    bd = brauer_data(s3_table, 2)
    blk = bd.blocks[1]   # l = 1
    cert = NilpotencyCertificate(6, "test quotient")
    res = nilpotency_refute(blk, bd, certificate=cert)
    assert res.refuted and "not a 2-group" in res.reason


def test_lifts_defect_zero(sl25_table):
    bd = brauer_data(sl25_table, 5)
    # the Steinberg-like degree-5 character is alone in its block
    blk = next(b for b in bd.blocks if b.defect == 0)
    phi = blk.brauer[0]
    assert len(lifts_of(bd, phi)) == 1


def test_brauer_kernel(s3_table):
    bd = brauer_data(s3_table, 2)
    # the degree-2 Brauer character is faithful (S3 embeds in GL(2,2))
    i2 = bd.ibr_degrees().index(2)
    assert brauer_kernel_trivial(bd, i2)
    assert brauer_kernel(bd, i2).order == 1
    i1 = bd.ibr_degrees().index(1)
    assert brauer_kernel(bd, i1).order == 6   # trivial Brauer character


def test_brauer_kernel_sees_p_core():
    # for C4 at p = 2 the trivial Brauer character has the whole group as
    # kernel even though only the identity class is 2-regular
    c4 = cyclic(4)
    bd = brauer_data(character_table(c4), 2)
    assert not brauer_kernel_trivial(bd, 0)
    assert brauer_kernel(bd, 0).order == 4


def test_product_brauer_tensor(sl25_table):
    tp, pdata = direct_product_table(sl25_table, character_table(cyclic(3)))
    bd_a = brauer_data(sl25_table, 5)
    bd_b = brauer_data(character_table(cyclic(3)), 5)
    bdp = brauer_data_for_product(tp, bd_a, bd_b, pdata)
    assert sorted(bdp.ibr_degrees()) == sorted(
        d for d in bd_a.ibr_degrees() for _ in range(3))
    assert sum(b.k() for b in bdp.blocks) == len(tp)


def test_tensor_route_matches_deletion_on_small_product(s3_table):
    tc2 = character_table(cyclic(2))
    tp, pdata = direct_product_table(s3_table, tc2)
    bd_a = brauer_data(s3_table, 3)
    bd_b = brauer_data(tc2, 3)
    tensor = brauer_data_for_product(tp, bd_a, bd_b, pdata)
    deletion = brauer_data(tp, 3)
    assert tensor.ibr == deletion.ibr
    assert tensor.decomposition == deletion.decomposition
