"""Named example groups at fixed orders, constructed structurally.

No group catalogue is consulted: the order-54 acting group is found by
searching the involutory automorphisms of the exponent-3 extraspecial group
of order 27 that centralize its center and selecting those whose extension
is of 2-central type; the bigger groups are the block-builder outputs over
explicit matrix actions.  Everything is cached per process, deterministic,
and re-verified downstream by the tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .builders import (RegularActionBuild, VectorActionBuild,
                       builder_nonsolvable, builder_plength)
from .centraltype import is_p_central_type
from .chartab import character_table, direct_product_table
from .cyclo import Cyclotomic, PrimeFieldCtx, zeta
from .errors import NotAHomomorphism
from .forge import cyclic, dihedral, extraspecial, psl2, semidirect, sl2
from .homs import GroupHom
from .modrep import (brauer_data, brauer_data_for_product,
                     brauer_data_without_table, p_regular_classes)
from .permgroup import PermGroup
from .perms import commutator, conj, pinv


@dataclass
class Order54Report:
    group: PermGroup
    candidates_passing: int
    automorphism: GroupHom


@lru_cache(maxsize=None)
def order54_group() -> Order54Report:
    """3^(1+2) extended by an involution centralizing the center.

    Searches the order-2 automorphisms fixing the center pointwise; every
    candidate whose extension has 2-central type is counted, and the first
    (in the canonical generator-pair order) is returned.
    """
    n27 = extraspecial(3, "+")
    z_elems = set(n27.center().elements())
    x_gen, y_gen = n27.gens
    zc = commutator(x_gen, y_gen)
    noncentral = [e for e in n27.elements() if e not in z_elems]
    passing = []
    first = None
    for a in noncentral:
        ai = pinv(a)
        for b in noncentral:
            if commutator(a, b) != zc:
                continue
            try:
                alpha = GroupHom(n27, n27, [a, b])
            except NotAHomomorphism:
                continue
            if not alpha.is_automorphism():
                continue
            if alpha.image(a) != x_gen or alpha.image(b) != y_gen:
                continue  # not an involution
            if (a, b) == (x_gen, y_gen):
                continue  # the identity map
            sd = semidirect(n27, cyclic(2), [alpha])
            h = sd.group
            bd = brauer_data(character_table(h), 2, with_blocks=False)
            if is_p_central_type(bd).is_p_central_type:
                passing.append(alpha)
                if first is None:
                    first = (h, alpha)
    assert first is not None, "no admissible involution found"
    return Order54Report(first[0], len(passing), first[1])


@lru_cache(maxsize=None)
def order72_build() -> VectorActionBuild:
    """C_3^2 : D_8 with the dihedral group acting through its four-group."""
    d8 = dihedral(8)
    mats = [[[2, 0], [0, 2]], [[1, 0], [0, 2]]]  # rotation -> -1, reflection
    return builder_plength(d8, 3, dim=2, mats=mats)


@lru_cache(maxsize=None)
def order864_build() -> VectorActionBuild:
    """The order-54 group acting on C_2^4 through its order-18 quotient."""
    h54 = order54_group().group
    x_mat = [[0, 1], [1, 1]]       # order 3 in GL(2, 2)
    t_mat = [[0, 1], [1, 0]]       # inverts x_mat by conjugation
    ident = [[1, 0], [0, 1]]
    zero = [[0, 0], [0, 0]]

    def block(m00, m11):
        return [m00[0] + zero[0], m00[1] + zero[1],
                zero[0] + m11[0], zero[1] + m11[1]]

    mats = [block(x_mat, ident), block(ident, x_mat), block(t_mat, t_mat)]
    return builder_plength(h54, 2, dim=4, mats=mats)


@lru_cache(maxsize=None)
def order720_build() -> RegularActionBuild:
    """(SL(2,5) x C_3) : C_2 with the diagonal action swapping the two
    Brauer characters of the faithful defect-1 block at p = 3."""
    h = sl2(5)
    w = _glperm(5, [[0, 1], [2, 0]])  # determinant -2: a non-square mod 5
    alpha = GroupHom(h, h, [conj(g, w) for g in h.gens])
    q3 = cyclic(3)
    alpha_q = GroupHom(q3, q3, [pinv(q3.gens[0])])
    bd = brauer_data(character_table(h), 3)
    block_index = next(i for i, blk in enumerate(bd.blocks)
                       if blk.l() == 2 and 0 not in blk.ordinary)
    return builder_nonsolvable(h, 3, block_index, alpha, 2, q3, alpha_q)


@lru_cache(maxsize=None)
def order3960_build() -> RegularActionBuild:
    """(PSL(2,11) x C_3) : C_2, the simple-group variant of the order-720
    construction."""
    h = psl2(11)
    w = _mobius_perm(11, [[0, 1], [3, 0]])  # det -3 non-square; w^2 scalar
    alpha = GroupHom(h, h, [conj(g, w) for g in h.gens])
    q3 = cyclic(3)
    alpha_q = GroupHom(q3, q3, [pinv(q3.gens[0])])
    bd = brauer_data(character_table(h), 3)
    block_index = next(i for i, blk in enumerate(bd.blocks)
                       if blk.l() == 2 and 0 not in blk.ordinary)
    return builder_nonsolvable(h, 3, block_index, alpha, 2, q3, alpha_q)


def _glperm(q, mat):
    """A GL(2, q) element as a permutation of the nonzero vectors."""
    vecs = [(a, b) for a in range(q) for b in range(q) if (a, b) != (0, 0)]
    idx = {v: i for i, v in enumerate(vecs)}
    return tuple(idx[((mat[0][0] * a + mat[0][1] * b) % q,
                      (mat[1][0] * a + mat[1][1] * b) % q)] for (a, b) in vecs)


def _mobius_perm(q, mat):
    """A PGL(2, q) element as a permutation of the projective line."""
    pts = list(range(q)) + ["inf"]
    idx = {v: i for i, v in enumerate(pts)}
    a, b = mat[0]
    c, d = mat[1]
    images = []
    for v in pts:
        if v == "inf":
            w = "inf" if c % q == 0 else a * pow(c, -1, q) % q
        else:
            den = (c * v + d) % q
            w = "inf" if den == 0 else (a * v + b) * pow(den, -1, q) % q
        images.append(idx[w])
    return tuple(images)


# ---------------------------------------------------------------------------
# the two counterexamples to the fully-ramified converse
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def sl25_squared_data():
    """SL(2,5) x SL(2,5) at p = 5 via the product-table shortcut."""
    s = sl2(5)
    t = character_table(s)
    tp, pdata = direct_product_table(t, t)
    bd_s = brauer_data(t, 5)
    bdp = brauer_data_for_product(tp, bd_s, bd_s, pdata, with_blocks=False)
    return tp, bdp


@lru_cache(maxsize=None)
def sl2_char_p_brauer(q: int):
    """IBr of SL(2, q) in its defining characteristic, from the symmetric
    powers of the natural module, without an ordinary table.

    The Brauer character of the m-th symmetric power at a q-regular element
    with eigenvalue of exponent j (relative to a fixed primitive root) is
    the geometric sum of zeta^(j(m - 2i)); this is standard defining-
    characteristic theory, independent of the table engine, and is verified
    against the restriction route for small q by the tests.
    """
    from math import lcm

    g = sl2(q)
    cd = g.conjugacy_classes()
    regular = p_regular_classes(cd, q)
    assert len(regular) == q
    exp = lcm(1, *cd.element_orders)
    e_prime = exp
    while e_prime % q == 0:
        e_prime //= q
    ctx = PrimeFieldCtx(q, e_prime)
    vecs = [(a, b) for a in range(q) for b in range(q) if (a, b) != (0, 0)]
    e1 = vecs.index((1, 0))
    e2 = vecs.index((0, 1))

    def matrix_of(perm):
        col1 = vecs[perm[e1]]
        col2 = vecs[perm[e2]]
        return [[col1[0], col2[0]], [col1[1], col2[1]]]

    exponents = []
    for c in regular:
        m = matrix_of(cd.representatives[c])
        tr = (m[0][0] + m[1][1]) % q
        trace_elem = ctx.scalar(tr)
        j = next(jj for jj in range(e_prime)
                 if ctx.add(ctx.omega_pows[jj],
                            ctx.omega_pows[(-jj) % e_prime]) == trace_elem)
        exponents.append(j)
    rows = []
    for m in range(q):
        row = []
        for j in exponents:
            expansion = {}
            for i in range(m + 1):
                e = (j * (m - 2 * i)) % e_prime
                expansion[e] = expansion.get(e, 0) + 1
            row.append(Cyclotomic.from_expansion(e_prime, expansion))
        rows.append(tuple(row))
    return brauer_data_without_table(g, cd, q, rows,
                                     provenance="symmetric-powers")


@lru_cache(maxsize=None)
def sl217_brauer_data():
    return sl2_char_p_brauer(17)
