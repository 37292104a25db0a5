"""Modular layer: p-regular classes, Brauer characters, blocks, defects.

Brauer characters of p-solvable groups are extracted from the ordinary table
by the restriction/deletion procedure: start with all distinct restrictions
to p-regular classes, then repeatedly remove, largest degree first, any
member that is a non-negative integer combination of the others.  The
fixpoint equals IBr exactly when every Brauer character lifts; otherwise the
size check fails and AmbiguousBasicSet is raised, and the caller may supply
an IBr matrix from an independent source.

Blocks are linkage classes of the central characters omega_chi reduced in a
deterministic F_{p^m}; decomposition matrices are the unique solutions of
the restriction equations in the IBr basis and are verified to be
non-negative and integral.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import prod

from .chartab import CharacterTable
from .cyclo import (Cyclotomic, PrimeFieldCtx, ONE, ZERO, euler_phi,
                    rational, reduce_mod_p)
from .errors import (
    AmbiguousBasicSet,
    MissingDefectGroup,
    NonIntegralDecomposition,
    NoSuchBlock,
    NotCentralPPrime,
)
from .permgroup import ClassData, PermGroup, p_part, p_prime_part
from .perms import pmul


# ---------------------------------------------------------------------------
# p-regular classes and restrictions
# ---------------------------------------------------------------------------

def p_regular_classes(classes: ClassData, p: int) -> list:
    """Indices of classes of p'-element order, in canonical order."""
    return [i for i, o in enumerate(classes.element_orders) if o % p != 0]


def restriction(row, regular) -> tuple:
    return tuple(row[i] for i in regular)


# ---------------------------------------------------------------------------
# rational flattening for exact linear algebra over Q(zeta)
# ---------------------------------------------------------------------------

def _flatten(vectors):
    """Map tuples of cyclotomics to rational coordinate tuples (common field)."""
    big = 1
    for vec in vectors:
        for v in vec:
            big = big * v.n // _gcd(big, v.n)
    while big % 4 == 2:
        big *= 2  # keep a representable conductor: 2m embeds in 4m? no: use m odd
    # conductors are never 2 mod 4 in canonical form, but their lcm can be;
    # double it so every component still embeds.
    width = euler_phi(big)
    out = []
    for vec in vectors:
        coords = []
        for v in vec:
            coords.extend(_coords_at(v, big, width))
        out.append(tuple(coords))
    return out


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


@lru_cache(maxsize=None)
def _embed_rows(n, big):
    from .cyclo import _power_table  # shared cache; reduced rows are exact

    table = _power_table(big)
    k = big // n
    return tuple(table[(i * k) % big] for i in range(euler_phi(n)))


def _coords_at(v: Cyclotomic, big: int, width: int):
    out = [Fraction(0)] * width
    if v.n == 1:
        out[0] = Fraction(v.coeffs[0])
        return out
    rows = _embed_rows(v.n, big)
    for c, row in zip(v.coeffs, rows):
        if c:
            for j in range(width):
                if row[j]:
                    out[j] += Fraction(c) * row[j]
    return out


def _solve_in_basis(basis_vectors, targets):
    """Solve target = sum c_i basis_i exactly; unique solution per target.

    basis_vectors and targets are tuples of cyclotomics of equal length.
    Returns a list of Fraction-coefficient lists.  Raises ValueError when a
    target is not in the span or the basis is dependent.
    """
    flat = _flatten(list(basis_vectors) + list(targets))
    cols = flat[: len(basis_vectors)]
    rhs = flat[len(basis_vectors):]
    m = len(cols[0])
    l = len(cols)
    aug = [[cols[j][i] for j in range(l)] + [r[i] for r in rhs] for i in range(m)]
    pivots = []
    r = 0
    for c in range(l):
        sel = next((i for i in range(r, m) if aug[i][c]), None)
        if sel is None:
            raise ValueError("dependent basis")
        aug[r], aug[sel] = aug[sel], aug[r]
        inv = 1 / aug[r][c]
        aug[r] = [x * inv for x in aug[r]]
        for i in range(m):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[r])]
        pivots.append(r)
        r += 1
    for i in range(r, m):
        if any(aug[i][l:]):
            raise ValueError("target outside the span")
    return [[aug[pr][l + t] for pr in pivots] for t in range(len(targets))]


def linearly_independent(vectors) -> bool:
    try:
        _solve_in_basis(vectors, [])
    except ValueError:
        return False
    return True


# ---------------------------------------------------------------------------
# the Fong-Swan extraction
# ---------------------------------------------------------------------------

def _degree_of(vec) -> int:
    d = vec[0].as_rational()
    assert d.denominator == 1
    return int(d)


class _CoordinateSpace:
    """Rational coordinates for a fixed set of cyclotomic value vectors.

    Flattening to Q-coordinates happens once; all deletion-search arithmetic
    runs on short Fraction tuples relative to an echelon basis of the span.
    """

    def __init__(self, vectors):
        flat = _flatten(vectors)
        self.basis = []      # echelon rows with unit pivots
        self.pivots = []
        self.coords = {}
        for vec, row in zip(vectors, flat):
            self.coords[vec] = self._express(list(row))

    def _express(self, row):
        cs = []
        for b, pc in zip(self.basis, self.pivots):
            f = row[pc]
            cs.append(f)
            if f:
                for j in range(len(row)):
                    row[j] -= f * b[j]
        pc = next((j for j, x in enumerate(row) if x), None)
        if pc is not None:
            lead = row[pc]
            self.basis.append([x / lead for x in row])
            self.pivots.append(pc)
            cs.append(lead)
        width = len(self.basis)
        return tuple(cs) + (Fraction(0),) * (width - len(cs))

    def coordinate(self, vec, width):
        c = self.coords[vec]
        return tuple(c) + (Fraction(0),) * (width - len(c))


def _decomposable(target_vec, cand_vecs, space: _CoordinateSpace):
    """Cyclotomic-level wrapper around the coordinate DFS."""
    cands = sorted(cand_vecs,
                   key=lambda t: (-_degree_of(t), tuple(v.sort_key() for v in t)))
    degs = [_degree_of(t) for t in cands]
    width = len(space.basis)
    tgt = space.coordinate(target_vec, width)
    cs = [space.coordinate(t, width) for t in cands]
    n = len(cs)
    suffix = [([], [])]
    for i in range(n - 1, -1, -1):
        rows = [r[:] for r in suffix[-1][0]]
        pivots = list(suffix[-1][1])
        row = list(cs[i])
        for b, pc in zip(rows, pivots):
            f = row[pc]
            if f:
                for j in range(width):
                    row[j] -= f * b[j]
        pc = next((j for j, x in enumerate(row) if x), None)
        if pc is not None:
            inv = 1 / row[pc]
            rows.append([x * inv for x in row])
            pivots.append(pc)
        suffix.append((rows, pivots))
    suffix.reverse()

    def in_span(i, vec):
        rows, pivots = suffix[i]
        v = list(vec)
        for b, pc in zip(rows, pivots):
            f = v[pc]
            if f:
                for j in range(width):
                    v[j] -= f * b[j]
        return all(x == 0 for x in v)

    memo = {}

    def rec(i, tgt, deg):
        if deg == 0:
            return all(x == 0 for x in tgt)
        if i == n:
            return False
        key = (i, tgt)
        if key in memo:
            return memo[key]
        result = False
        if in_span(i, tgt):
            for c in range(deg // degs[i], -1, -1):
                nxt = tuple(x - c * y for x, y in zip(tgt, cs[i])) if c else tgt
                if rec(i + 1, nxt, deg - c * degs[i]):
                    result = True
                    break
        memo[key] = result
        return result

    return rec(0, tgt, _degree_of(target_vec))


def ibr_fong_swan(table: CharacterTable, p: int):
    """IBr as sorted value tuples on the p-regular classes.

    Runs the restriction/deletion procedure; raises AmbiguousBasicSet when
    the fixpoint does not have exactly one member per p-regular class (the
    p-solvable guarantee fails for some non-p-solvable groups).
    """
    regular = p_regular_classes(table.classes, p)
    if table.group.order % p != 0:
        return [restriction(row, regular) for row in table.values], regular
    candidates = sorted(
        {restriction(row, regular) for row in table.values},
        key=lambda t: (-_degree_of(t), tuple(v.sort_key() for v in t)))
    space = _CoordinateSpace(candidates)
    while True:
        deleted = False
        for s in candidates:
            smaller = [t for t in candidates
                       if t != s and _degree_of(t) < _degree_of(s)]
            if _decomposable(s, smaller, space):
                candidates = [t for t in candidates if t != s]
                deleted = True
                break
        if not deleted:
            break
    if len(candidates) != len(regular) or not linearly_independent(candidates):
        raise AmbiguousBasicSet(
            f"deletion fixpoint has {len(candidates)} members for "
            f"{len(regular)} p-regular classes")
    candidates.sort(key=lambda t: (_degree_of(t), tuple(v.sort_key() for v in t)))
    return candidates, regular


# ---------------------------------------------------------------------------
# blocks
# ---------------------------------------------------------------------------

@dataclass
class Block:
    ordinary: tuple
    brauer: tuple
    defect: int
    defect_group: object = None
    defect_group_provenance: str = ""

    def k(self):
        return len(self.ordinary)

    def l(self):
        return len(self.brauer)


def central_character_residues(table: CharacterTable, p: int, ctx=None):
    """Per row, the tuple of reductions of omega_chi(K) in F_{p^m}."""
    e_prime = p_prime_part(table.exponent, p)
    if ctx is None:
        ctx = PrimeFieldCtx(p, e_prime)
    out = []
    for row in table.values:
        deg = row[0].as_rational()
        resids = []
        for j, size in enumerate(table.classes.sizes):
            omega = row[j] * size / deg
            resids.append(reduce_mod_p(omega, p, ctx))
        out.append(tuple(resids))
    return out, ctx


def block_partition(table: CharacterTable, p: int) -> list:
    """Blocks via central-character linkage; principal first, brauer unfilled."""
    resids, _ = central_character_residues(table, p)
    groups = {}
    for i, r in enumerate(resids):
        groups.setdefault(r, []).append(i)
    blocks = sorted(groups.values(), key=lambda idxs: (0 not in idxs, min(idxs)))
    np_total = p_part(table.group.order, p)
    out = []
    for idxs in blocks:
        d = _block_defect(table, p, idxs, np_total)
        out.append(Block(tuple(idxs), (), d))
    return out


def _block_defect(table, p, idxs, np_total):
    nu_g = _nu(np_total, p)
    min_nu = min(_nu(p_part(table.degrees[i], p), p) for i in idxs)
    return nu_g - min_nu


def _nu(ppow_val, p):
    n = 0
    while ppow_val % p == 0:
        ppow_val //= p
        n += 1
    return n


# ---------------------------------------------------------------------------
# BrauerData: the assembled modular package
# ---------------------------------------------------------------------------

@dataclass
class BrauerData:
    group: PermGroup
    classes: ClassData
    p: int
    regular: list
    ibr: list                      # value tuples on the regular classes, sorted
    table: CharacterTable = None
    decomposition: list = None     # k x l integer matrix
    cartan: list = None            # l x l integer matrix
    blocks: list = None
    provenance: str = "fong-swan"

    def ibr_degrees(self):
        return [_degree_of(v) for v in self.ibr]

    def l_of(self, block: Block):
        return len(block.brauer)


def brauer_data(table: CharacterTable, p: int, supplied_ibr=None,
                provenance=None, with_blocks=True) -> BrauerData:
    """Assemble IBr, decomposition and Cartan matrices, and linked blocks."""
    if supplied_ibr is None:
        ibr, regular = ibr_fong_swan(table, p)
        provenance = provenance or "fong-swan"
    else:
        regular = p_regular_classes(table.classes, p)
        ibr = sorted((tuple(v) for v in supplied_ibr),
                     key=lambda t: (_degree_of(t), tuple(v.sort_key() for v in t)))
        provenance = provenance or "supplied"
    if not with_blocks:
        return BrauerData(table.group, table.classes, p, regular, list(ibr),
                          table, provenance=provenance)
    if table.group.order % p != 0 and supplied_ibr is None:
        # IBr == Irr on all classes: the decomposition matrix is a permutation
        pos = {v: j for j, v in enumerate(ibr)}
        dec = [[0] * len(ibr) for _ in table.values]
        for i, row in enumerate(table.values):
            dec[i][pos[restriction(row, regular)]] = 1
    else:
        dec = decomposition_matrix(table, ibr, regular)
    l = len(ibr)
    cartan = [[sum(dec[i][a] * dec[i][b] for i in range(len(dec)))
               for b in range(l)] for a in range(l)]
    blocks = block_partition(table, p)
    filled = []
    for blk in blocks:
        brauer_idx = sorted({j for i in blk.ordinary for j in range(l)
                             if dec[i][j] != 0})
        filled.append(Block(blk.ordinary, tuple(brauer_idx), blk.defect,
                            blk.defect_group, blk.defect_group_provenance))
    seen = [j for blk in filled for j in blk.brauer]
    assert sorted(seen) == list(range(l)), "every IBr lies in exactly one block"
    return BrauerData(table.group, table.classes, p, regular, list(ibr), table,
                      dec, cartan, filled, provenance)


def brauer_data_without_table(group, classes, p, ibr_rows,
                              provenance="supplied") -> BrauerData:
    regular = p_regular_classes(classes, p)
    rows = sorted((tuple(v) for v in ibr_rows),
                  key=lambda t: (_degree_of(t), tuple(v.sort_key() for v in t)))
    assert all(len(r) == len(regular) for r in rows)
    return BrauerData(group, classes, p, regular, rows, provenance=provenance)


def decomposition_matrix(table: CharacterTable, ibr, regular) -> list:
    """Unique non-negative integer solution of chi|p-reg = sum d_phi phi."""
    targets = [restriction(row, regular) for row in table.values]
    try:
        sols = _solve_in_basis(ibr, targets)
    except ValueError as exc:
        raise NonIntegralDecomposition(str(exc)) from exc
    out = []
    for i, sol in enumerate(sols):
        row = []
        for c in sol:
            if c.denominator != 1 or c < 0:
                raise NonIntegralDecomposition(
                    f"character {i} decomposes with coefficient {c}")
            row.append(int(c))
        out.append(row)
    return out


def cartan_determinant(cartan) -> int:
    """Exact integer determinant (fraction-free Gaussian elimination)."""
    n = len(cartan)
    m = [[Fraction(x) for x in row] for row in cartan]
    det = Fraction(1)
    for c in range(n):
        sel = next((r for r in range(c, n) if m[r][c]), None)
        if sel is None:
            return 0
        if sel != c:
            m[c], m[sel] = m[sel], m[c]
            det = -det
        det *= m[c][c]
        inv = 1 / m[c][c]
        for r in range(c + 1, n):
            if m[r][c]:
                f = m[r][c] * inv
                m[r] = [a - f * b for a, b in zip(m[r], m[c])]
    assert det.denominator == 1
    return int(det)


# ---------------------------------------------------------------------------
# linear characters of small (abelian) subgroups
# ---------------------------------------------------------------------------

class LinearCharacter:
    """A linear character of a subgroup, stored as element -> value."""

    def __init__(self, subgroup: PermGroup, values: dict):
        self.subgroup = subgroup
        self.values = values

    @staticmethod
    def from_table_row(table: CharacterTable, i: int) -> "LinearCharacter":
        assert table.degrees[i] == 1
        vals = {}
        for j, cls in enumerate(table.classes.classes):
            for x in cls:
                vals[x] = table.values[i][j]
        return LinearCharacter(table.group, vals)

    def __call__(self, g):
        return self.values[tuple(g)]

    def is_trivial(self):
        return all(v == ONE for v in self.values.values())


def linear_characters(subgroup: PermGroup) -> list:
    """All linear characters of an abelian subgroup, in canonical table order."""
    from .chartab import character_table

    t = character_table(subgroup)
    assert all(d == 1 for d in t.degrees), "linear_characters needs an abelian group"
    return [LinearCharacter.from_table_row(t, i) for i in range(len(t))]


# ---------------------------------------------------------------------------
# Fong block over a central p'-character; lifts; nilpotency refutation
# ---------------------------------------------------------------------------

def _chars_over_central(table: CharacterTable, z_sub: PermGroup,
                        lam: LinearCharacter) -> list:
    out = []
    z_elems = z_sub.elements()
    for i, row in enumerate(table.values):
        deg = row[0]
        if all(row[table.group.class_of(z)] == deg * lam(z) for z in z_elems):
            out.append(i)
    return out


def ibr_over_central(bd: BrauerData, z_sub: PermGroup, lam: LinearCharacter) -> list:
    """IBr indices whose central character matches lam (central p'-subgroup)."""
    pos = {c: t for t, c in enumerate(bd.regular)}
    out = []
    for i, row in enumerate(bd.ibr):
        deg = row[0]
        ok = True
        for z in z_sub.elements():
            c = bd.classes.index[z]
            if c not in pos:
                ok = False
                break
            if row[pos[c]] != deg * lam(z):
                ok = False
                break
        if ok:
            out.append(i)
    return out


@dataclass
class FongBlockReport:
    block: Block
    k: int
    l: int
    defect: int
    maximal_defect: bool
    ibr_indices: tuple


def fong_block(bd: BrauerData, z_sub: PermGroup, lam: LinearCharacter,
               with_defect_group=True) -> FongBlockReport:
    """The unique block of G whose ordinary characters all lie over lam.

    Requires z_sub central of p'-order (the situation of the block
    applications); verifies IBr(B) = IBr(G | lam) computed independently.
    """
    g = bd.group
    if z_sub.order % bd.p == 0:
        raise NotCentralPPrime(f"|Z| = {z_sub.order} is divisible by p = {bd.p}")
    if not all(pmul(z, s) == pmul(s, z) for z in z_sub.gens for s in g.gens):
        raise NotCentralPPrime("subgroup is not central")
    if bd.table is None or bd.blocks is None:
        raise NoSuchBlock("fong_block needs a full table-backed BrauerData")
    over = set(_chars_over_central(bd.table, z_sub, lam))
    cand = [b for b in bd.blocks if set(b.ordinary) <= over]
    if not cand or set().union(*(set(b.ordinary) for b in cand)) != over:
        raise NoSuchBlock("characters over lambda do not form a union of blocks")
    if len(cand) != 1:
        raise NoSuchBlock(f"{len(cand)} blocks lie over lambda; expected one")
    blk = cand[0]
    ibr_lam = ibr_over_central(bd, z_sub, lam)
    if tuple(ibr_lam) != blk.brauer:
        raise NoSuchBlock("IBr(B) differs from the Clifford constituents over lambda")
    maximal = blk.defect == _nu(p_part(g.order, bd.p), bd.p)
    if maximal and with_defect_group and blk.defect_group is None:
        blk.defect_group = g.sylow_subgroup(bd.p)
        blk.defect_group_provenance = "sylow-for-maximal-defect"
    return FongBlockReport(blk, blk.k(), blk.l(), blk.defect, maximal,
                           tuple(ibr_lam))


def lifts_of(bd: BrauerData, phi_index: int) -> list:
    """Ordinary rows whose p-regular restriction equals the given IBr row."""
    assert bd.table is not None
    target = tuple(bd.ibr[phi_index])
    return [i for i, row in enumerate(bd.table.values)
            if restriction(row, bd.regular) == target]


@dataclass
class NilpotencyCertificate:
    """Construction data showing a quotient acting above a subpair is not a
    p-group; carries the order of that inertial quotient."""

    inertial_quotient_order: int
    description: str = ""


@dataclass
class RefutationResult:
    refuted: bool
    reason: str


def nilpotency_refute(block: Block, bd: BrauerData, defect_group=None,
                      certificate: NilpotencyCertificate = None) -> RefutationResult:
    """Refute nilpotency or report 'undetermined' (never claims nilpotency)."""
    l = block.l()
    if l != 1:
        return RefutationResult(True, f"l(B) = {l} != 1")
    if certificate is not None:
        q = certificate.inertial_quotient_order
        if q > 1 and p_part(q, bd.p) != q:
            return RefutationResult(
                True,
                f"inertial quotient of order {q} above a subpair is not a "
                f"{bd.p}-group ({certificate.description})")
    dg = defect_group if defect_group is not None else block.defect_group
    if dg is None:
        if certificate is not None:
            return RefutationResult(False, "undetermined")
        raise MissingDefectGroup(
            "need a defect group or a construction certificate")
    k_d = len(dg.conjugacy_classes())
    if k_d != block.k():
        return RefutationResult(
            True, f"k(B) = {block.k()} != k(D) = {k_d} violates the nilpotent "
                  f"character count")
    return RefutationResult(False, "undetermined")


# ---------------------------------------------------------------------------
# Brauer characters of direct products (tensor construction)
# ---------------------------------------------------------------------------

def brauer_data_for_product(product_table: CharacterTable, bd_a: BrauerData,
                            bd_b: BrauerData, product_data,
                            with_blocks=True) -> BrauerData:
    """IBr(A x B) as tensor products of the factor IBr, then standard assembly."""
    grp, _emb_a, _emb_b, split = product_data
    assert product_table.group is grp and bd_a.p == bd_b.p
    p = bd_a.p
    regular = p_regular_classes(product_table.classes, p)
    pos_a = {c: t for t, c in enumerate(bd_a.regular)}
    pos_b = {c: t for t, c in enumerate(bd_b.regular)}
    reps = [split(product_table.classes.representatives[i]) for i in regular]
    located = [(pos_a[bd_a.group.class_of(x)], pos_b[bd_b.group.class_of(y)])
               for x, y in reps]
    rows = []
    for ra in bd_a.ibr:
        for rb in bd_b.ibr:
            rows.append(tuple(ra[ia] * rb[ib] for ia, ib in located))
    return brauer_data(product_table, p, supplied_ibr=rows,
                       provenance="tensor-of-factors", with_blocks=with_blocks)


def brauer_trivial_regular_classes(bd: BrauerData, i: int) -> list:
    """p-regular classes where the i-th Brauer character equals its degree.

    These classes act trivially in the underlying representation; the full
    kernel is the preimage of O_p of the quotient by the subgroup they
    generate."""
    row = bd.ibr[i]
    deg = row[0]
    return [c for t, c in enumerate(bd.regular) if row[t] == deg]


def brauer_kernel(bd: BrauerData, i: int):
    """Kernel of the representation behind the i-th Brauer character."""
    g = bd.group
    k0 = brauer_trivial_regular_classes(bd, i)
    members = [x for c in k0 for x in bd.classes.classes[c]]
    m_sub = g.subgroup_from_elements(members)
    qr = g.quotient(m_sub)
    op = qr.group.p_core(bd.p)
    ker_order = m_sub.order * op.order
    if ker_order == 1:
        return g.subgroup([])
    lifted = [x for x in g.elements()
              if qr.image_of(x) in op]
    return g.subgroup_from_elements(lifted)


def brauer_kernel_trivial(bd: BrauerData, i: int) -> bool:
    if brauer_trivial_regular_classes(bd, i) != [0]:
        return False
    return bd.group.p_core(bd.p).order == 1


def brauer_induce(sub_values, sub_cd: ClassData, sub_regular, big_cd: ClassData,
                  fusion, big_regular) -> tuple:
    """Induce a Brauer character (values on sub p-regular classes) to G."""
    pos = {c: t for t, c in enumerate(sub_regular)}
    out = []
    for g_idx in big_regular:
        total = ZERO
        for h_pos, c_idx in enumerate(sub_regular):
            if fusion[c_idx] == g_idx:
                total = total + sub_values[h_pos] / sub_cd.centralizer_orders[c_idx]
        out.append(rational(big_cd.centralizer_orders[g_idx]) * total)
    return tuple(out)
