"""Ordinary character tables and class-function calculus.

The table engine is Dixon-Schneider: simultaneous eigenspace splitting of
class-multiplication matrices over a prime field F_ell with ell = 1 mod
exp(G), degree recovery from the second orthogonality relation, then exact
recovery of every value as an element of Q(zeta_ord(g)) by the inverse DFT
over the power map.  Rows are sorted with the trivial character first and
then by (degree, lexicographic value vector), so tables are reproducible
bit for bit regardless of the generating set.
"""

from __future__ import annotations

import hashlib
import json
from fractions import Fraction
from math import isqrt, lcm

from .cyclo import Cyclotomic, DixonField, ONE, ZERO, cyclo_sum, dixon_lift, rational, zeta
from .errors import BudgetExceeded, DEFAULT_BUDGET, NotASubgroup, NotNormal
from .permgroup import ClassData, PermGroup, direct_product
from .perms import pinv, pmul


class CharacterTable:
    """Classes, power maps, and the full matrix of irreducible values."""

    def __init__(self, group: PermGroup, classes: ClassData, values):
        self.group = group
        self.classes = classes
        self.values = tuple(tuple(row) for row in values)
        self.degrees = tuple(int(row[0].as_rational()) for row in self.values)
        self.exponent = lcm(1, *classes.element_orders)
        self.power_maps = {
            p: tuple(classes.power_class(i, p) for i in range(len(classes)))
            for p in _prime_divisors(self.exponent)
        }

    def __len__(self):
        return len(self.values)

    def row(self, i):
        return self.values[i]

    def trivial_index(self) -> int:
        return 0

    def value(self, i, j) -> Cyclotomic:
        return self.values[i][j]

    def to_json(self) -> dict:
        return {
            "order": self.group.order,
            "degree": self.group.degree,
            "classes": self.classes.describe(),
            "power_maps": {str(p): list(m) for p, m in sorted(self.power_maps.items())},
            "characters": [[v.serialize() for v in row] for row in self.values],
        }

    def digest(self) -> str:
        blob = json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()


# ---------------------------------------------------------------------------
# modular linear algebra helpers
# ---------------------------------------------------------------------------

def _echelonize(rows, ell):
    """Row-reduce vectors over F_ell; returns (echelon rows, pivot columns)."""
    rows = [list(r) for r in rows]
    out = []
    pivots = []
    for row in rows:
        for prow, pc in zip(out, pivots):
            f = row[pc]
            if f:
                for c in range(len(row)):
                    row[c] = (row[c] - f * prow[c]) % ell
        pc = next((c for c, x in enumerate(row) if x), None)
        if pc is None:
            continue
        inv = pow(row[pc], ell - 2, ell)
        row = [x * inv % ell for x in row]
        for prow in out:
            f = prow[pc]
            if f:
                for c in range(len(row)):
                    prow[c] = (prow[c] - f * row[c]) % ell
        out.append(row)
        pivots.append(pc)
    order = sorted(range(len(out)), key=lambda r: pivots[r])
    return [out[r] for r in order], [pivots[r] for r in order]


def _nullspace(mat, ell):
    """Basis of the right nullspace of mat over F_ell (echelonized)."""
    n = len(mat)
    rows, pivots = _echelonize(mat, ell)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        vec = [0] * n
        vec[fc] = 1
        for prow, pc in zip(rows, pivots):
            vec[pc] = (-prow[fc]) % ell
        basis.append(vec)
    return basis


def _charpoly(mat, ell):
    """Characteristic polynomial over F_ell (ascending coefficients)."""
    n = len(mat)
    if n == 0:
        return [1]
    h = [[x % ell for x in row] for row in mat]
    for j in range(n - 2):
        piv = next((r for r in range(j + 1, n) if h[r][j]), None)
        if piv is None:
            continue
        if piv != j + 1:
            h[j + 1], h[piv] = h[piv], h[j + 1]
            for r in range(n):
                h[r][j + 1], h[r][piv] = h[r][piv], h[r][j + 1]
        inv = pow(h[j + 1][j], ell - 2, ell)
        for r in range(j + 2, n):
            f = h[r][j] * inv % ell
            if f:
                hr, hj = h[r], h[j + 1]
                for c in range(n):
                    hr[c] = (hr[c] - f * hj[c]) % ell
                for r2 in range(n):
                    h[r2][j + 1] = (h[r2][j + 1] + f * h[r2][r]) % ell
    polys = [[1]]
    for m in range(1, n + 1):
        prev = polys[m - 1]
        pm = [0] + prev[:]
        a = h[m - 1][m - 1]
        for i in range(len(prev)):
            pm[i] = (pm[i] - a * prev[i]) % ell
        beta = 1
        for k in range(m - 1, 0, -1):
            beta = beta * h[k][k - 1] % ell
            if beta == 0:
                break
            coef = h[k - 1][m - 1] * beta % ell
            if coef:
                pk = polys[k - 1]
                for i in range(len(pk)):
                    pm[i] = (pm[i] - coef * pk[i]) % ell
        polys.append(pm)
    return polys[n]


def _poly_roots(poly, ell):
    roots = []
    for t in range(ell):
        acc = 0
        for c in reversed(poly):
            acc = (acc * t + c) % ell
        if acc == 0:
            roots.append(t)
    return roots


# ---------------------------------------------------------------------------
# Dixon-Schneider
# ---------------------------------------------------------------------------

def character_table(group: PermGroup, budget=DEFAULT_BUDGET) -> CharacterTable:
    """Irreducible ordinary characters via eigenspace splitting mod ell."""
    if group.order > budget.max_order:
        raise BudgetExceeded(
            f"order {group.order} exceeds table budget {budget.max_order}")
    cd = group.conjugacy_classes()
    k = len(cd)
    if k > budget.max_classes:
        raise BudgetExceeded(f"{k} classes exceed budget {budget.max_classes}")
    if k == 1:
        return CharacterTable(group, cd, [[ONE]])
    exponent = lcm(1, *cd.element_orders)
    lower = max(2 * isqrt(group.order) + 1, max(cd.sizes))
    field = DixonField(exponent, lower)
    ell = field.ell

    matrices = {}

    def class_matrix(i):
        # M[j][m] = #{(x, y) in K_i x K_j : x y = rep_m}
        if i not in matrices:
            mat = [[0] * k for _ in range(k)]
            inv_elts = [pinv(x) for x in cd.classes[i]]
            for m, rep in enumerate(cd.representatives):
                for xi in inv_elts:
                    j = cd.index[pmul(xi, rep)]
                    mat[j][m] += 1
            matrices[i] = mat
        return matrices[i]

    spaces = [_echelonize([[1 if c == r else 0 for c in range(k)]
                           for r in range(k)], ell)]
    for i in range(1, k):
        if all(len(rows) == 1 for rows, _ in spaces):
            break
        mat = class_matrix(i)
        new_spaces = []
        for rows, pivots in spaces:
            d = len(rows)
            if d == 1:
                new_spaces.append((rows, pivots))
                continue
            images = []
            for r in rows:
                w = [sum(mat[j][m] * r[m] for m in range(k) if r[m]) % ell
                     for j in range(k)]
                images.append(w)
            # restricted matrix R[r][s]: image of basis r in basis coordinates
            restricted = [[images[r][pc] for pc in pivots] for r in range(d)]
            # confirm invariance
            for r in range(d):
                recon = [0] * k
                for s, c in enumerate(restricted[r]):
                    if c:
                        for m in range(k):
                            recon[m] = (recon[m] + c * rows[s][m]) % ell
                assert recon == [x % ell for x in images[r]], "space not invariant"
            transposed = [[restricted[r][s] for r in range(d)] for s in range(d)]
            for lam in sorted(set(_poly_roots(_charpoly(restricted, ell), ell))):
                shifted = [row[:] for row in transposed]
                for x in range(d):
                    shifted[x][x] = (shifted[x][x] - lam) % ell
                null = _nullspace(shifted, ell)
                lifted = []
                for t in null:
                    vec = [0] * k
                    for r, c in enumerate(t):
                        if c:
                            for m in range(k):
                                vec[m] = (vec[m] + c * rows[r][m]) % ell
                    lifted.append(vec)
                new_spaces.append(_echelonize(lifted, ell))
        spaces = new_spaces
    assert all(len(rows) == 1 for rows, _ in spaces), "splitting incomplete"

    inverse_of = [cd.inverse_class(i) for i in range(k)]
    inv_sizes = [pow(s, ell - 2, ell) for s in cd.sizes]
    rows_out = []
    for rows, _ in spaces:
        v = rows[0]
        v0inv = pow(v[0], ell - 2, ell)
        omega = [x * v0inv % ell for x in v]
        s = sum(omega[m] * omega[inverse_of[m]] % ell * inv_sizes[m]
                for m in range(k)) % ell
        target = group.order % ell * pow(s, ell - 2, ell) % ell
        degree = next(d for d in range(1, isqrt(group.order) + 1)
                      if d * d % ell == target)
        residues = [degree * omega[m] % ell * inv_sizes[m] % ell for m in range(k)]
        values = []
        for m in range(k):
            n_m = cd.element_orders[m]
            rep = cd.representatives[m]
            power_residues = []
            y = group.identity
            for _ in range(n_m):
                power_residues.append(residues[cd.index[y]])
                y = pmul(y, rep)
            # power_residues[t] = chi(rep^t); rotate so index matches power
            values.append(dixon_lift(power_residues, n_m, field, degree))
        rows_out.append(values)
    return CharacterTable(group, cd, _sorted_rows(rows_out))


def _sorted_rows(rows):
    k = len(rows[0]) if rows else 0
    trivial = [ONE] * k

    def is_trivial(row):
        return all(v == ONE for v in row)

    rest = [row for row in rows if not is_trivial(row)]
    assert len(rest) == len(rows) - 1, "exactly one trivial character expected"
    rest.sort(key=lambda row: (row[0].sort_key(), tuple(v.sort_key() for v in row)))
    return [list(trivial)] + rest


def _prime_divisors(n):
    from .cyclo import prime_factors

    return prime_factors(n)


def direct_product_table(ta: CharacterTable, tb: CharacterTable):
    """Table of A x B from factor tables; no eigensplitting involved.

    Returns (table, product_group_data) where the second item carries the
    direct-product embeddings for later fusion work.
    """
    grp, emb_a, emb_b, split = direct_product(ta.group, tb.group)
    classes = []
    for ca in ta.classes.classes:
        for cb in tb.classes.classes:
            cls = sorted(_merge(x, y, ta.group.degree) for x in ca for y in cb)
            classes.append(cls)
    ident = grp.identity
    from .perms import order as perm_order

    classes.sort(key=lambda c: (c[0] != ident, perm_order(c[0]), len(c), c[0]))
    cd = ClassData(grp, classes)
    grp._classes = cd
    reps_split = [split(r) for r in cd.representatives]
    rows = []
    for ra in ta.values:
        for rb in tb.values:
            row = []
            for x, y in reps_split:
                row.append(ra[ta.group.class_of(x)] * rb[tb.group.class_of(y)])
            rows.append(row)
    table = CharacterTable(grp, cd, _sorted_rows(rows))
    return table, (grp, emb_a, emb_b, split)


def _merge(x, y, da):
    return tuple(x) + tuple(p + da for p in y)


# ---------------------------------------------------------------------------
# class functions, fusion, induction, restriction
# ---------------------------------------------------------------------------

class ClassFunction:
    """A class-function value vector tied to a group's class data."""

    __slots__ = ("classes", "values")

    def __init__(self, classes: ClassData, values):
        values = tuple(v if isinstance(v, Cyclotomic) else rational(v)
                       for v in values)
        assert len(values) == len(classes)
        self.classes = classes
        self.values = values

    def __eq__(self, other):
        return (isinstance(other, ClassFunction)
                and self.classes is other.classes and self.values == other.values)

    def __add__(self, other):
        assert self.classes is other.classes
        return ClassFunction(self.classes,
                             [a + b for a, b in zip(self.values, other.values)])

    def __sub__(self, other):
        assert self.classes is other.classes
        return ClassFunction(self.classes,
                             [a - b for a, b in zip(self.values, other.values)])

    def scale(self, c):
        return ClassFunction(self.classes, [rational(c) * v for v in self.values])

    def degree(self):
        return self.values[0]


def row_function(table: CharacterTable, i: int) -> ClassFunction:
    return ClassFunction(table.classes, table.values[i])


def class_fusion(sub: PermGroup, big: PermGroup) -> list:
    """For each class of sub, the index of the big-group class containing it."""
    if sub.degree != big.degree or not all(g in big for g in sub.gens):
        raise NotASubgroup("fusion requires a subgroup on the same domain")
    cd = sub.conjugacy_classes()
    return [big.class_of(r) for r in cd.representatives]


def fusion_through_hom(phi, sub_classes: ClassData, big: PermGroup) -> list:
    """Fusion along an injective homomorphism sub -> big."""
    return [big.class_of(phi.image(r)) for r in sub_classes.representatives]


def induce(theta: ClassFunction, big_cd: ClassData, fusion) -> ClassFunction:
    """Induced class function via the standard class formula."""
    sub_cd = theta.classes
    out = []
    for g_idx in range(len(big_cd)):
        total = ZERO
        for h_idx, f in enumerate(fusion):
            if f == g_idx:
                total = total + theta.values[h_idx] / sub_cd.centralizer_orders[h_idx]
        out.append(rational(big_cd.centralizer_orders[g_idx]) * total)
    return ClassFunction(big_cd, out)


def restrict(chi: ClassFunction, sub_cd: ClassData, fusion) -> ClassFunction:
    return ClassFunction(sub_cd, [chi.values[f] for f in fusion])


def inner_product(a: ClassFunction, b: ClassFunction) -> Fraction:
    cd = a.classes
    assert cd is b.classes
    total = cyclo_sum(rational(s) * x * y.conjugate()
                      for s, x, y in zip(cd.sizes, a.values, b.values))
    val = total / cd.group.order
    return val.as_rational()


def decompose(table: CharacterTable, f: ClassFunction) -> list:
    """Multiplicities <f, chi_i> for every row of the table."""
    return [inner_product(f, row_function(table, i)) for i in range(len(table))]


def irr_over(table: CharacterTable, n_sub: PermGroup, n_table: CharacterTable,
             lam_index: int) -> list:
    """Indices of table rows lying over the n_table row lam (n_sub normal)."""
    if not table.group.is_normal(n_sub):
        raise NotNormal("irr_over requires a normal subgroup")
    fus = class_fusion(n_sub, table.group)
    lam = row_function(n_table, lam_index)
    out = []
    for i in range(len(table)):
        restr = restrict(row_function(table, i), n_table.classes, fus)
        if inner_product(restr, lam) != 0:
            out.append(i)
    return out


def character_kernel(table: CharacterTable, i: int) -> PermGroup:
    """Union of the classes where the value equals the degree, as a subgroup."""
    deg = table.values[i][0]
    members = []
    for j, cls in enumerate(table.classes.classes):
        if table.values[i][j] == deg:
            members.extend(cls)
    return table.group.subgroup_from_elements(members)


def character_center(table: CharacterTable, i: int) -> PermGroup:
    """Classes where |value| equals the degree, as a subgroup."""
    deg2 = table.values[i][0] * table.values[i][0]
    members = []
    for j, cls in enumerate(table.classes.classes):
        if table.values[i][j].abs_square() == deg2:
            members.extend(cls)
    return table.group.subgroup_from_elements(members)


def character_predicates(table: CharacterTable, i: int) -> dict:
    ker = character_kernel(table, i)
    return {
        "kernel_order": ker.order,
        "is_faithful": ker.order == 1,
        "center_order": character_center(table, i).order,
    }


def verify_orthogonality(table: CharacterTable) -> bool:
    """Exact row and column orthogonality; meant for tests and certificates."""
    cd = table.classes
    k = len(cd)
    for i in range(k):
        for j in range(i, k):
            ip = inner_product(row_function(table, i), row_function(table, j))
            if ip != (1 if i == j else 0):
                return False
    for a in range(k):
        for b in range(a, k):
            s = cyclo_sum(table.values[r][a] * table.values[r][b].conjugate()
                          for r in range(k))
            want = rational(cd.centralizer_orders[a]) if a == b else ZERO
            if s != want:
                return False
    return True
