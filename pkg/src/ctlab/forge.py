"""Group constructions: standard families, semidirect and wreath products,
central product powers, cyclic extensions, and the universal embedding.

Semidirect products N : H are realized faithfully on the disjoint union of
the element set of N (right translations, H acting by the given
automorphisms) and the natural domain of H; the construction is validated by
an exact order count, so an action that fails to extend to a homomorphism is
rejected rather than silently generating a larger group.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    ActionNotWellDefined,
    InvalidWitness,
    NotNormal,
    UnsupportedFamily,
)
from .homs import GroupHom
from .permgroup import PermGroup, QuotientResult, direct_power
from .perms import identity, pinv, pmul, ppow


# ---------------------------------------------------------------------------
# standard families
# ---------------------------------------------------------------------------

def trivial_group() -> PermGroup:
    return PermGroup(1, [], known_order=1)


def cyclic(n: int) -> PermGroup:
    if n < 1:
        raise UnsupportedFamily("cyclic groups need n >= 1")
    if n == 1:
        return trivial_group()
    return PermGroup(n, [tuple((i + 1) % n for i in range(n))], known_order=n)


def elem_abelian(p: int, k: int) -> PermGroup:
    if k < 1:
        raise UnsupportedFamily("exponent-p groups need k >= 1")
    gens = []
    for i in range(k):
        img = list(range(p * k))
        for x in range(p):
            img[i * p + x] = i * p + (x + 1) % p
        gens.append(tuple(img))
    return PermGroup(p * k, gens, known_order=p ** k)


def dihedral(order: int) -> PermGroup:
    if order < 4 or order % 2:
        raise UnsupportedFamily("dihedral groups need even order >= 4")
    m = order // 2
    if m == 2:
        return elem_abelian(2, 2)
    rot = tuple((i + 1) % m for i in range(m))
    ref = tuple((-i) % m for i in range(m))
    return PermGroup(m, [rot, ref], known_order=order)


def quaternion(order: int) -> PermGroup:
    if order < 8 or order % 4:
        raise UnsupportedFamily("generalized quaternion groups need order 4m >= 8")
    m = order // 2
    c = cyclic(m)
    invert = GroupHom(c, c, [pinv(c.gens[0])])
    x = ppow(c.gens[0], m // 2)
    ext = cyclic_extension_build(c, invert, 2, x)
    return ext.group


def extraspecial(p: int, kind: str) -> PermGroup:
    """Extraspecial group of order p^3; kind '+' is exponent p for odd p
    (dihedral for p = 2), '-' is exponent p^2 (quaternion for p = 2)."""
    if kind not in ("+", "-"):
        raise UnsupportedFamily("extraspecial kind must be '+' or '-'")
    if p == 2:
        return dihedral(8) if kind == "+" else quaternion(8)
    if kind == "+":
        pts = [(a, b, c) for a in range(p) for b in range(p) for c in range(p)]
        idx = {v: i for i, v in enumerate(pts)}
        x = tuple(idx[((a + 1) % p, b, c)] for (a, b, c) in pts)
        y = tuple(idx[(a, (b + 1) % p, (c + a) % p)] for (a, b, c) in pts)
        return PermGroup(p ** 3, [x, y], known_order=p ** 3)
    base = cyclic(p * p)
    target = ppow(base.gens[0], 1 + p)
    auto = GroupHom(base, base, [target])
    return semidirect(base, cyclic(p), [auto]).group


def mat_group(q: int, mats, include_zero=False) -> PermGroup:
    """Matrix group over F_q acting on vectors (nonzero by default)."""
    if not _is_prime(q):
        raise UnsupportedFamily("matrix groups are supported over prime fields")
    n = len(mats[0])
    vecs = [v for v in _vectors(q, n) if include_zero or any(v)]
    idx = {v: i for i, v in enumerate(vecs)}
    gens = [tuple(idx[_matvec(m, v, q)] for v in vecs) for m in mats]
    return PermGroup(len(vecs), gens)


def sl2(q: int) -> PermGroup:
    g = mat_group(q, [[[1, 1], [0, 1]], [[0, 1], [q - 1, 0]]])
    assert g.order == q * (q * q - 1)
    return g


def psl2(q: int) -> PermGroup:
    """PSL(2, q) on the q + 1 points of the projective line."""
    if not _is_prime(q) or q < 5:
        raise UnsupportedFamily("psl2 expects an odd prime >= 5")
    pts = list(range(q)) + ["inf"]
    idx = {v: i for i, v in enumerate(pts)}

    def act(mat):
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

    g = PermGroup(q + 1, [act([[1, 1], [0, 1]]), act([[0, 1], [q - 1, 0]])])
    assert g.order == q * (q * q - 1) // 2
    return g


def matrix_to_vector_perm(mats, p: int, include_zero=True):
    """Permutations of F_p^n induced by matrices (shared point order)."""
    n = len(mats[0])
    vecs = [v for v in _vectors(p, n) if include_zero or any(v)]
    idx = {v: i for i, v in enumerate(vecs)}
    return [tuple(idx[_matvec(m, v, p)] for v in vecs) for m in mats], vecs, idx


def _vectors(q, n):
    out = [()]
    for _ in range(n):
        out = [v + (x,) for v in out for x in range(q)]
    return out


def _matvec(m, v, q):
    return tuple(sum(m[i][j] * v[j] for j in range(len(v))) % q for i in range(len(v)))


def _is_prime(n):
    from .cyclo import is_prime

    return is_prime(n)


# ---------------------------------------------------------------------------
# semidirect products
# ---------------------------------------------------------------------------

@dataclass
class SemidirectResult:
    group: PermGroup
    normal_part: PermGroup          # the N-translation subgroup of group
    n_elements: list                # sorted elements of N (the point labels)
    n_index: dict
    n_source: PermGroup
    h_source: PermGroup
    h_gen_perms: list
    h_hom: GroupHom                 # H -> group

    def embed_n(self, n_elem):
        """Right-translation permutation of an arbitrary element of N."""
        deg_h = self.group.degree - len(self.n_elements)
        images = [self.n_index[pmul(m, tuple(n_elem))]
                  for m in self.n_elements]
        images += [len(self.n_elements) + x for x in range(deg_h)]
        return tuple(images)

    def n_hom(self) -> GroupHom:
        return GroupHom(self.n_source, self.group,
                        [self.embed_n(g) for g in self.n_source.gens])

    def point_label(self, point: int):
        return self.n_elements[point]


def semidirect(n_group: PermGroup, h_group: PermGroup, autos,
               check_autos=True) -> SemidirectResult:
    """N : H for automorphisms of N given per H-generator.

    Raises ActionNotWellDefined when the generator assignment does not
    extend to a homomorphism H -> Aut(N) (detected by an exact order count).
    """
    if len(autos) != len(h_group.gens):
        raise ActionNotWellDefined("one automorphism per H generator required")
    if check_autos:
        for a in autos:
            if not (a.source is n_group and a.target is n_group
                    and a.is_automorphism()):
                raise ActionNotWellDefined("action images must be automorphisms of N")
    n_elems = n_group.elements()
    n_index = {e: i for i, e in enumerate(n_elems)}
    size = len(n_elems)
    deg_h = h_group.degree
    gens = []
    for g in n_group.gens:
        images = [n_index[pmul(m, g)] for m in n_elems]
        images += [size + x for x in range(deg_h)]
        gens.append(tuple(images))
    h_perms = []
    for hg, a in zip(h_group.gens, autos):
        images = [n_index[a.image(m)] for m in n_elems]
        images += [size + hg[x] for x in range(deg_h)]
        h_perms.append(tuple(images))
        gens.append(tuple(images))
    grp = PermGroup(size + deg_h, gens)
    if grp.order != n_group.order * h_group.order:
        raise ActionNotWellDefined(
            f"generated order {grp.order} != {n_group.order * h_group.order}; "
            f"the action does not extend to a homomorphism")
    normal_part = grp.subgroup(gens[: len(n_group.gens)],
                               known_order=n_group.order)
    h_hom = GroupHom(h_group, grp, h_perms)
    return SemidirectResult(grp, normal_part, n_elems, n_index, n_group,
                            h_group, h_perms, h_hom)


def semidirect_cyclic(n_group: PermGroup, auto: GroupHom, m: int) -> SemidirectResult:
    return semidirect(n_group, cyclic(m), [auto])


# ---------------------------------------------------------------------------
# wreath products and the universal embedding
# ---------------------------------------------------------------------------

@dataclass
class WreathResult:
    group: PermGroup
    base_group: PermGroup
    top_degree: int
    block_size: int

    def element(self, components, top_perm):
        """Permutation for ((a_0, ..., a_{q-1}), pi): (i, x) -> (i^pi, x^{a_i})."""
        d = self.block_size
        images = []
        for i in range(self.top_degree):
            a = components[i]
            for x in range(d):
                images.append(top_perm[i] * d + a[x])
        return tuple(images)


def wreath(m_group: PermGroup, q: int) -> WreathResult:
    """M wr C_q in the imprimitive action on q blocks."""
    d = m_group.degree
    gens = []
    for g in m_group.gens:
        images = list(range(q * d))
        for x, y in enumerate(g):
            images[x] = y
        gens.append(tuple(images))
    shift = tuple(((i // d + 1) % q) * d + (i % d) for i in range(q * d))
    gens.append(shift)
    grp = PermGroup(q * d, gens, known_order=m_group.order ** q * q)
    base_gens = []
    for i in range(q):
        for g in m_group.gens:
            images = list(range(q * d))
            for x, y in enumerate(g):
                images[i * d + x] = i * d + y
            base_gens.append(tuple(images))
    base = grp.subgroup(base_gens, known_order=m_group.order ** q)
    return WreathResult(grp, base, q, d)


def kk_embedding(g_group: PermGroup, m_sub: PermGroup):
    """Universal embedding of G into M wr (G/M) for a normal M of index q.

    Returns (hom, wreath_result).  The transversal is the canonical one of
    the coset action, so the embedding is reproducible.
    """
    if not g_group.is_normal(m_sub):
        raise NotNormal("the universal embedding needs a normal subgroup")
    qr = g_group.quotient(m_sub)
    q = qr.group.order
    if q == 1:
        w = wreath(m_sub, 1)
        images = []
        for g in g_group.gens:
            comp = pmul(pmul(qr.transversal[0], g), pinv(qr.transversal[0]))
            assert comp in m_sub
            images.append(w.element([comp], (0,)))
        return GroupHom(g_group, w.group, images), w
    w = wreath(m_sub, q)
    images = []
    for g in g_group.gens:
        sigma = qr.image_of(g)
        comps = []
        for i, t in enumerate(qr.transversal):
            m = pmul(pmul(t, g), pinv(qr.transversal[sigma[i]]))
            assert m in m_sub, "component outside the normal subgroup"
            comps.append(m)
        images.append(w.element(comps, sigma))
    return GroupHom(g_group, w.group, images), w


# ---------------------------------------------------------------------------
# central product powers  K^q / W
# ---------------------------------------------------------------------------

@dataclass
class CentralPowerResult:
    quotient: QuotientResult        # K^q -> U
    power_group: PermGroup          # K^q
    embed_coordinate: object        # embed(i, g) into K^q
    split: object
    w_subgroup: PermGroup

    @property
    def group(self) -> PermGroup:
        return self.quotient.group

    def project_tuple(self, coords):
        """Image in U of the K^q element with the given coordinates."""
        elem = identity(self.power_group.degree)
        for i, g in enumerate(coords):
            elem = pmul(elem, self.embed_coordinate(i, g))
        return self.quotient.hom.image(elem)


def central_product_power(k_group: PermGroup, q: int) -> CentralPowerResult:
    """U = K^q / W with W the product-one subgroup of Z(K)^q."""
    kq, emb, split = direct_power(k_group, q)
    z = k_group.center()
    w_gens = []
    for zg in z.gens:
        zi = pinv(zg)
        for i in range(q - 1):
            w_gens.append(pmul(emb(i, zg), emb(i + 1, zi)))
    w = kq.subgroup(w_gens, known_order=z.order ** (q - 1))
    qr = kq.quotient(w)
    assert qr.group.order == k_group.order ** q // z.order ** (q - 1)
    return CentralPowerResult(qr, kq, emb, split, w)


# ---------------------------------------------------------------------------
# cyclic extensions (outer automorphism with a compatible witness)
# ---------------------------------------------------------------------------

def _auto_power_images(n_group: PermGroup, alpha: GroupHom, n: int):
    """Images of the generators under alpha^n."""
    current = list(n_group.gens)
    for _ in range(n):
        current = [alpha.image(g) for g in current]
    return current


def cyclic_extension_exists(n_group: PermGroup, alpha: GroupHom, n: int):
    """Least witness x with alpha(x) = x and alpha^n = conjugation by x."""
    power_images = _auto_power_images(n_group, alpha, n)
    for x in n_group.elements():
        if alpha.image(x) != x:
            continue
        xi = pinv(x)
        if all(pmul(pmul(xi, g), x) == img
               for g, img in zip(n_group.gens, power_images)):
            return x
    return None


@dataclass
class CyclicExtensionResult:
    group: PermGroup
    n_source: PermGroup
    t_element: tuple                # the distinguished generator mapping onto C_n
    n_images: list                  # translation perms of the N generators
    translate: object               # (a, j) -> right-translation permutation

    def embed_n(self, g):
        return self.translate(tuple(g), 0)

    def n_hom(self) -> GroupHom:
        return GroupHom(self.n_source, self.group, self.n_images)


def cyclic_extension_build(n_group: PermGroup, alpha: GroupHom, n: int,
                           x) -> CyclicExtensionResult:
    """The extension H with H/N = <tN> cyclic of order n, t g t^-1 = alpha(g),
    t^n = x, realized by right translation on the n |N| normal forms g t^i."""
    x = tuple(x)
    if cyclic_extension_exists_check(n_group, alpha, n, x) is False:
        raise InvalidWitness("witness does not satisfy the extension conditions")
    elems = n_group.elements()
    pairs = [(g, i) for i in range(n) for g in elems]
    index = {pair: k for k, pair in enumerate(pairs)}
    alpha_pows = [{g: g for g in elems}]
    for _ in range(n - 1):
        prev = alpha_pows[-1]
        alpha_pows.append({g: alpha.image(prev[g]) for g in elems})

    def translate(a, j):
        # right multiplication by (a, j): (g, i)(a, j) = (g alpha^i(a) x^c, i+j-cn)
        images = []
        for (g, i) in pairs:
            prod = pmul(g, alpha_pows[i][a])
            total = i + j
            if total >= n:
                prod = pmul(prod, x)
                total -= n
            images.append(index[(prod, total)])
        return tuple(images)

    gens = [translate(a, 0) for a in n_group.gens]
    t = translate(n_group.identity, 1)
    grp = PermGroup(len(pairs), gens + [t])
    if grp.order != n * n_group.order:
        raise InvalidWitness(
            f"extension has order {grp.order}, expected {n * n_group.order}")
    # the distinguished generator must conjugate the embedded N by alpha
    ti = pinv(t)
    for a, g_perm in zip(n_group.gens, gens):
        conj = pmul(pmul(ti, g_perm), t)
        expect = translate(alpha.image(a), 0)
        if conj != expect:
            raise InvalidWitness("distinguished generator does not act as alpha")
    return CyclicExtensionResult(grp, n_group, t, gens, translate)


def cyclic_extension_exists_check(n_group, alpha, n, x) -> bool:
    if alpha.image(x) != x:
        return False
    xi = pinv(x)
    power_images = _auto_power_images(n_group, alpha, n)
    return all(pmul(pmul(xi, g), x) == img
               for g, img in zip(n_group.gens, power_images))
