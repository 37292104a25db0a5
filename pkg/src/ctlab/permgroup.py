"""Permutation groups with deterministic stabilizer chains.

The chain construction is a deterministic Schreier-Sims in the style of
Holt's SCHREIERSIMS: strong generators carry an explicit level range, orbits
are grown breadth-first in a fixed order and Schreier generators are sifted
in a fixed order, so the same generator list always produces the same chain.
Higher-level queries (classes, center, cores, quotients, Sylow subgroups)
canonicalize their output and therefore do not depend on chain internals.
Everything assumes desk scale: orders up to a few tens of thousands, degrees
up to ~2000.
"""

from __future__ import annotations

from collections import deque
from math import lcm, prod

from .errors import (
    BudgetExceeded,
    DEFAULT_BUDGET,
    InvalidPermutation,
    NotNormal,
    NotSolvable,
    Timeout,
)
from .perms import (
    commutator,
    conj,
    format_cycles,
    identity,
    order as perm_order,
    pinv,
    pmul,
    ppow,
    validate,
)


class _Done(Exception):
    """Internal: chain reached a known target order."""


class _Level:
    __slots__ = ("base", "gens", "orbit", "processed", "dirty")

    def __init__(self, base, ident):
        self.base = base
        self.gens = []          # generators assigned to this level
        self.orbit = {base: ident}
        self.processed = set()  # (point, gen position) Schreier pairs already sifted
        self.dirty = True


class StabilizerChain:
    """Base and strong generating set for a permutation group.

    ``base_preference`` prescribes the order in which candidate base points
    are tried (default: least moved point).  With ``on_restricted`` set, a
    generator that moves no admissible base point is handed to that callback
    instead of raising; the homomorphism checker uses this to detect
    multi-valued graphs.
    """

    def __init__(self, degree, gens, known_order=None, base_preference=None,
                 on_restricted=None):
        self.degree = degree
        self.identity = identity(degree)
        self.levels = []
        self._known_order = known_order
        self._preference = list(base_preference) if base_preference is not None \
            else list(range(degree))
        self._on_restricted = on_restricted
        try:
            self._build([g for g in gens if g != self.identity])
        except _Done:
            pass

    # -- construction ---------------------------------------------------
    def _pick_base(self, g):
        for p in self._preference:
            if g[p] != p:
                return p
        if self._on_restricted is not None:
            self._on_restricted(g)
        raise InvalidPermutation("generator moves no admissible base point")

    def _depth(self, g):
        for i, lvl in enumerate(self.levels):
            if g[lvl.base] != lvl.base:
                return i
        return len(self.levels)

    def _assign(self, g, lo, hi):
        """Make g a generator of levels lo..hi inclusive (creating level hi)."""
        while hi >= len(self.levels):
            self.levels.append(_Level(self._pick_base(g), self.identity))
        for l in range(lo, hi + 1):
            lvl = self.levels[l]
            lvl.gens.append(g)
            lvl.dirty = True
        for l in range(lo, hi + 1):
            self._refresh_orbit(l)
        if self._known_order is not None and self.order() == self._known_order:
            raise _Done

    def _refresh_orbit(self, i):
        lvl = self.levels[i]
        if not lvl.dirty:
            return
        orbit = {lvl.base: self.identity}
        queue = deque([lvl.base])
        while queue:
            t = queue.popleft()
            u = orbit[t]
            for s in lvl.gens:
                img = s[t]
                if img not in orbit:
                    orbit[img] = pmul(u, s)
                    queue.append(img)
        lvl.orbit = orbit
        lvl.dirty = False

    def _build(self, gens):
        for g in gens:
            d = self._depth(g)
            if d == len(self.levels):
                self.levels.append(_Level(self._pick_base(g), self.identity))
            self._assign(g, 0, d)
        i = len(self.levels) - 1
        while i >= 0:
            stuck = self._process_level(i)
            i = i - 1 if stuck is None else stuck

    def _process_level(self, i):
        """Sift Schreier generators of level i; return a deeper level index to
        reprocess when a new strong generator was inserted, else None."""
        lvl = self.levels[i]
        self._refresh_orbit(i)
        for t in sorted(lvl.orbit):
            u_t = lvl.orbit[t]
            for k in range(len(lvl.gens)):
                if (t, k) in lvl.processed:
                    continue
                lvl.processed.add((t, k))
                s = lvl.gens[k]
                sg = pmul(pmul(u_t, s), pinv(lvl.orbit[s[t]]))
                if sg == self.identity:
                    continue
                residue, j = self._sift(sg, i + 1)
                if residue == self.identity:
                    continue
                self._assign(residue, i + 1, j)
                return j
        return None

    def _sift(self, g, start=0):
        for i in range(start, len(self.levels)):
            lvl = self.levels[i]
            img = g[lvl.base]
            if img == lvl.base:
                continue
            u = lvl.orbit.get(img)
            if u is None:
                return g, i
            g = pmul(g, pinv(u))
        return g, len(self.levels)

    # -- queries ---------------------------------------------------------
    def order(self) -> int:
        return prod(len(l.orbit) for l in self.levels) if self.levels else 1

    def contains(self, g) -> bool:
        if len(g) != self.degree:
            return False
        residue, _ = self._sift(g)
        return residue == self.identity

    def residue(self, g):
        return self._sift(g)[0]


class PermGroup:
    """A finite permutation group on 0..degree-1 with cached structure data."""

    def __init__(self, degree, gens, known_order=None, check=True):
        self.degree = degree
        if check:
            gens = [validate(g, degree) for g in gens]
        ident = identity(degree)
        self.gens = tuple(g for g in gens if g != ident)
        self.chain = StabilizerChain(degree, self.gens, known_order=known_order)
        self.order = self.chain.order()
        if known_order is not None and self.order != known_order:
            raise InvalidPermutation(
                f"generated group has order {self.order}, expected {known_order}")
        self._elements = None
        self._classes = None
        self._center = None
        self._cores = {}

    # -- basics ----------------------------------------------------------
    @property
    def identity(self):
        return self.chain.identity

    def __contains__(self, g):
        return self.chain.contains(tuple(g))

    def __repr__(self):
        return f"PermGroup(degree={self.degree}, order={self.order})"

    def is_trivial(self):
        return self.order == 1

    def elements(self, budget=DEFAULT_BUDGET):
        """All elements, sorted lexicographically (cached)."""
        if self._elements is None:
            if self.order > budget.scan_limit:
                raise BudgetExceeded(
                    f"element enumeration of order {self.order} exceeds budget")
            seen = {self.identity}
            queue = deque([self.identity])
            while queue:
                x = queue.popleft()
                for s in self.gens:
                    y = pmul(x, s)
                    if y not in seen:
                        seen.add(y)
                        queue.append(y)
            assert len(seen) == self.order
            self._elements = sorted(seen)
        return self._elements

    def subgroup(self, gens, known_order=None):
        return PermGroup(self.degree, gens, known_order=known_order, check=False)

    def subgroup_from_elements(self, elems):
        """Small generating set for the subgroup generated by ``elems``."""
        sel = []
        h = StabilizerChain(self.degree, [])
        for x in sorted(set(elems)):
            if x == self.identity or h.contains(x):
                continue
            sel.append(x)
            h = StabilizerChain(self.degree, sel)
        return self.subgroup(sel, known_order=h.order())

    def is_subgroup_of(self, other) -> bool:
        return self.degree == other.degree and all(g in other for g in self.gens)

    def is_abelian(self) -> bool:
        return all(pmul(a, b) == pmul(b, a) for a in self.gens for b in self.gens)

    def exponent(self) -> int:
        cd = self.conjugacy_classes()
        return lcm(1, *cd.element_orders)

    # -- conjugacy classes -------------------------------------------------
    def conjugacy_classes(self):
        if self._classes is None:
            self._classes = _conjugacy_classes(self)
        return self._classes

    def class_of(self, g) -> int:
        return self.conjugacy_classes().index[tuple(g)]

    # -- normality / closures ----------------------------------------------
    def normal_closure(self, elems):
        gens = [g for g in elems if g != self.identity]
        h = self.subgroup_from_elements(gens)
        frontier = list(h.gens)
        while frontier:
            new = []
            for x in frontier:
                for s in self.gens:
                    c = conj(x, s)
                    if c not in h:
                        new.append(c)
            if new:
                h = self.subgroup_from_elements(list(h.gens) + new)
                frontier = new
            else:
                frontier = []
        return h

    def is_normal(self, n) -> bool:
        if not n.is_subgroup_of(self):
            return False
        return all(conj(x, s) in n for x in n.gens for s in self.gens)

    def derived_subgroup(self):
        comms = [commutator(a, b) for a in self.gens for b in self.gens]
        return self.normal_closure(comms)

    def derived_series(self):
        series = [self]
        while True:
            nxt = series[-1].derived_subgroup()
            if nxt.order == series[-1].order:
                break
            series.append(nxt)
            if nxt.order == 1:
                break
        return series

    def is_solvable(self) -> bool:
        return self.derived_series()[-1].order == 1

    def center(self):
        if self._center is None:
            central = [x for x in self.elements()
                       if all(pmul(x, s) == pmul(s, x) for s in self.gens)]
            self._center = self.subgroup_from_elements(central)
        return self._center

    def centralizer_of_subgroup(self, h, budget=DEFAULT_BUDGET):
        if self.order > budget.scan_limit:
            raise Timeout("centralizer scan exceeds node budget")
        cen = [x for x in self.elements()
               if all(pmul(x, s) == pmul(s, x) for s in h.gens)]
        return self.subgroup_from_elements(cen)

    def normalizer(self, h, budget=DEFAULT_BUDGET):
        if self.order > budget.scan_limit:
            raise Timeout("normalizer scan exceeds node budget")
        out = [g for g in self.elements()
               if all(conj(x, g) in h for x in h.gens)]
        return self.subgroup_from_elements(out)

    # -- p-structure ---------------------------------------------------------
    def p_core(self, p):
        """O_p(G): join of class closures that are p-groups."""
        if ("p", p) not in self._cores:
            self._cores[("p", p)] = self._core(lambda n: _is_p_power(n, p))
        return self._cores[("p", p)]

    def p_prime_core(self, p):
        """O_{p'}(G): join of class closures of p'-order."""
        if ("p'", p) not in self._cores:
            self._cores[("p'", p)] = self._core(lambda n: n % p != 0)
        return self._cores[("p'", p)]

    def _core(self, order_ok):
        cd = self.conjugacy_classes()
        picked = []
        for rep in cd.representatives:
            if rep == self.identity:
                continue
            ncl = self.normal_closure([rep])
            if order_ok(ncl.order):
                picked.append(rep)
        core = self.normal_closure(picked) if picked else self.subgroup([])
        assert order_ok(core.order)
        return core

    def p_length(self, p) -> int:
        if not self.is_solvable():
            raise NotSolvable("p-length is defined here for solvable groups only")
        g = self
        count = 0
        while g.order > 1:
            opp = g.p_prime_core(p)
            if opp.order > 1:
                g = g.quotient(opp).group
            if g.order == 1:
                break
            op = g.p_core(p)
            assert op.order > 1, "solvable upper p-series stalled"
            count += 1
            g = g.quotient(op).group
        return count

    def sylow_subgroup(self, p, budget=DEFAULT_BUDGET):
        target = _p_part(self.order, p)
        if target == 1:
            return self.subgroup([])
        cd = self.conjugacy_classes()
        seed = None
        for rep, o in zip(cd.representatives, cd.element_orders):
            if o % p == 0:
                seed = ppow(rep, o // p)
                break
        sub = self.subgroup([seed], known_order=p)
        while sub.order < target:
            nz = self.normalizer(sub, budget=budget)
            ext = None
            for y in nz.elements():
                if y not in sub and ppow(y, p) in sub:
                    ext = y
                    break
            assert ext is not None, "normalizer must contain a p-extension"
            sub = self.subgroup(list(sub.gens) + [ext], known_order=sub.order * p)
        return sub

    # -- quotients -------------------------------------------------------------
    def quotient(self, n):
        """Faithful action on the right cosets of a normal subgroup.

        Returns a QuotientResult carrying the quotient group, the generator
        images, a sorted canonical transversal and an exact lift map.
        """
        if not self.is_normal(n):
            raise NotNormal("quotient requires a normal subgroup")
        index = self.order // n.order
        if index > 100_000:
            raise BudgetExceeded(f"coset action of degree {index} out of desk scale")
        canon = _coset_canonicalizer(n)
        t0 = canon(self.identity)
        reps = {t0}
        queue = deque([t0])
        while queue:
            t = queue.popleft()
            for s in self.gens:
                c = canon(pmul(t, s))
                if c not in reps:
                    reps.add(c)
                    queue.append(c)
        transversal = sorted(reps)
        assert len(transversal) == index
        pos = {t: i for i, t in enumerate(transversal)}
        gen_images = [
            tuple(pos[canon(pmul(t, s))] for t in transversal) for s in self.gens
        ]
        group = PermGroup(index, gen_images, known_order=index, check=False)
        return QuotientResult(self, n, group, gen_images, transversal, pos, canon)


class QuotientResult:
    """Quotient action data: group, generator images, canonical transversal."""

    def __init__(self, source, kernel, group, gen_images, transversal, pos, canon):
        self.source = source
        self.kernel = kernel
        self.group = group
        self.gen_images = gen_images
        self.transversal = transversal
        self._pos = pos
        self._canon = canon
        self._base_index = pos[canon(source.identity)]
        self._hom = None

    @property
    def hom(self):
        if self._hom is None:
            from .homs import GroupHom

            self._hom = GroupHom(self.source, self.group, self.gen_images)
        return self._hom

    def image_of(self, g):
        return tuple(self._pos[self._canon(pmul(t, g))] for t in self.transversal)

    def lift(self, w):
        """A preimage of a quotient element (exact: the action is regular)."""
        return self.transversal[w[self._base_index]]

    def coset_index(self, g):
        return self._pos[self._canon(g)]


class ClassData:
    """Canonically ordered conjugacy classes.

    Identity class first, then sorted by (element order, class size,
    lexicographically least member); the representative of each class is its
    least member, so the ordering does not depend on the generating set.
    """

    def __init__(self, group, classes):
        self.group = group
        self.classes = classes  # list of sorted element lists
        self.representatives = [c[0] for c in classes]
        self.sizes = [len(c) for c in classes]
        self.centralizer_orders = [group.order // len(c) for c in classes]
        self.element_orders = [perm_order(r) for r in self.representatives]
        self.index = {}
        for i, c in enumerate(classes):
            for x in c:
                self.index[x] = i

    def __len__(self):
        return len(self.classes)

    def power_class(self, i, k) -> int:
        return self.index[ppow(self.representatives[i], k)]

    def inverse_class(self, i) -> int:
        return self.index[pinv(self.representatives[i])]

    def describe(self):
        return [
            {
                "representative": format_cycles(r),
                "size": s,
                "element_order": o,
            }
            for r, s, o in zip(self.representatives, self.sizes, self.element_orders)
        ]


def _conjugacy_classes(group):
    elems = group.elements()
    genpairs = [(s, pinv(s)) for s in group.gens]
    assigned = set()
    classes = []
    for x in elems:
        if x in assigned:
            continue
        orbit = {x}
        queue = deque([x])
        while queue:
            y = queue.popleft()
            for s, si in genpairs:
                z = pmul(pmul(si, y), s)
                if z not in orbit:
                    orbit.add(z)
                    queue.append(z)
        assigned |= orbit
        classes.append(sorted(orbit))
    ident = group.identity
    classes.sort(key=lambda c: (c[0] != ident, perm_order(c[0]), len(c), c[0]))
    return ClassData(group, classes)


def _coset_canonicalizer(n):
    """Map g to the canonical (greedy minimal-image) element of the coset Ng."""
    levels = n.chain.levels

    def canon(g):
        r = g
        for lvl in levels:
            best_pt = None
            best_u = None
            for o, u in lvl.orbit.items():
                img = r[o]
                if best_pt is None or img < best_pt:
                    best_pt = img
                    best_u = u
            if best_u is not None:
                r = pmul(best_u, r)
        return r

    return canon


def _p_part(n, p):
    out = 1
    while n % p == 0:
        out *= p
        n //= p
    return out


def _is_p_power(n, p):
    return _p_part(n, p) == n


def p_part(n, p):
    return _p_part(n, p)


def p_prime_part(n, p):
    return n // _p_part(n, p)


def group_from_generators(degree, gens, known_order=None) -> PermGroup:
    """Public constructor: validates generators and builds the chain."""
    return PermGroup(degree, [validate(g, degree) for g in gens],
                     known_order=known_order, check=False)


def direct_product(a: PermGroup, b: PermGroup):
    """A x B on the disjoint union of the two domains.

    Returns (group, embed_a, embed_b, split) where the embeds map elements in
    and split decomposes an element into its two factors.
    """
    da, db = a.degree, b.degree
    shift = tuple(x + da for x in range(db))

    def emb_a(g):
        return tuple(g) + shift

    def emb_b(g):
        return tuple(range(da)) + tuple(x + da for x in g)

    gens = [emb_a(g) for g in a.gens] + [emb_b(g) for g in b.gens]
    grp = PermGroup(da + db, gens, known_order=a.order * b.order, check=False)

    def split(g):
        return tuple(g[:da]), tuple(x - da for x in g[da:])

    return grp, emb_a, emb_b, split


def direct_power(a: PermGroup, q: int):
    """A^q on q disjoint copies of the domain; returns (group, embed, split)."""
    d = a.degree

    def emb(i, g):
        images = list(range(d * q))
        for x, y in enumerate(g):
            images[i * d + x] = i * d + y
        return tuple(images)

    gens = [emb(i, g) for i in range(q) for g in a.gens]
    grp = PermGroup(d * q, gens, known_order=a.order ** q, check=False)

    def split(g):
        return [tuple(g[i * d + x] - i * d for x in range(d)) for i in range(q)]

    return grp, emb, split
