"""Exact arithmetic in cyclotomic fields Q(zeta_n) and small finite fields.

Values are kept in a canonical form that makes equality structural:
coefficients on the power basis 1, z, ..., z^(phi(n)-1) after reduction
modulo the n-th cyclotomic polynomial, with n the *minimal* conductor (never
congruent to 2 mod 4, and 1 for rationals).  Two values are equal iff their
(conductor, coefficient vector) pairs are equal, and that pair is also the
hash key.

The finite-field side provides F_ell contexts for the character-table
engine (ell = 1 mod e) and F_{p^m} contexts for reducing algebraic integers
modulo a prime ideal over p, with a fixed primitive root convention so block
partitions are reproducible.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt

from .errors import LiftInconsistent, NotAlgebraicInteger


# ---------------------------------------------------------------------------
# integer helpers
# ---------------------------------------------------------------------------

def prime_factors(n: int) -> list:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1 if d == 2 else 2
    return True


@lru_cache(maxsize=None)
def euler_phi(n: int) -> int:
    out = n
    for p in prime_factors(n):
        out = out // p * (p - 1)
    return out


def multiplicative_order(a: int, n: int) -> int:
    a %= n
    if gcd(a, n) != 1:
        raise ValueError("order undefined: gcd != 1")
    k, x = 1, a
    while x != 1:
        x = x * a % n
        k += 1
    return k


# ---------------------------------------------------------------------------
# cyclotomic polynomials and reduction tables
# ---------------------------------------------------------------------------

def _poly_divmod_exact(num, den):
    """Quotient of integer polynomials (ascending coeffs), exact division."""
    num = list(num)
    q = [0] * (len(num) - len(den) + 1)
    for i in range(len(q) - 1, -1, -1):
        c = num[i + len(den) - 1]
        assert c % den[-1] == 0
        q[i] = c // den[-1]
        for j, d in enumerate(den):
            num[i + j] -= q[i] * d
    assert all(c == 0 for c in num)
    return q


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple:
    """Coefficients of Phi_n, ascending degree, monic integral."""
    if n == 1:
        return (-1, 1)
    num = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            num = _poly_divmod_exact(num, cyclotomic_polynomial(d))
    return tuple(num)


@lru_cache(maxsize=None)
def _power_table(n: int) -> tuple:
    """Row e (0 <= e < n): coefficients of x^e mod Phi_n on the power basis."""
    phi = euler_phi(n)
    poly = cyclotomic_polynomial(n)
    rows = []
    for e in range(phi):
        row = [0] * phi
        row[e] = 1
        rows.append(tuple(row))
    current = list(rows[phi - 1]) if phi > 0 else [1]
    for _ in range(phi, n):
        shifted = [0] + current[:]
        lead = shifted.pop()
        if lead:
            for j in range(phi):
                shifted[j] -= lead * poly[j]
        current = shifted
        rows.append(tuple(current))
    return tuple(rows)


def _reduce_expansion(n: int, expansion) -> list:
    """Map {exponent: coeff} to the reduced coefficient vector mod Phi_n."""
    phi = euler_phi(n)
    table = _power_table(n)
    vec = [0] * phi
    for e, c in expansion.items():
        if not c:
            continue
        row = table[e % n]
        for j in range(phi):
            if row[j]:
                vec[j] += c * row[j]
    return vec


def _as_int_or_fraction(c):
    if isinstance(c, Fraction):
        return int(c) if c.denominator == 1 else c
    return c


@lru_cache(maxsize=None)
def _galois_matrix(n: int, j: int) -> tuple:
    """Rows i: coefficient vector of sigma_j(z^i) = z^(ij) mod Phi_n."""
    table = _power_table(n)
    return tuple(table[(i * j) % n] for i in range(euler_phi(n)))


@lru_cache(maxsize=None)
def _descent_solver(n: int, p: int):
    """Solver for rewriting invariant values from Q(zeta_n) into Q(zeta_{n/p}).

    Returns a list of phi(m) rational rows R with d = R . v, where v is the
    coefficient vector at conductor n and d the one at m = n/p.
    """
    m = n // p
    phi_n, phi_m = euler_phi(n), euler_phi(m)
    table = _power_table(n)
    cols = [table[(p * i) % n] for i in range(phi_m)]
    # solve M d = v for all v in the column space: row-reduce [M | I]
    rows = [[Fraction(cols[j][i]) for j in range(phi_m)] +
            [Fraction(1 if k == i else 0) for k in range(phi_n)]
            for i in range(phi_n)]
    pivots = []
    r = 0
    for c in range(phi_m):
        sel = next((i for i in range(r, phi_n) if rows[i][c]), None)
        assert sel is not None, "descent columns must be independent"
        rows[r], rows[sel] = rows[sel], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(phi_n):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(r)
        r += 1
    solver = [tuple(rows[pr][phi_m:]) for pr in pivots]
    return solver


def _apply_matrix(mat, vec, size):
    out = [0] * size
    for c, row in zip(vec, mat):
        if c:
            for j in range(size):
                if row[j]:
                    out[j] += c * row[j]
    return out


# ---------------------------------------------------------------------------
# the Cyclotomic value type
# ---------------------------------------------------------------------------

class Cyclotomic:
    """Immutable element of Q(zeta_n) in canonical reduced form."""

    __slots__ = ("n", "coeffs", "_hash")

    def __init__(self, n, coeffs, _canonical=False):
        if _canonical:
            self.n = n
            self.coeffs = coeffs
        else:
            m, vec = _canonicalize(n, {e: c for e, c in enumerate(coeffs)})
            self.n = m
            self.coeffs = vec
        self._hash = None

    # construction helpers ------------------------------------------------
    @staticmethod
    def from_rational(q) -> "Cyclotomic":
        return Cyclotomic(1, (_as_int_or_fraction(Fraction(q)),), _canonical=True)

    @staticmethod
    def from_expansion(n: int, expansion: dict) -> "Cyclotomic":
        """Value sum c_e zeta_n^e from an exponent -> coefficient map."""
        m, vec = _canonicalize(n, expansion)
        return Cyclotomic(m, vec, _canonical=True)

    # predicates ----------------------------------------------------------
    def is_rational(self) -> bool:
        return self.n == 1

    def is_zero(self) -> bool:
        return self.n == 1 and not self.coeffs[0]

    def is_integer(self) -> bool:
        return self.n == 1 and isinstance(self.coeffs[0], int)

    def is_algebraic_integer(self) -> bool:
        return all(isinstance(c, int) for c in self.coeffs)

    def as_rational(self) -> Fraction:
        if self.n != 1:
            raise ValueError(f"{self!r} is not rational")
        return Fraction(self.coeffs[0])

    # arithmetic ----------------------------------------------------------
    def _embedded(self, big: int):
        """Expansion dict of self at conductor big (n | big)."""
        k = big // self.n
        return {i * k: c for i, c in enumerate(self.coeffs) if c}

    def __add__(self, other):
        other = _coerce(other)
        big = self.n * other.n // gcd(self.n, other.n)
        exp = self._embedded(big)
        for e, c in other._embedded(big).items():
            exp[e] = exp.get(e, 0) + c
        return Cyclotomic.from_expansion(big, exp)

    def __radd__(self, other):
        return self.__add__(other)

    def __neg__(self):
        return Cyclotomic(self.n, tuple(-c for c in self.coeffs), _canonical=True)

    def __sub__(self, other):
        return self.__add__(_coerce(other).__neg__())

    def __rsub__(self, other):
        return _coerce(other).__sub__(self)

    def __mul__(self, other):
        other = _coerce(other)
        if self.n == 1:
            c = self.coeffs[0]
            return Cyclotomic(other.n,
                              tuple(_as_int_or_fraction(Fraction(c) * x) if x else 0
                                    for x in other.coeffs))
        if other.n == 1:
            return other.__mul__(self)
        big = self.n * other.n // gcd(self.n, other.n)
        a = self._embedded(big)
        b = other._embedded(big)
        exp = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                e = (e1 + e2) % big
                exp[e] = exp.get(e, 0) + c1 * c2
        return Cyclotomic.from_expansion(big, exp)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __truediv__(self, other):
        """Division by a nonzero rational."""
        q = Fraction(other) if not isinstance(other, Cyclotomic) else other.as_rational()
        if not q:
            raise ZeroDivisionError
        return self.__mul__(Cyclotomic.from_rational(Fraction(1, 1) / q))

    def galois(self, j: int) -> "Cyclotomic":
        """Apply sigma_j: zeta -> zeta^j (gcd(j, n) = 1)."""
        if self.n == 1:
            return self
        if gcd(j, self.n) != 1:
            raise ValueError("galois exponent must be coprime to the conductor")
        vec = _apply_matrix(_galois_matrix(self.n, j % self.n), self.coeffs,
                            euler_phi(self.n))
        return Cyclotomic(self.n, tuple(vec))

    def conjugate(self) -> "Cyclotomic":
        return self.galois(self.n - 1) if self.n > 1 else self

    def abs_square(self) -> "Cyclotomic":
        return self * self.conjugate()

    def power(self, k: int) -> "Cyclotomic":
        result = ONE
        base = self
        if k < 0:
            raise ValueError("negative powers unsupported")
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def root_of_unity_multiple(self):
        """(m, n, e) with self = m * zeta_n^e for an integer m >= 0, else None."""
        if self.is_zero():
            return (0, 1, 0)
        s = self.abs_square()
        if not s.is_integer():
            return None
        m = isqrt(int(s.coeffs[0]))
        if m * m != int(s.coeffs[0]):
            return None
        for e in range(self.n):
            cand = Cyclotomic.from_expansion(self.n, {e: m})
            if cand == self:
                return (m, self.n, e)
            if -cand == self:
                hn = 2 * self.n if self.n % 2 else self.n
                shift = (e * (hn // self.n) + hn // 2) % hn
                return (m, hn, shift)
        return None

    # protocol ------------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, Cyclotomic):
            if isinstance(other, (int, Fraction)):
                return self.n == 1 and self.coeffs[0] == other
            return NotImplemented
        return self.n == other.n and self.coeffs == other.coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, self.coeffs))
        return self._hash

    def __repr__(self):
        return f"Cyclotomic({self.serialize()})"

    def sort_key(self):
        return (self.n, tuple(Fraction(c) for c in self.coeffs))

    def serialize(self) -> str:
        body = ",".join(str(c) for c in self.coeffs)
        return f"[{self.n};{body}]"

    @staticmethod
    def deserialize(text: str) -> "Cyclotomic":
        inner = text.strip()
        if not (inner.startswith("[") and inner.endswith("]")):
            raise ValueError(f"bad cyclotomic literal {text!r}")
        head, _, body = inner[1:-1].partition(";")
        n = int(head)
        coeffs = [Fraction(tok) for tok in body.split(",")] if body else []
        return Cyclotomic(n, tuple(coeffs))


def _coerce(x) -> Cyclotomic:
    if isinstance(x, Cyclotomic):
        return x
    return Cyclotomic.from_rational(x)


def _canonicalize(n: int, expansion: dict):
    """Reduce an exponent expansion at conductor n to minimal canonical form."""
    # fold exponents into range and strip zeros
    folded = {}
    for e, c in expansion.items():
        if c:
            e %= n
            folded[e] = folded.get(e, 0) + c
    if not folded or all(not c for c in folded.values()):
        return 1, (0,)
    # singly-even conductors collapse: zeta_{2m} = -zeta_m^{(m+1)/2} for odd m
    while n % 4 == 2:
        m = n // 2
        half = (m + 1) // 2
        folded2 = {}
        for e, c in folded.items():
            if not c:
                continue
            e2 = (e * half) % m
            c2 = -c if e % 2 else c
            folded2[e2] = folded2.get(e2, 0) + c2
        n, folded = m, folded2
    vec = _reduce_expansion(n, folded)
    return _descend(n, vec)


def _descend(n: int, vec):
    phi = euler_phi(n)
    if n == 1:
        return 1, (_as_int_or_fraction(Fraction(vec[0])) if not isinstance(vec[0], int)
                   else vec[0],)
    if all(not c for c in vec[1:]):
        return 1, (_as_int_or_fraction(vec[0]),)
    for p in prime_factors(n):
        m = n // p
        if m == 1:
            continue  # rational values were caught above
        subgroup = [j for j in range(1, n) if j % m == 1 and gcd(j, n) == 1]
        if all(_apply_matrix(_galois_matrix(n, j), vec, phi) == list(vec)
               for j in subgroup if j != 1):
            solver = _descent_solver(n, p)
            d = [_dot(row, vec) for row in solver]
            # invariance guarantees consistency; verify the rewrite anyway
            table = _power_table(n)
            check = [Fraction(0)] * phi
            for i, di in enumerate(d):
                if di:
                    row = table[(p * i) % n]
                    for j in range(phi):
                        check[j] += di * row[j]
            assert check == [Fraction(x) for x in vec], "descent rewrite failed"
            if m % 4 == 2:
                exp = {i: _as_int_or_fraction(c) for i, c in enumerate(d) if c}
                return _canonicalize(m, exp)
            return _descend(m, [_as_int_or_fraction(Fraction(x)) for x in d])
    return n, tuple(_as_int_or_fraction(Fraction(c)) if not isinstance(c, int) else c
                    for c in vec)


def _dot(row, vec):
    s = Fraction(0)
    for a, b in zip(row, vec):
        if a and b:
            s += a * b
    return _as_int_or_fraction(s)


ZERO = Cyclotomic.from_rational(0)
ONE = Cyclotomic.from_rational(1)


def zeta(n: int, e: int = 1) -> Cyclotomic:
    return Cyclotomic.from_expansion(n, {e: 1})


def cyclo_sum(values) -> Cyclotomic:
    total = ZERO
    for v in values:
        total = total + v
    return total


def rational(x) -> Cyclotomic:
    return Cyclotomic.from_rational(x)


# ---------------------------------------------------------------------------
# finite field contexts
# ---------------------------------------------------------------------------

class PrimeFieldCtx:
    """F_{p^m} = F_p[x]/(f) with a fixed primitive e-th root of unity.

    ``f`` is the lexicographically least monic irreducible of degree m whose
    root has multiplicative order divisible by e; ``omega = root^(ord/e)``.
    Elements are coefficient tuples of length m.  For m = 1 this is the prime
    field and tuples have length 1.
    """

    def __init__(self, p: int, e: int):
        self.p = p
        self.e = e
        self.m = 1 if e <= 1 else multiplicative_order(p, e)
        self.modulus = self._find_modulus()
        self.zero = (0,) * self.m
        self.one = (1,) + (0,) * (self.m - 1)
        if self.m == 1:
            x = ((-self.modulus[0]) % p,)
        else:
            x = (0, 1) + (0,) * (self.m - 2)
        if e > 1:
            root_order = self._element_order(x)
            assert root_order % e == 0
            self.omega = self.pow(x, root_order // e)
        else:
            self.omega = self.one
        self.omega_pows = [self.one]
        for _ in range(max(e - 1, 0)):
            self.omega_pows.append(self.mul(self.omega_pows[-1], self.omega))
        self.dlog = {w: i for i, w in enumerate(self.omega_pows)}

    def _find_modulus(self):
        p, m, e = self.p, self.m, self.e
        assert e <= 1 or (p ** m - 1) % e == 0
        if m == 1:
            candidates = _lex_tuples(p, 1)
        else:
            # a zero constant term means a factor of x: skip that whole
            # lex block instead of enumerating it
            candidates = ((a0,) + rest for a0 in range(1, p)
                          for rest in _lex_tuples(p, m - 1))
        for tail in candidates:
            f = tail + (1,)
            if m > 1 and any(_poly_eval(f, c, p) == 0 for c in range(p)):
                continue  # a linear factor
            if not _poly_irreducible(f, p):
                continue
            if e <= 1:
                return f
            if m == 1:
                root = (-f[0]) % p
                if root == 0:
                    continue
                order = multiplicative_order(root, p)
            else:
                order = _element_order_mod((0, 1) + (0,) * (m - 2), f, p)
            if order % e == 0:
                return f
        raise AssertionError("no suitable modulus found")

    def _element_order(self, x):
        return _element_order_mod(x, self.modulus, self.p)

    # element ops ---------------------------------------------------------
    def add(self, a, b):
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple((x - y) % self.p for x, y in zip(a, b))

    def mul(self, a, b):
        p, m, f = self.p, self.m, self.modulus
        prod = [0] * (2 * m - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] = (prod[i + j] + x * y) % p
        for k in range(2 * m - 2, m - 1, -1):
            c = prod[k]
            if c:
                prod[k] = 0
                for j in range(m):
                    prod[k - m + j] = (prod[k - m + j] - c * f[j]) % p
        return tuple(prod[:m])

    def pow(self, a, k):
        result = self.one
        base = a
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    def scalar(self, c: int):
        return (c % self.p,) + (0,) * (self.m - 1)


def _lex_tuples(p, m):
    total = p ** m
    for code in range(total):
        out = []
        c = code
        for _ in range(m):
            out.append(c % p)
            c //= p
        yield tuple(reversed(out))


def _poly_eval(f, x, p):
    acc = 0
    for c in reversed(f):
        acc = (acc * x + c) % p
    return acc


def _poly_irreducible(f, p) -> bool:
    """Deterministic irreducibility over F_p: x^(p^d) congruences."""
    m = len(f) - 1
    if m == 1:
        return True

    def polymulmod(a, b):
        prod = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] = (prod[i + j] + x * y) % p
        for k in range(len(prod) - 1, m - 1, -1):
            c = prod[k]
            if c:
                prod[k] = 0
                for j in range(m):
                    prod[k - m + j] = (prod[k - m + j] - c * f[j]) % p
        out = prod[:m]
        while len(out) < m:
            out.append(0)
        return out

    def xpow(exp):
        result = [1] + [0] * (m - 1)
        base = [0, 1] + [0] * (m - 2) if m > 1 else [1]
        while exp:
            if exp & 1:
                result = polymulmod(result, base)
            base = polymulmod(base, base)
            exp >>= 1
        return result

    xq = xpow(p ** m)
    if xq != [0, 1] + [0] * (m - 2):
        return False
    for q in set(prime_factors(m)):
        xd = xpow(p ** (m // q))
        xd[1] = (xd[1] - 1) % p
        if _poly_gcd_nontrivial(xd, f, p):
            return False
    return True


def _poly_trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_rem(a, b, p):
    """Remainder of a modulo b over F_p (b nonzero)."""
    a = _poly_trim([x % p for x in a])
    b = _poly_trim([x % p for x in b])
    inv_lead = pow(b[-1], p - 2, p)
    while len(a) >= len(b):
        c = a[-1] * inv_lead % p
        shift = len(a) - len(b)
        for j, y in enumerate(b):
            a[shift + j] = (a[shift + j] - c * y) % p
        a = _poly_trim(a)
        if not a:
            break
    return a


def _poly_gcd_nontrivial(a, b, p) -> bool:
    """True iff gcd(a, b) over F_p has degree >= 1."""
    a = _poly_trim([x % p for x in a])
    b = _poly_trim([x % p for x in b])
    while b:
        a, b = b, _poly_rem(a, b, p)
    return len(a) > 1


def _element_order_mod(x, f, p):
    """Multiplicative order of x in F_p[t]/(f)."""
    m = len(f) - 1

    def mul(a, b):
        prod = [0] * (2 * m - 1)
        for i, u in enumerate(a):
            if u:
                for j, v in enumerate(b):
                    if v:
                        prod[i + j] = (prod[i + j] + u * v) % p
        for k in range(2 * m - 2, m - 1, -1):
            c = prod[k]
            if c:
                prod[k] = 0
                for j in range(m):
                    prod[k - m + j] = (prod[k - m + j] - c * f[j]) % p
        return tuple(prod[:m])

    def powm(a, k):
        result = (1,) + (0,) * (m - 1)
        base = tuple(a)
        while k:
            if k & 1:
                result = mul(result, base)
            base = mul(base, base)
            k >>= 1
        return result

    one = (1,) + (0,) * (m - 1)
    total = p ** m - 1
    order = total
    for q in prime_factors(total):
        while order % q == 0 and powm(x, order // q) == one:
            order //= q
    return order


# ---------------------------------------------------------------------------
# Dixon prime field and lifting
# ---------------------------------------------------------------------------

class DixonField:
    """F_ell with ell = 1 mod e, ell above the recovery bounds."""

    def __init__(self, e: int, lower: int):
        ell = e + 1
        while not (ell > lower and is_prime(ell)):
            ell += e
        self.ell = ell
        self.e = e
        g = self._primitive_root()
        self.omega = pow(g, (ell - 1) // e, ell)
        self.omega_pows = [1]
        for _ in range(e - 1):
            self.omega_pows.append(self.omega_pows[-1] * self.omega % ell)
        self.dlog = {w: i for i, w in enumerate(self.omega_pows)}

    def _primitive_root(self):
        ell = self.ell
        factors = prime_factors(ell - 1)
        for g in range(2, ell):
            if all(pow(g, (ell - 1) // q, ell) != 1 for q in factors):
                return g
        raise AssertionError


def dixon_lift(values_mod_ell, e: int, field: DixonField, degree_bound: int) -> Cyclotomic:
    """Recover sum m_j zeta_e^j from its residues at the e power classes.

    ``values_mod_ell[k]`` must be the residue of the value at the k-th power,
    k = 0..e-1.  The multiplicities satisfy 0 <= m_j <= degree_bound < ell.
    """
    ell = field.ell
    assert len(values_mod_ell) == e and field.e % e == 0
    step = field.e // e
    inv_e = pow(e, ell - 2, ell)
    expansion = {}
    for j in range(e):
        s = 0
        for k in range(e):
            s += values_mod_ell[k] * field.omega_pows[(-j * k * step) % field.e]
        m_j = s % ell * inv_e % ell
        if m_j:
            if m_j > degree_bound:
                raise LiftInconsistent(
                    f"multiplicity {m_j} exceeds degree bound {degree_bound}")
            expansion[j] = m_j
    return Cyclotomic.from_expansion(e, expansion) if expansion else ZERO


def reduce_mod_ell(value: Cyclotomic, e: int, field: DixonField) -> int:
    """Residue of an algebraic integer in Q(zeta_e) under zeta_e -> omega."""
    if not value.is_algebraic_integer():
        raise NotAlgebraicInteger(f"{value!r} is not an algebraic integer")
    assert field.e % value.n == 0 if value.n > 1 else True
    step = field.e // value.n if value.n > 1 else 0
    s = 0
    for i, c in enumerate(value.coeffs):
        if c:
            s += c * field.omega_pows[(i * step) % field.e]
    return s % field.ell


def reduce_mod_p(value: Cyclotomic, p: int, ctx: PrimeFieldCtx):
    """Image of an algebraic integer under a fixed prime ideal over p.

    The p-part of the conductor collapses to 1; the p'-part maps to the
    context's primitive root convention.
    """
    if not value.is_algebraic_integer():
        raise NotAlgebraicInteger(f"{value!r} is not an algebraic integer")
    n = value.n
    if n == 1:
        return ctx.scalar(value.coeffs[0])
    n_p = 1
    n_rest = n
    while n_rest % p == 0:
        n_p *= p
        n_rest //= p
    if n_rest > 1 and ctx.e % n_rest != 0:
        raise ValueError(f"context supports conductors dividing {ctx.e}, got {n_rest}")
    if n_rest == 1:
        image_of_zeta = ctx.one
    else:
        # zeta_n = zeta_{n_p}^x zeta_{n_rest}^y with x n_rest + y n_p = 1 (mod n)
        y = pow(n_p, -1, n_rest)
        image_of_zeta = ctx.pow(ctx.omega, (ctx.e // n_rest) * y % ctx.e)
    out = ctx.zero
    power = ctx.one
    for c in value.coeffs:
        if c:
            term = ctx.mul(ctx.scalar(c), power)
            out = ctx.add(out, term)
        power = ctx.mul(power, image_of_zeta)
    return out
