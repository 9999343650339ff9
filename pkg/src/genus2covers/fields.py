"""Exact field arithmetic: prime fields F_p, one extension F_p[t]/(m), and Q.

A :class:`Field` owns the arithmetic on *raw* representations:

* prime field   -- ints in ``[0, p)``
* extension     -- tuples of ``deg`` ints (coefficients of t^0, t^1, ...)
* rationals     -- ``fractions.Fraction`` in lowest terms

:class:`FieldElem` wraps a raw value together with its field and overloads
the usual operators; ints coerce automatically.  All values are immutable,
so fields and elements can be shared freely between threads.

The characteristic is never 2 and extension moduli are verified irreducible
at construction time.  Elements carry a canonical total order (residue value
for prime fields, lexicographic coefficient order for extensions, numeric
order for Q) used for deterministic root labelling and square-root signs.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import Genus2Error


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid far beyond 64 bits."""
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


# ---------------------------------------------------------------------------
# dense polynomial helpers over F_p (coefficient lists, constant term first)
# used only for modulus construction / irreducibility testing


def _poly_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mulmod(a, b, m, p):
    res = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                res[i + j] = (res[i + j] + ai * bj) % p
    return _poly_remainder(res, m, p)


def _poly_remainder(a, m, p):
    a = list(a)
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) - 1 >= dm and _poly_trim(a):
        if not a:
            break
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
        _poly_trim(a)
    return a


def _poly_powmod(a, e, m, p):
    result = [1]
    base = _poly_remainder(a, m, p)
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, m, p)
        base = _poly_mulmod(base, base, m, p)
        e >>= 1
    return result


def _poly_gcd(a, b, p):
    a, b = list(a), list(b)
    while b:
        a = _poly_remainder(a, b, p)
        a, b = b, a
    return a


def _is_irreducible(m, p):
    """Check irreducibility of m over F_p (m given constant-first, monic-ish)."""
    d = len(m) - 1
    if d < 1:
        return False
    x = [0, 1]
    # x^(p^d) == x mod m
    xp = _poly_powmod(x, p ** d, m, p)
    lhs = _poly_trim([(xp[i] if i < len(xp) else 0) - (x[i] if i < len(x) else 0)
                      for i in range(max(len(xp), len(x)))])
    if any(c % p for c in lhs):
        return False
    # gcd(x^(p^(d/l)) - x, m) == 1 for each prime l | d
    for ell in {q for q in range(2, d + 1) if d % q == 0 and is_prime(q)}:
        xq = _poly_powmod(x, p ** (d // ell), m, p)
        diff = [(xq[i] if i < len(xq) else 0) - (x[i] if i < len(x) else 0) for i in range(max(len(xq), len(x)))]
        diff = _poly_trim([c % p for c in diff])
        g = _poly_gcd(list(m), diff, p)
        if len(g) != 1:
            return False
    return True


def find_irreducible(p: int, d: int):
    """Smallest monic irreducible of degree d over F_p in lexicographic order.

    Coefficients (c_0, ..., c_{d-1}) of the non-leading part are enumerated
    in lexicographic order with c_{d-1} varying slowest, so the choice is
    deterministic for a given (p, d).
    """
    if d == 1:
        return (0, 1)
    # counter encodes the lower coefficients base p, least significant = c_0
    for counter in range(p ** d):
        coeffs = []
        c = counter
        for _ in range(d):
            coeffs.append(c % p)
            c //= p
        m = coeffs + [1]
        if _is_irreducible(m, p):
            return tuple(m)
    raise Genus2Error(f"no irreducible polynomial of degree {d} over F_{p}")  # unreachable


# ---------------------------------------------------------------------------


class Field:
    """A concrete exact field: F_p, F_p[t]/(m(t)), or Q.

    Construct through :meth:`prime`, :meth:`extension`, or :meth:`rationals`.
    Instances are immutable and hashable by construction data.
    """

    def __init__(self, kind, p=0, modulus=None):
        if kind not in ("prime", "ext", "rational"):
            raise ValueError(kind)
        self.kind = kind
        self.p = p
        self.modulus = modulus  # tuple, constant first, monic, for "ext"
        if kind == "rational":
            self.deg = 1
            self.order = None
        elif kind == "prime":
            if not is_prime(p):
                raise Genus2Error(f"{p} is not prime")
            if p == 2:
                raise Genus2Error("characteristic 2 is not supported")
            self.deg = 1
            self.order = p
        else:
            if not is_prime(p):
                raise Genus2Error(f"{p} is not prime")
            if p == 2:
                raise Genus2Error("characteristic 2 is not supported")
            if modulus is None or len(modulus) < 3 or modulus[-1] != 1:
                raise Genus2Error("extension modulus must be monic of degree >= 2")
            if not _is_irreducible(list(modulus), p):
                raise Genus2Error("extension modulus is reducible")
            self.deg = len(modulus) - 1
            self.order = p ** self.deg
        self._red = None          # cached numpy reduction matrix
        self._frob_mat = None     # cached Frobenius matrix over F_p
        self._nonres = None       # cached quadratic non-residue

    # -- constructors ------------------------------------------------------

    @staticmethod
    def prime(p: int) -> "Field":
        return Field("prime", p)

    @staticmethod
    def extension(p: int, d: int, modulus=None) -> "Field":
        if d == 1 and modulus is None:
            return Field.prime(p)
        if modulus is None:
            modulus = find_irreducible(p, d)
        return Field("ext", p, tuple(int(c) % p for c in modulus))

    @staticmethod
    def rationals() -> "Field":
        return Field("rational")

    # -- identity ----------------------------------------------------------

    def __eq__(self, other):
        return (isinstance(other, Field) and self.kind == other.kind
                and self.p == other.p and self.modulus == other.modulus)

    def __hash__(self):
        return hash((self.kind, self.p, self.modulus))

    def __repr__(self):
        if self.kind == "rational":
            return "Q"
        if self.kind == "prime":
            return f"F{self.p}"
        return f"F{self.p}^{self.deg}"

    @property
    def char(self):
        return 0 if self.kind == "rational" else self.p

    def is_finite(self):
        return self.kind != "rational"

    # -- raw arithmetic ----------------------------------------------------

    def zero(self):
        if self.kind == "prime":
            return 0
        if self.kind == "ext":
            return (0,) * self.deg
        return Fraction(0)

    def one(self):
        return self.from_int(1)

    def from_int(self, n: int):
        if self.kind == "prime":
            return n % self.p
        if self.kind == "ext":
            return (n % self.p,) + (0,) * (self.deg - 1)
        return Fraction(n)

    def coerce(self, v):
        """Raw value from int, Fraction, FieldElem, or raw representation."""
        if isinstance(v, FieldElem):
            if v.field != self:
                raise Genus2Error(f"element of {v.field} used in {self}")
            return v.v
        if isinstance(v, bool):
            raise Genus2Error("bool is not a field element")
        if isinstance(v, int):
            return self.from_int(v)
        if self.kind == "rational" and isinstance(v, Fraction):
            return v
        if self.kind == "prime" and isinstance(v, int):
            return v % self.p
        if self.kind == "ext" and isinstance(v, tuple) and len(v) == self.deg:
            return v
        raise Genus2Error(f"cannot coerce {v!r} into {self}")

    def add(self, a, b):
        if self.kind == "prime":
            return (a + b) % self.p
        if self.kind == "ext":
            return tuple((x + y) % self.p for x, y in zip(a, b))
        return a + b

    def sub(self, a, b):
        if self.kind == "prime":
            return (a - b) % self.p
        if self.kind == "ext":
            return tuple((x - y) % self.p for x, y in zip(a, b))
        return a - b

    def neg(self, a):
        if self.kind == "prime":
            return (-a) % self.p
        if self.kind == "ext":
            return tuple((-x) % self.p for x in a)
        return -a

    def mul(self, a, b):
        if self.kind == "prime":
            return a * b % self.p
        if self.kind == "rational":
            return a * b
        p, d, m = self.p, self.deg, self.modulus
        full = [0] * (2 * d - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    full[i + j] += ai * bj
        # reduce degree >= d terms using t^k = -(m_0 + ... + m_{d-1} t^{d-1}) t^(k-d)
        for k in range(2 * d - 2, d - 1, -1):
            c = full[k] % p
            if c:
                full[k] = 0
                for i in range(d):
                    full[k - d + i] -= c * m[i]
        return tuple(x % p for x in full[:d])

    def is_zero(self, a):
        if self.kind == "ext":
            return not any(a)
        return a == 0

    def inv(self, a):
        if self.is_zero(a):
            raise ZeroDivisionError(f"inversion of zero in {self}")
        if self.kind == "prime":
            return pow(a, self.p - 2, self.p)
        if self.kind == "rational":
            return 1 / a
        # extended Euclid of a (as polynomial) against the modulus
        p = self.p
        r0, r1 = list(self.modulus), _poly_trim(list(a))
        s0, s1 = [], [1]
        while len(r1) > 1:
            # divide r0 by r1
            q, rem = _poly_divmod_fp(r0, r1, p)
            r0, r1 = r1, rem
            s0, s1 = s1, _poly_sub_fp(s0, _poly_mul_fp(q, s1, p), p)
        if not r1:
            raise ZeroDivisionError("non-invertible element")  # cannot happen: modulus irreducible
        c = pow(r1[0], p - 2, p)
        out = [x * c % p for x in s1]
        out += [0] * (self.deg - len(out))
        return tuple(out[: self.deg])

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pw(self, a, e: int):
        if e < 0:
            return self.pw(self.inv(a), -e)
        result = self.one()
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def eq(self, a, b):
        return a == b

    # -- order, iteration, randomness ---------------------------------------

    def key(self, a):
        """Canonical sort key: residue / coefficient tuple / numeric value."""
        if self.kind == "prime":
            return (a,)
        if self.kind == "ext":
            return a
        return a

    def elements(self):
        """Iterate all elements in canonical order. Finite fields only."""
        if self.kind == "prime":
            yield from range(self.p)
        elif self.kind == "ext":
            p, d = self.p, self.deg
            for counter in range(self.order):
                coeffs = []
                c = counter
                for _ in range(d):
                    coeffs.append(c % p)
                    c //= p
                # counter base-p digits give c_{d-1} fastest when reversed;
                # iterate most-significant last so order is lexicographic
                yield tuple(reversed(coeffs))
        else:
            raise Genus2Error("cannot enumerate Q")

    def rand(self, rng):
        if self.kind == "prime":
            return rng.randrange(self.p)
        if self.kind == "ext":
            return tuple(rng.randrange(self.p) for _ in range(self.deg))
        return Fraction(rng.randrange(-10, 11), rng.randrange(1, 11))

    # -- powers of Frobenius -------------------------------------------------

    def frobenius(self, a, times: int = 1):
        """a^(p^times); identity on prime fields and on Q."""
        if self.kind != "ext":
            return a
        return self.pw(a, self.p ** (times % self.deg))

    # -- square roots --------------------------------------------------------

    def is_square(self, a):
        if self.kind == "rational":
            return a >= 0 and _fraction_sqrt(a) is not None
        if self.is_zero(a):
            return True
        return self.eq(self.pw(a, (self.order - 1) // 2), self.one())

    def sqrt(self, a):
        """Canonical square root (smaller of the two under key), or None.

        Tonelli-Shanks over F_q, with the exponentiation shortcut when
        q = 3 (mod 4).  Over Q only perfect squares of the stored fraction
        are recognized.
        """
        if self.kind == "rational":
            return _fraction_sqrt(a)
        if self.is_zero(a):
            return a
        q = self.order
        if not self.eq(self.pw(a, (q - 1) // 2), self.one()):
            return None
        if q % 4 == 3:
            r = self.pw(a, (q + 1) // 4)
        else:
            r = self._tonelli(a)
        r2 = self.neg(r)
        return r if self.key(r) <= self.key(r2) else r2

    def _non_residue(self):
        """Deterministic cached quadratic non-residue.

        Prime-subfield scalars are always squares in even-degree extensions,
        so the scan mixes in the generator first.  The choice never affects
        sqrt output (the canonical root is picked afterwards), only speed.
        """
        if self._nonres is None:
            q = self.order
            candidates = self.elements()
            if self.kind == "ext":
                def gen():
                    for c in range(self.p):
                        yield (c, 1) + (0,) * (self.deg - 2)
                    yield from self.elements()
                candidates = gen()
            for cand in candidates:
                if not self.is_zero(cand) and \
                        not self.eq(self.pw(cand, (q - 1) // 2), self.one()):
                    self._nonres = cand
                    break
        return self._nonres

    def _tonelli(self, a):
        q = self.order
        s, t = 0, q - 1
        while t % 2 == 0:
            t //= 2
            s += 1
        c = self.pw(self._non_residue(), t)
        r = self.pw(a, (t + 1) // 2)
        u = self.pw(a, t)
        m = s
        one = self.one()
        while not self.eq(u, one):
            # find least i with u^(2^i) = 1
            i, v = 0, u
            while not self.eq(v, one):
                v = self.mul(v, v)
                i += 1
            b = self.pw(c, 1 << (m - i - 1))
            r = self.mul(r, b)
            c = self.mul(b, b)
            u = self.mul(u, c)
            m = i
        return r

    # -- serialization --------------------------------------------------------

    def fmt(self, a) -> str:
        """Decimal-string form used in all JSON output."""
        if self.kind == "prime":
            return str(a)
        if self.kind == "rational":
            return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"
        return ",".join(str(c) for c in a)

    def parse(self, s: str):
        if self.kind == "prime":
            return int(s) % self.p
        if self.kind == "rational":
            return Fraction(s)
        parts = [int(c) % self.p for c in str(s).split(",")]
        parts += [0] * (self.deg - len(parts))
        return tuple(parts[: self.deg])

    def spec_string(self) -> str:
        """Field spec as understood by the CLI: Q, F<p>, or F<p>^<d>."""
        return repr(self)


def _fraction_sqrt(a: Fraction):
    if a < 0:
        return None
    import math
    rn = math.isqrt(a.numerator)
    rd = math.isqrt(a.denominator)
    if rn * rn == a.numerator and rd * rd == a.denominator:
        return Fraction(rn, rd)
    return None


def parse_field_spec(spec: str) -> Field:
    """Parse "Q", "F<p>", or "F<p>^<d>"."""
    spec = spec.strip()
    if spec == "Q":
        return Field.rationals()
    if spec.startswith("F"):
        body = spec[1:]
        if "^" in body:
            ps, ds = body.split("^")
            return Field.extension(int(ps), int(ds))
        return Field.prime(int(body))
    raise Genus2Error(f"bad field spec {spec!r}")


# -- helpers for the extended Euclid above (F_p coefficient lists) -----------


def _poly_divmod_fp(a, b, p):
    a = list(a)
    db = len(b) - 1
    inv_lead = pow(b[-1], p - 2, p)
    q = [0] * max(len(a) - db, 0)
    while len(a) - 1 >= db and a:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - db
        q[shift] = c
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bi) % p
        _poly_trim(a)
    return _poly_trim(q), a


def _poly_mul_fp(a, b, p):
    if not a or not b:
        return []
    res = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                res[i + j] = (res[i + j] + ai * bj) % p
    return _poly_trim(res)


def _poly_sub_fp(a, b, p):
    n = max(len(a), len(b))
    res = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)]
    return _poly_trim(res)


class FieldElem:
    """A field element: raw value + owning field, with operator sugar."""

    __slots__ = ("field", "v")

    def __init__(self, field: Field, v):
        self.field = field
        self.v = field.coerce(v)

    def _rhs(self, other):
        if isinstance(other, FieldElem):
            if other.field != self.field:
                raise Genus2Error("mixed fields")
            return other.v
        return self.field.coerce(other)

    def __add__(self, other):
        return FieldElem(self.field, self.field.add(self.v, self._rhs(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElem(self.field, self.field.sub(self.v, self._rhs(other)))

    def __rsub__(self, other):
        return FieldElem(self.field, self.field.sub(self._rhs(other), self.v))

    def __mul__(self, other):
        return FieldElem(self.field, self.field.mul(self.v, self._rhs(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElem(self.field, self.field.div(self.v, self._rhs(other)))

    def __rtruediv__(self, other):
        return FieldElem(self.field, self.field.div(self._rhs(other), self.v))

    def __pow__(self, e):
        return FieldElem(self.field, self.field.pw(self.v, e))

    def __neg__(self):
        return FieldElem(self.field, self.field.neg(self.v))

    def __eq__(self, other):
        if isinstance(other, (int, FieldElem, Fraction)):
            return self.field.eq(self.v, self._rhs(other))
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.v))

    def __bool__(self):
        return not self.field.is_zero(self.v)

    def __repr__(self):
        return f"{self.field.fmt(self.v)}"

    def key(self):
        return self.field.key(self.v)


def elem(field: Field, v) -> FieldElem:
    return FieldElem(field, v)
