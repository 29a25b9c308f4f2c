"""Exact scalar arithmetic over the four supported coefficient fields.

Supported fields: the rationals, the degree-4 cyclotomic extension obtained by
adjoining a primitive 8th root of unity (which contains a square root of -1
and a square root of 2), prime fields GF(p) for odd p, and quadratic
extensions GF(p^2).

Field elements are plain hashable values (Fraction, Cyclo, int, or an int
pair) and all arithmetic used in hot loops goes through the methods of the
field descriptor, which avoids per-element dispatch overhead.  Distinguished
square roots are fixed deterministically at descriptor construction so every
downstream basis conversion is reproducible bit for bit.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import DivisionByZero, MixedFields, NotAvailable

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid far beyond any modulus used here."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
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


def sqrt_mod(a: int, p: int) -> int | None:
    """Least positive square root of a modulo an odd prime p, or None."""
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        r = pow(a, (p + 1) // 4, p)
        return min(r, p - r)
    # Tonelli-Shanks
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return min(r, p - r)


class Cyclo:
    """Element of Q[x]/(x^4 + 1), coordinates over 1, z, z^2, z^3 with z^4 = -1.

    Stored as four integer numerators over one positive denominator, with the
    content of the five integers coprime.
    """

    __slots__ = ("nums", "den")

    def __init__(self, nums, den=1):
        if den == 0:
            raise DivisionByZero("zero denominator")
        n0, n1, n2, n3 = nums
        if den < 0:
            n0, n1, n2, n3, den = -n0, -n1, -n2, -n3, -den
        g = math.gcd(math.gcd(math.gcd(n0, n1), math.gcd(n2, n3)), den)
        if g > 1:
            n0, n1, n2, n3, den = n0 // g, n1 // g, n2 // g, n3 // g, den // g
        self.nums = (n0, n1, n2, n3)
        self.den = den

    @staticmethod
    def from_rational(q) -> "Cyclo":
        q = Fraction(q)
        return Cyclo((q.numerator, 0, 0, 0), q.denominator)

    def __add__(self, other):
        other = _as_cyclo(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.nums, other.nums
        da, db = self.den, other.den
        return Cyclo(tuple(x * db + y * da for x, y in zip(a, b)), da * db)

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_cyclo(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.nums, other.nums
        da, db = self.den, other.den
        return Cyclo(tuple(x * db - y * da for x, y in zip(a, b)), da * db)

    def __rsub__(self, other):
        other = _as_cyclo(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = _as_cyclo(other)
        if other is NotImplemented:
            return NotImplemented
        a0, a1, a2, a3 = self.nums
        b0, b1, b2, b3 = other.nums
        return Cyclo(
            (
                a0 * b0 - a1 * b3 - a2 * b2 - a3 * b1,
                a0 * b1 + a1 * b0 - a2 * b3 - a3 * b2,
                a0 * b2 + a1 * b1 + a2 * b0 - a3 * b3,
                a0 * b3 + a1 * b2 + a2 * b1 + a3 * b0,
            ),
            self.den * other.den,
        )

    __rmul__ = __mul__

    def __neg__(self):
        return Cyclo(tuple(-x for x in self.nums), self.den)

    def galois(self, k: int) -> "Cyclo":
        """Image under z -> z^k for odd k."""
        out = [0, 0, 0, 0]
        for i, c in enumerate(self.nums):
            e = (i * k) % 8
            if e < 4:
                out[e] += c
            else:
                out[e - 4] -= c
        return Cyclo(tuple(out), self.den)

    def inverse(self) -> "Cyclo":
        if not self:
            raise DivisionByZero("inverse of zero")
        w = self.galois(3) * self.galois(5) * self.galois(7)
        n = self * w
        if n.nums[1] or n.nums[2] or n.nums[3]:
            raise AssertionError("norm is not rational")
        return w * Cyclo((n.den, 0, 0, 0), n.nums[0])

    def __truediv__(self, other):
        other = _as_cyclo(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _as_cyclo(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = Cyclo((1, 0, 0, 0))
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __bool__(self):
        return any(self.nums)

    def __eq__(self, other):
        other = _as_cyclo(other)
        if other is NotImplemented:
            return NotImplemented
        return self.nums == other.nums and self.den == other.den

    def __hash__(self):
        return hash((self.nums, self.den))

    def rational_part(self) -> Fraction | None:
        """The element as a Fraction if it lies in the prime field, else None."""
        if self.nums[1] or self.nums[2] or self.nums[3]:
            return None
        return Fraction(self.nums[0], self.den)

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.nums):
            if c == 0:
                continue
            basis = "" if i == 0 else ("z" if i == 1 else f"z^{i}")
            coeff = str(c) if self.den == 1 else f"{c}/{self.den}"
            terms.append(coeff if i == 0 else (f"{coeff}*{basis}" if abs(c) != 1 or self.den != 1 else ("-" + basis if c < 0 else basis)))
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"


def _as_cyclo(x):
    if isinstance(x, Cyclo):
        return x
    if isinstance(x, (int, Fraction)):
        return Cyclo.from_rational(x)
    return NotImplemented


class Field:
    """Descriptor of one of the supported exact fields.

    Subclasses set `kind`, `characteristic`, `zero`, `one` and implement the
    element-level operations.  Elements themselves are plain values; mixing
    values from different descriptors is the caller's responsibility and is
    policed at the algebra layer via :func:`ensure_same_field`.
    """

    kind = "?"
    characteristic = 0

    def from_int(self, n: int):
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def div(self, a, b):
        if self.is_zero(b):
            raise DivisionByZero("division by zero")
        return self.mul(a, self.inv(b))

    def is_zero(self, a) -> bool:
        return a == self.zero

    def pow(self, a, n: int):
        if n < 0:
            return self.pow(self.inv(a), -n)
        result = self.one
        while n:
            if n & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            n >>= 1
        return result

    def half(self):
        return self.inv(self.from_int(2))

    def sqrt_minus_one(self):
        raise NotAvailable(f"no square root of -1 fixed in {self.kind}")

    def sqrt_two(self):
        raise NotAvailable(f"no square root of 2 fixed in {self.kind}")

    def has_sqrt_minus_one(self) -> bool:
        try:
            self.sqrt_minus_one()
            return True
        except NotAvailable:
            return False

    def has_sqrt_two(self) -> bool:
        try:
            self.sqrt_two()
            return True
        except NotAvailable:
            return False

    def eighth_roots(self):
        """The cyclic group of 8th roots of unity as [z^0, ..., z^7], or None."""
        try:
            i = self.sqrt_minus_one()
            s2 = self.sqrt_two()
        except NotAvailable:
            return None
        zeta = self.div(self.add(self.one, i), s2)
        roots = [self.one]
        for _ in range(7):
            roots.append(self.mul(roots[-1], zeta))
        return roots

    def elements(self):
        raise NotAvailable(f"{self.kind} is infinite")

    def size(self) -> int | None:
        return None

    def random(self, rng):
        raise NotImplementedError

    def describe(self) -> dict:
        return {"kind": self.kind}

    def __eq__(self, other):
        return isinstance(other, Field) and self.describe() == other.describe()

    def __hash__(self):
        return hash(tuple(sorted(self.describe().items())))

    def __repr__(self):
        return self.kind


class Rationals(Field):
    kind = "q"
    characteristic = 0

    def __init__(self):
        self.zero = Fraction(0)
        self.one = Fraction(1)

    def from_int(self, n):
        return Fraction(n)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise DivisionByZero("inverse of zero")
        return 1 / a

    def is_zero(self, a):
        return a == 0

    def random(self, rng):
        return Fraction(rng.randint(-9, 9), rng.randint(1, 9))


class Cyclotomic8(Field):
    """Q with a primitive 8th root of unity z adjoined; i := z^2, sqrt2 := z - z^3."""

    kind = "qzeta8"
    characteristic = 0

    def __init__(self):
        self.zero = Cyclo((0, 0, 0, 0))
        self.one = Cyclo((1, 0, 0, 0))
        self.zeta = Cyclo((0, 1, 0, 0))
        self._i = Cyclo((0, 0, 1, 0))
        self._sqrt2 = Cyclo((0, 1, 0, -1))

    def from_int(self, n):
        return Cyclo((n, 0, 0, 0))

    def from_rational(self, q):
        return Cyclo.from_rational(q)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        return a.inverse()

    def is_zero(self, a):
        return not a

    def sqrt_minus_one(self):
        return self._i

    def sqrt_two(self):
        return self._sqrt2

    def eighth_roots(self):
        roots = [self.one]
        for _ in range(7):
            roots.append(roots[-1] * self.zeta)
        return roots

    def random(self, rng):
        return Cyclo(tuple(rng.randint(-6, 6) for _ in range(4)), rng.randint(1, 6))


class PrimeField(Field):
    """GF(p) for an odd prime p; elements are ints in [0, p)."""

    def __init__(self, p: int):
        if p == 2:
            raise ValueError("characteristic 2 is not supported")
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.kind = f"gf({p})"
        self.characteristic = p
        self.zero = 0
        self.one = 1 % p

    def from_int(self, n):
        return n % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise DivisionByZero("inverse of zero")
        return pow(a, self.p - 2, self.p)

    def is_zero(self, a):
        return a == 0

    def sqrt_minus_one(self):
        r = sqrt_mod(self.p - 1, self.p)
        if r is None:
            raise NotAvailable(f"-1 is not a square mod {self.p}")
        return r

    def sqrt_two(self):
        r = sqrt_mod(2, self.p)
        if r is None:
            raise NotAvailable(f"2 is not a square mod {self.p}")
        return r

    def elements(self):
        return range(self.p)

    def size(self):
        return self.p

    def random(self, rng):
        return rng.randrange(self.p)

    def describe(self):
        return {"kind": "gfp", "p": self.p}

    def __repr__(self):
        return f"GF({self.p})"


def least_nonresidue(p: int) -> int:
    for d in range(2, p):
        if pow(d, (p - 1) // 2, p) == p - 1:
            return d
    raise ValueError(f"no quadratic nonresidue mod {p}")


class QuadExtField(Field):
    """GF(p^2) = GF(p)(theta) with theta^2 = d, d a quadratic nonresidue mod p.

    Elements are pairs (a, b) of ints representing a + b*theta.
    """

    def __init__(self, p: int, d: int | None = None):
        if not is_prime(p) or p == 2:
            raise ValueError(f"bad characteristic {p}")
        if d is None:
            d = least_nonresidue(p)
        d %= p
        if pow(d, (p - 1) // 2, p) != p - 1:
            raise ValueError(f"{d} is a quadratic residue mod {p}")
        self.p = p
        self.d = d
        self.kind = f"gf({p}^2)"
        self.characteristic = p
        self.zero = (0, 0)
        self.one = (1 % p, 0)
        self.theta = (0, 1)

    def from_int(self, n):
        return (n % self.p, 0)

    def add(self, a, b):
        p = self.p
        return ((a[0] + b[0]) % p, (a[1] + b[1]) % p)

    def sub(self, a, b):
        p = self.p
        return ((a[0] - b[0]) % p, (a[1] - b[1]) % p)

    def mul(self, a, b):
        p = self.p
        a0, a1 = a
        b0, b1 = b
        return ((a0 * b0 + a1 * b1 * self.d) % p, (a0 * b1 + a1 * b0) % p)

    def neg(self, a):
        p = self.p
        return (-a[0] % p, -a[1] % p)

    def inv(self, a):
        p = self.p
        a0, a1 = a
        den = (a0 * a0 - a1 * a1 * self.d) % p
        if den == 0:
            raise DivisionByZero("inverse of zero")
        di = pow(den, p - 2, p)
        return (a0 * di % p, -a1 * di % p)

    def is_zero(self, a):
        return a == (0, 0)

    def sqrt_minus_one(self):
        p = self.p
        r = sqrt_mod(p - 1, p)
        if r is not None:
            return (r, 0)
        # -1/d is a residue exactly when -1 is not, by multiplicativity.
        b = sqrt_mod(-pow(self.d, p - 2, p) % p, p)
        return (0, b)

    def sqrt_two(self):
        p = self.p
        r = sqrt_mod(2, p)
        if r is not None:
            return (r, 0)
        b = sqrt_mod(2 * pow(self.d, p - 2, p) % p, p)
        return (0, b)

    def elements(self):
        return ((a, b) for a in range(self.p) for b in range(self.p))

    def size(self):
        return self.p * self.p

    def random(self, rng):
        return (rng.randrange(self.p), rng.randrange(self.p))

    def describe(self):
        return {"kind": "gfp2", "p": self.p, "d": self.d}

    def __repr__(self):
        return f"GF({self.p}^2; theta^2={self.d})"


def ensure_same_field(a: Field, b: Field):
    if a != b:
        raise MixedFields(f"cannot mix elements of {a!r} and {b!r}")


def parse_field(spec: str) -> Field:
    """Parse a CLI field spec: q | qzeta8 | gf:<p> | gf2:<p>[:<d>]."""
    parts = spec.split(":")
    if parts[0] == "q" and len(parts) == 1:
        return Rationals()
    if parts[0] == "qzeta8" and len(parts) == 1:
        return Cyclotomic8()
    if parts[0] == "gf" and len(parts) == 2:
        return PrimeField(int(parts[1]))
    if parts[0] == "gf2" and len(parts) in (2, 3):
        p = int(parts[1])
        d = int(parts[2]) if len(parts) == 3 else None
        return QuadExtField(p, d)
    raise ValueError(f"unrecognized field spec {spec!r}")


def field_from_descriptor(desc: dict) -> Field:
    kind = desc["kind"]
    if kind == "q":
        return Rationals()
    if kind == "qzeta8":
        return Cyclotomic8()
    if kind == "gfp":
        return PrimeField(desc["p"])
    if kind == "gfp2":
        return QuadExtField(desc["p"], desc.get("d"))
    raise ValueError(f"unrecognized field descriptor {desc!r}")


def gf9() -> QuadExtField:
    """The canonical characteristic-3 field GF(3)(theta), theta^2 = -1."""
    return QuadExtField(3, 2)
