"""Exact scalar arithmetic for the supported base rings.

Four rings are supported: the integers Z, the rationals Q, prime fields
F_p, and residue rings Z/N.  Scalars are plain python values (``int`` for
Z and residue rings, ``fractions.Fraction`` for Q), kept canonical by the
ring object: residues live in ``[0, N)`` and Fractions are already reduced
with positive denominator.  All arithmetic is arbitrary precision.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Extended gcd: returns (g, s, t) with s*a + t*b = g >= 0."""
    r0, r1 = a, b
    s0, s1 = 1, 0
    t0, t1 = 0, 1
    while r1 != 0:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0 < 0:
        r0, s0, t0 = -r0, -s0, -t0
    return r0, s0, t0


class Ring:
    """Base class for the supported exact scalar rings."""

    is_field = False
    is_finite = False
    #: cardinality for finite rings, None otherwise
    size: int | None = None

    def normalize(self, x):
        raise NotImplementedError

    @property
    def zero(self):
        return self.normalize(0)

    @property
    def one(self):
        return self.normalize(1)

    def add(self, a, b):
        return self.normalize(a + b)

    def sub(self, a, b):
        return self.normalize(a - b)

    def mul(self, a, b):
        return self.normalize(a * b)

    def neg(self, a):
        return self.normalize(-a)

    def is_zero(self, a) -> bool:
        return self.normalize(a) == self.zero

    def is_unit(self, a) -> bool:
        raise NotImplementedError

    def inv(self, a):
        """Inverse of a unit; raises ZeroDivisionError otherwise."""
        raise NotImplementedError

    def solve_scalar(self, a, b):
        """Some x with x*a = b, or None if there is none."""
        raise NotImplementedError

    def elements(self):
        """Iterate all elements (finite rings only)."""
        raise ValueError(f"{self} is not finite")

    def __eq__(self, other):
        return type(self) is type(other) and self.__dict__ == other.__dict__

    def __hash__(self):
        return hash((type(self).__name__, tuple(sorted(self.__dict__.items()))))


class IntegerRing(Ring):
    def normalize(self, x):
        if isinstance(x, Fraction):
            if x.denominator != 1:
                raise ValueError(f"{x} is not an integer")
            return x.numerator
        return int(x)

    def is_unit(self, a) -> bool:
        return a in (1, -1)

    def inv(self, a):
        if a in (1, -1):
            return a
        raise ZeroDivisionError(f"{a} is not a unit in Z")

    def solve_scalar(self, a, b):
        if a == 0:
            return 0 if b == 0 else None
        if b % a == 0:
            return b // a
        return None

    def __repr__(self):
        return "Z"


class RationalField(Ring):
    is_field = True

    def normalize(self, x):
        return Fraction(x)

    def is_unit(self, a) -> bool:
        return Fraction(a) != 0

    def inv(self, a):
        return 1 / Fraction(a)

    def solve_scalar(self, a, b):
        a, b = Fraction(a), Fraction(b)
        if a == 0:
            return Fraction(0) if b == 0 else None
        return b / a

    def __repr__(self):
        return "Q"


class ResidueRing(Ring):
    """Z/N for N >= 2, elements stored as ints in [0, N)."""

    is_finite = True

    def __init__(self, modulus: int):
        modulus = int(modulus)
        if modulus < 2:
            raise ValueError(f"modulus must be >= 2, got {modulus}")
        self.modulus = modulus
        self.size = modulus

    def normalize(self, x):
        if isinstance(x, Fraction):
            num, den = x.numerator, x.denominator
            g = gcd(den, self.modulus)
            if g != 1:
                raise ValueError(f"{x} has no image in Z/{self.modulus}")
            _, s, _ = xgcd(den, self.modulus)
            return (num * s) % self.modulus
        return int(x) % self.modulus

    def is_unit(self, a) -> bool:
        return gcd(int(a), self.modulus) == 1

    def inv(self, a):
        g, s, _ = xgcd(int(a) % self.modulus, self.modulus)
        if g != 1:
            raise ZeroDivisionError(f"{a} is not a unit in Z/{self.modulus}")
        return s % self.modulus

    def solve_scalar(self, a, b):
        N = self.modulus
        a, b = int(a) % N, int(b) % N
        g = gcd(a, N)
        if g == 0:  # a == 0 and N == 0 cannot happen, but a == 0 can
            return 0 if b == 0 else None
        if b % g != 0:
            return None
        # (a/g) is a unit mod N/g; lift any solution back to Z/N.
        if N // g == 1:
            return 0
        _, s, _ = xgcd(a // g, N // g)
        return ((b // g) * s) % (N // g)

    def elements(self):
        return range(self.modulus)

    def prime_power(self) -> tuple[int, int] | None:
        """(p, n) with modulus == p**n, or None if not a prime power."""
        N = self.modulus
        p = 2
        while p * p <= N:
            if N % p == 0:
                n = 0
                while N % p == 0:
                    N //= p
                    n += 1
                return (p, n) if N == 1 else None
            p += 1
        return (self.modulus, 1)

    def __repr__(self):
        return f"Z/{self.modulus}"


class PrimeField(ResidueRing):
    is_field = True

    def __init__(self, p: int):
        if not _is_prime(int(p)):
            raise ValueError(f"{p} is not prime")
        super().__init__(p)

    @property
    def p(self):
        return self.modulus

    def __repr__(self):
        return f"F_{self.modulus}"


ZZ = IntegerRing()
QQ = RationalField()


def GF(p: int) -> PrimeField:
    return PrimeField(p)


def Zmod(N: int) -> ResidueRing:
    """Z/N; returns a PrimeField when N is prime."""
    if _is_prime(int(N)):
        return PrimeField(N)
    return ResidueRing(N)


class RingHom:
    """One of the supported base-change maps between scalar rings.

    Supported: identity, Z -> Z/N, Z -> Q, and Z/p^n -> Z/p^m with m <= n.
    """

    def __init__(self, source: Ring, target: Ring):
        self.source = source
        self.target = target
        if source == target:
            pass
        elif isinstance(source, IntegerRing) and isinstance(target, (ResidueRing, RationalField)):
            pass
        elif isinstance(source, ResidueRing) and isinstance(target, ResidueRing):
            sp, tp = source.prime_power(), target.prime_power()
            if sp is None or tp is None or sp[0] != tp[0] or tp[1] > sp[1]:
                raise ValueError(f"unsupported ring map {source} -> {target}")
        else:
            raise ValueError(f"unsupported ring map {source} -> {target}")

    def __call__(self, x):
        return self.target.normalize(x)

    def __repr__(self):
        return f"RingHom({self.source} -> {self.target})"
