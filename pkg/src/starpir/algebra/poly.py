"""Univariate polynomials over a FieldSpec, plus cyclotomic cosets,
extension towers and minimal polynomials."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from ..errors import DivisionByZeroPolynomial, FieldMismatch, NotCoprime, NotInExtensionTower
from .field import FieldElement, FieldSpec, field_make

NEG_INF = float("-inf")


class Polynomial:
    """Polynomial with packed-integer coefficients, constant term first.

    Stored canonically: no trailing zero coefficients.  The zero polynomial
    has ``coeffs == ()`` and degree ``NEG_INF``.
    """

    __slots__ = ("field", "coeffs")

    def __init__(self, field: FieldSpec, coeffs):
        cs = [int(c.value if isinstance(c, FieldElement) else c) for c in coeffs]
        for c in cs:
            field.check(c)
        while cs and cs[-1] == 0:
            cs.pop()
        self.field = field
        self.coeffs = tuple(cs)

    @classmethod
    def x(cls, field: FieldSpec) -> Polynomial:
        return cls(field, [0, 1])

    @classmethod
    def constant(cls, field: FieldSpec, c: int) -> Polynomial:
        return cls(field, [c])

    @classmethod
    def from_roots(cls, field: FieldSpec, roots) -> Polynomial:
        out = cls(field, [1])
        for r in roots:
            out = out * cls(field, [field.neg(int(r)), 1])
        return out

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Polynomial)
            and self.field == other.field
            and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.field, self.coeffs))

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i, c in reversed(list(enumerate(self.coeffs))):
            if c == 0:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if c == 1 and mono:
                terms.append(mono)
            else:
                terms.append(f"{c}{'*' + mono if mono else ''}")
        return " + ".join(terms)

    def _same(self, other: Polynomial):
        if self.field != other.field:
            raise FieldMismatch(f"{self.field!r} vs {other.field!r}")

    def __add__(self, other: Polynomial) -> Polynomial:
        self._same(other)
        f = self.field
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return Polynomial(
            f,
            [f.add(a[i] if i < len(a) else 0, b[i] if i < len(b) else 0) for i in range(n)],
        )

    def __neg__(self) -> Polynomial:
        return Polynomial(self.field, [self.field.neg(c) for c in self.coeffs])

    def __sub__(self, other: Polynomial) -> Polynomial:
        return self + (-other)

    def __mul__(self, other) -> Polynomial:
        f = self.field
        if not isinstance(other, Polynomial):
            c = int(other)
            return Polynomial(f, [f.mul(a, c) for a in self.coeffs])
        self._same(other)
        if not self.coeffs or not other.coeffs:
            return Polynomial(f, [])
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] = f.add(out[i + j], f.mul(a, b))
        return Polynomial(f, out)

    __rmul__ = __mul__

    def divmod(self, other: Polynomial) -> tuple[Polynomial, Polynomial]:
        self._same(other)
        if other.is_zero():
            raise DivisionByZeroPolynomial("division by the zero polynomial")
        f = self.field
        rem = list(self.coeffs)
        dq = len(other.coeffs) - 1
        quot = [0] * max(0, len(rem) - dq)
        inv_lead = f.inv(other.lead)
        for deg in range(len(rem) - 1, dq - 1, -1):
            c = rem[deg]
            if c == 0:
                continue
            factor = f.mul(c, inv_lead)
            quot[deg - dq] = factor
            for i, b in enumerate(other.coeffs):
                rem[deg - dq + i] = f.sub(rem[deg - dq + i], f.mul(factor, b))
        return Polynomial(f, quot), Polynomial(f, rem[:dq] if dq > 0 else [])

    def __floordiv__(self, other: Polynomial) -> Polynomial:
        return self.divmod(other)[0]

    def __mod__(self, other: Polynomial) -> Polynomial:
        return self.divmod(other)[1]

    def monic(self) -> Polynomial:
        if self.is_zero():
            return self
        return self * self.field.inv(self.lead)

    def gcd(self, other: Polynomial) -> Polynomial:
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def __call__(self, x) -> int:
        """Horner evaluation at a packed field element."""
        f = self.field
        x = int(x.value if isinstance(x, FieldElement) else x)
        acc = 0
        for c in reversed(self.coeffs):
            acc = f.add(f.mul(acc, x), c)
        return acc

    evaluate = __call__

    def power_mod(self, e: int, mod: Polynomial) -> Polynomial:
        result = Polynomial(self.field, [1]) % mod
        base = self % mod
        while e:
            if e & 1:
                result = (result * base) % mod
            base = (base * base) % mod
            e >>= 1
        return result

    def divides(self, other: Polynomial) -> bool:
        return (other % self).is_zero()

    def is_irreducible(self) -> bool:
        """Rabin-style test: gcd(x^{q^i} - x, f) == 1 for i <= deg/2."""
        n = self.degree
        if n == NEG_INF or n < 1:
            return False
        if n == 1:
            return True
        f = self.monic()
        x = Polynomial.x(self.field)
        q = self.field.q
        xp = x % f
        for _ in range(1, n // 2 + 1):
            xp = xp.power_mod(q, f)
            if not (xp - x).gcd(f).degree == 0:
                return False
        return True


def poly_toolkit(op: str, *args):
    """Dispatch one of mul, mod, gcd, eval, is_irreducible, power_mod."""
    if op == "mul":
        return args[0] * args[1]
    if op == "mod":
        return args[0] % args[1]
    if op == "gcd":
        return args[0].gcd(args[1])
    if op == "eval":
        return args[0](args[1])
    if op == "is_irreducible":
        return args[0].is_irreducible()
    if op == "power_mod":
        return args[0].power_mod(args[1], args[2])
    raise ValueError(f"unknown polynomial operation {op!r}")


def x_pow_minus_one(field: FieldSpec, n: int) -> Polynomial:
    cs = [0] * (n + 1)
    cs[0] = field.neg(1)
    cs[n] = 1
    return Polynomial(field, cs)


def cyclotomic_cosets(q: int, n: int) -> list[list[int]]:
    """Partition of Z/nZ into q-cyclotomic cosets, sorted by leader."""
    if gcd(q, n) != 1:
        raise NotCoprime(f"gcd({q}, {n}) != 1")
    seen = set()
    out = []
    for i in range(n):
        if i in seen:
            continue
        coset = []
        j = i
        while j not in coset:
            coset.append(j)
            j = (j * q) % n
        seen.update(coset)
        out.append(sorted(coset))
    return out


def multiplicative_order(q: int, n: int) -> int:
    if gcd(q, n) != 1:
        raise NotCoprime(f"gcd({q}, {n}) != 1")
    if n == 1:
        return 1
    t, v = 1, q % n
    while v != 1:
        v = (v * q) % n
        t += 1
    return t


@dataclass(frozen=True)
class Extension:
    """F_{q^t} built over a base F_q, with the embedding of F_q stored
    as a lookup table (``embed[a]`` is the image of base element a)."""

    base: FieldSpec
    big: FieldSpec
    degree: int
    embed: tuple[int, ...]

    def to_base(self, a: int) -> int:
        try:
            return self.embed.index(a)
        except ValueError:
            raise NotInExtensionTower(f"{a} is not in the image of {self.base!r}") from None


def extension(base: FieldSpec, t: int) -> Extension:
    """Build F_{q^t} and embed F_q into it."""
    big = field_make(base.p, base.s * t)
    if base.s == 1:
        # the prime field sits inside as the constants 0..p-1
        return Extension(base, big, t, tuple(range(base.p)))
    # image of the base generator: a root of the base modulus in the big field
    mod_big = Polynomial(big, list(base.modulus))
    theta = next(a for a in range(big.q) if mod_big(a) == 0)
    powers = [1]
    for _ in range(base.s - 1):
        powers.append(big.mul(powers[-1], theta))
    embed = []
    for a in range(base.q):
        acc, v = 0, a
        for i in range(base.s):
            acc = big.add(acc, big.mul(v % base.p, powers[i]))
            v //= base.p
        embed.append(acc)
    return Extension(base, big, t, tuple(embed))


def conjugates(beta: int, ext: Extension) -> list[int]:
    big, q = ext.big, ext.base.q
    out = [beta]
    b = big.pow(beta, q)
    while b != beta:
        out.append(b)
        b = big.pow(b, q)
    return out


def minimal_polynomial(beta, ext: Extension) -> Polynomial:
    """Minimal polynomial over the base field of an element of ``ext.big``."""
    if isinstance(beta, FieldElement):
        if beta.field != ext.big:
            raise NotInExtensionTower(f"{beta!r} does not live in {ext.big!r}")
        beta = beta.value
    prod = Polynomial.from_roots(ext.big, conjugates(int(beta), ext))
    return Polynomial(ext.base, [ext.to_base(c) for c in prod.coeffs])
