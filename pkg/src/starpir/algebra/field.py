"""Finite fields F_{p^s} with elements packed as integers.

An element is the integer whose base-p digits are the coefficients of its
polynomial representative, constant term first.  ``FieldSpec`` carries the
scalar operations on those integers plus vectorised numpy versions used by
the linear algebra and the codeword enumerators.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import isqrt

import numpy as np

from ..errors import (
    FieldMismatch,
    NonPrimeCharacteristic,
    ReducibleModulus,
    ZeroInverse,
)

# above this order no lookup tables are built and multiplication falls back
# to digit-polynomial arithmetic
_TABLE_LIMIT = 1 << 20


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for d in range(3, isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _digits(a: int, p: int, s: int) -> list[int]:
    out = []
    for _ in range(s):
        out.append(a % p)
        a //= p
    return out


def _pack(digits, p: int) -> int:
    v = 0
    for c in reversed(digits):
        v = v * p + c
    return v


def _polymulmod(a: list[int], b: list[int], modulus: tuple[int, ...], p: int) -> list[int]:
    s = len(modulus) - 1
    prod = [0] * (2 * s - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    prod[i + j] = (prod[i + j] + x * y) % p
    # modulus is monic: x^s = -(m_0 + ... + m_{s-1} x^{s-1})
    for deg in range(len(prod) - 1, s - 1, -1):
        c = prod[deg]
        if c:
            for i in range(s):
                prod[deg - s + i] = (prod[deg - s + i] - c * modulus[i]) % p
            prod[deg] = 0
    return prod[:s]


@dataclass(frozen=True)
class FieldSpec:
    """The field F_p[x]/(modulus) of order q = p^s.

    ``modulus`` lists the s+1 coefficients of a monic irreducible polynomial,
    constant term first.  Build instances with :func:`field_make`, which
    verifies irreducibility.
    """

    p: int
    s: int
    modulus: tuple[int, ...]

    @property
    def q(self) -> int:
        return self.p**self.s

    @property
    def is_prime_field(self) -> bool:
        return self.s == 1

    @property
    def width(self) -> int:
        """Bytes per element on the wire."""
        return max(1, ((self.q - 1).bit_length() + 7) // 8)

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.s})" if self.s > 1 else f"GF({self.p})"

    def __call__(self, value: int) -> FieldElement:
        return FieldElement(self, self.check(value))

    def to_dict(self) -> dict:
        return {"p": self.p, "s": self.s, "modulus": list(self.modulus)}

    @classmethod
    def from_dict(cls, d: dict) -> FieldSpec:
        return field_make(int(d["p"]), int(d.get("s", 1)), d.get("modulus"))

    def check(self, a: int) -> int:
        a = int(a)
        if not 0 <= a < self.q:
            raise ValueError(f"{a} is not an element index of {self!r}")
        return a

    def elements(self) -> range:
        return range(self.q)

    # ---- scalar arithmetic on packed integers -------------------------------

    def add(self, a: int, b: int) -> int:
        if self.s == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        return int(self._add_table[a, b])

    def neg(self, a: int) -> int:
        if self.s == 1:
            return (-a) % self.p
        if self.p == 2:
            return a
        return _pack([(-c) % self.p for c in _digits(a, self.p, self.s)], self.p)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.s == 1:
            return (a * b) % self.p
        if a == 0 or b == 0:
            return 0
        if self.q <= _TABLE_LIMIT:
            lg = self._log
            return int(self._exp[(lg[a] + lg[b]) % (self.q - 1)])
        return self._mul_slow(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroInverse(f"0 has no inverse in {self!r}")
        if self.s == 1:
            return pow(a, self.p - 2, self.p)
        if self.q <= _TABLE_LIMIT:
            return int(self._exp[(-int(self._log[a])) % (self.q - 1)])
        return self.pow(a, self.q - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        if self.s == 1:
            return pow(a, e, self.p)
        result, base = 1, a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def _mul_slow(self, a: int, b: int) -> int:
        p, s = self.p, self.s
        return _pack(_polymulmod(_digits(a, p, s), _digits(b, p, s), self.modulus, p), p)

    def _pow_slow(self, a: int, e: int) -> int:
        result, base = 1, a
        while e:
            if e & 1:
                result = self._mul_slow(result, base)
            base = self._mul_slow(base, base)
            e >>= 1
        return result

    def order_of(self, a: int) -> int:
        """Multiplicative order of a nonzero element."""
        if a == 0:
            raise ZeroInverse("0 has no multiplicative order")
        n = self.q - 1
        for r in prime_factors(self.q - 1):
            while n % r == 0 and self.pow(a, n // r) == 1:
                n //= r
        return n

    @cached_property
    def primitive_element(self) -> int:
        if self.q == 2:
            return 1
        n = self.q - 1
        factors = prime_factors(n)
        for g in range(2, self.q):
            if all(self._pow_slow(g, n // r) != 1 for r in factors):
                return g
        raise AssertionError("no primitive element found")  # pragma: no cover

    # ---- lookup tables -------------------------------------------------------

    @cached_property
    def _exp(self) -> np.ndarray:
        g = self.primitive_element
        exp = np.zeros(self.q - 1, dtype=np.int64)
        v = 1
        for i in range(self.q - 1):
            exp[i] = v
            v = self._mul_slow(v, g)
        return exp

    @cached_property
    def _log(self) -> np.ndarray:
        log = np.zeros(self.q, dtype=np.int64)
        log[self._exp] = np.arange(self.q - 1)
        return log

    @cached_property
    def _add_table(self) -> np.ndarray:
        a = np.arange(self.q, dtype=np.int64)
        return self._vadd_digits(a[:, None], a[None, :])

    @cached_property
    def _neg_table(self) -> np.ndarray:
        return np.array([self.neg(a) for a in range(self.q)], dtype=np.int64)

    # ---- vectorised arithmetic ----------------------------------------------

    def _vadd_digits(self, a, b):
        p = self.p
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        mult = 1
        for _ in range(self.s):
            out += (((a // mult) % p + (b // mult) % p) % p) * mult
            mult *= p
        return out

    def vadd(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.s == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        if self.q <= 4096:
            return self._add_table[a, b]
        return self._vadd_digits(a, b)

    def vneg(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if self.s == 1:
            return (-a) % self.p
        if self.p == 2:
            return a.copy()
        return self._neg_table[a]

    def vsub(self, a, b) -> np.ndarray:
        return self.vadd(a, self.vneg(b))

    def vmul(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.s == 1:
            return (a * b) % self.p
        if self.q > _TABLE_LIMIT:
            return np.vectorize(self.mul, otypes=[np.int64])(a, b)
        lg = self._log
        out = self._exp[(lg[a] + lg[b]) % (self.q - 1)]
        return np.where((a == 0) | (b == 0), 0, out)

    def vinv(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise ZeroInverse("0 has no inverse")
        if self.q > _TABLE_LIMIT:
            return np.vectorize(self.inv, otypes=[np.int64])(a)
        return self._exp[(-self._log[a]) % (self.q - 1)]

    def vdot(self, a, b) -> int:
        """Inner product of two vectors."""
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.s == 1:
            return int(np.dot(a % self.p, b % self.p) % self.p)
        acc = 0
        for x in self.vmul(a, b).tolist():
            acc = self.add(acc, x)
        return acc

    def vsum(self, a, axis=0) -> np.ndarray:
        """Field sum along an axis."""
        a = np.asarray(a, dtype=np.int64)
        if self.s == 1:
            return a.sum(axis=axis) % self.p
        if self.p == 2:
            return np.bitwise_xor.reduce(a, axis=axis)
        a = np.moveaxis(a, axis, 0)
        out = np.zeros(a.shape[1:], dtype=np.int64)
        for row in a:
            out = self.vadd(out, row)
        return out

    def matmul(self, A, B) -> np.ndarray:
        """Matrix product over the field."""
        A = np.asarray(A, dtype=np.int64)
        B = np.asarray(B, dtype=np.int64)
        if self.s == 1 and self.p < (1 << 20):
            # chunk the inner dimension so int64 accumulation cannot overflow
            step = max(1, (1 << 62) // ((self.p - 1) ** 2 + 1))
            out = np.zeros(A.shape[:-1] + B.shape[1:], dtype=np.int64)
            for i in range(0, A.shape[-1], step):
                out = (out + A[..., i : i + step] @ B[i : i + step]) % self.p
            return out
        out = np.zeros(A.shape[:-1] + B.shape[1:], dtype=np.int64)
        for i in range(A.shape[-1]):
            out = self.vadd(out, self.vmul(A[..., i, None], B[i]))
        return out


@dataclass(frozen=True)
class FieldElement:
    """A field element bound to its field; supports the usual operators."""

    field: FieldSpec
    value: int

    def _other(self, b) -> int:
        if isinstance(b, FieldElement):
            if b.field != self.field:
                raise FieldMismatch(f"{self.field!r} vs {b.field!r}")
            return b.value
        return self.field.check(int(b) % self.field.q) if self.field.s == 1 else self.field.check(b)

    def __add__(self, b):
        return FieldElement(self.field, self.field.add(self.value, self._other(b)))

    __radd__ = __add__

    def __sub__(self, b):
        return FieldElement(self.field, self.field.sub(self.value, self._other(b)))

    def __rsub__(self, b):
        return FieldElement(self.field, self.field.sub(self._other(b), self.value))

    def __mul__(self, b):
        return FieldElement(self.field, self.field.mul(self.value, self._other(b)))

    __rmul__ = __mul__

    def __truediv__(self, b):
        return FieldElement(self.field, self.field.div(self.value, self._other(b)))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow(self.value, e))

    def inverse(self) -> FieldElement:
        return FieldElement(self.field, self.field.inv(self.value))

    def __int__(self) -> int:
        return self.value

    def __bool__(self) -> bool:
        return self.value != 0

    def __repr__(self) -> str:
        return f"{self.value}@{self.field!r}"


def field_arith(op: str, a: FieldElement, b=None) -> FieldElement:
    """Dispatch one of add, sub, mul, inv, pow, neg on field elements."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "inv":
        return a.inverse()
    if op == "pow":
        return a ** int(b)
    if op == "neg":
        return -a
    raise ValueError(f"unknown field operation {op!r}")


def _irreducible_over_prime(p: int, coeffs: tuple[int, ...]) -> bool:
    from .poly import Polynomial

    base = FieldSpec(p, 1, (0, 1))
    return Polynomial(base, list(coeffs)).is_irreducible()


_FIELD_CACHE: dict[tuple, FieldSpec] = {}


def field_make(p: int, s: int = 1, modulus=None) -> FieldSpec:
    """Construct F_{p^s}.

    Without an explicit modulus the monic irreducible polynomial of degree s
    with the smallest packed integer encoding of its lower coefficients is
    used, so constructions are reproducible.
    """
    p, s = int(p), int(s)
    if not is_prime(p):
        raise NonPrimeCharacteristic(f"{p} is not prime")
    if s < 1:
        raise ValueError("extension degree must be positive")
    if modulus is not None:
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != s + 1 or modulus[-1] != 1:
            raise ReducibleModulus(f"modulus must be monic of degree {s}, got {list(modulus)}")
        key = (p, s, modulus)
        if key not in _FIELD_CACHE:
            if s > 1 and not _irreducible_over_prime(p, modulus):
                raise ReducibleModulus(f"{list(modulus)} is reducible over GF({p})")
            _FIELD_CACHE[key] = FieldSpec(p, s, modulus)
        return _FIELD_CACHE[key]
    key = (p, s, None)
    if key in _FIELD_CACHE:
        return _FIELD_CACHE[key]
    if s == 1:
        spec = FieldSpec(p, 1, (0, 1))
    else:
        for low in range(p**s):
            coeffs = tuple(_digits(low, p, s)) + (1,)
            if coeffs[0] == 0:
                continue
            if _irreducible_over_prime(p, coeffs):
                spec = FieldSpec(p, s, coeffs)
                break
    _FIELD_CACHE[key] = spec
    _FIELD_CACHE[(p, s, spec.modulus)] = spec
    return spec


def prime_field(p: int) -> FieldSpec:
    return field_make(p, 1)
