"""Finite fields GF(p^a) in the polynomial basis over GF(p).

An element is stored as the integer sum(c_i * p**i) of its coefficient
vector, so 0 and 1 are the field's zero and one and the prime subfield is
0..p-1.  Arithmetic goes through precomputed tables; fields here are small.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass

SUPERSCRIPT = str.maketrans("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹")


class NotPrimePowerError(ValueError):
    pass


def factorize(n: int) -> list[tuple[int, int]]:
    out = []
    d = 2
    while d * d <= n:
        e = 0
        while n % d == 0:
            n //= d
            e += 1
        if e:
            out.append((d, e))
        d += 1
    if n > 1:
        out.append((n, 1))
    return out


def prime_power(q: int) -> tuple[int, int]:
    """(p, a) with q = p**a, or NotPrimePowerError naming the factorization."""
    if q < 2:
        raise NotPrimePowerError(f"{q} is not a prime power")
    f = factorize(q)
    if len(f) != 1:
        text = "·".join(str(p) + (str(e).translate(SUPERSCRIPT) if e > 1 else "") for p, e in f)
        raise NotPrimePowerError(f"{q} = {text} is not a prime power")
    return f[0]


def _poly_mod(num: list[int], den: list[int], p: int) -> list[int]:
    # Coefficient lists low degree first; den is monic.
    num = list(num)
    dd = len(den) - 1
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i] % p
        if c:
            for j in range(dd + 1):
                num[i - dd + j] = (num[i - dd + j] - c * den[j]) % p
    return [c % p for c in num[:dd]]


def _is_irreducible(poly: list[int], p: int) -> bool:
    a = len(poly) - 1
    for d in range(1, a // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            if not any(_poly_mod(poly, list(low) + [1], p)):
                return False
    return True


def least_irreducible(p: int, a: int) -> tuple[int, ...]:
    """Lexicographically least monic irreducible of degree a over GF(p).

    Coefficients are compared from degree a-1 down to the constant term;
    the result is returned low degree first, leading 1 included.
    """
    for code in range(p ** a):
        low = [(code // p ** i) % p for i in range(a)]
        poly = low + [1]
        if a == 1 or _is_irreducible(poly, p):
            return tuple(poly)
    raise AssertionError("no irreducible polynomial found")


class GF:
    """The field with q = p**a elements; build through :func:`gf`."""

    def __init__(self, q: int):
        p, a = prime_power(q)
        self.q, self.p, self.degree = q, p, a
        self.modulus = least_irreducible(p, a)
        self.elements = range(q)
        add = [[0] * q for _ in range(q)]
        mul = [[0] * q for _ in range(q)]
        digits = [self.coeffs(x) for x in range(q)]
        for x in range(q):
            for y in range(q):
                add[x][y] = self._encode([(u + v) % p for u, v in zip(digits[x], digits[y])])
        for x in range(q):
            for y in range(x, q):
                prod = [0] * (2 * a - 1)
                for i, u in enumerate(digits[x]):
                    if u:
                        for j, v in enumerate(digits[y]):
                            prod[i + j] += u * v
                z = self._encode(_poly_mod(prod, list(self.modulus), p) if a > 1 else [prod[0] % p])
                mul[x][y] = mul[y][x] = z
        self.add_table = add
        self.mul_table = mul
        self.neg_table = [add[x].index(0) for x in range(q)]
        self.inv_table = [0] + [mul[x].index(1) for x in range(1, q)]
        self.primitive = next(g for g in range(1, q) if self._order(g) == q - 1)

    def coeffs(self, x: int) -> tuple[int, ...]:
        return tuple((x // self.p ** i) % self.p for i in range(self.degree))

    def _encode(self, coeffs) -> int:
        return sum(c * self.p ** i for i, c in enumerate(coeffs))

    def _order(self, g: int) -> int:
        k, x = 1, g
        while x != 1:
            x = self.mul_table[x][g]
            k += 1
        return k

    def add(self, x: int, y: int) -> int:
        return self.add_table[x][y]

    def sub(self, x: int, y: int) -> int:
        return self.add_table[x][self.neg_table[y]]

    def mul(self, x: int, y: int) -> int:
        return self.mul_table[x][y]

    def neg(self, x: int) -> int:
        return self.neg_table[x]

    def inv(self, x: int) -> int:
        if x == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self.inv_table[x]

    def div(self, x: int, y: int) -> int:
        return self.mul_table[x][self.inv(y)]

    def pow(self, x: int, e: int) -> int:
        r = 1
        for _ in range(e):
            r = self.mul_table[r][x]
        return r

    def frobenius(self, x: int) -> int:
        return self.pow(x, self.p)

    def __call__(self, value: int | tuple[int, ...]) -> "FieldElement":
        if isinstance(value, tuple):
            if len(value) != self.degree or not all(0 <= c < self.p for c in value):
                raise ValueError(f"coefficients {value} do not describe an element of GF({self.q})")
            value = self._encode(value)
        if not 0 <= value < self.q:
            raise ValueError(f"{value} is not an element index of GF({self.q})")
        return FieldElement(self, value)

    def modulus_text(self) -> str:
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.modulus[i]
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                mono = "x" if i == 1 else f"x^{i}"
                terms.append(mono if c == 1 else f"{c}{mono}")
        return " + ".join(terms)

    def __repr__(self):
        return f"GF({self.q})"


@dataclass(frozen=True)
class FieldElement:
    field: GF
    value: int

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.field.coeffs(self.value)

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field is not self.field:
                raise ValueError("elements of different fields")
            return other.value
        if isinstance(other, int) and 0 <= other < self.field.p:
            return other
        return NotImplemented

    def __add__(self, other):
        y = self._other(other)
        return NotImplemented if y is NotImplemented else FieldElement(self.field, self.field.add(self.value, y))

    __radd__ = __add__

    def __sub__(self, other):
        y = self._other(other)
        return NotImplemented if y is NotImplemented else FieldElement(self.field, self.field.sub(self.value, y))

    def __mul__(self, other):
        y = self._other(other)
        return NotImplemented if y is NotImplemented else FieldElement(self.field, self.field.mul(self.value, y))

    __rmul__ = __mul__

    def __truediv__(self, other):
        y = self._other(other)
        return NotImplemented if y is NotImplemented else FieldElement(self.field, self.field.div(self.value, y))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv(self.value))

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** -e
        return FieldElement(self.field, self.field.pow(self.value, e))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"GF({self.field.q})[{self.value}]"


@functools.lru_cache(maxsize=None)
def gf(q: int) -> GF:
    return GF(q)
