"""Finite field arithmetic for q = p^a with q = 1 mod 6, and exact Eisenstein integers.

Field elements are encoded as integer codes in ``range(q)``.  For a prime
field (a = 1) the code is the residue itself.  For an extension field the
element with coordinates ``(c_0, ..., c_{a-1})`` in the polynomial basis
``1, t, ..., t^{a-1}`` has code ``sum(c_i * p**i)``; comparing codes is the
same as comparing coordinate tuples read from the highest power down.

All arithmetic goes through the precomputed tables stored on
:class:`FieldCtx` (``add``, ``sub``, ``mul``, ``neg``, ``inv``), which keeps
every downstream algorithm uniform in q and directly consumable by the
compiled kernels.

Character-sum values live in the ring Z[xi3] of Eisenstein integers, which is
exact; only Gauss sums and root numbers are embedded into complex doubles.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import (
    CongruenceViolation,
    ElementNotInField,
    NoIrreducibleFound,
    NotPrime,
    ZeroDenominator,
)

# Comparison policy for complex doubles accumulated over at most ~1e7
# unit-modulus terms: relative 1e-9 against the larger magnitude with an
# absolute floor of 1e-12.
REL_TOL = 1e-9
ABS_TOL = 1e-12

FieldElem = int  # integer code in range(q); see module docstring


def complex_close(x: complex, y: complex, rel: float = REL_TOL, abs_floor: float = ABS_TOL) -> bool:
    """Compare complex doubles under the library-wide tolerance policy."""
    scale = max(abs(x), abs(y))
    return abs(x - y) <= max(rel * scale, abs_floor)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def _fp_poly_mul_mod(u: list[int], v: list[int], modulus: list[int], p: int) -> list[int]:
    # coordinate polynomials over F_p, little-endian, reduced mod the field modulus
    a = len(modulus) - 1
    out = [0] * (2 * a - 1)
    for i, ui in enumerate(u):
        if ui:
            for j, vj in enumerate(v):
                out[i + j] = (out[i + j] + ui * vj) % p
    for i in range(len(out) - 1, a - 1, -1):
        c = out[i]
        if c:
            out[i] = 0
            for j in range(a):
                out[i - a + j] = (out[i - a + j] - c * modulus[j]) % p
    return out[:a]


def _fp_irreducible(m: list[int], p: int) -> bool:
    # trial division by all monic polynomials of degree 1..deg/2 over F_p
    deg = len(m) - 1
    for d in range(1, deg // 2 + 1):
        for rank in range(p**d):
            q_, r = rank, []
            for _ in range(d):
                r.append(q_ % p)
                q_ //= p
            div = r + [1]
            rem = list(m)
            for i in range(deg, d - 1, -1):
                c = rem[i]
                if c:
                    rem[i] = 0
                    for j in range(d):
                        rem[i - d + j] = (rem[i - d + j] - c * div[j]) % p
            if not any(rem[:d]):
                return False
    return True


@dataclass(frozen=True)
class FieldCtx:
    """Immutable context for F_q, q = p^a = 1 mod 6.

    The cube roots of unity are labelled once and for all:
    ``omega_table[generator^((q-1)/3)] = 1``, its square maps to 2, and the
    identity maps to 0.  ``chi3exp[x]`` is the exponent of the cubic residue
    character at x (-1 marks x = 0).
    """

    p: int
    a: int
    q: int
    modulus: tuple[int, ...]       # over F_p, little-endian, monic; (0, 1) when a == 1
    generator: int
    omega_table: dict[int, int]
    add: np.ndarray
    sub: np.ndarray
    mul: np.ndarray
    neg: np.ndarray
    inv: np.ndarray                # inv[0] = 0 placeholder
    chi3exp: np.ndarray            # int64, exponent in {0,1,2}, -1 at 0
    trace: np.ndarray              # trace to F_p, values in range(p)
    psi: np.ndarray                # complex128, psi[x] = exp(2 pi i trace(x) / p)

    def __repr__(self) -> str:
        return f"FieldCtx(q={self.q})"

    def element_coords(self, x: FieldElem) -> tuple[int, ...]:
        """Coordinates of x in the polynomial basis over F_p."""
        self.check_element(x)
        out = []
        for _ in range(self.a):
            out.append(x % self.p)
            x //= self.p
        return tuple(out)

    def element_from_coords(self, coords: Sequence[int]) -> FieldElem:
        if len(coords) > self.a:
            raise ElementNotInField(f"{len(coords)} coordinates for extension degree {self.a}")
        x = 0
        for c in reversed(coords):
            x = x * self.p + c % self.p
        return x

    def check_element(self, x: FieldElem) -> None:
        if not isinstance(x, (int, np.integer)) or not 0 <= x < self.q:
            raise ElementNotInField(f"{x!r} is not an element code of F_{self.q}")

    def pow(self, x: FieldElem, n: int) -> FieldElem:
        """x**n via the multiplication table (n >= 0)."""
        r, b = 1, x
        while n:
            if n & 1:
                r = int(self.mul[r, b])
            b = int(self.mul[b, b])
            n >>= 1
        return r


def make_field(p: int, a: int = 1) -> FieldCtx:
    """Build the deterministic context for F_{p^a}.

    The extension modulus is the lexicographically smallest monic irreducible
    of degree a over F_p (coefficient tuples compared from the highest power
    down), and the generator is the smallest element code of full
    multiplicative order.
    """
    if not _is_prime(p):
        raise NotPrime(f"p = {p} is not prime")
    if a < 1:
        raise CongruenceViolation(f"extension degree must be >= 1, got {a}")
    q = p**a
    if q % 6 != 1:
        raise CongruenceViolation(f"q = {q} is not congruent to 1 mod 6")

    if a == 1:
        modulus = (0, 1)
    else:
        modulus = None
        for rank in range(p**a):
            r, coeffs = rank, []
            for _ in range(a):
                coeffs.append(r % p)
                r //= p
            cand = coeffs + [1]
            if _fp_irreducible(cand, p):
                modulus = tuple(cand)
                break
        if modulus is None:
            raise NoIrreducibleFound(f"no monic irreducible of degree {a} over F_{p}")

    # multiplication table through the coordinate representation
    mul = np.zeros((q, q), dtype=np.int64)
    add = np.zeros((q, q), dtype=np.int64)
    if a == 1:
        r = np.arange(q, dtype=np.int64)
        add[:] = (r[:, None] + r[None, :]) % p
        mul[:] = (r[:, None] * r[None, :]) % p
    else:
        coords = []
        for x in range(q):
            r, c = x, []
            for _ in range(a):
                c.append(r % p)
                r //= p
            coords.append(c)
        mlist = list(modulus)
        for x in range(q):
            for y in range(x, q):
                s = [(cx + cy) % p for cx, cy in zip(coords[x], coords[y])]
                code_s = 0
                for c in reversed(s):
                    code_s = code_s * p + c
                add[x, y] = add[y, x] = code_s
                prod = _fp_poly_mul_mod(coords[x], coords[y], mlist, p)
                code_m = 0
                for c in reversed(prod):
                    code_m = code_m * p + c
                mul[x, y] = mul[y, x] = code_m

    neg = np.zeros(q, dtype=np.int64)
    for x in range(q):
        row = add[x]
        neg[x] = int(np.nonzero(row == 0)[0][0])
    sub = add[:, neg]

    inv = np.zeros(q, dtype=np.int64)
    for x in range(1, q):
        row = mul[x]
        inv[x] = int(np.nonzero(row == 1)[0][0])

    # smallest generator of the cyclic group F_q^*
    rads = _prime_factors(q - 1)
    generator = 0
    for x in range(2, q):
        ok = True
        for r in rads:
            y, n = 1, (q - 1) // r
            b = x
            while n:
                if n & 1:
                    y = int(mul[y, b])
                b = int(mul[b, b])
                n >>= 1
            if y == 1:
                ok = False
                break
        if ok:
            generator = x
            break
    if generator == 0:
        raise NoIrreducibleFound(f"no generator found in F_{q}")

    # discrete logs drive the cubic character table
    dlog = {1: 0}
    x = generator
    for k in range(1, q - 1):
        dlog[x] = k
        x = int(mul[x, generator])
    w1 = 1
    for _ in range((q - 1) // 3):
        w1 = int(mul[w1, generator])
    omega_table = {1: 0, w1: 1, int(mul[w1, w1]): 2}
    chi3exp = np.full(q, -1, dtype=np.int64)
    for y in range(1, q):
        chi3exp[y] = dlog[y] % 3
    # labelling consistency: chi3(x) must equal omega(x^((q-1)/3))
    for y in range(1, q):
        z, n = 1, (q - 1) // 3
        b = y
        while n:
            if n & 1:
                z = int(mul[z, b])
            b = int(mul[b, b])
            n >>= 1
        assert omega_table[z] == chi3exp[y]

    trace = np.zeros(q, dtype=np.int64)
    for y in range(q):
        t, conj = 0, y
        for _ in range(a):
            t = int(add[t, conj])
            c = conj
            for _ in range(p - 1):
                c = int(mul[c, conj])
            conj = c
        # t lies in the prime subfield; its code is the residue itself
        assert t < p
        trace[y] = t

    psi = np.exp(2j * np.pi * trace / p)

    for arr in (add, sub, mul, neg, inv, chi3exp, trace, psi):
        arr.flags.writeable = False

    return FieldCtx(
        p=p, a=a, q=q, modulus=modulus, generator=generator,
        omega_table=omega_table, add=add, sub=sub, mul=mul, neg=neg,
        inv=inv, chi3exp=chi3exp, trace=trace, psi=psi,
    )


def chi3(ctx: FieldCtx, x: FieldElem) -> Optional[int]:
    """Cubic residue character of F_q^*: exponent k with chi3(x) = xi3^k, None at 0."""
    ctx.check_element(x)
    e = int(ctx.chi3exp[x])
    return None if e < 0 else e


def trace_to_prime(ctx: FieldCtx, x: FieldElem) -> int:
    """Trace from F_q down to F_p (identity when a = 1)."""
    ctx.check_element(x)
    return int(ctx.trace[x])


# ---------------------------------------------------------------------------
# Eisenstein integers


@dataclass(frozen=True, slots=True)
class Eisenstein:
    """Exact element x + y*xi3 of Z[xi3], with xi3^2 = -1 - xi3."""

    x: int = 0
    y: int = 0

    def __add__(self, other: "Eisenstein") -> "Eisenstein":
        return Eisenstein(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "Eisenstein") -> "Eisenstein":
        return Eisenstein(self.x - other.x, self.y - other.y)

    def __neg__(self) -> "Eisenstein":
        return Eisenstein(-self.x, -self.y)

    def __mul__(self, other):
        if isinstance(other, Eisenstein):
            return Eisenstein(
                self.x * other.x - self.y * other.y,
                self.x * other.y + self.y * other.x - self.y * other.y,
            )
        if isinstance(other, int):
            return Eisenstein(self.x * other, self.y * other)
        return NotImplemented

    __rmul__ = __mul__

    def __bool__(self) -> bool:
        return self.x != 0 or self.y != 0

    def conjugate(self) -> "Eisenstein":
        return Eisenstein(self.x - self.y, -self.y)

    def norm(self) -> int:
        return self.x * self.x - self.x * self.y + self.y * self.y

    def divide_exact(self, n: int) -> "Eisenstein":
        """Divide by a rational integer that must divide both components."""
        qx, rx = divmod(self.x, n)
        qy, ry = divmod(self.y, n)
        if rx or ry:
            raise ArithmeticError(f"{self} is not divisible by {n}")
        return Eisenstein(qx, qy)

    @staticmethod
    def from_exponent(k: Optional[int]) -> "Eisenstein":
        """xi3^k for k in {0,1,2}; None (the absorbed zero) maps to 0."""
        if k is None:
            return Eisenstein(0, 0)
        k %= 3
        if k == 0:
            return Eisenstein(1, 0)
        if k == 1:
            return Eisenstein(0, 1)
        return Eisenstein(-1, -1)

    def to_complex(self) -> complex:
        return complex(self.x - 0.5 * self.y, (math.sqrt(3) / 2) * self.y)


EISENSTEIN_ZERO = Eisenstein(0, 0)
EISENSTEIN_ONE = Eisenstein(1, 0)
XI3 = Eisenstein(0, 1)


def eisenstein_to_complex(z: Eisenstein) -> complex:
    """Numeric embedding xi3 -> exp(2 pi i / 3)."""
    return z.to_complex()


# ---------------------------------------------------------------------------
# The exponential e_q on F_q(T)


def e_q(ctx: FieldCtx, num: Sequence[int], den: Sequence[int]) -> complex:
    """e_q(num/den): exp(2 pi i tr(a1)/p) with a1 the 1/T Laurent coefficient.

    ``num`` and ``den`` are polynomials over F_q as little-endian code
    sequences; ``den`` must be monic and nonzero.  The expansion of 1/den as
    a power series in 1/T is carried to order deg(num) + 2 and convolved
    with ``num``.
    """
    den = _trim(den)
    if not den:
        raise ZeroDenominator("e_q denominator is zero")
    if den[-1] != 1:
        raise ZeroDenominator("e_q denominator must be monic")
    num = _trim(num)
    if not num:
        return complex(ctx.psi[0])
    d = len(den) - 1
    order = len(num) + 2
    # 1/den = T^{-d} * sum_k g_k T^{-k}; g solves the convolution with den's
    # lower coefficients read from the top.
    g = [0] * (order + 1)
    g[0] = 1
    sub, mul = ctx.sub, ctx.mul
    for k in range(1, order + 1):
        acc = 0
        for j in range(1, min(k, d) + 1):
            acc = int(sub[acc, int(mul[den[d - j], g[k - j]])])
        g[k] = acc
    a1 = 0
    add, mul = ctx.add, ctx.mul
    for i, ni in enumerate(num):
        if ni:
            k = i - d + 1
            if 0 <= k <= order:
                a1 = int(add[a1, int(mul[ni, g[k]])])
    return complex(ctx.psi[a1])


def laurent_top_coefficient(ctx: FieldCtx, h: Sequence[int], den: Sequence[int]) -> int:
    """1/T coefficient of h/den for deg h < deg den: the T^{deg den - 1} coefficient of h."""
    d = len(_trim(den)) - 1
    h = list(h)
    return h[d - 1] if len(h) >= d else 0


def _trim(c: Sequence[int]) -> tuple[int, ...]:
    c = tuple(c)
    n = len(c)
    while n and c[n - 1] == 0:
        n -= 1
    return c[:n]
