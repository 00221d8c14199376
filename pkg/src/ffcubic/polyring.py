"""Monic polynomials over F_q: arithmetic, enumeration, factorisation, sieves.

A polynomial is a little-endian tuple of field element codes with a nonzero
last entry; the zero polynomial is the empty tuple.  Monic polynomials of
degree d are ranked by ``rank = sum(c_i * q**i)`` over the non-leading
coefficients, so rank order is lexicographic order on coefficient tuples
read from the highest power down (constant term last).  Enumeration,
sampling and CSV output all share this single canonical order.

Factorisation is trial division against sieved prime tables by increasing
degree; it is intended for degrees up to about 12, where it is instant and
doubles as a second oracle next to the gcd-based irreducibility test.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

import numpy as np

from . import _kernels
from .algebra import FieldCtx
from .errors import DomainError

Poly = tuple[int, ...]

ONE: Poly = (1,)
T: Poly = (0, 1)


def trim(c: Sequence[int]) -> Poly:
    c = tuple(int(v) for v in c)
    n = len(c)
    while n and c[n - 1] == 0:
        n -= 1
    return c[:n]


def degree(f: Sequence[int]) -> int:
    """Degree of f, with -1 for the zero polynomial."""
    n = len(f)
    while n and f[n - 1] == 0:
        n -= 1
    return n - 1


def poly_add(ctx: FieldCtx, f: Poly, g: Poly) -> Poly:
    add = ctx.add
    n = max(len(f), len(g))
    out = [0] * n
    for i in range(n):
        a = f[i] if i < len(f) else 0
        b = g[i] if i < len(g) else 0
        out[i] = int(add[a, b])
    return trim(out)


def poly_sub(ctx: FieldCtx, f: Poly, g: Poly) -> Poly:
    sub = ctx.sub
    n = max(len(f), len(g))
    out = [0] * n
    for i in range(n):
        a = f[i] if i < len(f) else 0
        b = g[i] if i < len(g) else 0
        out[i] = int(sub[a, b])
    return trim(out)


def poly_mul(ctx: FieldCtx, f: Poly, g: Poly) -> Poly:
    if not f or not g:
        return ()
    add, mul = ctx.add, ctx.mul
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                if b:
                    out[i + j] = int(add[out[i + j], int(mul[a, b])])
    return trim(out)


def poly_divmod(ctx: FieldCtx, f: Poly, g: Poly) -> tuple[Poly, Poly]:
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    dg = len(g) - 1
    inv_lead = int(ctx.inv[g[-1]])
    rem = list(f)
    if len(rem) - 1 < dg:
        return (), trim(rem)
    quo = [0] * (len(rem) - dg)
    sub, mul = ctx.sub, ctx.mul
    for i in range(len(rem) - 1, dg - 1, -1):
        c = rem[i]
        if c:
            c = int(mul[c, inv_lead])
            quo[i - dg] = c
            for j in range(dg + 1):
                if g[j]:
                    rem[i - dg + j] = int(sub[rem[i - dg + j], int(mul[c, g[j]])])
    return trim(quo), trim(rem)


def poly_mod(ctx: FieldCtx, f: Poly, g: Poly) -> Poly:
    return poly_divmod(ctx, f, g)[1]


def make_monic(ctx: FieldCtx, f: Poly) -> Poly:
    if not f:
        return ()
    if f[-1] == 1:
        return trim(f)
    inv = int(ctx.inv[f[-1]])
    mul = ctx.mul
    return trim([int(mul[c, inv]) for c in f])


def poly_gcd(ctx: FieldCtx, f: Poly, g: Poly) -> Poly:
    """Monic gcd."""
    a, b = trim(f), trim(g)
    while b:
        a, b = b, poly_mod(ctx, a, b)
    return make_monic(ctx, a)


def derivative(ctx: FieldCtx, f: Poly) -> Poly:
    mul = ctx.mul
    out = [0] * max(len(f) - 1, 0)
    for i in range(1, len(f)):
        k = i % ctx.p
        if k and f[i]:
            out[i - 1] = int(mul[f[i], k])
    return trim(out)


def poly_pow_mod(ctx: FieldCtx, f: Poly, n: int, m: Poly) -> Poly:
    r: Poly = (1,)
    b = poly_mod(ctx, f, m)
    while n:
        if n & 1:
            r = poly_mod(ctx, poly_mul(ctx, r, b), m)
        b = poly_mod(ctx, poly_mul(ctx, b, b), m)
        n >>= 1
    return r


# ---------------------------------------------------------------------------
# Canonical ranking and enumeration


def monic_rank(ctx: FieldCtx, f: Poly) -> int:
    d = degree(f)
    if d < 0 or f[d] != 1:
        raise DomainError(f"{f} is not monic")
    r = 0
    for i in range(d - 1, -1, -1):
        r = r * ctx.q + f[i]
    return r


def monic_from_rank(ctx: FieldCtx, d: int, rank: int) -> Poly:
    coeffs = []
    r = rank
    for _ in range(d):
        coeffs.append(r % ctx.q)
        r //= ctx.q
    if r:
        raise DomainError(f"rank {rank} out of range for degree {d}")
    return tuple(coeffs) + (1,)


def enumerate_monic(ctx: FieldCtx, n: int, offset: int = 0, count: Optional[int] = None) -> Iterator[Poly]:
    """All q^n monic polynomials of degree n in rank order, restartable by offset."""
    if n < 0:
        raise DomainError("degree must be >= 0")
    total = ctx.q**n
    stop = total if count is None else min(total, offset + count)
    for rank in range(offset, stop):
        yield monic_from_rank(ctx, n, rank)


def is_squarefree(ctx: FieldCtx, f: Poly) -> bool:
    if degree(f) < 1:
        raise DomainError("square-freeness is defined here for degree >= 1")
    fp = derivative(ctx, f)
    if not fp:
        return False
    return degree(poly_gcd(ctx, f, fp)) == 0


def squarefree_count(ctx: FieldCtx, d: int) -> int:
    """|H(d)|: 1, q, then q^d - q^(d-1) from degree 2 on."""
    if d < 0:
        raise DomainError("degree must be >= 0")
    if d == 0:
        return 1
    if d == 1:
        return ctx.q
    return ctx.q**d - ctx.q ** (d - 1)


def enumerate_squarefree(ctx: FieldCtx, d: int, offset: int = 0, count: Optional[int] = None) -> Iterator[Poly]:
    """Square-free monics of degree d in rank order, restartable by offset.

    The offset indexes the square-free stream itself, not the underlying
    monic ranks, so chunked consumers can partition [0, squarefree_count).
    """
    if d < 1:
        raise DomainError("degree must be >= 1")
    seen = 0
    emitted = 0
    for f in enumerate_monic(ctx, d):
        if is_squarefree(ctx, f):
            if seen >= offset:
                yield f
                emitted += 1
                if count is not None and emitted >= count:
                    return
            seen += 1


# ---------------------------------------------------------------------------
# Irreducibility, prime tables, factorisation


def is_irreducible(ctx: FieldCtx, f: Poly) -> bool:
    """True iff f (monic, deg >= 1) has no factor of degree in [1, deg f / 2].

    Tests gcd(f, T^{q^d} - T) = 1 for every d up to deg f / 2, with the
    Frobenius power computed by modular exponentiation.
    """
    d = degree(f)
    if d < 1:
        raise DomainError("irreducibility needs degree >= 1")
    if d == 1:
        return True
    x: Poly = (0, 1)
    for k in range(1, d // 2 + 1):
        x = poly_pow_mod(ctx, x, ctx.q, f)
        diff = poly_sub(ctx, x, (0, 1))
        if degree(poly_gcd(ctx, f, diff)) > 0:
            return False
    return True


def mobius(n: int) -> int:
    out, f = 1, 2
    while f * f <= n:
        if n % f == 0:
            n //= f
            if n % f == 0:
                return 0
            out = -out
        f += 1
    if n > 1:
        out = -out
    return out


def necklace_count(ctx: FieldCtx, n: int) -> int:
    """Number of monic irreducibles of degree n: (1/n) sum_{d|n} mu(d) q^{n/d}."""
    if n < 1:
        raise DomainError("necklace count needs n >= 1")
    q = ctx.q
    total = 0
    for d in range(1, n + 1):
        if n % d == 0:
            total += mobius(d) * q ** (n // d)
    assert total % n == 0
    return total // n


_PRIME_CACHE: dict[tuple[int, int, int], list[Poly]] = {}
_PRIME_FLAT_CACHE: dict[tuple[int, int, int], np.ndarray] = {}


def primes_of_degree(ctx: FieldCtx, n: int) -> list[Poly]:
    """All monic irreducibles of degree n in rank order (sieved, cached)."""
    key = (ctx.p, ctx.a, n)
    got = _PRIME_CACHE.get(key)
    if got is not None:
        return got
    if n == 1:
        out = [monic_from_rank(ctx, 1, r) for r in range(ctx.q)]
    else:
        mask = np.zeros(ctx.q**n, dtype=np.int8)
        lower: list[Poly] = []
        for d in range(1, n // 2 + 1):
            lower.extend(primes_of_degree(ctx, d))
        if lower:
            width = max(len(pp) for pp in lower)
            flat = np.zeros((len(lower), width), dtype=np.int64)
            pdeg = np.zeros(len(lower), dtype=np.int64)
            for i, pp in enumerate(lower):
                flat[i, : len(pp)] = pp
                pdeg[i] = len(pp) - 1
            _kernels.mark_composites(mask, flat, pdeg, len(lower), n, ctx.q, ctx.mul, ctx.add)
        out = [monic_from_rank(ctx, n, int(r)) for r in np.nonzero(mask == 0)[0]]
    assert len(out) == necklace_count(ctx, n)
    _PRIME_CACHE[key] = out
    return out


def primes_flat(ctx: FieldCtx, n: int) -> np.ndarray:
    """Primes of degree n packed as an (m, n+1) int64 array for the kernels."""
    key = (ctx.p, ctx.a, n)
    got = _PRIME_FLAT_CACHE.get(key)
    if got is None:
        plist = primes_of_degree(ctx, n)
        got = np.zeros((len(plist), n + 1), dtype=np.int64)
        for i, pp in enumerate(plist):
            got[i, : len(pp)] = pp
        got.flags.writeable = False
        _PRIME_FLAT_CACHE[key] = got
    return got


def factor(ctx: FieldCtx, f: Poly) -> list[tuple[Poly, int]]:
    """Prime factorisation of monic f by trial division, primes in rank order."""
    d = degree(f)
    if d < 0 or f[d] != 1:
        raise DomainError("factor() expects a monic polynomial")
    out: list[tuple[Poly, int]] = []
    rem = f
    dcur = 1
    while 2 * dcur <= degree(rem):
        for P in primes_of_degree(ctx, dcur):
            if degree(rem) < 2 * dcur:
                break
            e = 0
            while True:
                quo, r = poly_divmod(ctx, rem, P)
                if r:
                    break
                rem = quo
                e += 1
            if e:
                out.append((P, e))
        dcur += 1
    if degree(rem) >= 1:
        # remainder has no factor of degree <= deg/2, hence prime
        out.append((rem, 1))
    out.sort(key=lambda pe: (len(pe[0]), monic_rank(ctx, pe[0])))
    return out


def irreducible_factor_count(ctx: FieldCtx, f: Poly) -> int:
    """Number of prime factors of a SQUARE-FREE monic f, by distinct-degree splitting."""
    g = f
    x: Poly = (0, 1)
    count = 0
    i = 1
    while degree(g) >= 2 * i:
        x = poly_pow_mod(ctx, x, ctx.q, g)
        h = poly_gcd(ctx, g, poly_sub(ctx, x, (0, 1)))
        dh = degree(h)
        if dh > 0:
            assert dh % i == 0
            count += dh // i
            g = poly_divmod(ctx, g, h)[0]
            x = poly_mod(ctx, x, g)
        i += 1
    if degree(g) > 0:
        count += 1
    return count


@dataclass(frozen=True)
class CubeFreeDecomp:
    """f = f1 * f2^2 * f3^3 with f1, f2 square-free and coprime."""

    f1: Poly
    f2: Poly
    f3: Poly


def cube_free_decompose(ctx: FieldCtx, f: Poly) -> CubeFreeDecomp:
    """The unique normalisation f = f1 f2^2 f3^3; f3 absorbs all cube parts."""
    f1: Poly = (1,)
    f2: Poly = (1,)
    f3: Poly = (1,)
    for P, e in factor(ctx, f):
        k, r = divmod(e, 3)
        if r == 1:
            f1 = poly_mul(ctx, f1, P)
        elif r == 2:
            f2 = poly_mul(ctx, f2, P)
        if k:
            f3 = poly_mul(ctx, f3, _poly_pow(ctx, P, k))
    return CubeFreeDecomp(f1, f2, f3)


def _poly_pow(ctx: FieldCtx, f: Poly, k: int) -> Poly:
    out: Poly = (1,)
    for _ in range(k):
        out = poly_mul(ctx, out, f)
    return out


# ---------------------------------------------------------------------------
# Text grammar: c_k*T^k + ... + c_0, extension coefficients as [c_{a-1},...,c_0]


def format_poly(ctx: FieldCtx, f: Poly) -> str:
    if not trim(f):
        return "0"
    f = trim(f)
    parts = []
    for i in range(len(f) - 1, -1, -1):
        c = f[i]
        if not c:
            continue
        if ctx.a == 1:
            cs = str(c)
        else:
            coords = ctx.element_coords(c)
            cs = "[" + ",".join(str(v) for v in reversed(coords)) + "]"
        if i == 0:
            parts.append(cs)
        else:
            tpow = "T" if i == 1 else f"T^{i}"
            parts.append(tpow if c == 1 else f"{cs}*{tpow}")
    return "+".join(parts)


def parse_poly(ctx: FieldCtx, text: str) -> Poly:
    s = text.replace(" ", "")
    if not s:
        raise DomainError("empty polynomial text")
    if s == "0":
        return ()
    # split into signed terms
    terms: list[tuple[int, str]] = []
    sign, buf, depth = 1, "", 0
    for ch in s:
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        if ch in "+-" and depth == 0 and buf:
            terms.append((sign, buf))
            sign = 1 if ch == "+" else -1
            buf = ""
        elif ch in "+-" and depth == 0 and not buf:
            sign = sign * (1 if ch == "+" else -1)
        else:
            buf += ch
    if buf:
        terms.append((sign, buf))
    coeffs: dict[int, int] = {}
    for sign, term in terms:
        c, power = _parse_term(ctx, term)
        if sign < 0:
            c = int(ctx.neg[c])
        coeffs[power] = int(ctx.add[coeffs.get(power, 0), c])
    if not coeffs:
        return ()
    out = [0] * (max(coeffs) + 1)
    for k, v in coeffs.items():
        out[k] = v
    return trim(out)


def _parse_term(ctx: FieldCtx, term: str) -> tuple[int, int]:
    if "T" in term:
        head, _, tail = term.partition("T")
        power = 1
        if tail.startswith("^"):
            power = int(tail[1:])
        elif tail:
            raise DomainError(f"cannot parse term {term!r}")
        head = head.rstrip("*")
        c = _parse_coeff(ctx, head) if head else 1
        return c, power
    return _parse_coeff(ctx, term), 0


def _parse_coeff(ctx: FieldCtx, text: str) -> int:
    if text.startswith("["):
        if not text.endswith("]"):
            raise DomainError(f"unterminated coefficient vector {text!r}")
        vals = [int(v) % ctx.p for v in text[1:-1].split(",")]
        return ctx.element_from_coords(list(reversed(vals)))
    v = int(text)
    if ctx.a == 1:
        return v % ctx.p
    return ctx.element_from_coords([v % ctx.p])
