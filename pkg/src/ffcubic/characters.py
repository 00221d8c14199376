"""Cubic residue symbols, the characters chi_F, and the family of square-free conductors.

A symbol value is an exponent k in {0, 1, 2} meaning xi3^k, or None for the
absorbed zero; exponents multiply by addition mod 3.  Values never leave
this exact representation until a caller embeds them through
:class:`~ffcubic.algebra.Eisenstein`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional

from .algebra import Eisenstein, FieldCtx
from .errors import DomainError, NotIrreducible, NotSquareFree
from .polyring import (
    Poly,
    degree,
    is_irreducible,
    is_squarefree,
    enumerate_squarefree,
    make_monic,
    poly_mod,
    poly_pow_mod,
    squarefree_count,
    trim,
)

Mu3 = Optional[int]


def mu3_mul(x: Mu3, y: Mu3) -> Mu3:
    """Product in mu3 union {0}: exponents add mod 3, zero absorbs."""
    if x is None or y is None:
        return None
    return (x + y) % 3


def mu3_pow(x: Mu3, k: int) -> Mu3:
    if x is None:
        return None
    return (x * k) % 3


def mu3_conj(x: Mu3) -> Mu3:
    return None if x is None else (-x) % 3


def mu3_to_eisenstein(x: Mu3) -> Eisenstein:
    return Eisenstein.from_exponent(x)


def symbol_direct(ctx: FieldCtx, a: Poly, P: Poly) -> Mu3:
    """Reference oracle: (a/P)_3 by residue exponentiation mod the prime P."""
    P = trim(P)
    if degree(P) < 1 or not is_irreducible(ctx, P):
        raise NotIrreducible(f"modulus is not a monic irreducible")
    r = poly_mod(ctx, trim(a), P)
    if not r:
        return None
    d = degree(P)
    x = poly_pow_mod(ctx, r, (ctx.q**d - 1) // 3, P)
    if degree(x) != 0:
        raise ArithmeticError("residue exponentiation left the constants: not a field?")
    return ctx.omega_table[x[0]]


def symbol_any(ctx: FieldCtx, a: Poly, F: Poly) -> Mu3:
    """(a/F)_3 for any monic F, by the reciprocity-accelerated Euclidean recursion.

    Equals the product over P^e || F of (a/P)_3^e without factoring F.  Each
    round reduces a mod F, splits off the leading constant c through
    (c/F)_3 = chi3(c)^(deg F), makes the remainder monic, and swaps the
    arguments by cubic reciprocity (exact for monic coprime pairs since
    q = 1 mod 6).
    """
    F = trim(F)
    if not F or F[-1] != 1:
        raise DomainError("symbol modulus must be monic")
    a = trim(a)
    e = 0
    chi3exp = ctx.chi3exp
    while True:
        dF = degree(F)
        if dF == 0:
            return e % 3
        a = poly_mod(ctx, a, F)
        if not a:
            return None
        c = a[-1]
        if c != 1:
            e += int(chi3exp[c]) * dF
            a = make_monic(ctx, a)
        a, F = F, a


def symbol(ctx: FieldCtx, a: Poly, F: Poly) -> Mu3:
    """(a/F)_3 for square-free monic F; raises NotSquareFree otherwise."""
    F = trim(F)
    if degree(F) >= 1 and not is_squarefree(ctx, F):
        raise NotSquareFree("symbol modulus must be square-free")
    return symbol_any(ctx, a, F)


@dataclass(frozen=True)
class Character:
    """A cubic character chi_F^e with square-free conductor F and e in {1, 2}.

    e = 2 encodes the conjugate character.  The parity marker delta is 0
    exactly when deg F = 0 mod 3, and the genus is deg F - 2 + delta.
    """

    ctx: FieldCtx
    F: Poly
    e: int = 1

    def __post_init__(self):
        F = trim(self.F)
        object.__setattr__(self, "F", F)
        if degree(F) < 1 or F[-1] != 1:
            raise DomainError("character conductor must be monic of degree >= 1")
        if not is_squarefree(self.ctx, F):
            raise NotSquareFree("character conductor must be square-free")
        if self.e not in (1, 2):
            raise DomainError("character power must be 1 or 2")

    @property
    def delta(self) -> int:
        return 0 if degree(self.F) % 3 == 0 else 1

    @property
    def genus(self) -> int:
        return degree(self.F) - 2 + self.delta

    def conjugate(self) -> "Character":
        return Character(self.ctx, self.F, 3 - self.e)

    def __call__(self, a: Poly) -> Mu3:
        return chiF(self, a)


def chiF(chi: Character, a: Poly) -> Mu3:
    """Value exponent of chi_F^e at a; restricted to constants this is chi3^(e deg F)."""
    return mu3_pow(symbol_any(chi.ctx, a, chi.F), chi.e)


def family_H3g(ctx: FieldCtx, g: int) -> Iterator[Character]:
    """The family of genus-3g characters chi_F over square-free F of degree 3g+1.

    Every member is odd (delta = 1).  The stream follows the canonical
    square-free enumeration order and can be restarted through
    enumerate_squarefree for chunked consumption.
    """
    if g < 0:
        raise DomainError("genus parameter must be >= 0")
    for F in enumerate_squarefree(ctx, 3 * g + 1):
        yield Character(ctx, F, 1)


def family_H3g_size(ctx: FieldCtx, g: int) -> int:
    """|H(3g+1)|: q^(3g+1) - q^(3g) for g >= 1, and q at g = 0."""
    return squarefree_count(ctx, 3 * g + 1)
