"""Polynomials over the ground field and finite-dimensional k[T, T^-1]-modules.

A polynomial is a tuple of field elements from the constant term upwards.
Factorization is delegated to sympy; everything else is done here.
"""

from __future__ import annotations

import os
from contextlib import contextmanager
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
import sympy
from sympy.parsing.sympy_parser import (convert_xor, implicit_multiplication_application, parse_expr,
                                        standard_transformations)

from .exactla import Field, Subspace, block_diag, inverse, kernel, rank

T = sympy.Symbol("T")
DEFAULT_FACTOR_CAP = 12


class FactorCapError(ArithmeticError):
    pass


_cap_override: int | None = None


def factor_cap() -> int:
    if _cap_override is not None:
        return _cap_override
    return int(os.environ.get("STRINGALG_FACTOR_CAP", DEFAULT_FACTOR_CAP))


@contextmanager
def capped(cap: int | None):
    """Temporarily use ``cap`` as the factorization degree bound (None keeps the current one)."""
    global _cap_override
    old = _cap_override
    if cap is not None:
        _cap_override = cap
    try:
        yield
    finally:
        _cap_override = old


# arithmetic on coefficient tuples


def _trim(f, a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)


def padd(field: Field, a, b):
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        x = (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)
        out.append(x % field.p if field.p else x)
    return _trim(field, out)


def pmul(field: Field, a, b):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    if field.p:
        out = [x % field.p for x in out]
    else:
        out = [field.element(x) for x in out]
    return _trim(field, out)


def ppow(field: Field, a, r: int):
    out = (field.element(1),)
    for _ in range(r):
        out = pmul(field, out, a)
    return out


def degree(a) -> int:
    return len(a) - 1


def monic(field: Field, a):
    a = _trim(field, a)
    if not a:
        raise ValueError("the zero polynomial has no monic associate")
    lead = field.inv(a[-1])
    return tuple(field.element(x * lead) for x in a)


def reciprocal(field: Field, a):
    """Monic associate of T^deg a(1/T); the polynomial of T^-1 when a is that of T."""
    a = _trim(field, a)
    if a[0] == 0:
        raise ValueError("reciprocal needs a nonzero constant term")
    return monic(field, tuple(reversed(a)))


def companion(field: Field, a) -> np.ndarray:
    """Companion matrix of the monic polynomial a (last column holds -a_i)."""
    a = monic(field, a)
    n = degree(a)
    c = field.zeros(n, n)
    for i in range(1, n):
        c[i, i - 1] = field.element(1)
    for i in range(n):
        c[i, n - 1] = field.element(-a[i])
    return c


def eval_matrix(field: Field, a, m: np.ndarray) -> np.ndarray:
    """a(M) by Horner's rule."""
    n = m.shape[0]
    out = field.zeros(n, n)
    eye = field.eye(n)
    for coef in reversed(a):
        out = field.reduce(field.matmul(out, m) + coef * eye)
    return out


def charpoly(field: Field, m: np.ndarray):
    """Characteristic polynomial det(T - M) by Berkowitz's division-free recursion."""
    n = m.shape[0]
    if n == 0:
        return (field.element(1),)
    red = field.reduce
    v = [field.element(1), red(np.array([-m[0, 0]], dtype=field.dtype))[0]]
    for r in range(1, n):
        row, col, a = m[r, :r], m[:r, r], m[r, r]
        sub = m[:r, :r]
        t = [field.element(1), field.element(-a)]
        x = col.copy()
        for _ in range(r):
            t.append(field.element(-row.dot(x)))
            x = red(sub.dot(x))
        new = []
        for i in range(r + 2):
            s = 0
            for j in range(len(v)):
                if 0 <= i - j < len(t):
                    s += t[i - j] * v[j]
            new.append(field.element(s))
        v = new
    return tuple(reversed(v))


# sympy bridge


def to_sympy(field: Field, a) -> sympy.Poly:
    coeffs = [int(x) if field.p else sympy.Rational(int(x.numerator), int(x.denominator)) for x in reversed(a)]
    if field.p:
        return sympy.Poly(coeffs, T, modulus=field.p)
    return sympy.Poly(coeffs, T, domain=sympy.QQ)


def from_sympy(field: Field, poly: sympy.Poly):
    out = []
    for c in reversed(poly.all_coeffs()):
        if field.p:
            out.append(int(c) % field.p)
        else:
            c = sympy.Rational(c)
            out.append(field.element(Fraction(int(c.p), int(c.q))))
    return _trim(field, out)


def factor(field: Field, a) -> list[tuple[tuple, int]]:
    """Monic irreducible factors with multiplicities, sorted by (degree, coefficients)."""
    a = monic(field, a)
    if field.is_rational and degree(a) > factor_cap():
        raise FactorCapError(
            f"degree {degree(a)} exceeds the factorization cap {factor_cap()} over Q "
            "(set STRINGALG_FACTOR_CAP to raise it)")
    _, facs = to_sympy(field, a).factor_list()
    out = [(monic(field, from_sympy(field, g)), int(e)) for g, e in facs]
    return sorted(out, key=lambda ge: poly_key(field, ge[0]))


def is_irreducible(field: Field, a) -> bool:
    return degree(a) >= 1 and bool(to_sympy(field, a).is_irreducible)


def poly_key(field: Field, a):
    return (degree(a), tuple(int(x) if field.p else (x.numerator, x.denominator) for x in reversed(a)))


def format_poly(field: Field, a) -> str:
    """Human form such as ``T^2+1`` or ``T-2``.

    Over F_p a monic linear polynomial is written ``T-a`` with its root a in
    0..p-1; other coefficients are shown in the symmetric range around 0.
    """
    terms = []
    p = field.p
    if p and degree(a) == 1 and int(a[1]) == 1 and int(a[0]) != 0:
        return f"T-{(-int(a[0])) % p}"
    for i in range(degree(a), -1, -1):
        c = a[i]
        if p:
            c = int(c)
            if c > p // 2:
                c -= p
        else:
            c = Fraction(int(c.numerator), int(c.denominator))
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = -c if c < 0 else c
        mono = "" if i == 0 else ("T" if i == 1 else f"T^{i}")
        if mag == 1 and i > 0:
            body = mono
        else:
            body = str(mag) + (("*" + mono) if mono else "")
        terms.append((sign, body))
    if not terms:
        return "0"
    s = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    for sign, body in terms[1:]:
        s += sign + body
    return s


_TRANSFORMS = standard_transformations + (implicit_multiplication_application, convert_xor)


def parse_poly(field: Field, text: str):
    try:
        expr = parse_expr(text, local_dict={"T": T}, transformations=_TRANSFORMS)
        if expr.free_symbols - {T}:
            raise ValueError
    except (SyntaxError, TypeError, ValueError, sympy.SympifyError):
        raise ValueError(f"cannot read polynomial {text!r} in T") from None
    if field.p:
        poly = sympy.Poly(expr, T, modulus=field.p)
    else:
        poly = sympy.Poly(expr, T, domain=sympy.QQ)
    return from_sympy(field, poly)


# band coefficients and Laurent modules


@dataclass(frozen=True)
class BandCoefficient:
    """V = k[T]/(g^r) with g monic irreducible and g(0) != 0."""

    field: Field
    g: tuple
    r: int = 1

    def __post_init__(self):
        object.__setattr__(self, "g", monic(self.field, self.g))
        if self.r < 1:
            raise ValueError("power r must be at least 1")
        if self.g[0] == 0:
            raise ValueError("g(0) must be nonzero so that T acts invertibly")
        if not is_irreducible(self.field, self.g):
            raise ValueError(f"{format_poly(self.field, self.g)} is not irreducible")

    @property
    def dim(self) -> int:
        return degree(self.g) * self.r

    def matrix(self) -> np.ndarray:
        return companion(self.field, ppow(self.field, self.g, self.r))

    def inverted(self) -> "BandCoefficient":
        return BandCoefficient(self.field, reciprocal(self.field, self.g), self.r)

    def __str__(self):
        g = format_poly(self.field, self.g)
        return g if self.r == 1 else f"({g})^{self.r}"


def laurent_decompose(field: Field, t: np.ndarray) -> Counter:
    """Multiset {(g, r): multiplicity} of indecomposable summands of (k^n, T)."""
    n = t.shape[0]
    out: Counter = Counter()
    if n == 0:
        return out
    if rank(field, t) != n:
        raise ValueError("T must be invertible")
    for g, e in factor(field, charpoly(field, t)):
        d = degree(g)
        gm = eval_matrix(field, g, t)
        ranks = [n]
        power = field.eye(n)
        for _ in range(e):
            power = field.matmul(power, gm)
            ranks.append(rank(field, power))
        # blocks of size >= j: (ranks[j-1] - ranks[j]) / d
        ge = [(ranks[j - 1] - ranks[j]) // d for j in range(1, e + 1)] + [0]
        for j in range(1, e + 1):
            cnt = ge[j - 1] - ge[j]
            if cnt:
                out[(g, j)] += cnt
    return out


def cyclic_blocks(field: Field, a: np.ndarray) -> list[tuple[tuple, int, np.ndarray]]:
    """Generators w with block basis w, Aw, ..., A^(d r - 1) w for each summand k[T]/(g^r).

    Returns (g, r, w) triples; the concatenated block bases form a basis of k^n.
    """
    n = a.shape[0]
    out = []
    if n == 0:
        return out
    for g, e in factor(field, charpoly(field, a)):
        d = degree(g)
        nm = eval_matrix(field, g, a)
        layers = [Subspace.zero(field, n)]
        power = field.eye(n)
        for _ in range(e):
            power = field.matmul(power, nm)
            layers.append(kernel(field, power))
        layers.append(layers[-1])
        for j in range(e, 0, -1):
            hi = layers[j + 1]
            nhi = Subspace.span(field, field.matmul(hi.basis, nm.T), n) if hi.dim else Subspace.zero(field, n)
            acc = layers[j - 1] + nhi
            for w in layers[j].basis:
                if acc.contains(w):
                    continue
                orbit = [w]
                for _ in range(d - 1):
                    orbit.append(field.matmul(a, orbit[-1][:, None])[:, 0])
                acc = acc + Subspace.span(field, np.array(orbit, dtype=field.dtype), n)
                out.append((g, j, w))
    return out


def block_basis(field: Field, a: np.ndarray, blocks) -> np.ndarray:
    """Columns w, Aw, ... for each block, as an n-by-n change-of-basis matrix."""
    cols = []
    for g, r, w in blocks:
        v = w
        for _ in range(degree(g) * r):
            cols.append(v)
            v = field.matmul(a, v[:, None])[:, 0]
    return np.array(cols, dtype=field.dtype).T.reshape(a.shape[0], len(cols))


def check_cyclic(field: Field, a: np.ndarray, blocks) -> bool:
    p = block_basis(field, a, blocks)
    if p.shape[1] != a.shape[0] or rank(field, p) != a.shape[0]:
        return False
    target = block_diag(field, [companion(field, ppow(field, g, r)) for g, r, _ in blocks])
    return bool(np.all(field.matmul(field.matmul(inverse(field, p), a), p) == target))
