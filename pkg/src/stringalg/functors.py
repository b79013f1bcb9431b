"""The subspaces C+(M), C-(M), the refined functors F_{B,D}, and covering searches."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linrel
from .algebra import Letter
from .exactla import Subspace, quotient_basis
from .repmod import Representation, word_relation
from .words import Word, WordError, _inv_letters


@dataclass(frozen=True, eq=False)
class FiltrationPair:
    word: Word
    plus: Subspace
    minus: Subspace


@dataclass(frozen=True, eq=False)
class RefinedValue:
    b: Word
    d: Word
    plus: Subspace
    minus: Subspace
    theta: np.ndarray | None = None
    core: linrel.RelationCore | None = None

    @property
    def dim(self) -> int:
        return self.plus.dim - self.minus.dim

    def quotient_basis(self) -> np.ndarray:
        return quotient_basis(self.minus, self.plus)


def extensions(c: Word) -> tuple[Letter | None, Letter | None]:
    """(y, x^-1): the direct and the inverse letter with C y and C x^-1 words (or None)."""
    alg = c.algebra
    direct = inverse = None
    if c.kind == "trivial":
        cands = alg.letters_at(c.vertex, c.trivial_sign)
    else:
        cands = [ell for ell in alg.letters_at(c.tail) if alg.extends(c.letters, ell)]
    for ell in cands:
        if ell.direct:
            direct = ell
        else:
            inverse = ell
    return direct, inverse


def _finite_space(m: Representation, c: Word, extra: tuple, base: str) -> Subspace:
    letters = c.letters + extra
    return m.word_space(letters, base, c.vertex if not letters else None)


def _stable(m: Representation, period: tuple, start: Subspace) -> Subspace:
    h = start
    while True:
        nxt = m.apply_letters(period, h)
        if nxt == h:
            return h
        h = nxt


def plus_minus(m: Representation, c: Word) -> FiltrationPair:
    if c.bi:
        raise WordError("C+ and C- are defined for words in some W_(v,e), not Z-words")
    if c.algebra is not m.algebra and repr(c.algebra) != repr(m.algebra):
        raise WordError("word and module are over different algebras")
    if c.is_finite:
        y, xinv = extensions(c)
        plus = _finite_space(m, c, (xinv,), "0") if xinv else _finite_space(m, c, (), "M")
        minus = _finite_space(m, c, (y,), "M") if y else _finite_space(m, c, (), "0")
        return FiltrationPair(c, plus, minus)
    # A B B B ...: C+ = A(B''), C- = A(B') with B acting on e_{head B} M
    v = m.algebra.head(c.period[0])
    b2 = _stable(m, c.period, m.space(v, "M"))
    b1 = _stable(m, c.period, m.space(v, "0"))
    return FiltrationPair(c, m.apply_letters(c.letters, b2), m.apply_letters(c.letters, b1))


def _junction_ok(b: Word, d: Word) -> bool:
    """Whether B^-1 D is a word (B and D have the same head and opposite signs)."""
    alg = b.algebra
    k = alg.max_relation + 2
    lb = tuple(x for x in b.prefix(k) if x is not None) if b.kind != "trivial" else ()
    ld = tuple(x for x in d.prefix(k) if x is not None) if d.kind != "trivial" else ()
    return alg.valid_sequence(_inv_letters(lb) + ld)


def periodic_pair(b: Word, d: Word) -> tuple | None:
    """The period E when B^-1 D is the periodic Z-word ...E E | E E..., else None."""
    if b.kind != "eventual" or d.kind != "eventual" or b.letters or d.letters:
        return None
    e = d.period
    if b.period == _inv_letters(e):
        return e
    return None


def refined(m: Representation, b: Word, d: Word) -> RefinedValue:
    f = m.field
    if b.head != d.head or b.sign == d.sign:
        raise WordError("B and D need the same head and opposite signs")
    n = m.dims[b.head]
    if not _junction_ok(b, d):
        z = Subspace.zero(f, n)
        return RefinedValue(b, d, z, z)
    pb, pd = plus_minus(m, b), plus_minus(m, d)
    plus = pb.plus & pd.plus
    minus = (pb.plus & pd.minus) + (pb.minus & pd.plus)
    e = periodic_pair(b, d)
    if e is None:
        return RefinedValue(b, d, plus, minus)
    cr = linrel.core(word_relation(m, e))
    if cr.sharp != plus or cr.flat != minus:
        raise ArithmeticError("refined functor disagrees with the core of the period relation")
    return RefinedValue(b, d, plus, minus, cr.theta, cr)


# covering searches


class CoveringError(ArithmeticError):
    pass


def _meets(m_vec, x: Subspace, modulus: Subspace | None) -> bool:
    if modulus is not None:
        x = x + modulus
    return x.contains(m_vec)


def _detect(seq: list):
    """Smallest (a, p) with seq[i] == seq[i + p] for i >= a and at least three periods seen."""
    n = len(seq)
    for a in range(n):
        for p in range(1, (n - a) // 3 + 1):
            if all(seq[i] == seq[i + p] for i in range(a, n - p)):
                return a, p
    return None


def _start_state(m: Representation, vec, v, modulus) -> linrel.LinearRelation:
    """Pairs (u, s) in e_v M + k with u - s vec in the modulus."""
    f, n = m.field, m.dims[v]
    rows = [list(vec) + [1]]
    if modulus is not None:
        rows += [list(r) + [0] for r in modulus.basis]
    return linrel.LinearRelation(f, n, 1, Subspace.span(f, rows, n + 1))


def _extend(m: Representation, state: linrel.LinearRelation, ell) -> linrel.LinearRelation:
    return linrel.compose(state, word_relation(m, (ell,)))


def covering_search(m: Representation, vec, v, eps: int, modulus: Subspace | None = None,
                    max_steps: int | None = None) -> Word:
    """A word C in W_(v,eps) with vec in C+(M) but not in C-(M) (modulo ``modulus``).

    Extends one letter at a time, a direct letter y whenever the target meets
    D y M and otherwise an inverse letter x^-1 whenever it misses D x^-1 0.
    The state carried along is the relation {(u, s) : D relates u to s vec
    plus an element of the modulus}, so each step costs one composition.
    An endless run is recognized as eventually periodic and verified.
    """
    alg, f = m.algebra, m.field
    v = str(v)
    vec = np.asarray(vec, dtype=f.dtype)
    if not np.any(vec != 0) or (modulus is not None and modulus.contains(vec)):
        raise ValueError("the vector must be nonzero (modulo the given subspace)")
    d = Word(alg, (), (), v, eps)
    letters: list = []
    state = _start_state(m, vec, v, modulus)
    one = f.vector([1])
    limit = max_steps or 3 * max(m.total_dim, 1) + 6
    while True:
        while len(letters) < limit:
            cur = Word(alg, tuple(letters)) if letters else d
            y, xinv = extensions(cur)
            if y is not None:
                nxt = _extend(m, state, y)
                if not nxt.graph.is_zero() and nxt.tgt_part.any():
                    letters.append(y)
                    state = nxt
                    continue
            if xinv is not None:
                nxt = _extend(m, state, xinv)
                if not nxt.contains_pair(f.zeros(1, nxt.source)[0], one):
                    letters.append(xinv)
                    state = nxt
                    continue
            pm = plus_minus(m, cur)
            if not _meets(vec, pm.plus, modulus) or _meets(vec, pm.minus, modulus):
                raise CoveringError("finite covering word failed verification")
            return cur
        found = _detect(letters)
        if found is not None:
            a, p = found
            c = Word.eventually(alg, tuple(letters[:a]), tuple(letters[a:a + p]))
            pm = plus_minus(m, c)
            if _meets(vec, pm.plus, modulus) and not _meets(vec, pm.minus, modulus):
                return c
        if limit > 64 * max(m.total_dim, 1) + 64:
            raise CoveringError("covering search did not settle into a verified periodic word")
        limit *= 2


def refined_covering(m: Representation, vec, v) -> tuple[Word, Word]:
    """(B, D) in W_(v,1) x W_(v,-1) with vec in G+_{B,D}(M) but not in G-_{B,D}(M)."""
    b = covering_search(m, vec, v, 1)
    pb = plus_minus(m, b)
    d = covering_search(m, vec, v, -1, modulus=pb.minus)
    pd = plus_minus(m, d)
    gplus = pb.minus + (pd.plus & pb.plus)
    gminus = pb.minus + (pd.minus & pb.plus)
    if not gplus.contains(vec) or gminus.contains(vec):
        raise CoveringError("refined covering pair failed verification")
    return b, d
