"""Decomposition of a finite-dimensional representation into string and band modules.

Multiplicities are read off refined functors: a string summand M(C) is
counted by dim F_{B,D}(M) with B^-1 D = C, and the band summands for a
periodic word E are the Laurent-module summands of the automorphism that
the relation of E induces on C-sharp / C-flat.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field as dc_field

import numpy as np

from . import linrel
from .exactla import Field, inverse, rank, solve_left
from .functors import refined
from .laurent import (BandCoefficient, block_basis, check_cyclic, cyclic_blocks, format_poly,
                      laurent_decompose, poly_key)
from .repmod import Representation, band_module, direct_sum, string_module, word_relation
from .words import Word, _cyclically_valid, _inv_letters, _key, _primitive_root, canonical_rep, sort_key


class AuditError(ArithmeticError):
    """Summand dimensions do not add up to the module (an internal inconsistency)."""


class CertificationError(ArithmeticError):
    pass


@dataclass
class DecompositionReport:
    field: Field
    strings: list = dc_field(default_factory=list)   # (Word, mult)
    bands: list = dc_field(default_factory=list)     # (Word, BandCoefficient, mult)
    audit: dict = dc_field(default_factory=dict)

    def key(self):
        return (tuple((str(w), k) for w, k in self.strings),
                tuple((str(w), c.g, c.r, k) for w, c, k in self.bands))

    def __eq__(self, other):
        return isinstance(other, DecompositionReport) and self.field == other.field and self.key() == other.key()

    def summands(self) -> int:
        return sum(k for _, k in self.strings) + sum(k for _, _, k in self.bands)

    def to_json(self) -> dict:
        f = self.field
        return {
            "field": "Q" if f.p is None else {"Fp": f.p},
            "strings": [{"word": str(w), "mult": k} for w, k in self.strings],
            "bands": [{"word": str(w), "poly": format_poly(f, c.g), "power": c.r, "mult": k}
                      for w, c, k in self.bands],
            "audit": dict(self.audit),
        }

    def pretty(self) -> str:
        lines = []
        for w, k in self.strings:
            lines.append(f"string  {w}" + (f"  x{k}" if k > 1 else ""))
        for w, c, k in self.bands:
            lines.append(f"band    {w}  V = k[T]/({c})" + (f"  x{k}" if k > 1 else ""))
        if not lines:
            lines.append("zero module")
        lines.append("audit   " + ", ".join(f"{v}:{n}" for v, n in self.audit.items()))
        return "\n".join(lines)


# canonical forms


def canonical_band(e: Word, coeff: BandCoefficient) -> tuple[Word, BandCoefficient]:
    """The canonical word of the class of E with the coefficient read in its frame.

    Rotating E keeps V; inverting E replaces V by V^-1 (g by its reciprocal).
    """
    c = canonical_rep(e)
    n = len(e.period)
    for i in range(n):
        if e.period[i:] + e.period[:i] == c.period:
            return c, coeff
    return c, coeff.inverted()


def make_report(field: Field, strings, bands, dims: dict | None = None) -> DecompositionReport:
    """Report from (word, mult) and (word, coeff, mult) lists; words need not be canonical."""
    sc: Counter = Counter()
    words = {}
    for w, k in strings:
        c = canonical_rep(w)
        sc[str(c)] += k
        words[str(c)] = c
    bc: Counter = Counter()
    for w, coeff, k in bands:
        c, cf = canonical_band(w, coeff)
        bc[(str(c), cf.g, cf.r)] += k
        words[str(c)] = c
    s_out = sorted(((words[s], k) for s, k in sc.items() if k), key=lambda t: sort_key(t[0]))
    b_out = sorted(((words[s], BandCoefficient(field, g, r), k) for (s, g, r), k in bc.items() if k),
                   key=lambda t: (sort_key(t[0]), poly_key(field, t[1].g), t[1].r))
    rep = DecompositionReport(field, s_out, b_out)
    rep.audit = audit(rep, dims)
    return rep


def summand_dims(rep: DecompositionReport, vertices) -> dict:
    out = {v: 0 for v in vertices}
    for w, k in rep.strings:
        for v, n in w.index_counts().items():
            out[v] += n * k
    for w, c, k in rep.bands:
        for v, n in w.index_counts().items():
            out[v] += n * k * c.dim
    return out


def audit(rep: DecompositionReport, dims: dict | None) -> dict:
    if dims is None:
        vertices = set()
        for w, _ in rep.strings:
            vertices |= set(w.index_counts())
        for w, _, _ in rep.bands:
            vertices |= set(w.index_counts())
        return summand_dims(rep, sorted(vertices))
    got = summand_dims(rep, list(dims))
    if got != dict(dims):
        raise AuditError(f"summand dimensions {got} do not match the module dimensions {dict(dims)}")
    return got


def merge(a: DecompositionReport, b: DecompositionReport) -> DecompositionReport:
    if a.field != b.field:
        raise ValueError("reports over different fields")
    dims = None
    if a.audit and b.audit:
        dims = {v: a.audit.get(v, 0) + b.audit.get(v, 0) for v in set(a.audit) | set(b.audit)}
    out = make_report(a.field, a.strings + b.strings, a.bands + b.bands)
    if dims is not None:
        out.audit = {v: dims[v] for v in sorted(dims)}
    return out


# candidate words


def live_words(m: Representation, budget: dict | None = None) -> list[tuple]:
    """Letter tuples D with D M != D 0, with at most ``budget[v]`` letters at head v.

    Every factor of a live word is live, so growing words on the left from live
    words reaches all of them.
    """
    alg = m.algebra
    budget = dict(m.dims) if budget is None else budget
    out = []
    frontier = []
    for ell in alg.letters():
        h = alg.head(ell)
        if budget.get(h, 0) < 1:
            continue
        if m.word_space((ell,), "M") != m.word_space((ell,), "0"):
            frontier.append(((ell,), {h: 1}))
    while frontier:
        nxt = []
        for letters, counts in frontier:
            out.append(letters)
            head = alg.head(letters[0])
            for ell in alg.letters():
                if alg.tail(ell) != head or not alg.prepends(ell, letters):
                    continue
                h = alg.head(ell)
                if counts.get(h, 0) + 1 > budget.get(h, 0):
                    continue
                cand = (ell,) + letters
                if m.word_space(cand, "M") != m.word_space(cand, "0"):
                    c2 = dict(counts)
                    c2[h] = c2.get(h, 0) + 1
                    nxt.append((cand, c2))
        frontier = nxt
    return out


def _fits(counts: dict, dims: dict, scale: int = 1) -> bool:
    return all(n * scale <= dims.get(v, 0) for v, n in counts.items())


def string_candidates(m: Representation, live) -> list[Word]:
    alg = m.algebra
    out = [Word(alg, (), (), v, 1) for v in alg.vertices if m.dims[v] > 0]
    for letters in live:
        w = Word(alg, letters)
        if _key(letters) <= _key(_inv_letters(letters)) and _fits(w.index_counts(), m.dims):
            out.append(w)
    return out


def band_candidates(m: Representation, live) -> list[Word]:
    alg = m.algebra
    out = []
    for letters in live:
        if alg.head(letters[0]) != alg.tail(letters[-1]):
            continue
        if _primitive_root(letters) != letters or not _cyclically_valid(alg, letters):
            continue
        w = Word(alg, (), letters, bi=True)
        if canonical_rep(w) == w:
            out.append(w)
    return out


def string_split(c: Word) -> tuple[Word, Word]:
    """(B, D) with B^-1 D = C, split at index 0."""
    alg = c.algebra
    sigma = c.sign
    return Word(alg, (), (), c.head, -sigma), c


def band_split(e: Word) -> tuple[Word, Word]:
    alg = e.algebra
    return (Word.eventually(alg, (), _inv_letters(e.period)), Word.eventually(alg, (), e.period))


def decompose(m: Representation) -> DecompositionReport:
    hit = m._cache.get("decompose")
    if hit is None:
        hit = m._cache["decompose"] = _decompose(m)
    return hit


def _decompose(m: Representation) -> DecompositionReport:
    f = m.field
    live = live_words(m)
    strings = []
    for c in string_candidates(m, live):
        b, d = string_split(c)
        k = refined(m, b, d).dim
        if k:
            strings.append((c, k))
    bands = []
    for e in band_candidates(m, live):
        cr = linrel.core(word_relation(m, e.period))
        if cr.rank == 0:
            continue
        for (g, r), k in laurent_decompose(f, cr.theta).items():
            bands.append((e, BandCoefficient(f, g, r), k))
    return make_report(f, strings, bands, m.dims)


def krs_check(m1: Representation, m2: Representation) -> bool:
    if m1.dims != m2.dims:
        return False
    return decompose(m1) == decompose(m2)


# building modules from reports


def summand_modules(alg, rep: DecompositionReport) -> list[tuple]:
    """(kind, word, coeff, module) for every summand copy, in report order."""
    f = rep.field
    out = []
    for w, k in rep.strings:
        mod = string_module(alg, f, w)
        out += [("string", w, None, mod)] * k
    for w, c, k in rep.bands:
        mod = band_module(alg, f, w, c)
        out += [("band", w, c, mod)] * k
    return out


def build(alg, rep: DecompositionReport) -> Representation:
    mods = [s[3] for s in summand_modules(alg, rep)]
    return direct_sum(mods, alg, rep.field)


# certification


def _kernel_arrows(alg, verts, letters, i, band: bool) -> list[str]:
    """Arrows with tail v_i that must kill the basis block at index i."""
    n = len(letters)
    acting = set()
    if i >= 1 and letters[i - 1].direct:
        acting.add(letters[i - 1].arrow)
    if i + 1 <= n and letters[i].inverse:
        acting.add(letters[i].arrow)
    if band and i == 0 and letters[-1].direct:
        acting.add(letters[-1].arrow)
    return [a.name for a in alg.quiver.arrows if a.tail == verts[i] and a.name not in acting]


def solve_chain(m: Representation, verts, letters, fixed: dict, band: bool = False) -> list:
    """Vectors m_0..m_n along the word with the given ones fixed.

    Direct letter C_i = x imposes X m_i = m_(i-1); an inverse letter imposes
    X m_(i-1) = m_i; other arrows at each index must vanish on m_i.
    """
    f, alg = m.field, m.algebra
    n = len(letters)
    idx = list(range(n + 1))
    dims = [m.dims[verts[i % len(verts)] if band else verts[i]] for i in idx]
    free = [i for i in idx if i not in fixed]
    offs, acc = {}, 0
    for i in free:
        offs[i] = acc
        acc += dims[i]
    rows_a, rows_b = [], []

    def add(coefs: dict, const):
        """sum_i coefs[i] @ m_i = const (coefs are matrices)."""
        nrows = len(const)
        row = f.zeros(nrows, acc)
        rhs = np.array(const, dtype=f.dtype)
        for i, mat in coefs.items():
            if i in fixed:
                rhs = f.reduce(rhs - f.matmul(mat, fixed[i][:, None])[:, 0])
            else:
                row[:, offs[i]:offs[i] + dims[i]] = f.reduce(row[:, offs[i]:offs[i] + dims[i]] + mat)
        rows_a.append(row)
        rows_b.append(rhs)

    for i, ell in enumerate(letters, start=1):
        x = m.action[ell.arrow]
        src, dst = (i, i - 1) if ell.direct else (i - 1, i)
        add({src: x, dst: f.reduce(-f.eye(dims[dst]))},
            f.zeros(1, dims[dst])[0])
    for i in range(n if band else n + 1):
        for a in _kernel_arrows(alg, verts, letters, i, band):
            x = m.action[a]
            if x.shape[0]:
                add({i: x}, f.zeros(1, x.shape[0])[0])
    if acc == 0:
        sol = f.zeros(1, 0)[0]
        for a_, b_ in zip(rows_a, rows_b):
            if np.any(b_ != 0):
                raise CertificationError("witness chain constraints fail on the fixed vectors")
    else:
        a = np.vstack(rows_a) if rows_a else f.zeros(0, acc)
        b = np.concatenate(rows_b) if rows_b else f.zeros(1, 0)[0]
        sol = solve_left(f, a.T.copy(), b)
        if sol is None:
            raise CertificationError("witness chain system has no solution")
    out = []
    for i in idx:
        out.append(fixed[i] if i in fixed else sol[offs[i]:offs[i] + dims[i]])
    return out


def certify(m: Representation, rep: DecompositionReport):
    """An isomorphism N -> M with N the direct sum described by ``rep``.

    Returns (N, theta) where theta maps each vertex to an invertible matrix
    with theta[head] N(x) = M(x) theta[tail] for every arrow x.
    """
    f, alg = m.field, m.algebra
    if summand_dims(rep, alg.vertices) != m.dims:
        raise CertificationError("report dimensions do not match the module")
    cols: dict = {v: [] for v in alg.vertices}   # (position in N, column vector)
    pos = {v: 0 for v in alg.vertices}
    mods = []
    for w, k in rep.strings:
        b, d = string_split(w)
        val = refined(m, b, d)
        lifts = val.quotient_basis()
        if lifts.shape[0] != k:
            raise CertificationError(f"refined functor of {w} has dimension {lifts.shape[0]}, report says {k}")
        verts = w.vertices()
        for j in range(k):
            chain = solve_chain(m, verts, w.letters, {0: lifts[j]})
            base = dict(pos)
            for i, v in enumerate(verts):
                cols[v].append((base[v] + sum(1 for u in verts[:i] if u == v), chain[i]))
            for v, cnt in w.index_counts().items():
                pos[v] += cnt
            mods.append(string_module(alg, f, w))
    by_word: dict = {}
    for w, c, k in rep.bands:
        by_word.setdefault(str(w), (w, []))[1].append((c, k))
    for _, (w, coeffs) in sorted(by_word.items(), key=lambda t: sort_key(t[1][0])):
        rel = word_relation(m, w.period)
        cr = linrel.core(rel)
        u, a = linrel.split(rel, cr)
        blocks = cyclic_blocks(f, a) if a.shape[0] else []
        if not check_cyclic(f, a, blocks):
            raise CertificationError("cyclic decomposition of the band automorphism failed")
        pool: dict = {}
        for g, r, wv in blocks:
            pool.setdefault((g, r), []).append(wv)
        verts = w.vertices()
        for c, k in coeffs:
            gens = pool.get((c.g, c.r), [])
            if len(gens) < k:
                raise CertificationError(f"band {w} has fewer than {k} summands with coefficient {c}")
            tmat = c.matrix()
            tinv = inverse(f, tmat)
            for _ in range(k):
                wv = gens.pop(0)
                coords = block_basis(f, a, [(c.g, c.r, wv)])          # k x d
                theta0 = f.matmul(u.T.copy(), coords)                  # dim e_v M x d
                end = f.matmul(theta0, tinv)
                d = c.dim
                blocks_out = [f.zeros(m.dims[v], d) for v in verts]
                for col in range(d):
                    chain = solve_chain(m, verts, w.period, {0: theta0[:, col], len(verts): end[:, col]},
                                        band=True)
                    for i in range(len(verts)):
                        blocks_out[i][:, col] = chain[i]
                base = dict(pos)
                for i, v in enumerate(verts):
                    start = base[v] + sum(1 for uu in verts[:i] if uu == v) * d
                    for col in range(d):
                        cols[v].append((start + col, blocks_out[i][:, col]))
                for v, cnt in w.index_counts().items():
                    pos[v] += cnt * d
                mods.append(band_module(alg, f, w, c))
    n_mod = direct_sum(mods, alg, f)
    theta = {}
    for v in alg.vertices:
        mat = f.zeros(m.dims[v], n_mod.dims[v])
        for p, vec in cols[v]:
            mat[:, p] = vec
        theta[v] = mat
    for a in alg.quiver.arrows:
        lhs = f.matmul(theta[a.head], n_mod.action[a.name])
        rhs = f.matmul(m.action[a.name], theta[a.tail])
        if np.any(lhs != rhs):
            raise CertificationError(f"the assembled map does not commute with arrow {a.name}")
    for v in alg.vertices:
        if theta[v].shape[0] != theta[v].shape[1] or rank(f, theta[v]) != theta[v].shape[0]:
            raise CertificationError(f"the assembled map is not invertible at vertex {v}")
    return n_mod, theta

