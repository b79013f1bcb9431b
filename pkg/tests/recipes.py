"""Random direct sums of string and band modules with a known recipe."""

import numpy as np

from stringalg import catalog, repmod
from stringalg.decompose import make_report
from stringalg.exactla import Field
from stringalg.laurent import BandCoefficient, is_irreducible
from stringalg.words import Word, power_is_word, _primitive_root

ALGEBRAS = {
    "xy": catalog.xy_algebra,
    "sqzero": catalog.square_zero_algebra,
    "gentle3": catalog.gentle_three,
}


def random_finite_word(alg, rng, max_len=8):
    n = int(rng.integers(0, max_len + 1))
    v = alg.vertices[int(rng.integers(len(alg.vertices)))]
    letters = []
    for _ in range(n):
        if letters:
            opts = [e for e in alg.letters_at(alg.tail(letters[-1])) if alg.extends(letters, e)]
        else:
            opts = alg.letters_at(v)
        if not opts:
            break
        letters.append(opts[int(rng.integers(len(opts)))])
    if not letters:
        return Word.trivial(alg, v, 1)
    return Word.finite(alg, letters)


def random_band_word(alg, rng, max_period=4, tries=200):
    for _ in range(tries):
        w = random_finite_word(alg, rng, max_period)
        if w.kind == "trivial":
            continue
        seq = w.letters
        if alg.head(seq[0]) == alg.tail(seq[-1]) and power_is_word(alg, seq) and _primitive_root(seq) == seq:
            return Word.periodic(alg, seq)
    return None


def random_coefficient(field, rng, max_deg=2, max_r=2):
    r = int(rng.integers(1, max_r + 1))
    while True:
        deg = int(rng.integers(1, max_deg + 1))
        if field.p:
            coeffs = [int(c) for c in rng.integers(0, field.p, size=deg)] + [1]
        else:
            coeffs = [int(c) for c in rng.integers(-3, 4, size=deg)] + [1]
        g = tuple(field.element(c) for c in coeffs)
        if g[0] != 0 and is_irreducible(field, g):
            return BandCoefficient(field, g, r)


def random_recipe(alg, field, rng, n_summands=None, band_prob=0.35, max_dim=None):
    n_summands = n_summands or int(rng.integers(1, 4))
    strings, bands, mods = [], [], []
    for _ in range(n_summands):
        e = random_band_word(alg, rng) if rng.random() < band_prob else None
        if e is not None:
            c = random_coefficient(field, rng)
            bands.append((e, c, 1))
            mods.append(repmod.band_module(alg, field, e, c))
        else:
            w = random_finite_word(alg, rng)
            strings.append((w, 1))
            mods.append(repmod.string_module(alg, field, w))
    n = repmod.direct_sum(mods, alg, field)
    return n, make_report(field, strings, bands, n.dims)


def fields():
    return [Field(5), Field()]


def random_relation(field, rng, n=None, m=None, max_dim=6):
    from stringalg.exactla import Subspace
    from stringalg.linrel import LinearRelation

    n = n if n is not None else int(rng.integers(1, max_dim + 1))
    m = m if m is not None else n
    rows = int(rng.integers(0, n + m + 1))
    graph = Subspace.span(field, field.random_matrix(rng, rows, n + m), n + m)
    return LinearRelation(field, n, m, graph)


def random_endorelation(field, rng, max_dim=6):
    """A random endorelation, biased towards the interesting cases (near maps, some defect)."""
    from stringalg.exactla import Subspace
    from stringalg.linrel import LinearRelation

    n = int(rng.integers(1, max_dim + 1))
    kind = rng.integers(3)
    if kind == 0:
        return random_relation(field, rng, n, n)
    a = field.random_matrix(rng, n, n)
    rows = [list(field.eye(n)[i]) + list(a[:, i]) for i in range(n)]
    keep = [r for r in rows if rng.random() < 0.8]
    extra = field.random_matrix(rng, int(rng.integers(0, 3)), 2 * n) if kind == 2 else field.zeros(0, 2 * n)
    mat = np.vstack([field.array(keep, 2 * n), extra]) if keep else extra
    return LinearRelation(field, n, n, Subspace.span(field, mat, 2 * n))


def evaluation_oracle(m, c0, d):
    """Spans of {b_i : v_i = v, C0(i, e) <= D} and {... < D} in e_v M(C0), via the comparator only."""
    from stringalg.exactla import Subspace
    from stringalg.words import compare, index_view

    v, eps = d.head, d.sign
    n = m.dims[v]
    eye = m.field.eye(n)
    plus, minus = [], []
    for i, (vi, pos) in enumerate(m.labels):
        if vi != v:
            continue
        side, _ = index_view(c0, i, eps)
        c = compare(side, d)
        if c <= 0:
            plus.append(eye[pos])
        if c < 0:
            minus.append(eye[pos])
    return Subspace.span(m.field, plus, n), Subspace.span(m.field, minus, n)
