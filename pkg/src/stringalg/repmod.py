"""Finite-dimensional representations and the standard string and band modules."""

from __future__ import annotations

import warnings

import numpy as np

from . import linrel
from .algebra import Letter, StringAlgebra
from .exactla import (DimensionError, Field, Subspace, block_diag, image, inverse, is_zero,
                      kernel, matrix_power, preimage)
from .laurent import BandCoefficient
from .words import Word, WordError


class RelationError(ValueError):
    """The matrices do not satisfy a zero relation."""


class BoundaryWarning(UserWarning):
    pass


class Representation:
    """Vector spaces e_v M with one matrix per arrow (shape dims[head] x dims[tail])."""

    def __init__(self, algebra: StringAlgebra, field: Field, dims: dict, action: dict | None = None,
                 labels: list | None = None):
        self.algebra = algebra
        self.field = field
        self.dims = {v: int(dims.get(v, 0)) for v in algebra.vertices}
        unknown = set(map(str, dims)) - set(algebra.vertices)
        if unknown:
            raise DimensionError(f"dimensions given for unknown vertices {sorted(unknown)}")
        if any(n < 0 for n in self.dims.values()):
            raise DimensionError("dimensions must be nonnegative")
        action = dict(action or {})
        unknown = set(action) - set(algebra.arrow_names)
        if unknown:
            raise DimensionError(f"matrices given for unknown arrows {sorted(unknown)}")
        self.action = {}
        for a in algebra.quiver.arrows:
            shape = (self.dims[a.head], self.dims[a.tail])
            mat = action.get(a.name)
            if mat is None:
                mat = field.zeros(*shape)
            elif not isinstance(mat, np.ndarray):
                mat = field.array(mat, shape[1]) if shape[0] else field.zeros(0, shape[1])
            else:
                mat = field.reduce(np.array(mat, dtype=field.dtype))
            if mat.shape != shape:
                raise DimensionError(f"matrix of arrow {a.name} has shape {mat.shape}, expected {shape}")
            self.action[a.name] = mat
        for rel in algebra.relations:
            prod = self.path_matrix(rel)
            if not is_zero(prod):
                raise RelationError(f"zero relation {' '.join(rel)} does not hold")
        self.labels = labels
        self._cache: dict = {}

    def __repr__(self):
        return f"Representation(dims={self.dims}, field={self.field})"

    @property
    def total_dim(self) -> int:
        return sum(self.dims.values())

    def offsets(self) -> dict:
        out, acc = {}, 0
        for v in self.algebra.vertices:
            out[v] = acc
            acc += self.dims[v]
        return out

    def path_matrix(self, arrows) -> np.ndarray:
        """Matrix of the path x_1 ... x_m (x_m acts first)."""
        f = self.field
        out = None
        for name in arrows:
            m = self.action[name]
            out = m if out is None else f.matmul(out, m)
        return out

    def space(self, v, base: str = "M") -> Subspace:
        n = self.dims[v]
        return Subspace.full(self.field, n) if base == "M" else Subspace.zero(self.field, n)

    def letter_apply(self, ell: Letter, u: Subspace) -> Subspace:
        """ell U: the image under x, or the preimage under x for an inverse letter."""
        m = self.action[ell.arrow]
        if ell.inverse:
            return preimage(self.field, m, u)
        return image(self.field, m, u)

    def apply_letters(self, letters, u: Subspace) -> Subspace:
        for ell in reversed(tuple(letters)):
            u = self.letter_apply(ell, u)
        return u

    def word_space(self, letters, base: str = "M", vertex=None) -> Subspace:
        """C M or C 0 for the finite word with the given letters (memoized)."""
        letters = tuple(letters)
        key = (letters, base, vertex if not letters else None)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        if not letters:
            out = self.space(vertex, base)
        else:
            tail = self.algebra.tail(letters[-1])
            out = self.letter_apply(letters[0], self.word_space(letters[1:], base, tail))
        self._cache[key] = out
        return out

    def with_algebra_check(self, other: "Representation"):
        if other.field != self.field:
            raise ValueError("representations over different fields")
        if other.algebra is not self.algebra and repr(other.algebra) != repr(self.algebra):
            raise ValueError("representations of different algebras")


def zero_rep(alg: StringAlgebra, field: Field) -> Representation:
    return Representation(alg, field, {})


# string and band modules


def _chain_module(alg, field, verts, letters, block, wrap=None, labels=None):
    """Module with a block V_i at v_i for each index and identity maps along the letters.

    For a band the last letter closes the chain onto index 0 through ``wrap`` (T)
    for a direct letter or its inverse for an inverse letter.
    """
    n_idx = len(verts)
    local = []
    counts: dict = {}
    for v in verts:
        local.append(counts.get(v, 0))
        counts[v] = counts.get(v, 0) + 1
    dims = {v: c * block for v, c in counts.items()}
    action = {a: field.zeros(dims.get(alg.arrow(a).head, 0), dims.get(alg.arrow(a).tail, 0))
              for a in alg.arrow_names}
    eye = field.eye(block)
    wrap_inv = inverse(field, wrap) if wrap is not None else None
    for i, ell in enumerate(letters, start=1):
        lo, hi = i - 1, i % n_idx if wrap is not None else i
        closing = wrap is not None and i == len(letters)
        mat = action[ell.arrow]
        if ell.direct:
            src, dst = hi, lo
            blk = wrap if closing else eye
        else:
            src, dst = lo, hi
            blk = wrap_inv if closing else eye
        r, c = local[dst] * block, local[src] * block
        mat[r:r + block, c:c + block] = blk
    return Representation(alg, field, dims, action, labels=labels)


def string_module(alg: StringAlgebra, field: Field, c: Word) -> Representation:
    """M(C) with basis b_0..b_n; ``labels[i]`` = (vertex, position of b_i in e_v M)."""
    if not c.is_finite:
        raise WordError("string modules are built for finite words")
    verts = c.vertices()
    labels = []
    seen: dict = {}
    for v in verts:
        labels.append((v, seen.get(v, 0)))
        seen[v] = seen.get(v, 0) + 1
    return _chain_module(alg, field, verts, c.letters, 1, labels=labels)


def band_module(alg: StringAlgebra, field: Field, e: Word, coeff: BandCoefficient) -> Representation:
    """M(E, V) for a primitive periodic word E and V = k[T]/(g^r)."""
    if e.kind != "periodic":
        raise WordError("band modules need a primitive periodic word")
    if coeff.field != field:
        raise ValueError("band coefficient is over a different field")
    verts = e.vertices()
    d = coeff.dim
    labels = []
    seen: dict = {}
    for v in verts:
        labels.append((v, seen.get(v, 0) * d))
        seen[v] = seen.get(v, 0) + 1
    return _chain_module(alg, field, verts, e.period, d, wrap=coeff.matrix(), labels=labels)


def word_relation(m: Representation, c) -> linrel.LinearRelation:
    """The relation from e_tail M to e_head M defined by a finite word."""
    f = m.field
    if isinstance(c, Word):
        if not c.is_finite:
            raise WordError("word relations are defined for finite words")
        if c.kind == "trivial":
            return linrel.identity(f, m.dims[c.vertex])
        letters = c.letters
    else:
        letters = tuple(c)
    key = ("rel", letters)
    if key in m._cache:
        return m._cache[key]
    out = None
    for ell in letters:
        r = linrel.from_map(f, m.action[ell.arrow])
        if ell.inverse:
            r = linrel.invert(r)
        out = r if out is None else linrel.compose(out, r)
    m._cache[key] = out
    return out


def torsion(m: Representation) -> dict:
    """Per vertex: tau0, tau1 and the per-cycle pieces {path: (tau_P^0, tau_P^1)}."""
    f = m.field
    out = {}
    rots = [(m.algebra.arrow(cyc[0]).head, cyc) for cyc in m.algebra.primitive_cycles()]
    for v in m.algebra.vertices:
        n = m.dims[v]
        per = {}
        t0 = Subspace.full(f, n)
        t1 = Subspace.zero(f, n)
        for head, path in rots:
            if head != v:
                continue
            p = m.path_matrix(path)
            k0 = kernel(f, matrix_power(f, p, max(n, 1)))
            k1 = image(f, matrix_power(f, p, max(n, 1)))
            per[" ".join(path)] = (k0, k1)
            t0 = t0 & k0
            if (t1 & k1).dim:
                raise ArithmeticError("primitive torsion pieces are not independent")
            t1 = t1 + k1
        out[v] = {"tau0": t0, "tau1": t1, "cycles": per}
    return out


# sums and base change


def direct_sum(mods, alg: StringAlgebra | None = None, field: Field | None = None) -> Representation:
    mods = list(mods)
    if not mods:
        if alg is None or field is None:
            raise ValueError("the empty direct sum needs an algebra and a field")
        return zero_rep(alg, field)
    first = mods[0]
    for m in mods[1:]:
        first.with_algebra_check(m)
    alg, f = first.algebra, first.field
    dims = {v: sum(m.dims[v] for m in mods) for v in alg.vertices}
    action = {a: block_diag(f, [m.action[a] for m in mods]) for a in alg.arrow_names}
    return Representation(alg, f, dims, action)


def transform(m: Representation, conj: dict) -> Representation:
    """P_head X P_tail^-1 for every arrow, with P_v = conj[v]."""
    f = m.field
    inv = {v: inverse(f, p) for v, p in conj.items()}
    action = {}
    for a in m.algebra.quiver.arrows:
        action[a.name] = f.matmul(f.matmul(conj[a.head], m.action[a.name]), inv[a.tail])
    return Representation(m.algebra, f, m.dims, action)


def scramble(m: Representation, seed=None) -> tuple[Representation, dict]:
    """A random isomorphic copy and the per-vertex matrices P_v (new basis = P_v old)."""
    f = m.field
    if seed is None:
        conj = {v: f.eye(n) for v, n in m.dims.items()}
    else:
        rng = np.random.default_rng(seed)
        conj = {v: f.random_invertible(rng, m.dims[v]) for v in m.algebra.vertices}
    return transform(m, conj), conj


# graded modules of k[x,y]/(xy) and the quiver Gamma


def gamma_window(a: int, b: int) -> StringAlgebra:
    """Vertices a..b, arrows x_i, y_i : i-1 -> i, relations x_i y_(i-1) and y_i x_(i-1)."""
    if b < a:
        raise ValueError("empty window")
    verts = [str(i) for i in range(a, b + 1)]
    arrows = []
    for i in range(a + 1, b + 1):
        arrows += [(f"x_{i}", str(i), str(i - 1)), (f"y_{i}", str(i), str(i - 1))]
    rels = []
    for i in range(a + 2, b + 1):
        rels += [(f"x_{i}", f"y_{i - 1}"), (f"y_{i}", f"x_{i - 1}")]
    return StringAlgebra.build(verts, arrows, rels)


def graded_ingest(field: Field, dims, xs, ys, start: int = 0, window=None):
    """Representation of a Gamma window from graded data.

    ``dims[k]`` is the dimension in degree ``start + k``; ``xs[k]`` and ``ys[k]``
    map degree ``start + k`` to ``start + k + 1``.  Returns the representation
    and a list of warnings about nonzero maps crossing the window boundary.
    """
    dims = [int(d) for d in dims]
    top = start + len(dims) - 1
    mats = {}
    for name, seq in (("x", xs), ("y", ys)):
        seq = list(seq)
        if len(seq) > max(len(dims) - 1, 0):
            raise DimensionError(f"too many {name} maps for {len(dims)} degrees")
        for k, mat in enumerate(seq):
            shape = (dims[k + 1], dims[k])
            if not isinstance(mat, np.ndarray):
                mat = field.array(mat, shape[1]) if shape[0] else field.zeros(0, shape[1])
            if mat.shape != shape:
                raise DimensionError(f"{name} map from degree {start + k} has shape {mat.shape}, expected {shape}")
            mats[(name, start + k + 1)] = mat
    for i in range(start + 1, top + 1):
        for n1, n2 in (("x", "y"), ("y", "x")):
            m1, m2 = mats.get((n1, i + 1)), mats.get((n2, i))
            if m1 is not None and m2 is not None and not is_zero(field.matmul(m1, m2)):
                raise RelationError(f"{n1}_{i + 1} {n2}_{i} is nonzero")
    a, b = (start, top) if window is None else (int(window[0]), int(window[1]))
    alg = gamma_window(a, b)
    notes = []
    for (name, i), mat in sorted(mats.items()):
        inside_src, inside_dst = a <= i - 1 <= b, a <= i <= b
        if inside_src != inside_dst and not is_zero(mat):
            notes.append(f"dropped nonzero map {name}_{i} between degrees {i - 1} and {i} at the window boundary")
    rdims = {str(i): (dims[i - start] if start <= i <= top else 0) for i in range(a, b + 1)}
    action = {}
    for i in range(a + 1, b + 1):
        for name in ("x", "y"):
            mat = mats.get((name, i))
            if mat is not None:
                action[f"{name}_{i}"] = mat
    for note in notes:
        warnings.warn(note, BoundaryWarning, stacklevel=2)
    return Representation(alg, field, rdims, action), notes
