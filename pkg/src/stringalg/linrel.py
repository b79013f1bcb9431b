"""Linear relations between finite-dimensional spaces.

A relation from V = k^n to W = k^m is a subspace of V + W; coordinates
0..n-1 of a graph vector are the source part and n..n+m-1 the target part.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exactla import (DimensionError, Field, Subspace, image, intersect, quotient_basis,
                      solve_left)


@dataclass(frozen=True, eq=False)
class LinearRelation:
    field: Field
    source: int
    target: int
    graph: Subspace

    def __post_init__(self):
        if self.graph.ambient != self.source + self.target:
            raise DimensionError("graph ambient dimension must be source + target")

    def __eq__(self, other):
        return (isinstance(other, LinearRelation) and self.source == other.source
                and self.target == other.target and self.graph == other.graph)

    def __hash__(self):
        return hash((self.source, self.target, self.graph))

    def __repr__(self):
        return f"LinearRelation({self.source} -> {self.target}, dim {self.graph.dim})"

    @property
    def src_part(self) -> np.ndarray:
        return self.graph.basis[:, :self.source]

    @property
    def tgt_part(self) -> np.ndarray:
        return self.graph.basis[:, self.source:]

    def __matmul__(self, other: "LinearRelation") -> "LinearRelation":
        return compose(self, other)

    def contains_pair(self, v, w) -> bool:
        return self.graph.contains(np.concatenate([np.asarray(v), np.asarray(w)]).astype(self.field.dtype))

    def some_image(self, v):
        """A vector w with (v, w) in the relation, or None when v is outside the domain."""
        c = solve_left(self.field, self.src_part, v)
        if c is None:
            return None
        return self.field.matmul(c[None, :], self.tgt_part)[0] if self.graph.dim else self.field.zeros(1, self.target)[0]


def from_map(field: Field, a) -> LinearRelation:
    """Graph {(v, A v)} of an m-by-n matrix."""
    a = field.array(a) if not isinstance(a, np.ndarray) else a
    m, n = a.shape
    rows = np.hstack([field.eye(n), a.T.copy()]) if n else field.zeros(0, m)
    return LinearRelation(field, n, m, Subspace.span(field, rows, n + m))


def identity(field: Field, n: int) -> LinearRelation:
    return from_map(field, field.eye(n))


def full(field: Field, n: int, m: int) -> LinearRelation:
    return LinearRelation(field, n, m, Subspace.full(field, n + m))


def invert(c: LinearRelation) -> LinearRelation:
    b = c.graph.basis
    swapped = np.hstack([b[:, c.source:], b[:, :c.source]])
    return LinearRelation(c.field, c.target, c.source, Subspace.span(c.field, swapped, c.graph.ambient))


def _project(field: Field, sub: Subspace, cols) -> Subspace:
    return Subspace.span(field, sub.basis[:, cols], len(cols))


def compose(c: LinearRelation, d: LinearRelation) -> LinearRelation:
    """C D = {(u, w) : (u, v) in D and (v, w) in C for some v}."""
    if d.target != c.source:
        raise DimensionError(f"cannot compose a relation on k^{c.source} after one into k^{d.target}")
    f = c.field
    nu, nv, nw = d.source, d.target, c.target
    amb = nu + nv + nw
    # {(u, v, w) : (u, v) in D} and {(u, v, w) : (v, w) in C}
    r1 = np.vstack([np.hstack([d.graph.basis, f.zeros(d.graph.dim, nw)]),
                    np.hstack([f.zeros(nw, nu + nv), f.eye(nw)])])
    r2 = np.vstack([np.hstack([f.eye(nu), f.zeros(nu, nv + nw)]),
                    np.hstack([f.zeros(c.graph.dim, nu), c.graph.basis])])
    both = intersect(Subspace.span(f, r1, amb), Subspace.span(f, r2, amb))
    cols = list(range(nu)) + list(range(nu + nv, amb))
    return LinearRelation(f, nu, nw, _project(f, both, cols))


def apply(c: LinearRelation, h: Subspace) -> Subspace:
    """C H, the set of w related to some v in H."""
    if h.ambient != c.source:
        raise DimensionError("subspace does not live in the source of the relation")
    f = c.field
    if h.is_full():
        return _project(f, c.graph, list(range(c.source, c.graph.ambient)))
    rows = np.vstack([np.hstack([h.basis, f.zeros(h.dim, c.target)]),
                      np.hstack([f.zeros(c.target, c.source), f.eye(c.target)])])
    both = intersect(c.graph, Subspace.span(f, rows, c.graph.ambient))
    return _project(f, both, list(range(c.source, c.graph.ambient)))


def apply_map(field: Field, a: np.ndarray, h: Subspace) -> Subspace:
    return image(field, a, h)


def _stable(c: LinearRelation, start: Subspace) -> Subspace:
    h = start
    while True:
        nxt = apply(c, h)
        if nxt == h:
            return h
        h = nxt


def prime(c: LinearRelation) -> Subspace:
    """C' = union of C^n 0 (ascending chain)."""
    return _stable(c, Subspace.zero(c.field, c.source))


def double_prime(c: LinearRelation) -> Subspace:
    """C'' = intersection of C^n V (descending chain)."""
    return _stable(c, Subspace.full(c.field, c.source))


@dataclass(frozen=True, eq=False)
class RelationCore:
    relation: LinearRelation
    c1: Subspace        # C'
    c2: Subspace        # C''
    inv1: Subspace      # (C^-1)'
    inv2: Subspace      # (C^-1)''
    sharp: Subspace
    flat: Subspace
    basis: np.ndarray   # rows v_j completing flat to sharp
    theta: np.ndarray   # column j = coordinates of theta(v_j) in the v basis

    @property
    def rank(self) -> int:
        return self.basis.shape[0]


def _endo(c: LinearRelation):
    if c.source != c.target:
        raise DimensionError("an endorelation is needed")


def theta_image(c: LinearRelation, sharp: Subspace, flat: Subspace, v) -> np.ndarray:
    """An element w of C-sharp with w in flat + C v."""
    f = c.field
    w0 = c.some_image(v)
    if w0 is None:
        raise ValueError("vector is outside the domain of the relation")
    c0 = apply(c, Subspace.zero(f, c.source))
    rest = flat + c0
    rows = np.vstack([sharp.basis, rest.basis])
    coef = solve_left(f, rows, w0)
    if coef is None:
        raise ArithmeticError("no element of C-sharp lies in C-flat + C v")
    return f.matmul(coef[None, :sharp.dim], sharp.basis)[0] if sharp.dim else f.zeros(1, c.source)[0]


def core(c: LinearRelation) -> RelationCore:
    _endo(c)
    f = c.field
    ci = invert(c)
    c1, c2, i1, i2 = prime(c), double_prime(c), prime(ci), double_prime(ci)
    sharp = c2 & i2
    flat = (c2 & i1) + (c1 & i2)
    basis = quotient_basis(flat, sharp)
    k = basis.shape[0]
    theta = f.zeros(k, k)
    frame = np.vstack([flat.basis, basis])
    for j in range(k):
        w = theta_image(c, sharp, flat, basis[j])
        coords = solve_left(f, frame, w)
        theta[:, j] = coords[flat.dim:]
    return RelationCore(c, c1, c2, i1, i2, sharp, flat, basis, theta)


def _solve(field: Field, a: np.ndarray, b) -> np.ndarray | None:
    """x with a @ x == b, or None."""
    return solve_left(field, a.T.copy(), b)


def split(c: LinearRelation, cr: RelationCore | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Rows u_1..u_k spanning a complement U of C-flat in C-sharp, and the matrix A
    with sum_i A[i, j] u_i in C u_j.  A equals theta of the core."""
    _endo(c)
    cr = cr or core(c)
    f = c.field
    n, k = c.source, cr.rank
    a = cr.theta
    if k == 0:
        return f.zeros(0, n), a
    fb, g = cr.flat.basis, c.graph.basis
    nf, ng = fb.shape[0], g.shape[0]
    gs, gt = g[:, :n].T, g[:, n:].T            # n x ng
    fbt = fb.T                                   # n x nf
    # unknowns: gamma_1..gamma_k (nf each), then delta_1..delta_k (ng each)
    nun = k * (nf + ng)
    mat = f.zeros(2 * n * k, nun)
    rhs = f.zeros(1, 2 * n * k)[0]
    v = cr.basis
    av = f.matmul(a.T, v)                        # row j = sum_i a_ij v_i
    for j in range(k):
        r0, r1 = 2 * n * j, 2 * n * j + n
        dj = k * nf + j * ng
        # delta_j G_src - gamma_j F = v_j
        mat[r0:r0 + n, dj:dj + ng] = gs
        mat[r0:r0 + n, j * nf:(j + 1) * nf] = -fbt
        rhs[r0:r0 + n] = v[j]
        # delta_j G_tgt - sum_i a_ij gamma_i F = sum_i a_ij v_i
        mat[r1:r1 + n, dj:dj + ng] = gt
        for i in range(k):
            if a[i, j] != 0:
                mat[r1:r1 + n, i * nf:(i + 1) * nf] -= a[i, j] * fbt
        rhs[r1:r1 + n] = av[j]
    mat = f.reduce(mat)
    rhs = f.reduce(rhs)
    x = _solve(f, mat, rhs)
    if x is None:
        raise ArithmeticError("splitting system has no solution")
    gam = x[:k * nf].reshape(k, nf) if nf else f.zeros(k, 0)
    u = v.copy()
    if nf:
        u = f.reduce(u + f.matmul(gam, fb))
    return u, a


def check_split(c: LinearRelation, u: np.ndarray, a: np.ndarray, cr: RelationCore | None = None) -> bool:
    cr = cr or core(c)
    f = c.field
    k = u.shape[0]
    if k:
        span = Subspace.span(f, u, c.source)
        if span.dim != k or not (span & cr.flat).is_zero() or (span + cr.flat) != cr.sharp:
            return False
    elif cr.sharp != cr.flat:
        return False
    au = f.matmul(a.T, u) if k else u
    return all(c.contains_pair(u[j], au[j]) for j in range(k))
