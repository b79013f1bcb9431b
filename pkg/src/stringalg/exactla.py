"""Exact dense linear algebra over Q and prime fields.

Matrices are numpy arrays: ``int64`` residues for F_p, ``object`` arrays of
:class:`gmpy2.mpq` rationals for Q.  Vectors are rows; a matrix ``A`` of shape
``(m, n)`` acts on column vectors, so it maps k^n to k^m.

Subspaces are stored by their reduced row-echelon basis, which makes equality
a plain array comparison.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import cached_property

import gmpy2
import numpy as np


class DimensionError(ValueError):
    pass


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


class Field:
    """The ground field: Q when ``p`` is None, otherwise F_p."""

    def __init__(self, p: int | None = None):
        if p is not None:
            p = int(p)
            if not _is_prime(p):
                raise ValueError(f"characteristic {p} is not prime")
        self.p = p

    @property
    def is_rational(self) -> bool:
        return self.p is None

    @property
    def dtype(self):
        return object if self.p is None else np.int64

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return "Field(Q)" if self.p is None else f"Field(F_{self.p})"

    def __str__(self):
        return "Q" if self.p is None else f"F{self.p}"

    # scalars

    def element(self, x):
        if isinstance(x, float):
            raise TypeError("floating point entries are not exact")
        if self.p is None:
            if isinstance(x, str):
                return gmpy2.mpq(Fraction(x.strip()))
            return gmpy2.mpq(x)
        if isinstance(x, str):
            x = Fraction(x.strip())
        if isinstance(x, (Fraction, type(gmpy2.mpq()))):
            num, den = int(x.numerator), int(x.denominator)
            if den % self.p == 0:
                raise ZeroDivisionError(f"{x} has no image in F_{self.p}")
            return num * pow(den, -1, self.p) % self.p
        return int(x) % self.p

    def inv(self, x):
        if self.p is None:
            return 1 / gmpy2.mpq(x)
        return pow(int(x), -1, self.p)

    def format(self, x) -> str | int:
        if self.p is None:
            x = gmpy2.mpq(x)
            num, den = int(x.numerator), int(x.denominator)
            return num if den == 1 else f"{num}/{den}"
        return int(x)

    # arrays

    def array(self, data, cols: int | None = None) -> np.ndarray:
        """Build a 2-d matrix from nested lists (rationals may be "a/b" strings)."""
        rows = [list(r) for r in data]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise DimensionError("ragged matrix literal")
        out = self.zeros(len(rows), cols)
        for i, r in enumerate(rows):
            for j, x in enumerate(r):
                out[i, j] = self.element(x)
        return out

    def vector(self, data) -> np.ndarray:
        return self.array([list(data)], len(data))[0]

    def zeros(self, rows: int, cols: int) -> np.ndarray:
        if self.p is None:
            out = np.empty((rows, cols), dtype=object)
            out.fill(gmpy2.mpq(0))
            return out
        return np.zeros((rows, cols), dtype=np.int64)

    def eye(self, n: int) -> np.ndarray:
        out = self.zeros(n, n)
        for i in range(n):
            out[i, i] = self.element(1)
        return out

    def reduce(self, a: np.ndarray) -> np.ndarray:
        if self.p is None:
            return a
        return np.mod(a, self.p)

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if a.shape[1] != b.shape[0]:
            raise DimensionError(f"cannot multiply {a.shape} by {b.shape}")
        if a.shape[1] == 0:
            return self.zeros(a.shape[0], b.shape[1])
        if self.p is None:
            return a.dot(b)
        # entries < p, so row sums stay far below 2**63 for desk-scale sizes
        return np.mod(a.dot(b), self.p)

    def to_lists(self, a: np.ndarray) -> list:
        return [[self.format(x) for x in row] for row in a]

    def random_matrix(self, rng, rows: int, cols: int, spread: int = 3) -> np.ndarray:
        if self.p is None:
            vals = rng.integers(-spread, spread + 1, size=(rows, cols))
        else:
            vals = rng.integers(0, self.p, size=(rows, cols))
        return self.array(vals.tolist(), cols)

    def random_invertible(self, rng, n: int) -> np.ndarray:
        while True:
            a = self.random_matrix(rng, n, n)
            if rank(self, a) == n:
                return a


_NUMPY_CUTOFF = 200


def _rref_numpy(field: Field, m: np.ndarray) -> tuple[np.ndarray, list[int]]:
    a = np.array(m, dtype=np.int64, copy=True)
    rows, cols = a.shape
    p = field.p
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = a[r:, c].nonzero()[0]
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            a[[r, k]] = a[[k, r]]
        piv = int(a[r, c])
        if piv != 1:
            a[r] = a[r] * pow(piv, -1, p) % p
        others = a[:, c].nonzero()[0]
        others = others[others != r]
        if others.size:
            a[others] = (a[others] - np.outer(a[others, c], a[r])) % p
        pivots.append(c)
        r += 1
    return a[:r], pivots


def rref(field: Field, m: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row-echelon form with zero rows dropped, plus pivot columns."""
    m = np.asarray(m)
    if m.ndim != 2:
        raise DimensionError("rref expects a 2-d matrix")
    rows, cols = m.shape
    p = field.p
    if p and rows * cols > _NUMPY_CUTOFF:
        return _rref_numpy(field, m)
    # row lists beat numpy on small matrices
    a = [[int(x) for x in row] for row in m.tolist()] if p else [list(row) for row in m.tolist()]
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        k = next((i for i in range(r, rows) if a[i][c]), None)
        if k is None:
            continue
        a[r], a[k] = a[k], a[r]
        row = a[r]
        piv = row[c]
        if piv != 1:
            if p:
                inv = pow(piv, -1, p)
                row = [x * inv % p for x in row]
            else:
                row = [x / piv for x in row]
            a[r] = row
        for i in range(rows):
            f = a[i][c]
            if i != r and f:
                if p:
                    a[i] = [(x - f * y) % p for x, y in zip(a[i], row)]
                else:
                    a[i] = [x - f * y for x, y in zip(a[i], row)]
        pivots.append(c)
        r += 1
    out = field.zeros(r, cols)
    for i in range(r):
        out[i, :] = a[i]
    return out, pivots


def rank(field: Field, m: np.ndarray) -> int:
    return len(rref(field, m)[1])


def _stack(field: Field, blocks, cols: int) -> np.ndarray:
    blocks = [b for b in blocks if b.shape[0]]
    if not blocks:
        return field.zeros(0, cols)
    return np.vstack(blocks)


@dataclass(frozen=True, eq=False)
class Subspace:
    """A subspace of k^n held by its reduced row-echelon basis."""

    field: Field
    ambient: int
    basis: np.ndarray = dc_field(repr=False)

    @classmethod
    def span(cls, field: Field, vectors, ambient: int | None = None) -> "Subspace":
        if isinstance(vectors, np.ndarray) and vectors.ndim == 2:
            arr = vectors
        else:
            vectors = [np.asarray(v) for v in vectors]
            if ambient is None:
                ambient = len(vectors[0])
            arr = np.array(vectors, dtype=field.dtype).reshape(len(vectors), ambient)
        n = arr.shape[1] if ambient is None else ambient
        if arr.shape[1] != n:
            raise DimensionError("vector length does not match ambient dimension")
        basis, _ = rref(field, arr)
        return cls(field, n, basis)

    @classmethod
    def zero(cls, field: Field, n: int) -> "Subspace":
        return cls(field, n, field.zeros(0, n))

    @classmethod
    def full(cls, field: Field, n: int) -> "Subspace":
        return cls(field, n, field.eye(n))

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    @cached_property
    def pivots(self) -> list[int]:
        out = []
        for row in self.basis:
            out.append(int(np.flatnonzero(row != 0)[0]))
        return out

    @cached_property
    def annihilator(self) -> np.ndarray:
        """Rows spanning {z : u . z = 0 for all u in self}."""
        return kernel_basis(self.field, self.basis, self.ambient)

    @cached_property
    def _key(self):
        return (self.field.p, self.ambient, tuple(self.basis.ravel().tolist()))

    def __eq__(self, other):
        return isinstance(other, Subspace) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient}, over {self.field})"

    def __le__(self, other: "Subspace") -> bool:
        return is_subspace(self, other)

    def __add__(self, other: "Subspace") -> "Subspace":
        return sum_spaces(self, other)

    def __and__(self, other: "Subspace") -> "Subspace":
        return intersect(self, other)

    def contains(self, v) -> bool:
        return contains(self, v)

    def is_zero(self) -> bool:
        return self.dim == 0

    def is_full(self) -> bool:
        return self.dim == self.ambient

    def to_lists(self) -> list:
        return self.field.to_lists(self.basis)


def kernel_basis(field: Field, a: np.ndarray, cols: int | None = None) -> np.ndarray:
    """Rows spanning {x : a x = 0}, in echelon form."""
    n = a.shape[1] if cols is None else cols
    if a.shape[0] == 0:
        return field.eye(n)
    r, piv = rref(field, a)
    free = [c for c in range(n) if c not in set(piv)]
    out = field.zeros(len(free), n)
    one = field.element(1)
    for k, f in enumerate(free):
        out[k, f] = one
        for i, pc in enumerate(piv):
            out[k, pc] = -r[i, f] % field.p if field.p else -r[i, f]
    if out.shape[0]:
        out, _ = rref(field, out)
    return out


def kernel(field: Field, a: np.ndarray) -> Subspace:
    """Null space of ``a`` as a subspace of k^cols."""
    return Subspace(field, a.shape[1], kernel_basis(field, a))


def _check_same(u: Subspace, w: Subspace):
    if u.ambient != w.ambient:
        raise DimensionError(f"ambient dimensions differ: {u.ambient} vs {w.ambient}")
    if u.field != w.field:
        raise DimensionError("subspaces over different fields")


def sum_spaces(u: Subspace, w: Subspace) -> Subspace:
    _check_same(u, w)
    if u.dim == 0:
        return w
    if w.dim == 0:
        return u
    return Subspace.span(u.field, np.vstack([u.basis, w.basis]), u.ambient)


def intersect(u: Subspace, w: Subspace) -> Subspace:
    _check_same(u, w)
    if u.dim == 0 or w.is_full():
        return u
    if w.dim == 0 or u.is_full():
        return w
    ann = np.vstack([u.annihilator, w.annihilator])
    return Subspace(u.field, u.ambient, kernel_basis(u.field, ann, u.ambient))


def reduce_vector(u: Subspace, v) -> np.ndarray:
    """Remainder of ``v`` after clearing the pivot columns of ``u``."""
    field = u.field
    v = np.array(v, dtype=field.dtype, copy=True)
    for row, pc in zip(u.basis, u.pivots):
        c = v[pc]
        if c != 0:
            v = v - c * row
            if field.p:
                v %= field.p
    return v


def contains(u: Subspace, v) -> bool:
    v = np.asarray(v)
    if v.shape != (u.ambient,):
        raise DimensionError("vector length does not match ambient dimension")
    return not np.any(reduce_vector(u, v) != 0)


def is_subspace(u: Subspace, w: Subspace) -> bool:
    _check_same(u, w)
    if u.dim > w.dim:
        return False
    if w.is_full() or u.dim == 0:
        return True
    return all(contains(w, row) for row in u.basis)


def quotient_basis(u: Subspace, w: Subspace) -> np.ndarray:
    """Rows of W's basis which, added to a basis of U, give a basis of W."""
    _check_same(u, w)
    if not is_subspace(u, w):
        raise ValueError("quotient_basis needs U contained in W")
    field = u.field
    picked = []
    acc = u
    for row in w.basis:
        if acc.dim == w.dim:
            break
        if not contains(acc, row):
            picked.append(row)
            acc = Subspace.span(field, np.vstack([acc.basis, row[None, :]]), u.ambient)
    if not picked:
        return field.zeros(0, u.ambient)
    return np.array(picked, dtype=field.dtype)


def image(field: Field, a: np.ndarray, u: Subspace | None = None) -> Subspace:
    """A(U) for a matrix A of shape (m, n); U defaults to all of k^n."""
    m, n = a.shape
    if u is None:
        rows = a.T.copy()
    else:
        if u.ambient != n:
            raise DimensionError(f"subspace of k^{u.ambient} cannot be mapped by a {a.shape} matrix")
        if u.dim == 0:
            return Subspace.zero(field, m)
        rows = field.matmul(u.basis, a.T)
    return Subspace.span(field, rows, m)


def preimage(field: Field, a: np.ndarray, u: Subspace) -> Subspace:
    """{x : A x in U}."""
    m, n = a.shape
    if u.ambient != m:
        raise DimensionError(f"preimage under a {a.shape} matrix needs a subspace of k^{m}")
    if u.is_full():
        return Subspace.full(field, n)
    ann = u.annihilator
    return Subspace(field, n, kernel_basis(field, field.matmul(ann, a), n))


def solve_left(field: Field, rows: np.ndarray, v) -> np.ndarray | None:
    """Coefficients c with c @ rows == v, or None when v is not in the row span."""
    k, n = rows.shape
    v = np.asarray(v, dtype=field.dtype)
    if k == 0:
        return field.zeros(1, 0)[0] if not np.any(v != 0) else None
    aug = np.hstack([rows.T, v.reshape(n, 1)])
    r, piv = rref(field, aug)
    if piv and piv[-1] == k:
        return None
    c = field.zeros(1, k)[0]
    for i, pc in enumerate(piv):
        c[pc] = r[i, k]
    return c


def coordinates(field: Field, basis: np.ndarray, v) -> np.ndarray:
    c = solve_left(field, basis, v)
    if c is None:
        raise ValueError("vector is not in the span of the given basis")
    return c


def inverse(field: Field, a: np.ndarray) -> np.ndarray:
    n = a.shape[0]
    if a.shape != (n, n):
        raise DimensionError("only square matrices have inverses")
    r, piv = rref(field, np.hstack([a, field.eye(n)]))
    if len(piv) != n or (n and piv[-1] >= n):
        raise ValueError("matrix is singular")
    return r[:, n:]


def matrix_power(field: Field, a: np.ndarray, k: int) -> np.ndarray:
    if k < 0:
        return matrix_power(field, inverse(field, a), -k)
    out = field.eye(a.shape[0])
    base = a
    while k:
        if k & 1:
            out = field.matmul(out, base)
        base = field.matmul(base, base)
        k >>= 1
    return out


def block_diag(field: Field, blocks) -> np.ndarray:
    rows = sum(b.shape[0] for b in blocks)
    cols = sum(b.shape[1] for b in blocks)
    out = field.zeros(rows, cols)
    i = j = 0
    for b in blocks:
        out[i:i + b.shape[0], j:j + b.shape[1]] = b
        i += b.shape[0]
        j += b.shape[1]
    return out


def is_zero(a: np.ndarray) -> bool:
    return not np.any(a != 0)
