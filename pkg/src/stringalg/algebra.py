"""Quivers with zero relations and the string-algebra axioms.

Paths compose right to left: in the path ``x y`` the arrow ``y`` acts first,
so ``tail(x) == head(y)``.  This convention is used by every file format.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple


class AlgebraError(ValueError):
    """The quiver and relations do not define a string algebra."""


class Letter(NamedTuple):
    arrow: str
    inverse: bool = False

    @property
    def direct(self) -> bool:
        return not self.inverse

    def inv(self) -> "Letter":
        return Letter(self.arrow, not self.inverse)

    def __str__(self):
        return f"{self.arrow}^-1" if self.inverse else self.arrow

    @classmethod
    def parse(cls, text: str) -> "Letter":
        text = text.strip()
        if text.endswith("^-1"):
            return cls(text[:-3], True)
        return cls(text, False)


@dataclass(frozen=True)
class Arrow:
    name: str
    head: str
    tail: str


@dataclass(frozen=True)
class Quiver:
    vertices: tuple
    arrows: tuple  # of Arrow

    def __post_init__(self):
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise AlgebraError("arrow names must be unique")
        if len(set(self.vertices)) != len(self.vertices):
            raise AlgebraError("vertex ids must be unique")
        vs = set(self.vertices)
        for a in self.arrows:
            if a.head not in vs or a.tail not in vs:
                raise AlgebraError(f"arrow {a.name} uses an undeclared vertex")

    def arrow(self, name: str) -> Arrow:
        for a in self.arrows:
            if a.name == name:
                return a
        raise KeyError(f"unknown arrow {name!r}")


def _check_relations(quiver: Quiver, relations) -> list[tuple]:
    arrows = {a.name: a for a in quiver.arrows}
    out = []
    for rel in relations:
        rel = tuple(rel)
        if len(rel) < 2:
            raise AlgebraError(f"zero relation {' '.join(rel)} must have length at least 2")
        for name in rel:
            if name not in arrows:
                raise AlgebraError(f"zero relation {' '.join(rel)} uses unknown arrow {name}")
        for x, y in zip(rel, rel[1:]):
            if arrows[x].tail != arrows[y].head:
                raise AlgebraError(f"zero relation {' '.join(rel)} is not a path: tail({x}) != head({y})")
        out.append(rel)
    return out


def validate_string_algebra(quiver: Quiver, relations) -> None:
    """Raise AlgebraError unless kQ/(relations) is a string algebra."""
    rels = _check_relations(quiver, relations)
    for v in quiver.vertices:
        heads = [a.name for a in quiver.arrows if a.head == v]
        tails = [a.name for a in quiver.arrows if a.tail == v]
        if len(heads) > 2:
            raise AlgebraError(f"condition (a) fails at vertex {v}: head of arrows {', '.join(heads)}")
        if len(tails) > 2:
            raise AlgebraError(f"condition (a) fails at vertex {v}: tail of arrows {', '.join(tails)}")
    quad = {r for r in rels if len(r) == 2}
    for y in quiver.arrows:
        before = [x.name for x in quiver.arrows if x.tail == y.head and (x.name, y.name) not in quad]
        after = [z.name for z in quiver.arrows if z.head == y.tail and (y.name, z.name) not in quad]
        if len(before) > 1:
            raise AlgebraError(
                f"condition (b) fails at arrow {y.name}: paths {', '.join(x + ' ' + y.name for x in before)} are nonzero")
        if len(after) > 1:
            raise AlgebraError(
                f"condition (b) fails at arrow {y.name}: paths {', '.join(y.name + ' ' + z for z in after)} are nonzero")


class StringAlgebra:
    """A string algebra kQ/(rho) together with a sign for every letter."""

    def __init__(self, quiver: Quiver, relations, signs: dict | None = None):
        validate_string_algebra(quiver, relations)
        self.quiver = quiver
        self.relations = tuple(tuple(r) for r in relations)
        self._arrows = {a.name: a for a in quiver.arrows}
        self._relset = set(self.relations)
        self._inv_relset = {tuple(Letter(x, True) for x in reversed(r)) for r in self.relations}
        self._dir_relset = {tuple(Letter(x) for x in r) for r in self.relations}
        self.max_relation = max((len(r) for r in self.relations), default=0)
        if signs is None:
            signs = assign_signs(quiver, self.relations)
        else:
            signs = {(Letter.parse(k) if isinstance(k, str) else k): int(s) for k, s in signs.items()}
            check_signs(quiver, self.relations, signs)
        self.signs = dict(signs)
        self._by_head: dict[str, list[Letter]] = {v: [] for v in quiver.vertices}
        for ell in self.letters():
            self._by_head[self.head(ell)].append(ell)

    @classmethod
    def build(cls, vertices, arrows, relations=(), signs=None) -> "StringAlgebra":
        """Convenience constructor: ``arrows`` is a list of (name, head, tail)."""
        q = Quiver(tuple(str(v) for v in vertices),
                   tuple(Arrow(n, str(h), str(t)) for n, h, t in arrows))
        return cls(q, [tuple(r) for r in relations], signs)

    def __repr__(self):
        rels = ", ".join(" ".join(r) for r in self.relations)
        return f"StringAlgebra(vertices={list(self.vertices)}, arrows={list(self._arrows)}, relations=[{rels}])"

    @property
    def vertices(self):
        return self.quiver.vertices

    @property
    def arrow_names(self):
        return [a.name for a in self.quiver.arrows]

    def arrow(self, name: str) -> Arrow:
        try:
            return self._arrows[name]
        except KeyError:
            raise KeyError(f"unknown arrow {name!r}") from None

    def letters(self) -> list[Letter]:
        out = []
        for a in self.quiver.arrows:
            out += [Letter(a.name), Letter(a.name, True)]
        return out

    def head(self, ell: Letter) -> str:
        a = self.arrow(ell.arrow)
        return a.tail if ell.inverse else a.head

    def tail(self, ell: Letter) -> str:
        a = self.arrow(ell.arrow)
        return a.head if ell.inverse else a.tail

    def sign(self, ell: Letter) -> int:
        return self.signs[ell]

    def letters_at(self, v: str, sign: int | None = None) -> list[Letter]:
        out = self._by_head[v]
        if sign is not None:
            out = [ell for ell in out if self.signs[ell] == sign]
        return out

    def is_relation(self, letters) -> bool:
        t = tuple(letters)
        return t in self._dir_relset or t in self._inv_relset

    def valid_sequence(self, letters) -> bool:
        """Conditions (a)-(c) on a finite letter sequence."""
        letters = tuple(letters)
        for ell in letters:
            self.arrow(ell.arrow)
        for a, b in zip(letters, letters[1:]):
            if self.tail(a) != self.head(b):
                return False
            if a.inv() == b:
                return False
        n = len(letters)
        for m in {len(r) for r in self.relations}:
            for i in range(n - m + 1):
                if self.is_relation(letters[i:i + m]):
                    return False
        return True

    def extends(self, letters, ell: Letter) -> bool:
        """Whether ``letters + (ell,)`` is valid, given ``letters`` already is."""
        if letters:
            last = letters[-1]
            if self.tail(last) != self.head(ell) or last.inv() == ell:
                return False
        for m in range(2, self.max_relation + 1):
            if m <= len(letters) + 1 and self.is_relation(tuple(letters[len(letters) - m + 1:]) + (ell,)):
                return False
        return True

    def prepends(self, ell: Letter, letters) -> bool:
        """Whether ``(ell,) + letters`` is valid, given ``letters`` already is."""
        if letters:
            first = letters[0]
            if self.tail(ell) != self.head(first) or ell.inv() == first:
                return False
        for m in range(2, self.max_relation + 1):
            if m <= len(letters) + 1 and self.is_relation((ell,) + tuple(letters[:m - 1])):
                return False
        return True

    def primitive_cycles(self) -> list[tuple]:
        return primitive_cycles(self)


def _sign_ok(relations, ell, other, s1, s2) -> bool:
    if s1 != s2 or ell == other:
        return True
    pair = {ell, other}
    for r in relations:
        if len(r) == 2:
            x, y = r
            if pair == {Letter(x, True), Letter(y)}:
                return True
    return False


def _letter_order(quiver: Quiver):
    out = []
    for v in quiver.vertices:
        cands = []
        for a in quiver.arrows:
            if a.head == v:
                cands.append(Letter(a.name))
            if a.tail == v:
                cands.append(Letter(a.name, True))
        cands.sort(key=lambda ell: (ell.arrow, ell.inverse))
        out += cands
    return out


def _head(quiver: Quiver, ell: Letter) -> str:
    a = quiver.arrow(ell.arrow)
    return a.tail if ell.inverse else a.head


def check_signs(quiver: Quiver, relations, signs: dict) -> None:
    """Raise AlgebraError if ``signs`` violates the sign condition."""
    letters = _letter_order(quiver)
    for ell in letters:
        if ell not in signs:
            raise AlgebraError(f"no sign given for letter {ell}")
        if signs[ell] not in (1, -1):
            raise AlgebraError(f"sign of {ell} must be +1 or -1")
    for i, a in enumerate(letters):
        for b in letters[i + 1:]:
            if _head(quiver, a) == _head(quiver, b) and not _sign_ok(relations, a, b, signs[a], signs[b]):
                raise AlgebraError(
                    f"sign condition fails: letters {a} and {b} share head {_head(quiver, a)} and sign {signs[a]:+d}")


def assign_signs(quiver: Quiver, relations) -> dict:
    """First sign map found by backtracking, trying -1 before +1.

    Letters are visited ordered by (head vertex, arrow name, direct first).
    """
    letters = _letter_order(quiver)
    out: dict = {}

    def place(i):
        if i == len(letters):
            return True
        ell = letters[i]
        v = _head(quiver, ell)
        for s in (-1, 1):
            if all(_sign_ok(relations, ell, o, s, out[o]) for o in letters[:i] if _head(quiver, o) == v):
                out[ell] = s
                if place(i + 1):
                    return True
                del out[ell]
        return False

    if not place(0):
        raise AlgebraError("no sign assignment satisfies the sign condition")
    return out


def _is_proper_power(seq) -> bool:
    n = len(seq)
    for d in range(1, n):
        if n % d == 0 and all(seq[i] == seq[i % d] for i in range(n)):
            return True
    return False


def least_rotation(seq):
    seq = tuple(seq)
    return min(seq[i:] + seq[:i] for i in range(len(seq))) if seq else seq


def primitive_cycles(alg: StringAlgebra) -> list[tuple]:
    """Primitive cycles as tuples of arrow names.

    A cycle and its rotations are different primitive cycles (they have
    different heads or first letters), so every rotation is listed.
    """
    arrows = alg.quiver.arrows
    cap = len(arrows)
    found = set()
    for a in arrows:
        path = [Letter(a.name)]
        while len(path) <= cap:
            nxt = [b for b in alg.letters_at(alg.tail(path[-1])) if b.direct and alg.extends(path, b)]
            if not nxt:
                break
            if len(nxt) > 1:
                raise AlgebraError("direct continuation is not unique; condition (b) must have failed")
            b = nxt[0]
            if b.arrow == a.name:
                cyc = tuple(path)
                reps = -(-(alg.max_relation + len(cyc)) // len(cyc)) + 1
                if alg.valid_sequence(cyc * reps) and not _is_proper_power(cyc):
                    found.add(tuple(ell.arrow for ell in cyc))
                break
            if b in path:
                break  # entered a cycle that avoids a
            path.append(b)
        else:
            raise AlgebraError("cycle search exceeded the arrow count")
    return sorted(found, key=lambda c: (len(c), c))
