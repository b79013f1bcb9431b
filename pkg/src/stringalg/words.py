"""Words over a string algebra.

Four shapes are supported:

* trivial words ``1_{v,e}``,
* finite words ``C_1 ... C_n``,
* eventually periodic N-words ``A B B B ...`` (``kind == "eventual"``),
* periodic Z-words ``... E E | E E ...`` stored by a primitive period.

Literal syntax::

    1_v_+                       trivial word at v with sign +1
    y^-1 x x                    finite word
    periodic: x y^-1            the Z-word with period x y^-1
    eventually: y^-1 x x | y^-1 the N-word y^-1 x x y^-1 y^-1 ...
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from itertools import count

from .algebra import Letter, StringAlgebra, least_rotation


class WordError(ValueError):
    pass


class NotComposable(WordError):
    """Raised by :func:`compose`; ``reason`` is "tail-head", "sign" or "not-a-word"."""

    def __init__(self, reason: str, message: str):
        super().__init__(message)
        self.reason = reason


def _key(letters):
    return tuple((ell.arrow, ell.inverse) for ell in letters)


def _inv_letters(letters):
    return tuple(ell.inv() for ell in reversed(letters))


def _primitive_root(seq):
    n = len(seq)
    for d in range(1, n + 1):
        if n % d == 0 and all(seq[i] == seq[i % d] for i in range(n)):
            return seq[:d]
    return seq


def _cyclically_valid(alg: StringAlgebra, period) -> bool:
    reps = -(-(alg.max_relation + len(period)) // len(period)) + 1
    return alg.valid_sequence(tuple(period) * reps)


@dataclass(frozen=True)
class Word:
    algebra: StringAlgebra = field(compare=False, repr=False, hash=False)
    letters: tuple = ()
    period: tuple = ()
    vertex: str | None = None
    trivial_sign: int | None = None
    bi: bool = False

    # construction

    @classmethod
    def trivial(cls, alg: StringAlgebra, v, sign: int) -> "Word":
        v = str(v)
        if v not in alg.vertices:
            raise WordError(f"unknown vertex {v}")
        if sign not in (1, -1):
            raise WordError("sign must be +1 or -1")
        return cls(alg, (), (), v, sign)

    @classmethod
    def finite(cls, alg: StringAlgebra, letters) -> "Word":
        if isinstance(letters, str):
            letters = [Letter.parse(t) for t in letters.split()]
        letters = tuple(letters)
        if not letters:
            raise WordError("use Word.trivial for words of length 0")
        if not alg.valid_sequence(letters):
            raise WordError(f"{' '.join(map(str, letters))} is not a word")
        return cls(alg, letters)

    @classmethod
    def periodic(cls, alg: StringAlgebra, period) -> "Word":
        if isinstance(period, str):
            period = [Letter.parse(t) for t in period.split()]
        period = tuple(period)
        if not period:
            raise WordError("a periodic word needs a non-empty period")
        if _primitive_root(period) != period:
            raise WordError("period must be primitive (not a proper power)")
        if not _cyclically_valid(alg, period):
            raise WordError(f"powers of {' '.join(map(str, period))} are not words")
        return cls(alg, (), period, bi=True)

    @classmethod
    def eventually(cls, alg: StringAlgebra, prefix, period) -> "Word":
        if isinstance(prefix, str):
            prefix = [Letter.parse(t) for t in prefix.split()]
        if isinstance(period, str):
            period = [Letter.parse(t) for t in period.split()]
        prefix, period = tuple(prefix), tuple(period)
        if not period:
            raise WordError("an N-word needs a non-empty period")
        period = _primitive_root(period)
        # shortest prefix: fold trailing prefix letters into the period
        while prefix and prefix[-1] == period[-1]:
            prefix = prefix[:-1]
            period = period[-1:] + period[:-1]
        reps = -(-(alg.max_relation + len(period)) // len(period)) + 2
        if not alg.valid_sequence(prefix + period * reps):
            raise WordError("not an N-word")
        return cls(alg, prefix, period)

    @classmethod
    def parse(cls, alg: StringAlgebra, text: str) -> "Word":
        text = text.strip()
        if text.startswith("periodic:"):
            return cls.periodic(alg, text[len("periodic:"):])
        if text.startswith("eventually:"):
            body = text[len("eventually:"):]
            if "|" not in body:
                raise WordError("eventually-periodic literal needs 'prefix | period'")
            pre, per = body.split("|", 1)
            return cls.eventually(alg, pre, per)
        m = re.fullmatch(r"1_(.+)_([+-])", text)
        if m:
            return cls.trivial(alg, m.group(1), 1 if m.group(2) == "+" else -1)
        return cls.finite(alg, text)

    # shape

    @property
    def kind(self) -> str:
        if self.bi:
            return "periodic"
        if self.period:
            return "eventual"
        return "finite" if self.letters else "trivial"

    @property
    def is_finite(self) -> bool:
        return not self.period

    @property
    def length(self) -> int:
        if self.period:
            raise WordError("infinite word has no length")
        return len(self.letters)

    def __len__(self):
        return self.length

    def __str__(self):
        if self.kind == "trivial":
            return f"1_{self.vertex}_{'+' if self.trivial_sign == 1 else '-'}"
        if self.kind == "periodic":
            return "periodic: " + " ".join(map(str, self.period))
        if self.kind == "eventual":
            pre = " ".join(map(str, self.letters))
            return f"eventually: {pre + ' ' if pre else ''}| " + " ".join(map(str, self.period))
        return " ".join(map(str, self.letters))

    def letter_at(self, k: int):
        """The (k+1)-th letter (0-based), or None past the end of a finite word."""
        if k < len(self.letters):
            return self.letters[k]
        if not self.period:
            return None
        return self.period[(k - len(self.letters)) % len(self.period)]

    def prefix(self, n: int) -> tuple:
        return tuple(self.letter_at(k) for k in range(n))

    @property
    def head(self) -> str:
        if self.kind == "trivial":
            return self.vertex
        return self.algebra.head(self.letter_at(0))

    @property
    def tail(self) -> str:
        if self.kind == "trivial":
            return self.vertex
        if self.period:
            raise WordError("infinite word has no tail")
        return self.algebra.tail(self.letters[-1])

    @property
    def sign(self) -> int:
        if self.kind == "trivial":
            return self.trivial_sign
        if self.bi:
            raise WordError("Z-words have no sign")
        return self.algebra.sign(self.letter_at(0))

    def vertices(self) -> list:
        """v_i for i = 0..n (finite) or i = 0..n-1 (one period of a Z-word)."""
        if self.kind == "trivial":
            return [self.vertex]
        if self.bi:
            return [self.algebra.head(ell) for ell in self.period]
        if self.period:
            raise WordError("N-words have infinitely many indices")
        return [self.algebra.head(ell) for ell in self.letters] + [self.tail]

    def index_counts(self) -> dict:
        out: dict = {}
        for v in self.vertices():
            out[v] = out.get(v, 0) + 1
        return out

    def is_direct(self) -> bool:
        return all(ell.direct for ell in self.letters + self.period)

    def is_inverse(self) -> bool:
        return all(ell.inverse for ell in self.letters + self.period)

    @property
    def is_repeating(self) -> bool:
        return self.kind == "eventual" and not self.letters

    def key(self):
        return (self.kind, _key(self.letters), _key(self.period), self.vertex or "", self.trivial_sign or 0)


# basic operations


def inverse(c: Word) -> Word:
    if c.kind == "trivial":
        return Word(c.algebra, (), (), c.vertex, -c.trivial_sign)
    if c.kind == "finite":
        return Word(c.algebra, _inv_letters(c.letters))
    if c.kind == "periodic":
        return Word(c.algebra, (), _inv_letters(c.period), bi=True)
    raise WordError("the inverse of an N-word is a (-N)-word, which has no Word representation")


def shift(c: Word, n: int) -> Word:
    if not c.bi:
        return c
    p = len(c.period)
    n %= p
    return Word(c.algebra, (), c.period[n:] + c.period[:n], bi=True)


def _inverse_sign(c: Word) -> int:
    if c.kind == "trivial":
        return -c.trivial_sign
    return c.algebra.sign(c.letters[-1].inv())


def compose(c: Word, d: Word) -> Word:
    """Concatenate a finite word with a finite or N-word."""
    if c.period:
        raise WordError("left factor of a composition must be finite")
    if d.bi:
        raise WordError("right factor must be a finite word or an N-word")
    if c.tail != d.head:
        raise NotComposable("tail-head", f"tail of {c} is {c.tail} but head of {d} is {d.head}")
    if _inverse_sign(c) == d.sign:
        raise NotComposable("sign", f"{c} inverted and {d} have the same sign")
    if c.kind == "trivial":
        return d
    if d.kind == "trivial":
        return c
    letters = c.letters + d.letters
    alg = c.algebra
    if d.period:
        reps = -(-(alg.max_relation + len(d.period)) // len(d.period)) + 2
        if not alg.valid_sequence(letters + d.period * reps):
            raise NotComposable("not-a-word", f"{c} followed by {d} is not a word")
        return Word.eventually(alg, letters, d.period)
    if not alg.valid_sequence(letters):
        raise NotComposable("not-a-word", f"{c} followed by {d} is not a word")
    return Word(alg, letters)


def is_word(alg: StringAlgebra, letters) -> bool:
    if isinstance(letters, str):
        letters = [Letter.parse(t) for t in letters.split()]
    return alg.valid_sequence(tuple(letters))


def power_is_word(alg: StringAlgebra, letters) -> bool:
    """Whether every power of the finite letter sequence is a word."""
    return bool(letters) and _cyclically_valid(alg, tuple(letters))


def trivial_after(alg: StringAlgebra, letters) -> Word:
    """The trivial word 1_{u,e} with ``letters`` composed with it defined."""
    last = letters[-1]
    return Word(alg, (), (), alg.tail(last), -alg.sign(last.inv()))


def trivial_before(alg: StringAlgebra, w: Word) -> Word:
    """The trivial word 1_{v,e} with ``1_{v,e} w`` defined, i.e. e = sign(w)."""
    return Word(alg, (), (), w.head, w.sign)


def index_view(c: Word, i: int, eps: int) -> tuple[Word, int]:
    """C(i, eps) and d_i(C, eps) for a finite word or (one period of) a Z-word."""
    alg = c.algebra
    if c.kind == "trivial":
        if i != 0:
            raise IndexError(i)
        right = c
        left = inverse(c)
    elif c.kind == "finite":
        n = c.length
        if not 0 <= i <= n:
            raise IndexError(i)
        right = Word(alg, c.letters[i:]) if i < n else trivial_after(alg, c.letters)
        if i > 0:
            left = Word(alg, _inv_letters(c.letters[:i]))
        else:
            left = Word(alg, (), (), c.head, -alg.sign(c.letters[0]))
    elif c.kind == "periodic":
        n = len(c.period)
        rot = c.period[i % n:] + c.period[:i % n]
        right = Word.eventually(alg, (), rot)
        left = Word.eventually(alg, (), _inv_letters(rot))
    else:
        raise WordError("index views are defined for finite and periodic words")
    if right.sign == eps:
        return right, 1
    if left.sign != eps:
        raise WordError("the two halves at an index must have opposite signs")
    return left, -1


# the order on W_{v,e}

LT, EQ, GT = -1, 0, 1


def compare(c: Word, d: Word) -> int:
    """Total order on words with the same head and sign (LT, EQ or GT)."""
    if c.bi or d.bi:
        raise WordError("Z-words are not in any W_{v,e}")
    if c.head != d.head or c.sign != d.sign:
        raise WordError(f"{c} and {d} are not in the same W_(v,e)")
    if c.period and d.period:
        bound = (len(c.letters) + len(d.letters) + len(c.period) * len(d.period) + 1)
    else:
        bound = None
    for k in count():
        if bound is not None and k >= bound:
            return EQ
        a, b = c.letter_at(k), d.letter_at(k)
        if a is None and b is None:
            return EQ
        if a == b:
            continue
        if a is not None and b is not None:
            # distinct extensions of a common word are y and x^-1
            return LT if a.direct else GT
        if a is None:
            return LT if b.inverse else GT
        return GT if a.inverse else LT


def less(c: Word, d: Word) -> bool:
    return compare(c, d) == LT


# equivalence


def equivalent(c: Word, d: Word) -> bool:
    if c.kind != d.kind:
        return False
    if c.kind == "trivial":
        return c.vertex == d.vertex
    if c.kind == "finite":
        return c.letters == d.letters or c.letters == _inv_letters(d.letters)
    if c.kind == "periodic":
        if len(c.period) != len(d.period):
            return False
        return least_rotation(c.period) in (least_rotation(d.period), least_rotation(_inv_letters(d.period)))
    return c == d


def canonical_rep(c: Word) -> Word:
    if c.kind == "trivial":
        return Word(c.algebra, (), (), c.vertex, 1)
    if c.kind == "finite":
        inv = _inv_letters(c.letters)
        return c if _key(c.letters) <= _key(inv) else Word(c.algebra, inv)
    if c.kind == "periodic":
        best = None
        for seq in (c.period, _inv_letters(c.period)):
            for i in range(len(seq)):
                rot = seq[i:] + seq[:i]
                if best is None or _key(rot) < _key(best):
                    best = rot
        return Word(c.algebra, (), best, bi=True)
    return c


def is_canonical(c: Word) -> bool:
    return canonical_rep(c) == c


def sort_key(c: Word):
    order = {"trivial": 0, "finite": 1, "eventual": 2, "periodic": 3}[c.kind]
    size = len(c.letters) + len(c.period)
    return (order, size, _key(c.letters), _key(c.period), c.vertex or "")


# enumeration


def enumerate_words(alg: StringAlgebra, budget: dict):
    """Finite and primitive periodic words fitting ``budget``, one per class.

    ``budget`` maps vertex -> maximal number of word indices at that vertex.
    Finite words are yielded first (by length), then periodic ones.
    """
    budget = {str(v): int(n) for v, n in budget.items()}
    finite, periodic = [], []
    for v in alg.vertices:
        if budget.get(v, 0) >= 1:
            finite.append(Word(alg, (), (), v, 1))

    def heads_ok(counts):
        return all(n <= budget.get(v, 0) for v, n in counts.items())

    stack = []
    for ell in alg.letters():
        counts = {alg.head(ell): 1}
        if heads_ok(counts):
            stack.append(((ell,), counts))
    while stack:
        letters, counts = stack.pop()
        full = dict(counts)
        t = alg.tail(letters[-1])
        full[t] = full.get(t, 0) + 1
        if heads_ok(full) and _key(letters) <= _key(_inv_letters(letters)):
            finite.append(Word(alg, letters))
        if (alg.head(letters[0]) == t and _primitive_root(letters) == letters
                and _cyclically_valid(alg, letters)):
            w = Word(alg, (), letters, bi=True)
            if canonical_rep(w) == w:
                periodic.append(w)
        for ell in alg.letters_at(t):
            if alg.extends(letters, ell):
                nxt = dict(counts)
                nxt[t] = nxt.get(t, 0) + 1
                if heads_ok(nxt):
                    stack.append((letters + (ell,), nxt))
    finite.sort(key=sort_key)
    periodic.sort(key=sort_key)
    yield from finite
    yield from periodic


def words_in(alg: StringAlgebra, v, eps: int, max_length: int) -> list[Word]:
    """All finite words in W_{v,eps} of length <= max_length."""
    v = str(v)
    out = [Word(alg, (), (), v, eps)]
    frontier = [(ell,) for ell in alg.letters_at(v, eps)]
    while frontier:
        nxt = []
        for letters in frontier:
            out.append(Word(alg, letters))
            if len(letters) < max_length:
                t = alg.tail(letters[-1])
                nxt += [letters + (ell,) for ell in alg.letters_at(t) if alg.extends(letters, ell)]
        frontier = nxt
    return out


# symbolic halves and the finiteness predicates


_INDEXED = re.compile(r"^(.*?)(-?\d+)$")


@dataclass(frozen=True)
class HalfWord:
    """An N-word ``prefix period period' period'' ...`` read outward from index 0.

    ``drift`` shifts the trailing integer of every arrow name by that amount on
    each repetition of the period (``x_1^-1 x_2^-1 ...`` has period ``x_1^-1``
    and drift 1), which describes words on graded quivers such as the
    infinite Kronecker chain.
    """

    prefix: tuple = ()
    period: tuple = ()
    drift: int = 0

    @property
    def finite(self) -> bool:
        return not self.period

    def eventually_inverse(self) -> bool:
        return all(ell.inverse for ell in self.period)

    def vertex_finite(self) -> bool:
        return not self.period or self.drift != 0

    def letters(self, n: int) -> list:
        out = list(self.prefix)
        rep = 0
        while len(out) < n and self.period:
            for ell in self.period:
                out.append(_shift_letter(ell, rep * self.drift))
            rep += 1
        return out[:n]

    @classmethod
    def parse(cls, text: str) -> "HalfWord":
        drift = 0
        if "@" in text:
            text, d = text.split("@", 1)
            drift = int(d)
        if "|" in text:
            pre, per = text.split("|", 1)
        else:
            pre, per = text, ""
        return cls(tuple(Letter.parse(t) for t in pre.split()),
                   tuple(Letter.parse(t) for t in per.split()), drift)

    def __str__(self):
        s = " ".join(map(str, self.prefix))
        if self.period:
            s += " | " + " ".join(map(str, self.period))
            if self.drift:
                s += f" @ {self.drift}"
        return s.strip()


def _shift_letter(ell: Letter, by: int) -> Letter:
    if not by:
        return ell
    m = _INDEXED.match(ell.arrow)
    if not m:
        raise WordError(f"arrow {ell.arrow} carries no index to shift")
    stem = m.group(1)
    return Letter(f"{stem}{int(m.group(2)) + by}", ell.inverse)


@dataclass(frozen=True)
class TwoSidedWord:
    """A Z-word given by its two halves.

    ``right`` is C_1 C_2 ... and ``left`` is the N-word (C_{<=0})^-1, that is
    C_0^-1 C_-1^-1 ...  Literal: ``twosided: <left> || <right>`` with each half
    written ``prefix | period [@ drift]``.
    """

    left: HalfWord
    right: HalfWord

    @classmethod
    def parse(cls, text: str) -> "TwoSidedWord":
        body = text.strip()
        if body.startswith("twosided:"):
            body = body[len("twosided:"):]
        if "||" not in body:
            raise WordError("two-sided literal needs 'left || right'")
        left, right = body.split("||", 1)
        return cls(HalfWord.parse(left), HalfWord.parse(right))

    def __str__(self):
        return f"twosided: {self.left} || {self.right}"


def halves(c) -> tuple[HalfWord, HalfWord]:
    """(half for C, half for C^-1) as seen from index 0."""
    if isinstance(c, TwoSidedWord):
        return c.right, c.left
    if isinstance(c, HalfWord):
        return c, HalfWord()
    if c.kind in ("trivial", "finite"):
        return HalfWord(c.letters), HalfWord()
    if c.kind == "eventual":
        return HalfWord(c.letters, c.period), HalfWord()
    return HalfWord((), c.period), HalfWord((), _inv_letters(c.period))


def props(c) -> dict:
    """Finite generation / finite control of the string module M(C)."""
    right, left = halves(c)
    ev = {"C": right.eventually_inverse(), "C_inverse": left.eventually_inverse()}
    vf = {"C": right.vertex_finite(), "C_inverse": left.vertex_finite()}
    return {
        "eventually_inverse": ev,
        "vertex_finite": vf,
        "finitely_generated": ev["C"] and ev["C_inverse"],
        "finitely_controlled": (ev["C"] or vf["C"]) and (ev["C_inverse"] or vf["C_inverse"]),
    }


def parse_any(alg: StringAlgebra | None, text: str):
    """Parse a word literal, allowing the symbolic forms with drift or two sides."""
    t = text.strip()
    if t.startswith("twosided:"):
        return TwoSidedWord.parse(t)
    if t.startswith("eventually:") and "@" in t:
        return HalfWord.parse(t[len("eventually:"):])
    if alg is None:
        raise WordError("an algebra is needed to parse this word")
    return Word.parse(alg, t)

