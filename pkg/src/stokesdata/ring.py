"""Reduced words in the free group on S, T, U and its rational group algebra."""

from __future__ import annotations

import re
from fractions import Fraction

GENERATORS = ("S", "T", "U")
_LETTER_RANK = {(g, e): 2 * i + (e < 0) for i, g in enumerate(GENERATORS) for e in (1, -1)}


class GroupWord:
    """A freely reduced word; letters are (generator, +1 | -1)."""

    __slots__ = ("letters",)

    def __init__(self, letters=()):
        out = []
        for g, e in letters:
            if g not in GENERATORS or e not in (1, -1):
                raise ValueError(f"bad letter {(g, e)!r}")
            if out and out[-1] == (g, -e):
                out.pop()
            else:
                out.append((g, e))
        self.letters = tuple(out)

    @classmethod
    def identity(cls) -> "GroupWord":
        return cls()

    @classmethod
    def gen(cls, name: str, exp: int = 1) -> "GroupWord":
        step = 1 if exp > 0 else -1
        return cls([(name, step)] * abs(exp))

    @classmethod
    def parse(cls, text: str) -> "GroupWord":
        s = text.replace(" ", "").replace("·", "").replace("*", "").replace("{", "").replace("}", "")
        if s in ("", "1", "e"):
            return cls()
        letters = []
        for g, exp in re.findall(r"([STU])(?:\^\(?(-?\d+)\)?)?", s):
            letters += cls.gen(g, int(exp) if exp else 1).letters
        if re.sub(r"([STU])(?:\^\(?(-?\d+)\)?)?", "", s):
            raise ValueError(f"cannot parse group word {text!r}")
        return cls(letters)

    def __mul__(self, other: "GroupWord") -> "GroupWord":
        return GroupWord(self.letters + other.letters)

    def inverse(self) -> "GroupWord":
        return GroupWord((g, -e) for g, e in reversed(self.letters))

    def substitute(self, mapping: dict) -> "GroupWord":
        """Apply a generator permutation such as {'S': 'T', 'T': 'S'}."""
        return GroupWord((mapping.get(g, g), e) for g, e in self.letters)

    def key(self):
        return len(self.letters), tuple(_LETTER_RANK[x] for x in self.letters)

    def __len__(self):
        return len(self.letters)

    def __eq__(self, other):
        return isinstance(other, GroupWord) and self.letters == other.letters

    def __hash__(self):
        return hash(self.letters)

    def __lt__(self, other):
        return self.key() < other.key()

    def __str__(self):
        if not self.letters:
            return "1"
        parts = []
        i = 0
        while i < len(self.letters):
            j = i
            while j < len(self.letters) and self.letters[j] == self.letters[i]:
                j += 1
            g, e = self.letters[i]
            k = (j - i) * e
            parts.append(g if k == 1 else f"{g}^{k}")
            i = j
        return "·".join(parts)

    def __repr__(self):
        return f"GroupWord({self})"


class RingElement:
    """Finite sum of rational multiples of group words."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for w, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                clean[w] = clean.get(w, 0) + c
                if not clean[w]:
                    del clean[w]
        self.terms = clean

    @classmethod
    def zero(cls) -> "RingElement":
        return cls()

    @classmethod
    def one(cls) -> "RingElement":
        return cls({GroupWord(): 1})

    @classmethod
    def word(cls, w, coeff=1) -> "RingElement":
        if isinstance(w, str):
            w = GroupWord.parse(w)
        return cls({w: coeff})

    @classmethod
    def coerce(cls, x) -> "RingElement":
        if isinstance(x, RingElement):
            return x
        if isinstance(x, GroupWord):
            return cls.word(x)
        if isinstance(x, str):
            return cls.parse(x)
        return cls({GroupWord(): x})

    @classmethod
    def parse(cls, text: str) -> "RingElement":
        s = text.replace(" ", "").replace("−", "-")
        if s in ("", "0"):
            return cls()
        if s[0] not in "+-":
            s = "+" + s
        out = cls()
        for sign, body in re.findall(r"([+-])([^+-]+)", _protect_exponents(s)):
            body = body.replace("~", "-")
            m = re.fullmatch(r"(\d+(?:/\d+)?)?(?:[·*]?)(.*)", body)
            coef = Fraction(m.group(1)) if m.group(1) else Fraction(1)
            word = m.group(2)
            if m.group(1) and word == "":
                word = "1"
            term = cls.word(GroupWord.parse(word), coef if sign == "+" else -coef)
            out = out + term
        return out

    def __add__(self, other):
        other = RingElement.coerce(other)
        terms = dict(self.terms)
        for w, c in other.terms.items():
            terms[w] = terms.get(w, 0) + c
        return RingElement(terms)

    __radd__ = __add__

    def __neg__(self):
        return RingElement({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-RingElement.coerce(other))

    def __rsub__(self, other):
        return RingElement.coerce(other) - self

    def __mul__(self, other):
        other = RingElement.coerce(other)
        terms = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 * w2
                terms[w] = terms.get(w, 0) + c1 * c2
        return RingElement(terms)

    def __rmul__(self, other):
        return RingElement.coerce(other) * self

    def __eq__(self, other):
        try:
            other = RingElement.coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def unit_word(self):
        """(sign, word) when self is plus or minus a single word, else None."""
        if len(self.terms) != 1:
            return None
        (w, c), = self.terms.items()
        if c in (1, -1):
            return int(c), w
        return None

    def unit_inverse(self) -> "RingElement":
        u = self.unit_word()
        if u is None:
            raise ValueError(f"{self} is not a unit of the form ±word")
        return RingElement.word(u[1].inverse(), u[0])

    def substitute(self, mapping: dict) -> "RingElement":
        return RingElement({w.substitute(mapping): c for w, c in self.terms.items()})

    def canonical(self):
        return tuple((w.letters, c) for w, c in sorted(self.terms.items(), key=lambda kv: kv[0].key()))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for w, c in sorted(self.terms.items(), key=lambda kv: kv[0].key()):
            mag = abs(c)
            ws = str(w)
            if ws == "1":
                body = _fmt(mag)
            elif mag == 1:
                body = ws
            else:
                body = f"{_fmt(mag)}·{ws}"
            parts.append(("-" if c < 0 else "+", body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"RingElement({self})"


def _fmt(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _protect_exponents(s: str) -> str:
    # negative exponents use "-", which would otherwise split terms
    return re.sub(r"\^\(?-(\d+)\)?", r"^~\1", s)
