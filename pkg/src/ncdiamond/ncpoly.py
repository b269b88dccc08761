"""Free-monoid words, noncommutative polynomials, and the expression parser.

Elements of the free algebra F<g1, ..., gk> are finite linear combinations
of words in the generators.  A word is stored as a plain ``str`` with
generator i encoded as ``chr(i)``: concatenation, factor search, and
lexicographic comparison then all run at C speed, which the rewriting
engine leans on heavily.

Polynomials keep their terms sorted descending under the degree-then-lex
order ("deglex"), so ``terms[0]`` is always the leading term and equal
polynomials have identical storage.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

from .fields import Field, FieldError, Scalar

Word = str

EMPTY_WORD: Word = ""


def word_of(indices: Iterable[int]) -> Word:
    """Build a word from generator indices."""
    return "".join(map(chr, indices))


def word_indices(w: Word) -> tuple[int, ...]:
    """Generator indices of a word, left to right."""
    return tuple(map(ord, w))


def deglex_compare(u: Word, v: Word, letter_rank: tuple[int, ...] | None = None) -> int:
    """Compare words by total degree, ties broken left-to-right by letter rank.

    Returns -1, 0, or +1.  ``letter_rank[i]`` is the position of generator i
    in the letter order; by default the declaration order is used, which for
    the chr-encoded words coincides with native string comparison.
    """
    if len(u) != len(v):
        return -1 if len(u) < len(v) else 1
    if letter_rank is not None:
        u = u.translate(_rank_table(letter_rank))
        v = v.translate(_rank_table(letter_rank))
    if u == v:
        return 0
    return -1 if u < v else 1


def _rank_table(letter_rank: tuple[int, ...]) -> dict[int, int]:
    return {i: rank for i, rank in enumerate(letter_rank)}


@dataclass(frozen=True)
class FreeAlgebra:
    """A free associative algebra: a coefficient field, named generators, and
    the letter order used by deglex (default: declaration order)."""

    field: Field
    gens: tuple[str, ...]
    letter_rank: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        gens = tuple(self.gens)
        object.__setattr__(self, "gens", gens)
        if not gens:
            raise ValueError("a free algebra needs at least one generator")
        for name in gens:
            if not name.isidentifier():
                raise ValueError(f"generator name {name!r} is not an identifier")
        if len(set(gens)) != len(gens):
            raise ValueError("generator names must be distinct")
        rank = tuple(self.letter_rank) if self.letter_rank else tuple(range(len(gens)))
        if sorted(rank) != list(range(len(gens))):
            raise ValueError("letter_rank must be a permutation of the generator indices")
        object.__setattr__(self, "letter_rank", rank)
        identity = rank == tuple(range(len(gens)))
        trans = None if identity else str.maketrans(
            {chr(i): chr(r) for i, r in enumerate(rank)}
        )
        object.__setattr__(self, "_trans", trans)
        object.__setattr__(self, "_index", {n: i for i, n in enumerate(gens)})

    # -- word helpers -----------------------------------------------------

    def word_from_names(self, *names: str) -> Word:
        return "".join(chr(self._gen_index(n)) for n in names)

    def _gen_index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise ValueError(f"unknown generator {name!r}") from None

    def deglex_key(self, w: Word):
        if self._trans is None:
            return (len(w), w)
        return (len(w), w.translate(self._trans))

    def deglex_cmp(self, u: Word, v: Word) -> int:
        ku, kv = self.deglex_key(u), self.deglex_key(v)
        if ku == kv:
            return 0
        return -1 if ku < kv else 1

    def sort_words(self, words: Iterable[Word]) -> list[Word]:
        """Words sorted ascending under deglex."""
        return sorted(words, key=self.deglex_key)

    def word_str(self, w: Word) -> str:
        if not w:
            return "1"
        return "*".join(self.gens[ord(c)] for c in w)

    def check_word(self, w: Word) -> None:
        for c in w:
            if ord(c) >= len(self.gens):
                raise ValueError(f"word uses letter index {ord(c)}, alphabet has {len(self.gens)}")

    # -- polynomial constructors -------------------------------------------

    def poly(self, terms: Mapping[Word, Scalar] | None = None) -> "NcPoly":
        return NcPoly(self, terms)

    def zero(self) -> "NcPoly":
        return NcPoly(self, None)

    def one(self) -> "NcPoly":
        return NcPoly(self, {EMPTY_WORD: self.field.one()})

    def scalar(self, c: Scalar) -> "NcPoly":
        return NcPoly(self, {EMPTY_WORD: c})

    def monomial(self, w: Word, coeff: Scalar | None = None) -> "NcPoly":
        return NcPoly(self, {w: self.field.one() if coeff is None else coeff})

    def gen(self, name: str) -> "NcPoly":
        return self.monomial(chr(self._gen_index(name)))

    def parse(self, text: str) -> "NcPoly":
        return _Parser(text, self).parse()


class NcPoly:
    """An element of a free algebra: finitely many (word, coefficient) terms.

    ``terms`` is a tuple of pairs sorted descending under deglex with no zero
    coefficients, so the leading term is ``terms[0]`` and structural equality
    is semantic equality.  Instances are immutable.
    """

    __slots__ = ("alg", "terms")

    def __init__(self, alg: FreeAlgebra, terms: Mapping[Word, Scalar] | None = None):
        f = alg.field
        canon: dict[Word, Scalar] = {}
        if terms:
            for w, c in terms.items():
                alg.check_word(w)
                c = f.normalize(c)
                if c != 0:
                    canon[w] = c
        object.__setattr__(self, "alg", alg)
        object.__setattr__(
            self,
            "terms",
            tuple(sorted(canon.items(), key=lambda kv: alg.deglex_key(kv[0]), reverse=True)),
        )

    def __setattr__(self, name, value):  # pragma: no cover - guard rail
        raise AttributeError("NcPoly is immutable")

    # -- inspection ---------------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def support(self) -> tuple[Word, ...]:
        return tuple(w for w, _ in self.terms)

    def coeff(self, w: Word) -> Scalar:
        for u, c in self.terms:
            if u == w:
                return c
        return self.alg.field.zero()

    def constant_term(self) -> Scalar:
        if self.terms and not self.terms[-1][0]:
            return self.terms[-1][1]
        return self.alg.field.zero()

    def leading_term(self) -> tuple[Word, Scalar]:
        if not self.terms:
            raise ValueError("the zero polynomial has no leading term")
        return self.terms[0]

    def degree(self) -> int | None:
        """Degree of the polynomial, or None for the zero polynomial."""
        return len(self.terms[0][0]) if self.terms else None

    def as_dict(self) -> dict[Word, Scalar]:
        return dict(self.terms)

    def __iter__(self) -> Iterator[tuple[Word, Scalar]]:
        return iter(self.terms)

    # -- arithmetic -----------------------------------------------------------

    def _check(self, other: "NcPoly") -> None:
        if self.alg != other.alg:
            raise FieldError("operands live in different free algebras")

    def __add__(self, other: "NcPoly") -> "NcPoly":
        if not isinstance(other, NcPoly):
            return NotImplemented
        self._check(other)
        f = self.alg.field
        d = dict(self.terms)
        for w, c in other.terms:
            v = f.add(d.get(w, 0), c)
            if v == 0:
                d.pop(w, None)
            else:
                d[w] = v
        return NcPoly(self.alg, d)

    def __sub__(self, other: "NcPoly") -> "NcPoly":
        if not isinstance(other, NcPoly):
            return NotImplemented
        return self + (-other)

    def __neg__(self) -> "NcPoly":
        f = self.alg.field
        return NcPoly(self.alg, {w: f.neg(c) for w, c in self.terms})

    def scale(self, c: Scalar) -> "NcPoly":
        f = self.alg.field
        c = f.normalize(c)
        if c == 0:
            return NcPoly(self.alg, None)
        return NcPoly(self.alg, {w: f.mul(a, c) for w, a in self.terms})

    def __mul__(self, other):
        if isinstance(other, NcPoly):
            self._check(other)
            f = self.alg.field
            d: dict[Word, Scalar] = {}
            for u, a in self.terms:
                for v, b in other.terms:
                    w = u + v
                    val = f.add(d.get(w, 0), f.mul(a, b))
                    if val == 0:
                        d.pop(w, None)
                    else:
                        d[w] = val
            return NcPoly(self.alg, d)
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int) -> "NcPoly":
        if not isinstance(k, int) or k < 0:
            raise ValueError("polynomial powers take a nonnegative integer")
        out = self.alg.one()
        for _ in range(k):
            out = out * self
        return out

    def truncate(self, cap: int) -> "NcPoly":
        """Drop every term of degree greater than cap."""
        if self.terms and len(self.terms[0][0]) > cap:
            return NcPoly(self.alg, {w: c for w, c in self.terms if len(w) <= cap})
        return self

    # -- equality and rendering --------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, NcPoly):
            return NotImplemented
        return self.alg == other.alg and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.alg, self.terms))

    def _term_str(self, w: Word, c: Scalar) -> str:
        ws = self.alg.word_str(w)
        if not w:
            return self.alg.field.scalar_str(c)
        if c == 1:
            return ws
        return f"{self.alg.field.scalar_str(c)}*{ws}"

    def __str__(self) -> str:
        """Canonical expression, terms descending; round-trips through parse."""
        if not self.terms:
            return "0"
        rational = self.alg.field.kind == "Q"
        parts: list[str] = []
        for i, (w, c) in enumerate(self.terms):
            if rational and c < 0:
                body = self._term_str(w, -c)
                parts.append("-" + body if i == 0 else " - " + body)
            else:
                body = self._term_str(w, c)
                parts.append(body if i == 0 else " + " + body)
        return "".join(parts)

    def __repr__(self) -> str:
        return f"NcPoly({self} over {self.alg.field})"


# -- the expression parser ----------------------------------------------------
#
# expr   := term (('+' | '-') term)*
# term   := factor ('*' factor)*
# factor := '-' factor | atom
# atom   := scalar | generator | '(' expr ')'
# scalar := INT ('/' INT)?
#
# Multiplication must be explicit; juxtaposition is a syntax error.


class ParseError(ValueError):
    """Syntax or lookup error in a polynomial expression, with position."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if c.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(("int", text[i:j], i))
            i = j
            continue
        if c.isalpha() or c == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("name", text[i:j], i))
            i = j
            continue
        if c in "+-*/()":
            tokens.append((c, c, i))
            i += 1
            continue
        raise ParseError(f"unexpected character {c!r}", i)
    tokens.append(("end", "", n))
    return tokens


class _Parser:
    def __init__(self, text: str, alg: FreeAlgebra):
        self.tokens = _tokenize(text)
        self.alg = alg
        self.i = 0

    def _peek(self) -> tuple[str, str, int]:
        return self.tokens[self.i]

    def _next(self) -> tuple[str, str, int]:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def parse(self) -> NcPoly:
        p = self._expr()
        kind, _, pos = self._peek()
        if kind != "end":
            raise ParseError("unexpected trailing input", pos)
        return p

    def _expr(self) -> NcPoly:
        p = self._term()
        while True:
            kind = self._peek()[0]
            if kind == "+":
                self._next()
                p = p + self._term()
            elif kind == "-":
                self._next()
                p = p - self._term()
            else:
                return p

    def _term(self) -> NcPoly:
        p = self._factor()
        while self._peek()[0] == "*":
            self._next()
            p = p * self._factor()
        return p

    def _factor(self) -> NcPoly:
        if self._peek()[0] == "-":
            self._next()
            return -self._factor()
        return self._atom()

    def _atom(self) -> NcPoly:
        kind, value, pos = self._next()
        if kind == "int":
            num = int(value)
            if self._peek()[0] == "/":
                self._next()
                dkind, dvalue, dpos = self._next()
                if dkind != "int":
                    raise ParseError("expected an integer denominator", dpos)
                try:
                    c = self.alg.field.from_ratio(num, int(dvalue))
                except FieldError as exc:
                    raise ParseError(str(exc), pos) from None
                return self.alg.scalar(c)
            return self.alg.scalar(self.alg.field.from_int(num))
        if kind == "name":
            try:
                return self.alg.gen(value)
            except ValueError:
                raise ParseError(f"unknown generator {value!r}", pos) from None
        if kind == "(":
            p = self._expr()
            ckind, _, cpos = self._next()
            if ckind != ")":
                raise ParseError("expected ')'", cpos)
            return p
        raise ParseError("expected a scalar, a generator, or '('", pos)


def parse_poly(
    text: str,
    generators: Iterable[str],
    field: Field,
    letter_rank: tuple[int, ...] | None = None,
) -> NcPoly:
    """Parse an expression over the given generators into a polynomial."""
    alg = FreeAlgebra(field, tuple(generators), letter_rank or ())
    return alg.parse(text)
