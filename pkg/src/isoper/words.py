"""Reduced words in free groups over weighted alphabets.

A word is stored as a tuple of signed integer codes: symbol number ``i``
(1-based position in the alphabet) is ``+i`` and its inverse is ``-i``.  The
public :class:`Word` wraps such a tuple together with its :class:`Alphabet`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from . import kernel
from .errors import ParseError, UnknownSymbol

_TOKEN = re.compile(r"^([A-Za-z_][A-Za-z0-9_']*|[0-9]+)(?:\^(-?[0-9]+))?$")


@dataclass(frozen=True)
class Letter:
    symbol: str
    sign: int = 1

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")

    def inverse(self):
        return Letter(self.symbol, -self.sign)


@dataclass(frozen=True, eq=False)
class Alphabet:
    """Ordered generator symbols with positive integer weights.

    The symbol order is used for deterministic tie-breaking everywhere
    (shortlex order, sign ``-1`` before ``+1``).
    """

    symbols: tuple
    weights: tuple = None
    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        symbols = tuple(str(s) for s in self.symbols)
        if len(set(symbols)) != len(symbols):
            raise ValueError("alphabet symbols must be unique")
        weights = self.weights
        if weights is None:
            weights = (1,) * len(symbols)
        elif isinstance(weights, Mapping):
            weights = tuple(int(weights[s]) for s in symbols)
        else:
            weights = tuple(int(w) for w in weights)
        if len(weights) != len(symbols):
            raise ValueError("one weight per symbol required")
        if any(w < 1 for w in weights):
            raise ValueError("weights must be positive integers")
        object.__setattr__(self, "symbols", symbols)
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "_index", {s: i + 1 for i, s in enumerate(symbols)})
        object.__setattr__(self, "unit", all(w == 1 for w in weights))

    @classmethod
    def standard(cls, names):
        if isinstance(names, str):
            names = names.split()
        return cls(tuple(names))

    def __len__(self):
        return len(self.symbols)

    def __eq__(self, other):
        return isinstance(other, Alphabet) and (self.symbols, self.weights) == (other.symbols, other.weights)

    def __hash__(self):
        return hash((self.symbols, self.weights))

    def __contains__(self, symbol):
        return symbol in self._index

    def weight(self, symbol):
        try:
            return self.weights[self._index[symbol] - 1]
        except KeyError:
            raise UnknownSymbol(symbol) from None

    def code(self, letter):
        if isinstance(letter, Letter):
            symbol, sign = letter.symbol, letter.sign
        else:
            symbol, sign = letter
        try:
            return sign * self._index[symbol]
        except KeyError:
            raise UnknownSymbol(symbol) from None

    def letter(self, code):
        return Letter(self.symbols[abs(code) - 1], 1 if code > 0 else -1)

    def code_weight(self, code):
        return self.weights[abs(code) - 1]

    def codes_length(self, codes):
        if self.unit:
            return len(codes)
        w = self.weights
        return sum(w[abs(c) - 1] for c in codes)

    def letter_key(self, code):
        return (abs(code) - 1, 0 if code < 0 else 1)

    def shortlex_key(self, codes):
        return (len(codes), tuple(self.letter_key(c) for c in codes))

    def generator_codes(self):
        """Letter codes in the fixed tie-breaking order (x^-1 before x)."""
        out = []
        for i in range(1, len(self.symbols) + 1):
            out.extend((-i, i))
        return out

    def word(self, codes=()):
        return Word(self, kernel.free_reduce(tuple(codes)))

    def identity(self):
        return Word(self, ())

    def generator(self, symbol):
        return Word(self, (self.code((symbol, 1)),))

    def parse(self, text):
        return parse_word(text, self)


@dataclass(frozen=True)
class Word:
    """A freely reduced word; construct through :func:`reduce` or Alphabet."""

    alphabet: Alphabet
    codes: tuple = ()

    def __post_init__(self):
        codes = tuple(self.codes)
        for c in codes:
            if c == 0 or abs(c) > len(self.alphabet):
                raise UnknownSymbol(c)
        for x, y in zip(codes, codes[1:]):
            if x == -y:
                raise ValueError("Word codes must be freely reduced; use reduce()")
        object.__setattr__(self, "codes", codes)

    @property
    def letters(self):
        return tuple(self.alphabet.letter(c) for c in self.codes)

    def __len__(self):
        return len(self.codes)

    def __bool__(self):
        return bool(self.codes)

    def __mul__(self, other):
        return multiply(self, other)

    def __invert__(self):
        return invert(self)

    def __pow__(self, n):
        if n < 0:
            return invert(self) ** (-n)
        out = self.alphabet.identity()
        for _ in range(n):
            out = multiply(out, self)
        return out

    def length(self):
        return self.alphabet.codes_length(self.codes)

    def shortlex_key(self):
        return self.alphabet.shortlex_key(self.codes)

    def __str__(self):
        return format_word(self)

    def __repr__(self):
        return f"Word({format_word(self)!r})"


def _check_same(u, v):
    if u.alphabet != v.alphabet:
        raise UnknownSymbol("words over different alphabets")


def reduce(letters: Sequence, alphabet: Alphabet) -> Word:
    """Freely reduce a sequence of Letters, ``(symbol, sign)`` pairs or codes."""
    codes = []
    for item in letters:
        if isinstance(item, int):
            if item == 0 or abs(item) > len(alphabet):
                raise UnknownSymbol(item)
            codes.append(item)
        else:
            codes.append(alphabet.code(item))
    return Word(alphabet, kernel.free_reduce(codes))


def word_length(w: Word, alphabet: Alphabet | None = None) -> int:
    """Weighted word length: the sum of the weights of the letters."""
    alphabet = alphabet or w.alphabet
    if alphabet != w.alphabet:
        for letter in w.letters:
            alphabet.weight(letter.symbol)
        return sum(alphabet.weight(letter.symbol) for letter in w.letters)
    return alphabet.codes_length(w.codes)


def multiply(u: Word, v: Word) -> Word:
    _check_same(u, v)
    return Word(u.alphabet, kernel.multiply(u.codes, v.codes))


def invert(u: Word) -> Word:
    return Word(u.alphabet, kernel.inverse(u.codes))


def conjugate(w: Word, x: Word) -> Word:
    """The reduced form of x w x^-1."""
    _check_same(w, x)
    return Word(w.alphabet, conjugate_codes(w.codes, x.codes))


def conjugate_codes(w, x):
    return kernel.multiply(kernel.multiply(x, w), kernel.inverse(x))


def format_codes(codes, alphabet):
    if not codes:
        return "1"
    parts = []
    i = 0
    while i < len(codes):
        j = i
        while j < len(codes) and codes[j] == codes[i]:
            j += 1
        symbol = alphabet.symbols[abs(codes[i]) - 1]
        power = (j - i) * (1 if codes[i] > 0 else -1)
        parts.append(symbol if power == 1 else f"{symbol}^{power}")
        i = j
    return " ".join(parts)


def format_word(w: Word) -> str:
    return format_codes(w.codes, w.alphabet)


def parse_codes(text, alphabet, line=None):
    codes = []
    column = 1
    for raw in re.split(r"(\s+)", text.strip()):
        if not raw or raw.isspace():
            column += len(raw)
            continue
        if raw in ("1", "e") and raw not in alphabet:
            column += len(raw)
            continue
        m = _TOKEN.match(raw)
        if not m:
            raise ParseError(f"malformed letter {raw!r}", line, column)
        symbol, exp = m.group(1), m.group(2)
        power = 1 if exp is None else int(exp)
        if power == 0:
            raise ParseError(f"zero exponent in {raw!r}", line, column)
        if symbol not in alphabet:
            raise UnknownSymbol(symbol)
        code = alphabet.code((symbol, 1))
        codes.extend([code if power > 0 else -code] * abs(power))
        column += len(raw)
    return kernel.free_reduce(codes)


def parse_word(text: str, alphabet: Alphabet) -> Word:
    """Parse whitespace-separated letters ``a``, ``a^-1``, ``a^3`` and reduce."""
    return Word(alphabet, parse_codes(text, alphabet))


def words_up_to(alphabet: Alphabet, max_length: int) -> Iterable[tuple]:
    """All reduced code tuples of weighted length <= max_length, in shortlex order
    of (weighted length, letter count, letters)."""
    gens = alphabet.generator_codes()
    layer = [((), 0)]
    found = [((), 0)]
    while layer:
        nxt = []
        for codes, length in layer:
            for c in gens:
                if codes and codes[-1] == -c:
                    continue
                nl = length + alphabet.code_weight(c)
                if nl <= max_length:
                    nxt.append((codes + (c,), nl))
        found.extend(nxt)
        layer = nxt
    found.sort(key=lambda t: (t[1], alphabet.shortlex_key(t[0])))
    return [codes for codes, _ in found]
