"""Computable group models and their quotient word-length functions.

Every model exposes canonical hashable normal forms, multiplication,
inversion and the image of each generator letter.  Quotient lengths are
computed exactly by weighted Dijkstra over the Cayley graph, with ties broken
by the shortlex order of the witness word, so balls are deterministic.
"""

from __future__ import annotations

import heapq
import math
from fractions import Fraction

from .errors import BudgetExceeded, UnknownName, UnknownSymbol
from .words import Alphabet, Word

DEFAULT_MAX_ELEMENTS = 10**6


class GroupModel:
    """Base class.  Subclasses set ``name`` and ``alphabet`` and implement
    ``identity``, ``mul``, ``inv`` and ``_gen``."""

    name = "group"
    alphabet: Alphabet
    bounded = False

    def _gen(self, index):
        raise NotImplementedError

    def mul(self, x, y):
        raise NotImplementedError

    def inv(self, x):
        raise NotImplementedError

    @property
    def identity(self):
        raise NotImplementedError

    def letter_image(self, code):
        g = self._gen(abs(code))
        return g if code > 0 else self.inv(g)

    def evaluate_codes(self, codes):
        out = self.identity
        for c in codes:
            out = self.mul(out, self.letter_image(c))
        return out

    def is_identity(self, x):
        return x == self.identity

    def format_element(self, x):
        return repr(x)

    def exact_length(self, x):
        """Closed-form L_G when known, else None."""
        return None

    def edges(self, radius):
        """Generator codes used by Dijkstra up to ``radius``."""
        return self.alphabet.generator_codes()

    def __repr__(self):
        return f"<{type(self).__name__} {self.name}>"

    # models are used as cache keys
    def __hash__(self):
        return hash((type(self).__name__, self.name, self.alphabet))

    def __eq__(self, other):
        return type(self) is type(other) and self.name == other.name and self.alphabet == other.alphabet


class FreeAbelian(GroupModel):
    def __init__(self, rank, weights=None, symbols=None):
        if rank < 1:
            raise ValueError("rank must be positive")
        self.rank = rank
        if symbols is None:
            symbols = ("t",) if rank == 1 else "abcdefgh"[:rank]
        self.alphabet = Alphabet(tuple(symbols), weights)
        self.name = "z" if rank == 1 else f"z{rank}"
        if weights is not None and any(w != 1 for w in self.alphabet.weights):
            self.name += "[" + ",".join(map(str, self.alphabet.weights)) + "]"

    @property
    def identity(self):
        return (0,) * self.rank

    def _gen(self, index):
        v = [0] * self.rank
        v[index - 1] = 1
        return tuple(v)

    def mul(self, x, y):
        return tuple(a + b for a, b in zip(x, y))

    def inv(self, x):
        return tuple(-a for a in x)

    def exact_length(self, x):
        return sum(abs(a) * w for a, w in zip(x, self.alphabet.weights))


class Free(GroupModel):
    """Free group; normal form is the reduced code tuple."""

    def __init__(self, rank, weights=None, symbols=None):
        self.rank = rank
        if symbols is None:
            symbols = "abcdefgh"[:rank]
        self.alphabet = Alphabet(tuple(symbols), weights)
        self.name = f"free{rank}"

    identity = ()

    def _gen(self, index):
        return (index,)

    def mul(self, x, y):
        from . import kernel

        return kernel.multiply(x, y)

    def inv(self, x):
        return tuple(-c for c in reversed(x))

    def evaluate_codes(self, codes):
        from . import kernel

        return kernel.free_reduce(tuple(codes))

    def exact_length(self, x):
        return self.alphabet.codes_length(x)

    def format_element(self, x):
        from .words import format_codes

        return format_codes(x, self.alphabet)


class Cyclic(GroupModel):
    def __init__(self, m, weight=1):
        if m < 1:
            raise ValueError("order must be positive")
        self.m = m
        self.alphabet = Alphabet(("t",), (weight,))
        self.name = f"cyclic:{m}"

    identity = 0

    def _gen(self, index):
        return 1 % self.m

    def mul(self, x, y):
        return (x + y) % self.m

    def inv(self, x):
        return (-x) % self.m

    def exact_length(self, x):
        return min(x, self.m - x) * self.alphabet.weights[0]


class Heisenberg(GroupModel):
    """Integer Heisenberg group in coordinates (x, y, z) with
    (x,y,z)(x',y',z') = (x+x', y+y', z+z'+x y'); a = (1,0,0), b = (0,1,0)."""

    name = "heisenberg"

    def __init__(self, weights=None):
        self.alphabet = Alphabet(("a", "b"), weights)

    identity = (0, 0, 0)

    def _gen(self, index):
        return (1, 0, 0) if index == 1 else (0, 1, 0)

    def mul(self, p, q):
        return (p[0] + q[0], p[1] + q[1], p[2] + q[2] + p[0] * q[1])

    def inv(self, p):
        return (-p[0], -p[1], -p[2] + p[0] * p[1])


class BS12(GroupModel):
    """BS(1,2) = <a,t | t a t^-1 = a^2> acting on dyadic rationals,
    a: x -> x+1, t: x -> 2x.

    Normal form is the Britton form t^-p a^m t^q stored as (p, m, q): p, q >= 0
    and m odd whenever p and q are both positive.
    """

    name = "bs12"

    def __init__(self, weights=None):
        self.alphabet = Alphabet(("a", "t"), weights)

    identity = (0, 0, 0)

    @staticmethod
    def to_affine(x):
        p, m, q = x
        return q - p, Fraction(m, 2**p)

    @staticmethod
    def from_affine(k, r):
        r = Fraction(r)
        v = r.denominator.bit_length() - 1  # denominator is a power of two
        p = max(0, -k, v)
        m = r * 2**p
        assert m.denominator == 1
        return (p, int(m), k + p)

    def _gen(self, index):
        return (0, 1, 0) if index == 1 else (0, 0, 1)

    def mul(self, x, y):
        k1, r1 = self.to_affine(x)
        k2, r2 = self.to_affine(y)
        return self.from_affine(k1 + k2, r1 + r2 * Fraction(2) ** k1)

    def inv(self, x):
        k, r = self.to_affine(x)
        return self.from_affine(-k, -r * Fraction(2) ** (-k))

    def format_element(self, x):
        p, m, q = x
        parts = []
        if p:
            parts.append(f"t^{-p}")
        if m:
            parts.append("a" if m == 1 else f"a^{m}")
        if q:
            parts.append("t" if q == 1 else f"t^{q}")
        return " ".join(parts) or "1"


def log_weight(n):
    return math.ceil(math.log2(1 + abs(n))) if n else 0


def _log_weight_exact(n):
    # ceil(log2(1+n)) without floating point
    return (abs(n)).bit_length()


class LogWeightedZ(GroupModel):
    """Z generated by every n != 0 with weight ceil(log2(1+|n|)).

    The generating set is infinite; ``alphabet`` holds the positive symbols
    ``z1 .. zN`` with N = 2^R - 1 for the radius R given at construction
    (inverses cover the negative ones).  L(m) = ceil(log2(1+|m|)) exactly,
    because that weight is subadditive and monotone in |m|.
    """

    name = "logz"

    def __init__(self, radius=4):
        self.radius = radius
        top = 2**radius - 1
        self.alphabet = Alphabet(
            tuple(f"z{n}" for n in range(1, top + 1)),
            tuple(_log_weight_exact(n) for n in range(1, top + 1)),
        )

    def alphabet_upto(self, radius):
        return LogWeightedZ(radius).alphabet

    identity = 0

    def _gen(self, index):
        return index

    def mul(self, x, y):
        return x + y

    def inv(self, x):
        return -x

    def exact_length(self, x):
        return _log_weight_exact(x)

    def __hash__(self):
        return hash(("logz", self.radius))

    def __eq__(self, other):
        return isinstance(other, LogWeightedZ) and other.radius == self.radius


class BoundedLength(GroupModel):
    """Wrap a model with the bounded length L(g) = 1 for g != 1.

    Ball enumeration still follows the wrapped model's word metric; only the
    reported lengths change.
    """

    bounded = True

    def __init__(self, inner):
        self.inner = inner
        self.alphabet = inner.alphabet
        self.name = f"bounded:{inner.name}"

    @property
    def identity(self):
        return self.inner.identity

    def _gen(self, index):
        return self.inner._gen(index)

    def mul(self, x, y):
        return self.inner.mul(x, y)

    def inv(self, x):
        return self.inner.inv(x)

    def evaluate_codes(self, codes):
        return self.inner.evaluate_codes(codes)

    def format_element(self, x):
        return self.inner.format_element(x)

    def exact_length(self, x):
        return 0 if x == self.identity else 1

    def __hash__(self):
        return hash(("bounded", self.inner))

    def __eq__(self, other):
        return isinstance(other, BoundedLength) and other.inner == self.inner


def evaluate(model: GroupModel, w) -> object:
    """Normal form of the image of a word (or code tuple) in the model."""
    if isinstance(w, Word):
        if w.alphabet != model.alphabet:
            for letter in w.letters:
                if letter.symbol not in model.alphabet:
                    raise UnknownSymbol(letter.symbol)
            codes = tuple(model.alphabet.code(l) for l in w.letters)
        else:
            codes = w.codes
    else:
        codes = tuple(w)
        for c in codes:
            if c == 0 or abs(c) > len(model.alphabet):
                raise UnknownSymbol(c)
    return model.evaluate_codes(codes)


def kernel_membership(model: GroupModel, w) -> bool:
    """True iff w lies in the kernel of F -> G."""
    return model.is_identity(evaluate(model, w))


class BallTable:
    """Exact quotient lengths for all elements with L_G <= radius.

    ``entries`` maps normal form -> (length, witness Word); ``order`` lists the
    normal forms by (length, shortlex witness).
    """

    def __init__(self, model, radius, entries, order):
        self.model = model
        self.radius = radius
        self.entries = entries
        self.order = order

    def __len__(self):
        return len(self.entries)

    def __contains__(self, g):
        return g in self.entries

    def __iter__(self):
        return iter(self.order)

    def length(self, g):
        e = self.entries.get(g)
        return None if e is None else e[0]

    def witness(self, g):
        return self.entries[g][1]

    def elements(self, max_length=None):
        if max_length is None:
            return list(self.order)
        return [g for g in self.order if self.entries[g][0] <= max_length]

    def restrict(self, radius):
        order = [g for g in self.order if self.entries[g][0] <= radius]
        return BallTable(self.model, radius, {g: self.entries[g] for g in order}, order)


_BALLS: dict = {}


def cayley_ball(model: GroupModel, R: int, max_elements: int | None = None) -> BallTable:
    """Weighted Dijkstra out to radius R with priority (length, shortlex witness)."""
    if max_elements is None:
        max_elements = DEFAULT_MAX_ELEMENTS
    if R < 0:
        raise ValueError("radius must be nonnegative")
    cached = _BALLS.get(model)
    if cached is not None and cached.radius >= R:
        return cached if cached.radius == R else cached.restrict(R)
    inner = model.inner if isinstance(model, BoundedLength) else model
    if isinstance(inner, LogWeightedZ):
        table = _logz_ball(model, R, max_elements)
        _BALLS[model] = table
        return table
    alphabet = inner.alphabet
    gens = [c for c in inner.edges(R) if alphabet.code_weight(c) <= R]
    images = {c: inner.letter_image(c) for c in gens}
    start = inner.identity
    heap = [(0, (0, ()), (), start)]
    best = {start: (0, (0, ()))}
    entries = {}
    order = []
    while heap:
        d, key, codes, g = heapq.heappop(heap)
        if g in entries:
            continue
        entries[g] = (d, codes)
        order.append(g)
        if len(entries) > max_elements:
            raise BudgetExceeded(
                f"Cayley ball of radius {R} exceeds {max_elements} elements",
                {"radius_reached": d, "elements": len(entries)},
            )
        for c in gens:
            if codes and codes[-1] == -c:
                continue
            nd = d + alphabet.code_weight(c)
            if nd > R:
                continue
            h = inner.mul(g, images[c])
            if h in entries:
                continue
            ncodes = codes + (c,)
            nkey = (len(ncodes), key[1] + (alphabet.letter_key(c),))
            old = best.get(h)
            if old is not None and (old[0], old[1]) <= (nd, nkey):
                continue
            best[h] = (nd, nkey)
            heapq.heappush(heap, (nd, nkey, ncodes, h))
    entries = {g: (d, Word(alphabet, codes)) for g, (d, codes) in entries.items()}
    table = BallTable(model, R, entries, order)
    _BALLS[model] = table
    return table


def _logz_ball(model, R, max_elements):
    # every n != 0 is a single generator; the shortlex-least geodesic is that
    # letter, so the order is (weight, |n|, negative first)
    if 2 ** (R + 1) - 1 > max_elements:
        raise BudgetExceeded(
            f"Cayley ball of radius {R} exceeds {max_elements} elements",
            {"elements": 2 ** (R + 1) - 1},
        )
    alphabet = LogWeightedZ(max(R, 1)).alphabet
    entries = {0: (0, Word(alphabet, ()))}
    order = [0]
    for n in range(1, 2**R):
        w = _log_weight_exact(n)
        for x in (-n, n):
            entries[x] = (w, Word(alphabet, (x,)))
            order.append(x)
    return BallTable(model, R, entries, order)


def quotient_length(model: GroupModel, g, R: int, max_elements: int | None = None):
    """Exact L_G(g) if it is at most R, else None."""
    if model.is_identity(g):
        return 0
    exact = model.exact_length(g)
    if exact is not None:
        return exact if exact <= R else None
    return cayley_ball(model, R, max_elements).length(g)


def length_function(model: GroupModel, R: int, max_elements: int | None = None):
    """A callable g -> L_G(g) valid on the radius-R ball (None outside)."""
    probe = model.exact_length(model.identity)
    if probe is not None:
        def L(g):
            v = model.exact_length(g)
            return v if v <= R or model.bounded else None
        return L
    ball = cayley_ball(model, R, max_elements)
    return ball.length


def catalog_model(name: str) -> GroupModel:
    """Look up a catalog model: z, z2, z3, free2, free:<r>, cyclic:<m>,
    heisenberg, bs12, logz, logz:<R>, bounded:<name>."""
    key = name.strip().lower()
    if key.startswith("bounded:"):
        return BoundedLength(catalog_model(key[len("bounded:"):]))
    if key in ("z", "z1"):
        return FreeAbelian(1)
    if key in ("z2", "z3"):
        return FreeAbelian(int(key[1]))
    if key.startswith("z") and key[1:].isdigit():
        return FreeAbelian(int(key[1:]))
    if key.startswith("free"):
        rest = key[4:].lstrip(":")
        return Free(int(rest) if rest else 2)
    if key.startswith("cyclic:"):
        return Cyclic(int(key.split(":", 1)[1]))
    if key == "heisenberg":
        return Heisenberg()
    if key in ("bs12", "bs(1,2)"):
        return BS12()
    if key == "logz":
        return LogWeightedZ()
    if key.startswith("logz:"):
        return LogWeightedZ(int(key.split(":", 1)[1]))
    raise UnknownName(name)
