"""Areas of null words: Area_P, the weighted Area'_P, Dehn-function samples.

Searches only multiply on the right by conjugated relators ``x r^{+-1} x^-1``.
Each result is "certified" relative to the caps of a :class:`SearchBudget`:
conjugators of weighted length at most ``max_conjugator_length`` and
intermediate products of weighted length at most ``max_intermediate_length``
(the starting identity and the target itself are exempt).  Within those caps
a certified count is the exact minimum.

Counting search (:func:`area_search`) is iterative deepening on the number of
factors, deciding each level by a meet in the middle: explicit layers of
states on one side, 64-bit hashes of the other side's layer, joined by the
compiled kernel.  Every hash hit is re-verified on exact words, so collisions
can cost time but never correctness.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field

import numpy as np

from . import kernel
from .errors import (
    BudgetExceeded,
    EmptyRelator,
    IndexOutOfRange,
    NotNullhomotopic,
    ParseError,
    UncertifiedSample,
    UnknownName,
    UnknownSymbol,
)
from .groups import GroupModel, catalog_model, evaluate
from .words import Alphabet, Word, format_codes, parse_codes, words_up_to

# explicit (Python-side) layer construction is allowed up to this many products
EXPLICIT_LIMIT = 400_000


@dataclass(frozen=True)
class SearchBudget:
    max_count: int = 8
    max_conjugator_length: int = 4
    max_intermediate_length: int = 16
    max_states: int = 60_000_000

    def __post_init__(self):
        for name in ("max_count", "max_conjugator_length", "max_intermediate_length", "max_states"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")

    def as_dict(self):
        return {
            "max_count": self.max_count,
            "max_conjugator_length": self.max_conjugator_length,
            "max_intermediate_length": self.max_intermediate_length,
            "max_states": self.max_states,
        }


class Presentation:
    """Finite presentation <S | W> with an optional model solving its word problem."""

    def __init__(self, alphabet: Alphabet, relators, model: GroupModel | None = None, name=None):
        self.alphabet = alphabet
        rels = []
        for r in relators:
            codes = r.codes if isinstance(r, Word) else kernel.free_reduce(tuple(r))
            if not codes:
                raise EmptyRelator("relator reduces to the identity")
            rels.append(Word(alphabet, codes))
        self.relators = tuple(rels)
        self.model = model
        self.name = name
        if model is not None and tuple(model.alphabet.symbols) != alphabet.symbols:
            raise ValueError("model generators must match the presentation")

    @property
    def M(self):
        return max((r.length() for r in self.relators), default=0)

    def relator_length(self, i):
        return self.relators[i].length()

    def __repr__(self):
        rels = ", ".join(str(r) for r in self.relators)
        return f"<{' '.join(self.alphabet.symbols)} | {rels}>"

    def format(self):
        lines = ["[generators]"]
        for s, w in zip(self.alphabet.symbols, self.alphabet.weights):
            lines.append(f"{s} {w}")
        lines.append("[relators]")
        lines.extend(str(r) for r in self.relators)
        if self.model is not None:
            lines.append("[model]")
            lines.append(self.model.name)
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class Factor:
    relator: int
    sign: int
    conjugator: Word

    def key(self):
        # relator order, then + before -, then shortlex conjugator
        return (self.relator, 0 if self.sign > 0 else 1, self.conjugator.shortlex_key())

    def __str__(self):
        r = f"r{self.relator + 1}" + ("" if self.sign > 0 else "^-1")
        if not self.conjugator:
            return r
        return f"({self.conjugator}) {r} ({self.conjugator})^-1"


@dataclass(frozen=True)
class AreaExpression:
    factors: tuple = ()
    target: Word | None = field(default=None, compare=False)

    @property
    def count(self):
        return len(self.factors)

    def weighted_cost(self, P: Presentation):
        return sum(P.relator_length(f.relator) + 2 * f.conjugator.length() for f in self.factors)

    def serialization(self):
        return tuple(f.key() for f in self.factors)

    def __str__(self):
        return " * ".join(str(f) for f in self.factors) or "1"


def factor_word(f: Factor, P: Presentation):
    if not 0 <= f.relator < len(P.relators):
        raise IndexOutOfRange(f"relator index {f.relator} out of range")
    r = P.relators[f.relator].codes
    if f.sign < 0:
        r = kernel.inverse(r)
    x = f.conjugator.codes
    return kernel.multiply(kernel.multiply(x, r), kernel.inverse(x))


def evaluate_expression(e: AreaExpression, P: Presentation) -> Word:
    """The reduced product of the conjugated relators, in F."""
    out = ()
    for f in e.factors:
        out = kernel.multiply(out, factor_word(f, P))
    return Word(P.alphabet, out)


@dataclass
class AreaResult:
    expression: AreaExpression
    count: int
    certified: bool
    weighted_cost: int
    budget: SearchBudget
    stats: dict = field(default_factory=dict)


def _as_codes(y, P):
    if isinstance(y, Word):
        if y.alphabet != P.alphabet:
            raise UnknownSymbol("word over a different alphabet")
        return y.codes
    return kernel.free_reduce(tuple(y))


class _Moves:
    """Distinct move words x r^{+-1} x^-1 with the least factor producing each."""

    def __init__(self, P: Presentation, conj_cap: int, order: str):
        A = P.alphabet
        conjugators = words_up_to(A, conj_cap)
        best = {}
        for i, r in enumerate(P.relators):
            for sign in (1, -1):
                for x in conjugators:
                    f = Factor(i, sign, Word(A, x))
                    w = factor_word(f, P)
                    cost = P.relator_length(i) + 2 * A.codes_length(x)
                    rank = (f.key(),) if order == "key" else (cost, f.key())
                    old = best.get(w)
                    if old is None or rank < old[0]:
                        best[w] = (rank, f, cost)
        items = sorted(best.items(), key=lambda kv: kv[1][0])
        self.words = [w for w, _ in items]
        self.factors = [v[1] for _, v in items]
        self.costs = np.array([v[2] for _, v in items], dtype=np.int64)
        self.weights = np.array([A.codes_length(w) for w in self.words], dtype=np.int64)
        self.index = {w: k for k, w in enumerate(self.words)}
        self.inverses = [kernel.inverse(w) for w in self.words]
        self.pack = kernel.WordPack(self.words)

    def __len__(self):
        return len(self.words)


class AreaSearcher:
    """Reusable search state for one presentation and budget.

    Move tables are built once; per-target layers are rebuilt for each word.
    """

    def __init__(self, P: Presentation, budget: SearchBudget | None = None):
        self.P = P
        self.budget = budget or SearchBudget()
        self.A = P.alphabet
        self.cap = self.budget.max_intermediate_length
        self.moves = _Moves(P, self.budget.max_conjugator_length, "key")
        self._wmoves = None
        self._fwd = None
        self._F2 = None
        self.work = 0

    # -- helpers ---------------------------------------------------------
    def _L(self, codes):
        return self.A.codes_length(codes)

    def _charge(self, amount, stage):
        self.work += amount
        if self.work > self.budget.max_states:
            raise _Overflow(stage)

    def _step(self, states):
        """All p*m with weighted length <= cap, as (state, origin) pairs."""
        moves = self.moves
        out = []
        for o, p in enumerate(states):
            lens = kernel.product_lengths(p, moves.pack)
            for j in np.flatnonzero(lens <= self.cap):
                q = kernel.multiply(p, moves.words[j])
                if self._L(q) <= self.cap:
                    out.append((q, o))
        return out

    def _forward1(self):
        if self._fwd is None:
            self._fwd_idx = [j for j, wt in enumerate(self.moves.weights) if wt <= self.cap]
            self._fwd = [self.moves.words[j] for j in self._fwd_idx]
        return self._fwd

    def _forward2(self):
        """Sorted hashes of (a superset of) the states two moves from 1.

        Independent of the target, so built once per searcher.
        """
        if self._F2 is None:
            fwd = self._forward1()
            self._charge(len(fwd) * len(self.moves), "forward hashes 2")
            self._F2, _ = kernel.product_hashes(kernel.WordPack(fwd), self.moves.pack, self.cap)
        return self._F2

    def _in_forward2(self, q):
        if self._L(q) > self.cap:
            return False
        index = self.moves.index
        inv = self.moves.inverses
        for j in range(len(self._forward1())):
            if kernel.multiply(inv[self._fwd_idx[j]], q) in index:
                return True
        return False

    def _exists(self, n):
        """Is y a product of exactly n moves?  Levels 2-4 meet at the cached
        forward layers; anything else goes through the generic join."""
        if n <= 1 or len(self._forward1()) * len(self.moves) > self.budget.max_states:
            return self._first_reaching([()], n) is not None
        bwd1 = self._explicit_bwd(1)
        if bwd1 is None or n > 4:
            return self._first_reaching([()], n) is not None
        if n == 2:
            fwd = set(self._forward1())
            return any(b in fwd for b in bwd1)
        F2 = self._forward2()
        if n == 3:
            return bool(self._meet3())
        self._charge(len(bwd1) * len(self.moves), "join 4")
        hits = kernel.hits_in(kernel.WordPack(bwd1), self.moves.pack, self.cap, F2)
        for i, j in hits:
            if self._in_forward2(kernel.multiply(bwd1[i], self.moves.words[j])):
                return True
        return False

    def _meet3(self):
        """All states two moves from 1 and one move from y."""
        bwd1 = self._bwd[1]
        F2 = self._forward2()
        hs = np.fromiter((kernel.word_hash(b) for b in bwd1), dtype=np.uint64, count=len(bwd1))
        pos = np.searchsorted(F2, hs)
        pos[pos >= len(F2)] = 0
        cand = np.flatnonzero(F2[pos] == hs) if len(F2) else []
        return [bwd1[i] for i in cand if self._in_forward2(bwd1[i])]

    # -- per-target backward layers -------------------------------------
    def _prepare(self, y):
        self._y = y
        self._bwd = {0: [y]}
        self._bwd_set = {0: {y}}
        self._hash = {}

    def _explicit_bwd(self, k):
        if k in self._bwd:
            return self._bwd[k]
        prev = self._explicit_bwd(k - 1)
        if prev is None or len(prev) * len(self.moves) > EXPLICIT_LIMIT:
            return None
        self._charge(len(prev) * len(self.moves), f"backward layer {k}")
        seen = set()
        layer = []
        for q, _ in self._step(prev):
            if q not in seen:
                seen.add(q)
                layer.append(q)
        self._bwd[k] = layer
        self._bwd_set[k] = seen
        return layer

    def _bwd_hashes(self, k):
        """Sorted hashes of a superset of backward layer k, or None."""
        if k in self._hash:
            return self._hash[k]
        layer = self._bwd.get(k)
        if layer is not None:
            h = kernel.hashes_of(layer)
        else:
            prev = self._explicit_bwd(k - 1)
            if prev is None:
                return None
            self._charge(len(prev) * len(self.moves), f"backward hashes {k}")
            h, _ = kernel.product_hashes(kernel.WordPack(prev), self.moves.pack, self.cap)
        self._hash[k] = h
        return h

    # -- the join --------------------------------------------------------
    def _first_reaching(self, states, r):
        """Smallest index i such that states[i] reaches y with exactly r more
        moves (all intermediate states within the cap), or None."""
        y = self._y
        moves = self.moves
        if not states:
            return None
        if r == 0:
            for i, p in enumerate(states):
                if p == y:
                    return i
            return None
        if r == 1:
            self._charge(len(states), "level 1")
            for i, p in enumerate(states):
                if kernel.multiply(kernel.inverse(p), y) in moves.index:
                    return i
            return None
        nexp = len(states) * len(moves)
        if r - 1 in self._bwd_set and nexp <= EXPLICIT_LIMIT:
            target = self._bwd_set[r - 1]
            self._charge(nexp, f"join {r}")
            for i, p in enumerate(states):
                lens = kernel.product_lengths(p, moves.pack)
                for j in np.flatnonzero(lens <= self.cap):
                    if kernel.multiply(p, moves.words[j]) in target:
                        return i
            return None
        prev = self._bwd.get(r - 2)
        expand_first = nexp <= EXPLICIT_LIMIT and (prev is None or len(states) < len(prev))
        if not expand_first:
            H = self._bwd_hashes(r - 1)
            if H is not None:
                self._charge(nexp, f"join {r}")
                hits = kernel.hits_in(kernel.WordPack(states), moves.pack, self.cap, H)
                hits.sort()
                for i, j in hits:
                    q = kernel.multiply(states[i], moves.words[j])
                    if self._L(q) > self.cap:
                        continue
                    if self._first_reaching([q], r - 1) is not None:
                        return i
                return None
            if nexp > EXPLICIT_LIMIT:
                raise _Overflow(f"level {r} from {len(states)} states")
        self._charge(nexp, f"expand {r}")
        expanded = self._step(states)
        k = self._first_reaching([q for q, _ in expanded], r - 1)
        return None if k is None else expanded[k][1]

    # -- public ----------------------------------------------------------
    def search(self, y) -> AreaResult:
        P = self.P
        y = _as_codes(y, P)
        if P.model is not None and not P.model.is_identity(evaluate(P.model, y)):
            raise NotNullhomotopic(format_codes(y, self.A))
        self.work = 0
        self._prepare(y)
        moves = self.moves
        for n in range(0, self.budget.max_count + 1):
            try:
                found = self._exists(n)
            except _Overflow as exc:
                return self._fallback(y, n, str(exc))
            if found:
                expr = self._reconstruct(y, n)
                return AreaResult(expr, n, True, expr.weighted_cost(P), self.budget,
                                  {"work": self.work, "moves": len(moves)})
        raise BudgetExceeded(
            f"no expression with at most {self.budget.max_count} factors within the caps",
            {"lower_bound": self.budget.max_count + 1, "certified_lower_bound": True},
        )

    def _reconstruct(self, y, n):
        moves = self.moves
        p = ()
        chosen = []
        if n == 3 and self._F2 is not None and 1 in self._bwd:
            # first factor: least move m with m^-1 q a move for some meeting state q
            meets = self._meet3()
            index = moves.index
            first = min(
                j for j in self._fwd_idx
                if any(kernel.multiply(moves.inverses[j], q) in index for q in meets)
            )
            chosen.append(moves.factors[first])
            p = moves.words[first]
            n -= 1
        for k in range(n, 0, -1):
            cands = []
            idx = []
            for j, m in enumerate(moves.words):
                q = kernel.multiply(p, m)
                if k == 1 or self._L(q) <= self.cap:
                    cands.append(q)
                    idx.append(j)
            i = self._first_reaching(cands, k - 1)
            assert i is not None, "reconstruction lost the path"
            chosen.append(moves.factors[idx[i]])
            p = cands[i]
        assert p == y
        return AreaExpression(tuple(chosen), Word(self.A, y))

    def _fallback(self, y, level, stage):
        partial = {"lower_bound": level, "stage": stage, "work": self.work}
        try:
            res = self.weighted(y, certify=False)
        except BudgetExceeded as exc:
            partial.update(exc.partial)
            raise BudgetExceeded(f"area search budget exhausted at {stage}", partial) from None
        res.certified = False
        res.count = res.expression.count
        res.stats = partial
        return res

    # -- weighted --------------------------------------------------------
    def _weighted_moves(self):
        if self._wmoves is None:
            self._wmoves = _Moves(self.P, self.budget.max_conjugator_length, "cost")
        return self._wmoves

    def weighted(self, y, upper_bound=None, certify=True) -> AreaResult:
        """A* on weighted cost.  The heuristic is the letter count of p^-1 y:
        each factor costs at least its reduced length, so it never
        overestimates and is consistent.  Ties go to the lexicographically
        least factor serialization."""
        P = self.P
        A = self.A
        y = _as_codes(y, P)
        if P.model is not None and not P.model.is_identity(evaluate(P.model, y)):
            raise NotNullhomotopic(format_codes(y, A))
        moves = self._weighted_moves()
        costs = moves.costs
        cap = self.cap
        U = np.iinfo(np.int64).max // 4 if upper_bound is None else upper_bound
        limit = self.budget.max_states
        yinv = kernel.inverse(y)
        keys = [f.key() for f in moves.factors]

        start = ()
        heap = [(len(y), (), 0, start)]
        best = {start: (0, ())}
        closed = set()
        pushes = 0
        while heap:
            f, ser, g, p = heapq.heappop(heap)
            if p in closed or best[p] != (g, ser):
                continue
            if p == y:
                expr = AreaExpression(tuple(moves.factors[j] for _, j in ser), Word(A, y))
                return AreaResult(expr, expr.count, certify, g, self.budget,
                                  {"pushes": pushes, "expanded": len(closed)})
            closed.add(p)
            top = int(np.searchsorted(costs, U - g, side="right"))
            if top == 0:
                continue
            # letter counts of p*m and of (p*m)^-1 y = m^-1 p^-1 y, for all moves
            lens = kernel.product_lengths(p, moves.pack)[:top]
            hs = kernel.product_lengths(kernel.multiply(yinv, p), moves.pack)[:top]
            fs = g + costs[:top] + hs
            ok = (fs <= U) & ((lens <= cap) | (hs == 0))
            for j in np.flatnonzero(ok):
                q = kernel.multiply(p, moves.words[j])
                if q != y and A.codes_length(q) > cap:
                    continue
                if q in closed:
                    continue
                ng = g + int(costs[j])
                nser = ser + ((keys[j], int(j)),)
                old = best.get(q)
                if old is not None and old <= (ng, nser):
                    continue
                best[q] = (ng, nser)
                heapq.heappush(heap, (int(fs[j]), nser, ng, q))
                pushes += 1
                if pushes > limit:
                    raise BudgetExceeded("weighted area search exceeded max_states",
                                         {"pushes": pushes, "lower_bound_cost": f})
        raise BudgetExceeded("no expression within the caps",
                             {"exhausted": True, "upper_bound": upper_bound})


class _Overflow(Exception):
    pass


def area_search(P: Presentation, y, budget: SearchBudget | None = None, searcher=None) -> AreaResult:
    """Minimal number of conjugated relators whose product is y (within caps)."""
    searcher = searcher or AreaSearcher(P, budget)
    return searcher.search(y)


def weighted_area_search(P: Presentation, y, budget: SearchBudget | None = None,
                         upper_bound=None, searcher=None) -> AreaResult:
    """Minimal sum of L(r_i) + 2 L(x_i) over expressions for y (within caps).

    Without an explicit ``upper_bound`` the counting search runs first and the
    weighted cost of its expression bounds the A* frontier.
    """
    searcher = searcher or AreaSearcher(P, budget)
    if upper_bound is None:
        try:
            upper_bound = searcher.search(y).weighted_cost
        except BudgetExceeded:
            upper_bound = None
    return searcher.weighted(y, upper_bound)


@dataclass
class DehnSample:
    n: int
    value: int
    certified: bool
    witness: Word | None
    weighted: bool = False
    partial: bool = False
    words_checked: int = 0


def null_words(P: Presentation, n: int):
    """Reduced null words of weighted length <= n, in (length, shortlex) order."""
    if P.model is None:
        raise ValueError("null-word enumeration needs a model")
    return [w for w in words_up_to(P.alphabet, n) if P.model.is_identity(evaluate(P.model, w))]


def dehn_table(P: Presentation, max_n: int, budget: SearchBudget | None = None,
               weighted=False, searcher=None):
    """Samples f_P(n) (or f'_P(n)) for n = 0..max_n, sharing the searches.

    A word whose search overflows the budget makes every sample with n at
    least its length uncertified; the value still reports the best bound found.
    """
    searcher = searcher or AreaSearcher(P, budget)
    return aggregate_dehn(area_rows(P, null_words(P, max_n), weighted=weighted, searcher=searcher),
                          max_n, P, weighted)


def area_rows(P: Presentation, words, budget: SearchBudget | None = None, weighted=False, searcher=None):
    """(length, codes, value, certified) per null word, in input order."""
    searcher = searcher or AreaSearcher(P, budget)
    out = []
    for w in words:
        L = P.alphabet.codes_length(w)
        try:
            if weighted:
                res = weighted_area_search(P, w, searcher=searcher)
            else:
                res = searcher.search(w)
            val = res.weighted_cost if weighted else res.count
            out.append((L, w, val, res.certified))
        except BudgetExceeded as exc:
            lb = exc.partial.get("lower_bound", 0) if not weighted else 0
            out.append((L, w, lb, False))
    return out


def aggregate_dehn(per_word, max_n, P: Presentation, weighted=False):
    """Running maxima of per-word areas; ``per_word`` must be in (length, shortlex) order."""
    out = []
    for n in range(max_n + 1):
        best = (0, None)
        certified = True
        checked = 0
        for L, w, val, cert in per_word:
            if L > n:
                break
            checked += 1
            certified &= cert
            if val > best[0]:
                best = (val, w)
        witness = Word(P.alphabet, best[1]) if best[1] is not None else P.alphabet.identity()
        out.append(DehnSample(n, best[0], certified, witness, weighted, not certified, checked))
    return out


def dehn_sample(P: Presentation, n: int, budget: SearchBudget | None = None, weighted=False,
                searcher=None) -> DehnSample:
    """f_P(n): the largest area among null words of length <= n."""
    return dehn_table(P, n, budget, weighted, searcher)[-1]


@dataclass
class GerstenRow:
    n: int
    f: int
    f_prime: int
    bound: int
    holds: bool

    @property
    def slack(self):
        return self.bound - self.f_prime


def check_gersten_bound(samples, M: int):
    """Check f'(n) <= 2M f(n)^2 + (2n + M) f(n) for each (n, f, f') sample.

    Samples may be tuples or pairs of DehnSample objects; uncertified ones are
    rejected.
    """
    rows = []
    for s in samples:
        if isinstance(s[1], DehnSample):
            a, b = s[1], s[2]
            if not (a.certified and b.certified):
                raise UncertifiedSample(f"sample n={s[0]} is not certified")
            n, f, fp = s[0], a.value, b.value
        else:
            n, f, fp = s[:3]
            if len(s) > 3 and not s[3]:
                raise UncertifiedSample(f"sample n={n} is not certified")
        bound = 2 * M * f * f + (2 * n + M) * f
        rows.append(GerstenRow(n, f, fp, bound, fp <= bound))
    return rows


# -- presentation files and catalog ------------------------------------


def parse_presentation_text(text: str, name=None) -> Presentation:
    section = None
    gens = []
    rel_lines = []
    model_name = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("["):
            if not line.endswith("]"):
                raise ParseError("unterminated section header", lineno, 1)
            section = line[1:-1].strip().lower()
            if section not in ("generators", "relators", "model"):
                raise ParseError(f"unknown section [{section}]", lineno, 1)
            continue
        if section == "generators":
            parts = line.split()
            if len(parts) > 2:
                raise ParseError("expected `name weight`", lineno, raw.index(parts[2]) + 1)
            try:
                weight = int(parts[1]) if len(parts) == 2 else 1
            except ValueError:
                raise ParseError(f"bad weight {parts[1]!r}", lineno, raw.index(parts[1]) + 1) from None
            if weight < 1:
                raise ParseError("weights must be positive", lineno, raw.index(parts[1]) + 1)
            gens.append((parts[0], weight))
        elif section == "relators":
            rel_lines.append((lineno, raw))
        elif section == "model":
            model_name = line
        else:
            raise ParseError("content outside a section", lineno, 1)
    if not gens:
        raise ParseError("no generators", None)
    try:
        alphabet = Alphabet(tuple(g for g, _ in gens), tuple(w for _, w in gens))
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    relators = []
    for lineno, raw in rel_lines:
        try:
            codes = parse_codes(raw.split("#", 1)[0], alphabet, lineno)
        except UnknownSymbol as exc:
            raise ParseError(f"unknown symbol {exc.args[0]!r}", lineno) from None
        if not codes:
            raise EmptyRelator("relator reduces to the identity", lineno, 1)
        relators.append(Word(alphabet, codes))
    model = None
    if model_name is not None:
        try:
            model = catalog_model(model_name)
        except (UnknownName, ValueError):
            raise ParseError(f"unknown model {model_name!r}") from None
        if model.alphabet != alphabet:
            raise ParseError("model generators or weights differ from [generators]")
    return Presentation(alphabet, relators, model, name)


def parse_presentation(path) -> Presentation:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    import os

    return parse_presentation_text(text, os.path.splitext(os.path.basename(str(path)))[0])


def _comm(x, y):
    return f"{x} {y} {x}^-1 {y}^-1"


def catalog_presentation(name: str) -> Presentation:
    """z, z2, z3, free2 / free:<r>, cyclic:<m>, bs12, heisenberg."""
    key = name.strip().lower()
    model = catalog_model(key)
    A = model.alphabet
    if key in ("z", "z1") or key.startswith("free"):
        rels = []
    elif key in ("z2", "z3"):
        syms = A.symbols
        rels = [_comm(syms[i], syms[j]) for i in range(len(syms)) for j in range(i + 1, len(syms))]
    elif key.startswith("cyclic:"):
        rels = [f"t^{model.m}"]
    elif key in ("bs12", "bs(1,2)"):
        rels = ["t a t^-1 a^-2"]
    elif key == "heisenberg":
        c = "a b a^-1 b^-1"
        rels = [f"{c} a b a b^-1 a^-1 a^-1", f"{c} b b a b^-1 a^-1 b^-1"]
    else:
        raise UnknownName(name)
    return Presentation(A, [A.parse(r) for r in rels], model, key)


def commutator(x: Word, y: Word) -> Word:
    return x * y * ~x * ~y
