"""Augmented free simplicial groups with word lengths.

A tower is described by its nondegenerate generators ("bases").  A base of
dimension k carries k+1 face words in level k-1 (level -1 is the group model,
reached through the augmentation).  Level n is free on all pairs (b, theta)
with theta a monotone surjection [n] -> [dim b]; faces and degeneracies act on
theta, and a face that collapses a vertex pulls the stored face word of b back
along the remaining surjection.  With this encoding the identities between
faces and degeneracies are automatic, so a check of the identities is really
a check of the face data of the bases.

The presentation seed has bases S in dimension 0 and one base per relator in
dimension 1 with faces (1, relator).  Generators of type P, one for each
nontrivial kernel element g, are added lazily with faces
(s'(d_0 g), ..., s'(d_{m-1} g), g).
"""

from __future__ import annotations

import heapq
import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction

from . import kernel
from .dehn import AreaSearcher, Presentation, SearchBudget
from .errors import BudgetExceeded, IdentityViolation, MissingContraction, NotNullhomotopic
from .groups import cayley_ball, evaluate
from .linalg import RationalMatrix, rank_kernel
from .words import words_up_to

__all__ = [
    "Base",
    "SimplicialTower",
    "seed_from_presentation",
    "check_simplicial_identities",
    "moore_membership",
    "section_s1",
    "type_p_extend",
    "assemble_contraction",
    "higher_dehn_sample",
    "build_h1_cocomplex",
    "p_equivalence_report",
]


@dataclass
class Base:
    index: int
    dim: int
    name: str
    weight: int
    faces: tuple = ()  # words (code tuples) at level dim - 1; empty for dim 0
    element: object = None  # the kernel element g for a type-P generator


def _surjections(n, k):
    """Monotone surjections [n] -> [k] as tuples, lexicographic."""
    # choose the k positions j in 1..n where theta steps up
    for steps in itertools.combinations(range(1, n + 1), k):
        theta, v = [], 0
        for j in range(n + 1):
            if v < k and j == steps[v]:
                v += 1
            theta.append(v)
        yield tuple(theta)


class SimplicialTower:
    """Augmented free simplicial group over ``model`` (level -1)."""

    def __init__(self, model, name="tower"):
        self.model = model
        self.name = name
        self.bases: list[Base] = []
        self._codes: dict = {}  # level -> {key: code}
        self._keys: dict = {}  # level -> [key]
        self._typep: dict = {}  # (dim, element) -> base index
        self.presentation: Presentation | None = None
        self.searcher: AreaSearcher | None = None
        self._s1_cache: dict = {}

    # -- generators --------------------------------------------------

    def add_base(self, dim, name, weight, faces=(), element=None) -> Base:
        if weight < 1:
            raise ValueError("weights must be >= 1")
        if dim >= 1 and len(faces) != dim + 1:
            raise ValueError(f"a {dim}-dimensional generator needs {dim + 1} faces")
        b = Base(len(self.bases), dim, name, weight, tuple(tuple(f) for f in faces), element)
        self.bases.append(b)
        return b

    def code(self, n, key):
        table = self._codes.setdefault(n, {})
        c = table.get(key)
        if c is None:
            keys = self._keys.setdefault(n, [])
            keys.append(key)
            c = table[key] = len(keys)
        return c

    def key(self, n, code):
        return self._keys[n][abs(code) - 1]

    def generators(self, n, max_dim=None):
        """All generator keys of level n (bases of dimension <= n)."""
        out = []
        for b in self.bases:
            if b.dim <= n and (max_dim is None or b.dim <= max_dim):
                for theta in _surjections(n, b.dim):
                    out.append((b.index, theta))
        return out

    def generator_word(self, n, key, sign=1):
        return (sign * self.code(n, key),)

    def base_word(self, b: Base):
        """The base itself as a word of its own dimension."""
        return self.generator_word(b.dim, (b.index, tuple(range(b.dim + 1))))

    def weight(self, n, code):
        return self.bases[self.key(n, code)[0]].weight

    def length(self, n, word) -> int:
        return sum(self.weight(n, c) for c in word)

    def describe(self, n, key):
        b, theta = key
        base = self.bases[b]
        ops = [j for j in range(n) if theta[j] == theta[j + 1]]
        if not ops:
            return base.name
        # s_{i_1} ... s_{i_r} with i_1 > ... > i_r applied to the base
        return "".join(f"s{j}" for j in reversed(ops)) + f"({base.name})"

    def format(self, n, word):
        if n < 0:
            return self.model.format_element(word)
        if not word:
            return "1"
        return " ".join(self.describe(n, self.key(n, c)) + ("" if c > 0 else "^-1") for c in word)

    # -- simplicial operators ------------------------------------------

    def _pullback(self, word, src_level, phi):
        """Apply phi^*: level src_level -> level len(phi) - 1 for a monotone
        surjection phi: [m] -> [src_level]."""
        n = len(phi) - 1
        out = []
        for c in word:
            b, psi = self.key(src_level, c)
            new = (b, tuple(psi[phi[t]] for t in range(n + 1)))
            out.append(self.code(n, new) * (1 if c > 0 else -1))
        return kernel.free_reduce(tuple(out))

    def face_generator(self, n, i, key):
        b, theta = key
        rest = theta[:i] + theta[i + 1:]
        k = self.bases[b].dim
        if len(set(rest)) == k + 1:
            return (self.code(n - 1, (b, rest)),)
        v = theta[i]
        phi = tuple(t if t < v else t - 1 for t in rest)
        return self._pullback(self.bases[b].faces[v], k - 1, phi)

    def face(self, n, i, word):
        """d_i: level n -> level n-1; d_0 on level 0 is the augmentation."""
        if not 0 <= i <= n:
            raise ValueError(f"face index {i} out of range at level {n}")
        if n == 0:
            return self.augment(word)
        out = ()
        for c in word:
            img = self.face_generator(n, i, self.key(n, c))
            out = kernel.multiply(out, img if c > 0 else kernel.inverse(img))
        return out

    def augment(self, word):
        model = self.model
        g = model.identity
        for c in word:
            b = self.bases[self.key(0, c)[0]]
            x = model.letter_image(b.index + 1)
            g = model.mul(g, x if c > 0 else model.inv(x))
        return g

    def degeneracy(self, n, j, word):
        """s_j: level n -> level n+1."""
        if not 0 <= j <= n:
            raise ValueError(f"degeneracy index {j} out of range at level {n}")
        out = []
        for c in word:
            b, theta = self.key(n, c)
            out.append(self.code(n + 1, (b, theta[: j + 1] + theta[j:])) * (1 if c > 0 else -1))
        return tuple(out)

    def epsilon(self, n, word):
        """Composite augmentation Gamma_n -> G (any iterated face)."""
        while n >= 0:
            word = self.face(n, 0, word)
            n -= 1
        return word

    def iterate_s0(self, n, word, times):
        for k in range(times):
            word = self.degeneracy(n + k, 0, word)
        return word

    def is_trivial(self, n, word):
        return self.model.is_identity(word) if n < 0 else not word

    def level0_word(self, codes):
        """Codes of F(S) as a level-0 word (bases 0..|S|-1 are S in order)."""
        return tuple(self.code(0, (abs(c) - 1, (0,))) * (1 if c > 0 else -1) for c in codes)

    def free_codes(self, word):
        """Level-0 word back to F(S) codes."""
        return tuple((self.key(0, c)[0] + 1) * (1 if c > 0 else -1) for c in word)


def seed_from_presentation(P: Presentation, budget: SearchBudget | None = None, searcher=None) -> SimplicialTower:
    """Gamma_0 = F(S), Gamma_1 = F(s_0 S + W) with d_0 w = 1, d_1 w = the relator;
    higher levels are degenerate.  L_1(w) = L_0(relator)."""
    if P.model is None:
        raise ValueError("the seed needs a group model for the augmentation")
    T = SimplicialTower(P.model, name=P.name or "seed")
    A = P.alphabet
    for i, s in enumerate(A.symbols):
        T.add_base(0, s, A.weights[i])
    for i, r in enumerate(P.relators):
        T.add_base(1, f"w{i + 1}", r.length(), faces=((), T.level0_word(r.codes)))
    T.presentation = P
    T.budget = budget or SearchBudget()
    T.searcher = searcher
    return T


def _check(T, lhs, rhs, what, witness):
    if lhs != rhs:
        raise IdentityViolation(f"{what} fails on {witness}", witness)


def check_simplicial_identities(T: SimplicialTower, max_dim: int = 3) -> dict:
    """Verify every face/degeneracy identity on all generators of levels
    0..max_dim (augmentation included at the bottom).  Raises
    IdentityViolation with the offending generator."""
    checked = 0
    counts = {}
    for n in range(0, max_dim + 1):
        gens = T.generators(n)
        counts[n] = len(gens)
        for key in gens:
            x = T.generator_word(n, key)
            label = (n, T.describe(n, key))
            if n >= 1:
                for j in range(1, n + 1):
                    for i in range(j):
                        lhs = T.face(n - 1, i, T.face(n, j, x))
                        rhs = T.face(n - 1, j - 1, T.face(n, i, x))
                        _check(T, lhs, rhs, f"d{i} d{j} = d{j - 1} d{i}", label)
                        checked += 1
            if n + 1 <= max_dim:
                for j in range(n + 1):
                    y = T.degeneracy(n, j, x)
                    for i in range(n + 2):
                        lhs = T.face(n + 1, i, y)
                        if i < j:
                            rhs = T.degeneracy(n - 1, j - 1, T.face(n, i, x)) if n >= 1 else None
                            if rhs is None:
                                continue
                        elif i in (j, j + 1):
                            rhs = x
                        else:
                            rhs = T.degeneracy(n - 1, j, T.face(n, i - 1, x))
                        _check(T, lhs, rhs, f"d{i} s{j}", label)
                        checked += 1
            if n + 2 <= max_dim:
                for j in range(n + 1):
                    for i in range(j + 1):
                        lhs = T.degeneracy(n + 1, i, T.degeneracy(n, j, x))
                        rhs = T.degeneracy(n + 1, j + 1, T.degeneracy(n, i, x))
                        _check(T, lhs, rhs, f"s{i} s{j} = s{j + 1} s{i}", label)
                        checked += 1
    return {"ok": True, "checked": checked, "generators": counts, "max_dim": max_dim}


def moore_membership(T: SimplicialTower, n: int, k: int, word) -> bool:
    """True iff d_i(word) is trivial for 0 <= i <= k (at level 0, the
    augmentation)."""
    return all(T.is_trivial(n - 1, T.face(n, i, tuple(word))) for i in range(min(k, n) + 1))


# -- the section s'_1 ----------------------------------------------------


@dataclass
class SectionResult:
    element: tuple  # word at level 1
    text: str
    length: int  # L_1 of the reduced lift
    bound: int  # sum of L_1(w_i) + 2 L_0(x_i) for the expression used
    bound_ok: bool
    certified: bool
    expression: object = None


def _searcher(T):
    if T.presentation is None:
        raise MissingContraction("no presentation: s'_1 is unavailable")
    if T.searcher is None:
        T.searcher = AreaSearcher(T.presentation, getattr(T, "budget", None))
    return T.searcher


def _lift(T, expression):
    """prod s_0(x_i) w_i^(+-1) s_0(x_i)^-1 as a reduced level-1 word."""
    out = ()
    for f in expression.factors:
        x = T.degeneracy(0, 0, T.level0_word(f.conjugator.codes))
        w = T.generator_word(1, (len(T.presentation.alphabet) + f.relator, (0, 1)), f.sign)
        out = kernel.multiply(out, kernel.multiply(kernel.multiply(x, w), kernel.inverse(x)))
    return out


def section_s1(P, y, budget: SearchBudget | None = None, tower: SimplicialTower | None = None) -> SectionResult:
    """Lift a null word y to Gamma_1^0 through an optimal weighted area expression.

    ``P`` may be a Presentation or a seed tower.  The result satisfies
    d_1(result) = y and d_0(result) = 1 (replayed exactly).
    """
    if isinstance(P, SimplicialTower):
        tower, P = P, P.presentation
    if tower is None:
        tower = seed_from_presentation(P, budget)
    codes = y.codes if hasattr(y, "codes") else kernel.free_reduce(tuple(y))
    if not P.model.is_identity(evaluate(P.model, codes)):
        raise NotNullhomotopic(f"{P.alphabet.word(codes)} is not null in {P.model.name}")
    cached = tower._s1_cache.get(codes)
    if cached is not None:
        return cached
    searcher = _searcher(tower)
    if not codes:
        res = SectionResult((), "1", 0, 0, True, True, None)
    else:
        from .dehn import weighted_area_search

        area = weighted_area_search(P, codes, searcher=searcher)
        elem = _lift(tower, area.expression)
        if tower.free_codes(tower.face(1, 1, elem)) != codes or tower.face(1, 0, elem):
            raise AssertionError("section replay failed")
        L = tower.length(1, elem)
        res = SectionResult(elem, tower.format(1, elem), L, area.weighted_cost, L <= area.weighted_cost,
                            area.certified, area.expression)
    tower._s1_cache[codes] = res
    return res


def contracting_s(T: SimplicialTower, m: int, g):
    """s'_m on the augmentation kernel of level m-1.

    s'_0 is trivial, s'_1 lifts through an area expression, and s'_m for
    m >= 2 is the type-P generator [g] (materialized on demand)."""
    g = tuple(g)
    if m == 0:
        return ()
    if not T.is_trivial(-1, T.epsilon(m - 1, g)):
        raise ValueError("element is not in the augmentation kernel")
    if not g:
        return ()
    if m == 1:
        return section_s1(T, T.free_codes(g)).element
    b = _type_p_base(T, m, g)
    return T.base_word(b)


def _type_p_base(T, m, g):
    idx = T._typep.get((m, g))
    if idx is not None:
        return T.bases[idx]
    faces = [contracting_s(T, m - 1, T.face(m - 1, j, g)) for j in range(m)]
    faces.append(g)
    b = T.add_base(m, f"[{T.format(m - 1, g)}]", T.length(m - 1, g), faces, element=g)
    T._typep[(m, g)] = b.index
    return b


def type_p_extend(T: SimplicialTower, m: int, needed) -> list:
    """Materialize [g] in dimension m for each nontrivial g in the augmentation
    kernel of level m-1.  Faces: d_j [g] = s'_{m-1}(d_j g) for j < m and
    d_m [g] = g; weight L_{m-1}(g).  Returns the new bases."""
    if m < 1:
        raise ValueError("type P extension starts in dimension 1")
    if m >= 2 and T.presentation is None:
        raise MissingContraction(f"s'_{m - 1} unavailable")
    out = []
    for g in needed:
        g = kernel.free_reduce(tuple(g))
        if not g:
            continue
        if not T.is_trivial(-1, T.epsilon(m - 1, g)):
            raise ValueError(f"{T.format(m - 1, g)} is not in the augmentation kernel")
        out.append(_type_p_base(T, m, g))
    return out


def kernel_samples(T: SimplicialTower, n: int, count: int, max_letters: int = 4, seed: int = 0, kernel_only=True,
                   max_face_length: int = 8):
    """Random reduced words at level n (augmentation kernel when ``kernel_only``),
    nontrivial, with all faces of length <= max_face_length at level 0."""
    rng = random.Random(seed)
    gens = [k for k in T.generators(n) if T.bases[k[0]].dim <= max(n, 1) and T.bases[k[0]].element is None]
    out = []
    tries = 0
    while len(out) < count:
        tries += 1
        if tries > 200 * count:
            raise BudgetExceeded("could not draw enough samples", {"found": len(out)})
        size = rng.randint(1, max_letters)
        word = kernel.free_reduce(tuple(T.code(n, rng.choice(gens)) * rng.choice((1, -1)) for _ in range(size)))
        if not word:
            continue
        if kernel_only and not T.is_trivial(-1, T.epsilon(n, word)):
            continue
        if n >= 1 and any(len(_to_level0(T, n, word, i)) > max_face_length for i in range(n + 1)):
            continue
        out.append(word)
    return out


def _to_level0(T, n, word, i):
    w = T.face(n, i, word)
    for k in range(n - 1, 0, -1):
        w = T.face(k, k, w)
    return w


# -- the assembled contraction ----------------------------------------


class AssembledContraction:
    """s~_0 = s(0) and s~_{n+1}(g) = s'_{n+1}(g s(n)(eps g)^-1) s(n+1)(eps g)."""

    def __init__(self, T: SimplicialTower, radius: int = 16):
        self.T = T
        self.radius = radius

    def s0(self, gbar):
        """s(0): the shortlex-least geodesic preimage, as a level-0 word."""
        T = self.T
        ball = cayley_ball(T.model, self.radius)
        if gbar not in ball:
            raise MissingContraction(f"{T.model.format_element(gbar)} lies outside the radius-{self.radius} ball")
        return T.level0_word(ball.witness(gbar).codes)

    def s_level(self, n, gbar):
        return self.T.iterate_s0(0, self.s0(gbar), n)

    def __call__(self, n, g):
        """s~_{n+1}(g) for g at level n; n = -1 gives s(0)."""
        T = self.T
        if n < 0:
            return self.s0(g)
        g = tuple(g)
        gbar = T.epsilon(n, g)
        k = kernel.multiply(g, kernel.inverse(self.s_level(n, gbar)))
        return kernel.multiply(contracting_s(T, n + 1, k), self.s_level(n + 1, gbar))

    def verify(self, n, samples) -> dict:
        """d_{n+1} s~_{n+1} = id and d_j s~_{n+1} = s~_n d_j (j <= n) on samples."""
        T = self.T
        checked = 0
        for g in samples:
            g = tuple(g)
            s = self(n, g)
            if T.face(n + 1, n + 1, s) != g:
                raise IdentityViolation(f"d_{n + 1} s~ != id at {T.format(n, g)}", g)
            for j in range(n + 1):
                if T.face(n + 1, j, s) != self(n - 1, T.face(n, j, g)):
                    raise IdentityViolation(f"d_{j} s~ != s~ d_{j} at {T.format(n, g)}", g)
            checked += 1
        return {"ok": True, "n": n, "checked": checked}


def assemble_contraction(T: SimplicialTower, radius: int = 16) -> AssembledContraction:
    if T.presentation is None:
        raise MissingContraction("no presentation: s'_1 is unavailable")
    return AssembledContraction(T, radius)


# -- higher Dehn samples ------------------------------------------------


@dataclass
class HigherDehnResult:
    n: int
    N: int
    value: int
    certified: bool
    witness: tuple | None
    rows: list = field(default_factory=list)
    budget: dict = field(default_factory=dict)


def _min_lift0(T, x, budget, upper):
    """min L_1(y) over y in Gamma_1^0 with d_1 y = x (x a null word of F(S)).

    Such y are u_0 w_1 u_1 ... w_k u_k with u_0 ... u_k = 1, so L_1(y) is the
    length of a closed walk p in F(S) plus the inserted relators, and the
    product of p w_i p^-1 along the walk must equal x.  Uniform cost search
    on (p, q) with the admissible heuristic L(p).  The caps bound p and q as
    in module dehn; the result is exact within them.
    """
    P = T.presentation
    A = P.alphabet
    gens = A.generator_codes()
    rels = []
    for r in P.relators:
        rels.append((r.codes, r.length()))
        rels.append((kernel.inverse(r.codes), r.length()))
    conj_cap = budget.max_conjugator_length
    inter_cap = budget.max_intermediate_length
    start = ((), ())
    heap = [(0, 0, (), ())]
    best = {start: 0}
    pops = 0
    while heap:
        f, g, p, q = heapq.heappop(heap)
        if best.get((p, q), None) != g:
            continue
        if not p and q == x:
            return g, True
        pops += 1
        if pops > budget.max_states:
            raise BudgetExceeded("higher Dehn search exceeded max_states", {"upper_bound": upper})
        for c in gens:
            if p and p[-1] == -c:
                np_ = p[:-1]
            else:
                np_ = p + (c,)
            if A.codes_length(np_) > conj_cap:
                continue
            ng = g + A.code_weight(c)
            nf = ng + A.codes_length(np_)
            if upper is not None and nf > upper:
                continue
            key = (np_, q)
            if ng < best.get(key, ng + 1):
                best[key] = ng
                heapq.heappush(heap, (nf, ng, np_, q))
        pinv = kernel.inverse(p)
        for r, cost in rels:
            nq = kernel.multiply(q, kernel.multiply(kernel.multiply(p, r), pinv))
            if nq != x and A.codes_length(nq) > inter_cap:
                continue
            ng = g + cost
            nf = ng + A.codes_length(p)
            if upper is not None and nf > upper:
                continue
            key = (p, nq)
            if ng < best.get(key, ng + 1):
                best[key] = ng
                heapq.heappush(heap, (nf, ng, p, nq))
    return None, True


def _min_lift1(T, x, budget, cap):
    """min L_2(y) over y in Gamma_2^1 with d_2 y = x, by enumeration of level-2
    words of weight <= cap."""
    gens = T.generators(2)
    codes = []
    for key in gens:
        c = T.code(2, key)
        codes.extend((-c, c))
    weights = {c: T.weight(2, c) for c in codes}
    layer = [((), 0)]
    states = 0
    best = None
    while layer:
        nxt = []
        for w, L in layer:
            if best is not None and L >= best:
                continue
            if T.face(2, 2, w) == x and not T.face(2, 0, w) and not T.face(2, 1, w):
                best = L
                continue
            for c in codes:
                if w and w[-1] == -c:
                    continue
                nl = L + weights[c]
                if nl <= cap:
                    nxt.append((w + (c,), nl))
                    states += 1
                    if states > budget.max_states:
                        raise BudgetExceeded("higher Dehn search exceeded max_states", {})
        layer = nxt
    return best


def higher_dehn_sample(T: SimplicialTower, n: int, N: int, budget: SearchBudget | None = None) -> HigherDehnResult:
    """max over x in Gamma^n_n with L_n(x) <= N of min{L_{n+1}(y) : y in
    Gamma^n_{n+1}, d_{n+1} y = x}; n in {0, 1}."""
    budget = budget or getattr(T, "budget", None) or SearchBudget()
    if n not in (0, 1):
        raise BudgetExceeded(f"higher Dehn sampling is implemented for n <= 1, not {n}", {})
    rows = []
    certified = True
    best = (0, None)
    if n == 0:
        P = T.presentation
        from .dehn import null_words

        for w in null_words(P, N):
            if not w:
                rows.append({"x": "1", "length": 0, "lift": 0, "bound": 0, "certified": True})
                continue
            sec = section_s1(T, w)
            val, exact = _min_lift0(T, w, budget, sec.length)
            if val is None:
                val, exact = sec.length, False
            exact = exact and sec.certified
            certified &= exact
            rows.append({"x": P.alphabet.word(w), "length": P.alphabet.codes_length(w), "lift": val,
                         "bound": sec.bound, "certified": exact})
            if val > best[0]:
                best = (val, w)
    else:
        level1 = [k for k in T.generators(1)]
        alphabet_codes = []
        for key in level1:
            c = T.code(1, key)
            alphabet_codes.extend((-c, c))
        for x in _level_words(T, 1, alphabet_codes, N, budget):
            if T.face(1, 0, x) or T.face(1, 1, x):
                continue
            if not x:
                rows.append({"x": "1", "length": 0, "lift": 0, "certified": True})
                continue
            cap = budget.max_intermediate_length
            val = _min_lift1(T, x, budget, cap)
            exact = val is not None
            certified &= exact
            rows.append({"x": T.format(1, x), "length": T.length(1, x), "lift": val, "certified": exact})
            if val is not None and val > best[0]:
                best = (val, x)
    return HigherDehnResult(n, N, best[0], certified, best[1], rows, budget.as_dict())


def _level_words(T, n, codes, N, budget):
    layer = [((), 0)]
    out = [()]
    while layer:
        nxt = []
        for w, L in layer:
            for c in codes:
                if w and w[-1] == -c:
                    continue
                nl = L + T.weight(n, c)
                if nl <= N:
                    nxt.append((w + (c,), nl))
        if len(out) + len(nxt) > budget.max_states:
            raise BudgetExceeded("enumeration exceeded max_states", {})
        out.extend(w for w, _ in nxt)
        layer = nxt
    return out


# -- the low-degree cocomplex ------------------------------------------


def _abelian(T, n, word, size):
    """Exponent sums of a level-n word over the level-n generator list."""
    v = [0] * size
    for c in word:
        v[abs(c) - 1] += 1 if c > 0 else -1
    return v


def build_h1_cocomplex(T: SimplicialTower) -> dict:
    """delta^1: Q^{X_0} -> Q^{X_1} and delta^2: Q^{X_1} -> Q^{X_2} with
    (delta phi)(x) = sum_i (-1)^i phi_ab(d_i x); h1 = dim ker delta^1."""
    X = [T.generators(n, max_dim=1) for n in range(3)]
    codes = [[T.code(n, k) for k in X[n]] for n in range(3)]
    mats = []
    for n in (1, 2):
        size = len(T._keys[n - 1])
        col = {c: j for j, c in enumerate(codes[n - 1])}
        rows = []
        for c in codes[n]:
            row = [Fraction(0)] * len(X[n - 1])
            for i in range(n + 1):
                ab = _abelian(T, n - 1, T.face(n, i, (c,)), size)
                for code, e in enumerate(ab, 1):
                    if e:
                        if code not in col:
                            raise ValueError("face leaves the finite generating set")
                        row[col[code]] += (-1) ** i * e
            rows.append(row)
        mats.append(RationalMatrix(rows, len(X[n - 1])))
    d1, d2 = mats
    r1, ker1 = rank_kernel(d1)
    square = d2 @ d1
    return {
        "X0": [T.describe(0, k) for k in X[0]],
        "X1": [T.describe(1, k) for k in X[1]],
        "X2": [T.describe(2, k) for k in X[2]],
        "delta1": d1,
        "delta2": d2,
        "delta_squared_zero": square.is_zero(),
        "h1": len(X[0]) - r1,
    }


# -- p-equivalence -------------------------------------------------------


def _direction(f1, f2, domain, cap, growth=Fraction(3, 2)):
    rows = []
    half = (len(domain) + 1) // 2
    for k in range(cap + 1):
        ratios = []
        for x in domain:
            base = max(Fraction(f2[x]), 1) ** k
            ratios.append(Fraction(f1[x]) / base)
        C = max(ratios)
        # the majorant fails when the ratio at the end of the domain outgrows
        # the ratio at its midpoint by more than ``growth``
        growing = ratios[-1] > growth * ratios[half - 1]
        witness = domain[-1] if growing else None
        rows.append({"degree": k, "coefficient": C, "holds": not growing, "witness": witness})
    best = next((r for r in rows if r["holds"]), None)
    return {"degree": best["degree"] if best else None,
            "coefficient": best["coefficient"] if best else None, "table": rows}


def p_equivalence_report(f1: dict, f2: dict, degree_cap: int = 6) -> dict:
    """Least degree k (and coefficient C) with f1 <= C max(f2, 1)^k on the
    common sample, in both directions.  Heuristic evidence only: a finite
    sample cannot decide p-equivalence."""
    domain = sorted(set(f1) & set(f2))
    if not domain:
        raise ValueError("no common sample points")
    fwd = _direction(f1, f2, domain, degree_cap)
    bwd = _direction(f2, f1, domain, degree_cap)
    return {"f1_le_p_f2": fwd, "f2_le_p_f1": bwd, "equivalent": fwd["degree"] is not None and bwd["degree"] is not None,
            "domain": domain, "heuristic": True}
