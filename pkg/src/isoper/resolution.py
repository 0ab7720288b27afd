"""Finite free resolutions over rational group rings.

Module elements are row vectors and differentials act on the right:
d(x) = x . D_n where D_n has one row per basis element of S_n and one column
per basis element of S_{n-1}.  Cohomology with trivial rational coefficients
reduces, through the augmentation, to ranks of rational matrices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .errors import ContractionUnavailable, NotAComplex, UnknownName
from .groups import Cyclic, Free, FreeAbelian, GroupModel, catalog_model
from .linalg import RationalMatrix, rank, rank_kernel
from .psmod import ModuleElement, basis_element, suggest_growth
from .words import Word

__all__ = [
    "GroupRingElement",
    "GroupRingMatrix",
    "FiniteFreeResolution",
    "RationalMatrix",
    "rank_kernel",
    "augment",
    "cohomology_dims",
    "builtin_resolution",
    "free_resolution_section",
    "verify_section_bound",
    "isoperimetric_sample",
]


class GroupRingElement:
    """Sparse element of Q[G]: normal form -> nonzero Fraction."""

    __slots__ = ("model", "terms")

    def __init__(self, model: GroupModel, terms=None):
        self.model = model
        out = {}
        for g, c in (terms.items() if isinstance(terms, dict) else (terms or ())):
            c = Fraction(c)
            if c:
                v = out.get(g, 0) + c
                if v:
                    out[g] = v
                else:
                    out.pop(g, None)
        self.terms = out

    @classmethod
    def group(cls, model, g, coeff=1):
        return cls(model, {g: coeff})

    @classmethod
    def scalar(cls, model, q):
        return cls(model, {model.identity: q})

    @classmethod
    def zero(cls, model):
        return cls(model)

    def _new(self, terms):
        e = GroupRingElement(self.model)
        e.terms = terms
        return e

    def __add__(self, other):
        out = dict(self.terms)
        for g, c in other.terms.items():
            v = out.get(g, 0) + c
            if v:
                out[g] = v
            else:
                out.pop(g, None)
        return self._new(out)

    def __neg__(self):
        return self._new({g: -c for g, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, GroupRingElement):
            q = Fraction(other)
            return self._new({g: c * q for g, c in self.terms.items()} if q else {})
        mul = self.model.mul
        out = {}
        for g, c in self.terms.items():
            for h, d in other.terms.items():
                k = mul(g, h)
                v = out.get(k, 0) + c * d
                if v:
                    out[k] = v
                else:
                    out.pop(k, None)
        return self._new(out)

    def __rmul__(self, q):
        return self * q

    def __eq__(self, other):
        if isinstance(other, GroupRingElement):
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def augmentation(self) -> Fraction:
        return sum(self.terms.values(), Fraction(0))

    def __repr__(self):
        if not self.terms:
            return "0"
        fmt = self.model.format_element
        return " + ".join(f"{c}*{fmt(g)}" for g, c in sorted(self.terms.items(), key=lambda t: repr(t[0])))


class GroupRingMatrix:
    """Rows indexed by S_n, columns by S_{n-1}."""

    def __init__(self, model, rows):
        self.model = model
        self.rows = [[e if isinstance(e, GroupRingElement) else GroupRingElement.scalar(model, e) for e in r]
                     for r in rows]
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0
        if any(len(r) != self.ncols for r in self.rows):
            raise ValueError("ragged matrix")

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __matmul__(self, other):
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        zero = GroupRingElement.zero(self.model)
        out = []
        for r in self.rows:
            row = []
            for j in range(other.ncols):
                acc = zero
                for k in range(self.ncols):
                    if r[k] and other.rows[k][j]:
                        acc = acc + r[k] * other.rows[k][j]
                row.append(acc)
            out.append(row)
        return GroupRingMatrix(self.model, out) if out else _empty(self.model, 0, other.ncols)

    def is_zero(self):
        return all(not e for r in self.rows for e in r)


def _empty(model, nrows, ncols):
    m = GroupRingMatrix(model, [])
    m.nrows, m.ncols = nrows, ncols
    return m


def augment(M: GroupRingMatrix) -> RationalMatrix:
    """Entry-wise augmentation sum(l_g g) -> sum(l_g)."""
    return RationalMatrix([[e.augmentation() for e in r] for r in M.rows], M.ncols)


# A contraction degree n maps the basis element g*e (e in S_n) to a row
# vector over S_{n+1}; degree -1 maps the scalar 1 to a vector over S_0.
Contraction = Callable[[object, int], list]


@dataclass
class FiniteFreeResolution:
    """Free resolution of Q over Q[G], possibly truncated.

    ``levels[n]`` names the basis S_n.  ``differentials[n-1]`` is D_n for
    n = 1..top.  ``complete`` says that S_{top+1} = 0, so the top degree is
    exact data; a truncated resolution only determines cohomology below top.
    """

    name: str
    model: GroupModel
    levels: list
    differentials: list
    complete: bool = True
    contraction: dict | None = None
    weights: list | None = None
    notes: dict = field(default_factory=dict)

    @property
    def top(self):
        return len(self.levels) - 1

    def weight(self, n, i):
        if self.weights is None:
            return 1
        return self.weights[n][i]

    def check(self):
        """Raise NotAComplex unless eps D_1 = 0 and D_n D_{n-1} = 0."""
        if self.differentials:
            for i, e in enumerate(self.differentials[0].rows):
                if e[0].augmentation() != 0:
                    raise NotAComplex(f"{self.name}: augmentation of d1({self.levels[1][i]}) is nonzero")
        for n in range(2, self.top + 1):
            prod = self.differentials[n - 1] @ self.differentials[n - 2]
            if not prod.is_zero():
                raise NotAComplex(f"{self.name}: d{n-1} d{n} != 0")
        return True

    def d(self, n) -> GroupRingMatrix:
        return self.differentials[n - 1]

    def apply_d(self, n, vec):
        """Row vector over S_n (list of GroupRingElement) -> row vector over S_{n-1}."""
        D = self.d(n)
        out = [GroupRingElement.zero(self.model) for _ in range(D.ncols)]
        for i, x in enumerate(vec):
            if x:
                for j in range(D.ncols):
                    if D.rows[i][j]:
                        out[j] = out[j] + x * D.rows[i][j]
        return out

    def apply_s(self, n, vec):
        """Contraction S_n -> S_{n+1}, extended Q-linearly over group elements."""
        if self.contraction is None:
            raise ContractionUnavailable(self.name)
        size = len(self.levels[n + 1]) if n + 1 <= self.top else 0
        out = [GroupRingElement.zero(self.model) for _ in range(size)]
        for i, x in enumerate(vec):
            for g, c in x.terms.items():
                img = self.contraction[n](g, i)
                for j, y in enumerate(img):
                    if y:
                        out[j] = out[j] + y * c
        return out

    def norm(self, n, vec, L) -> Fraction:
        """|sum l g s| = sum |l| (1 + L(g) + w(s))."""
        return sum(
            (abs(c) * (1 + L(g) + self.weight(n, i)) for i, x in enumerate(vec) for g, c in x.terms.items()),
            Fraction(0),
        )


def _check_dims(R):
    for n in range(1, R.top + 1):
        if R.d(n).shape != (len(R.levels[n]), len(R.levels[n - 1])):
            raise NotAComplex(f"{R.name}: D{n} has shape {R.d(n).shape}")


def cohomology_dims(R: FiniteFreeResolution) -> list:
    """dim H^n(G; Q) from the augmented transposed differentials.

    All degrees 0..top for a complete resolution; 0..top-1 when truncated.
    """
    _check_dims(R)
    R.check()
    ranks = [rank(augment(R.d(n))) for n in range(1, R.top + 1)]
    ranks = [0] + ranks + [0]  # rank of eps D_0 := 0 and D_{top+1} := 0
    last = R.top if R.complete else R.top - 1
    dims = []
    for n in range(last + 1):
        dims.append(len(R.levels[n]) - ranks[n + 1] - ranks[n])
    return dims


# builtin resolutions

def _e(model, g, c=1):
    return GroupRingElement.group(model, g, c)


def _one(model):
    return GroupRingElement.scalar(model, 1)


def koszul_resolution(model: FreeAbelian) -> FiniteFreeResolution:
    """Koszul complex of Z^r: S_k = k-subsets of the generators,
    d(e_I) = sum_p (-1)^p (x_{i_p} - 1) e_{I - i_p}."""
    import itertools

    r = model.rank
    gens = [model.letter_image(i + 1) for i in range(r)]
    levels = [list(itertools.combinations(range(r), k)) for k in range(r + 1)]
    diffs = []
    for k in range(1, r + 1):
        col = {I: j for j, I in enumerate(levels[k - 1])}
        rows = []
        for I in levels[k]:
            row = [GroupRingElement.zero(model) for _ in levels[k - 1]]
            for p, i in enumerate(I):
                rest = I[:p] + I[p + 1:]
                row[col[rest]] = (_e(model, gens[i]) - _one(model)) * (-1) ** p
            rows.append(row)
        diffs.append(GroupRingMatrix(model, rows))
    names = [["e" + "".join(model.alphabet.symbols[i] for i in I) for I in lv] for lv in levels]
    res = FiniteFreeResolution(f"koszul:{model.name}", model, names, diffs, complete=True)
    if r == 1:
        res.contraction = _z_contraction(model)
        res.name = "z"
    elif r == 2:
        res.contraction = _z2_contraction(model)
        res.name = "z2"
    else:
        res.name = model.name
    return res


def _geometric(model, gen, n):
    """s_Z(x^n): (1 + x + ... + x^(n-1)) for n > 0, -(x^-1 + ... + x^n) for n < 0."""
    terms = {}
    if n > 0:
        for k in range(n):
            terms[tuple(k * v for v in gen)] = 1
    else:
        for k in range(n, 0):
            terms[tuple(k * v for v in gen)] = -1
    return GroupRingElement(model, terms)


def _z_contraction(model):
    gen = model.letter_image(1)

    def s_minus(g, i):
        return [_one(model)]

    def s0(g, i):
        return [_geometric(model, gen, g[0])]

    def s1(g, i):
        return []

    return {-1: s_minus, 0: s0, 1: s1}


def _z2_contraction(model):
    a, b = model.letter_image(1), model.letter_image(2)
    zero = GroupRingElement.zero(model)

    def s_minus(g, i):
        return [_one(model)]

    def s0(g, i):
        # g = a^i b^j:  s_Z(a^i) e_a + a^i s_Z(b^j) e_b
        x, y = g
        ai = _e(model, (x, 0))
        return [_geometric(model, a, x), ai * _geometric(model, b, y)]

    def s1(g, i):
        x, y = g
        if i == 1:  # e_b
            return [zero]
        return [-(_e(model, (x, 0)) * _geometric(model, b, y))]

    def s2(g, i):
        return []

    return {-1: s_minus, 0: s0, 1: s1, 2: s2}


def cyclic_resolution(model: Cyclic, top: int = 3) -> FiniteFreeResolution:
    """Periodic resolution with d_odd = (t - 1), d_even = N, truncated at ``top``."""
    m = model.m
    t = _e(model, model.letter_image(1))
    N = GroupRingElement(model, {k % m: 1 for k in range(m)})
    diffs = []
    for n in range(1, top + 1):
        diffs.append(GroupRingMatrix(model, [[t - _one(model) if n % 2 else N]]))
    levels = [[f"e{n}"] for n in range(top + 1)]
    return FiniteFreeResolution(model.name, model, levels, diffs, complete=False)


def free_resolution(model: Free) -> FiniteFreeResolution:
    """The two-term complex Q[F][S] -> Q[F][1] with [x] -> (x - 1)."""
    r = model.rank
    rows = [[_e(model, (i + 1,)) - _one(model)] for i in range(r)]
    res = FiniteFreeResolution(
        model.name, model, [["1"], [f"[{s}]" for s in model.alphabet.symbols]],
        [GroupRingMatrix(model, rows)], complete=True,
        weights=[[1], list(model.alphabet.weights)],
    )

    def s_minus(g, i):
        return [_one(model)]

    def s0(g, i):
        return _section_vector(model, g)

    def s1(g, i):
        return []

    res.contraction = {-1: s_minus, 0: s0, 1: s1}
    return res


def builtin_resolution(name: str, top: int = 3) -> FiniteFreeResolution:
    """Catalog: z, z2, z3 (Koszul, any zr), cyclic:m (truncated at ``top``), free:r."""
    try:
        model = catalog_model(name)
    except UnknownName:
        raise UnknownName(name) from None
    if isinstance(model, FreeAbelian):
        res = koszul_resolution(model)
    elif isinstance(model, Cyclic):
        res = cyclic_resolution(model, top)
    elif isinstance(model, Free):
        res = free_resolution(model)
    else:
        raise UnknownName(name)
    res.check()
    return res


# the free group section

def _psi_terms(model: Free, prefix, code):
    # psi(x) = [x] for x in S, -x [x^-1] for x^-1 in S; returns (element, index, coeff)
    if code > 0:
        return prefix, code - 1, 1
    return model.mul(prefix, (code,)), -code - 1, -1


def _section_vector(model: Free, g):
    out = [GroupRingElement.zero(model) for _ in range(model.rank)]
    prefix = ()
    for c in g:
        h, i, sign = _psi_terms(model, prefix, c)
        out[i] = out[i] + _e(model, h, sign)
        prefix = prefix + (c,)
    return out


def free_resolution_section(model: Free, g) -> ModuleElement:
    """s_0(g[1]) = sum_j x_1 ... x_{j-1} psi(x_j), as a weighted module element
    over the basis h[x] with weight L(h) + w(x)."""
    codes = g.codes if isinstance(g, Word) else tuple(g)
    alphabet = model.alphabet
    out = ModuleElement()
    prefix = ()
    for c in codes:
        h, i, sign = _psi_terms(model, prefix, c)
        b = basis_element(h, alphabet.symbols[i], alphabet.codes_length(h), alphabet.weights[i],
                          order=alphabet.shortlex_key(h) + (i,))
        out = out + ModuleElement.basis(b, sign)
        prefix = prefix + (c,)
    return out


def eta(model: Free, m: ModuleElement) -> GroupRingElement:
    """eta(h[x]) = h(x - 1), extended linearly."""
    out = GroupRingElement.zero(model)
    for b, c in m.terms.items():
        x = (model.alphabet.code((b.s, 1)),)
        out = out + (_e(model, model.mul(b.g, x)) - _e(model, b.g)) * c
    return out


@dataclass
class SectionBoundReport:
    radius: int
    checked: int
    ok: bool
    identity_ok: bool
    worst: tuple | None  # (g, |s0(g)|, bound)
    witness: object = None


def verify_section_bound(model: Free, R: int) -> SectionBoundReport:
    """Check |s_0(g)| <= n (1 + 2L(g)) <= (1 + 2L(g))^2 and eta(s_0(g)) = (g - 1)[1]
    for every reduced g with L(g) <= R."""
    from .psmod import seminorm
    from .words import words_up_to

    alphabet = model.alphabet
    checked = 0
    worst = None
    for codes in words_up_to(alphabet, R):
        checked += 1
        L = alphabet.codes_length(codes)
        n = len(codes)
        s = free_resolution_section(model, codes)
        v = seminorm(s)
        mid = n * (1 + 2 * L)
        if not (v <= mid <= (1 + 2 * L) ** 2):
            return SectionBoundReport(R, checked, False, True, (codes, v, mid), codes)
        if eta(model, s) != _e(model, codes) - _one(model):
            return SectionBoundReport(R, checked, True, False, None, codes)
        ratio = Fraction(v, (1 + 2 * L) ** 2)
        if worst is None or ratio > worst[1] / worst[2]:
            worst = (codes, v, (1 + 2 * L) ** 2)
    return SectionBoundReport(R, checked, True, True, worst)


# isoperimetric sampling

def _basis_samples(R: FiniteFreeResolution, n, radius):
    from .groups import cayley_ball

    ball = cayley_ball(R.model, radius)
    for g in ball.order:
        for i in range(len(R.levels[n])):
            yield g, i, ball.length(g)


def observed_degree(table) -> int | None:
    """Rounded log-log slope of the max |s(a)| between the two largest weights."""
    best = {}
    for w, v in table:
        if v > best.get(w, -1):
            best[w] = v
    ws = sorted(w for w in best if best[w] > 0)
    if len(ws) < 2:
        return 0 if ws else None
    w1, w2 = ws[-2], ws[-1]
    slope = math.log(best[w2] / best[w1]) / math.log((1 + w2) / (1 + w1))
    return max(0, round(slope))


def isoperimetric_sample(R: FiniteFreeResolution, radius: int, degrees=None) -> dict:
    """Exact (|a|, |s(a)|) for basis elements a = g e, e in S_n, L(g) <= radius.

    Returns {n: {"pairs": [...], "observed_degree": k, "growth": table}}; the
    degree label is heuristic.  Raises ContractionUnavailable without a
    contraction.
    """
    if R.contraction is None:
        raise ContractionUnavailable(f"{R.name} has no contraction")
    L = lambda g: R.model.exact_length(g)  # noqa: E731
    if degrees is None:
        degrees = range(0, R.top)
    out = {}
    for n in degrees:
        pairs = []
        for g, i, lg in _basis_samples(R, n, radius):
            vec = [GroupRingElement.zero(R.model) for _ in R.levels[n]]
            vec[i] = _e(R.model, g)
            a = R.norm(n, vec, L)
            s = R.apply_s(n, vec)
            pairs.append((a, R.norm(n + 1, s, L)))
        weights = [(int(a) - 1, v) for a, v in pairs]
        out[n] = {
            "pairs": pairs,
            "observed_degree": observed_degree(weights),
            "growth": suggest_growth(weights, k_max=3),
            "heuristic": True,
        }
    return out


def check_contraction(R: FiniteFreeResolution, radius: int):
    """Verify d s + s d = id on all basis elements g e with L(g) <= radius, in
    every degree, and d s_{-1} = id on the scalar 1 (eps d = 0 implicit).
    Returns the number of checks; raises NotAComplex with the witness."""
    if R.contraction is None:
        raise ContractionUnavailable(R.name)
    model = R.model
    count = 0
    # degree 0: d s_0 + s_{-1} eps = id
    for n in range(0, R.top + 1):
        for g, i, _ in _basis_samples(R, n, radius):
            vec = [GroupRingElement.zero(model) for _ in R.levels[n]]
            vec[i] = _e(model, g)
            lhs = [GroupRingElement.zero(model) for _ in R.levels[n]]
            if n < R.top:
                lhs = _vadd(lhs, R.apply_d(n + 1, R.apply_s(n, vec)))
            if n == 0:
                lhs = _vadd(lhs, [c * 1 for c in R.contraction[-1](model.identity, 0)])
            else:
                lhs = _vadd(lhs, R.apply_s(n - 1, R.apply_d(n, vec)))
            if lhs != vec:
                raise NotAComplex(f"{R.name}: ds + sd != id at degree {n} on {model.format_element(g)}*{R.levels[n][i]}")
            count += 1
    return count


def _vadd(u, v):
    return [x + y for x, y in zip(u, v)]
