"""Semi-normed free rational modules and polynomial growth certificates.

A basis element ``g s`` carries the weight ``L(g) + w(s)``; the seminorm of a
combination is sum |coefficient| * (1 + weight).  The singleton basis ``*``
has weight 1, so a scalar q has seminorm 2|q|.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable

from .errors import BudgetExceeded
from .linalg import RationalMatrix, rank_kernel, solve


@dataclass(frozen=True, order=False)
class WeightedBasisElement:
    """``g s`` with weight L(g) + w(s).  ``order`` is an optional sort key used
    for least-witness reporting (defaults to (weight, repr))."""

    g: object
    s: object
    weight: int
    order: tuple = field(default=None, compare=False, hash=False)

    def __post_init__(self):
        if self.weight < 0:
            raise ValueError("weight must be nonnegative")

    def sort_key(self):
        return (self.weight, self.order if self.order is not None else (repr(self.g), repr(self.s)))

    def __str__(self):
        return f"{self.g}*{self.s}" if self.g is not None else str(self.s)


STAR = WeightedBasisElement(None, "*", 1)


def basis_element(g, s, length_g: int, weight_s: int = 1, order=None):
    if weight_s < 1:
        raise ValueError("basis weights must be >= 1")
    return WeightedBasisElement(g, s, length_g + weight_s, order)


class ModuleElement:
    """Finite rational combination of weighted basis elements."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        out = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for b, c in items:
                c = Fraction(c)
                if c:
                    v = out.get(b, 0) + c
                    if v:
                        out[b] = v
                    else:
                        out.pop(b, None)
        self.terms = out

    @classmethod
    def basis(cls, b, coeff=1):
        return cls({b: coeff})

    def __add__(self, other):
        out = dict(self.terms)
        for b, c in other.terms.items():
            v = out.get(b, 0) + c
            if v:
                out[b] = v
            else:
                out.pop(b, None)
        m = ModuleElement()
        m.terms = out
        return m

    def __neg__(self):
        m = ModuleElement()
        m.terms = {b: -c for b, c in self.terms.items()}
        return m

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, q):
        q = Fraction(q)
        m = ModuleElement()
        m.terms = {b: c * q for b, c in self.terms.items()} if q else {}
        return m

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, ModuleElement) and self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def coefficient(self, b):
        return self.terms.get(b, Fraction(0))

    def support(self):
        return sorted(self.terms, key=lambda b: b.sort_key())

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*[{b}]" for b, c in ((b, self.terms[b]) for b in self.support()))


def seminorm(m: ModuleElement) -> Fraction:
    return sum((abs(c) * (1 + b.weight) for b, c in m.terms.items()), Fraction(0))


@dataclass
class QuotientNorm:
    value: Fraction
    exact: bool
    representative: ModuleElement
    vertices: int = 0


def quotient_seminorm(representative: ModuleElement, relations: list, enumeration_bound: int = 100_000) -> QuotientNorm:
    """Least seminorm over representative + span(relations).

    The objective is a weighted L1 norm on an affine subspace, so its minimum
    sits at a vertex where as many coordinates vanish as the relations have
    rank.  All such vertices are enumerated exactly; more than
    ``enumeration_bound`` candidate vertices raises BudgetExceeded.
    """
    relations = [r for r in relations if r]
    if not relations:
        return QuotientNorm(seminorm(representative), True, representative, 1)
    support = set(representative.terms)
    for r in relations:
        support.update(r.terms)
    support = sorted(support, key=lambda b: b.sort_key())
    # columns of R: independent relations only
    cols = [[r.coefficient(b) for b in support] for r in relations]
    chosen = []
    for c in cols:
        trial = RationalMatrix([list(x) for x in zip(*(chosen + [c]))])
        if rank_kernel(trial)[0] == len(chosen) + 1:
            chosen.append(c)
    k = len(chosen)
    R = RationalMatrix([list(x) for x in zip(*chosen)], k)
    base = [representative.coefficient(b) for b in support]
    weights = [1 + b.weight for b in support]
    n = len(support)
    total = 1
    for i in range(k):
        total = total * (n - i) // (i + 1)
    if total > enumeration_bound:
        raise BudgetExceeded(
            f"{total} candidate vertices exceed the enumeration bound {enumeration_bound}",
            {"vertices": total},
        )
    best = None
    best_c = None
    for rows in itertools.combinations(range(n), k):
        sub = RationalMatrix([R.rows[i] for i in rows], k)
        if rank_kernel(sub)[0] < k:
            continue
        c = solve(sub, [-base[i] for i in rows])
        val = sum(
            (abs(base[i] + sum((R.rows[i][j] * c[j] for j in range(k)), Fraction(0))) * weights[i] for i in range(n)),
            Fraction(0),
        )
        if best is None or val < best:
            best, best_c = val, c
    rep = ModuleElement({
        b: base[i] + sum((R.rows[i][j] * best_c[j] for j in range(k)), Fraction(0)) for i, b in enumerate(support)
    })
    return QuotientNorm(best, True, rep, total)


@dataclass(frozen=True)
class GrowthBound:
    C: Fraction
    k: int

    def __post_init__(self):
        object.__setattr__(self, "C", Fraction(self.C))
        if self.C <= 0:
            raise ValueError("C must be positive")
        if self.k < 0:
            raise ValueError("degree must be nonnegative")

    @property
    def growth_class(self):
        return {0: "bounded", 1: "linear"}.get(self.k, f"polynomial({self.k})")

    def value(self, weight):
        return self.C * (1 + weight) ** self.k


@dataclass
class Certified:
    bound: GrowthBound
    checked: int
    radius: int
    max_ratio: Fraction | None = None
    verdict: str = "certified"


@dataclass
class Violation:
    bound: GrowthBound
    witness: object
    weight: int
    value: Fraction
    limit: Fraction
    checked: int
    verdict: str = "violation"


def verify_growth_bound(f: Callable, bound: GrowthBound, basis: Iterable, R: int,
                        norm: Callable = seminorm, max_elements: int = 10**7):
    """Check norm(f(a)) <= C (1 + |a|)^k for every basis element of weight <= R.

    ``basis`` must yield WeightedBasisElement in (weight, shortlex) order, so
    the first failure is the least witness.  ``f`` may return a ModuleElement
    or a rational number (then the scalar is taken at face value).
    """
    checked = 0
    worst = None
    for a in basis:
        if a.weight > R:
            break
        checked += 1
        if checked > max_elements:
            raise BudgetExceeded("growth check exceeded max_elements", {"checked": checked - 1})
        v = f(a)
        val = norm(v) if isinstance(v, ModuleElement) else abs(Fraction(v))
        lim = bound.value(a.weight)
        if val > lim:
            return Violation(bound, a, a.weight, val, lim, checked)
        ratio = val / (1 + a.weight) ** bound.k
        if worst is None or ratio > worst:
            worst = ratio
    return Certified(bound, checked, R, worst)


def doubling_witness(value: Callable, weight: Callable, bound: GrowthBound, limit: int = 2**64, start: int = 1):
    """Search g = start, 2 start, 4 start, ... up to ``limit`` for the first
    point with |value(g)| > C (1 + weight(g))^k; returns (g, value, limit)
    or None."""
    g = start
    while g <= limit:
        v = abs(Fraction(value(g)))
        lim = bound.value(weight(g))
        if v > lim:
            return g, v, lim
        g *= 2
    return None


def suggest_growth(samples, k_max: int = 6, radii=None):
    """Heuristic table: for each k, C_k = max value / (1 + weight)^k overall
    and on each nested radius.  Growing C_k across radii signals that degree k
    does not fit; only :func:`verify_growth_bound` certifies anything."""
    samples = [(int(w), Fraction(v)) for w, v in samples]
    if not samples:
        raise ValueError("no samples")
    if radii is None:
        radii = sorted({w for w, _ in samples})
    table = {}
    for k in range(k_max + 1):
        trend = []
        for r in radii:
            vals = [abs(v) / (1 + w) ** k for w, v in samples if w <= r]
            trend.append(max(vals) if vals else None)
        overall = max(abs(v) / (1 + w) ** k for w, v in samples)
        known = [t for t in trend if t is not None]
        table[k] = {
            "C": overall,
            "trend": trend,
            "increasing": len(known) > 1 and all(b > a for a, b in zip(known, known[1:])),
            "stable": len(known) > 1 and known[-1] == known[-2],
        }
    return {"radii": list(radii), "degrees": table, "heuristic": True}
