"""Weighted bar resolution over a group model, and inhomogeneous cochains.

A degree-n basis tuple ``(g0, g1, ..., gn)`` is ``g0 . (1, g1, ..., gn)``; its
weight as a rational basis element is L(g0) + 1 + sum L(gi).  Cochains are
stored in restricted form, as functions of ``(g1, ..., gn)`` on a ball, and
remember the radius on which they are valid.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .errors import BudgetExceeded, DegreeZero, InsufficientBall, UnknownName
from .groups import (
    BS12,
    BoundedLength,
    Cyclic,
    Free,
    FreeAbelian,
    GroupModel,
    Heisenberg,
    LogWeightedZ,
    cayley_ball,
    quotient_length,
)
from .psmod import (
    STAR,
    GrowthBound,
    ModuleElement,
    WeightedBasisElement,
    doubling_witness,
    suggest_growth,
    verify_growth_bound,
)


class BarComplex:
    """Bar resolution of a model with the weight 1 + sum L(g_i) on (1, g1..gn)."""

    def __init__(self, model: GroupModel, radius: int = 8, max_radius: int = 64):
        self.model = model
        self._radius = radius
        self._max_radius = max_radius
        self._lengths = {}

    def length(self, g):
        L = self._lengths.get(g)
        if L is not None:
            return L
        r = self._radius
        while True:
            L = quotient_length(self.model, g, r)
            if L is not None or r >= self._max_radius:
                break
            r = min(2 * r, self._max_radius)
            self._radius = r
        if L is None:
            raise InsufficientBall(f"length of {g!r} exceeds radius {self._max_radius}")
        self._lengths[g] = L
        return L

    def element(self, tup) -> WeightedBasisElement:
        tup = tuple(tup)
        if not tup:
            return STAR
        g0, rest = tup[0], tup[1:]
        weight = self.length(g0) + 1 + sum(self.length(g) for g in rest)
        return WeightedBasisElement(g0, rest, weight)

    def tuple_of(self, b: WeightedBasisElement):
        if b is STAR or b.s == "*":
            return ()
        return (b.g,) + tuple(b.s)

    def differential(self, x) -> ModuleElement:
        """d_n(g0..gn) = sum_{i<n} (-1)^i (.., g_i g_{i+1}, ..) + (-1)^n (g0..g_{n-1})."""
        if isinstance(x, ModuleElement):
            out = ModuleElement()
            for b, c in x.terms.items():
                out = out + self.differential(b) * c
            return out
        tup = self.tuple_of(x) if isinstance(x, WeightedBasisElement) else tuple(x)
        n = len(tup) - 1
        if n < 1:
            raise DegreeZero("the differential starts in degree 1")
        mul = self.model.mul
        terms = {}
        for i in range(n):
            t = tup[:i] + (mul(tup[i], tup[i + 1]),) + tup[i + 2:]
            b = self.element(t)
            terms[b] = terms.get(b, 0) + (-1) ** i
        b = self.element(tup[:-1])
        terms[b] = terms.get(b, 0) + (-1) ** n
        return ModuleElement(terms)

    def contraction(self, x):
        """s_n(g0..gn) = (1, g0..gn); linear on module elements."""
        if isinstance(x, ModuleElement):
            return ModuleElement({self.contraction(b): c for b, c in x.terms.items()})
        tup = self.tuple_of(x) if isinstance(x, WeightedBasisElement) else tuple(x)
        return self.element((self.model.identity,) + tup)

    def augmentation(self, x) -> ModuleElement:
        """Degree 0 to Q: every (g0) goes to the generator *."""
        if isinstance(x, ModuleElement):
            total = sum(x.terms.values(), Fraction(0))
            return ModuleElement({STAR: total})
        return ModuleElement({STAR: 1})

    def homotopy_defect(self, x) -> ModuleElement:
        """(d s + s d)(x) - x; in degree 0 the second term is s_{-1} of the
        augmentation, with s_{-1}(*) = (1)."""
        tup = self.tuple_of(x) if isinstance(x, WeightedBasisElement) else tuple(x)
        b = self.element(tup)
        me = ModuleElement({b: 1})
        ds = self.differential(self.contraction(b))
        if len(tup) == 1:
            sd = ModuleElement({self.element((self.model.identity,)): 1})
        else:
            sd = self.contraction(self.differential(b))
        return ds + sd - me

    # integer-coefficient versions on raw tuples, for exhaustive sweeps
    def _d(self, tup, out=None, sign=1):
        out = {} if out is None else out
        n = len(tup) - 1
        mul = self.model.mul
        for i in range(n):
            t = tup[:i] + (mul(tup[i], tup[i + 1]),) + tup[i + 2:]
            out[t] = out.get(t, 0) + sign * (-1) ** i
        t = tup[:-1]
        out[t] = out.get(t, 0) + sign * (-1) ** n
        return out

    def identity_defects(self, tup):
        """(d d x, (d s + s d)(x) - x) on a raw tuple, as integer dicts with
        zero entries dropped."""
        one = self.model.identity
        dd = {}
        if len(tup) >= 3:
            for t, c in self._d(tup).items():
                if c:
                    self._d(t, dd, c)
        h = self._d((one,) + tup)
        if len(tup) == 1:
            h[(one,)] = h.get((one,), 0) + 1
        else:
            for t, c in self._d(tup).items():
                if c:
                    key = (one,) + t
                    h[key] = h.get(key, 0) + c
        h[tup] = h.get(tup, 0) - 1
        return ({t: c for t, c in dd.items() if c}, {t: c for t, c in h.items() if c})

    def tuples(self, degree, radius, full=False):
        """Basis tuples (1, g1..gn) with every g_i in the radius ball, ordered by
        (sum of lengths, ball ranks).  ``full`` lets g0 range over the ball too."""
        ball = cayley_ball(self.model, radius)
        elems = ball.elements()
        rank = {g: i for i, g in enumerate(elems)}
        for g in elems:
            self._lengths.setdefault(g, ball.length(g))
        heads = elems if full else [self.model.identity]
        out = []
        for head in heads:
            for rest in itertools.product(elems, repeat=degree):
                out.append((head,) + rest)
        out.sort(key=lambda t: (sum(self._lengths[g] for g in t), tuple(rank[g] for g in t)))
        return out


def bar_differential(model, x, complex_=None):
    return (complex_ or BarComplex(model)).differential(x)


def bar_contraction(model, x, complex_=None):
    return (complex_ or BarComplex(model)).contraction(x)


class Cochain:
    """A rational function of (g1..gn), valid for all g_i of length <= radius."""

    def __init__(self, model: GroupModel, degree: int, func: Callable, radius: int, name="cochain", lengths=None):
        self.model = model
        self.degree = degree
        self.func = func
        self.radius = radius
        self.name = name
        self._lengths = lengths

    def _length(self, g):
        if self._lengths is not None:
            return self._lengths(g)
        return quotient_length(self.model, g, self.radius)

    def __call__(self, *args):
        if len(args) != self.degree:
            raise ValueError(f"expected {self.degree} arguments")
        for g in args:
            L = self._length(g)
            if L is None or L > self.radius:
                raise InsufficientBall(f"{self.name}: argument outside radius {self.radius}")
        return Fraction(self.func(*args))

    def table(self, radius=None):
        radius = self.radius if radius is None else radius
        if radius > self.radius:
            raise InsufficientBall(f"{self.name} is only valid to radius {self.radius}")
        elems = cayley_ball(self.model, radius).elements()
        return {t: self(*t) for t in itertools.product(elems, repeat=self.degree)}


def coboundary(phi: Cochain) -> Cochain:
    """(d phi)(g1..g_{n+1}) = phi(g2..) + sum_{i=1}^{n} (-1)^i phi(.., g_i g_{i+1}, ..)
    + (-1)^{n+1} phi(g1..gn).  Products need twice the radius, so the result
    is valid on half of it."""
    n = phi.degree
    mul = phi.model.mul
    radius = phi.radius if n == 0 else phi.radius // 2
    if n > 0 and radius < 1:
        raise InsufficientBall(f"radius {phi.radius} is too small for a coboundary")

    def d(*g):
        total = phi.func(*g[1:])
        for i in range(1, n + 1):
            args = g[: i - 1] + (mul(g[i - 1], g[i]),) + g[i + 1:]
            total += (-1) ** i * phi.func(*args)
        total += (-1) ** (n + 1) * phi.func(*g[:n])
        return total

    return Cochain(phi.model, n + 1, d, radius, f"d({phi.name})", phi._lengths)


def pairing(phi: Cochain, x: ModuleElement, complex_: BarComplex) -> Fraction:
    """<phi, x> with phi extended equivariantly: (g0, g1..gn) -> phi(g1..gn)."""
    total = Fraction(0)
    for b, c in x.terms.items():
        tup = complex_.tuple_of(b)
        if len(tup) != phi.degree + 1:
            raise ValueError("degree mismatch in pairing")
        total += c * phi(*tup[1:])
    return total


@dataclass
class CocycleCheck:
    ok: bool
    witness: tuple | None
    value: Fraction | None
    checked: int
    radius: int

    def __bool__(self):
        return self.ok


def cocycle_check(phi: Cochain, R: int | None = None) -> CocycleCheck:
    """Is d phi zero on every tuple of the radius-R ball?  The first failing
    tuple in (total length, ball rank) order is returned as witness."""
    dphi = coboundary(phi)
    R = dphi.radius if R is None else R
    if R > dphi.radius:
        raise InsufficientBall(f"cocycle check at radius {R} needs cochain radius {2 * R}")
    bc = BarComplex(phi.model, max(R, 1))
    checked = 0
    for t in bc.tuples(dphi.degree, R):
        v = dphi(*t[1:])
        checked += 1
        if v != 0:
            return CocycleCheck(False, t[1:], v, checked, R)
    return CocycleCheck(True, None, None, checked, R)


def cocycle_growth_report(phi: Cochain, R: int, k_max: int = 6, C=1, doubling=None, limit=2**64):
    """Per-degree verdicts for |phi(g1..gn)| <= C (1 + sum L(g_i))^k on the ball.

    ``doubling`` (an element g) extends the search beyond the ball along
    g, g^2, g^4, ... up to exponent ``limit``, using exact lengths.
    """
    if R > phi.radius:
        raise InsufficientBall(f"report radius {R} exceeds cochain radius {phi.radius}")
    model = phi.model
    bc = BarComplex(model, max(R, 1))
    tuples = bc.tuples(phi.degree, R)
    basis = []
    for t in tuples:
        w = sum(bc.length(g) for g in t[1:])
        basis.append(WeightedBasisElement(t[0], t[1:], w, order=t))
    basis.sort(key=lambda b: b.sort_key())
    values = {b: phi(*b.s) for b in basis}
    samples = [(b.weight, values[b]) for b in basis]
    verdicts = {}
    for k in range(k_max + 1):
        bound = GrowthBound(C, k)
        res = verify_growth_bound(lambda a: values[a], bound, basis, R * max(phi.degree, 1))
        entry = {"k": k, "C": bound.C, "class": bound.growth_class, "verdict": res.verdict}
        if res.verdict == "violation":
            entry["witness"] = tuple(res.witness.s)
            entry["weight"] = res.weight
            entry["value"] = res.value
        elif doubling is not None and phi.degree == 1:
            hit = _doubling(phi, doubling, bound, limit)
            if hit is not None:
                entry.update(verdict="violation", witness=(hit[0],), weight=hit[1], value=hit[2],
                             exponent=hit[3], beyond_ball=True)
        verdicts[k] = entry
    return {
        "cochain": phi.name,
        "model": model.name,
        "radius": R,
        "verdicts": verdicts,
        "growth": suggest_growth(samples, k_max) if samples else None,
    }


def _doubling(phi, g, bound, limit):
    model = phi.model
    powers = {}

    def element(e):
        if e not in powers:
            x, base, n = model.identity, g, e
            while n:
                if n & 1:
                    x = model.mul(x, base)
                base = model.mul(base, base)
                n >>= 1
            powers[e] = x
        return powers[e]

    def weight(e):
        L = model.exact_length(element(e))
        if L is None:
            raise BudgetExceeded("doubling search needs closed-form lengths")
        return L

    hit = doubling_witness(lambda e: phi.func(element(e)), weight, bound, limit)
    if hit is None:
        return None
    e, v, _ = hit
    return element(e), weight(e), v, e


# -- cochain mini-language ------------------------------------------------


def abelianize(model: GroupModel, g):
    """Image of g in H_1(G; Q) coordinates (a rational vector)."""
    if isinstance(model, BoundedLength):
        model = model.inner
    if isinstance(model, FreeAbelian):
        return tuple(g)
    if isinstance(model, LogWeightedZ):
        return (g,)
    if isinstance(model, Heisenberg):
        return (g[0], g[1])
    if isinstance(model, Free):
        v = [0] * model.rank
        for c in g:
            v[abs(c) - 1] += 1 if c > 0 else -1
        return tuple(v)
    if isinstance(model, BS12):
        p, _, q = g
        return (q - p,)
    if isinstance(model, Cyclic):
        return ()
    raise UnknownName(f"no abelianization for {model.name}")


def parse_cochain(spec: str, model: GroupModel, radius: int) -> Cochain:
    """``id-hom``, ``length``, ``constant:<q>``, ``hom:<v1,v2,..>`` (a row
    vector against the abelianization) or ``zero``."""
    spec = spec.strip()
    if spec == "id-hom":
        if len(abelianize(model, model.identity)) != 1:
            raise UnknownName("id-hom needs a group with one-dimensional abelianization")
        return Cochain(model, 1, lambda g: abelianize(model, g)[0], radius, "id-hom")
    if spec == "length":
        bc = BarComplex(model, radius)
        return Cochain(model, 1, bc.length, radius, "length")
    if spec == "zero":
        return Cochain(model, 1, lambda g: 0, radius, "zero")
    if spec.startswith("constant:"):
        q = Fraction(spec.split(":", 1)[1])
        return Cochain(model, 1, lambda g: q, radius, spec)
    if spec.startswith("hom:"):
        body = spec.split(":", 1)[1].strip().strip("[]")
        row = [Fraction(x) for x in body.replace(";", ",").split(",") if x.strip()]
        dim = len(abelianize(model, model.identity))
        if len(row) != dim:
            raise UnknownName(f"hom needs {dim} entries for {model.name}")
        return Cochain(model, 1, lambda g: sum((a * b for a, b in zip(row, abelianize(model, g))), Fraction(0)),
                       radius, spec)
    raise UnknownName(f"unknown cochain {spec!r}")
