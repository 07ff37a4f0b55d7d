"""Degree bookkeeping on the facet description of P+Q.

A sparse system carries supports A_1..A_k, optional concrete coefficients, a
rational shift direction delta and an auxiliary integral polytope Q.  The
context built here records, once and for all, the primitive inner normals of
P+Q, the per-polytope offsets a_{ij}, the Q offsets b_j, and the exact facet
shifts induced by delta.  Homogenization, degree classes and dehomogenization
are all phrased against that data; the module works in lattice-point
coordinates wherever it can, producing exponent vectors only at the API
boundary.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import GeometryError
from . import lattice_geom as geom
from .exactla import hermite_normal_form, reduce_mod_rows
from .lattice_geom import IntegralPolytope, Vec, convex_hull, minkowski_sum, minkowski_sum_all
from .polyring import LaurentPoly


def origin_polytope(n: int) -> IntegralPolytope:
    return convex_hull([tuple([0] * n)])


@dataclass(frozen=True)
class SparseSystem:
    """Laurent system data: supports, coefficients, shift delta, polytope Q.

    coefficients is None for the generic system (symbolic c_{i,b}) or a tuple
    of per-support coefficient tuples, positionally matching the supports and
    all nonzero.
    """
    n: int
    supports: tuple[tuple[Vec, ...], ...]
    coefficients: tuple[tuple[Fraction, ...], ...] | None
    delta: tuple[Fraction, ...]
    q_polytope: IntegralPolytope

    @property
    def k(self) -> int:
        return len(self.supports)

    @property
    def is_generic(self) -> bool:
        return self.coefficients is None

    def coefficient(self, i: int, b: Vec) -> Fraction:
        """Concrete coefficient of t^b in f_i (i is 1-based)."""
        sup = self.supports[i - 1]
        return self.coefficients[i - 1][sup.index(b)]

    def laurent(self, i: int) -> LaurentPoly:
        """f_i as a LaurentPoly (concrete systems only)."""
        return LaurentPoly({b: c for b, c in
                            zip(self.supports[i - 1], self.coefficients[i - 1])})


def make_system(supports, coefficients=None, delta=None, q_points=None) -> SparseSystem:
    """Validate raw data into a SparseSystem.

    Supports must be nonempty lists of equal-dimension integer vectors with
    no repeats; concrete coefficients must match them positionally and be
    nonzero (a vanishing f_{i,b} silently changes the support).
    """
    sups = []
    n = None
    for pts in supports:
        tup = tuple(tuple(int(x) for x in p) for p in pts)
        if not tup:
            raise ValueError("empty support")
        if len(set(tup)) != len(tup):
            raise ValueError("repeated point in a support")
        for p in tup:
            if n is None:
                n = len(p)
            elif len(p) != n:
                raise GeometryError("support points of mixed dimension")
        sups.append(tup)
    if not sups:
        raise ValueError("no supports given")
    coeffs = None
    if coefficients is not None:
        coeffs = []
        for sup, cs in zip(sups, coefficients, strict=True):
            row = tuple(Fraction(c) for c in cs)
            if len(row) != len(sup):
                raise ValueError("coefficient count does not match support size")
            if any(c == 0 for c in row):
                raise ValueError("concrete coefficients must be nonzero")
            coeffs.append(row)
        coeffs = tuple(coeffs)
    if delta is None:
        delta = tuple(Fraction(0) for _ in range(n))
    else:
        delta = tuple(Fraction(d) for d in delta)
        if len(delta) != n:
            raise ValueError("delta has the wrong length")
    if q_points is None:
        q = origin_polytope(n)
    else:
        q = convex_hull(q_points)
        if q.dim_ambient != n:
            raise GeometryError("Q lives in the wrong dimension")
    return SparseSystem(n, tuple(sups), coeffs, delta, q)


@dataclass(frozen=True)
class ToricContext:
    """Facet data of P+Q shared by every graded construction."""
    system: SparseSystem
    normals: tuple[Vec, ...]
    offsets_per_poly: tuple[tuple[int, ...], ...]  # a_{ij}, one row per f_i
    offsets_q: tuple[int, ...]                     # b_j
    shifts: tuple[int, ...]                        # ceil(<delta, eta_j>)
    signs: tuple[int, ...]                         # 1 iff <delta, eta_j> > 0
    polytopes: tuple[IntegralPolytope, ...]        # P_i = conv(A_i)
    p_total: IntegralPolytope                      # P = P_1 + ... + P_k
    pq: IntegralPolytope                           # P + Q
    row_lattice: tuple[tuple[int, ...], ...] = field(repr=False)  # HNF rows of m -> (<m,eta_j>)_j

    @property
    def n(self) -> int:
        return self.system.n

    @property
    def k(self) -> int:
        return self.system.k

    def component_offsets(self, removed: tuple[int, ...]) -> tuple[int, ...]:
        """Facet offsets of sum(P_i, i not in removed) + Q."""
        out = list(self.offsets_q)
        for i in range(1, self.k + 1):
            if i not in removed:
                row = self.offsets_per_poly[i - 1]
                out = [a + b for a, b in zip(out, row)]
        return tuple(out)

    def shifted_points(self, removed: tuple[int, ...]) -> list[Vec]:
        """Delta-shifted lattice points of the partial Minkowski sum."""
        return geom.lattice_points(self.component_offsets(removed),
                                   self.shifts, self.normals)


def build_context(system: SparseSystem) -> ToricContext:
    """Hulls, facet normals of P+Q, offsets and shifts for a system.

    Raises GeometryError when P = P_1 + ... + P_k is lower-dimensional; such
    systems should be reparametrized in fewer variables by the caller, which
    is out of scope here.
    """
    polys = tuple(convex_hull(s) for s in system.supports)
    p_total = minkowski_sum_all(polys)
    if not p_total.is_full_dimensional:
        raise GeometryError(
            "P = P_1 + ... + P_k is lower-dimensional; reparametrize the system")
    pq = minkowski_sum(p_total, system.q_polytope)
    normals = pq.normals
    offsets_per_poly = tuple(geom.support_offsets(s, normals) for s in system.supports)
    offsets_q = geom.support_offsets(system.q_polytope, normals)
    total = list(offsets_q)
    for row in offsets_per_poly:
        total = [a + b for a, b in zip(total, row)]
    pq_offsets = tuple(f.offset for f in pq.facets)
    if tuple(total) != pq_offsets:
        raise GeometryError("offset decomposition a_j = sum_i a_{ij} + b_j failed")
    shifts = geom.ceil_shifts(system.delta, normals)
    signs = geom.sign_pattern(system.delta, normals)
    rows = [[eta[i] for eta in normals] for i in range(system.n)]
    hnf = tuple(tuple(r) for r in hermite_normal_form(rows)) if system.n else ()
    return ToricContext(system, normals, offsets_per_poly, offsets_q,
                        shifts, signs, polys, p_total, pq, hnf)


@dataclass(frozen=True)
class DegreeClass:
    """Facet-offset vector modulo the row lattice of m -> (<m, eta_j>)_j,
    stored in canonical reduced form; equality is lattice-coset equality."""
    reduced: tuple[int, ...]


def degree_class(offsets, ctx: ToricContext) -> DegreeClass:
    return DegreeClass(reduce_mod_rows(offsets, ctx.row_lattice))


def degree_equal(d1: DegreeClass, d2: DegreeClass) -> bool:
    return d1.reduced == d2.reduced


def homogenize(i: int, f: LaurentPoly, ctx: ToricContext):
    """Exponent vectors <b, eta_j> + a_{ij} of the homogenized f_i.

    Returns [(exponents, coefficient)] sorted by exponent vector.  All
    exponents are nonnegative by the definition of the offsets, and all
    monomials share one degree class."""
    sup = set(ctx.system.supports[i - 1])
    if not f.support() <= sup:
        raise ValueError(f"support of f escapes A_{i}")
    a_row = ctx.offsets_per_poly[i - 1]
    out = []
    for b, coeff in f.terms.items():
        exps = tuple(geom.dot(b, eta) + a for eta, a in zip(ctx.normals, a_row))
        if any(e < 0 for e in exps):
            raise AssertionError("negative homogenized exponent")
        out.append((exps, coeff))
    return sorted(out)


def cox_degree(exponents, ctx: ToricContext) -> DegreeClass:
    """Degree class of a monomial given by its exponent vector."""
    return degree_class(exponents, ctx)


def dehomogenize(exponents, ctx: ToricContext, offsets) -> Vec:
    """Recover the unique lattice point m with <m, eta_j> + c_j = e_j.

    ``offsets`` are the facet offsets c of the divisor whose degree the
    exponent vector is claimed to have; raises ValueError when no such m
    exists (the exponent vector is not of the stated degree)."""
    target = [e - c for e, c in zip(exponents, offsets)]
    n = ctx.n
    if n == 0:
        if any(target):
            raise ValueError("exponent vector not of the stated degree")
        return ()
    rows = [list(eta) for eta in ctx.normals]
    sol = None
    from itertools import combinations
    for subset in combinations(range(len(rows)), n):
        sub = [rows[j] for j in subset]
        cand = geom._solve_unique(sub, [target[j] for j in subset])
        if cand is not None:
            sol = cand
            break
    if sol is None or any(x.denominator != 1 for x in sol):
        raise ValueError("exponent vector not of the stated degree")
    m = tuple(int(x) for x in sol)
    if any(geom.dot(m, eta) != t for eta, t in zip(ctx.normals, target)):
        raise ValueError("exponent vector not of the stated degree")
    return m
