"""Toric emptiness decisions and sharp Bezout-identity certificates.

For a concrete system with no common zeros on the toric compactification,
every Laurent polynomial g supported in (P + Q + delta) has a representation
g = g_1 f_1 + ... + g_k f_k with the support of g_i inside the shifted
partial sum (sum_{j != i} P_j + Q + delta).  The cofactors come from one
exact linear solve against the rightmost Koszul differential; free variables
are set to zero, so certificates are deterministic (and make no minimality
claim).

Emptiness here is emptiness in the compactification X_P, which is strictly
stronger than absence of zeros in the torus alone.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import NoCertificate, TargetSupportEscape
from .exactla import solve_with_free_zero
from .koszul import GradedKoszulComplex, build_complex, rightmost_surjective
from .lattice_geom import Vec
from .polyring import LaurentPoly, laurent_combination
from .toric import SparseSystem, build_context


@dataclass(frozen=True)
class Certificate:
    target: LaurentPoly
    cofactors: tuple[LaurentPoly, ...]
    declared_supports: tuple[tuple[Vec, ...], ...]

    def to_json(self) -> dict:
        def poly_terms(p: LaurentPoly):
            return [{"point": list(m), "coeff": str(c)}
                    for m, c in sorted(p.terms.items())]
        return {
            "target": poly_terms(self.target),
            "cofactors": [poly_terms(g) for g in self.cofactors],
        }


def _require_concrete(system: SparseSystem):
    if system.is_generic:
        raise ValueError("this operation needs concrete coefficients")


def emptiness_check(system: SparseSystem, cx: GradedKoszulComplex | None = None) -> bool:
    """True iff the homogenized system has no zeros in X_P.

    Decided by surjectivity of the rightmost nontrivial Koszul map."""
    _require_concrete(system)
    if cx is None:
        cx = build_complex(system, build_context(system))
    return rightmost_surjective(cx)


def certificate(system: SparseSystem, g: LaurentPoly,
                cx: GradedKoszulComplex | None = None) -> Certificate:
    """Cofactors g_i with g = sum g_i f_i and the sharp shifted supports.

    Raises TargetSupportEscape when g is not supported in (P+Q+delta),
    NoCertificate when the linear system has no solution (for targets not
    vanishing on a common zero this is exactly the nonempty case)."""
    _require_concrete(system)
    if any(not (-1 < d < 1) for d in system.delta):
        raise ValueError("certificates need delta inside the open unit box (-1,1)^n")
    if cx is None:
        cx = build_complex(system, build_context(system))
    level0 = cx.basis(0)
    allowed = {p for _, p in level0}
    if not g.support() <= allowed:
        raise TargetSupportEscape(
            "target support escapes (P+Q+delta): "
            f"{sorted(g.support() - allowed)}")
    if g.is_zero:
        zero = tuple(LaurentPoly.zero() for _ in range(system.k))
        return Certificate(g, zero, tuple(c.points for c in cx.terms[1].components))
    m1 = cx.mats[1]
    rhs = [Fraction(0)] * m1.nrows
    for idx, (_, p) in enumerate(level0):
        if p in g.terms:
            rhs[idx] = Fraction(g.terms[p])
    sol = solve_with_free_zero(m1.to_dense(), rhs)
    if sol is None:
        raise NoCertificate("no cofactor representation with the declared supports")
    cofactors = []
    pos = 0
    for comp in cx.terms[1].components:
        terms = {}
        for p in comp.points:
            if sol[pos]:
                terms[p] = sol[pos]
            pos += 1
        cofactors.append(LaurentPoly(terms))
    return Certificate(g, tuple(cofactors),
                       tuple(c.points for c in cx.terms[1].components))


def verify_certificate(cert: Certificate, system: SparseSystem) -> bool:
    """Recompute sum g_i f_i and check the identity plus support containment."""
    _require_concrete(system)
    if len(cert.cofactors) != system.k:
        return False
    for g_i, decl in zip(cert.cofactors, cert.declared_supports):
        if not g_i.support() <= set(decl):
            return False
    polys = [system.laurent(i) for i in range(1, system.k + 1)]
    return laurent_combination(cert.cofactors, polys) == cert.target
