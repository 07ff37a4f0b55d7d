"""Graded Koszul complexes in lattice-point coordinates.

The level-l term is the direct sum over removed index sets J (|J| = l) of the
span of the delta-shifted lattice points of sum(P_i, i not in J) + Q.  The
differential sends a column (J, m) to the alternating combination over t of
coeff(j_t, b) placed at row (J \\ {j_t}, m + b), b in A_{j_t}, with sign
(-1)^(t+1) for j_t the t-th smallest element of J.  Entries are single signed
coefficient variables in the generic case and rationals in the concrete case.

Component order within a level: subsets are labelled by whichever of J and
its complement has fewer elements (J on ties) and the labels are sorted
colexicographically.  For the bottom half of the complex this is plain colex
on J; for the top half it lists components by their surviving polytopes,
matching the displayed shape of the worked examples.  Basis points are sorted
lexicographically; the global index is (component, point).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .errors import GeometryError
from .exactla import SparseMatrix, compose_is_zero, mat_rank
from .lattice_geom import Vec, vadd
from .polyring import MPoly
from .toric import SparseSystem, ToricContext, build_context


def level_subsets(k: int, level: int) -> list[tuple[int, ...]]:
    """Removed index sets at a level, in display order (see module docstring)."""
    def colex(s):
        return tuple(reversed(s))
    if 2 * level <= k:
        return sorted(combinations(range(1, k + 1), level), key=colex)
    comps = sorted(combinations(range(1, k + 1), k - level), key=colex)
    full = set(range(1, k + 1))
    return [tuple(sorted(full - set(c))) for c in comps]


@dataclass(frozen=True)
class KoszulComponent:
    subset: tuple[int, ...]       # removed indices J
    offsets: tuple[int, ...]      # facet offsets of the partial sum + Q
    points: tuple[Vec, ...]       # delta-shifted lattice points, lex sorted


@dataclass(frozen=True)
class KoszulTerm:
    level: int
    components: tuple[KoszulComponent, ...]

    @property
    def dim(self) -> int:
        return sum(len(c.points) for c in self.components)

    def component_dims(self) -> list[int]:
        return [len(c.points) for c in self.components]


class GradedKoszulComplex:
    """Terms and sparse differentials of one graded Koszul piece."""

    def __init__(self, system: SparseSystem, ctx: ToricContext,
                 terms: list[KoszulTerm], mats: list[SparseMatrix | None]):
        self.system = system
        self.ctx = ctx
        self.terms = terms
        self.mats = mats  # mats[l] : level l -> level l-1, for l = 1..k

    @property
    def k(self) -> int:
        return self.system.k

    @property
    def is_generic(self) -> bool:
        return self.system.is_generic

    def dims(self) -> list[int]:
        return [t.dim for t in self.terms]

    def dims_signature(self) -> list[list[int]]:
        """Per-level component dimensions, level 0 first (the JSON export)."""
        return [t.component_dims() for t in self.terms]

    def index_of(self, level: int, subset: tuple[int, ...], point: Vec) -> int:
        return self._index[level][(subset, point)]

    def basis(self, level: int) -> list[tuple[tuple[int, ...], Vec]]:
        out = []
        for comp in self.terms[level].components:
            out.extend((comp.subset, p) for p in comp.points)
        return out


def build_complex(system: SparseSystem, ctx: ToricContext | None = None) -> GradedKoszulComplex:
    """Construct the full graded complex for a system (generic or concrete)."""
    if ctx is None:
        ctx = build_context(system)
    k = system.k
    terms = []
    index: list[dict] = []
    for level in range(k + 1):
        comps = []
        idx = {}
        pos = 0
        for subset in level_subsets(k, level):
            offsets = ctx.component_offsets(subset)
            points = tuple(ctx.shifted_points(subset))
            comps.append(KoszulComponent(subset, offsets, points))
            for p in points:
                idx[(subset, p)] = pos
                pos += 1
        terms.append(KoszulTerm(level, tuple(comps)))
        index.append(idx)

    generic = system.is_generic
    mats: list[SparseMatrix | None] = [None]
    for level in range(1, k + 1):
        nrows = terms[level - 1].dim
        ncols = terms[level].dim
        mat = SparseMatrix(nrows, ncols)
        col = 0
        for comp in terms[level].components:
            subset = comp.subset
            for m in comp.points:
                entries = []
                for t, jt in enumerate(subset):
                    sign = 1 if t % 2 == 0 else -1
                    sub = tuple(x for x in subset if x != jt)
                    for b in system.supports[jt - 1]:
                        p = vadd(m, b)
                        row = index[level - 1].get((sub, p))
                        if row is None:
                            # homogeneity closure: m + b always lands in the
                            # target basis; a miss is a construction bug
                            raise AssertionError(
                                f"column point escapes target basis at level {level}")
                        if generic:
                            val = MPoly.variable((jt, b), sign)
                        else:
                            val = sign * system.coefficient(jt, b)
                        entries.append((row, val))
                entries.sort(key=lambda e: e[0])
                mat.cols[col] = entries
                col += 1
        mats.append(mat)

    cx = GradedKoszulComplex(system, ctx, terms, mats)
    cx._index = index
    return cx


def specialize(cx: GradedKoszulComplex, assignment) -> GradedKoszulComplex:
    """Evaluate a generic complex at a coefficient assignment.

    The assignment must cover every c_{i,b}; values must be nonzero (they are
    the concrete coefficients of a sparse system)."""
    if not cx.is_generic:
        raise ValueError("specialize expects a generic complex")
    supports = cx.system.supports
    coeffs = []
    for i, sup in enumerate(supports, start=1):
        row = []
        for b in sup:
            if (i, b) not in assignment:
                raise KeyError(f"missing assignment for c_{(i, b)}")
            row.append(Fraction(assignment[(i, b)]))
        coeffs.append(tuple(row))
    system = SparseSystem(cx.system.n, supports, tuple(coeffs),
                          cx.system.delta, cx.system.q_polytope)
    mats: list[SparseMatrix | None] = [None]
    for mat in cx.mats[1:]:
        mats.append(mat.map_entries(lambda v: v.evaluate(assignment)))
    out = GradedKoszulComplex(system, cx.ctx, cx.terms, mats)
    out._index = cx._index
    return out


def differentials_compose_to_zero(cx: GradedKoszulComplex) -> bool:
    """d∘d == 0 at every level, in exact (symbolic or rational) arithmetic."""
    for level in range(2, cx.k + 1):
        if not compose_is_zero(cx.mats[level - 1], cx.mats[level]):
            return False
    return True


def ranks(cx: GradedKoszulComplex) -> list[int]:
    """Exact rank of each differential (index l = 1..k; entry 0 unused)."""
    out = [0]
    for mat in cx.mats[1:]:
        out.append(mat_rank(mat.to_dense()) if mat.nrows and mat.ncols else 0)
    return out


def check_exact(cx: GradedKoszulComplex) -> bool:
    """Exactness of a concrete complex.

    rank(M_l) + rank(M_{l+1}) == dim(level l) for every level, with the zero
    conventions rank(M_0) = rank(M_{k+1}) = 0; at level k this says M_k is
    injective and at level 0 that M_1 is onto."""
    if cx.is_generic:
        raise ValueError("check_exact expects rational entries")
    dims = cx.dims()
    r = ranks(cx)
    r.append(0)  # rank of M_{k+1}
    for level in range(cx.k + 1):
        left = r[level] if level >= 1 else 0
        if left + r[level + 1] != dims[level]:
            return False
    return True


def rightmost_surjective(cx: GradedKoszulComplex) -> bool:
    """Surjectivity of the rightmost map M_1 (rank equals dim of level 0)."""
    if cx.is_generic:
        raise ValueError("rightmost_surjective expects rational entries")
    dims = cx.dims()
    if dims[0] == 0:
        return True
    r1 = mat_rank(cx.mats[1].to_dense())
    return r1 == dims[0]
