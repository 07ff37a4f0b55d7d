"""Sparse resultants as determinants of graded Koszul complexes.

Pipeline: build the generic complex for n+1 supports, pick an admissible
collection by the descending method on a random integer specialization,
take the alternating product of the corresponding symbolic minors, reduce
the quotient exactly, and normalize to a primitive integer polynomial with
positive graded-lex leading coefficient.  The per-group degrees are checked
against the complementary mixed volumes as a hard assertion.
"""

from __future__ import annotations

import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .errors import ExactnessFailure
from .exactla import AdmissibleSelection, det_complex, select_admissible, sparse_minor
from .koszul import GradedKoszulComplex, build_complex, specialize
from .lattice_geom import mixed_volume
from .polyring import MPoly
from .toric import build_context, make_system

SPECIALIZATION_BOUND = 10_000
SPECIALIZATION_RETRIES = 3


@dataclass(frozen=True)
class ResultantResult:
    polynomial: MPoly                  # primitive, positive graded-lex leading coeff
    degrees: tuple[int, ...]           # degree in each coefficient block
    mixed_volumes: tuple[int, ...]     # MV(P_1, ..omit i.., P_{n+1})
    witness: AdmissibleSelection = field(repr=False)
    content: Fraction = field(repr=False, default=Fraction(1))  # det = content * Res


def random_assignment(supports, rng: random.Random, bound=SPECIALIZATION_BOUND):
    """Independent uniform nonzero integers for every coefficient variable."""
    out = {}
    for i, sup in enumerate(supports, start=1):
        for b in sup:
            v = 0
            while v == 0:
                v = rng.randint(-bound, bound)
            out[(i, b)] = v
    return out


def generic_selection(cx: GradedKoszulComplex, seed: int = 0) -> AdmissibleSelection:
    """Admissible selection for a generic complex via random specialization.

    A nonzero specialized minor already certifies that the corresponding
    symbolic minor is nonzero, so the greedy ranks are the whole
    verification; re-randomization only guards against the (Schwartz-Zippel
    rare) event that the specialized complex is not exact."""
    last = None
    for attempt in range(SPECIALIZATION_RETRIES):
        rng = random.Random(seed + attempt)
        assignment = random_assignment(cx.system.supports, rng)
        spec = specialize(cx, assignment)
        try:
            return select_admissible(spec.dims(), spec.mats)
        except ExactnessFailure as exc:
            last = exc
    raise ExactnessFailure(
        last.level if last else 0,
        f"no exact specialization found in {SPECIALIZATION_RETRIES} attempts; "
        "the generic complex appears not to be exact")


def resultant_of_complex(cx: GradedKoszulComplex, seed: int = 0) -> ResultantResult:
    """Resultant from an already-built generic complex."""
    system = cx.system
    if not system.is_generic:
        raise ValueError("the resultant is computed from the generic complex")
    if system.k != system.n + 1:
        raise ValueError(f"need k = n+1 polynomials, got k={system.k}, n={system.n}")
    selection = generic_selection(cx, seed)
    det = det_complex(cx.mats, selection)
    prim, content = det.reduced_primitive()
    mvs = []
    for i in range(system.k):
        others = [p for j, p in enumerate(cx.ctx.polytopes) if j != i]
        mvs.append(mixed_volume(others))
    mvs = tuple(mvs)
    if prim.total_degree() == 0:
        # degenerate eliminant convention: the resultant is set equal to 1
        if any(mvs):
            raise ArithmeticError(
                "constant complex determinant but nonzero mixed-volume degrees")
        return ResultantResult(MPoly.one(), tuple([0] * system.k), mvs,
                               selection, content)
    degrees = tuple(prim.group_degree(i) for i in range(1, system.k + 1))
    if degrees != mvs:
        raise ArithmeticError(
            f"resultant degrees {degrees} do not match mixed volumes {mvs}")
    return ResultantResult(prim, degrees, mvs, selection, content)


def sparse_resultant(supports, delta=None, q_points=None, seed: int = 0) -> ResultantResult:
    """Sparse resultant of n+1 generic Laurent polynomials.

    delta may be any rational vector and Q any integral polytope: the
    primitive result is independent of both up to the global sign fixed by
    the leading-coefficient normalization."""
    system = make_system(supports, coefficients=None, delta=delta, q_points=q_points)
    if system.k != system.n + 1:
        raise ValueError(f"need k = n+1 polynomials, got k={system.k}, n={system.n}")
    cx = build_complex(system, build_context(system))
    return resultant_of_complex(cx, seed)


def specialize_resultant(result: ResultantResult, assignment) -> Fraction:
    """Exact value of the resultant under a coefficient assignment."""
    return result.polynomial.evaluate(assignment)


@dataclass
class MinorReport:
    total: int
    zero: int
    divisible: int
    failures: list


def verify_minor_divisibility(cx: GradedKoszulComplex, result: ResultantResult,
                              sample: int | None = None, seed: int = 0,
                              max_workers: int | None = None) -> MinorReport:
    """Check that maximal minors of the rightmost map are divisible by Res.

    Every maximal square minor of M_1 (choose dim(level 0) of its columns) is
    either zero or exactly divisible by the resultant; any indivisible
    nonzero minor lands in ``failures``.  ``sample`` bounds how many column
    subsets are examined (seeded, deterministic); None sweeps all of them.
    """
    m1 = cx.mats[1]
    nrows, ncols = m1.nrows, m1.ncols
    rows = tuple(range(nrows))
    subsets = list(combinations(range(ncols), nrows))
    if sample is not None and sample < len(subsets):
        subsets = random.Random(seed).sample(subsets, sample)
    res_poly = result.polynomial

    def check(cols):
        minor = sparse_minor(m1, rows, cols)
        if isinstance(minor, int) and minor == 0 or \
           isinstance(minor, MPoly) and minor.is_zero:
            return ("zero", cols)
        if not isinstance(minor, MPoly):
            return ("failure", cols)
        if minor.exact_divide(res_poly) is None:
            return ("failure", cols)
        return ("divisible", cols)

    if max_workers and max_workers > 1:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            outcomes = list(pool.map(check, subsets))
    else:
        outcomes = [check(c) for c in subsets]
    report = MinorReport(total=len(subsets), zero=0, divisible=0, failures=[])
    for kind, cols in outcomes:
        if kind == "zero":
            report.zero += 1
        elif kind == "divisible":
            report.divisible += 1
        else:
            report.failures.append(cols)
    return report
