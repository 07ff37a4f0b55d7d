import random
from fractions import Fraction

import pytest

from conftest import HALF
from toricelim.errors import GeometryError
from toricelim.koszul import (build_complex, check_exact,
                              differentials_compose_to_zero, level_subsets,
                              rightmost_surjective, specialize)
from toricelim.lattice_geom import vadd
from toricelim.polyring import MPoly
from toricelim.toric import build_context, make_system

DELTA_SIGNATURES = {
    (0, 0): [[16], [11, 7, 7], [2, 4, 4], [1]],
    (HALF, HALF): [[12], [7, 4, 5], [1, 2, 1], [0]],
    (0, -HALF): [[12], [8, 4, 4], [0, 2, 2], [0]],
}


def running_complex(supports, delta=(0, 0), coefficients=None, q_points=None):
    sys_ = make_system(supports, coefficients=coefficients, delta=delta,
                       q_points=q_points)
    return build_complex(sys_, build_context(sys_))


def all_ones(supports):
    return [[1] * len(s) for s in supports]


# ---------------------------------------------------------------------------
# construction
# ---------------------------------------------------------------------------

def test_level_subset_order():
    assert level_subsets(3, 1) == [(1,), (2,), (3,)]
    # top half listed by surviving polytope: complements in colex order
    assert level_subsets(3, 2) == [(2, 3), (1, 3), (1, 2)]
    assert level_subsets(3, 0) == [()]
    assert level_subsets(3, 3) == [(1, 2, 3)]
    assert level_subsets(2, 1) == [(1,), (2,)]


@pytest.mark.parametrize("delta", sorted(DELTA_SIGNATURES, key=str))
def test_running_dimension_signatures(running_supports, delta):
    cx = running_complex(running_supports, delta)
    assert cx.dims_signature() == DELTA_SIGNATURES[delta]
    # exact generic complexes force alternating dimension sum zero
    dims = cx.dims()
    assert sum(d if l % 2 == 0 else -d for l, d in enumerate(dims)) == 0


@pytest.mark.parametrize("delta", sorted(DELTA_SIGNATURES, key=str))
def test_differentials_compose_to_zero_symbolically(running_supports, delta):
    cx = running_complex(running_supports, delta)
    assert differentials_compose_to_zero(cx)


def test_column_support_and_entry_multiset(running_supports):
    # entries of column (J, m): exactly (-1)^(t+1) c_{j_t, b} at row
    # (J \ {j_t}, m + b), each b once, and every m+b lands in the target basis
    cx = running_complex(running_supports, (HALF, HALF))
    sups = cx.system.supports
    for level in range(1, cx.k + 1):
        mat = cx.mats[level]
        basis_lo = cx.basis(level - 1)
        col = 0
        for comp in cx.terms[level].components:
            J = comp.subset
            for m in comp.points:
                expected = {}
                for t, jt in enumerate(J):
                    sign = 1 if t % 2 == 0 else -1
                    sub = tuple(x for x in J if x != jt)
                    for b in sups[jt - 1]:
                        row = cx.index_of(level - 1, sub, vadd(m, b))
                        expected[row] = MPoly.variable((jt, b), sign)
                got = dict(mat.cols[col])
                assert got == expected
                col += 1


def test_specialize_commutes_with_direct_build(running_supports):
    coeffs = [[2, -3], [5, 1, -1], [7, -2, 4]]
    direct = running_complex(running_supports, (HALF, HALF), coefficients=coeffs)
    generic = running_complex(running_supports, (HALF, HALF))
    assignment = {(i + 1, b): c for i, (sup, row) in
                  enumerate(zip(running_supports, coeffs)) for b, c in zip(sup, row)}
    spec = specialize(generic, assignment)
    for ms, md in zip(spec.mats[1:], direct.mats[1:]):
        assert [[(r, Fraction(v)) for r, v in col] for col in ms.cols] == \
            [[(r, Fraction(v)) for r, v in col] for col in md.cols]


def test_specialize_missing_assignment(running_supports):
    generic = running_complex(running_supports, (HALF, HALF))
    with pytest.raises(KeyError):
        specialize(generic, {(1, (0, 0)): 1})


def test_all_ones_entries_are_units(running_supports):
    cx = running_complex(running_supports, (HALF, HALF),
                         coefficients=all_ones(running_supports))
    values = {Fraction(v) for mat in cx.mats[1:] for col in mat.cols
              for _, v in col}
    assert values == {Fraction(1), Fraction(-1)}
    # no zero rows in the rightmost map for these instances
    touched = {r for col in cx.mats[1].cols for r, _ in col}
    assert touched == set(range(cx.mats[1].nrows))


# ---------------------------------------------------------------------------
# exactness
# ---------------------------------------------------------------------------

def test_all_ones_complex_exact_and_surjective(running_supports):
    cx = running_complex(running_supports, (HALF, HALF),
                         coefficients=all_ones(running_supports))
    assert check_exact(cx)
    assert rightmost_surjective(cx)


def test_common_zero_breaks_exactness(running_supports):
    # coefficients with f_i(1,1) = 0 for all i: a common torus zero
    cx = running_complex(running_supports, (HALF, HALF),
                         coefficients=[[1, -1], [1, -2, 1], [1, 1, -2]])
    assert not check_exact(cx)
    assert not rightmost_surjective(cx)


def test_random_specializations_stay_exact(running_supports):
    rng = random.Random(47)
    generic = running_complex(running_supports, (0, -HALF))
    for _ in range(5):
        assignment = {(i + 1, b): rng.choice([x for x in range(-9, 10) if x])
                      for i, sup in enumerate(running_supports) for b in sup}
        spec = specialize(generic, assignment)
        assert differentials_compose_to_zero(spec)


def test_trivial_constant_system():
    # k=1, A_1={0} in ambient dimension 0: complex 0 -> K -> K -> 0, map [c]
    cx = running_complex([[()]], delta=(), coefficients=[[3]])
    assert cx.dims() == [1, 1]
    assert rightmost_surjective(cx)
    assert check_exact(cx)


def test_q_segment_dimensions(running_supports):
    cx = running_complex(running_supports, (HALF, HALF), q_points=[(0, 0), (1, 0)])
    assert cx.dims() == [16, 24, 8, 0]
    assert differentials_compose_to_zero(cx)


def test_generic_complex_rejects_rank_queries(running_supports):
    cx = running_complex(running_supports)
    with pytest.raises(ValueError):
        check_exact(cx)
