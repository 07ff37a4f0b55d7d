import random
from fractions import Fraction

import pytest

from conftest import F10, F11, F20, RES123
from toricelim.polyring import LaurentPoly, MPoly, laurent_combination, var_key

X = var_key(1, (1, 0))
Y = var_key(1, (0, 1))


def _rand_poly(rng, vars_, max_terms=6):
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        mono = tuple(sorted({v: rng.randint(1, 3) for v in
                             rng.sample(vars_, rng.randint(0, len(vars_)))}.items()))
        terms[mono] = terms.get(mono, 0) + rng.randint(-5, 5)
    return MPoly(terms)


def _rand_assignment(rng, vars_):
    return {v: Fraction(rng.randint(-7, 7), rng.randint(1, 5)) for v in vars_}


# ---------------------------------------------------------------------------
# ring arithmetic
# ---------------------------------------------------------------------------

def test_difference_of_squares():
    x, y = MPoly.variable(X), MPoly.variable(Y)
    assert (x - y) * (x + y) == x * x - y * y


def test_additive_inverse_is_empty_map():
    x, y = MPoly.variable(X), MPoly.variable(Y)
    p = 3 * x * y - y + 7
    assert (p + (-p)).terms == {}
    assert (p - p).is_zero


def test_canonical_form_no_zero_coeffs():
    x = MPoly.variable(X)
    p = x + (-1) * x + MPoly.constant(2)
    assert p.terms == {(): 2}


def test_eval_is_ring_homomorphism():
    rng = random.Random(23)
    vars_ = [X, Y, F10]
    for _ in range(5):
        p, q = _rand_poly(rng, vars_), _rand_poly(rng, vars_)
        a = _rand_assignment(rng, vars_)
        assert (p * q).evaluate(a) == p.evaluate(a) * q.evaluate(a)
        assert (p + q).evaluate(a) == p.evaluate(a) + q.evaluate(a)


def test_evaluate_zero_and_missing_var():
    assert MPoly.zero().evaluate({}) == 0
    with pytest.raises(KeyError):
        MPoly.variable(X).evaluate({})


def test_res123_at_all_ones():
    # the seven transcribed coefficients sum to -1+1+1-1+1+2+1 = 4
    assert RES123.evaluate({v: 1 for v in RES123.variables()}) == 4


# ---------------------------------------------------------------------------
# exact division
# ---------------------------------------------------------------------------

def test_exact_divide_difference_of_squares():
    x, y = MPoly.variable(X), MPoly.variable(Y)
    assert (x * x - y * y).exact_divide(x - y) == x + y


def test_exact_divide_self():
    p = MPoly.variable(X) * 3 + MPoly.variable(Y)
    assert p.exact_divide(p) == MPoly.one()


def test_exact_divide_roundtrip_random():
    rng = random.Random(29)
    vars_ = [X, Y, F10, F11]
    for _ in range(15):
        q = _rand_poly(rng, vars_)
        h = _rand_poly(rng, vars_)
        if q.is_zero or h.is_zero:
            continue
        assert (q * h).exact_divide(q) == h


def test_exact_divide_detects_indivisible():
    x, y = MPoly.variable(X), MPoly.variable(Y)
    q = x - y
    p = q * (x + y) + MPoly.one()  # remainder 1
    assert p.exact_divide(q) is None
    with pytest.raises(ZeroDivisionError):
        p.exact_divide(MPoly.zero())


# ---------------------------------------------------------------------------
# content / primitive part
# ---------------------------------------------------------------------------

def test_content_primitive_basic():
    x, y = MPoly.variable(X), MPoly.variable(Y)
    c, prim = (2 * x + 4 * y).content_primitive()
    assert c == 2 and prim == x + 2 * y


def test_content_primitive_sign_in_content():
    x = MPoly.variable(X)
    c, prim = (Fraction(-3, 2) * x).content_primitive()
    assert c == Fraction(-3, 2) and prim == x


def test_content_primitive_scale_invariant():
    rng = random.Random(31)
    for _ in range(10):
        p = _rand_poly(rng, [X, Y, F20])
        if p.is_zero:
            continue
        c = Fraction(rng.randint(1, 9), rng.randint(1, 9)) * rng.choice((1, -1))
        _, prim1 = p.content_primitive()
        _, prim2 = (p * c).content_primitive()
        assert prim1 == prim2
        cc, pp = p.content_primitive()
        assert pp * cc == p


# ---------------------------------------------------------------------------
# ordering / rendering
# ---------------------------------------------------------------------------

def test_leading_term_graded_lex():
    x, y = MPoly.variable(X), MPoly.variable(Y)  # X < Y in the variable order
    p = x * y + x * x * x - y
    mono, coeff = p.leading()
    assert mono == ((X, 3),) and coeff == 1


def test_render_canonical():
    x, y = MPoly.variable(X), MPoly.variable(Y)
    p = 2 * x * x - y + Fraction(1, 2)
    assert p.render() == "2*c_{1,(1,0)}^2 - c_{1,(0,1)} + 1/2"
    assert MPoly.zero().render() == "0"


def test_render_res123_leading_and_roundtrip_json():
    text = RES123.render()
    # graded-lex leading term of the 7-term resultant
    assert text.startswith("c_{1,(0,0)}^4*c_{2,(1,2)}^2*c_{3,(2,1)}^2")
    terms = RES123.json_terms()
    assert len(terms) == 7
    rebuilt = MPoly({tuple(((i, tuple(b)), e) for i, b, e in t["vars"]):
                     Fraction(t["coeff"]) for t in terms})
    assert rebuilt == RES123


def test_group_degrees_res123():
    assert tuple(RES123.group_degree(i) for i in (1, 2, 3)) == (4, 2, 2)


# ---------------------------------------------------------------------------
# Laurent polynomials
# ---------------------------------------------------------------------------

def test_laurent_inverse_monomials_cancel():
    t = LaurentPoly.monomial((1, 1)) * LaurentPoly.monomial((-1, -1))
    assert t == LaurentPoly.monomial((0, 0))


def test_laurent_trivial_combination():
    f1 = LaurentPoly({(0, 0): 1, (1, 1): 2})
    f2 = LaurentPoly({(2, 1): 5})
    one = LaurentPoly.monomial((0, 0))
    assert laurent_combination([one, LaurentPoly.zero()], [f1, f2]) == f1


def test_laurent_evaluate():
    f = LaurentPoly({(-1, 2): Fraction(1, 2), (0, 0): 1})
    assert f.evaluate((2, 3)) == Fraction(1, 2) * Fraction(9, 2) + 1
    with pytest.raises(ValueError):
        f.evaluate((0, 1))


def test_laurent_ring_laws_random():
    rng = random.Random(37)
    for _ in range(10):
        mk = lambda: LaurentPoly({(rng.randint(-2, 2), rng.randint(-2, 2)):
                                  rng.randint(-4, 4) for _ in range(3)})
        a, b, c = mk(), mk(), mk()
        assert a * (b + c) == a * b + a * c
        assert a + b == b + a
        pt = (Fraction(3, 2), Fraction(-2, 5))
        assert (a * b).evaluate(pt) == a.evaluate(pt) * b.evaluate(pt)
