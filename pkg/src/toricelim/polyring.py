"""Sparse multivariate polynomial arithmetic over exact rationals.

Two polynomial flavours live here:

* ``MPoly`` -- polynomials in the generic coefficient variables ``c_{i,b}``,
  where a variable is identified by the pair ``(i, b)`` of a polynomial index
  ``i >= 1`` and a support point ``b``.  The monomial order is graded
  lexicographic over the variable order ``(i, lex(b))``; the earliest variable
  in that order is the most significant one.
* ``LaurentPoly`` -- Laurent polynomials with exponents in ``Z^n``, used to
  expand and verify cofactor identities.

Coefficients are arbitrary-precision rationals (`Fraction`), normalized to
``int`` whenever integral.  All values are immutable in practice: operations
return fresh objects and never mutate inputs.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cmp_to_key
from math import gcd, lcm

VarKey = tuple[int, tuple[int, ...]]  # (poly index, support point)
Mono = tuple[tuple[VarKey, int], ...]  # ((var, exponent), ...), sorted by var


def _norm_coeff(c):
    """Collapse integral Fractions to int."""
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c)
    return c


def _mono_mul(a: Mono, b: Mono) -> Mono:
    if not a:
        return b
    if not b:
        return a
    out = []
    i = j = 0
    while i < len(a) and j < len(b):
        va, ea = a[i]
        vb, eb = b[j]
        if va == vb:
            out.append((va, ea + eb))
            i += 1
            j += 1
        elif va < vb:
            out.append(a[i])
            i += 1
        else:
            out.append(b[j])
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return tuple(out)


def _mono_quot(a: Mono, b: Mono) -> Mono | None:
    """Exponentwise a / b, or None when b does not divide a."""
    quot = []
    i = 0
    for vb, eb in b:
        while i < len(a) and a[i][0] < vb:
            quot.append(a[i])
            i += 1
        if i == len(a) or a[i][0] != vb or a[i][1] < eb:
            return None
        if a[i][1] > eb:
            quot.append((vb, a[i][1] - eb))
        i += 1
    quot.extend(a[i:])
    return tuple(quot)


def _mono_degree(m: Mono) -> int:
    return sum(e for _, e in m)


def _mono_cmp_desc(a: Mono, b: Mono) -> int:
    """Comparator placing the graded-lex *larger* monomial first."""
    da, db = _mono_degree(a), _mono_degree(b)
    if da != db:
        return -1 if da > db else 1
    i = j = 0
    while i < len(a) and j < len(b):
        va, ea = a[i]
        vb, eb = b[j]
        if va == vb:
            if ea != eb:
                return -1 if ea > eb else 1
            i += 1
            j += 1
        elif va < vb:
            # a owns the earlier variable, so a is larger
            return -1
        else:
            return 1
    if i < len(a):
        return -1
    if j < len(b):
        return 1
    return 0


_MONO_KEY_DESC = cmp_to_key(_mono_cmp_desc)


def var_key(poly_index: int, point) -> VarKey:
    return (poly_index, tuple(point))


class MPoly:
    """Polynomial in the generic coefficients, canonical sparse form."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        t = {}
        if terms:
            for mono, coeff in terms.items() if isinstance(terms, dict) else terms:
                if coeff == 0:
                    continue
                c = t.get(mono, 0) + coeff
                if c == 0:
                    t.pop(mono, None)
                else:
                    t[mono] = _norm_coeff(c)
        self.terms = t

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero() -> "MPoly":
        return MPoly()

    @staticmethod
    def constant(c) -> "MPoly":
        return MPoly({(): c} if c != 0 else None)

    @staticmethod
    def one() -> "MPoly":
        return MPoly.constant(1)

    @staticmethod
    def variable(var: VarKey, coeff=1) -> "MPoly":
        return MPoly({((var, 1),): coeff})

    # -- ring structure -----------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, MPoly):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == MPoly.constant(other)
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __neg__(self):
        p = MPoly()
        p.terms = {m: -c for m, c in self.terms.items()}
        return p

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MPoly.constant(other)
        if not isinstance(other, MPoly):
            return NotImplemented
        t = dict(self.terms)
        for m, c in other.terms.items():
            s = t.get(m, 0) + c
            if s == 0:
                t.pop(m, None)
            else:
                t[m] = _norm_coeff(s)
        p = MPoly()
        p.terms = t
        return p

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MPoly.constant(other)
        if not isinstance(other, MPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return MPoly()
            p = MPoly()
            p.terms = {m: _norm_coeff(c * other) for m, c in self.terms.items()}
            return p
        if not isinstance(other, MPoly):
            return NotImplemented
        t = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                m = _mono_mul(ma, mb)
                s = t.get(m, 0) + ca * cb
                if s == 0:
                    t.pop(m, None)
                else:
                    t[m] = s
        p = MPoly()
        p.terms = {m: _norm_coeff(c) for m, c in t.items()}
        return p

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power")
        out = MPoly.one()
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base if e > 1 else base
            e >>= 1
        return out

    # -- queries --------------------------------------------------------

    def sorted_monomials(self) -> list[Mono]:
        """Monomials in descending graded-lex order."""
        return sorted(self.terms, key=_MONO_KEY_DESC)

    def leading(self) -> tuple[Mono, Fraction]:
        if self.is_zero:
            raise ValueError("zero polynomial has no leading term")
        m = min(self.terms, key=_MONO_KEY_DESC)
        return m, self.terms[m]

    def total_degree(self) -> int:
        if self.is_zero:
            return 0
        return max(_mono_degree(m) for m in self.terms)

    def group_degree(self, i: int) -> int:
        """Degree in the block of variables c_{i,.}; asserts homogeneity
        of the block degree across terms when the polynomial is nonzero."""
        if self.is_zero:
            return 0
        degs = {sum(e for (g, _), e in m if g == i) for m in self.terms}
        if len(degs) != 1:
            raise ValueError(f"polynomial is not homogeneous in group {i}")
        return degs.pop()

    def variables(self) -> set[VarKey]:
        return {v for m in self.terms for v, _ in m}

    def evaluate(self, assignment) -> Fraction:
        """Exact value under a full variable assignment (VarKey -> rational)."""
        total = Fraction(0)
        for m, c in self.terms.items():
            val = Fraction(c)
            for v, e in m:
                if v not in assignment:
                    raise KeyError(f"missing assignment for c_{v}")
                val *= Fraction(assignment[v]) ** e
            total += val
        return total

    # -- division and normalization -------------------------------------

    def exact_divide(self, q: "MPoly") -> "MPoly | None":
        """Quotient h with self == q*h, or None when q does not divide self.

        Single-divisor division under the monomial order; over a domain the
        leading term of every partial remainder must stay divisible, so the
        first failure certifies indivisibility.
        """
        if q.is_zero:
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero:
            return MPoly.zero()
        lq, cq = q.leading()
        rem = dict(self.terms)
        out = {}
        while rem:
            lm = min(rem, key=_MONO_KEY_DESC)
            qm = _mono_quot(lm, lq)
            if qm is None:
                return None
            qc = _norm_coeff(Fraction(rem[lm]) / Fraction(cq))
            out[qm] = qc
            for m, c in q.terms.items():
                mm = _mono_mul(qm, m)
                s = rem.get(mm, 0) - qc * c
                if s == 0:
                    rem.pop(mm, None)
                else:
                    rem[mm] = _norm_coeff(s)
        return MPoly(out)

    def content_primitive(self) -> tuple[Fraction, "MPoly"]:
        """Split into (content, primitive part).

        The primitive part has coprime integer coefficients and positive
        leading coefficient under graded-lex; content * primitive == self.
        """
        if self.is_zero:
            raise ValueError("zero polynomial has no primitive part")
        num_gcd = 0
        den_lcm = 1
        for c in self.terms.values():
            f = Fraction(c)
            num_gcd = gcd(num_gcd, abs(f.numerator))
            den_lcm = lcm(den_lcm, f.denominator)
        content = Fraction(num_gcd, den_lcm)
        _, lead = self.leading()
        if lead < 0:
            content = -content
        prim = MPoly()
        prim.terms = {m: int(Fraction(c) / content) for m, c in self.terms.items()}
        return content, prim

    # -- rendering -------------------------------------------------------

    @staticmethod
    def _var_str(v: VarKey) -> str:
        i, b = v
        return f"c_{{{i},({','.join(str(x) for x in b)})}}"

    def render(self) -> str:
        """Canonical text form: terms in descending graded-lex order."""
        if self.is_zero:
            return "0"
        chunks = []
        for m in self.sorted_monomials():
            c = self.terms[m]
            factors = []
            for v, e in m:
                s = self._var_str(v)
                factors.append(s if e == 1 else f"{s}^{e}")
            mag = abs(Fraction(c))
            coeff_str = "" if (mag == 1 and factors) else str(_norm_coeff(mag))
            body = "*".join(([coeff_str] if coeff_str else []) + factors)
            if not chunks:
                chunks.append(("-" if c < 0 else "") + body)
            else:
                chunks.append(("- " if c < 0 else "+ ") + body)
        return " ".join(chunks)

    def json_terms(self) -> list[dict]:
        """Term list for serialization, descending graded-lex."""
        out = []
        for m in self.sorted_monomials():
            out.append({
                "coeff": str(_norm_coeff(self.terms[m])),
                "vars": [[v[0], list(v[1]), e] for v, e in m],
            })
        return out

    def __repr__(self):
        return f"MPoly({self.render()})"


class LaurentPoly:
    """Laurent polynomial with exponent vectors in Z^n."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        t = {}
        if terms:
            for point, coeff in terms.items() if isinstance(terms, dict) else terms:
                if coeff == 0:
                    continue
                p = tuple(point)
                c = t.get(p, 0) + coeff
                if c == 0:
                    t.pop(p, None)
                else:
                    t[p] = _norm_coeff(c)
        self.terms = t

    @staticmethod
    def zero() -> "LaurentPoly":
        return LaurentPoly()

    @staticmethod
    def monomial(point, coeff=1) -> "LaurentPoly":
        return LaurentPoly({tuple(point): coeff})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def support(self) -> set[tuple[int, ...]]:
        return set(self.terms)

    def __eq__(self, other):
        return isinstance(other, LaurentPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __neg__(self):
        p = LaurentPoly()
        p.terms = {m: -c for m, c in self.terms.items()}
        return p

    def __add__(self, other):
        t = dict(self.terms)
        for m, c in other.terms.items():
            s = t.get(m, 0) + c
            if s == 0:
                t.pop(m, None)
            else:
                t[m] = _norm_coeff(s)
        p = LaurentPoly()
        p.terms = t
        return p

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return LaurentPoly()
            p = LaurentPoly()
            p.terms = {m: _norm_coeff(c * other) for m, c in self.terms.items()}
            return p
        t = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                m = tuple(a + b for a, b in zip(ma, mb))
                s = t.get(m, 0) + ca * cb
                if s == 0:
                    t.pop(m, None)
                else:
                    t[m] = s
        p = LaurentPoly()
        p.terms = {m: _norm_coeff(c) for m, c in t.items()}
        return p

    __rmul__ = __mul__

    def evaluate(self, point) -> Fraction:
        """Value at a torus point (all coordinates nonzero)."""
        pt = [Fraction(x) for x in point]
        if any(x == 0 for x in pt):
            raise ValueError("Laurent evaluation needs nonzero coordinates")
        total = Fraction(0)
        for m, c in self.terms.items():
            val = Fraction(c)
            for x, e in zip(pt, m):
                val *= x ** e
            total += val
        return total

    def __repr__(self):
        if self.is_zero:
            return "LaurentPoly(0)"
        bits = [f"{c}*t^{m}" for m, c in sorted(self.terms.items())]
        return "LaurentPoly(" + " + ".join(bits) + ")"


def laurent_combination(cofactors, polys) -> LaurentPoly:
    """Expand sum(g_i * f_i) exactly."""
    total = LaurentPoly.zero()
    for g, f in zip(cofactors, polys):
        total = total + g * f
    return total
