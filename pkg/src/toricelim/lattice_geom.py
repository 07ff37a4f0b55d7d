"""Exact lattice-polytope geometry.

Convex hulls with primitive facet normals, Minkowski sums, shifted
lattice-point enumeration, Euclidean volumes and mixed volumes -- all in
exact integer/rational arithmetic.  Ambient dimensions up to 4 are supported;
that is the desk scale this package targets, and it keeps the hull a plain
hyperplane-enumeration routine instead of a full double-description engine.

Conventions:

* a facet is the half-space ``<u, normal> >= -offset`` with a primitive
  integer inner normal;
* facet lists are sorted lexicographically by normal, vertex lists
  lexicographically, so every downstream matrix layout is deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import ceil, floor, gcd

from .errors import GeometryError
from .exactla import mat_rank

Vec = tuple[int, ...]

MAX_DIM = 4


def dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def vadd(u: Vec, v: Vec) -> Vec:
    return tuple(a + b for a, b in zip(u, v))


def vsub(u: Vec, v: Vec) -> Vec:
    return tuple(a - b for a, b in zip(u, v))


def _primitive(v) -> Vec:
    g = 0
    for a in v:
        g = gcd(g, abs(a))
    if g == 0:
        raise ValueError("zero vector has no primitive form")
    return tuple(a // g for a in v)


def _solve_unique(rows, rhs):
    """Solution of a square (or overdetermined, full-column-rank) exact linear
    system; None when singular/inconsistent."""
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    aug = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(rows, rhs)]
    r = 0
    pivots = []
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if aug[i][c]), None)
        if piv is None:
            return None
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = 1 / aug[r][c]
        aug[r] = [x * inv for x in aug[r]]
        for i in range(nrows):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[r])]
        pivots.append((r, c))
        r += 1
    for i in range(r, nrows):
        if aug[i][ncols]:
            return None
    sol = [Fraction(0)] * ncols
    for row, col in pivots:
        sol[col] = aug[row][ncols]
    return sol


def _nullspace_vector(rows) -> Vec | None:
    """Primitive integer vector spanning the kernel of a rank-(d-1) matrix
    with d columns; None when the rank is not d-1."""
    ncols = len(rows[0])
    m = [[Fraction(x) for x in row] for row in rows]
    nrows = len(m)
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    if r != ncols - 1:
        return None
    free = next(c for c in range(ncols) if c not in pivots)
    sol = [Fraction(0)] * ncols
    sol[free] = Fraction(1)
    for row, col in zip(range(r), pivots):
        sol[col] = -m[row][free]
    denom = 1
    for x in sol:
        denom = denom * x.denominator // gcd(denom, x.denominator)
    ints = [int(x * denom) for x in sol]
    return _primitive(ints)


def _affine_rank(points) -> int:
    if len(points) <= 1:
        return 0
    base = points[0]
    return mat_rank([vsub(p, base) for p in points[1:]])


@dataclass(frozen=True)
class Facet:
    """Half-space <u, normal> >= -offset with a primitive inner normal."""
    normal: Vec
    offset: int


@dataclass(frozen=True)
class IntegralPolytope:
    dim_ambient: int
    vertices: tuple[Vec, ...]
    facets: tuple[Facet, ...] | None  # None unless full-dimensional

    @property
    def is_full_dimensional(self) -> bool:
        return self.facets is not None

    @property
    def normals(self) -> tuple[Vec, ...]:
        if self.facets is None:
            raise GeometryError("polytope is not full-dimensional")
        return tuple(f.normal for f in self.facets)

    def contains(self, point) -> bool:
        if self.facets is None:
            raise GeometryError("membership test needs a full-dimensional polytope")
        pt = [Fraction(x) for x in point]
        return all(dot(pt, f.normal) >= -f.offset for f in self.facets)

    def translate(self, t: Vec) -> "IntegralPolytope":
        verts = tuple(sorted(vadd(v, t) for v in self.vertices))
        facets = None
        if self.facets is not None:
            facets = tuple(Facet(f.normal, f.offset - dot(t, f.normal))
                           for f in self.facets)
        return IntegralPolytope(self.dim_ambient, verts, facets)


def _full_dim_hull(points: list[Vec], n: int) -> IntegralPolytope:
    if n == 1:
        xs = [p[0] for p in points]
        lo, hi = min(xs), max(xs)
        facets = sorted([Facet((-1,), hi), Facet((1,), -lo)],
                        key=lambda f: f.normal)
        return IntegralPolytope(1, ((lo,), (hi,)), tuple(facets))
    facet_map: dict[Vec, int] = {}
    for subset in combinations(points, n):
        base = subset[0]
        diffs = [vsub(p, base) for p in subset[1:]]
        if mat_rank(diffs) != n - 1:
            continue
        normal = _nullspace_vector(diffs)
        if normal is None:
            continue
        vals = [dot(vsub(p, base), normal) for p in points]
        lo, hi = min(vals), max(vals)
        if lo == 0 and hi == 0:
            continue  # all points on the hyperplane: not full-dim here
        if lo == 0:
            pass  # inner normal already
        elif hi == 0:
            normal = tuple(-a for a in normal)
        else:
            continue  # hyperplane separates the points: not a face
        facet_map.setdefault(normal, -dot(base, normal))
    facets = tuple(Facet(nrm, off) for nrm, off in sorted(facet_map.items()))
    vertices = []
    for p in points:
        active = [f.normal for f in facets if dot(p, f.normal) == -f.offset]
        if len(active) >= n and mat_rank(active) == n:
            vertices.append(p)
    return IntegralPolytope(n, tuple(sorted(vertices)), facets)


def _scaled_coordinates(points: list[Vec], rank: int):
    """Affine coordinates of coplanar points in a rank-dimensional integer
    frame.  The map is an affine bijection onto its image, so extremeness of
    points is preserved; metric quantities are not (callers must not use the
    frame for volumes)."""
    base = points[0]
    basis: list[Vec] = []
    for p in points[1:]:
        d = vsub(p, base)
        if mat_rank(basis + [d]) > len(basis):
            basis.append(d)
            if len(basis) == rank:
                break
    bt = [[basis[j][i] for j in range(rank)] for i in range(len(base))]
    coords = []
    denom = 1
    for p in points:
        sol = _solve_unique(bt, vsub(p, base))
        if sol is None:
            raise GeometryError("points do not lie in the expected affine span")
        coords.append(sol)
        for x in sol:
            denom = denom * x.denominator // gcd(denom, x.denominator)
    scaled = [tuple(int(x * denom) for x in sol) for sol in coords]
    return scaled


def convex_hull(points) -> IntegralPolytope:
    """Convex hull of integer points.

    Full-dimensional hulls carry primitive-normal facets; lower-dimensional
    hulls carry vertices only and are flagged via facets=None.  Ambient
    dimensions above 4 are rejected.
    """
    pts = sorted({tuple(int(x) for x in p) for p in points})
    if not pts:
        raise GeometryError("convex hull of an empty point set")
    n = len(pts[0])
    if any(len(p) != n for p in pts):
        raise GeometryError("points of mixed dimension")
    if n > MAX_DIM:
        raise GeometryError(f"ambient dimension {n} exceeds the supported maximum {MAX_DIM}")
    if n == 0:
        return IntegralPolytope(0, ((),), ())
    rank = _affine_rank(pts)
    if rank == n:
        return _full_dim_hull(pts, n)
    if rank == 0:
        return IntegralPolytope(n, (pts[0],), None)
    scaled = _scaled_coordinates(pts, rank)
    back = {s: p for s, p in zip(scaled, pts)}
    inner = convex_hull(scaled)
    verts = tuple(sorted(back[v] for v in inner.vertices))
    return IntegralPolytope(n, verts, None)


def minkowski_sum(a: IntegralPolytope, b: IntegralPolytope) -> IntegralPolytope:
    if a.dim_ambient != b.dim_ambient:
        raise GeometryError("Minkowski sum of polytopes in different dimensions")
    return convex_hull([vadd(u, v) for u in a.vertices for v in b.vertices])


def minkowski_sum_all(polys) -> IntegralPolytope:
    polys = list(polys)
    if not polys:
        raise GeometryError("Minkowski sum of an empty family")
    acc = polys[0]
    for p in polys[1:]:
        acc = minkowski_sum(acc, p)
    return acc


def support_offsets(poly_or_points, normals) -> tuple[int, ...]:
    """Per-normal offsets a_j = -min over vertices of <v, eta_j>.

    The returned half-spaces {<u, eta_j> >= -a_j} cut out the polytope
    whenever the normal fan of the reference polytope refines its own."""
    if isinstance(poly_or_points, IntegralPolytope):
        pts = poly_or_points.vertices
    else:
        pts = tuple(tuple(p) for p in poly_or_points)
    if not pts:
        raise GeometryError("support offsets of an empty point set")
    return tuple(-min(dot(v, eta) for v in pts) for eta in normals)


def sign_pattern(delta, normals) -> tuple[int, ...]:
    """0/1 pattern with 1 exactly where <delta, eta_j> > 0.

    Invariant under positive rescaling of delta."""
    d = [Fraction(x) for x in delta]
    return tuple(1 if dot(d, eta) > 0 else 0 for eta in normals)


def ceil_shifts(delta, normals) -> tuple[int, ...]:
    """Exact facet shifts ceil(<delta, eta_j>).

    These give the integer form of translating a facet description by delta:
    m is in (R + delta) iff <m, eta_j> >= -c_j + ceil(<delta, eta_j>) for the
    offsets c of R.  For <delta, eta> in (-1, 1] this agrees with the 0/1
    sign pattern; outside that window the ceiling is the correct shift (the
    running examples exercise the value -1)."""
    d = [Fraction(x) for x in delta]
    return tuple(int(ceil(dot(d, eta))) for eta in normals)


def _check_bounded(normals, n):
    if n == 0:
        return
    if n == 1:
        if not (any(eta[0] > 0 for eta in normals) and any(eta[0] < 0 for eta in normals)):
            raise GeometryError("unbounded region: normals do not positively span")
        return
    if mat_rank(list(normals)) < n:
        raise GeometryError("unbounded region: normals do not span")
    for subset in combinations(normals, n - 1):
        if mat_rank(list(subset)) != n - 1:
            continue
        ray = _nullspace_vector(list(subset))
        if ray is None:
            continue
        for cand in (ray, tuple(-a for a in ray)):
            if all(dot(cand, eta) >= 0 for eta in normals):
                raise GeometryError("unbounded region: normals do not positively span")


def lattice_points(offsets, shifts, normals) -> list[Vec]:
    """All integer m with <m, eta_j> >= -offsets[j] + shifts[j] for every j,
    sorted lexicographically.

    Raises GeometryError when the half-spaces do not bound a region.  The
    scan box comes from exact vertex enumeration of the H-description."""
    normals = tuple(tuple(eta) for eta in normals)
    if not normals:
        return [()]
    n = len(normals[0])
    if n == 0:
        return [()]
    _check_bounded(normals, n)
    rhs = [Fraction(-off + sh) for off, sh in zip(offsets, shifts)]
    verts = []
    idx = range(len(normals))
    for subset in combinations(idx, n):
        rows = [normals[j] for j in subset]
        sol = _solve_unique(rows, [rhs[j] for j in subset])
        if sol is None:
            continue
        if all(dot(sol, normals[j]) >= rhs[j] for j in idx):
            verts.append(sol)
    if not verts:
        return []
    box = []
    for i in range(n):
        vals = [v[i] for v in verts]
        box.append(range(ceil(min(vals)), floor(max(vals)) + 1))
    out = []
    for m in product(*box):
        if all(dot(m, normals[j]) >= rhs[j] for j in idx):
            out.append(m)
    return out


def polytope_lattice_points(p: IntegralPolytope) -> list[Vec]:
    """Integer points of a full-dimensional polytope (no shift)."""
    offs = [f.offset for f in p.facets]
    return lattice_points(offs, [0] * len(offs), p.normals)


# ---------------------------------------------------------------------------
# volumes
# ---------------------------------------------------------------------------

def _triangulate(poly: IntegralPolytope) -> list[tuple[Vec, ...]]:
    """Simplices (as vertex tuples) decomposing a full-dimensional polytope:
    cones from the first vertex over recursively triangulated facets."""
    n = poly.dim_ambient
    verts = poly.vertices
    if len(verts) == n + 1:
        return [verts]
    if n == 1:
        return [verts]
    base = verts[0]
    simplices = []
    for f in poly.facets:
        if dot(base, f.normal) == -f.offset:
            continue
        on_facet = [v for v in verts if dot(v, f.normal) == -f.offset]
        scaled = _scaled_coordinates(on_facet, n - 1)
        back = {s: p for s, p in zip(scaled, on_facet)}
        sub = convex_hull(scaled)
        for simplex in _triangulate(sub):
            simplices.append((base,) + tuple(back[v] for v in simplex))
    return simplices


def euclidean_volume(poly: IntegralPolytope) -> Fraction:
    """Lebesgue volume; 0 for lower-dimensional polytopes."""
    n = poly.dim_ambient
    if n == 0:
        return Fraction(1)
    if not poly.is_full_dimensional:
        return Fraction(0)
    fact = 1
    for i in range(2, n + 1):
        fact *= i
    total = Fraction(0)
    for simplex in _triangulate(poly):
        rows = [vsub(v, simplex[0]) for v in simplex[1:]]
        total += Fraction(abs(_int_det(rows)), fact)
    return total


def _int_det(rows) -> int:
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    det = 0
    for j in range(n):
        if rows[0][j] == 0:
            continue
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = rows[0][j] * _int_det(minor)
        det += term if j % 2 == 0 else -term
    return det


def mixed_volume(polys) -> int:
    """Normalized mixed volume of n polytopes in dimension n.

    Inclusion-exclusion over Minkowski sums of subfamilies; normalized so
    that MV(P, ..., P) = n! Vol(P), the Bernstein root count."""
    polys = list(polys)
    if not polys:
        return 1  # empty product convention (ambient dimension 0)
    n = polys[0].dim_ambient
    if len(polys) != n:
        raise GeometryError(f"mixed volume needs exactly {n} polytopes, got {len(polys)}")
    if any(p.dim_ambient != n for p in polys):
        raise GeometryError("mixed volume arguments of mixed dimension")
    total = Fraction(0)
    for size in range(1, n + 1):
        sign = 1 if (n - size) % 2 == 0 else -1
        for subset in combinations(range(n), size):
            s = minkowski_sum_all([polys[i] for i in subset])
            total += sign * euclidean_volume(s)
    if total.denominator != 1:
        raise ArithmeticError("mixed volume of integral polytopes must be an integer")
    mv = int(total)
    if mv < 0:
        raise ArithmeticError("mixed volume must be non-negative")
    return mv
