"""Exact geometry of lattice point configurations and rational polytopes.

Hulls, support faces, normalized volumes, mixed volumes and moments, lattice
indices and quotient projections.  Sign convention used package-wide: the
support face X^g is the subset of X where the covector g attains its
MINIMUM (and X^0 = X).
"""

from fractions import Fraction
from math import factorial
from itertools import combinations

from .errors import EulerdiscError
from .linalg import (
    coordinates_in_basis,
    dot,
    lattice_index_of,
    primitive,
    quotient_map,
    rank,
    saturation_basis,
    scale_to_int,
    vec_gcd,
)
from .polyhedra import Hull


class PointConfiguration:
    """A finite set of integer lattice points in a declared ambient dimension."""

    __slots__ = ("ambient_dim", "points")

    def __init__(self, ambient_dim, points):
        pts = sorted({tuple(int(x) for x in p) for p in points})
        if not pts:
            raise EulerdiscError("empty point configuration")
        for p in pts:
            if len(p) != ambient_dim:
                raise EulerdiscError("point dimension mismatch")
        self.ambient_dim = ambient_dim
        self.points = tuple(pts)

    def __eq__(self, other):
        return (
            isinstance(other, PointConfiguration)
            and self.ambient_dim == other.ambient_dim
            and self.points == other.points
        )

    def __hash__(self):
        return hash((self.ambient_dim, self.points))

    def __repr__(self):
        return f"PointConfiguration(dim={self.ambient_dim}, points={list(self.points)})"

    def __len__(self):
        return len(self.points)

    def dim(self):
        """Dimension of the convex hull."""
        return _span_dim(self.points)

    def translate(self, t):
        return PointConfiguration(
            self.ambient_dim, [tuple(x + y for x, y in zip(p, t)) for p in self.points]
        )

    def minkowski(self, other):
        assert self.ambient_dim == other.ambient_dim
        return PointConfiguration(
            self.ambient_dim,
            {tuple(x + y for x, y in zip(p, q)) for p in self.points for q in other.points},
        )


class Polytope:
    """A rational polytope stored by its canonical vertex set."""

    __slots__ = ("ambient_dim", "vertices", "_hull")

    def __init__(self, ambient_dim, vertices, _hull=None):
        vs = sorted({tuple(Fraction(x) for x in p) for p in vertices})
        if not vs:
            raise EulerdiscError("empty polytope")
        self.ambient_dim = ambient_dim
        if _hull is None:
            _hull = Hull(vs)
            vs = _hull.vertices
        self.vertices = tuple(vs)
        self._hull = _hull

    def hull(self):
        return self._hull

    def __eq__(self, other):
        return (
            isinstance(other, Polytope)
            and self.ambient_dim == other.ambient_dim
            and self.vertices == other.vertices
        )

    def __hash__(self):
        return hash((self.ambient_dim, self.vertices))

    def __repr__(self):
        return f"Polytope(dim={self.ambient_dim}, vertices={list(self.vertices)})"

    def dim(self):
        return self._hull.hull_dim()

    def facets(self):
        """(normal, offset) pairs with normal.x >= offset over the polytope."""
        return self._hull.facets

    def minkowski(self, other):
        assert self.ambient_dim == other.ambient_dim
        pts = {
            tuple(x + y for x, y in zip(p, q))
            for p in self.vertices
            for q in other.vertices
        }
        return Polytope(self.ambient_dim, pts)

    def dilate(self, k):
        k = Fraction(k)
        if k < 0:
            raise EulerdiscError("negative dilation")
        return Polytope(self.ambient_dim, [tuple(k * x for x in v) for v in self.vertices])

    def translate(self, t):
        return Polytope(
            self.ambient_dim,
            [tuple(Fraction(x) + Fraction(y) for x, y in zip(v, t)) for v in self.vertices],
        )

    def canonical_translate(self):
        """Translate so the lexicographically minimal vertex sits at the origin."""
        v0 = min(self.vertices)
        return self.translate(tuple(-x for x in v0))

    def is_lattice(self):
        return all(all(Fraction(x).denominator == 1 for x in v) for v in self.vertices)


def canonical_covector(gamma):
    """Primitive representative of a covector (gcd 1 unless zero)."""
    return primitive(scale_to_int(gamma))


def convex_hull(config):
    """Convex hull of a configuration as a Polytope with canonical vertices."""
    if isinstance(config, PointConfiguration):
        pts = config.points
        dim = config.ambient_dim
    else:
        pts = list(config)
        if not pts:
            raise EulerdiscError("empty configuration")
        dim = len(pts[0])
    h = Hull(pts)
    return Polytope(dim, h.vertices, _hull=h)


def support_face(x, gamma):
    """Support face x^gamma: the subset/face where gamma is minimal (x^0 = x)."""
    gamma = tuple(gamma)
    if isinstance(x, PointConfiguration):
        if len(gamma) != x.ambient_dim:
            raise EulerdiscError("covector dimension mismatch")
        vals = [dot(gamma, p) for p in x.points]
        lo = min(vals)
        return PointConfiguration(
            x.ambient_dim, [p for p, v in zip(x.points, vals) if v == lo]
        )
    if isinstance(x, Polytope):
        if len(gamma) != x.ambient_dim:
            raise EulerdiscError("covector dimension mismatch")
        vals = [dot(gamma, v) for v in x.vertices]
        lo = min(vals)
        return Polytope(x.ambient_dim, [v for v, w in zip(x.vertices, vals) if w == lo])
    raise EulerdiscError(f"unsupported argument {type(x)!r}")


# ---------------------------------------------------------------------------
# Volumes


_VOL_CACHE = {}
_TRI_CACHE = {}


def _span_dim(points):
    p0 = points[0]
    diffs = [tuple(Fraction(x) - Fraction(y) for x, y in zip(p, p0)) for p in points[1:]]
    diffs = [d for d in diffs if any(x != 0 for x in d)]
    if not diffs:
        return 0
    return rank(diffs)


def _span_lattice_coords(points):
    """Coordinates of the points over the lattice of their affine span.

    The basis is the HNF basis of the saturation of the integer direction
    space, so lattice points get integer coordinates.
    """
    p0 = points[0]
    diffs = [tuple(Fraction(x) - Fraction(y) for x, y in zip(p, p0)) for p in points]
    int_dirs = [scale_to_int(d) for d in diffs if any(x != 0 for x in d)]
    if not int_dirs:
        return [() for _ in points], 0
    basis = saturation_basis(int_dirs)
    coords = []
    for d in diffs:
        c = coordinates_in_basis(basis, d)
        assert c is not None
        coords.append(tuple(c))
    return coords, len(basis)


def triangulate_point_set(points):
    """Simplices (tuples of points) triangulating the hull, vertices from `points`.

    Recursive cone-over-facet construction: fan from the lexicographically
    smallest vertex over the facets avoiding it.  Deterministic.
    """
    key = tuple(sorted({tuple(Fraction(x) for x in p) for p in points}))
    hit = _TRI_CACHE.get(key)
    if hit is not None:
        return hit
    h = Hull(key)
    s = h.hull_dim()
    if s == 0:
        out = [(h.vertices[0],)]
    else:
        v0 = h.vertices[0]
        out = []
        for a, c in h.facets:
            if dot(a, v0) == c:
                continue
            fpts = [p for p in h.points if dot(a, p) == c]
            for sub in triangulate_point_set(fpts):
                out.append(sub + (v0,))
    _TRI_CACHE[key] = out
    return out


def normalized_volume(p, dim=None):
    """Normalized volume d! * Vol in the lattice of the affine span.

    With `dim` given, returns 0 whenever the affine span has a different
    dimension (used by the formal mixed-volume monomial convention).
    """
    pts = p.vertices if isinstance(p, Polytope) else (
        p.points if isinstance(p, PointConfiguration) else tuple(p)
    )
    key = tuple(sorted({tuple(Fraction(x) for x in q) for q in pts}))
    cached = _VOL_CACHE.get(key)
    if cached is None:
        coords, d = _span_lattice_coords(key)
        if d == 0:
            cached = (Fraction(0), 0)
        else:
            coord_of = dict(zip(key, coords))
            total = Fraction(0)
            for simplex in triangulate_point_set(key):
                cs = [coord_of[q] for q in simplex]
                mat = [tuple(x - y for x, y in zip(c, cs[0])) for c in cs[1:]]
                total += abs(_det_fraction(mat))
            cached = (total, d)
        _VOL_CACHE[key] = cached
    total, d = cached
    if dim is not None and d != dim:
        return Fraction(0)
    return total


def _det_fraction(mat):
    n = len(mat)
    if n == 0:
        return Fraction(1)
    m = [[Fraction(x) for x in row] for row in mat]
    det = Fraction(1)
    for c in range(n):
        piv = None
        for i in range(c, n):
            if m[i][c] != 0:
                piv = i
                break
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        inv = 1 / m[c][c]
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] * inv
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return det


def _as_vertex_set(p):
    if isinstance(p, Polytope):
        return p.vertices
    if isinstance(p, PointConfiguration):
        return convex_hull(p).vertices
    return Polytope(len(tuple(p)[0]), p).vertices


def mixed_volume(*polytopes):
    """Formal mixed-volume monomial of m bodies in a common ambient space.

    Zero unless the affine span of the Minkowski sum is exactly m-dimensional;
    otherwise the normalized mixed volume in the lattice of that span,
    computed by inclusion-exclusion of Euclidean span-lattice volumes.
    Symmetric and Minkowski-multilinear; diagonal value is the normalized
    volume.
    """
    m = len(polytopes)
    if m == 0:
        raise EulerdiscError("mixed volume needs at least one body")
    verts = [_as_vertex_set(p) for p in polytopes]
    dims = {len(v[0]) for v in verts}
    if len(dims) != 1:
        raise EulerdiscError("ambient dimension mismatch")
    total = _minkowski_vertex_sets(verts)
    if _span_dim(tuple(total)) != m:
        return Fraction(0)
    acc = Fraction(0)
    for r in range(1, m + 1):
        sign = 1 if (m - r) % 2 == 0 else -1
        for subset in combinations(range(m), r):
            pts = _minkowski_vertex_sets([verts[i] for i in subset])
            nv = normalized_volume(tuple(pts), dim=m)
            if nv:
                acc += sign * nv
    mv = acc / factorial(m)
    return mv


def _minkowski_vertex_sets(vert_lists):
    acc = [tuple(Fraction(0) for _ in vert_lists[0][0])]
    for vl in vert_lists:
        acc = {tuple(x + y for x, y in zip(p, q)) for p in acc for q in vl}
        acc = Hull(acc).vertices  # prune to extreme points to keep sets small
    return tuple(sorted(acc))


def moment_vector(p):
    """Exact moment integral of x over the body, w.r.t. ambient Lebesgue measure.

    Zero vector when the body is lower-dimensional.
    """
    verts = _as_vertex_set(p)
    n = len(verts[0])
    if _span_dim(tuple(verts)) < n:
        return tuple(Fraction(0) for _ in range(n))
    total = [Fraction(0)] * n
    for simplex in triangulate_point_set(verts):
        mat = [tuple(x - y for x, y in zip(c, simplex[0])) for c in simplex[1:]]
        vol = abs(_det_fraction(mat)) / factorial(n)
        if vol == 0:
            continue
        for j in range(n):
            centroid_j = sum(Fraction(v[j]) for v in simplex) / (n + 1)
            total[j] += vol * centroid_j
    return tuple(total)


def mixed_moment(*polytopes):
    """Mixed moment of n+1 bodies in R^n: the symmetric Minkowski-multilinear
    vector-valued polarization with diagonal value (n+1)! * integral of x.

    The (n+1)! diagonal normalization is what makes the univariate
    quasidegree bookkeeping come out integral; see the module docs.
    """
    verts = [_as_vertex_set(p) for p in polytopes]
    n = len(verts[0][0])
    if len(polytopes) != n + 1:
        raise EulerdiscError(f"mixed moment needs {n + 1} bodies in R^{n}")
    total = [Fraction(0)] * n
    for r in range(1, n + 2):
        sign = 1 if (n + 1 - r) % 2 == 0 else -1
        for subset in combinations(range(n + 1), r):
            pts = _minkowski_vertex_sets([verts[i] for i in subset])
            mv = moment_vector(tuple(pts))
            for j in range(n):
                total[j] += sign * mv[j]
    return tuple(total)


def lattice_index(config):
    """Index of the saturation over the lattice of pairwise differences."""
    if isinstance(config, PointConfiguration):
        pts = config.points
    else:
        pts = sorted({tuple(int(x) for x in p) for p in config})
    if not pts:
        raise EulerdiscError("empty configuration")
    p0 = pts[0]
    diffs = [tuple(x - y for x, y in zip(p, p0)) for p in pts[1:]]
    return lattice_index_of(diffs)


def projection_along(s):
    """The quotient projection matrix Z^n -> Z^(n-r) killing s's difference lattice.

    Deterministic (Smith column transform).  Rows of the returned matrix are
    the coordinate functionals of the quotient.
    """
    n = s.ambient_dim
    p0 = s.points[0]
    diffs = [tuple(a - b for a, b in zip(p, p0)) for p in s.points[1:]]
    diffs = [d for d in diffs if any(v != 0 for v in d)]
    sub = saturation_basis(diffs) if diffs else []
    return quotient_map(sub, n)


def apply_projection(proj, config):
    """Image configuration under a quotient projection matrix."""
    return PointConfiguration(
        len(proj), [tuple(dot(row, p) for row in proj) for p in config.points]
    )


def project_along(x, s):
    """Image of x in the quotient of Z^n by the saturated difference lattice of s."""
    if x.ambient_dim != s.ambient_dim:
        raise EulerdiscError("ambient dimension mismatch")
    return apply_projection(projection_along(s), x)
