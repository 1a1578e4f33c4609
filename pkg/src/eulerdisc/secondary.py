"""Regular (coherent) triangulations and mixed secondary polytopes.

Triangulations are enumerated exhaustively by a canonical ridge-extension
search seeded at the unique simplex containing a generic interior point, so
every triangulation of the configuration appears exactly once.  Regularity
is certified by an exact LP lift and re-verified by recomputing the induced
regular subdivision from the certificate.
"""

from fractions import Fraction
from itertools import combinations

from .errors import ContradictionError, EulerdiscError
from .lattice import (
    PointConfiguration,
    Polytope,
    _span_lattice_coords,
    convex_hull,
    normalized_volume,
)
from .linalg import coordinates_in_basis, dot, scale_to_int
from .polyhedra import Hull
from .simplex import strict_homogeneous_feasible


class Triangulation:
    """A triangulation of a point configuration, with an optional lift witness."""

    __slots__ = ("config", "simplices", "lift")

    def __init__(self, config, simplices, lift=None):
        self.config = config
        self.simplices = tuple(sorted(tuple(sorted(s)) for s in simplices))
        self.lift = lift

    def key(self):
        return self.simplices

    def __eq__(self, other):
        return isinstance(other, Triangulation) and self.simplices == other.simplices

    def __hash__(self):
        return hash(self.simplices)

    def __repr__(self):
        return f"Triangulation({len(self.simplices)} simplices)"


def _config_coords(config):
    """Integer coordinates of the configuration in its span lattice."""
    pts = config.points
    coords, d = _span_lattice_coords(pts)
    out = []
    for c in coords:
        if any(Fraction(x).denominator != 1 for x in c):
            raise ContradictionError("lattice point with fractional span coordinates")
        out.append(tuple(int(x) for x in c))
    return out, d


def _simplex_volume(coords, simplex):
    base = coords[simplex[0]]
    mat = [tuple(x - y for x, y in zip(coords[i], base)) for i in simplex[1:]]
    from .linalg import det_bareiss

    return abs(det_bareiss(mat))


def _facet_normals(coords, facet, d):
    """Integer normals of the affine hull of a facet (kernel of its directions)."""
    from .linalg import kernel_int

    base = coords[facet[0]]
    mat = [tuple(x - y for x, y in zip(coords[i], base)) for i in facet[1:]]
    mat = [m for m in mat if any(x != 0 for x in m)]
    if not mat:
        return [tuple(1 if j == t else 0 for j in range(d)) for t in range(d)]
    return kernel_int(mat)


def _interior_probe(coords, d, candidates):
    """A rational interior point avoiding every candidate facet hyperplane."""
    pts = [tuple(Fraction(x) for x in p) for p in coords]
    centroid = tuple(sum(p[j] for p in pts) / len(pts) for j in range(d))
    hyperplanes = set()
    for simplex in candidates:
        for facet in combinations(simplex, d):
            base = coords[facet[0]]
            for nr in _facet_normals(coords, facet, d):
                hyperplanes.add((tuple(nr), dot(nr, base)))
    hull = Hull(coords)
    for attempt in range(1, 200):
        eps = Fraction(1, 7 ** attempt)
        probe = tuple(
            centroid[j] + eps * Fraction(1, (j + 2) ** attempt) for j in range(d)
        )
        if not hull_contains_strict(hull, probe):
            continue
        if all(dot(nr, probe) != c for nr, c in hyperplanes):
            return probe
    raise ContradictionError("no generic interior probe found")


def hull_contains_strict(hull, x):
    return all(dot(a, x) > c for a, c in hull.facets) and all(
        dot(a, x) == c for a, c in hull.span_eqs
    )


def all_triangulations(config):
    """Every triangulation of the configuration (vertices among its points).

    Exhaustive at desk scale: canonical ridge-extension from the unique
    simplex containing a generic interior probe point.
    """
    coords, d = _config_coords(config)
    npts = len(coords)
    if d == 0:
        return [Triangulation(config, [(0,)])]
    candidates = []
    for simplex in combinations(range(npts), d + 1):
        if _simplex_volume(coords, simplex) != 0:
            candidates.append(tuple(simplex))
    if not candidates:
        raise EulerdiscError("degenerate configuration")
    hull = Hull(coords)
    total_volume = normalized_volume(tuple(coords), dim=d)
    probe = _interior_probe(coords, d, candidates)
    vols = {s: _simplex_volume(coords, s) for s in candidates}

    frac_coords = [tuple(Fraction(x) for x in p) for p in coords]

    def barycentric_signs(simplex, x):
        """Signs of x's barycentric coordinates in the simplex (all > 0 = interior)."""
        base = frac_coords[simplex[0]]
        cols = [
            tuple(a - b for a, b in zip(frac_coords[i], base)) for i in simplex[1:]
        ]
        rhs = tuple(a - b for a, b in zip(x, base))
        sol = coordinates_in_basis(cols, rhs)
        if sol is None:
            return None
        lam0 = 1 - sum(sol)
        return (lam0,) + tuple(sol)

    seeds = []
    for s in candidates:
        lams = barycentric_signs(s, probe)
        if lams is not None and all(l > 0 for l in lams):
            seeds.append(s)

    def facet_side_fn(facet):
        """Affine functional vanishing on the facet (integer, primitive)."""
        nr = _facet_normals(coords, facet, d)[0]
        return nr, dot(nr, coords[facet[0]])

    # precompute hull-boundary test per facet hyperplane: a facet of a placed
    # simplex is on the boundary when all configuration points sit weakly on
    # one side of its hyperplane
    def on_hull_boundary(facet):
        nr, c = facet_side_fn(facet)
        vals = [dot(nr, p) - c for p in coords]
        return all(v >= 0 for v in vals) or all(v <= 0 for v in vals)

    boundary_cache = {}

    def facet_closed_on_boundary(facet):
        hit = boundary_cache.get(facet)
        if hit is None:
            hit = on_hull_boundary(facet)
            boundary_cache[facet] = hit
        return hit

    simplex_polys = {}

    def poly_of(simplex):
        hit = simplex_polys.get(simplex)
        if hit is None:
            hit = Hull([coords[i] for i in simplex])
            simplex_polys[simplex] = hit
        return hit

    def proper_pair(s1, s2):
        shared = set(s1) & set(s2)
        h1, h2 = poly_of(s1), poly_of(s2)
        ineqs = [(a, c) for a, c in h1.facets] + [(a, c) for a, c in h2.facets]
        eqs = [(a, c) for a, c in h1.span_eqs] + [(a, c) for a, c in h2.span_eqs]
        from .polyhedra import Polyhedron

        inter = Polyhedron(d, ineqs=ineqs, eqs=eqs)
        verts, rays, lin = inter.vrep()
        if rays or lin:
            raise ContradictionError("unbounded simplex intersection")
        if not verts:
            return True
        target = sorted(
            Hull([frac_coords[i] for i in shared]).vertices
        ) if shared else None
        if target is None:
            return False
        if sorted(verts) != target:
            return False
        return True

    results = []

    def free_ridges(placed, facet_count):
        out = []
        for facet, cnt in facet_count.items():
            if cnt == 1 and not facet_closed_on_boundary(facet):
                out.append(facet)
        return sorted(out)

    def extend(placed, facet_count, vol_sum):
        if vol_sum > total_volume:
            return
        ridges = free_ridges(placed, facet_count)
        if not ridges:
            if vol_sum == total_volume:
                results.append(Triangulation(config, list(placed)))
            return
        ridge = ridges[0]
        nr, c = facet_side_fn(ridge)
        # the placed simplex on this ridge sits on one side; neighbors on the other
        owner = next(s for s in placed if set(ridge) <= set(s))
        apex = next(i for i in owner if i not in ridge)
        owner_side = dot(nr, coords[apex]) - c
        assert owner_side != 0
        for q in range(npts):
            if q in ridge:
                continue
            side = dot(nr, coords[q]) - c
            if side == 0 or (side > 0) == (owner_side > 0):
                continue
            cand = tuple(sorted(ridge + (q,)))
            if cand in placed or vols.get(cand, 0) == 0:
                continue
            if not all(proper_pair(cand, s) for s in placed):
                continue
            new_count = dict(facet_count)
            for facet in combinations(cand, d):
                facet = tuple(sorted(facet))
                new_count[facet] = new_count.get(facet, 0) + 1
                if new_count[facet] > 2:
                    break
            else:
                extend(placed | {cand}, new_count, vol_sum + vols[cand])

    for seed in seeds:
        fc = {}
        for facet in combinations(seed, d):
            fc[tuple(sorted(facet))] = 1
        extend({seed}, fc, vols[seed])

    uniq = {}
    for t in results:
        uniq[t.key()] = t
    out = sorted(uniq.values(), key=lambda t: t.key())
    if len(out) != len(results):
        raise ContradictionError("duplicate triangulations generated")
    return out


def regularity_certificate(config, triangulation):
    """Strictly convex lift inducing the triangulation, or None."""
    coords, d = _config_coords(config)
    frac_coords = [tuple(Fraction(x) for x in p) for p in coords]
    rows = set()
    npts = len(coords)
    for simplex in triangulation.simplices:
        sset = set(simplex)
        base = frac_coords[simplex[0]]
        cols = [tuple(a - b for a, b in zip(frac_coords[i], base)) for i in simplex[1:]]
        for q in range(npts):
            if q in sset:
                continue
            rhs = tuple(a - b for a, b in zip(frac_coords[q], base))
            sol = coordinates_in_basis(cols, rhs)
            assert sol is not None  # q lies in the full-dimensional span
            lams = (1 - sum(sol),) + tuple(sol)
            # strict condition: w_q - sum lam_i w_{s_i} > 0
            row = [Fraction(0)] * npts
            row[q] += 1
            for lam, i in zip(lams, simplex):
                row[i] -= lam
            rows.add(scale_to_int(row))
    if not rows:
        # every point is a vertex of the single simplex: any lift certifies
        return tuple(Fraction(0) for _ in range(npts))
    return strict_homogeneous_feasible(sorted(rows))


def induced_subdivision(config, lift):
    """Cells of the regular subdivision induced by a lift (index frozensets).

    Computed independently of the LP route: support faces of the lifted
    configuration at covectors with positive last coordinate.
    """
    coords, d = _config_coords(config)
    lifted = [tuple(p) + (Fraction(w),) for p, w in zip(coords, lift)]
    scaled = []
    den = 1
    from math import lcm

    for v in lifted:
        den = lcm(den, Fraction(v[-1]).denominator)
    for v in lifted:
        scaled.append(tuple(int(Fraction(x) * den) for x in v))
    hull = Hull(scaled)
    cells = set()
    for a, c in hull.facets:
        if a[-1] <= 0:
            continue
        members = frozenset(
            i for i, p in enumerate(scaled) if dot(a, p) == c
        )
        cells.add(members)
    if not cells:
        # lift affine on everything: single cell
        cells.add(frozenset(range(len(coords))))
    return cells


def coherent_triangulations(config):
    """All regular triangulations, each carrying a verified lift certificate."""
    if isinstance(config, PointConfiguration):
        pass
    else:
        config = PointConfiguration(len(tuple(config)[0]), config)
    out = []
    for t in all_triangulations(config):
        w = regularity_certificate(config, t)
        if w is None:
            continue
        cells = induced_subdivision(config, w)
        if cells != {frozenset(s) for s in t.simplices}:
            raise ContradictionError("lift certificate does not reproduce the triangulation")
        out.append(Triangulation(config, t.simplices, lift=w))
    return out


def cayley_groups(a):
    """Coordinate labels [(i, point), ...] for the full Cayley configuration."""
    labels = []
    for i in a.index_set():
        for p in a.members[i].points:
            labels.append((i, p))
    return labels


def triangulation_monomial(a, triangulation):
    """Exponent vector of the triangulation monomial in the (i, point) coordinates.

    The exponent of (i, p) sums the volumes of the simplices having (e_i, p)
    as a vertex whose every other group contributes at least two vertices.
    """
    from .discriminant import cayley_config

    cay = cayley_config(a, a.index_set())
    if triangulation.config != cay:
        raise EulerdiscError("triangulation does not triangulate the Cayley configuration")
    coords, d = _config_coords(cay)
    k1 = len(a)
    labels = cayley_groups(a)
    label_pos = {lab: t for t, lab in enumerate(labels)}
    pt_index = {p: t for t, p in enumerate(cay.points)}
    expo = [0] * len(labels)
    for simplex in triangulation.simplices:
        vol = _simplex_volume(coords, simplex)
        group_count = [0] * k1
        members = []
        for idx in simplex:
            p = cay.points[idx]
            lam, body = p[:k1], p[k1:]
            i = lam.index(1)
            group_count[i] += 1
            members.append((i, body))
        for i, body in members:
            if all(group_count[j] >= 2 for j in range(k1) if j != i):
                expo[label_pos[(i, body)]] += vol
    return tuple(expo)


def secondary_vertex_vectors(a):
    """All triangulation monomial exponent vectors of the tuple (sorted)."""
    from .tuples import is_relevant
    from .discriminant import cayley_config

    if not is_relevant(a):
        raise EulerdiscError("mixed secondary polytope needs a relevant tuple")
    cay = cayley_config(a, a.index_set())
    vectors = set()
    for t in coherent_triangulations(cay):
        vectors.add(triangulation_monomial(a, t))
    return sorted(vectors)


def mixed_secondary_polytope(a):
    """Convex hull of the triangulation monomial exponents: the Newton polytope
    of the Euler discriminant."""
    vectors = secondary_vertex_vectors(a)
    return Polytope(len(vectors[0]), vectors)
