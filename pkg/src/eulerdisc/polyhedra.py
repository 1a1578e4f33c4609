"""Exact polyhedral kernel: double description over Q, hulls, cones, faces.

All computations use integer arithmetic on primitive vectors (rational input
is scaled).  The central routine is `dd_cone`, a Motzkin double-description
pass with the combinatorial adjacency test; hulls, polars, feasibility and
face lattices are all derived from it.
"""

from fractions import Fraction
from math import gcd

from .linalg import (
    clear_denominators,
    dot,
    hnf,
    primitive,
    rank,
    scale_to_int,
)


def dd_cone(constraints, dim):
    """Extreme rays and lineality of the cone {x : a.x >= 0 for a in constraints}.

    `constraints` are integer tuples.  Returns (rays, lineality) as primitive
    integer tuples; rays are reduced modulo the lineality lattice and sorted,
    so the output is canonical.
    """
    cons = [tuple(a) for a in constraints if any(x != 0 for x in a)]
    lineality = [tuple(1 if i == j else 0 for j in range(dim)) for i in range(dim)]
    rays = []  # (vector, tight bitmask over processed constraint indices)
    for idx, a in enumerate(cons):
        lin_vals = [dot(a, l) for l in lineality]
        hit = next((j for j, v in enumerate(lin_vals) if v != 0), None)
        if hit is not None:
            w = lineality[hit]
            aw = lin_vals[hit]
            if aw < 0:
                w = tuple(-x for x in w)
                aw = -aw
            new_lin = []
            for j, l in enumerate(lineality):
                if j == hit:
                    continue
                if lin_vals[j] == 0:
                    new_lin.append(l)
                else:
                    new_lin.append(
                        primitive(tuple(aw * x - lin_vals[j] * y for x, y in zip(l, w)))
                    )
            lineality = new_lin
            new_rays = []
            for vec, mask in rays:
                av = dot(a, vec)
                if av == 0:
                    new_rays.append((vec, mask | (1 << idx)))
                else:
                    proj = primitive(tuple(aw * x - av * y for x, y in zip(vec, w)))
                    new_rays.append((proj, mask | (1 << idx)))
            # the removed lineality direction becomes a ray (tight on all
            # previously processed constraints)
            wmask = (1 << idx) - 1
            new_rays.append((w, wmask))
            rays = new_rays
            continue
        pos, zero, neg = [], [], []
        for vec, mask in rays:
            av = dot(a, vec)
            if av > 0:
                pos.append((vec, mask, av))
            elif av == 0:
                zero.append((vec, mask))
            else:
                neg.append((vec, mask, av))
        if not neg:
            rays = [(v, m) for v, m, _ in pos] + [(v, m | (1 << idx)) for v, m in zero]
            continue
        kept = [(v, m) for v, m, _ in pos] + [(v, m | (1 << idx)) for v, m in zero]
        all_masks = [m for _, m in rays]
        combos = {}
        for (vp, mp, ap) in pos:
            for (vn, mn, an) in neg:
                common = mp & mn
                if any(
                    (m & common) == common and m != mp and m != mn for m in all_masks
                ):
                    continue
                # an < 0, so this is a positive combination landing on a.x = 0
                combo = primitive(
                    tuple(ap * xn - an * xp for xp, xn in zip(vp, vn))
                )
                if all(x == 0 for x in combo):
                    continue
                if combo not in combos:
                    mask = 1 << idx
                    for j in range(idx):
                        if dot(cons[j], combo) == 0:
                            mask |= 1 << j
                    combos[combo] = mask
        rays = kept + sorted(combos.items())
    lineality = hnf(lineality)
    out = []
    seen = set()
    for vec, _ in rays:
        red = _reduce_mod_lattice(vec, lineality)
        red = primitive(red)
        if any(x != 0 for x in red) and red not in seen:
            seen.add(red)
            out.append(red)
    return sorted(out), [tuple(l) for l in lineality]


def _reduce_mod_lattice(vec, basis):
    """Reduce an integer vector modulo an HNF lattice basis (deterministic)."""
    v = list(vec)
    for b in basis:
        pc = next(j for j, x in enumerate(b) if x != 0)
        q = v[pc] // b[pc]
        if q:
            for j in range(len(v)):
                v[j] -= q * b[j]
    return tuple(v)


def cone_from_generators(rays, lineality, dim):
    """H-representation of cone(rays) + span(lineality).

    Returns (ineq_normals, eq_normals): the cone is
    {x : a.x >= 0 for a in ineqs, e.x == 0 for e in eqs}.
    """
    cons = [tuple(r) for r in rays]
    for l in lineality:
        cons.append(tuple(l))
        cons.append(tuple(-x for x in l))
    ineqs, eqs = dd_cone(cons, dim)
    return ineqs, eqs


# ---------------------------------------------------------------------------
# General polyhedra {x : A x >= b, E x = d}


class Polyhedron:
    """A rational polyhedron with cached H- and V-representations."""

    __slots__ = ("dim", "ineqs", "eqs", "_vrep")

    def __init__(self, dim, ineqs=(), eqs=()):
        self.dim = dim
        self.ineqs = [(_int_row(a), c) for a, c in (_norm_con(i) for i in ineqs)]
        self.eqs = [(_int_row(a), c) for a, c in (_norm_con(e) for e in eqs)]
        self._vrep = None

    @classmethod
    def from_generators(cls, dim, vertices=(), rays=(), lineality=()):
        verts = [tuple(Fraction(x) for x in v) for v in vertices]
        if not verts:
            raise ValueError("from_generators needs at least one base point")
        rr = [primitive(scale_to_int(r)) for r in rays]
        ll = hnf([scale_to_int(l) for l in lineality])
        gens = []
        for v in verts:
            iv, den = clear_denominators(v)
            gens.append((den,) + iv)
        for r in rr:
            gens.append((0,) + tuple(r))
        hom_lin = [(0,) + tuple(l) for l in ll]
        ineqs, eqs = cone_from_generators(gens, hom_lin, dim + 1)
        # each homogeneous normal (c, a) gives a.x >= -c; equalities likewise
        poly = cls.__new__(cls)
        poly.dim = dim
        poly.ineqs = []
        poly.eqs = []
        poly._vrep = None
        for row in ineqs:
            c, a = row[0], row[1:]
            if all(x == 0 for x in a):
                continue  # the inequality t >= 0 carries no x-information
            poly.ineqs.append((tuple(a), -c))
        for row in eqs:
            c, a = row[0], row[1:]
            if all(x == 0 for x in a):
                continue
            poly.eqs.append((tuple(a), -c))
        return poly

    # -- V-representation ---------------------------------------------------

    def vrep(self):
        """(vertices, rays, lineality); vertices are Fraction tuples."""
        if self._vrep is None:
            cons = [(-c,) + tuple(a) for a, c in self.ineqs]
            for a, c in self.eqs:
                cons.append((-c,) + tuple(a))
                cons.append((c,) + tuple(-x for x in a))
            cons.append((1,) + (0,) * self.dim)  # homogenizing t >= 0
            rays, lin = dd_cone(cons, self.dim + 1)
            verts, rrays = [], []
            for r in rays:
                t, vec = r[0], r[1:]
                if t > 0:
                    verts.append(tuple(Fraction(x, t) for x in vec))
                else:
                    rrays.append(primitive(vec))
            lineality = []
            for l in lin:
                if l[0] != 0:
                    # a lineality with t-component would contradict t >= 0
                    # being tight on lineality; split it into two rays
                    raise AssertionError("homogenization lineality with t != 0")
                lineality.append(primitive(l[1:]))
            self._vrep = (sorted(set(verts)), sorted(set(rrays)), hnf(lineality))
        return self._vrep

    def is_empty(self):
        verts, rays, lin = self.vrep()
        return not verts

    def a_point(self):
        """A relative-interior point (Fraction tuple), or None if empty."""
        verts, rays, lin = self.vrep()
        if not verts:
            return None
        pt = [Fraction(0)] * self.dim
        for v in verts:
            for j, x in enumerate(v):
                pt[j] += Fraction(x, len(verts))
        for r in rays:
            for j, x in enumerate(r):
                pt[j] += Fraction(x)
        return tuple(pt)

    def dimension(self):
        """Dimension of the polyhedron (-1 if empty)."""
        verts, rays, lin = self.vrep()
        if not verts:
            return -1
        v0 = verts[0]
        dirs = [tuple(Fraction(x) - Fraction(y) for x, y in zip(v, v0)) for v in verts[1:]]
        dirs += [tuple(Fraction(x) for x in r) for r in rays]
        dirs += [tuple(Fraction(x) for x in l) for l in lin]
        dirs = [d for d in dirs if any(x != 0 for x in d)]
        if not dirs:
            return 0
        return rank(dirs)

    def intersect(self, other):
        assert self.dim == other.dim
        return Polyhedron(self.dim, self.ineqs + other.ineqs, self.eqs + other.eqs)

    def translate(self, t):
        t = tuple(Fraction(x) for x in t)
        ineqs = []
        for a, c in self.ineqs:
            ineqs.append((a, Fraction(c) + sum(ai * ti for ai, ti in zip(a, t))))
        eqs = []
        for a, c in self.eqs:
            eqs.append((a, Fraction(c) + sum(ai * ti for ai, ti in zip(a, t))))
        return Polyhedron(self.dim, ineqs, eqs)

    def contains(self, x):
        x = [Fraction(v) for v in x]
        return all(dot(a, x) >= c for a, c in self.ineqs) and all(
            dot(a, x) == c for a, c in self.eqs
        )

    def max_along(self, a):
        """sup of a.x over the polyhedron: (value, bounded) with value=None if empty."""
        verts, rays, lin = self.vrep()
        if not verts:
            return None, True
        if any(dot(a, r) > 0 for r in rays) or any(dot(a, l) != 0 for l in lin):
            return None, False
        return max(dot(a, [Fraction(x) for x in v]) for v in verts), True


def _norm_con(con):
    """Normalize (a, c) with rational entries to primitive integer data."""
    a, c = con
    row = [Fraction(x) for x in a] + [Fraction(c)]
    ints, _ = clear_denominators(row)
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    if g > 1:
        ints = tuple(x // g for x in ints)
    return ints[:-1], ints[-1]


def _int_row(a):
    return tuple(int(x) for x in a)


# ---------------------------------------------------------------------------
# Convex hulls of point sets


class Hull:
    """Convex hull of finitely many rational points, with face machinery.

    Facets are stored as (normal, offset) with normal.x >= offset over the
    hull; equality holds exactly on the facet.  With the package-wide
    min-convention a facet's stored normal is an inner normal whose support
    face is that facet.
    """

    __slots__ = ("dim", "points", "vertices", "facets", "span_eqs", "_vertex_index", "_faces")

    def __init__(self, points):
        pts = [tuple(Fraction(x) for x in p) for p in points]
        if not pts:
            raise ValueError("empty point set has no hull")
        self.dim = len(pts[0])
        uniq = sorted(set(pts))
        gens = []
        for p in uniq:
            iv, den = clear_denominators(p)
            gens.append((den,) + iv)
        normals, eqs = cone_from_generators(gens, [], self.dim + 1)
        facets = []
        for row in normals:
            c, a = row[0], row[1:]
            if all(x == 0 for x in a):
                continue
            facets.append((tuple(a), -c))
        span_eqs = []
        for row in eqs:
            c, a = row[0], row[1:]
            if all(x == 0 for x in a):
                continue
            span_eqs.append((tuple(a), -c))
        self.points = uniq
        self.facets = sorted(facets)
        self.span_eqs = sorted(span_eqs)
        # vertices: points whose tight constraints pin them down uniquely
        verts = []
        for p in uniq:
            tight = [a for a, c in self.facets if dot(a, p) == c]
            tight += [a for a, _ in self.span_eqs]
            if tight and rank(tight) == self.dim:
                verts.append(p)
            elif not tight and self.dim == 0:
                verts.append(p)
        if not verts:
            # a single point (possibly in dim 0) or duplicate-free degenerate
            verts = uniq if len(uniq) == 1 else verts
        self.vertices = sorted(verts)
        self._vertex_index = {v: i for i, v in enumerate(self.vertices)}
        self._faces = None

    def hull_dim(self):
        return self.dim - len(self.span_eqs)

    def facet_vertex_sets(self):
        out = []
        for a, c in self.facets:
            out.append(frozenset(i for i, v in enumerate(self.vertices) if dot(a, v) == c))
        return out

    def faces(self):
        """All nonempty faces as sorted vertex-index frozensets (incl. the hull)."""
        if self._faces is None:
            full = frozenset(range(len(self.vertices)))
            facet_sets = self.facet_vertex_sets()
            seen = {full}
            frontier = [full]
            while frontier:
                nxt = []
                for face in frontier:
                    for fs in facet_sets:
                        s = face & fs
                        if s and s not in seen:
                            seen.add(s)
                            nxt.append(s)
                frontier = nxt
            self._faces = sorted(seen, key=lambda s: (len(s), sorted(s)))
        return self._faces

    def face_dim(self, face):
        vs = [self.vertices[i] for i in face]
        if len(vs) == 1:
            return 0
        v0 = vs[0]
        return rank([tuple(x - y for x, y in zip(v, v0)) for v in vs[1:]])

    def face_witness(self, face):
        """An integer covector minimized exactly on the given face."""
        gamma = [0] * self.dim
        for a, c in self.facets:
            if all(dot(a, self.vertices[i]) == c for i in face):
                for j in range(self.dim):
                    gamma[j] += a[j]
        return tuple(gamma)

    def support_face_points(self, gamma, points=None):
        """Subset of `points` (default: stored point set) minimizing gamma."""
        pts = self.points if points is None else points
        vals = [dot(gamma, p) for p in pts]
        lo = min(vals)
        return [p for p, v in zip(pts, vals) if v == lo]

    def normal_cone(self, face):
        """Min-convention normal cone of a face: {g : face subset of argmin g}."""
        vs = [self.vertices[i] for i in sorted(face)]
        v0 = vs[0]
        cons = []
        eqs = []
        for w in vs[1:]:
            eqs.append(tuple(x - y for x, y in zip(w, v0)))
        for v in self.vertices:
            d = tuple(x - y for x, y in zip(v, v0))
            if any(x != 0 for x in d):
                cons.append(d)
        ineqs = [(scale_to_int(c), 0) for c in cons]
        eq_rows = [(scale_to_int(e), 0) for e in eqs if any(x != 0 for x in e)]
        return Polyhedron(self.dim, ineqs, eq_rows)
