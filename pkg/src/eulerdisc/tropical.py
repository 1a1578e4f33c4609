"""Weighted balanced fans: dual complexes, stable intersections, tropical
intersection numbers, stable images, and the boundary-purity verifier.

Only conical complexes are supported; every object in scope (dual complexes,
their stable intersections, boundary tests against polyhedra) is conical or
reduced to the conical case.  Stable intersections use a deterministic
seeded generic displacement, recomputed with a second draw that must agree.
"""

import random
from fractions import Fraction

from .errors import ContradictionError, DegenerateOffsetError, EulerdiscError
from .linalg import (
    dot,
    hnf,
    primitive,
    quotient_map,
    rank,
    saturation_basis,
    scale_to_int,
    snf_diagonal,
    solve_exact,
    vsub,
)
from .polyhedra import Polyhedron, cone_from_generators, dd_cone


class Cone:
    """A rational polyhedral cone given by rays and lineality (canonical)."""

    __slots__ = ("ambient_dim", "rays", "lineality", "_hrep", "_span")

    def __init__(self, ambient_dim, rays=(), lineality=()):
        self.ambient_dim = ambient_dim
        rr = sorted({primitive(scale_to_int(r)) for r in rays if any(x != 0 for x in r)})
        ll = hnf([scale_to_int(l) for l in lineality])
        # canonicalize: reduce rays modulo lineality, rebuild through DD so the
        # stored generators are exactly the extreme rays
        if rr or ll:
            cons = [tuple(r) for r in rr] + [tuple(l) for l in ll] + [
                tuple(-x for x in l) for l in ll
            ]
            polar_rays, polar_lin = dd_cone(cons, ambient_dim)
            back_cons = list(polar_rays) + list(polar_lin) + [
                tuple(-x for x in l) for l in polar_lin
            ]
            rr2, ll2 = dd_cone(back_cons, ambient_dim)
            self.rays = tuple(rr2)
            self.lineality = tuple(ll2)
            self._hrep = (tuple(polar_rays), tuple(polar_lin))
        else:
            self.rays = ()
            self.lineality = ()
            self._hrep = None
        self._span = None

    def key(self):
        return (self.rays, self.lineality)

    def __eq__(self, other):
        return isinstance(other, Cone) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"Cone(rays={list(self.rays)}, lin={list(self.lineality)})"

    def hrep(self):
        """(inequality normals, equality normals) cutting out the cone."""
        if self._hrep is None:
            self._hrep = cone_from_generators(
                [(0,) * self.ambient_dim] if False else list(self.rays),
                list(self.lineality),
                self.ambient_dim,
            )
        return self._hrep

    def dim(self):
        gens = list(self.rays) + list(self.lineality)
        if not gens:
            return 0
        return rank(gens)

    def span_basis(self):
        if self._span is None:
            gens = list(self.rays) + list(self.lineality)
            self._span = tuple(saturation_basis(gens)) if gens else ()
        return self._span

    def contains(self, x):
        ineqs, eqs = self.hrep()
        return all(dot(a, x) >= 0 for a in ineqs) and all(dot(a, x) == 0 for a in eqs)

    def relint_point(self):
        pt = [Fraction(0)] * self.ambient_dim
        for r in self.rays:
            for j, x in enumerate(r):
                pt[j] += x
        return tuple(pt)

    def intersect(self, other):
        i1, e1 = self.hrep()
        i2, e2 = other.hrep()
        cons = list(i1) + list(i2)
        for e in list(e1) + list(e2):
            cons.append(tuple(e))
            cons.append(tuple(-x for x in e))
        rays, lin = dd_cone(cons, self.ambient_dim)
        return Cone(self.ambient_dim, rays, lin)

    def facets(self):
        """Codimension-1 faces, one per irredundant inequality."""
        ineqs, eqs = self.hrep()
        out = []
        for a in ineqs:
            cons = list(ineqs)
            for e in eqs:
                cons.append(tuple(e))
                cons.append(tuple(-x for x in e))
            cons.append(tuple(-x for x in a))
            rays, lin = dd_cone(cons, self.ambient_dim)
            face = Cone(self.ambient_dim, rays, lin)
            if face.dim() == self.dim() - 1:
                out.append((a, face))
        return out

    def as_polyhedron(self):
        ineqs, eqs = self.hrep()
        return Polyhedron(
            self.ambient_dim,
            ineqs=[(a, 0) for a in ineqs],
            eqs=[(a, 0) for a in eqs],
        )


ZERO_CONE_OK = True


class WeightedFan:
    """A pure-dimensional fan with positive rational weights on maximal cones."""

    __slots__ = ("ambient_dim", "cells")

    def __init__(self, ambient_dim, cells, validate=True):
        merged = {}
        for cone, w in cells:
            w = Fraction(w)
            if w == 0:
                continue
            if w < 0:
                raise EulerdiscError("fan weights must be positive")
            k = cone.key()
            if k in merged:
                merged[k] = (cone, merged[k][1] + w)
            else:
                merged[k] = (cone, w)
        self.ambient_dim = ambient_dim
        self.cells = tuple(sorted(merged.values(), key=lambda cw: cw[0].key()))
        if validate and self.cells:
            self.validate()

    def is_empty(self):
        return not self.cells

    def dim(self):
        return self.cells[0][0].dim() if self.cells else -1

    def weight_at_origin(self):
        """Total weight when the fan is the single zero cone (else error)."""
        if self.dim() != 0:
            raise EulerdiscError("fan is not zero-dimensional")
        return sum(w for _, w in self.cells)

    def validate(self):
        d = self.dim()
        for cone, w in self.cells:
            if cone.dim() != d:
                raise ContradictionError("fan is not pure-dimensional")
            if w <= 0:
                raise ContradictionError("non-positive weight")
            if d > 0 and not (cone.rays or cone.lineality):
                raise ContradictionError("positive-dimensional cone without rays")
        if d > 0:
            self._check_balancing()
        return True

    def _check_balancing(self):
        n = self.ambient_dim
        walls = {}
        for cone, w in self.cells:
            for a, face in cone.facets():
                walls.setdefault(face.key(), (face, []))[1].append((cone, w))
        for key, (face, incident) in walls.items():
            tau_basis = list(face.span_basis())
            q = quotient_map([tuple(b) for b in tau_basis], n)
            acc = None
            for cone, w in incident:
                img = None
                for g in list(cone.rays) + list(cone.lineality):
                    cand = tuple(dot(row, g) for row in q)
                    if any(x != 0 for x in cand):
                        # orient into the cone side: rays point in, lineality
                        # generators may need a sign fixed via containment
                        if g in cone.lineality and not cone.contains(g):
                            cand = tuple(-x for x in cand)
                        img = primitive(cand)
                        break
                if img is None:
                    raise ContradictionError("facet-incident cone with no side vector")
                if acc is None:
                    acc = [Fraction(0)] * len(img)
                for j, x in enumerate(img):
                    acc[j] += w * x
            if acc is not None and any(x != 0 for x in acc):
                raise ContradictionError("balancing fails at a codimension-1 cone")


def _edge_lattice_length(v, w):
    d = vsub(w, v)
    prim = scale_to_int(d)
    # d = length * prim with length the lattice length
    for j, x in enumerate(prim):
        if x != 0:
            return Fraction(d[j]) / x
    raise EulerdiscError("zero edge")


def dual_fan(p):
    """Dual complex of a polytope: normal cones of positive-dimensional faces.

    Maximal cones are the normal cones of edges, weighted by lattice length.
    The dual complex of a point is the empty fan.
    """
    hull = p.hull()
    n = p.ambient_dim
    cells = []
    for face in hull.faces():
        if hull.face_dim(face) != 1:
            continue
        vs = [hull.vertices[i] for i in sorted(face)]
        # edge with exactly two vertices
        ends = [vs[0], vs[-1]]
        weight = _edge_lattice_length(ends[0], ends[1])
        nc = hull.normal_cone(face)
        verts, rays, lin = nc.vrep()
        cells.append((Cone(n, rays, lin), weight))
    return WeightedFan(n, cells)


def _displacement(seed, n, scale=10**6):
    rng = random.Random(("displacement", seed))
    return tuple(rng.randrange(-scale, scale + 1) for _ in range(n))


def _meets_displaced(sigma, tau, v):
    """Is sigma intersect (tau + v) nonempty?"""
    i1, e1 = sigma.hrep()
    i2, e2 = tau.hrep()
    ineqs = [(a, 0) for a in i1] + [(a, dot(a, v)) for a in i2]
    eqs = [(a, 0) for a in e1] + [(a, dot(a, v)) for a in e2]
    return not Polyhedron(sigma.ambient_dim, ineqs=ineqs, eqs=eqs).is_empty()


def _span_index(b1, b2, n):
    """[Z^n : Z_1 + Z_2] for saturated span lattices with full combined rank."""
    rows = [tuple(b) for b in b1] + [tuple(b) for b in b2]
    if rank(rows) != n:
        raise ContradictionError("span sum not full-dimensional")
    idx = 1
    for d in snf_diagonal(rows):
        idx *= d
    return idx


def _stable_intersection_once(f, g, v):
    n = f.ambient_dim
    expected = f.dim() + g.dim() - n
    if expected < 0:
        return WeightedFan(n, [])
    cells = []
    for sigma, ws in f.cells:
        for tau, wt in g.cells:
            if not _meets_displaced(sigma, tau, v):
                continue
            cell = sigma.intersect(tau)
            if cell.dim() != expected:
                raise DegenerateOffsetError("displacement hit a degenerate pair")
            idx = _span_index(sigma.span_basis(), tau.span_basis(), n)
            cells.append((cell, ws * wt * idx))
    return WeightedFan(n, cells)


def stable_intersection(f, g, seed=0):
    """Fan displacement rule with two agreeing deterministic generic draws."""
    if f.ambient_dim != g.ambient_dim:
        raise EulerdiscError("ambient dimension mismatch")
    if f.is_empty() or g.is_empty():
        return WeightedFan(f.ambient_dim, [])
    results = []
    attempts = 0
    draw = 0
    while len(results) < 2 and attempts < 12:
        attempts += 1
        v = _displacement((seed, draw), f.ambient_dim)
        draw += 1
        try:
            results.append(_stable_intersection_once(f, g, v))
        except DegenerateOffsetError:
            continue
    if len(results) < 2:
        raise ContradictionError("no generic displacement found")
    a, b = results
    if sorted((c.key(), w) for c, w in a.cells) != sorted(
        (c.key(), w) for c, w in b.cells
    ):
        raise ContradictionError("stable intersections disagree between displacements")
    return a


def tropical_intersection_number(fan, basis, offset=None, seed=0, samples=3):
    """Weighted lattice-index count of transverse meetings with an affine space.

    `basis` spans the linear direction of the space; the offset is either
    supplied (raising DegenerateOffsetError on non-generic position) or
    sampled deterministically until `samples` generic offsets agree.
    """
    n = fan.ambient_dim
    dirs = [scale_to_int(b) for b in basis]
    if rank(dirs) != len(dirs):
        raise EulerdiscError("affine space basis is dependent")
    if fan.is_empty():
        return Fraction(0)
    if fan.dim() + len(dirs) != n:
        raise EulerdiscError("complementary dimension required")
    if offset is not None:
        return _intersection_number_at(fan, dirs, offset)
    rng = random.Random(("offset", seed))
    values = []
    guard = 0
    while len(values) < samples and guard < 60:
        guard += 1
        off = tuple(
            Fraction(rng.randrange(-10**6, 10**6 + 1), rng.randrange(1, 97))
            for _ in range(n)
        )
        try:
            values.append(_intersection_number_at(fan, dirs, off))
        except DegenerateOffsetError:
            continue
    if len(values) < samples:
        raise ContradictionError("no generic offset found")
    if len(set(values)) != 1:
        raise ContradictionError("intersection number depends on the offset")
    return values[0]


def _intersection_number_at(fan, dirs, offset):
    n = fan.ambient_dim
    l_eqs = saturation_basis(dirs)
    normal_rows = _orthogonal_complement_rows(l_eqs, n)
    total = Fraction(0)
    l_lattice = saturation_basis(dirs) if dirs else []
    for cone, w in fan.cells:
        ineqs, eqs = cone.hrep()
        rows = [tuple(r) for r in normal_rows] + [tuple(e) for e in eqs]
        rhs = [dot(r, offset) for r in normal_rows] + [0] * len(eqs)
        if rank(rows) != n:
            raise DegenerateOffsetError("affine space not transverse to a cone span")
        x = solve_exact(rows, rhs)
        if x is None:
            continue
        vals_ineq = [dot(a, x) for a in ineqs]
        if any(v < 0 for v in vals_ineq):
            continue
        if any(v == 0 for v in vals_ineq):
            raise DegenerateOffsetError("offset hits a cone boundary")
        idx = _span_index(l_lattice, cone.span_basis(), n)
        total += w * idx
    return total


def _orthogonal_complement_rows(basis, n):
    """Integer rows spanning {a : a . b = 0 for b in basis}."""
    from .linalg import kernel_int

    if not basis:
        return [tuple(1 if i == j else 0 for j in range(n)) for i in range(n)]
    return kernel_int([tuple(b) for b in basis])


def stable_image(fan, pi_rows, validate=True):
    """Pushforward along an integer linear map, keeping full-dimensional images.

    Image cones are refined to a common fan; weights push forward with the
    index of the image lattice inside the saturated lattice of the image span.
    """
    if fan.is_empty():
        return WeightedFan(len(pi_rows), [])
    n = fan.ambient_dim
    m = len(pi_rows)
    d = fan.dim()
    images = []
    for cone, w in fan.cells:
        img_rays = [tuple(dot(r, g) for r in pi_rows) for g in cone.rays]
        img_lin = [tuple(dot(r, g) for r in pi_rows) for g in cone.lineality]
        img = Cone(m, img_rays, img_lin)
        if img.dim() != d:
            continue
        # index of pi(Z_sigma) inside the saturation of the image span
        pushed = [tuple(dot(r, b) for r in pi_rows) for b in cone.span_basis()]
        divs = snf_diagonal(pushed)
        idx = 1
        for dv in divs:
            idx *= dv
        images.append((img, w * idx))
    if not images:
        return WeightedFan(m, [])
    # refine all image cones by every wall hyperplane appearing among them
    hyperplanes = set()
    for img, _ in images:
        ineqs, eqs = img.hrep()
        for a in list(ineqs) + list(eqs):
            hyperplanes.add(primitive(a) if a[0] >= 0 else primitive(tuple(-x for x in a)))
    hyperplanes = sorted(h for h in hyperplanes if any(x != 0 for x in h))
    pieces = {}
    for img, wt in images:
        parts = [img]
        for h in hyperplanes:
            nxt = []
            for c in parts:
                for side in (h, tuple(-x for x in h)):
                    ineqs, eqs = c.hrep()
                    cons = list(ineqs) + [side]
                    for e in eqs:
                        cons.append(tuple(e))
                        cons.append(tuple(-x for x in e))
                    rays, lin = dd_cone(cons, m)
                    piece = Cone(m, rays, lin)
                    if piece.dim() == d:
                        nxt.append(piece)
            parts = nxt
        for piece in parts:
            k = piece.key()
            if k in pieces:
                pieces[k] = (piece, pieces[k][1] + wt)
            else:
                pieces[k] = (piece, wt)
    return WeightedFan(m, list(pieces.values()), validate=validate)


class OpenPolyhedron:
    """Closure plus per-facet strictness flags (the spec's open polyhedra)."""

    __slots__ = ("dim", "ineqs", "eqs")

    def __init__(self, dim, ineqs, eqs=()):
        # ineqs: (normal, offset, strict)
        self.dim = dim
        self.ineqs = tuple((tuple(a), Fraction(c), bool(s)) for a, c, s in ineqs)
        self.eqs = tuple((tuple(a), Fraction(c)) for a, c in eqs)

    def closure(self):
        return Polyhedron(
            self.dim,
            ineqs=[(a, c) for a, c, _ in self.ineqs],
            eqs=list(self.eqs),
        )

    def cell_meets_open(self, poly):
        """Does a polyhedron inside the closure meet the open part?

        By convexity it does iff its sup along every strict facet normal is
        strictly above the offset.
        """
        verts, rays, lin = poly.vrep()
        if not verts:
            return False
        for a, c, strict in self.ineqs:
            if not strict:
                continue
            val, bounded = poly.max_along(a)
            if val is None:
                return False
            if not bounded:
                continue
            if val <= c:
                return False
        return True

    def contains_affine_span(self, base, directions):
        for a, c, strict in self.ineqs:
            if any(dot(a, d) != 0 for d in directions):
                return False
            v = dot(a, base)
            if strict and v <= c:
                return False
            if not strict and v < c:
                return False
        for a, c in self.eqs:
            if any(dot(a, d) != 0 for d in directions):
                return False
            if dot(a, base) != c:
                return False
        return True


class PurityReport:
    __slots__ = (
        "ambient_dim",
        "fan_dim",
        "poly_dim",
        "expected_dim",
        "cell_count",
        "intersection_dims",
        "boundary_dims",
        "components",
        "violations",
    )

    def __init__(self, **kw):
        for k in self.__slots__:
            setattr(self, k, kw[k])

    def ok(self):
        return not self.violations

    def to_dict(self):
        return {k: getattr(self, k) for k in self.__slots__}


def purity_check(fan, open_poly):
    """Verify boundary purity of the stable intersection with an open polyhedron.

    For a fan T of dimension k and a full-dimensional open P: (1) every cell
    of S = T meet P has dimension k; (2) the closure of S meets the boundary
    of P in dimension exactly k-1, or not at all; (3) the trace is empty iff
    every connected component of S lies in an affine subspace inside P.
    """
    n = fan.ambient_dim
    closure = open_poly.closure()
    poly_dim = closure.dimension()
    if poly_dim != n:
        raise EulerdiscError("purity_check expects a full-dimensional polyhedron")
    k = fan.dim()
    violations = []
    cells = []
    for cone, w in fan.cells:
        piece = cone.as_polyhedron().intersect(closure)
        if piece.is_empty():
            continue
        if not open_poly.cell_meets_open(piece):
            continue
        cells.append((cone, piece))
    inter_dims = sorted({p.dimension() for _, p in cells})
    if cells and inter_dims != [k]:
        violations.append(f"stable intersection has cell dimensions {inter_dims}, expected [{k}]")
    # boundary trace
    boundary_dims = []
    for a, c, strict in open_poly.ineqs:
        wall = Polyhedron(n, ineqs=[], eqs=[(a, c)])
        for _, piece in cells:
            tr = piece.intersect(wall).intersect(closure)
            if not tr.is_empty():
                boundary_dims.append(tr.dimension())
    boundary_dim = max(boundary_dims) if boundary_dims else None
    if boundary_dims and boundary_dim != k - 1:
        violations.append(
            f"boundary trace has dimension {boundary_dim}, expected {k - 1} or empty"
        )
    # components of S and the affine-subspace criterion
    comp_of = list(range(len(cells)))

    def find(i):
        while comp_of[i] != i:
            comp_of[i] = comp_of[comp_of[i]]
            i = comp_of[i]
        return i

    for i in range(len(cells)):
        for j in range(i + 1, len(cells)):
            meet = cells[i][1].intersect(cells[j][1])
            if not meet.is_empty() and open_poly.cell_meets_open(meet):
                ri, rj = find(i), find(j)
                if ri != rj:
                    comp_of[ri] = rj
    groups = {}
    for i in range(len(cells)):
        groups.setdefault(find(i), []).append(i)
    components = []
    for members in groups.values():
        base = None
        dirs = []
        for i in members:
            verts, rays, lin = cells[i][1].vrep()
            if base is None:
                base = verts[0]
            for v in verts:
                d = vsub(v, base)
                if any(x != 0 for x in d):
                    dirs.append(d)
            dirs.extend(tuple(Fraction(x) for x in r) for r in rays)
            dirs.extend(tuple(Fraction(x) for x in l) for l in lin)
        contained = open_poly.contains_affine_span(base, dirs)
        components.append({"cells": len(members), "span_inside_open_poly": contained})
    all_in_affine = all(c["span_inside_open_poly"] for c in components) if components else True
    trace_empty = not boundary_dims
    if trace_empty != all_in_affine:
        violations.append(
            "emptiness criterion mismatch: trace_empty="
            f"{trace_empty} but affine-containment={all_in_affine}"
        )
    return PurityReport(
        ambient_dim=n,
        fan_dim=k,
        poly_dim=poly_dim,
        expected_dim=k,
        cell_count=len(cells),
        intersection_dims=inter_dims,
        boundary_dims=sorted(set(boundary_dims)),
        components=components,
        violations=violations,
    )
