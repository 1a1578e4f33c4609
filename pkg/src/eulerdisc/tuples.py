"""Combinatorics of tuples of point configurations.

Defect dimensions, essential subtuples, relevance, faces of tuples, facings
(faces of the Cayley configuration), importance, essential facings with
their adjacency relation, and dimension chains.

The defect dimension of a subtuple is dim(conv of the Minkowski sum) minus
the number of members; the empty subtuple has defect 0 (the empty sum is the
origin).
"""

from itertools import combinations

from .errors import ContradictionError, EulerdiscError
from .lattice import (
    PointConfiguration,
    convex_hull,
    support_face,
)
from .linalg import dot


class Tuple:
    """An indexed family of PointConfigurations sharing one ambient dimension."""

    __slots__ = ("ambient_dim", "members", "_sum_cache", "_dim_cache", "_face_cache")

    def __init__(self, members):
        members = tuple(members)
        if not members:
            raise EulerdiscError("empty tuple")
        dims = {m.ambient_dim for m in members}
        if len(dims) != 1:
            raise EulerdiscError("members have inconsistent ambient dimension")
        self.ambient_dim = dims.pop()
        self.members = members
        self._sum_cache = {}
        self._dim_cache = {}
        self._face_cache = None

    def __len__(self):
        return len(self.members)

    def __eq__(self, other):
        return isinstance(other, Tuple) and self.members == other.members

    def __hash__(self):
        return hash(self.members)

    def __repr__(self):
        return f"Tuple({list(self.members)})"

    def index_set(self):
        return tuple(range(len(self.members)))

    def subtuple(self, subset):
        return Tuple([self.members[j] for j in sorted(subset)])

    def sum_config(self, subset=None):
        """Minkowski sum (as a point set) of the members indexed by `subset`."""
        key = tuple(sorted(subset)) if subset is not None else self.index_set()
        hit = self._sum_cache.get(key)
        if hit is None:
            pts = [tuple(0 for _ in range(self.ambient_dim))]
            for j in key:
                mem = self.members[j].points
                pts = {tuple(a + b for a, b in zip(p, q)) for p in pts for q in mem}
            hit = PointConfiguration(self.ambient_dim, pts)
            self._sum_cache[key] = hit
        return hit

    def face_at(self, gamma):
        """The tuple face A^gamma (member-wise support faces at one covector)."""
        return TupleFace(self, tuple(support_face(m, gamma) for m in self.members), tuple(gamma))


def tuple_dim(a, subset=None):
    """Defect dim(conv of the subset sum) - |subset|; 0 for the empty subset."""
    key = tuple(sorted(subset)) if subset is not None else a.index_set()
    if any(j not in a.index_set() for j in key):
        raise EulerdiscError("subset outside the index set")
    hit = a._dim_cache.get(key)
    if hit is None:
        if not key:
            hit = 0
        else:
            hit = a.sum_config(key).dim() - len(key)
        a._dim_cache[key] = hit
    return hit


def min_dim(a):
    """Minimum defect over all subsets (including the empty one, so <= 0)."""
    return min(
        tuple_dim(a, s)
        for r in range(0, len(a) + 1)
        for s in combinations(a.index_set(), r)
    )


def maximal_essential_subtuple(a):
    """The unique minimal subset achieving min_dim; also the maximal essential one."""
    md = min_dim(a)
    inter = None
    for r in range(0, len(a) + 1):
        for s in combinations(a.index_set(), r):
            if tuple_dim(a, s) == md:
                inter = set(s) if inter is None else inter & set(s)
    out = tuple(sorted(inter))
    if tuple_dim(a, out) != md:
        raise ContradictionError("minimal minimizer fails to minimize")
    return out


def is_essential(a):
    """A tuple is essential when only the full index set attains min_dim."""
    return maximal_essential_subtuple(a) == a.index_set()


def is_relevant(a):
    """Every p+1 members sum to dimension >= p, and the full sum has dim n."""
    if a.sum_config().dim() != a.ambient_dim:
        return False
    for r in range(1, len(a) + 1):
        for s in combinations(a.index_set(), r):
            if tuple_dim(a, s) < -1:
                return False
    return True


class TupleFace:
    """A face of a tuple: member-wise support faces at a shared witness covector."""

    __slots__ = ("parent", "faces", "witness")

    def __init__(self, parent, faces, witness):
        self.parent = parent
        self.faces = faces
        self.witness = witness

    def key(self):
        return tuple(f.points for f in self.faces)

    def __eq__(self, other):
        return isinstance(other, TupleFace) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"TupleFace(witness={self.witness}, faces={list(self.faces)})"

    def as_tuple(self):
        return Tuple(self.faces)

    def sum_points(self):
        return self.as_tuple().sum_config().points

    def contains_face(self, other):
        """other <= self in the face order of the parent tuple."""
        mine = set(self.sum_points())
        return all(p in mine for p in other.sum_points())


def enumerate_faces(a):
    """All faces of the tuple: one per face of the normal fan of conv(sum A).

    Includes the trivial face (witness 0).  Witness covectors are relative
    interior points of the corresponding normal cones.
    """
    if a._face_cache is not None:
        return a._face_cache
    total = a.sum_config()
    hull = convex_hull(total).hull()
    out = []
    for face in hull.faces():
        gamma = hull.face_witness(face)
        out.append(a.face_at(gamma))
    # distinct faces of the sum give distinct tuple faces
    if len({f.key() for f in out}) != len(out):
        raise ContradictionError("face decomposition of the Minkowski sum collapsed")
    a._face_cache = tuple(sorted(out, key=lambda f: f.key()))
    return a._face_cache


class Facing:
    """A facing: support subset I plus nonempty parts, one face of the sub-sum.

    Identity is (support, parts); witness covectors are bookkeeping only.
    """

    __slots__ = ("support", "parts", "witness")

    def __init__(self, support, parts, witness=None):
        self.support = tuple(sorted(support))
        self.parts = tuple(parts)
        self.witness = witness
        if len(self.support) != len(self.parts):
            raise EulerdiscError("support/parts length mismatch")

    def key(self):
        return (self.support, tuple(p.points for p in self.parts))

    def __eq__(self, other):
        return isinstance(other, Facing) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"Facing(I={self.support}, parts={list(self.parts)})"

    def as_tuple(self):
        return Tuple(self.parts)

    def part_for(self, i):
        return self.parts[self.support.index(i)]

    def sum_dim(self):
        return self.as_tuple().sum_config().dim()

    def defect(self):
        """Vector-notation dim: dim(conv sum of parts) - |support|."""
        return self.sum_dim() - len(self.support)

    def is_trivial_for(self, a):
        return self.support == a.index_set() and all(
            p.points == m.points for p, m in zip(self.parts, a.members)
        )

    def is_subtuple_face(self, a):
        """True when every part equals the full member (the trivial face of AI)."""
        return all(
            p.points == a.members[i].points for i, p in zip(self.support, self.parts)
        )


def enumerate_facings(a):
    """All facings of the tuple, via faces of its full Cayley configuration."""
    from .discriminant import cayley_config

    k1 = len(a)
    n = a.ambient_dim
    cay = cayley_config(a, a.index_set())
    hull = convex_hull(cay).hull()
    seen = {}
    for face in hull.faces():
        gamma = hull.face_witness(face)
        pts = hull.support_face_points(gamma, cay.points)
        parts_by_i = {}
        for p in pts:
            lam, body = p[:k1], p[k1:]
            i = lam.index(1)
            parts_by_i.setdefault(i, set()).add(body)
        support = tuple(sorted(parts_by_i))
        parts = tuple(PointConfiguration(n, parts_by_i[i]) for i in support)
        f = Facing(support, parts, witness=gamma)
        seen.setdefault(f.key(), f)
    return tuple(sorted(seen.values(), key=lambda f: f.key()))


def is_facing(a, facing):
    """Check that (I, parts) really is a face of the subtuple AI."""
    sub = a.subtuple(facing.support)
    target = tuple(p.points for p in facing.parts)
    for g in _face_witnesses(sub):
        if tuple(support_face(m, g).points for m in sub.members) == target:
            return True
    return False


def _face_witnesses(a):
    total = a.sum_config()
    hull = convex_hull(total).hull()
    return [hull.face_witness(face) for face in hull.faces()]


def is_important(a, facing):
    """Importance of a facing per the witness-face scan.

    A facing is important exactly when its Milnor number is positive.  The
    literal scan (a face G of A with G|I = parts and defect(G|J) >= defect
    for every J containing I) needs two structural guards: when the facing
    is the whole subtuple AI of a proper I, or when its defect is not
    strictly below the defect of A, the Milnor sum ranges over an empty set
    of compositions and the facing cannot carry a divisor component.
    """
    if not is_facing(a, facing):
        raise EulerdiscError("not a facing of this tuple")
    if facing.is_trivial_for(a):
        return True
    if facing.is_subtuple_face(a):
        return False
    d_facing = facing.defect()
    if d_facing >= tuple_dim(a):
        return False
    i_set = set(facing.support)
    target = tuple(p.points for p in facing.parts)
    rest = [j for j in a.index_set() if j not in i_set]
    for g in enumerate_faces(a):
        if tuple(g.faces[i].points for i in facing.support) != target:
            continue
        gt = g.as_tuple()
        ok = True
        for r in range(len(rest) + 1):
            for extra in combinations(rest, r):
                j_set = tuple(sorted(i_set | set(extra)))
                if tuple_dim(gt, j_set) < d_facing:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return True
    return False


class EssentialFacing:
    """Maximal essential subtuple of a face, remembering all provenance faces."""

    __slots__ = ("support", "parts", "provenance")

    def __init__(self, support, parts, provenance):
        self.support = tuple(sorted(support))
        self.parts = tuple(parts)
        self.provenance = tuple(provenance)

    def key(self):
        return (self.support, tuple(p.points for p in self.parts))

    def __eq__(self, other):
        return isinstance(other, EssentialFacing) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"EssentialFacing(J={self.support}, parts={list(self.parts)})"

    def as_tuple(self):
        return Tuple(self.parts)

    def defect(self):
        return self.as_tuple().sum_config().dim() - len(self.support)

    def is_trivial_for(self, a):
        return all(
            p.points == a.members[j].points for j, p in zip(self.support, self.parts)
        )


def essential_facings(a):
    """All essential facings: maximal essential subtuples of faces of A."""
    found = {}
    for b in enumerate_faces(a):
        bt = b.as_tuple()
        j = maximal_essential_subtuple(bt)
        parts = tuple(b.faces[i] for i in j)
        key = (j, tuple(p.points for p in parts))
        if key in found:
            found[key][1].append(b)
        else:
            found[key] = (parts, [b])
    out = []
    for (j, _), (parts, provs) in sorted(found.items()):
        out.append(EssentialFacing(j, parts, provs))
    return tuple(out)


def adjacency(e, e_prime):
    """E adjacent to E': some provenance faces B of E, B' of E' satisfy B < B'."""
    for b in e.provenance:
        for bp in e_prime.provenance:
            if bp.contains_face(b):
                return True
    return False


def dimension_chain(a, e):
    """Essential facings E_1, ..., E_k with defects -1, ..., -k and E_k = E.

    Consecutive members are adjacent (E_i adjacent to E_{i-1}).  Existence
    for relevant A is a theorem; failure to find one is a contradiction and
    is raised loudly.
    """
    if not is_relevant(a):
        raise EulerdiscError("dimension chains need a relevant tuple")
    k = -e.defect()
    if k <= 0:
        raise EulerdiscError("dimension chains need defect < 0")
    all_ess = essential_facings(a)
    by_defect = {}
    for cand in all_ess:
        by_defect.setdefault(cand.defect(), []).append(cand)

    def extend(chain):
        head = chain[0]
        d = head.defect()
        if d == -1:
            return chain
        for cand in by_defect.get(d + 1, []):
            if adjacency(head, cand):
                done = extend([cand] + chain)
                if done is not None:
                    return done
        return None

    chain = extend([e])
    if chain is None:
        raise ContradictionError(
            "no adjacency chain found for an essential facing; this would "
            "falsify the adjacency theorem"
        )
    return chain


def covector_dimension(h, v, split_n):
    """Max fiber dimension of conv(sum of support faces) under projection to Z^n.

    For polytopes the maximal fiber dimension is attained over the relative
    interior of the image, so it equals dim of the hull minus dim of its
    image.
    """
    if len(v) != h.ambient_dim:
        raise EulerdiscError("covector dimension mismatch")
    if not (0 <= split_n <= h.ambient_dim):
        raise EulerdiscError("invalid split")
    faces = [support_face(m, v) for m in h.members]
    total = Tuple(faces).sum_config()
    proj = PointConfiguration(split_n, [p[:split_n] for p in total.points]) if split_n else None
    dim_total = total.dim()
    dim_image = proj.dim() if proj is not None else 0
    return dim_total - dim_image
