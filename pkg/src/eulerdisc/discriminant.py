"""Milnor numbers, Euler-discriminant divisors, degrees, Cayley configurations,
decomposition exponents, Euler obstructions and bifurcation-emptiness tests.

Composition conventions: all sums over exponent vectors range over POSITIVE
integer compositions.  Milnor numbers of the trivial facing use the
convention c = 1 (the empty composition), which makes the discriminant of
the full tuple enter the divisor with multiplicity equal to its lattice
index.
"""

from fractions import Fraction
from itertools import combinations

from .errors import ContradictionError, EulerdiscError
from .lattice import (
    PointConfiguration,
    apply_projection,
    convex_hull,
    lattice_index,
    mixed_moment,
    mixed_volume,
    projection_along,
)
from .linalg import dot, rank, snf_diagonal
from .tuples import (
    Facing,
    Tuple,
    enumerate_facings,
    is_facing,
    is_important,
    is_relevant,
    maximal_essential_subtuple,
    min_dim,
    tuple_dim,
)


def positive_compositions(total, parts):
    """All tuples of `parts` positive integers summing to `total`."""
    if parts == 0:
        return [()] if total == 0 else []
    if total < parts:
        return []
    out = []

    def rec(prefix, rest, slots):
        if slots == 1:
            out.append(prefix + (rest,))
            return
        for v in range(1, rest - slots + 2):
            rec(prefix + (v,), rest - v, slots - 1)

    rec((), total, parts)
    return out


def cayley_config(a, subset):
    """Cayley configuration of the subtuple: points (e_i, p) in Z^|I| + Z^n.

    The unit-vector block is indexed by the position of i within the sorted
    subset.
    """
    subset = tuple(sorted(subset))
    if not subset:
        raise EulerdiscError("Cayley configuration needs a nonempty index set")
    q = len(subset)
    pts = []
    for pos, i in enumerate(subset):
        e = tuple(1 if t == pos else 0 for t in range(q))
        for p in a.members[i].points:
            pts.append(e + p)
    return PointConfiguration(q + a.ambient_dim, pts)


def milnor_number(a, facing):
    """Mixed-volume Milnor number of the tuple at a facing.

    Projects along the affine span of the facing's Minkowski sum and sums
    mixed-volume differences over positive compositions of the codimension
    gap.  Trivial facing: 1 by convention.
    """
    if not is_facing(a, facing):
        raise EulerdiscError("not a facing of this tuple")
    if facing.is_trivial_for(a):
        return 1
    sum_parts = facing.as_tuple().sum_config()
    proj = projection_along(sum_parts)
    sub_sum = a.sum_config(facing.support)
    psi0 = apply_projection(proj, sub_sum)
    gamma_pts = set(sum_parts.points)
    leftover = [p for p in sub_sum.points if p not in gamma_pts]
    psi = (
        PointConfiguration(len(proj), [tuple(dot(r, p) for r in proj) for p in leftover])
        if leftover
        else None
    )
    outside = [j for j in a.index_set() if j not in facing.support]
    psis = [apply_projection(proj, a.members[j]) for j in outside]
    gap = a.sum_config().dim() - sum_parts.dim()
    total = Fraction(0)
    for comp in positive_compositions(gap, 1 + len(psis)):
        bodies = [psi0] * comp[0]
        for j, c in enumerate(comp[1:]):
            bodies.extend([psis[j]] * c)
        t_full = mixed_volume(*bodies)
        if psi is None:
            t_cut = Fraction(0)
        else:
            cut = [psi] * comp[0]
            for j, c in enumerate(comp[1:]):
                cut.extend([psis[j]] * c)
            t_cut = mixed_volume(*cut)
        total += t_full - t_cut
    if total < 0 or total.denominator != 1:
        raise ContradictionError(f"Milnor number came out {total}")
    return int(total)


def facing_index(facing):
    """Lattice index i of the facing: differences of its Minkowski sum."""
    return lattice_index(facing.as_tuple().sum_config())


class MilnorDatum:
    """Facing with its Milnor number, lattice index and Euler-characteristic jump."""

    __slots__ = ("facing", "milnor", "index", "jump")

    def __init__(self, facing, milnor, index, sign_exponent):
        self.facing = facing
        self.milnor = milnor
        self.index = index
        self.jump = (-1) ** sign_exponent * index * milnor

    def __repr__(self):
        return f"MilnorDatum({self.facing}, c={self.milnor}, i={self.index}, jump={self.jump})"


class EulerDivisor:
    """The effective divisor of degenerate systems: important facings with
    multiplicities i * c."""

    __slots__ = ("tuple", "components", "sign_exponent")

    def __init__(self, a, components, sign_exponent):
        self.tuple = a
        self.components = components
        self.sign_exponent = sign_exponent

    def multiplicity(self, facing):
        return self.components.get(facing.key(), 0)

    def total_degree(self):
        return sum(degree(self.tuple, i) for i in self.tuple.index_set())

    def __repr__(self):
        return f"EulerDivisor(sign=(-1)^{self.sign_exponent}, components={self.components})"


def euler_divisor(a):
    """Important facings with multiplicities i * c; loud check that importance
    and Milnor positivity agree."""
    if not is_relevant(a):
        raise EulerdiscError("Euler divisor needs a relevant tuple")
    comps = {}
    for facing in enumerate_facings(a):
        c = milnor_number(a, facing)
        imp = is_important(a, facing)
        if (c > 0) != imp:
            raise ContradictionError(
                f"importance scan ({imp}) disagrees with Milnor number {c} at {facing}"
            )
        if c > 0:
            comps[facing.key()] = facing_index(facing) * c
    n = a.ambient_dim
    k = len(a) - 1
    return EulerDivisor(a, comps, n - k)


def generic_euler_characteristic(a):
    """Signed sum of mixed-volume monomials over positive compositions of n."""
    n = a.ambient_dim
    k1 = len(a)
    if a.sum_config().dim() != n:
        raise EulerdiscError("degenerate span: the sum must be full-dimensional")
    acc = Fraction(0)
    for comp in positive_compositions(n, k1):
        bodies = []
        for j, c in enumerate(comp):
            bodies.extend([a.members[j]] * c)
        acc += mixed_volume(*bodies)
    sign = (-1) ** (n - (k1 - 1) - 1)
    val = sign * acc
    if val.denominator != 1:
        raise ContradictionError("Euler characteristic must be an integer")
    return int(val)


def degree(a, i):
    """Per-group homogeneity degree of the Euler discriminant."""
    if not is_relevant(a):
        raise EulerdiscError("degrees need a relevant tuple")
    n = a.ambient_dim
    k1 = len(a)
    acc = Fraction(0)
    for comp in positive_compositions(n + 1, k1):
        if comp[i] < 1:
            continue
        bodies = []
        for j, c in enumerate(comp):
            take = c - 1 if j == i else c
            bodies.extend([a.members[j]] * take)
        acc += comp[i] * mixed_volume(*bodies)
    if acc.denominator != 1 or acc < 0:
        raise ContradictionError(f"degree came out {acc}")
    return int(acc)


def quasidegree(a, v):
    """v-quasihomogeneity degree: v applied to the summed mixed moments."""
    if not is_relevant(a):
        raise EulerdiscError("degrees need a relevant tuple")
    n = a.ambient_dim
    k1 = len(a)
    total = [Fraction(0)] * n
    for comp in positive_compositions(n + 1, k1):
        bodies = []
        for j, c in enumerate(comp):
            bodies.extend([a.members[j]] * c)
        mm = mixed_moment(*bodies)
        for t in range(n):
            total[t] += mm[t]
    val = sum(Fraction(vi) * ti for vi, ti in zip(v, total))
    if val.denominator != 1:
        raise ContradictionError("quasidegree must be an integer")
    return int(val)


class DegreeVector:
    """Per-group degrees plus quasidegrees for supplied covectors."""

    __slots__ = ("degrees", "quasidegrees")

    def __init__(self, a, covectors=()):
        self.degrees = tuple(degree(a, i) for i in a.index_set())
        self.quasidegrees = tuple(quasidegree(a, v) for v in covectors)

    def __repr__(self):
        return f"DegreeVector(degrees={self.degrees}, quasidegrees={self.quasidegrees})"


def decomposition_exponents(a):
    """Exponents of the reduced-determinant factorization, keyed by index subset.

    Subsets qualify when the points of their Cayley configuration generate a
    full-rank lattice; the exponent is the signed quotient cardinality.
    """
    if not is_relevant(a):
        raise EulerdiscError("decomposition needs a relevant tuple")
    n = a.ambient_dim
    k1 = len(a)
    out = {}
    for r in range(1, k1 + 1):
        for subset in combinations(range(k1), r):
            cay = cayley_config(a, subset)
            pts = [list(p) for p in cay.points]
            if rank(pts) != n + r:
                continue
            divs = snf_diagonal(pts)
            idx = 1
            for d in divs:
                idx *= d
            sign = (-1) ** (k1 - r)
            out[subset] = sign * idx
    return out


def reduced_degree_of_config(config):
    """Total degree of the reduced principal determinant of one configuration.

    The single-support degree formula, evaluated in the lattice generated by
    the configuration's own differences (not its saturation).
    """
    pts = config.points
    p0 = pts[0]
    diffs = [tuple(x - y for x, y in zip(p, p0)) for p in pts[1:]]
    diffs = [d for d in diffs if any(x != 0 for x in d)]
    if not diffs:
        return 0
    basis = _lattice_basis(diffs)
    coords = [tuple(0 for _ in basis)]
    from .linalg import coordinates_in_basis

    for d in diffs:
        c = coordinates_in_basis(basis, d)
        if c is None or any(Fraction(x).denominator != 1 for x in c):
            raise ContradictionError("difference outside its own lattice")
        coords.append(tuple(int(x) for x in c))
    from .lattice import normalized_volume

    nd = len(basis)
    vol = normalized_volume(tuple(coords), dim=nd)
    val = (nd + 1) * vol
    if val.denominator != 1:
        raise ContradictionError("reduced degree must be an integer")
    return int(val)


def _lattice_basis(vectors):
    from .linalg import hnf

    return hnf(vectors)


class ObstructionTable:
    """Facing-indexed matrix (i_G * c^G_B) and its exact inverse.

    Rows are indexed by the facing B, columns by the facing G; nonzero
    entries need G to be a facing of B, so ordering facings by decreasing
    dimension of their Minkowski sum makes the matrix upper triangular.
    """

    __slots__ = ("tuple", "facings", "matrix", "inverse")

    def __init__(self, a, facings, matrix, inverse):
        self.tuple = a
        self.facings = facings
        self.matrix = matrix
        self.inverse = inverse

    def euler_obstruction(self, facing):
        """e^G_A: the inverse-matrix entry in the row of the trivial facing."""
        row = self.facings.index(self._trivial())
        col = self.facings.index(facing)
        return self.inverse[row][col]

    def obstruction_row(self):
        row = self.facings.index(self._trivial())
        return {f: self.inverse[row][j] for j, f in enumerate(self.facings)}

    def _trivial(self):
        for f in self.facings:
            if f.is_trivial_for(self.tuple):
                return f
        raise ContradictionError("trivial facing missing from the facing list")

    def __repr__(self):
        return f"ObstructionTable({len(self.facings)} facings)"


def milnor_within(b_facing, g_facing):
    """c^G_B: Milnor number of the facing G inside the tuple of the facing B.

    Zero unless G is a facing of B (support containment plus face-ness).
    """
    if not set(g_facing.support) <= set(b_facing.support):
        return 0
    bt = Tuple(b_facing.parts)
    pos = {i: t for t, i in enumerate(b_facing.support)}
    mapped = Facing(tuple(pos[i] for i in g_facing.support), g_facing.parts)
    # parts must sit inside the B-parts at the matching indices
    for i, part in zip(g_facing.support, g_facing.parts):
        if not set(part.points) <= set(b_facing.part_for(i).points):
            return 0
    if not is_facing(bt, mapped):
        return 0
    return milnor_number(bt, mapped)


def obstruction_table(a):
    """Build the (i_G c^G_B) matrix over all facings and invert it exactly."""
    if not is_relevant(a):
        raise EulerdiscError("obstruction tables need a relevant tuple")
    facings = sorted(
        enumerate_facings(a), key=lambda f: (-f.sum_dim(), f.key())
    )
    idx = {f.key(): facing_index(f) for f in facings}
    size = len(facings)
    matrix = [[Fraction(0)] * size for _ in range(size)]
    for row, b in enumerate(facings):
        for col, g in enumerate(facings):
            c = milnor_within(b, g)
            if c:
                matrix[row][col] = Fraction(idx[g.key()] * c)
    for row in range(size):
        for col in range(row):
            if matrix[row][col] != 0:
                raise ContradictionError("obstruction matrix is not upper triangular")
        if matrix[row][row] == 0:
            raise ContradictionError("singular obstruction matrix")
    from .linalg import matrix_inverse_exact

    inverse = matrix_inverse_exact(matrix)
    # exact sanity: M . M^-1 == I
    for i in range(size):
        for j in range(size):
            s = sum(matrix[i][t] * inverse[t][j] for t in range(size))
            if s != (1 if i == j else 0):
                raise ContradictionError("inverse verification failed")
    return ObstructionTable(a, facings, matrix, inverse)


def resultant_codim(a):
    """Codimension of the resultant set: -min_dim, clamped at zero."""
    return max(0, -min_dim(a))


def _projected_tuple(h, split_n):
    members = [
        PointConfiguration(split_n, [p[:split_n] for p in m.points]) for m in h.members
    ]
    return Tuple(members)


def _injective_over(h, subset, split_n):
    """Projection of conv(sum of the subset members) to R^n is injective?"""
    total = h.sum_config(tuple(subset))
    image = PointConfiguration(split_n, [p[:split_n] for p in total.points]) if split_n else None
    dim_total = total.dim()
    dim_image = image.dim() if image is not None else 0
    return dim_total == dim_image


def bifurcation_emptiness(h, split_n):
    """Emptiness of the bifurcation set for a parametric tuple with declared split.

    Case min-defect 0 (after projecting away the parameter block): empty iff
    the projection of the full sum is injective.  Case min-defect < 0: empty
    iff the projection of the sum over the maximal essential subtuple of the
    projected tuple is injective.
    """
    if not (0 <= split_n <= h.ambient_dim):
        raise EulerdiscError("invalid split")
    a = _projected_tuple(h, split_n)
    md = min_dim(a)
    if md == 0:
        if not is_relevant(a):
            raise EulerdiscError("independent case needs a relevant projected tuple")
        empty = _injective_over(h, a.index_set(), split_n)
        reason = (
            "projection of the full sum is injective"
            if empty
            else "projection of the full sum has a positive-dimensional fiber"
        )
        return {"empty": empty, "case": "independent", "reason": reason}
    subset = maximal_essential_subtuple(a)
    empty = _injective_over(h, subset, split_n)
    reason = (
        f"projection of the sum over the essential subtuple {subset} is injective"
        if empty
        else f"projection of the sum over the essential subtuple {subset} has a fiber"
    )
    return {"empty": empty, "case": "dependent", "reason": reason}
