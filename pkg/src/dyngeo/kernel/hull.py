"""Randomized incremental 3D convex hull over exact homogeneous points.

This is the workhorse behind static hull counts, lower envelopes (via
duality) and the vertex-form cutting builder.  Conflict tracking uses the
one-bucket-per-point scheme: every unprocessed point remembers one facet
it lies strictly beyond, and on insertion the full visible region is
recovered by a breadth-first walk.  Points of dead facets are retested
against the new cone facets only; under general position a point outside
the updated hull is always strictly beyond one of them.
"""

from fractions import Fraction

from ..errors import DegeneracyError
from ..opcount import ops_add
from ..rat import homog_reduce
from .geom import orient3d_h


class RankDeficiencyError(Exception):
    """Input points are not full-dimensional (affine rank < 3)."""

    def __init__(self, rank, basis):
        super().__init__(f"point set has affine rank {rank}")
        self.rank = rank
        self.basis = basis  # indices of an affine basis found so far


class Facet:
    __slots__ = ("a", "b", "c", "plane", "nbr", "pts", "alive", "stamp")

    def __init__(self, a, b, c, plane):
        self.a = a
        self.b = b
        self.c = c
        self.plane = plane          # (nx, ny, nz, d): outside iff dot > 0
        self.nbr = [None, None, None]  # across edges (a,b), (b,c), (c,a)
        self.pts = []
        self.alive = True
        self.stamp = -1

    def corners(self):
        return (self.a, self.b, self.c)

    def edge(self, i):
        co = (self.a, self.b, self.c)
        return (co[i], co[(i + 1) % 3])


def facet_plane(p, q, r):
    """Plane coefficients (nx, ny, nz, d) with dot(plane, s) equal to the
    homogeneous orient3d determinant of (p, q, r, s)."""
    ops_add()
    x1, y1, z1, w1 = p
    x2, y2, z2, w2 = q
    x3, y3, z3, w3 = r
    nx = -(y1 * (z2 * w3 - z3 * w2) - z1 * (y2 * w3 - y3 * w2)
           + w1 * (y2 * z3 - y3 * z2))
    ny = (x1 * (z2 * w3 - z3 * w2) - z1 * (x2 * w3 - x3 * w2)
          + w1 * (x2 * z3 - x3 * z2))
    nz = -(x1 * (y2 * w3 - y3 * w2) - y1 * (x2 * w3 - x3 * w2)
           + w1 * (x2 * y3 - x3 * y2))
    d = (x1 * (y2 * z3 - y3 * z2) - y1 * (x2 * z3 - x3 * z2)
         + z1 * (x2 * y3 - x3 * y2))
    return (nx, ny, nz, d)


def plane_side(plane, pt):
    ops_add()
    v = plane[0] * pt[0] + plane[1] * pt[1] + plane[2] * pt[2] + plane[3] * pt[3]
    return (v > 0) - (v < 0)


class HullResult:
    __slots__ = ("points", "facets", "on_hull", "interior")

    def __init__(self, points, facets, on_hull, interior):
        self.points = points
        self.facets = facets        # alive facets only
        self.on_hull = on_hull      # sorted point indices on the hull
        self.interior = interior    # point indices strictly inside


def _find_initial_simplex(points, order):
    i0 = order[0]
    i1 = None
    for i in order[1:]:
        if homog_reduce(points[i]) != homog_reduce(points[i0]):
            i1 = i
            break
    if i1 is None:
        raise RankDeficiencyError(0, [i0])
    i2 = None
    for i in order:
        if i in (i0, i1):
            continue
        if not _collinear(points[i0], points[i1], points[i]):
            i2 = i
            break
    if i2 is None:
        raise RankDeficiencyError(1, [i0, i1])
    i3 = None
    for i in order:
        if i in (i0, i1, i2):
            continue
        if orient3d_h(points[i0], points[i1], points[i2], points[i]) != 0:
            i3 = i
            break
    if i3 is None:
        raise RankDeficiencyError(2, [i0, i1, i2])
    return i0, i1, i2, i3


def _collinear(p, q, r):
    ops_add()
    ux = q[0] * p[3] - p[0] * q[3]
    uy = q[1] * p[3] - p[1] * q[3]
    uz = q[2] * p[3] - p[2] * q[3]
    vx = r[0] * p[3] - p[0] * r[3]
    vy = r[1] * p[3] - p[1] * r[3]
    vz = r[2] * p[3] - p[2] * r[3]
    return (uy * vz - uz * vy == 0 and uz * vx - ux * vz == 0
            and ux * vy - uy * vx == 0)


def build_hull(points, order=None, strict=False):
    """Incremental hull of homogeneous points (each (X, Y, Z, W), W > 0).

    `order` fixes the insertion order (deterministic builds); `strict`
    adds post-checks that raise DegeneracyError on coplanar quadruples
    touching the hull surface.
    """
    n = len(points)
    if order is None:
        order = list(range(n))
    if n < 4:
        raise RankDeficiencyError(min(n, 2), list(order))
    i0, i1, i2, i3 = _find_initial_simplex(points, order)
    if orient3d_h(points[i0], points[i1], points[i2], points[i3]) > 0:
        i1, i2 = i2, i1

    # Interior reference point: centroid of the simplex.
    w = points[i0][3] * points[i1][3] * points[i2][3] * points[i3][3]
    ref = [0, 0, 0, 4 * w]
    for i in (i0, i1, i2, i3):
        s = w // points[i][3]
        ref[0] += points[i][0] * s
        ref[1] += points[i][1] * s
        ref[2] += points[i][2] * s
    ref = tuple(ref)

    facets = []

    def make_facet(a, b, c):
        pl = facet_plane(points[a], points[b], points[c])
        if plane_side(pl, ref) > 0:
            a, b = b, a
            pl = tuple(-v for v in pl)
        f = Facet(a, b, c, pl)
        facets.append(f)
        return f

    f0 = make_facet(i0, i1, i2)
    f1 = make_facet(i0, i3, i1)
    f2 = make_facet(i1, i3, i2)
    f3 = make_facet(i0, i2, i3)
    _wire([f0, f1, f2, f3])

    used = {i0, i1, i2, i3}
    bucket = [None] * n
    pending = []
    for i in order:
        if i in used:
            continue
        pending.append(i)
        for f in (f0, f1, f2, f3):
            if plane_side(f.plane, points[i]) > 0:
                bucket[i] = f
                f.pts.append(i)
                break

    stamp = 0
    dropped = []
    for v in pending:
        f = bucket[v]
        if f is None:
            dropped.append(v)
            continue
        if not f.alive:
            raise AssertionError("stale bucket")
        pt = points[v]
        stamp += 1
        # Collect the visible region by BFS.
        visible = [f]
        f.stamp = stamp
        qi = 0
        while qi < len(visible):
            ops_add()
            g = visible[qi]
            qi += 1
            for h in g.nbr:
                if h.stamp != stamp and h.alive:
                    h.stamp = stamp
                    if plane_side(h.plane, pt) > 0:
                        visible.append(h)
        # Horizon edges and the new cone.
        new_facets = []
        edge_map = {}
        for g in visible:
            for ei in range(3):
                h = g.nbr[ei]
                if h.stamp == stamp and plane_side(h.plane, pt) > 0:
                    continue  # dead neighbor
                u, wv = g.edge(ei)
                nf = make_facet(u, wv, v)
                new_facets.append(nf)
                _link(nf, h, (u, wv))
                for e in ((u, v), (wv, v)):
                    key = (e[0], e[1]) if e[0] < e[1] else (e[1], e[0])
                    other = edge_map.pop(key, None)
                    if other is None:
                        edge_map[key] = nf
                    else:
                        _link(nf, other, e)
                        _link(other, nf, e)
        if edge_map:
            raise AssertionError("open horizon")
        # Redistribute conflict points of the dead region.
        carried = []
        for g in visible:
            g.alive = False
            carried.extend(g.pts)
            g.pts = []
        for p in carried:
            if p == v:
                continue
            bucket[p] = None
            ph = points[p]
            for nf in new_facets:
                if plane_side(nf.plane, ph) > 0:
                    bucket[p] = nf
                    nf.pts.append(p)
                    break
            if bucket[p] is None:
                dropped.append(p)

    alive = [f for f in facets if f.alive]
    on_hull = sorted({i for f in alive for i in f.corners()})
    hull_set = set(on_hull)
    interior = [i for i in dropped if i not in hull_set]

    if strict:
        _strict_checks(points, alive, interior)
    return HullResult(points, alive, on_hull, interior)


def _wire(fs):
    edge_map = {}
    for f in fs:
        for ei in range(3):
            u, v = f.edge(ei)
            key = (u, v) if u < v else (v, u)
            if key in edge_map:
                g = edge_map[key]
                _link(f, g, (u, v))
                _link(g, f, (u, v))
            else:
                edge_map[key] = f


def _link(f, g, edge):
    key = frozenset(edge)
    for ei in range(3):
        if frozenset(f.edge(ei)) == key:
            f.nbr[ei] = g
            return
    raise AssertionError("edge not on facet")


def _strict_checks(points, alive, interior):
    # A dropped point must be strictly inside every facet; a point on a
    # facet plane is a coplanar quadruple touching the hull.
    for i in interior:
        for f in alive:
            if plane_side(f.plane, points[i]) == 0:
                raise DegeneracyError(
                    "point lies on a hull facet plane",
                    (i, f.a, f.b, f.c))
    # Adjacent coplanar facets mean four hull corners are coplanar.
    for f in alive:
        for ei in range(3):
            g = f.nbr[ei]
            if g is None:
                continue
            opp = [x for x in g.corners() if x not in f.corners()]
            if opp and orient3d_h(points[f.a], points[f.b], points[f.c],
                                  points[opp[0]]) == 0:
                raise DegeneracyError(
                    "coplanar hull quadruple",
                    (f.a, f.b, f.c, opp[0]))


class HullSummary:
    __slots__ = ("v", "e", "f", "facets")

    def __init__(self, v, e, f, facets):
        self.v = v
        self.e = e
        self.f = f
        self.facets = facets  # list of (id_a, id_b, id_c) oriented outward

    def counts(self):
        return (self.v, self.e, self.f)


def static_hull3(points):
    """Exact hull summary of Point3 objects: (V, E, F) counts plus the
    outward-oriented facet id triples.  Requires at least 4 points, no
    coincident pair, no coplanar quadruple on the hull."""
    if len(points) < 4:
        raise DegeneracyError("need at least 4 points for a 3D hull")
    seen = {}
    hs = []
    for p in points:
        key = homog_reduce(p.h)
        if key in seen:
            raise DegeneracyError("coincident points",
                                  (seen[key], p.id))
        seen[key] = p.id
        hs.append(p.h)
    res = build_hull(hs, strict=True)
    fcount = len(res.facets)
    vcount = len(res.on_hull)
    ecount = (3 * fcount) // 2
    if vcount - ecount + fcount != 2 or fcount != 2 * vcount - 4:
        raise DegeneracyError("hull is not simplicial")
    triples = []
    for f in res.facets:
        a, b, c = f.corners()
        if facet_plane(hs[a], hs[b], hs[c]) != f.plane:
            a, b = b, a
        triples.append((points[a].id, points[b].id, points[c].id))
    return HullSummary(vcount, ecount, fcount, triples)


def hull_volume(points):
    """Exact volume of the convex hull of Point3 objects (signed facet
    tetrahedra against the origin)."""
    summary = static_hull3(points)
    by_id = {p.id: p for p in points}
    total = Fraction(0)
    for ia, ib, ic in summary.facets:
        pa, pb, pc = by_id[ia], by_id[ib], by_id[ic]
        det = (pa.x * (pb.y * pc.z - pc.y * pb.z)
               - pa.y * (pb.x * pc.z - pc.x * pb.z)
               + pa.z * (pb.x * pc.y - pc.x * pb.y))
        total += det
    return total / 6
