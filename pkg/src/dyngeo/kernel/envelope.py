"""Static lower envelopes of non-vertical planes.

The generic path dualizes plane z = a*x + b*y + c to the point
(a, b, -c); faces of the lower envelope are exactly the vertices of the
upper hull of the duals, envelope vertices are upper-hull facets, and
envelope edges are upper-hull edges.  Degenerate ranks (parallel planes,
pencils, planes with collinear gradients) take direct small paths.
"""

from fractions import Fraction

from ..errors import BoundsError, DegeneracyError
from ..opcount import ops_add
from ..rat import Rat, homog_reduce
from .geom import (Plane3, Point3, Triangle3, three_plane_point,
                   two_plane_proj_line)
from .hull import RankDeficiencyError, build_hull, facet_plane


class EnvVertex:
    __slots__ = ("planes", "point")

    def __init__(self, planes, point):
        self.planes = planes      # (id, id, id)
        self.point = point        # homogeneous (X, Y, Z, W)


class EnvEdge:
    """Envelope edge on the crossing of two faces.  `v_from`/`v_to` are
    vertex indices; None marks an unbounded end with `ray` = (dx, dy)
    integer direction in the projection."""

    __slots__ = ("planes", "v_from", "v_to", "ray")

    def __init__(self, planes, v_from, v_to, ray=None):
        self.planes = planes
        self.v_from = v_from
        self.v_to = v_to
        self.ray = ray


class Envelope3:
    __slots__ = ("planes", "faces", "absent", "vertices", "edges",
                 "kind", "strip")

    def __init__(self, planes, faces, absent, vertices, edges,
                 kind="generic", strip=None):
        self.planes = planes          # id -> Plane3 for all input planes
        self.faces = faces            # plane ids appearing on the envelope
        self.absent = absent          # plane ids never attaining the min
        self.vertices = vertices
        self.edges = edges
        self.kind = kind              # generic | single | pair | strip
        self.strip = strip            # StripData for the strip path

    def vertex_count(self):
        return len(self.vertices)


class StripData:
    """Envelope of planes whose gradients are collinear: the projected
    subdivision is a family of parallel strips.  `chain` holds plane ids
    ordered along the gradient direction; boundaries[i] is the rational
    value s where chain[i] and chain[i+1] tie, with s = gx*x + gy*y."""

    __slots__ = ("gdir", "chain", "boundaries")

    def __init__(self, gdir, chain, boundaries):
        self.gdir = gdir
        self.chain = chain
        self.boundaries = boundaries


def _check_duplicates(planes):
    seen = {}
    for p in planes:
        key = homog_reduce(p.h)
        if key in seen:
            raise DegeneracyError("duplicate planes", (seen[key], p.id))
        seen[key] = p.id


def dual_point(plane):
    a, b, c, w = plane.h
    return (a, b, -c, w)


def lower_envelope(planes, order=None, strict=True):
    """Full incidence structure of LE(planes).  Every input plane ends up
    in `faces` or `absent`.  Degenerate configurations raise
    DegeneracyError naming the offending ids."""
    planes = list(planes)
    if not planes:
        raise DegeneracyError("empty plane set")
    _check_duplicates(planes)
    table = {p.id: p for p in planes}
    if len(planes) == 1:
        return Envelope3(table, [planes[0].id], [], [], [], kind="single")

    duals = [dual_point(p) for p in planes]
    try:
        res = build_hull(duals, order=order)
    except RankDeficiencyError as rd:
        return _degenerate_envelope(planes, table, rd)
    return _envelope_from_hull(planes, table, res, strict)


def _envelope_from_hull(planes, table, res, strict):
    duals = res.points
    upper = []
    for f in res.facets:
        if f.plane[2] > 0:
            upper.append(f)
    if not upper:
        raise AssertionError("full-dimensional hull without upper facets")
    if strict:
        for f in upper:
            for g in f.nbr:
                if g.alive and g.plane[2] > 0 and _coplanar_facets(f, g):
                    ids = sorted({planes[i].id for i in
                                  f.corners() + g.corners()})
                    raise DegeneracyError("concurrent plane quadruple", ids)

    findex = {id(f): i for i, f in enumerate(upper)}
    vertices = []
    for f in upper:
        tri = tuple(sorted(planes[i].id for i in f.corners()))
        pt = three_plane_point(*(table[i].h for i in tri))
        vertices.append(EnvVertex(tri, pt))

    edges = []
    done = set()
    for fi, f in enumerate(upper):
        for ei in range(3):
            g = f.nbr[ei]
            u, w = f.edge(ei)
            key = (u, w) if u < w else (w, u)
            if key in done:
                continue
            done.add(key)
            pair = tuple(sorted((planes[u].id, planes[w].id)))
            if g.plane[2] > 0:
                edges.append(EnvEdge(pair, fi, findex[id(g)]))
            else:
                third = [i for i in f.corners() if i not in (u, w)][0]
                ray = _edge_ray(table[pair[0]].h, table[pair[1]].h,
                                planes[third].h)
                edges.append(EnvEdge(pair, fi, None, ray=ray))

    face_ids = sorted({planes[i].id for f in upper for i in f.corners()})
    face_set = set(face_ids)
    absent = sorted(p.id for p in planes if p.id not in face_set)
    return Envelope3(table, face_ids, absent, vertices, edges)


def _coplanar_facets(f, g):
    # Both planes are facet tuples over the same dual points: coplanar iff
    # proportional coefficient vectors.
    a = f.plane
    b = g.plane
    return (a[0] * b[1] == a[1] * b[0] and a[0] * b[2] == a[2] * b[0]
            and a[0] * b[3] == a[3] * b[0] and a[1] * b[2] == a[2] * b[1]
            and a[1] * b[3] == a[3] * b[1] and a[2] * b[3] == a[3] * b[2])


def _edge_ray(h1, h2, h3):
    """Unbounded direction of the envelope edge where h1 = h2, pointing
    away from the region where h3 stays minimal."""
    L, M, N = two_plane_proj_line(h1, h2)
    gx = h3[0] * h1[3] - h1[0] * h3[3]
    gy = h3[1] * h1[3] - h1[1] * h3[3]
    t = gx * (-M) + gy * L
    if t > 0:
        return (-M, L)
    if t < 0:
        return (M, -L)
    raise DegeneracyError("three planes share an envelope line")


def _degenerate_envelope(planes, table, rd):
    # rank 0 cannot happen (duplicates pre-checked); rank 1: duals on a
    # line; rank 2: duals on a plane.
    if rd.rank <= 1:
        return _collinear_envelope(planes, table)
    return _coplanar_envelope(planes, table)


def _gradients_collinear(planes):
    p0 = planes[0]
    a0, b0, w0 = p0.h[0], p0.h[1], p0.h[3]
    for p in planes[1:]:
        for q in planes[1:]:
            pass
    base = None
    for p in planes[1:]:
        gx = p.h[0] * w0 - a0 * p.h[3]
        gy = p.h[1] * w0 - b0 * p.h[3]
        if gx or gy:
            base = (p, gx, gy)
            break
    if base is None:
        return True, (0, 0)
    _, gx, gy = base
    for p in planes[1:]:
        hx = p.h[0] * w0 - a0 * p.h[3]
        hy = p.h[1] * w0 - b0 * p.h[3]
        if gx * hy - gy * hx != 0:
            return False, None
    return True, (gx, gy)


def _collinear_envelope(planes, table):
    ok, gdir = _gradients_collinear(planes)
    if not ok:
        # Duals collinear but gradients not: impossible (the gradient is
        # the xy-projection of the dual).
        raise AssertionError("inconsistent rank-1 configuration")
    if gdir == (0, 0):
        # All planes parallel: the lowest constant offset wins.
        best = min(planes, key=lambda p: Fraction(p.c))
        rest = sorted(p.id for p in planes if p is not best)
        return Envelope3(table, [best.id], rest, [], [], kind="single")
    return _strip_envelope(planes, table, gdir)


def _coplanar_envelope(planes, table):
    # Dual points lie on one plane.  If that plane is vertical the input
    # gradients are collinear (strip case); otherwise all planes pass
    # through one common point, which general position forbids.
    ok, gdir = _gradients_collinear(planes)
    if ok:
        if gdir == (0, 0):
            return _collinear_envelope(planes, table)
        return _strip_envelope(planes, table, gdir)
    raise DegeneracyError("all planes concurrent through a point",
                          sorted(p.id for p in planes))


def _strip_envelope(planes, table, gdir):
    """Planes with collinear gradients: value = base(x,y) + t_h * s + c_h
    with s = gx*x + gy*y.  The envelope is the lower hull of (t_h, c_h)."""
    gx, gy = gdir
    p0 = planes[0]
    a0, b0, w0 = p0.h[0], p0.h[1], p0.h[3]
    items = []
    for p in planes:
        A, B, C, W = p.h
        hx = A * w0 - a0 * W
        hy = B * w0 - b0 * W
        # (hx, hy) = t * (gx, gy) with t rational.
        t = Fraction(hx, gx) if gx else Fraction(hy, gy)
        t = t / W * 1  # hx scales with W*w0; normalize:
        t = (Fraction(hx, W * w0) / Fraction(gx, 1)) if gx else \
            (Fraction(hy, W * w0) / Fraction(gy, 1))
        c_eff = Fraction(C, W) + Fraction(a0, w0) * 0  # c alone; base shared
        items.append((t, c_eff, p))
    # For equal t (parallel planes within the family) only the lowest
    # offset can appear.
    best_by_t = {}
    for t, c, p in items:
        cur = best_by_t.get(t)
        if cur is None or c < cur[0]:
            best_by_t[t] = (c, p)
        elif c == cur[0]:
            raise DegeneracyError("duplicate planes", (cur[1].id, p.id))
    pts = sorted((t, c, p) for t, (c, p) in best_by_t.items())
    hull = []
    for t, c, p in pts:
        while len(hull) >= 2:
            (t1, c1, _), (t2, c2, _) = hull[-2], hull[-1]
            ops_add()
            # Keep hull[-1] only if it dips below segment (t1,c1)-(t,c).
            if (c2 - c1) * (t - t1) < (c - c1) * (t2 - t1):
                break
            hull.pop()
        hull.append((t, c, p))
    chain = [p.id for _, _, p in hull]
    boundaries = []
    for (t1, c1, _), (t2, c2, _) in zip(hull, hull[1:]):
        boundaries.append((c1 - c2) / (t2 - t1))  # s where the two tie
    edges = []
    for i, s in enumerate(boundaries):
        edges.append(EnvEdge((chain[i], chain[i + 1]), None, None,
                             ray=(-gy, gx)))
    face_set = set(chain)
    absent = sorted(p.id for p in planes if p.id not in face_set)
    return Envelope3(table, chain, absent, [], edges, kind="strip",
                     strip=StripData(gdir, chain, boundaries))


def strip_locate(env, x, y):
    """Face of a strip envelope at (x, y): binary search on s."""
    sd = env.strip
    s = Fraction(sd.gdir[0]) * x + Fraction(sd.gdir[1]) * y
    lo, hi = 0, len(sd.boundaries)
    while lo < hi:
        ops_add()
        mid = (lo + hi) // 2
        if s == sd.boundaries[mid]:
            raise DegeneracyError("tie at query vertical",
                                  (sd.chain[mid], sd.chain[mid + 1]))
        if s < sd.boundaries[mid]:
            hi = mid
        else:
            lo = mid + 1
    return env.planes[sd.chain[lo]]


# --- 1D lower envelopes of lines ----------------------------------------

def lines_lower_envelope(lines, t_lo, t_hi):
    """Lower envelope of lines v(t) = (M*t + Q) / W (W > 0 ints) over the
    closed interval [t_lo, t_hi] (Fractions).  Returns [(start, end, i)]
    pieces with strictly increasing rational breakpoints."""
    order = sorted(range(len(lines)),
                   key=lambda i: (Fraction(lines[i][0], lines[i][2]),
                                  Fraction(lines[i][1], lines[i][2])))
    # Same slope: keep lowest offset only.
    filtered = []
    for i in order:
        if filtered:
            j = filtered[-1]
            if (lines[i][0] * lines[j][2] == lines[j][0] * lines[i][2]):
                continue
        filtered.append(i)
    stack = []  # (line index, start t of its piece)

    def cross_t(i, j):
        Mi, Qi, Wi = lines[i]
        Mj, Qj, Wj = lines[j]
        num = Qj * Wi - Qi * Wj
        den = Mi * Wj - Mj * Wi
        return Fraction(num, den)

    for i in filtered:
        while stack:
            ops_add()
            j, start_j = stack[-1]
            t = cross_t(j, i)  # below j's slope < i's slope: i wins after t
            if t > start_j:
                stack.append((i, t))
                break
            stack.pop()
        else:
            stack.append((i, None))
    pieces = []
    for idx, (i, start) in enumerate(stack):
        lo = t_lo if start is None else max(t_lo, start)
        hi = t_hi if idx + 1 == len(stack) else min(t_hi, stack[idx + 1][1])
        if lo < hi:
            pieces.append((lo, hi, i))
    return pieces


def envelope_on_wall(planes, axis, coord, lo, hi):
    """Vertices of LE(planes) restricted to a bbox wall.  axis='x' fixes
    x=coord and parametrizes by y in [lo, hi], axis='y' the reverse.
    Returns [(t, z)] Fractions: the wall breakpoints plus both ends."""
    coord = Rat(coord)
    lines = []
    for p in planes:
        A, B, C, W = p.h
        if axis == "x":
            m, q = B, A * coord.numerator + C * coord.denominator
            w = W * coord.denominator
            m = B * coord.denominator
        else:
            m = A * coord.denominator
            q = B * coord.numerator + C * coord.denominator
            w = W * coord.denominator
        lines.append((m, q, w))
    pieces = lines_lower_envelope(lines, Rat(lo), Rat(hi))
    out = []
    for (a, b, i) in pieces:
        M, Q, W = lines[i]
        out.append((a, Fraction(M * a.numerator + Q * a.denominator,
                                W * a.denominator)))
    a, b, i = pieces[-1]
    M, Q, W = lines[i]
    out.append((b, Fraction(M * b.numerator + Q * b.denominator,
                            W * b.denominator)))
    return out


# --- segment vs envelope ------------------------------------------------

def segment_envelope_crossings(seg, planes):
    """All parameters t in (0,1) where the segment crosses LE(planes),
    returned as crossing points.  Endpoints on the envelope raise."""
    planes = list(planes)
    if not planes:
        raise DegeneracyError("empty plane set")
    p, q = seg.p, seg.q
    # g(t) = min_h h(x(t), y(t)) - z(t): a lower envelope of lines over
    # t in [0,1]; crossings are its sign changes.
    lines = []
    for pl in planes:
        A, B, C, W = pl.h
        Xp, Yp, Zp, Wp = p.h
        Xq, Yq, Zq, Wq = q.h
        # h(x(t),y(t)) - z(t) with x(t) = (1-t) p + t q.
        # value*(W*Wp*Wq) = (1-t)*(A Xp + B Yp + C Wp - W Zp)*Wq
        #                  + t*(A Xq + B Yq + C Wq - W Zq)*Wp
        vp = (A * Xp + B * Yp + C * Wp - W * Zp) * Wq
        vq = (A * Xq + B * Yq + C * Wq - W * Zq) * Wp
        lines.append((vq - vp, vp, W * Wp * Wq))
    pieces = lines_lower_envelope(lines, Fraction(0), Fraction(1))

    def val(piece_i, t):
        M, Q, W = lines[piece_i]
        return Fraction(M * t.numerator + Q * t.denominator,
                        W * t.denominator)

    for end, which in ((Fraction(0), "start"), (Fraction(1), "end")):
        for (a, b, i) in pieces:
            if a <= end <= b and val(i, end) == 0:
                raise DegeneracyError(f"segment {which} on envelope")
    roots = []
    for (a, b, i) in pieces:
        M, Q, W = lines[i]
        if M == 0:
            continue
        t = Fraction(-Q, M)
        if a <= t <= b and Fraction(0) < t < Fraction(1):
            roots.append(t)
    roots = sorted(set(roots))
    out = []
    for t in roots:
        x = p.x + (q.x - p.x) * t
        y = p.y + (q.y - p.y) * t
        z = p.z + (q.z - p.z) * t
        out.append(Point3(x, y, z))
    return out


# --- triangulation -------------------------------------------------------

def _clip_halfplane(poly, a, b, c):
    """Keep the side a*x + b*y <= c of an exact polygon."""
    if not poly:
        return poly
    out = []
    n = len(poly)
    vals = [a * x + b * y for (x, y) in poly]
    for i in range(n):
        j = (i + 1) % n
        vi, vj = vals[i], vals[j]
        if vi <= c:
            out.append(poly[i])
        if (vi < c < vj) or (vj < c < vi):
            t = (c - vi) / (vj - vi)
            x = poly[i][0] + (poly[j][0] - poly[i][0]) * t
            y = poly[i][1] + (poly[j][1] - poly[i][1]) * t
            out.append((x, y))
    # Remove exact duplicates produced by touching vertices.
    dedup = []
    for pt in out:
        if not dedup or dedup[-1] != pt:
            dedup.append(pt)
    if len(dedup) > 1 and dedup[0] == dedup[-1]:
        dedup.pop()
    return dedup


def face_polygon(env, plane_id, bbox):
    """Projected region of a face clipped to the bounding box."""
    poly = [(Rat(x), Rat(y)) for (x, y) in bbox.corners()]
    f = env.planes[plane_id]
    for gid in env.faces:
        if gid == plane_id:
            continue
        g = env.planes[gid]
        poly = _clip_halfplane(poly, f.a - g.a, f.b - g.b, g.c - f.c)
        if not poly:
            break
    return poly


def triangulate_envelope(env, bbox):
    """Triangles tiling the envelope surface clipped to the box, each
    carrying its defining plane."""
    if not env.planes:
        raise DegeneracyError("empty plane set")
    for v in env.vertices:
        x, y = Fraction(v.point[0], v.point[3]), Fraction(v.point[1], v.point[3])
        if not (bbox.xmin < x < bbox.xmax and bbox.ymin < y < bbox.ymax):
            raise BoundsError(f"envelope vertex at ({x},{y}) outside bounds")
    tris = []
    for fid in env.faces:
        poly = face_polygon(env, fid, bbox)
        if len(poly) < 3:
            continue
        pl = env.planes[fid]
        pts = [Point3(x, y, pl.value_at(x, y)) for (x, y) in poly]
        anchor = pts[0]
        for i in range(1, len(pts) - 1):
            a, b, c = anchor, pts[i], pts[i + 1]
            cross = ((b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x))
            if cross == 0:
                continue
            tris.append(Triangle3(a, b, c, plane=pl))
    return tris
