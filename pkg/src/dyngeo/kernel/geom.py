"""Core geometric types and exact predicates.

Planes are non-vertical by construction: z = a*x + b*y + c.  Internally a
plane is the reduced integer tuple (A, B, C, W), W > 0, meaning
z = (A*x + B*y + C) / W, and a point is (X, Y, Z, W), W > 0.  All
predicates are integer sign computations; Fractions appear only on the
public surface.
"""

from fractions import Fraction

from ..errors import DegeneracyError
from ..opcount import ops_add
from ..rat import Rat, homog_reduce, rat


class Point3:
    __slots__ = ("x", "y", "z", "id", "h")

    def __init__(self, x, y, z, id=-1):
        self.x = rat(x)
        self.y = rat(y)
        self.z = rat(z)
        self.id = id
        self.h = _point_homog(self.x, self.y, self.z)

    def __repr__(self):
        return f"Point3({self.x}, {self.y}, {self.z}, id={self.id})"

    def __eq__(self, other):
        return (self.x, self.y, self.z) == (other.x, other.y, other.z)

    def __hash__(self):
        return hash((self.x, self.y, self.z))


class Plane3:
    """z = a*x + b*y + c.  `origin` is the id of the primal 2D point this
    plane was lifted from, when applicable."""

    __slots__ = ("a", "b", "c", "id", "origin", "h")

    def __init__(self, a, b, c, id=-1, origin=None):
        self.a = rat(a)
        self.b = rat(b)
        self.c = rat(c)
        self.id = id
        self.origin = origin
        self.h = plane_homog(self.a, self.b, self.c)

    def value_at(self, x, y) -> Fraction:
        return self.a * rat(x) + self.b * rat(y) + self.c

    def __repr__(self):
        return f"Plane3(z = {self.a}*x + {self.b}*y + {self.c}, id={self.id})"


class Segment3:
    __slots__ = ("p", "q")

    def __init__(self, p: Point3, q: Point3):
        if p == q:
            raise DegeneracyError("segment endpoints coincide", (p.id, q.id))
        self.p = p
        self.q = q


class Triangle3:
    """Three affinely independent corners; `plane` is the defining plane
    when the triangle lies on an envelope face."""

    __slots__ = ("a", "b", "c", "plane")

    def __init__(self, a: Point3, b: Point3, c: Point3, plane=None):
        self.a = a
        self.b = b
        self.c = c
        self.plane = plane
        if orient2d_h(a.h, b.h, c.h) == 0:
            raise DegeneracyError("degenerate triangle", (a.id, b.id, c.id))

    def corners(self):
        return (self.a, self.b, self.c)


class BBox:
    """Axis-aligned symbolic bounding box in the xy-plane (used to clip
    unbounded envelope features)."""

    __slots__ = ("xmin", "xmax", "ymin", "ymax")

    def __init__(self, xmin, xmax, ymin, ymax):
        self.xmin = rat(xmin)
        self.xmax = rat(xmax)
        self.ymin = rat(ymin)
        self.ymax = rat(ymax)
        if not (self.xmin < self.xmax and self.ymin < self.ymax):
            raise ValueError("empty bounding box")

    def contains_xy(self, x, y) -> bool:
        return (self.xmin <= x <= self.xmax) and (self.ymin <= y <= self.ymax)

    def corners(self):
        return ((self.xmin, self.ymin), (self.xmax, self.ymin),
                (self.xmax, self.ymax), (self.xmin, self.ymax))

    def __repr__(self):
        return f"BBox([{self.xmin},{self.xmax}]x[{self.ymin},{self.ymax}])"


def _point_homog(x, y, z):
    from ..rat import homog3
    return homog3(x, y, z)


def plane_homog(a, b, c):
    from ..rat import homog3
    return homog_reduce(homog3(a, b, c))


def plane_key(h):
    """Canonical reduced tuple identifying a plane (duplicate detection)."""
    return homog_reduce(h)


# --- integer predicates -------------------------------------------------

def plane_num_at(ph, X, Y, W):
    """Numerator of plane value at (X/W, Y/W); denominator is ph[3]*W."""
    ops_add()
    return ph[0] * X + ph[1] * Y + ph[2] * W


def below_strict(ph, pt):
    """True iff the plane passes strictly below the point."""
    X, Y, Z, W = pt
    n = plane_num_at(ph, X, Y, W)
    return n * 1 < Z * ph[3]


def side_of_plane_at_point(ph, pt):
    """Sign of (point z) - (plane value) at the point's vertical."""
    X, Y, Z, W = pt
    n = plane_num_at(ph, X, Y, W)
    d = Z * ph[3] - n
    return (d > 0) - (d < 0)


def cmp_planes_at(ph1, ph2, X, Y, W):
    """Sign of h1(x,y) - h2(x,y) at (X/W, Y/W)."""
    n1 = plane_num_at(ph1, X, Y, W)
    n2 = plane_num_at(ph2, X, Y, W)
    d = n1 * ph2[3] - n2 * ph1[3]
    return (d > 0) - (d < 0)


def orient2d_h(p, q, r):
    """Orientation of the xy-projections of three homogeneous points."""
    ops_add()
    d = ((q[0] * p[3] - p[0] * q[3]) * (r[1] * p[3] - p[1] * r[3])
         - (q[1] * p[3] - p[1] * q[3]) * (r[0] * p[3] - p[0] * r[3]))
    return (d > 0) - (d < 0)


def orient3d_h(p, q, r, s):
    """Sign of the 4x4 homogeneous orientation determinant (all W > 0 so
    this matches the affine orient3d of the dehomogenized points)."""
    ops_add()
    # Laplace expansion over rows (p,q) against (r,s).
    p0, p1, p2, p3 = p
    q0, q1, q2, q3 = q
    r0, r1, r2, r3 = r
    s0, s1, s2, s3 = s
    m01 = p0 * q1 - p1 * q0
    m02 = p0 * q2 - p2 * q0
    m03 = p0 * q3 - p3 * q0
    m12 = p1 * q2 - p2 * q1
    m13 = p1 * q3 - p3 * q1
    m23 = p2 * q3 - p3 * q2
    n01 = r0 * s1 - r1 * s0
    n02 = r0 * s2 - r2 * s0
    n03 = r0 * s3 - r3 * s0
    n12 = r1 * s2 - r2 * s1
    n13 = r1 * s3 - r3 * s1
    n23 = r2 * s3 - r3 * s2
    d = m01 * n23 - m02 * n13 + m03 * n12 + m12 * n03 - m13 * n02 + m23 * n01
    return (d > 0) - (d < 0)


def three_plane_point(h1, h2, h3):
    """Intersection point of three planes as (X, Y, Z, W) with W > 0.

    Raises DegeneracyError when the planes have no unique common point.
    """
    a1, b1, c1, w1 = h1
    a2, b2, c2, w2 = h2
    a3, b3, c3, w3 = h3
    # Rows of the linear system  a*x + b*y - w*z = -c.
    det = (a1 * (b2 * (-w3) - (-w2) * b3)
           - b1 * (a2 * (-w3) - (-w2) * a3)
           + (-w1) * (a2 * b3 - b2 * a3))
    if det == 0:
        raise DegeneracyError("planes do not meet in a unique point")
    dx = ((-c1) * (b2 * (-w3) - (-w2) * b3)
          - b1 * ((-c2) * (-w3) - (-w2) * (-c3))
          + (-w1) * ((-c2) * b3 - b2 * (-c3)))
    dy = (a1 * ((-c2) * (-w3) - (-w2) * (-c3))
          - (-c1) * (a2 * (-w3) - (-w2) * a3)
          + (-w1) * (a2 * (-c3) - (-c2) * a3))
    dz = (a1 * (b2 * (-c3) - (-c2) * b3)
          - b1 * (a2 * (-c3) - (-c2) * a3)
          + (-c1) * (a2 * b3 - b2 * a3))
    if det < 0:
        det, dx, dy, dz = -det, -dx, -dy, -dz
    return homog_reduce((dx, dy, dz, det))


def two_plane_proj_line(h1, h2):
    """Projected line where h1 = h2, as (L, M, N): L*x + M*y = N.

    Parallel planes (equal gradients) raise DegeneracyError.
    """
    a1, b1, c1, w1 = h1
    a2, b2, c2, w2 = h2
    L = a1 * w2 - a2 * w1
    M = b1 * w2 - b2 * w1
    N = c2 * w1 - c1 * w2
    if L == 0 and M == 0:
        raise DegeneracyError("parallel planes have no crossing line")
    return (L, M, N)


# --- public kernel operations -------------------------------------------

def lift_point(px, py, point_id=None):
    """Lift a 2D point to its distance paraboloid plane:
    (a, b, c) = (-2*px, -2*py, px^2 + py^2)."""
    px = rat(px)
    py = rat(py)
    return Plane3(-2 * px, -2 * py, px * px + py * py,
                  id=-1 if point_id is None else point_id, origin=point_id)


def squared_distance(px, py, qx, qy) -> Fraction:
    dx = rat(px) - rat(qx)
    dy = rat(py) - rat(qy)
    return dx * dx + dy * dy


def level(point: Point3, planes) -> int:
    """Number of planes strictly below the point (exact)."""
    pt = point.h if isinstance(point, Point3) else point
    count = 0
    for pl in planes:
        ph = pl.h if isinstance(pl, Plane3) else pl
        if below_strict(ph, pt):
            count += 1
    return count


def min_plane_at(planes, x, y):
    """(plane, value) minimizing value at (x, y) by exhaustive scan.
    Raises DegeneracyError on an exact tie between distinct planes."""
    x = rat(x)
    y = rat(y)
    best = None
    best_v = None
    tie = None
    for pl in planes:
        ops_add()
        v = pl.value_at(x, y)
        if best_v is None or v < best_v:
            best, best_v, tie = pl, v, None
        elif v == best_v:
            tie = pl
    if best is None:
        return None
    if tie is not None:
        raise DegeneracyError("tie at query vertical", (best.id, tie.id))
    return best, best_v
