"""
Transverse overlays of two multicurves on one triangulation.

Both curves are put in their canonical normal realization; along every edge
the first curve's strand points are placed before the second curve's.  Any
shuffle yields honest transverse representatives of the two isotopy classes,
so this canonical choice is sound for homeomorphism images (twisting) and
for signed counts; geometric intersection numbers additionally minimize
over shuffles, see ``intersection``.

Positions inside a face are boundary keys (side index, offset along the
side read counterclockwise); two chords cross iff their endpoints
interleave on the boundary circle.
"""

from .curves import trace_strands


class Overlay:
    """Canonical transverse overlay of multicurves x and y (x strands first)."""

    def __init__(self, x, y):
        if x.triangulation is not y.triangulation:
            raise ValueError("triangulation mismatch")
        self.t = x.triangulation
        self.x = x
        self.y = y
        self.x_strands = trace_strands(x)
        self.y_strands = trace_strands(y)
        self._face_arcs = None

    def boundary_key(self, d, point, second):
        """Boundary coordinate of an overlay strand point on side dart d."""
        t = self.t
        e, slot = point
        pos = slot if not second else self.x.weights[e] + slot
        total = self.x.weights[e] + self.y.weights[e]
        if d != t.canonical_dart(e):
            pos = total - 1 - pos
        return (d % 3, pos)

    def face_arcs(self):
        """Per face, the pair (x_arcs, y_arcs) of directed arcs
        (key_in, key_out, strand_id, index_in_strand)."""
        if self._face_arcs is not None:
            return self._face_arcs
        t = self.t
        arcs = [([], []) for _ in range(t.num_faces)]
        for second, strands in ((False, self.x_strands), (True, self.y_strands)):
            for sid, (darts, points) in enumerate(strands):
                n = len(darts)
                for i in range(n):
                    d_in = darts[i]
                    f = t.face_of(d_in)
                    d_next = darts[(i + 1) % n]
                    k_in = self.boundary_key(d_in, points[i], second)
                    k_out = self.boundary_key(
                        t.reversed_dart(d_next), points[(i + 1) % n], second
                    )
                    arcs[f][1 if second else 0].append((k_in, k_out, sid, i))
        self._face_arcs = arcs
        return arcs


def keys_cross(a1, a2, b1, b2):
    """Do chords with boundary keys (a1,a2) and (b1,b2) interleave?"""
    lo, hi = (a1, a2) if a1 < a2 else (a2, a1)
    return (lo < b1 < hi) != (lo < b2 < hi)


def in_ccw_interval(key, lo, hi):
    """Is `key` in the ccw-open boundary interval from lo to hi?"""
    if lo < hi:
        return lo < key < hi
    return key > lo or key < hi


def crossing_sign(b_in, b_out, a_in, a_out):
    """Sign of the frame (dir_b, dir_a) at a chord crossing.

    Faces are counterclockwise; the left of the directed chord b_in -> b_out
    is the region bounded by the ccw boundary arc b_out -> b_in.
    """
    return 1 if in_ccw_interval(a_out, b_out, b_in) else -1


def count_crossings(ov):
    """Transverse crossings of the canonical overlay (an upper bound for the
    geometric intersection number)."""
    total = 0
    for x_arcs, y_arcs in ov.face_arcs():
        for (xa, xb, _, _) in x_arcs:
            for (ya, yb, _, _) in y_arcs:
                if keys_cross(xa, xb, ya, yb):
                    total += 1
    return total


def signed_crossings(ov):
    """Signed crossing sum of the canonical overlay; each traced strand
    carries its traced orientation.  Homologically invariant."""
    total = 0
    for x_arcs, y_arcs in ov.face_arcs():
        for (xa, xb, _, _) in x_arcs:
            for (ya, yb, _, _) in y_arcs:
                if keys_cross(xa, xb, ya, yb):
                    total += crossing_sign(ya, yb, xa, xb)
    return total
