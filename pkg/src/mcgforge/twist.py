"""
Dehn twists acting on normal coordinates.

tau_c^n(b) is computed as the literal image of a transverse representative:
overlay b with the twisting curve c (any transverse position represents the
isotopy classes), and at every crossing reroute b around the full c-loop n
times, in the direction determined by the crossing sign, the surface
orientation and the handedness of the twist.  The image path is then folded
into normal position.

The handedness constant is pinned by the once-punctured-torus convention
tau_{(1,0)}((0,1)) = (1,1) in slope coordinates.
"""

from .curves import MultiCurve, curve_from_dart_cycle, is_simple_curve, is_peripheral
from .overlay import Overlay, keys_cross, crossing_sign, in_ccw_interval

# With the ccw face convention, +1 makes positive twists act like the
# standard right-handed twist on the torus model (see module docstring).
_HANDEDNESS = 1


def _ccw_distance(off, key, base):
    side, pos = key
    bside, bpos = base
    a = off[side] + pos
    b = off[bside] + bpos
    total = off[3]
    return (a - b) % total


def dehn_twist(c, n, b):
    """Normal coordinates of tau_c^n(b); c a single essential curve."""
    if c.triangulation is not b.triangulation:
        raise ValueError("triangulation mismatch")
    if n == 0 or b.is_empty:
        return b
    if not is_simple_curve(c):
        raise ValueError("twisting curve must be a single simple closed curve")
    t = c.triangulation
    ov = Overlay(c, b)
    arcs = ov.face_arcs()
    a_darts = ov.x_strands[0][0]
    m = len(a_darts)
    # index of the c-arc within the c-walk, per face occurrence
    total = [0] * t.num_edges
    for e in range(t.num_edges):
        total[e] = c.weights[e] + b.weights[e]

    new_counts = [0] * t.num_edges
    for (b_darts, b_points) in ov.y_strands:
        nb = len(b_darts)
        out = []
        for i in range(nb):
            d_in = b_darts[i]
            f = t.face_of(d_in)
            out.append(d_in)
            k_in = ov.boundary_key(d_in, b_points[i], True)
            k_out = ov.boundary_key(
                t.reversed_dart(b_darts[(i + 1) % nb]), b_points[(i + 1) % nb], True
            )
            # face boundary offsets for ccw distance
            tri = t.faces[f]
            w0, w1, w2 = (total[lab] for lab in tri)
            off = (0, w0, w0 + w1, w0 + w1 + w2)
            hits = []
            for (ka, kb, _, j) in arcs[f][0]:
                if keys_cross(k_in, k_out, ka, kb):
                    inside = ka if in_ccw_interval(ka, k_in, k_out) else kb
                    sign = crossing_sign(k_in, k_out, ka, kb)
                    hits.append((_ccw_distance(off, inside, k_in), j, sign))
            hits.sort()
            for _, j, sign in hits:
                forward = sign * n * _HANDEDNESS > 0
                loops = abs(n)
                if forward:
                    block = [a_darts[(j + 1 + s) % m] for s in range(m)]
                else:
                    block = [
                        t.reversed_dart(a_darts[(j - s) % m]) for s in range(m)
                    ]
                out.extend(block * loops)
        img = curve_from_dart_cycle(t, out)
        for e in range(t.num_edges):
            new_counts[e] += img.weights[e]
    return MultiCurve(t, new_counts)


def check_twistable(c):
    """Letters of twist words must be essential, non-peripheral, connected."""
    if c.is_empty:
        raise ValueError("cannot twist along the empty curve")
    if not is_simple_curve(c):
        raise ValueError("twist curves must be connected simple closed curves")
    if is_peripheral(c):
        raise ValueError("twist curves must be non-peripheral")
