"""
Exact geometric and algebraic intersection numbers.

Geometric intersections follow the classical recipe: flip one curve into a
short standard position (greedy weight-reducing flips, transporting the
other curve along), then read the minimal transverse count there.

The count is exact by the shuffle principle: both curves keep their
canonical strand order along every edge, and the geometric intersection
number is the minimum of the transverse crossing count over all per-edge
interleavings of the two point sets.  Any interleaving gives honest
representatives (>= i), and a perturbed geodesic configuration realizes
some interleaving (<= i).

For a curve in two-edge standard position the minimum over interleavings
collapses to a two-parameter cut placement, minimized exactly over the
vertices of its piecewise-linear kink arrangement; elsewhere a pruned
search over interleavings is used (weights there stay desk-scale).
"""

from itertools import combinations

from .curves import MultiCurve, trace_strands
from .overlay import Overlay, keys_cross, crossing_sign, signed_crossings

_GRID_CAP = 10_000  # full (pos1+1)x(pos2+1) scan below this
_SHUFFLE_CAP = 2_000_000  # refuse blind interleaving searches above this


# -- shortening ----------------------------------------------------------------


_shorten_cache = {}
_PLATEAU_CAP = 400  # states explored per plateau escape


def _greedy_drop(cur_t, cur_w):
    best = None
    for e in range(cur_t.num_edges):
        if cur_w[e] == 0 or not cur_t.is_flippable(e):
            continue
        new_w = cur_t.flip_weights(e, cur_w)
        drop = cur_w[e] - new_w[e]
        if drop > 0 and (best is None or drop > best[0]):
            best = (drop, e)
    return best


def _plateau_escape(cur_t, cur_w):
    """BFS through weight-preserving flips towards a strict descent.

    Returns the flip path to the first state admitting a strict drop, or
    None; bounded and deterministic.
    """
    start = (cur_t, cur_w)
    seen = {(cur_t.faces, cur_w)}
    queue = [(cur_t, cur_w, ())]
    explored = 0
    while queue and explored < _PLATEAU_CAP:
        st, sw, path = queue.pop(0)
        explored += 1
        for e in range(st.num_edges):
            if sw[e] == 0 or not st.is_flippable(e):
                continue
            nw = st.flip_weights(e, sw)
            if nw[e] > sw[e]:
                continue
            nt = st.flip(e)
            if nw[e] < sw[e]:
                return path + (e,)
            key = (nt.faces, nw)
            if key not in seen:
                seen.add(key)
                queue.append((nt, nw, path + (e,)))
    return None


def shortening_flips(t, weights):
    """Flip sequence reducing the total weight of `weights`.

    Greedy strict descents (largest drop, ties to the smallest label) with a
    bounded breadth-first escape through weight-preserving flips at
    plateaus.  Deterministic, cached.
    """
    key = (t, weights)
    if key in _shorten_cache:
        return _shorten_cache[key]
    flips = []
    cur_t, cur_w = t, weights
    while True:
        best = _greedy_drop(cur_t, cur_w)
        if best is None:
            path = _plateau_escape(cur_t, cur_w)
            if path is None:
                break
            for e in path:
                cur_w = cur_t.flip_weights(e, cur_w)
                cur_t = cur_t.flip(e)
                flips.append(e)
            continue
        e = best[1]
        cur_w = cur_t.flip_weights(e, cur_w)
        cur_t = cur_t.flip(e)
        flips.append(e)
    result = (tuple(flips), cur_t, cur_w)
    _shorten_cache[key] = result
    return result


def apply_flips(t, flips, *weight_vectors):
    vecs = list(weight_vectors)
    for e in flips:
        vecs = [t.flip_weights(e, w) for w in vecs]
        t = t.flip(e)
    return (t, *vecs)


# -- exact minimum over interleavings (general position) -----------------------


def _strand_arcs_by_face(t, x_weights, y_weights):
    """Arcs of both curves per face, endpoints as (edge, own slot, dart)."""
    arcs = [([], []) for _ in range(t.num_faces)]
    for second, weights in ((0, x_weights), (1, y_weights)):
        strands = trace_strands(_W(t, weights))
        for darts, points in strands:
            n = len(darts)
            for i in range(n):
                d_in = darts[i]
                f = t.face_of(d_in)
                d_out = t.reversed_dart(darts[(i + 1) % n])
                arcs[f][second].append(
                    ((d_in, points[i]), (d_out, points[(i + 1) % n]))
                )
    return arcs


class _W:
    __slots__ = ("triangulation", "weights", "is_empty")

    def __init__(self, t, w):
        self.triangulation = t
        self.weights = w
        self.is_empty = not any(w)


def _merged_positions(t, e, wx, wy, mask):
    """Positions of x-slots and y-slots along edge e under interleaving
    `mask` (an iterable of 0/1 of length wx+wy, 0 = x-point)."""
    xs, ys = [], []
    for pos, bit in enumerate(mask):
        (ys if bit else xs).append(pos)
    return xs, ys


def min_shuffle_intersection(t, x_weights, y_weights, cap=_SHUFFLE_CAP):
    """Exact minimum of the transverse count over per-edge interleavings."""
    arcs = _strand_arcs_by_face(t, x_weights, y_weights)
    shared = [
        e for e in range(t.num_edges) if x_weights[e] > 0 and y_weights[e] > 0
    ]
    from math import comb

    work = 1
    for e in shared:
        work *= comb(x_weights[e] + y_weights[e], x_weights[e])
        if work > cap:
            raise RuntimeError(
                "interleaving search too large (%d); shorten further" % work
            )
    # positions for edges without interaction are canonical
    xpos = {}
    ypos = {}
    for e in range(t.num_edges):
        if e not in shared:
            xpos[e] = list(range(x_weights[e]))
            ypos[e] = [x_weights[e] + s for s in range(y_weights[e])]

    def key_of(dart, point, second):
        e, slot = point
        pos = (ypos if second else xpos)[e][slot]
        total = x_weights[e] + y_weights[e]
        if dart != t.canonical_dart(e):
            pos = total - 1 - pos
        return (dart % 3, pos)

    def count_face(f):
        total = 0
        xa, ya = arcs[f]
        for (dx1, px1), (dx2, px2) in xa:
            k1 = key_of(dx1, px1, 0)
            k2 = key_of(dx2, px2, 0)
            for (dy1, py1), (dy2, py2) in ya:
                if keys_cross(k1, k2, key_of(dy1, py1, 1), key_of(dy2, py2, 1)):
                    total += 1
        return total

    # faces become countable once all their shared edges are decided
    face_edges = [set(tri) & set(shared) for tri in t.faces]
    order = sorted(shared)
    face_ready = [[] for _ in range(len(order) + 1)]
    for f in range(t.num_faces):
        if not (arcs[f][0] and arcs[f][1]):
            continue
        need = face_edges[f]
        level = 0 if not need else max(order.index(e) for e in need) + 1
        face_ready[level].append(f)

    best = [None]

    def rec(i, acc):
        if best[0] is not None and acc >= best[0]:
            return
        if i == len(order):
            best[0] = acc
            return
        e = order[i]
        wx, wy = x_weights[e], y_weights[e]
        for positions in combinations(range(wx + wy), wx):
            mask = [1] * (wx + wy)
            for p in positions:
                mask[p] = 0
            xpos[e], ypos[e] = _merged_positions(t, e, wx, wy, mask)
            add = sum(count_face(f) for f in face_ready[i + 1])
            rec(i + 1, acc + add)
        xpos.pop(e, None)
        ypos.pop(e, None)

    base = sum(count_face(f) for f in face_ready[0])
    rec(0, base)
    return best[0]


# -- two-edge standard position fast path --------------------------------------


class _Family:
    """One corner family of b-arcs inside a face: a nested run of chords."""

    __slots__ = ("n", "p_lo", "p_hi", "q_lo", "q_hi")

    def __init__(self, n, p_lo, p_hi, q_lo, q_hi):
        self.n = n  # chords; p-run descending from p_hi, q-run ascending
        self.p_lo, self.p_hi = p_lo, p_hi
        self.q_lo, self.q_hi = q_lo, q_hi


def standard_position_data(t, a_weights):
    """If `a_weights` is a single curve crossing two edges once each,
    return (E1, E2, T1, T2) with T_i the faces of its two arcs, else None."""
    nz = [e for e, w in enumerate(a_weights) if w]
    if len(nz) != 2 or any(a_weights[e] != 1 for e in nz):
        return None
    e1, e2 = nz
    faces = [
        f
        for f in range(t.num_faces)
        if sum(a_weights[lab] for lab in t.faces[f]) == 2
    ]
    if len(faces) != 2:
        return None
    return e1, e2, faces[0], faces[1]


def _face_cut_count(t, wb, f, cuts):
    """Crossings of a virtual chord with the b-arcs of face f.

    `cuts` maps side darts to half-integer linear boundary coordinates; the
    chord joins the two cut values in `cuts`.
    """
    tri = t.faces[f]
    w = [wb[lab] for lab in tri]
    off = [0, w[0], w[0] + w[1]]
    W = w[0] + w[1] + w[2]
    (ka, kb) = sorted(cuts)
    total = 0
    for i in range(3):
        n = (w[i] + w[(i + 1) % 3] - w[(i + 2) % 3]) // 2
        if n == 0:
            continue
        p_lo = off[i] + w[i] - n
        p_hi = off[i] + w[i] - 1
        q_lo = off[(i + 1) % 3]
        q_hi = off[(i + 1) % 3] + n - 1
        # membership counts in the linear open interval (ka, kb)
        cp, jp = _interval_count(p_lo, p_hi, ka, kb)
        cq, jq = _interval_count(q_lo, q_hi, ka, kb)
        # chords with exactly one endpoint inside
        # overlap of the chord index sets: p index j <-> position p_hi - j,
        # q index j <-> position q_lo + j
        jp_set = _to_jset_p(jp, p_hi)
        jq_set = _to_jset_q(jq, q_lo)
        ov = _overlap(jp_set, jq_set)
        total += cp + cq - 2 * ov
    return total


def _interval_count(lo, hi, a, b):
    """Integers of [lo, hi] inside (a, b); a < b are half-integer cuts."""
    s = max(lo, _floor(a) + 1)
    e = min(hi, _ceil(b) - 1)
    if s > e:
        return 0, None
    return e - s + 1, (s, e)


def _floor(x):
    return int(x) if x >= 0 or x == int(x) else int(x) - 1


def _ceil(x):
    return int(x) if x == int(x) else _floor(x) + 1


def _to_jset_p(jinterval, p_hi):
    if jinterval is None:
        return None
    s, e = jinterval
    return (p_hi - e, p_hi - s)


def _to_jset_q(jinterval, q_lo):
    if jinterval is None:
        return None
    s, e = jinterval
    return (s - q_lo, e - q_lo)


def _overlap(j1, j2):
    if j1 is None or j2 is None:
        return 0
    lo = max(j1[0], j2[0])
    hi = min(j1[1], j2[1])
    return max(0, hi - lo + 1)


def annulus_intersection(t, a_weights, b_weights):
    """i(a, b) for `a` in two-edge standard position: minimize the cut count
    over the two insertion positions."""
    std = standard_position_data(t, a_weights)
    if std is None:
        raise ValueError("curve not in standard position")
    e1, e2, f1, f2 = std
    w1, w2 = b_weights[e1], b_weights[e2]

    def side_cut(f, e, pos):
        # (dart in f with edge e, ccw cut position along the side)
        ds = [d for d in t.face_darts(f) if t.edge_of(d) == e]
        d = ds[0]
        tri = t.faces[f]
        w = [b_weights[lab] for lab in tri]
        off = [0, w[0], w[0] + w[1]]
        alpha = pos if d == t.canonical_dart(e) else b_weights[e] - pos
        return off[d % 3] + alpha - 0.5

    def f_eval(pos1, pos2):
        total = 0
        for f in (f1, f2):
            c1 = side_cut(f, e1, pos1)
            c2 = side_cut(f, e2, pos2)
            total += _face_cut_count(t, b_weights, f, (c1, c2))
        return total

    if (w1 + 1) * (w2 + 1) <= _GRID_CAP:
        return min(
            f_eval(p1, p2) for p1 in range(w1 + 1) for p2 in range(w2 + 1)
        )
    # large case: the count is piecewise linear in (pos1, pos2) with kinks
    # along axis-parallel lines (run boundaries) and slope +-1 diagonals
    # (index alignments); minimize over the arrangement vertices.
    verts1 = _axis_candidates(t, b_weights, (f1, f2), e1, w1)
    verts2 = _axis_candidates(t, b_weights, (f1, f2), e2, w2)
    diag = _diag_candidates(verts1, verts2, w1, w2)
    cands = set()
    for p1 in verts1:
        for p2 in verts2:
            cands.add((p1, p2))
    cands.update(diag)
    best = None
    for (p1, p2) in cands:
        if 0 <= p1 <= w1 and 0 <= p2 <= w2:
            v = f_eval(p1, p2)
            if best is None or v < best:
                best = v
    return best


def _axis_candidates(t, wb, faces, e, w):
    vals = {0, w, 1, max(0, w - 1)}
    for f in faces:
        tri = t.faces[f]
        ws = [wb[lab] for lab in tri]
        for i in range(3):
            n = (ws[i] + ws[(i + 1) % 3] - ws[(i + 2) % 3]) // 2
            for side, idx in ((i, i), ((i + 1) % 3, (i + 1) % 3)):
                if t.edge_of(t.face_darts(f)[side]) != e:
                    continue
                # run boundaries on this side, as edge cut positions
                bounds = (0, n, ws[side] - n, ws[side])
                for b in bounds:
                    for db in (-1, 0, 1):
                        v = b + db
                        d = t.face_darts(f)[side]
                        if d != t.canonical_dart(e):
                            v = w - v
                        if 0 <= v <= w:
                            vals.add(v)
    return sorted(vals)


def _diag_candidates(verts1, verts2, w1, w2):
    # slope +-1 kink lines pass through axis-candidate alignments; include
    # their pairwise meetings, clamped to the box
    out = set()
    deltas = set()
    sums = set()
    for v1 in verts1:
        for v2 in verts2:
            deltas.add(v2 - v1)
            sums.add(v2 + v1)
    for d in deltas:
        for s in sums:
            # pos2 - pos1 = d and pos2 + pos1 = s
            if (s - d) % 2 == 0:
                p1 = (s - d) // 2
                p2 = (s + d) // 2
                for a in (-1, 0, 1):
                    for b in (-1, 0, 1):
                        q1, q2 = p1 + a, p2 + b
                        if 0 <= q1 <= w1 and 0 <= q2 <= w2:
                            out.add((q1, q2))
    for v1 in verts1:
        for d in deltas:
            p2 = v1 + d
            for b in (-1, 0, 1):
                if 0 <= p2 + b <= w2:
                    out.add((v1, p2 + b))
        for s in sums:
            p2 = s - v1
            for b in (-1, 0, 1):
                if 0 <= p2 + b <= w2:
                    out.add((v1, p2 + b))
    return out


# -- public entry points --------------------------------------------------------


def geometric_intersection(a, b):
    """The geometric intersection number i(a, b) (minimal position)."""
    if a.triangulation is not b.triangulation:
        raise ValueError("triangulation mismatch")
    if a.is_empty or b.is_empty:
        return 0
    if a.weights == b.weights:
        return 0
    t = a.triangulation
    # shorten the lighter curve and transport the other along
    if sum(a.weights) <= sum(b.weights):
        s_w, o_w = a.weights, b.weights
    else:
        s_w, o_w = b.weights, a.weights
    flips, _, _ = shortening_flips(t, s_w)
    t2, s2, o2 = apply_flips(t, flips, s_w, o_w)
    if standard_position_data(t2, s2) is not None:
        return annulus_intersection(t2, s2, o2)
    # try shortening the other curve too if it helps reach standard position
    flips2, _, _ = shortening_flips(t2, o2)
    t3, s3, o3 = apply_flips(t2, flips2, s2, o2)
    if standard_position_data(t3, o3) is not None:
        return annulus_intersection(t3, o3, s3)
    return min_shuffle_intersection(t3, s3, o3)


def algebraic_intersection(x, y):
    """Signed intersection number of two oriented curves (any transverse
    position computes it; the canonical overlay is used)."""
    from .curves import OrientedCurve

    if not isinstance(x, OrientedCurve) or not isinstance(y, OrientedCurve):
        raise TypeError("algebraic_intersection expects OrientedCurves")
    if x.base.triangulation is not y.base.triangulation:
        raise ValueError("triangulation mismatch")
    ov = Overlay(x.base, y.base)
    raw = _signed_with_orientations(ov, x, y)
    return raw


def _signed_with_orientations(ov, x, y):
    """Signed crossings of the canonical overlay, with each strand's sign
    adjusted to match the requested orientations."""
    t = ov.t

    def matches(darts, oriented):
        # does the traced strand run along `oriented.darts` or its reverse?
        fw = oriented.darts
        n = len(darts)
        if len(fw) != n:
            return None
        dd = darts + darts
        for r in range(n):
            if all(dd[r + i] == fw[i] for i in range(n)):
                return 1
        rv = tuple(t.reversed_dart(d) for d in reversed(fw))
        for r in range(n):
            if all(dd[r + i] == rv[i] for i in range(n)):
                return -1
        return None

    sx = matches(tuple(ov.x_strands[0][0]), x)
    sy = matches(tuple(ov.y_strands[0][0]), y)
    if sx is None or sy is None:
        raise ValueError("orientation data does not match the curves")
    return sx * sy * signed_crossings(ov)
