"""
Multicurves in normal coordinates: realization, tracing, homology.

A multicurve is stored by its edge weights.  The canonical realization puts
w(e) strand points on every edge, ordered along the canonical dart of e, and
joins them inside each face by the corner arcs forced by the coordinates.
Tracing the arcs recovers the components.

Closed paths transverse to the triangulation are encoded as cyclic dart
sequences: dart d_i is the i-th edge crossing, oriented into the face the
path is about to traverse.  Removing folds (d, reversed d) is a free
reduction and yields the normal position; an essential path's reduced
crossing counts are its normal coordinates.
"""

from .surfaces import Triangulation


class MultiCurve:
    """An isotopy class of essential/peripheral multicurve, by edge weights."""

    __slots__ = ("triangulation", "weights", "_hash")

    def __init__(self, triangulation, weights, check=True):
        weights = tuple(int(w) for w in weights)
        if check and not triangulation.is_admissible(weights):
            raise ValueError("weights %s are not admissible" % (weights,))
        self.triangulation = triangulation
        self.weights = weights
        self._hash = hash((id(triangulation), weights))

    @classmethod
    def empty(cls, triangulation):
        return cls(triangulation, (0,) * triangulation.num_edges, check=False)

    @property
    def is_empty(self):
        return not any(self.weights)

    def total_weight(self):
        return sum(self.weights)

    def __add__(self, other):
        if self.triangulation is not other.triangulation:
            raise ValueError("triangulation mismatch")
        return MultiCurve(
            self.triangulation,
            tuple(a + b for a, b in zip(self.weights, other.weights)),
            check=False,
        )

    def __mul__(self, k):
        if k < 0:
            raise ValueError("multiplicity must be non-negative")
        return MultiCurve(self.triangulation, tuple(k * w for w in self.weights), check=False)

    __rmul__ = __mul__

    def __eq__(self, other):
        return (
            isinstance(other, MultiCurve)
            and self.triangulation is other.triangulation
            and self.weights == other.weights
        )

    def __lt__(self, other):
        return self.weights < other.weights

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return "MultiCurve%s" % (self.weights,)

    def to_text(self):
        return "C " + ",".join(str(w) for w in self.weights)

    @classmethod
    def from_text(cls, triangulation, line):
        parts = line.split()
        if parts[0] != "C":
            raise ValueError("not a curve record: %r" % line)
        return cls(triangulation, tuple(int(x) for x in parts[1].split(",")))


class OrientedCurve:
    """A single essential curve with one of its two transverse orientations.

    `darts` is the traced cyclic dart sequence; reversing the orientation
    replaces it by the reversed sequence of reversed darts.
    """

    __slots__ = ("base", "darts")

    def __init__(self, base, darts):
        self.base = base
        self.darts = tuple(darts)

    @classmethod
    def from_curve(cls, curve):
        comps = trace_components(curve)
        if len(comps) != 1 or comps[0][1] != 1:
            raise ValueError("OrientedCurve needs a connected simple curve")
        return cls(curve, comps[0][2])

    def reversed(self):
        t = self.base.triangulation
        rev = tuple(t.reversed_dart(d) for d in reversed(self.darts))
        return OrientedCurve(self.base, rev)

    def __repr__(self):
        return "OrientedCurve%s" % (self.base.weights,)


# -- canonical realization and tracing ----------------------------------------


def _side_point(t, d, pos, weights):
    """Strand point `pos` along dart d (ccw within its face), as (edge, slot).

    Slots along an edge are numbered along its canonical dart.
    """
    e = t.edge_of(d)
    if d == t.canonical_dart(e):
        return (e, pos)
    return (e, weights[e] - 1 - pos)


def corner_arcs(t, weights, f):
    """The corner arcs of face f: list of (point, point, corner_index).

    Corner i joins the last arcs of side i to the first arcs of side i+1,
    innermost first.
    """
    d0, d1, d2 = t.face_darts(f)
    tri = t.faces[f]
    w = [weights[lab] for lab in tri]
    arcs = []
    for i in range(3):
        x = (w[i] + w[(i + 1) % 3] - w[(i + 2) % 3]) // 2
        di = (d0, d1, d2)[i]
        dj = (d0, d1, d2)[(i + 1) % 3]
        for j in range(x):
            p = _side_point(t, di, w[i] - 1 - j, weights)
            q = _side_point(t, dj, j, weights)
            arcs.append((p, q, i))
    return arcs


def trace_strands(curve):
    """
    Trace every strand of the canonical realization.

    Returns one (darts, points) pair per strand copy: darts[i] is the i-th
    crossing oriented into the face it enters, points[i] the strand point
    (edge, ambient slot) of that crossing.  Parallel copies give separate
    strands with their own ambient slots.
    """
    t = curve.triangulation
    weights = curve.weights
    if curve.is_empty:
        return []
    base = [0] * (t.num_edges + 1)
    for e in range(t.num_edges):
        base[e + 1] = base[e] + weights[e]
    npts = base[-1]
    # arcs indexed densely; each strand point carries its two arc-ends
    arc_face = []
    arc_p = []
    arc_q = []
    inc_arc = [-1] * (2 * npts)
    inc_end = [0] * (2 * npts)

    def add_end(pt, aid, end):
        k = 2 * pt if inc_arc[2 * pt] < 0 else 2 * pt + 1
        inc_arc[k] = aid
        inc_end[k] = end

    fd = t.faces
    for f in range(t.num_faces):
        tri = fd[f]
        w = (weights[tri[0]], weights[tri[1]], weights[tri[2]])
        d0 = 3 * f
        for i in range(3):
            x = (w[i] + w[(i + 1) % 3] - w[(i + 2) % 3]) // 2
            if not x:
                continue
            di, dj = d0 + i, d0 + (i + 1) % 3
            ei, ej = tri[i], tri[(i + 1) % 3]
            ci = t.canonical_dart(ei) == di
            cj = t.canonical_dart(ej) == dj
            wi, wj = w[i], w[(i + 1) % 3]
            for j in range(x):
                pi = wi - 1 - j if ci else j
                pj = j if cj else wj - 1 - j
                aid = len(arc_face)
                arc_face.append(f)
                p = base[ei] + pi
                q = base[ej] + pj
                arc_p.append(p)
                arc_q.append(q)
                add_end(p, aid, 0)
                add_end(q, aid, 1)

    edge_of_pt = [0] * npts
    for e in range(t.num_edges):
        for s in range(base[e], base[e + 1]):
            edge_of_pt[s] = e
    seen = [False] * len(arc_face)
    strands = []
    ed = t.edge_darts
    for a0 in range(len(arc_face)):
        if seen[a0]:
            continue
        darts = []
        points = []
        aid, out_end = a0, 1
        while not seen[aid]:
            seen[aid] = True
            exit_pt = arc_q[aid] if out_end == 1 else arc_p[aid]
            k = 2 * exit_pt
            # continue into the arc-end at this point other than our exit
            if inc_arc[k] == aid and inc_end[k] == out_end:
                bid, end = inc_arc[k + 1], inc_end[k + 1]
            else:
                bid, end = inc_arc[k], inc_end[k]
            nf = arc_face[bid]
            e = edge_of_pt[exit_pt]
            dd0, dd1 = ed[e]
            darts.append(dd0 if dd0 // 3 == nf else dd1)
            points.append((e, exit_pt - base[e]))
            aid, out_end = bid, 1 - end
        strands.append((tuple(darts), tuple(points)))
    return strands


def trace_components(curve):
    """
    Decompose into connected components.

    Returns a list of (component: MultiCurve, multiplicity, darts) with
    distinct components, where `darts` is the traced cyclic dart sequence of
    one copy of the component.
    """
    t = curve.triangulation
    groups = {}
    order = []
    for darts, _ in trace_strands(curve):
        counts = [0] * t.num_edges
        for d in darts:
            counts[t.edge_of(d)] += 1
        counts = tuple(counts)
        if counts not in groups:
            groups[counts] = [0, darts]
            order.append(counts)
        groups[counts][0] += 1
    return [
        (MultiCurve(t, counts, check=False), groups[counts][0], groups[counts][1])
        for counts in order
    ]


def components(curve):
    """Connected components with multiplicities; weighted sum reproduces."""
    return [(c, m) for (c, m, _) in trace_components(curve)]


def is_simple_curve(curve):
    comps = trace_components(curve)
    return len(comps) == 1 and comps[0][1] == 1


# -- dart paths ----------------------------------------------------------------


def is_valid_dart_cycle(t, darts):
    n = len(darts)
    return all(
        t.face_of(t.reversed_dart(darts[(i + 1) % n])) == t.face_of(darts[i])
        for i in range(n)
    )


def reduce_dart_cycle(t, darts):
    """Free reduction: cancel adjacent (d, reversed d) folds, cyclically."""
    darts = list(darts)
    while True:
        stack = []
        for d in darts:
            if stack and d == t.reversed_dart(stack[-1]):
                stack.pop()
            else:
                stack.append(d)
        changed = len(stack) != len(darts)
        while len(stack) >= 2 and stack[-1] == t.reversed_dart(stack[0]):
            stack.pop()
            stack.pop(0)
            changed = True
        darts = stack
        if not changed:
            return darts


def curve_from_dart_cycle(t, darts):
    """Normal coordinates of the closed path with the given crossings.

    The path is reduced to normal position; a null-homotopic path reduces to
    nothing and yields the empty multicurve.
    """
    if not is_valid_dart_cycle(t, darts):
        raise ValueError("invalid dart cycle")
    reduced = reduce_dart_cycle(t, darts)
    counts = [0] * t.num_edges
    for d in reduced:
        counts[t.edge_of(d)] += 1
    return MultiCurve(t, counts)


def _face_neighbours(t):
    nf = t.num_faces
    nbrs = [[] for _ in range(nf)]
    for e in range(t.num_edges):
        d0, d1 = t.edge_darts[e]
        f0, f1 = t.face_of(d0), t.face_of(d1)
        if f0 != f1:
            nbrs[f0].append((e, d1, f1))
            nbrs[f1].append((e, d0, f0))
    for lst in nbrs:
        lst.sort()
    return nbrs


def _bridges(t, src, dst, slack=2, cap=12):
    """Simple dart paths from face src to face dst, up to the shortest
    length plus `slack`, capped and in deterministic order."""
    nbrs = _face_neighbours(t)
    dist = {dst: 0}
    queue = [dst]
    while queue:
        u = queue.pop(0)
        for (_, _, v) in nbrs[u]:
            if v not in dist:
                dist[v] = dist[u] + 1
                queue.append(v)
    if src not in dist:
        return []
    limit = dist[src] + slack
    out = []

    def dfs(u, path, used):
        if len(out) >= cap:
            return
        if u == dst:
            out.append(list(path))
            return
        if len(path) >= limit or dist.get(u, limit) > limit - len(path):
            return
        for (_, dart_in, v) in nbrs[u]:
            if v in used:
                continue
            used.add(v)
            path.append(dart_in)
            dfs(v, path, used)
            path.pop()
            used.discard(v)

    dfs(src, [], {src})
    return out


def splice_candidates(c1, c2, slack=2, cap=12):
    """
    Band sums of two disjoint simple curves.

    The traced cycles are joined by a band following a face path; every
    (site, site, direction, bridge) choice gives one candidate class, not
    all embedded.  Yields simple candidates as MultiCurves, deduplicated by
    coordinates, in a deterministic order.
    """
    t = c1.triangulation
    if c2.triangulation is not t:
        raise ValueError("triangulation mismatch")
    w1 = trace_components(c1)
    w2 = trace_components(c2)
    if len(w1) != 1 or len(w2) != 1 or w1[0][1] != 1 or w2[0][1] != 1:
        raise ValueError("splice needs connected simple curves")
    d1 = list(w1[0][2])
    d2 = list(w2[0][2])
    seen = set()
    for extra in range(0, slack + 1, 2):
        for i in range(len(d1)):
            f = t.face_of(d1[i])
            for variant in (d2, [t.reversed_dart(d) for d in reversed(d2)]):
                for j in range(len(variant)):
                    g = t.face_of(variant[j])
                    for bridge in _bridges(t, f, g, slack=extra, cap=cap):
                        back = [t.reversed_dart(d) for d in reversed(bridge)]
                        ins = variant[j + 1 :] + variant[: j + 1]
                        cand = d1[: i + 1] + bridge + ins + back + d1[i + 1 :]
                        try:
                            c = simple_curve_from_dart_cycle(t, cand)
                        except ValueError:
                            continue
                        if c.weights not in seen:
                            seen.add(c.weights)
                            yield c


def _cyclic_eq(a, b):
    if len(a) != len(b):
        return False
    if not a:
        return True
    bb = b + b
    return any(bb[i : i + len(a)] == a for i in range(len(b)))


def simple_curve_from_dart_cycle(t, darts):
    """
    Like `curve_from_dart_cycle` but certifies the class is a simple closed
    curve: the traced component of the resulting coordinates must be the
    reduced cycle itself (up to rotation and reversal).
    """
    reduced = tuple(reduce_dart_cycle(t, darts))
    if not reduced:
        raise ValueError("path is null-homotopic")
    counts = [0] * t.num_edges
    for d in reduced:
        counts[t.edge_of(d)] += 1
    curve = MultiCurve(t, counts)
    comps = trace_components(curve)
    if len(comps) != 1 or comps[0][1] != 1:
        raise ValueError("path does not define a simple closed curve")
    traced = comps[0][2]
    rev = tuple(t.reversed_dart(d) for d in reversed(traced))
    if not (_cyclic_eq(list(traced), list(reduced)) or _cyclic_eq(list(rev), list(reduced))):
        raise ValueError("path reduces to a non-embedded class")
    return curve


# -- peripheral curves and homology --------------------------------------------


def vertex_link(t, v):
    """The puncture-linking curve around vertex v."""
    counts = [0] * t.num_edges
    for e, (d, dd) in enumerate(t.edge_darts):
        counts[e] = (t.tail_vertex(d) == v) + (t.tail_vertex(dd) == v)
    return MultiCurve(t, counts)


def all_vertex_links(t):
    return [vertex_link(t, v) for v in range(t.num_vertices)]


def is_peripheral(curve):
    """True iff the (single-component) curve is puncture-linking."""
    comps = trace_components(curve)
    if len(comps) != 1 or comps[0][1] != 1:
        raise ValueError("is_peripheral needs a single component")
    return any(curve.weights == link.weights for link in all_vertex_links(curve.triangulation))


def dual_spanning_tree(t):
    """BFS spanning tree of the dual graph; returns (tree edge set, cotree).

    The cotree (non-tree edges, sorted) indexes the homology basis: the dual
    graph is a deformation retract of the punctured surface, so cycles pair
    with cotree edges.  Its length is E - F + 1 = 2g + n - 1.
    """
    tree = set()
    seen = {0}
    queue = [0]
    while queue:
        f = queue.pop(0)
        for d in t.face_darts(f):
            g = t.face_of(t.reversed_dart(d))
            if g not in seen:
                seen.add(g)
                tree.add(t.edge_of(d))
                queue.append(g)
    cotree = sorted(set(range(t.num_edges)) - tree)
    return tree, cotree


def homology_class(oriented):
    """
    Class in H_1 of the punctured surface: signed crossing counts over the
    cotree edges of the dual spanning tree (fixed documented basis).
    """
    curve = oriented.base if isinstance(oriented, OrientedCurve) else None
    if curve is None:
        raise TypeError("homology_class expects an OrientedCurve")
    t = curve.triangulation
    _, cotree = dual_spanning_tree(t)
    index = {e: i for i, e in enumerate(cotree)}
    vec = [0] * len(cotree)
    for d in oriented.darts:
        e = t.edge_of(d)
        if e in index:
            vec[index[e]] += 1 if d == t.canonical_dart(e) else -1
    return tuple(vec)


def homology_class_of_curve(curve):
    """Homology class of a single curve with its traced orientation."""
    return homology_class(OrientedCurve.from_curve(curve))


# -- enumeration ----------------------------------------------------------------


def enumerate_curves(t, max_total_weight):
    """
    All essential non-peripheral single curves with weight sum <= the bound.

    Normal coordinates identify isotopy classes, so deduplication is just
    coordinate equality.  Deterministic, sorted output.
    """
    if max_total_weight < 1:
        return []
    ne = t.num_edges
    # faces whose edges are all assigned once we fix edge `i`
    face_ready = [[] for _ in range(ne)]
    for tri in t.faces:
        face_ready[max(tri)].append(tri)
    links = {link.weights for link in all_vertex_links(t)}
    out = []
    w = [0] * ne

    def rec(i, remaining):
        if i == ne:
            if any(w):
                counts = tuple(w)
                comps = trace_components(MultiCurve(t, counts, check=False))
                if len(comps) == 1 and comps[0][1] == 1 and counts not in links:
                    out.append(MultiCurve(t, counts, check=False))
            return
        for v in range(remaining + 1):
            w[i] = v
            ok = True
            for tri in face_ready[i]:
                a, b, c = w[tri[0]], w[tri[1]], w[tri[2]]
                if (a + b + c) % 2 or a > b + c or b > a + c or c > a + b:
                    ok = False
                    break
            if ok:
                rec(i + 1, remaining - v)
        w[i] = 0

    rec(0, max_total_weight)
    out.sort()
    return out
