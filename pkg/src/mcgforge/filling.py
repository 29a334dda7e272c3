"""
Filling checks: classify the complement of a system of curves.

The system is realized as a joint arrangement in which every pair of curves
meets in exactly its geometric intersection number (a per-edge interleaving
search certifies this, so the arrangement is pairwise minimal).  The
complement regions are built by cutting every face along the chords and
gluing the pieces across the triangulation edges.

A region is reported as a disk, as a boundary-parallel annulus (a disk
around one puncture; punctures model boundary components), or as `other`
with its closed-up Euler characteristic and puncture count.
"""

from itertools import combinations, permutations
from dataclasses import dataclass

from .curves import trace_strands
from .intersection import geometric_intersection
from .overlay import keys_cross


@dataclass
class Region:
    kind: str  # "disk" | "peripheral_annulus" | "other"
    chi: int  # Euler characteristic of the closed-up region
    punctures: int

    def record(self):
        return {"kind": self.kind, "chi": self.chi, "punctures": self.punctures}


@dataclass
class FillingReport:
    fills: bool
    regions: list

    def record(self):
        return {"fills": self.fills, "regions": [r.record() for r in self.regions]}


# -- joint minimal overlay ------------------------------------------------------


def _arcs_by_curve(t, system):
    out = []
    for c in system:
        arcs = [[] for _ in range(t.num_faces)]
        for darts, points in trace_strands(c):
            n = len(darts)
            for i in range(n):
                f = t.face_of(darts[i])
                arcs[f].append(
                    (
                        (darts[i], points[i]),
                        (t.reversed_dart(darts[(i + 1) % n]), points[(i + 1) % n]),
                    )
                )
        out.append(arcs)
    return out


def _joint_positions(t, all_weights, targets, arcs_by_curve):
    """Per-edge interleavings of all curves realizing every pairwise
    minimum; None if the bounded search fails."""
    s = len(all_weights)
    totals = [sum(w[e] for w in all_weights) for e in range(t.num_edges)]

    def key(pos, ci, dart, point):
        e, slot = point
        p = pos[ci][e][slot]
        if dart != t.canonical_dart(e):
            p = totals[e] - 1 - p
        return (dart % 3, p)

    def face_count(f, pos, x, y):
        cnt = 0
        for (d1, p1), (d2, p2) in arcs_by_curve[x][f]:
            k1 = key(pos, x, d1, p1)
            k2 = key(pos, x, d2, p2)
            for (e1, q1), (e2, q2) in arcs_by_curve[y][f]:
                if keys_cross(k1, k2, key(pos, y, e1, q1), key(pos, y, e2, q2)):
                    cnt += 1
        return cnt

    choice = [
        e
        for e in range(t.num_edges)
        if sum(1 for w in all_weights if w[e]) >= 2
    ]
    order = sorted(choice)
    face_level = []
    for f in range(t.num_faces):
        need = [e for e in set(t.faces[f]) if e in choice]
        face_level.append(0 if not need else max(order.index(e) for e in need) + 1)

    pos = []
    for ci in range(s):
        d = {}
        for e in range(t.num_edges):
            if e not in choice:
                off = sum(all_weights[cj][e] for cj in range(ci))
                d[e] = [off + k for k in range(all_weights[ci][e])]
        pos.append(d)

    def level_count(level, pos, counts):
        for f in range(t.num_faces):
            if face_level[f] != level:
                continue
            for (x, y) in combinations(range(s), 2):
                c = face_count(f, pos, x, y)
                if c:
                    counts[(x, y)] = counts.get((x, y), 0) + c
                    if counts[(x, y)] > targets[(x, y)]:
                        return False
        return True

    best = [None]

    def rec(i, counts):
        if best[0] is not None:
            return
        if i == len(order):
            if all(counts.get(p, 0) == targets[p] for p in targets):
                best[0] = [dict(p) for p in pos]
            return
        e = order[i]
        users = [ci for ci in range(s) if all_weights[ci][e]]
        blocks = []
        for ci in users:
            blocks.extend([ci] * all_weights[ci][e])
        tried = set()
        for perm in permutations(blocks):
            if perm in tried:
                continue
            tried.add(perm)
            for ci in users:
                pos[ci][e] = [k for k, c in enumerate(perm) if c == ci]
            new_counts = dict(counts)
            if level_count(i + 1, pos, new_counts):
                rec(i + 1, new_counts)
            if best[0] is not None:
                return
        for ci in users:
            pos[ci].pop(e, None)

    counts0 = {}
    if level_count(0, pos, counts0):
        rec(0, counts0)
    return best[0]


# -- arrangement cells ----------------------------------------------------------


def _face_cells(t, f, totals, chords):
    """
    Cells of face f cut along `chords` (pairs of boundary indices).

    The face boundary is indexed: side i occupies a block [corner_i, points
    of side i in ccw order].  Returns (cells, m, blocks) where each cell is
    (boundary index set, crossing keys, segment tags); boundary segment k
    runs from index k to k+1 mod m.
    """
    tri = t.faces[f]
    blocks = []
    m = 0
    for i in range(3):
        blocks.append(m)
        m += 1 + totals[tri[i]]

    bname = lambda k: ("b", k)

    crossings = {}
    cross_list = []
    for i, (a1, a2) in enumerate(chords):
        for j in range(i + 1, len(chords)):
            b1, b2 = chords[j]
            lo, hi = min(a1, a2), max(a1, a2)
            if (lo < b1 < hi) != (lo < b2 < hi):
                crossings[(i, j)] = ("x", i, j)
                cross_list.append((i, j))

    def ordered_crossings(i):
        # crossings along chord i from its first endpoint, ordered by the
        # cyclic distance of each partner's interleaved endpoint (exact for
        # pairwise-disjoint partners, deterministic otherwise)
        a1, a2 = chords[i]
        a_fwd = (a2 - a1) % m
        out = []
        for (p, q) in cross_list:
            if i not in (p, q):
                continue
            j = q if p == i else p
            ins = None
            for b in chords[j]:
                if 0 < (b - a1) % m < a_fwd:
                    ins = (b - a1) % m
            out.append((ins, crossings[(p, q)]))
        out.sort()
        return [x for _, x in out]

    adj = {}

    def add(u, v, tag):
        adj.setdefault(u, []).append((v, tag))
        adj.setdefault(v, []).append((u, tag))

    for k in range(m):
        add(bname(k), bname((k + 1) % m), ("arc", k))

    chord_paths = {}
    for i, (a1, a2) in enumerate(chords):
        path = [bname(a1)] + ordered_crossings(i) + [bname(a2)]
        chord_paths[i] = path
        for k in range(len(path) - 1):
            add(path[k], path[k + 1], ("c", i, k))

    def seg_far(u, tag):
        # boundary position the segment heads toward, leaving node u
        i = tag[1]
        path = chord_paths[i]
        k = tag[2]
        target = path[k + 1] if path[k] == u else path[k]
        if target[0] == "b":
            return target[1]
        # target is a crossing: keep walking the chord in that direction
        if path[k] == u:
            return chords[i][1]
        return chords[i][0]

    rot = {}
    for u, nbrs in adj.items():
        if u[0] == "b":
            idx = u[1]
            fwd = []
            for (v, tag) in nbrs:
                if tag[0] == "arc":
                    d = ((v[1] if v[0] == "b" else 0) - idx) % m
                    keyv = (0.0, 0) if d == 1 else (float(m), 1)
                else:
                    far = seg_far(u, tag)
                    keyv = (((far - idx) % m) + 0.5, 2)
                fwd.append((keyv, (v, tag)))
            fwd.sort(key=lambda it: it[0])
            rot[u] = [it for _, it in fwd]
        else:
            ends = []
            for (v, tag) in nbrs:
                far = seg_far(u, tag)
                ends.append((far % m, (v, tag)))
            ends.sort()
            rot[u] = [it for _, it in ends]

    visited = set()
    cells = []
    for u in adj:
        for (v, tag) in adj[u]:
            he = (u, v, tag)
            if he in visited:
                continue
            cycle = []
            cur = he
            while cur not in visited:
                visited.add(cur)
                cycle.append(cur)
                uu, vv, tg = cur
                items = rot[vv]
                k = items.index((uu, tg))
                nv, ntag = items[(k - 1) % len(items)]
                cur = (vv, nv, ntag)
            cells.append(cycle)

    inner = []
    for cycle in cells:
        rev_arcs = sum(
            1
            for (u, v, tag) in cycle
            if tag[0] == "arc" and (u[1] - v[1]) % m == 1
        )
        if rev_arcs == m and all(
            tag[0] == "arc" for (_, _, tag) in cycle
        ):
            continue  # outer cell
        inner.append(cycle)
    return inner, m, blocks


def filling_check(system):
    """
    Overlay the curve system pairwise-minimally and classify the complement.

    Returns a FillingReport; `fills` iff every region is a disk or a
    boundary-parallel annulus.
    """
    system = [c for c in system if not c.is_empty]
    if not system:
        raise ValueError("empty curve system")
    t = system[0].triangulation
    if any(c.triangulation is not t for c in system):
        raise ValueError("curves live on different triangulations")
    s = len(system)
    all_weights = [c.weights for c in system]
    targets = {}
    for (x, y) in combinations(range(s), 2):
        targets[(x, y)] = geometric_intersection(system[x], system[y])
    arcs_by_curve = _arcs_by_curve(t, system)
    pos = _joint_positions(t, all_weights, targets, arcs_by_curve)
    if pos is None:
        raise RuntimeError("no jointly minimal overlay found within the search")

    totals = [sum(w[e] for w in all_weights) for e in range(t.num_edges)]

    # face-by-face arrangements; each cell keeps its ordered boundary cycle
    all_cells = []  # (vertex keys per corner position, #sides)
    bseg_sides = {}  # bseg tag -> [(cell index, position)]
    for f in range(t.num_faces):
        chords = []
        for ci in range(s):
            for (din, pin), (dout, pout) in arcs_by_curve[ci][f]:
                chords.append(
                    (
                        _bindex(t, f, din, pin, pos, ci, totals),
                        _bindex(t, f, dout, pout, pos, ci, totals),
                    )
                )
        cells, m, blocks = _face_cells(t, f, totals, chords)
        node_key = {}
        seg_tag = {}
        for i in range(3):
            d = t.face_darts(f)[i]
            e = t.edge_of(d)
            canon = d == t.canonical_dart(e)
            start = blocks[i]
            node_key[start] = ("vx", t.tail_vertex(d))
            n_e = totals[e]
            for p in range(n_e):
                slot = p if canon else n_e - 1 - p
                node_key[start + 1 + p] = ("pt", e, slot)
            # gap g along the canonical direction starts at side position g
            for g in range(n_e + 1):
                pos_in_side = g if canon else n_e - g
                seg_tag[(start + pos_in_side) % m] = ("bseg", e, g)
        for cycle in cells:
            idx = len(all_cells)
            corners = []
            for (u, v, tag) in cycle:
                corners.append(node_key[u[1]] if u[0] == "b" else ("x", f) + u[1:])
            all_cells.append((corners, len(cycle)))
            for p, (u, v, tag) in enumerate(cycle):
                if tag[0] == "arc":
                    bseg_sides.setdefault(seg_tag[tag[1]], []).append((idx, p))

    # glue cells across edge segments
    parent = list(range(len(all_cells)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    corner_parent = {}

    def cfind(x):
        while corner_parent.setdefault(x, x) != x:
            corner_parent[x] = corner_parent[corner_parent[x]]
            x = corner_parent[x]
        return x

    def cunion(a, b):
        ra, rb = cfind(a), cfind(b)
        if ra != rb:
            corner_parent[ra] = rb

    glued = 0
    for tg, owners in bseg_sides.items():
        if len(owners) != 2:
            raise AssertionError("segment %s glued %d times" % (tg, len(owners)))
        (ca, pa), (cb, pb) = owners
        ra, rb = find(ca), find(cb)
        if ra != rb:
            parent[ra] = rb
        na, nb = all_cells[ca][1], all_cells[cb][1]
        # opposite traversal directions: start of one side meets end of the
        # other
        cunion((ca, pa), (cb, (pb + 1) % nb))
        cunion((ca, (pa + 1) % na), (cb, pb))

    region_cells = {}
    for idx in range(len(all_cells)):
        region_cells.setdefault(find(idx), []).append(idx)
    region_bsegs = {}
    for tg, ((ca, _), _unused) in ((tg, o) for tg, o in bseg_sides.items()):
        region_bsegs.setdefault(find(ca), []).append(tg)

    regions = []
    for root in sorted(region_cells):
        cells = region_cells[root]
        F = len(cells)
        sides = sum(all_cells[ci][1] for ci in cells)
        n_glued = len(region_bsegs.get(root, ()))
        E = sides - n_glued
        corner_orbits = set()
        punct = set()
        for ci in cells:
            corners, n = all_cells[ci]
            for p in range(n):
                corner_orbits.add(cfind((ci, p)))
                if corners[p][0] == "vx":
                    punct.add(corners[p][1])
        chi = len(corner_orbits) - E + F
        if chi == 1 and not punct:
            kind = "disk"
        elif chi == 1 and len(punct) == 1:
            kind = "peripheral_annulus"
        else:
            kind = "other"
        regions.append(Region(kind, chi, len(punct)))
    regions.sort(key=lambda r: (r.kind, r.chi, r.punctures))
    fills = all(r.kind in ("disk", "peripheral_annulus") for r in regions)
    return FillingReport(fills, regions)


def _bindex(t, f, dart, point, pos, ci, totals):
    e, slot = point
    p = pos[ci][e][slot]
    n_e = totals[e]
    side = dart % 3
    start = 0
    for i in range(side):
        start += 1 + totals[t.faces[f][i]]
    ccw = p if dart == t.canonical_dart(e) else n_e - 1 - p
    return start + 1 + ccw
