"""
Distinguished curves on standard pages.

Curves on the polygon model of Sigma_{g,n} are specified by side-pair
words: the cyclic sequence of polygon side pairs the curve crosses, each
with a direction (+1 crosses the pair via its canonical dart).  Between
crossings the curve runs through the interior fan, so a word determines an
isotopy class; instantiation produces its normal coordinates.

The stabilization catalog (band cores, Stallings band sums, free-coset
curves) is hard-coded here as words; its defining properties are enforced
by the openbook test battery rather than by construction.
"""

from functools import lru_cache

from .curves import MultiCurve, simple_curve_from_dart_cycle
from .surfaces import standard_triangulation, SurfaceSig


def _interior_routes(t, blocked):
    """Shortest dart routes between faces through non-blocked edges.

    Returns route[u][v] = list of darts crossing from u to v; deterministic
    (BFS over smallest edge labels first).
    """
    nf = t.num_faces
    nbrs = [[] for _ in range(nf)]
    for e in range(t.num_edges):
        if e in blocked:
            continue
        d0, d1 = t.edge_darts[e]
        f0, f1 = t.face_of(d0), t.face_of(d1)
        if f0 != f1:
            nbrs[f0].append((e, d1, f1))
            nbrs[f1].append((e, d0, f0))
    for lst in nbrs:
        lst.sort()
    routes = []
    for src in range(nf):
        prev = {src: None}
        queue = [src]
        while queue:
            u = queue.pop(0)
            for (e, dart_in, v) in nbrs[u]:
                if v not in prev:
                    prev[v] = (u, dart_in)
                    queue.append(v)
        route = {}
        for v in prev:
            path = []
            cur = v
            while prev[cur] is not None:
                u, dart_in = prev[cur]
                path.append(dart_in)
                cur = u
            route[v] = list(reversed(path))
        routes.append(route)
    return routes


class Page:
    """A standard page with its side-pair word calculus."""

    def __init__(self, sig):
        if isinstance(sig, tuple):
            sig = SurfaceSig(*sig)
        self.sig = sig
        self.triangulation = standard_triangulation(sig)
        t = self.triangulation
        self._blocked = set(t.side_pair_edges)
        self._routes = _interior_routes(t, self._blocked)

    def curve(self, word):
        """Instantiate a side-pair word [(pair_index, +-1), ...]."""
        t = self.triangulation
        if not word:
            raise ValueError("empty word")
        darts = []
        crossing = []
        for (pair, sign) in word:
            e = t.side_pair_edges[pair]
            d0, d1 = t.edge_darts[e]
            crossing.append(d0 if sign > 0 else d1)
        k = len(crossing)
        for j in range(k):
            darts.append(crossing[j])
            u = t.face_of(crossing[j])
            v = t.face_of(t.reversed_dart(crossing[(j + 1) % k]))
            route = self._routes[u].get(v)
            if route is None:
                raise ValueError("no interior route between crossings")
            darts.extend(route)
        return simple_curve_from_dart_cycle(t, darts)

    # -- the Penner system of the page ------------------------------------

    def penner_A(self):
        """a_1 .. a_g: the curves dual to the b_i side pairs."""
        g = self.sig.genus
        return [self.curve([(2 * i + 1, 1)]) for i in range(g)]

    def penner_B(self):
        g = self.sig.genus
        return [self.curve([(2 * i, 1)]) for i in range(g)]

    def meridian(self, handle):
        """The curve crossing the b-pair of the given handle once."""
        return self.curve([(2 * handle + 1, 1)])

    def dual(self, handle):
        """The curve crossing the a-pair of the given handle once."""
        return self.curve([(2 * handle, 1)])

    # -- the filling chain system ------------------------------------------
    #
    # The handle pairs (meridian_i, dual_i) realize the delta-pairing but
    # for g >= 2 their union never fills (the complement keeps an essential
    # annulus, by Euler count), so pseudo-Anosov base monodromies use a
    # 2g-chain instead: consecutive chain curves meet once, all other pairs
    # are disjoint, and the full chain fills with a single boundary-parallel
    # complementary region.  Chain connectors are band sums of neighbouring
    # duals, found by a deterministic splice search.

    def chain_over(self, handles):
        """Chain system threading the given handles, in order:
        meridian, connector, meridian, ..., meridian, dual."""
        from .curves import splice_candidates
        from .intersection import geometric_intersection as _gi

        mers = [self.meridian(h) for h in handles]
        out = [mers[0]]
        connectors = []
        for idx in range(len(handles) - 1):
            d1 = self.dual(handles[idx])
            d2 = self.dual(handles[idx + 1])
            found = None
            for c in splice_candidates(d1, d2):
                vec = [_gi(c, m) for m in mers]
                want = [0] * len(mers)
                want[idx] = want[idx + 1] = 1
                if vec != want:
                    continue
                if any(_gi(c, x) for x in connectors):
                    continue
                found = c
                break
            if found is None:
                raise RuntimeError(
                    "no chain connector between handles %s and %s"
                    % (handles[idx], handles[idx + 1])
                )
            connectors.append(found)
            out.append(found)
            out.append(mers[idx + 1])
        out.append(self.dual(handles[-1]))
        n = len(out)
        for i in range(n):
            for j in range(i + 1, n):
                want = 1 if j == i + 1 else 0
                if _gi(out[i], out[j]) != want:
                    raise AssertionError("chain system failed verification")
        return out

    def chain(self):
        return self.chain_over(list(range(self.sig.genus)))

    def penner_word_letters(self, handles=None):
        """Letters of the standard pseudo-Anosov word threading `handles`:
        positive twists on odd chain curves, negative on even ones."""
        ch = self.chain() if handles is None else self.chain_over(handles)
        letters = []
        for i in range(0, len(ch), 2):
            letters.append((ch[i], 1))
            letters.append((ch[i + 1], -1))
        return letters


@lru_cache(maxsize=None)
def page(genus, boundary=1):
    return Page(SurfaceSig(genus, boundary))


def stabilized_handles(g, k):
    """Handle assignment of the stabilized page Sigma_{g+k,1}.

    Base handles interleave with the new ones so that the stabilization
    bands of pair i attach next to base handle i; the leftover base handles
    (k < g) follow.  Returns (base_handles, new_handles), 0-indexed.
    """
    if not 1 <= k <= g:
        raise ValueError("need 1 <= k <= g")
    base = [2 * i for i in range(k)] + list(range(2 * k, g + k))
    new = [2 * i + 1 for i in range(k)]
    return base, new
