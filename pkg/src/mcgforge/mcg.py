"""
Mapping classes as Dehn-twist words, their action, and certificates.

Pseudo-Anosov proofs use the twist-family criterion: two families of
disjoint curves whose union fills, twisted positively on one family and
negatively on the other.  Everything else about dynamics is an explicitly
labelled heuristic (growth of intersection numbers).
"""

import math
from dataclasses import dataclass, field

from .curves import (
    MultiCurve,
    enumerate_curves,
    is_peripheral,
    is_simple_curve,
)
from .intersection import geometric_intersection
from .twist import dehn_twist, check_twistable
from .filling import filling_check


class TwistWord:
    """An ordered product of Dehn twists; the rightmost letter acts first."""

    __slots__ = ("triangulation", "letters")

    def __init__(self, triangulation, letters, check=True):
        letters = tuple((c, int(n)) for (c, n) in letters)
        if check:
            for c, n in letters:
                if c.triangulation is not triangulation:
                    raise ValueError("letter curve on a different triangulation")
                if n == 0:
                    raise ValueError("letters need nonzero exponents")
                check_twistable(c)
        self.triangulation = triangulation
        self.letters = letters

    @classmethod
    def identity(cls, triangulation):
        return cls(triangulation, ())

    def __mul__(self, other):
        if self.triangulation is not other.triangulation:
            raise ValueError("triangulation mismatch")
        return TwistWord(self.triangulation, self.letters + other.letters, check=False)

    def inverse(self):
        return TwistWord(
            self.triangulation,
            tuple((c, -n) for (c, n) in reversed(self.letters)),
            check=False,
        )

    def __len__(self):
        return len(self.letters)

    def __repr__(self):
        return "TwistWord(%d letters)" % len(self.letters)

    def to_text(self):
        """`[c0^1, c1^-2, ...]` plus one `C ...` table line per curve."""
        table = []
        index = {}
        for c, _ in self.letters:
            if c.weights not in index:
                index[c.weights] = len(table)
                table.append(c)
        word = ", ".join("c%d^%d" % (index[c.weights], n) for c, n in self.letters)
        lines = ["%d: %s" % (i, c.to_text()) for i, c in enumerate(table)]
        return "[" + word + "]\n" + "\n".join(lines)


def act(word, curve):
    """Normal coordinates of word(curve)."""
    if word.triangulation is not curve.triangulation:
        raise ValueError("surface mismatch")
    c = curve
    for letter, n in reversed(word.letters):
        c = dehn_twist(letter, n, c)
    return c


def twist_law_check(a, b, n):
    """Verify i(tau_a^n(b), b) = |n| * i(a,b)^2 (exact)."""
    if not is_simple_curve(a) or not is_simple_curve(b):
        raise ValueError("twist law check needs single curves")
    i_ab = geometric_intersection(a, b)
    if n == 0:
        return True
    tb = dehn_twist(a, n, b)
    return geometric_intersection(tb, b) == abs(n) * i_ab * i_ab


# -- certificates -----------------------------------------------------------------


@dataclass
class Certificate:
    kind: str  # PennerPA | GrowthPA | FreeRank2 | LongMortonOK | DistanceBound
    premises: tuple
    payload: dict = field(default_factory=dict)

    def record(self):
        return {
            "kind": self.kind,
            "premises": list(self.premises),
            "payload": dict(self.payload),
        }


@dataclass
class FailureReport:
    kind: str
    reason: str
    data: dict = field(default_factory=dict)

    def record(self):
        return {"kind": self.kind, "reason": self.reason, "data": dict(self.data)}


def penner_certify(word, A, B):
    """
    Twist-family pseudo-Anosov certificate.

    Certified iff the A-family and B-family are each pairwise disjoint,
    their union fills, every letter is a positive twist on an A-curve or a
    negative twist on a B-curve, and every family curve occurs.  Returns
    None when any hypothesis fails (absence is not an error).
    """
    premises = []
    for name, fam in (("A", A), ("B", B)):
        vals = []
        for i in range(len(fam)):
            for j in range(i + 1, len(fam)):
                vals.append(geometric_intersection(fam[i], fam[j]))
        premises.append(
            {
                "check": "family_disjoint",
                "family": name,
                "curves": [list(c.weights) for c in fam],
                "pairwise": vals,
            }
        )
        if any(vals):
            return None
    report = filling_check(list(A) + list(B))
    premises.append({"check": "filling", "report": report.record()})
    if not report.fills:
        return None
    a_set = {c.weights for c in A}
    b_set = {c.weights for c in B}
    signs_ok = True
    for c, n in word.letters:
        if n > 0 and c.weights in a_set:
            continue
        if n < 0 and c.weights in b_set:
            continue
        signs_ok = False
        break
    premises.append({"check": "letter_signs", "ok": signs_ok})
    if not signs_ok:
        return None
    used = {c.weights for c, _ in word.letters}
    covered = a_set <= used and b_set <= used
    premises.append({"check": "coverage", "ok": covered})
    if not covered:
        return None
    return Certificate(
        "PennerPA",
        tuple(premises),
        {"word_length": len(word.letters)},
    )


DEFAULT_GROWTH_DELTA = 0.05
GROWTH_WINDOW = 4


@dataclass
class GrowthResult:
    values: list
    estimate: float or None
    verdict: str  # HeuristicPA | HeuristicReducibleOrPeriodic
    certificate: Certificate or None

    def record(self):
        return {
            "values": list(self.values),
            "estimate": self.estimate,
            "verdict": self.verdict,
            "certificate": self.certificate.record() if self.certificate else None,
        }


def growth_estimate(word, seed, iterations, delta=DEFAULT_GROWTH_DELTA):
    """
    Heuristic pseudo-Anosov verdict from intersection growth; never a proof.

    Computes i(word^n(seed), seed) for n = 1..N; the verdict is HeuristicPA
    iff the log-ratios log i_{n+1} / log i_n over the last `GROWTH_WINDOW`
    steps all exceed 1 + delta.
    """
    if iterations < GROWTH_WINDOW:
        raise ValueError("need at least %d iterations" % GROWTH_WINDOW)
    if seed.is_empty or is_peripheral(seed):
        raise ValueError("seed must be an essential curve")
    vals = []
    c = seed
    for _ in range(iterations):
        c = act(word, c)
        vals.append(geometric_intersection(c, seed))
    estimate = None
    if vals[-2] > 0:
        estimate = vals[-1] / vals[-2]
    tail = vals[-(GROWTH_WINDOW + 1):]
    ratios = []
    ok = all(v > 1 for v in tail)
    if ok:
        ratios = [
            math.log(tail[i + 1]) / math.log(tail[i]) for i in range(len(tail) - 1)
        ]
        ok = all(r > 1 + delta for r in ratios)
    verdict = "HeuristicPA" if ok else "HeuristicReducibleOrPeriodic"
    cert = None
    if ok:
        cert = Certificate(
            "GrowthPA",
            (
                {
                    "check": "growth_ratios",
                    "values": vals,
                    "log_ratios": ratios,
                    "delta": delta,
                    "seed": list(seed.weights),
                },
            ),
            {"estimate": estimate, "heuristic": True},
        )
    return GrowthResult(vals, estimate, verdict, cert)


def hamidi_tehrani(a, b):
    """FreeRank2 certificate: twists on curves with i(a,b) >= 2 generate a
    rank-two free group.  None when the hypothesis fails."""
    if not is_simple_curve(a) or not is_simple_curve(b):
        raise ValueError("needs single essential curves")
    i_ab = geometric_intersection(a, b)
    if i_ab < 2:
        return None
    return Certificate(
        "FreeRank2",
        (
            {
                "check": "intersection_at_least_two",
                "a": list(a.weights),
                "b": list(b.weights),
                "intersection": i_ab,
            },
        ),
        {"intersection": i_ab},
    )


def long_morton_check(word, pa_certificate, gammas):
    """
    Hypothesis check for composing a pseudo-Anosov with twist powers along
    disjoint curves: the curves must be essential, non-peripheral, pairwise
    disjoint and non-parallel, and word(gamma_i) must meet every gamma_j.

    The threshold exponent of the conclusion is not effective and is not
    computed; the certificate records existential wording only.
    """
    if pa_certificate is None or pa_certificate.kind not in ("PennerPA", "GrowthPA"):
        raise ValueError("need a PennerPA or (flagged) GrowthPA certificate")
    k = len(gammas)
    for i, c in enumerate(gammas):
        if c.is_empty or not is_simple_curve(c):
            return FailureReport(
                "LongMorton", "curve %d is not a simple closed curve" % i
            )
        if is_peripheral(c):
            return FailureReport("LongMorton", "curve %d is boundary parallel" % i)
    for i in range(k):
        for j in range(i + 1, k):
            if gammas[i].weights == gammas[j].weights:
                return FailureReport(
                    "LongMorton", "parallel curves", {"pair": [i, j]}
                )
            if geometric_intersection(gammas[i], gammas[j]) != 0:
                return FailureReport(
                    "LongMorton", "curves %d and %d intersect" % (i, j)
                )
    images = [act(word, c) for c in gammas]
    matrix = []
    for i in range(k):
        row = []
        for j in range(k):
            v = geometric_intersection(images[i], gammas[j])
            if v == 0:
                return FailureReport(
                    "LongMorton",
                    "i(f(gamma_%d), gamma_%d) = 0" % (i, j),
                    {"pair": [i, j]},
                )
            row.append(v)
        matrix.append(row)
    return Certificate(
        "LongMortonOK",
        (
            {"check": "pa_input", "certificate": pa_certificate.record()},
            {
                "check": "twist_family_hypotheses",
                "curves": [list(c.weights) for c in gammas],
                "image_intersections": matrix,
            },
        ),
        {
            "conclusion": "f o tau^{n_1}_{gamma_1} o ... is pseudo-Anosov for "
            "all exponent vectors with every |n_i| > some n; the threshold n "
            "is not effective and is not computed",
            "heuristic_input": pa_certificate.kind == "GrowthPA",
        },
    )


# -- curve graph -------------------------------------------------------------------


def adjacency_intersection(sig):
    """Edge rule of the curve graph: disjointness, except the sporadic-
    adjacent conventions i=1 on the once-punctured torus and i=2 on the
    4-punctured sphere."""
    if (sig.genus, sig.boundary) == (1, 1):
        return 1
    if (sig.genus, sig.boundary) == (0, 4):
        return 2
    return 0


@dataclass
class DistanceResult:
    distance: int or None
    status: str  # "exact" | "exceeds_cap"
    cap: int
    weight_bound: int

    def record(self):
        return {
            "distance": self.distance,
            "status": self.status,
            "cap": self.cap,
            "weight_bound": self.weight_bound,
        }


_graph_cache = {}


def _curve_graph(t, weight_bound):
    key = (t, weight_bound)
    if key not in _graph_cache:
        verts = enumerate_curves(t, weight_bound)
        adj_val = adjacency_intersection(t.sig)
        n = len(verts)
        nbrs = [[] for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                if geometric_intersection(verts[i], verts[j]) == adj_val:
                    nbrs[i].append(j)
                    nbrs[j].append(i)
        _graph_cache[key] = (verts, {c.weights: i for i, c in enumerate(verts)}, nbrs)
    return _graph_cache[key]


def curve_graph_distance(a, b, cap=5, weight_bound=12):
    """
    BFS distance in the curve graph restricted to curves of weight at most
    `weight_bound`.

    The returned distance is exact for the truncated graph; the truncation
    and the cap are reported so callers can tell an honest "exceeds cap"
    from a possibly-truncated geodesic.
    """
    t = a.triangulation
    if t is not b.triangulation:
        raise ValueError("triangulation mismatch")
    sig = t.sig
    if not sig.nonsporadic:
        raise ValueError("curve graph needs a non-sporadic surface")
    for c in (a, b):
        if c.is_empty or not is_simple_curve(c) or is_peripheral(c):
            raise ValueError("curve graph vertices are essential non-peripheral")
    if a.weights == b.weights:
        return DistanceResult(0, "exact", cap, weight_bound)
    adj_val = adjacency_intersection(sig)
    verts, index, nbrs = _curve_graph(t, weight_bound)
    extra = []
    for c in (a, b):
        if c.weights not in index:
            extra.append(c)
    if extra:
        verts = list(verts) + extra
        index = dict(index)
        nbrs = [list(x) for x in nbrs]
        for c in extra:
            i = len(nbrs)
            index[c.weights] = i
            nbrs.append([])
            for j in range(i):
                if geometric_intersection(c, verts[j]) == adj_val:
                    nbrs[i].append(j)
                    nbrs[j].append(i)
    src, dst = index[a.weights], index[b.weights]
    dist = {src: 0}
    frontier = [src]
    d = 0
    while frontier and d < cap:
        d += 1
        new = []
        for u in frontier:
            for v in nbrs[u]:
                if v not in dist:
                    dist[v] = d
                    if v == dst:
                        return DistanceResult(d, "exact", cap, weight_bound)
                    new.append(v)
        frontier = new
    return DistanceResult(None, "exceeds_cap", cap, weight_bound)


def distance_bound_check(a, b, cap=7, weight_bound=12):
    """Assert the curve-graph bound d(a,b) <= 2 i(a,b) + 1."""
    res = curve_graph_distance(a, b, cap=cap, weight_bound=weight_bound)
    if res.distance is None:
        raise RuntimeError("distance not computable within the cap")
    return res.distance <= 2 * geometric_intersection(a, b) + 1


def lemma_fill_bound(n0, i_ab):
    """Lower bound N_0 - (2 i(a,b) + 1) for d(b, h(a)); positive values
    certify h(a) != b."""
    if n0 < 0 or i_ab < 0:
        raise ValueError("arguments must be non-negative")
    return n0 - (2 * i_ab + 1)


@dataclass
class SearchResult:
    candidate: MultiCurve or None
    distance: int or None
    status: str  # "exact" | "lower_bounded" | "inconclusive"
    examined: int

    def record(self):
        return {
            "candidate": list(self.candidate.weights) if self.candidate else None,
            "distance": self.distance,
            "status": self.status,
            "examined": self.examined,
        }


def large_distance_search(word, target, weight_bound=8, cap=4, max_candidates=200):
    """
    Heuristic search for a curve far from its image in the curve graph.

    Maximizes the BFS-computed d(c, word(c)) over enumerated curves; budget
    exhaustion is reported, never silent.
    """
    t = word.triangulation
    cands = enumerate_curves(t, weight_bound)[:max_candidates]
    best = None
    best_d = -1
    capped = False
    for c in cands:
        img = act(word, c)
        if img.weights == c.weights:
            d, status = 0, "exact"
        else:
            res = curve_graph_distance(c, img, cap=cap, weight_bound=weight_bound)
            if res.distance is None:
                capped = True
                continue
            d = res.distance
        if d > best_d:
            best, best_d = c, d
    if best is None:
        return SearchResult(None, None, "inconclusive", len(cands))
    if best_d >= target:
        return SearchResult(best, best_d, "exact", len(cands))
    status = "inconclusive" if capped else "exact"
    return SearchResult(best, best_d, status, len(cands))
