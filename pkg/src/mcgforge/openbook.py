"""
Open books, Hopf-band stabilization, Stallings curves and monodromy cosets.

An open book is a page signature with a monodromy twist word; the page is
realized on the standard polygon triangulation.  Stabilizations follow the
catalog pattern: each stabilization pair plumbs a positive band along the
pushed-off meridian arc of a base handle and a negative band along the
pushed-off dual arc, creating one new handle interleaved with its base
handle.  The band cores, the Stallings band sums t_i = a'_i # b'_{i+1} and
the free-coset curves are constructed by a deterministic splice search and
verified on construction.

Monodromy letters are stored symbolically (chain letters, band cores, or
explicit side-pair words) so they carry over when the page is enlarged.
"""

from dataclasses import dataclass, field
from functools import lru_cache

from .curves import (
    MultiCurve,
    homology_class_of_curve,
    is_peripheral,
    splice_candidates,
    vertex_link,
)
from .intersection import geometric_intersection
from .mcg import (
    Certificate,
    FailureReport,
    TwistWord,
    act,
    growth_estimate,
    hamidi_tehrani,
    long_morton_check,
    penner_certify,
)
from .pages import Page, page, stabilized_handles
from .surfaces import SurfaceSig


# -- catalogs of distinguished curves -------------------------------------------


class StabilizedCatalog:
    """Distinguished curves on the page Sigma_{g+k,1} stabilized k times.

    Built once per (g, k); every defining property is verified on
    construction (a failure is a construction bug, not a user error).
    """

    def __init__(self, g, k):
        self.base_genus = g
        self.pairs = k
        base_h, new_h = stabilized_handles(g, k)
        self.page = page(g + k)
        self.base_handles = base_h
        self.new_handles = new_h
        p = self.page
        mer = [p.meridian(h) for h in range(g + k)]
        dual = [p.dual(h) for h in range(g + k)]
        self.cores = self._find_cores(p, mer, dual, base_h, new_h, k)
        self.stallings = self._find_stallings(k)
        self._verify()

    def _find_cores(self, p, mer, dual, base_h, new_h, k):
        acands = [
            list(splice_candidates(mer[base_h[i]], mer[new_h[i]])) for i in range(k)
        ]
        bcands = [
            list(splice_candidates(dual[base_h[i]], dual[new_h[i]])) for i in range(k)
        ]
        chosen = []

        def rec(i, acc):
            if i == k:
                chosen.extend(acc)
                return True
            for a in acands[i]:
                if any(
                    geometric_intersection(a, x) or geometric_intersection(a, y)
                    for (x, y) in acc
                ):
                    continue
                for b in bcands[i]:
                    if geometric_intersection(a, b):
                        continue
                    if any(
                        geometric_intersection(b, x) or geometric_intersection(b, y)
                        for (x, y) in acc
                    ):
                        continue
                    if rec(i + 1, acc + [(a, b)]):
                        return True
            return False

        if not rec(0, []):
            raise AssertionError("no disjoint band-core family found")
        return chosen

    def _find_stallings(self, k):
        out = []

        def rec(j, ts):
            if j == k:
                out.extend(ts)
                return True
            a = self.cores[j][0]
            b = self.cores[(j + 1) % k][1]
            for c in splice_candidates(a, b):
                if is_peripheral(c):
                    continue
                if any(geometric_intersection(c, tt) for tt in ts):
                    continue
                if rec(j + 1, ts + [c]):
                    return True
            return False

        if not rec(0, []):
            raise AssertionError("no disjoint Stallings family found")
        return out

    def _verify(self):
        k = self.pairs
        flat = [c for pair in self.cores for c in pair]
        for i in range(len(flat)):
            if is_peripheral(flat[i]):
                raise AssertionError("peripheral band core")
            for j in range(i + 1, len(flat)):
                if geometric_intersection(flat[i], flat[j]):
                    raise AssertionError("band cores intersect")
        homs = [homology_class_of_curve(c) for c in self.stallings]
        zero = (0,) * len(homs[0]) if homs else ()
        for i, h in enumerate(homs):
            if h == zero:
                raise AssertionError("null-homologous Stallings curve")
            for j in range(i + 1, k):
                if homs[j] == h or homs[j] == tuple(-x for x in h):
                    raise AssertionError("homologous Stallings curves")
                if geometric_intersection(self.stallings[i], self.stallings[j]):
                    raise AssertionError("Stallings curves intersect")

    def free_pair(self):
        """The curves a = a'_1 # b'_3 and b = a'_2 # b'_4 with i(a, b) = 4."""
        if self.pairs != 4:
            raise ValueError("the free coset needs exactly 4 stabilizations")
        for a in splice_candidates(self.cores[0][0], self.cores[2][1]):
            for b in splice_candidates(self.cores[1][0], self.cores[3][1]):
                if geometric_intersection(a, b) == 4:
                    return a, b
        raise AssertionError("free-coset curves with intersection four not found")


@lru_cache(maxsize=None)
def stabilized_catalog(g, k):
    return StabilizedCatalog(g, k)


# -- framing ledger ---------------------------------------------------------------


@dataclass
class FramingLedger:
    """Page framings lk(c, c+) of distinguished curves.

    Positive Hopf-band cores carry framing -1, negative ones +1; band sums
    add entries (mutual linking of the summed cores is recorded as 0).
    """

    entries: dict = field(default_factory=dict)

    def set(self, name, value):
        self.entries[name] = value

    def band_sum(self, name, part1, part2):
        self.entries[name] = self.entries[part1] + self.entries[part2]

    def record(self):
        return dict(sorted(self.entries.items()))


# -- open books ---------------------------------------------------------------------


ARC_SAME_BOUNDARY = "alpha"
ARC_DIFFERENT_BOUNDARY = "beta"


class OpenBook:
    """
    An open book (page, monodromy) with its stabilization state.

    The base open book is an input with pseudo-Anosov monodromy; the
    default base word is the chain word of the base page, which carries a
    twist-family (Penner) certificate.  Intermediate single-band states
    (after an alpha arc, before the matching beta) have a two-component
    binding.
    """

    def __init__(self, base_genus, pairs, pending, letter_specs, ledger):
        self.base_genus = base_genus
        self.pairs = pairs
        self.pending = pending  # True between the alpha and beta of a pair
        self.letter_specs = tuple(letter_specs)
        self.ledger = ledger
        genus = base_genus + pairs
        boundary = 2 if pending else 1
        self.page_sig = SurfaceSig(genus + 0, boundary)
        self._page = page(genus, boundary)
        self._monodromy = None

    # -- construction -------------------------------------------------------

    @classmethod
    def standard(cls, genus, letters=None):
        """Base open book on Sigma_{g,1}.

        `letters` optionally replaces the default chain word; entries are
        ("word", side-pair word, exponent) specs.
        """
        if genus < 1:
            raise ValueError("base page needs genus at least 1")
        if letters is None:
            specs = [("chain", i) for i in range(2 * genus)]
        else:
            specs = [("word", tuple(w), int(n)) for (w, n) in letters]
        return cls(genus, 0, False, specs, FramingLedger())

    # -- page data -----------------------------------------------------------

    @property
    def page(self):
        return self._page

    @property
    def triangulation(self):
        return self._page.triangulation

    @property
    def binding_components(self):
        return self.page_sig.boundary

    def _base_handle_map(self):
        base_h, _ = stabilized_handles(self.base_genus, self.pairs) if self.pairs \
            else (list(range(self.base_genus)), [])
        return base_h

    def _catalog(self):
        if self.pending or self.pairs == 0:
            return None
        return stabilized_catalog(self.base_genus, self.pairs)

    def _chain_letters(self):
        handles = self._base_handle_map()
        ch = self._page.chain_over(handles)
        letters = []
        for i in range(0, len(ch), 2):
            letters.append((ch[i], 1))
            letters.append((ch[i + 1], -1))
        return letters

    def _instantiate(self, spec):
        kind = spec[0]
        if kind == "chain":
            return self._chain_letters()[spec[1]]
        if kind == "word":
            return (self._page.curve(list(spec[1])), spec[2])
        if kind == "core_a" or kind == "core_b":
            i = spec[1]
            sign = 1 if kind == "core_a" else -1
            if not self.pending and self.pairs >= i:
                cat = stabilized_catalog(self.base_genus, self.pairs)
                pair = cat.cores[i - 1]
                return (pair[0] if kind == "core_a" else pair[1], sign)
            if self.pending and i == self.pairs + 1 and kind == "core_a":
                return (self._pending_alpha_core(), 1)
            if self.pending and i <= self.pairs:
                cat = _intermediate_catalog(self.base_genus, self.pairs)
                pair = cat[i - 1]
                return (pair[0] if kind == "core_a" else pair[1], sign)
            raise ValueError("core spec %s not available in this state" % (spec,))
        raise ValueError("unknown letter spec %r" % (spec,))

    def _pending_alpha_core(self):
        """Core of the freshly plumbed positive band on the two-boundary
        page: the base-handle meridian banded with the new boundary."""
        t = self.triangulation
        base_h = self._base_handle_map()
        handle = base_h[self.pairs] if self.pairs < len(base_h) else base_h[-1]
        mer = self._page.meridian(handle)
        link = vertex_link(t, t.num_vertices - 1)
        for c in splice_candidates(mer, link):
            if is_peripheral(c) or c.weights == mer.weights:
                continue
            if geometric_intersection(c, mer) == 0:
                return c
        raise AssertionError("no pushed-off band core found")

    @property
    def monodromy(self):
        if self._monodromy is None:
            letters = []
            for spec in self.letter_specs:
                item = self._instantiate(spec)
                if isinstance(item, list):
                    letters.extend(item)
                else:
                    letters.append(item)
            self._monodromy = TwistWord(self.triangulation, letters)
        return self._monodromy

    def base_certificate(self):
        """Twist-family certificate of the default base word on its page."""
        base = page(self.base_genus)
        ch = base.chain()
        word = TwistWord(
            base.triangulation,
            [(ch[i], 1 if i % 2 == 0 else -1) for i in range(len(ch))],
        )
        return penner_certify(word, ch[0::2], ch[1::2])

    # -- stabilization --------------------------------------------------------

    def hopf_stabilize(self, arc, sign):
        """
        Plumb one Hopf band along a catalog arc.

        `arc` is ("alpha", i) or ("beta", i) with i = pairs + 1, following
        the stabilization order; alpha arcs have both endpoints on the
        binding (boundary + 1), beta arcs join the two binding components
        (genus + 1, boundary - 1).  The monodromy gains tau_core^{sign} and
        the ledger records framing(core) = -sign.
        """
        if sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        kind, i = arc
        nxt = self.pairs + 1
        if kind == ARC_SAME_BOUNDARY:
            if self.pending or i != nxt:
                raise ValueError("arc %s not in the catalog at this state" % (arc,))
            if nxt > self.base_genus:
                raise ValueError("no stabilization arcs past the base genus")
            ledger = FramingLedger(dict(self.ledger.entries))
            ledger.set("core_a_%d" % i, -sign)
            ob = OpenBook(
                self.base_genus,
                self.pairs,
                True,
                self.letter_specs + (("core_a", i),),
                ledger,
            )
            return ob
        if kind == ARC_DIFFERENT_BOUNDARY:
            if not self.pending or i != nxt:
                raise ValueError("arc %s not in the catalog at this state" % (arc,))
            ledger = FramingLedger(dict(self.ledger.entries))
            ledger.set("core_b_%d" % i, -sign)
            ob = OpenBook(
                self.base_genus,
                self.pairs + 1,
                False,
                self.letter_specs + (("core_b", i),),
                ledger,
            )
            return ob
        raise ValueError("unknown arc %r" % (arc,))

    def penner_stabilize(self, k):
        """k positive/negative stabilization pairs; page becomes
        Sigma_{g+k,1} and the word gains tau_{a'_i} tau_{b'_i}^{-1} pairs."""
        if self.pending:
            raise ValueError("cannot start pairs mid-stabilization")
        if self.pairs:
            raise ValueError("page is already stabilized")
        if not 1 <= k <= self.base_genus:
            raise ValueError("need 1 <= k <= base genus")
        ob = self
        for i in range(1, k + 1):
            ob = ob.hopf_stabilize((ARC_SAME_BOUNDARY, i), 1)
            ob = ob.hopf_stabilize((ARC_DIFFERENT_BOUNDARY, i), -1)
        return ob

    # -- Stallings curves and cosets -------------------------------------------

    def stallings_curves(self):
        """The k distinguished Stallings band sums t_i = a'_i # b'_{i+1},
        with ledger framing 0 recorded by band-sum additivity."""
        if self.pending or self.pairs == 0:
            raise ValueError("stallings_curves needs completed stabilization pairs")
        cat = stabilized_catalog(self.base_genus, self.pairs)
        k = self.pairs
        for i in range(1, k + 1):
            j = i % k + 1
            self.ledger.band_sum("t_%d" % i, "core_a_%d" % i, "core_b_%d" % j)
        return list(cat.stallings)

    def heuristic_certificate(self, iterations=6):
        """Flagged growth heuristic for the stabilized monodromy (its exact
        pseudo-Anosov threshold is not effective)."""
        cat = stabilized_catalog(self.base_genus, self.pairs)
        seed = cat.page.meridian(cat.base_handles[0])
        res = growth_estimate(self.monodromy, seed, iterations)
        return res

    def abelian_coset(self, exponents):
        """
        The rank-k abelian coset h_k <tau_{t_1}^{n_1}, ..., tau_{t_k}^{n_k}>.

        Returns (CosetSpec, monodromy word, Long-Morton report).  The
        report re-verifies the twist-family hypotheses or fails loudly.
        """
        if self.pending or self.pairs == 0:
            raise ValueError("abelian_coset needs completed stabilization pairs")
        k = self.pairs
        if len(exponents) != k:
            raise ValueError("need %d exponents" % k)
        if any(n == 0 for n in exponents):
            raise ValueError("zero exponent")
        ts = self.stallings_curves()
        growth = self.heuristic_certificate()
        if growth.certificate is None:
            raise RuntimeError("stabilized word failed the growth heuristic")
        report = long_morton_check(self.monodromy, growth.certificate, ts)
        if isinstance(report, FailureReport):
            raise RuntimeError("Long-Morton hypotheses failed: %s" % report.reason)
        spec = CosetSpec(
            base=self.monodromy,
            generators=tuple((ts[i], int(exponents[i])) for i in range(k)),
            kind="abelian",
            rank=k,
            notes=(
                "Stallings disks are made disjoint by placing the curves on "
                "distinct fibers of the mapping torus",
                "all coset elements are monodromies of open books of the "
                "same ambient 3-manifold",
            ),
        )
        return spec, self.monodromy, report

    def free_coset(self):
        """The rank-two free coset from four stabilizations: generators are
        twists along band sums a = a'_1 # b'_3 and b = a'_2 # b'_4 with
        i(a, b) = 4."""
        if self.pending or self.pairs != 4:
            raise ValueError("free_coset needs exactly four completed pairs")
        cat = stabilized_catalog(self.base_genus, 4)
        a, b = cat.free_pair()
        i_ab = geometric_intersection(a, b)
        if i_ab != 4:
            raise AssertionError("free-coset intersection %d != 4" % i_ab)
        cert = hamidi_tehrani(a, b)
        if cert is None:
            raise AssertionError("Hamidi-Tehrani hypothesis failed")
        self.ledger.band_sum("free_a", "core_a_1", "core_b_3")
        self.ledger.band_sum("free_b", "core_a_2", "core_b_4")
        spec = CosetSpec(
            base=self.monodromy,
            generators=((a, 1), (b, 1)),
            kind="free",
            rank=2,
            certificate=cert,
            notes=(
                "all coset elements are monodromies of open books of the "
                "same ambient 3-manifold",
            ),
        )
        return spec


@lru_cache(maxsize=None)
def _intermediate_catalog(g, k):
    """Band cores of the completed pairs, re-instantiated on the
    two-boundary intermediate page Sigma_{g+k,2}."""
    p = page(g + k, 2)
    base_h, new_h = stabilized_handles(g, k)
    cores = []
    for i in range(k):
        mer_pair = (p.meridian(base_h[i]), p.meridian(new_h[i]))
        dual_pair = (p.dual(base_h[i]), p.dual(new_h[i]))
        a = next(iter(splice_candidates(*mer_pair)))
        b = None
        for cand in splice_candidates(*dual_pair):
            if geometric_intersection(a, cand) == 0:
                b = cand
                break
        if b is None:
            raise AssertionError("no intermediate core pair")
        cores.append((a, b))
    return cores


@dataclass
class CosetSpec:
    base: TwistWord
    generators: tuple
    kind: str  # "abelian" | "free"
    rank: int
    certificate: Certificate = None
    notes: tuple = ()

    def record(self):
        return {
            "kind": self.kind,
            "rank": self.rank,
            "base_length": len(self.base.letters),
            "generators": [
                {"curve": list(c.weights), "exponent": n} for (c, n) in self.generators
            ],
            "certificate": self.certificate.record() if self.certificate else None,
            "notes": list(self.notes),
        }


def coset_element(spec, word):
    """
    The monodromy of one coset element.

    For abelian cosets `word` is the integer exponent vector; for free
    cosets it is a reduced word [(generator index, exponent), ...] in the
    two generators.
    """
    letters = list(spec.base.letters)
    if spec.kind == "abelian":
        if len(word) != spec.rank:
            raise ValueError("need %d exponents" % spec.rank)
        for (c, n), m in zip(spec.generators, word):
            if m:
                letters.append((c, n * m))
    elif spec.kind == "free":
        prev = None
        for (idx, m) in word:
            if idx not in (0, 1):
                raise ValueError("free generators are indexed 0 and 1")
            if m == 0:
                raise ValueError("zero exponent in free word")
            if prev == idx:
                raise ValueError("word is not reduced")
            prev = idx
            c, n = spec.generators[idx]
            letters.append((c, n * m))
    else:
        raise ValueError("unknown coset kind %r" % (spec.kind,))
    return TwistWord(spec.base.triangulation, letters, check=False)
