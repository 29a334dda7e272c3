"""
Ideal triangulations of punctured surfaces and normal coordinates.

A surface Sigma_{g,n} (genus g, n boundary components) is modelled as the
n-times punctured genus-g surface; boundary components and punctures define
the same isotopy classes of essential curves, and "boundary-parallel" means
puncture-linking throughout.

A triangulation is stored as a list of faces, each an ordered triple of edge
labels read counterclockwise.  Every label occurs in exactly two face slots;
the two slots are glued with reversed orientation, which keeps the surface
oriented.  Darts (= oriented face sides) are indexed 3*face + slot.

Multicurves are encoded by their normal coordinates: one non-negative
integer weight per edge, subject to the parity and triangle inequalities in
every face.
"""

from dataclasses import dataclass
from functools import lru_cache


@dataclass(frozen=True)
class SurfaceSig:
    """Topological type: genus g >= 0 and n >= 1 boundary punctures."""

    genus: int
    boundary: int

    def __post_init__(self):
        if self.genus < 0:
            raise ValueError("genus must be non-negative")
        if self.boundary < 1:
            raise ValueError("need at least one boundary component")

    @property
    def chi(self):
        return 2 - 2 * self.genus - self.boundary

    @property
    def nonsporadic(self):
        # 3g - 3 + n > 0, the curve-graph threshold.
        return 3 * self.genus - 3 + self.boundary > 0

    def __str__(self):
        return "Sigma_{%d,%d}" % (self.genus, self.boundary)


class Triangulation:
    """
    An oriented ideal triangulation, given by faces = triples of edge labels.

    Edge labels must be 0..E-1 with each label in exactly two face slots.
    """

    def __init__(self, faces):
        faces = tuple(tuple(f) for f in faces)
        if any(len(f) != 3 for f in faces):
            raise ValueError("faces must be triples of edge labels")
        self.faces = faces
        self.num_faces = len(faces)
        slots = {}
        for f, tri in enumerate(faces):
            for c, lab in enumerate(tri):
                slots.setdefault(lab, []).append(3 * f + c)
        labels = sorted(slots)
        if labels != list(range(len(labels))):
            raise ValueError("edge labels must be 0..E-1")
        for lab, ds in slots.items():
            if len(ds) != 2:
                raise ValueError("edge %s occurs %d times, expected 2" % (lab, len(ds)))
        self.num_edges = len(labels)
        nd = 3 * self.num_faces
        ep = [0] * nd
        for lab in labels:
            d0, d1 = slots[lab]
            ep[d0], ep[d1] = d1, d0
        self.ep = tuple(ep)
        self.edge_darts = tuple((min(slots[lab]), max(slots[lab])) for lab in labels)
        self._vertex_of = None
        self._num_vertices = None

    # -- dart helpers ------------------------------------------------------

    def fp(self, d):
        """Next dart counterclockwise within its face."""
        return d - d % 3 + (d + 1) % 3

    def fprev(self, d):
        return d - d % 3 + (d + 2) % 3

    def face_of(self, d):
        return d // 3

    def edge_of(self, d):
        return self.faces[d // 3][d % 3]

    def reversed_dart(self, d):
        return self.ep[d]

    def face_darts(self, f):
        return (3 * f, 3 * f + 1, 3 * f + 2)

    def canonical_dart(self, e):
        return self.edge_darts[e][0]

    # -- vertices ----------------------------------------------------------

    def _compute_vertices(self):
        nd = 3 * self.num_faces
        vert = [-1] * nd
        nv = 0
        for d0 in range(nd):
            if vert[d0] >= 0:
                continue
            d = d0
            while vert[d] < 0:
                vert[d] = nv
                d = self.ep[self.fprev(d)]  # rotate about the tail of d
            nv += 1
        self._vertex_of = tuple(vert)
        self._num_vertices = nv

    @property
    def num_vertices(self):
        if self._num_vertices is None:
            self._compute_vertices()
        return self._num_vertices

    def tail_vertex(self, d):
        """Vertex (= puncture) at the tail of dart d."""
        if self._vertex_of is None:
            self._compute_vertices()
        return self._vertex_of[d]

    # -- global invariants ---------------------------------------------------

    @property
    def sig(self):
        # closed-up Euler characteristic V - E + F = 2 - 2g, punctures n = V.
        v = self.num_vertices
        chi_closed = v - self.num_edges + self.num_faces
        if chi_closed % 2:
            raise ValueError("inconsistent triangulation")
        return SurfaceSig((2 - chi_closed) // 2, v)

    def is_connected(self):
        seen = {0}
        stack = [0]
        while stack:
            f = stack.pop()
            for d in self.face_darts(f):
                g = self.face_of(self.ep[d])
                if g not in seen:
                    seen.add(g)
                    stack.append(g)
        return len(seen) == self.num_faces

    # -- normal coordinates --------------------------------------------------

    def is_admissible(self, weights):
        """Parity and triangle inequalities for every face."""
        if len(weights) != self.num_edges:
            raise ValueError(
                "weight vector has length %d, triangulation has %d edges"
                % (len(weights), self.num_edges)
            )
        if any(w < 0 for w in weights):
            return False
        for tri in self.faces:
            a, b, c = (weights[lab] for lab in tri)
            if (a + b + c) % 2:
                return False
            if a > b + c or b > a + c or c > a + b:
                return False
        return True

    def corner_count(self, weights, f, i):
        """Arcs cutting the corner of face f between sides i and i+1."""
        tri = self.faces[f]
        wi = weights[tri[i]]
        wj = weights[tri[(i + 1) % 3]]
        wk = weights[tri[(i + 2) % 3]]
        return (wi + wj - wk) // 2

    # -- flips ---------------------------------------------------------------

    def is_flippable(self, e):
        d0, d1 = self.edge_darts[e]
        return self.face_of(d0) != self.face_of(d1)

    def flip(self, e):
        """
        Flip edge e; returns the new triangulation.  The flipped edge keeps
        its label, all other labels are untouched.
        """
        if not self.is_flippable(e):
            raise ValueError("edge %d is not flippable" % e)
        d0, d1 = self.edge_darts[e]
        f1, f2 = self.face_of(d0), self.face_of(d1)
        # square sides ccw: x, y (face of d0), z, w (face of d1)
        lx = self.edge_of(self.fp(d0))
        ly = self.edge_of(self.fp(self.fp(d0)))
        lz = self.edge_of(self.fp(d1))
        lw = self.edge_of(self.fp(self.fp(d1)))
        faces = list(self.faces)
        faces[f1] = (ly, lz, e)
        faces[f2] = (lw, lx, e)
        return Triangulation(faces)

    def flip_weights(self, e, weights):
        """Normal coordinates after flipping e: e' = max(x+z, y+w) - e."""
        d0, d1 = self.edge_darts[e]
        wx = weights[self.edge_of(self.fp(d0))]
        wy = weights[self.edge_of(self.fp(self.fp(d0)))]
        wz = weights[self.edge_of(self.fp(d1))]
        ww = weights[self.edge_of(self.fp(self.fp(d1)))]
        new = list(weights)
        new[e] = max(wx + wz, wy + ww) - weights[e]
        return tuple(new)

    # -- serialization -------------------------------------------------------

    def to_text(self):
        g, n = self.sig.genus, self.sig.boundary
        body = " ".join(",".join(str(l) for l in tri) for tri in self.faces)
        return "T %d %d | %s" % (g, n, body)

    @classmethod
    def from_text(cls, line):
        head, body = line.split("|")
        parts = head.split()
        if parts[0] != "T":
            raise ValueError("not a triangulation record: %r" % line)
        faces = [tuple(int(x) for x in chunk.split(",")) for chunk in body.split()]
        t = cls(faces)
        g, n = int(parts[1]), int(parts[2])
        if t.sig != SurfaceSig(g, n):
            raise ValueError("signature mismatch in record: %r" % line)
        return t

    def __eq__(self, other):
        return isinstance(other, Triangulation) and self.faces == other.faces

    def __hash__(self):
        return hash(self.faces)

    def __repr__(self):
        return "Triangulation(%s, %s)" % (self.sig, list(self.faces))


# -- standard models ---------------------------------------------------------


class StandardTriangulation(Triangulation):
    """
    The documented standard triangulation of Sigma_{g,n}.

    For g >= 1 it is the ideal 4g-gon with boundary word
    a_1 b_1 a_1^-1 b_1^-1 ... a_g b_g a_g^-1 b_g^-1, triangulated by the fan
    of diagonals from corner 0.  Extra punctures (n >= 2) are produced by
    gluing square pillows into port edges; each pillow carries one new ideal
    vertex.  For g = 0 the base is the two-triangle 3-punctured sphere.

    Attributes
    ----------
    side_pair_edges: edge labels of the polygon side pairs, in boundary-word
        order (a_1, b_1, a_2, b_2, ...); empty for g = 0.
    fan_edges: labels of the fan diagonals diag_2 .. diag_{4g-2} (g >= 1).
    pillow_edges: per extra puncture, the labels (glue1, glue2, p, q) of the
        pillow inserted for it, where glue1/glue2 replace the port edge.
    """

    def __init__(self, faces, side_pair_edges, fan_edges, pillow_edges):
        super().__init__(faces)
        self.side_pair_edges = tuple(side_pair_edges)
        self.fan_edges = tuple(fan_edges)
        self.pillow_edges = tuple(pillow_edges)


def _polygon_faces(g):
    """Fan triangulation of the ideal 4g-gon; labels: 2i/2i+1 = a_i/b_i pairs,
    then fan diagonals."""
    m = 4 * g
    side_label = [0] * m
    for i in range(g):
        side_label[4 * i] = side_label[4 * i + 2] = 2 * i
        side_label[4 * i + 1] = side_label[4 * i + 3] = 2 * i + 1
    diag_label = {}
    nxt = 2 * g
    for j in range(2, m - 1):
        diag_label[j] = nxt
        nxt += 1
    faces = []
    if g == 1:
        faces.append((side_label[0], side_label[1], diag_label[2]))
        faces.append((diag_label[2], side_label[2], side_label[3]))
    else:
        faces.append((side_label[0], side_label[1], diag_label[2]))
        for j in range(2, m - 2):
            faces.append((diag_label[j], side_label[j], diag_label[j + 1]))
        faces.append((diag_label[m - 2], side_label[m - 2], side_label[m - 1]))
    sides = [side_label[4 * i] for i in range(g)]
    pairs = []
    for i in range(g):
        pairs.extend((2 * i, 2 * i + 1))
    return faces, pairs, sorted(diag_label.values())


def _insert_pillow(faces, port):
    """
    Replace edge `port` by a square pillow with one new interior puncture.
    Returns (faces', (glue1, glue2, p, q)); glue1 replaces the port label.
    """
    faces = [list(f) for f in faces]
    slots = [(f, c) for f, tri in enumerate(faces) for c, lab in enumerate(tri) if lab == port]
    if len(slots) != 2:
        raise ValueError("bad port edge %d" % port)
    nxt = 1 + max(max(tri) for tri in faces)
    glue1, glue2, p, q = port, nxt, nxt + 1, nxt + 2
    (f1, c1), (f2, c2) = slots
    faces[f2][c2] = glue2
    # pillow faces, ccw; free sides glue1/glue2, internal edges p and q
    faces.append([glue1, p, q])
    faces.append([glue2, q, p])
    return [tuple(f) for f in faces], (glue1, glue2, p, q)


@lru_cache(maxsize=None)
def standard_triangulation(sig):
    """
    The standard triangulation of the surface with signature `sig`.

    Requires chi < 0.  Deterministic; repeated calls return a cached object.
    """
    if isinstance(sig, tuple):
        sig = SurfaceSig(*sig)
    if sig.chi >= 0:
        raise ValueError("no ideal triangulation: chi(%s) = %d >= 0" % (sig, sig.chi))
    g, n = sig.genus, sig.boundary
    if g >= 1:
        faces, pairs, fan = _polygon_faces(g)
        extra = n - 1
    else:
        faces, pairs, fan = [(0, 1, 2), (0, 2, 1)], [], []
        extra = n - 3
    pillows = []
    # ports: first pillow sits on a fan diagonal (g>=1) or edge 2 (g=0);
    # later pillows chain off the previous pillow's second glue edge.
    port = fan[0] if g >= 1 else 2
    for _ in range(extra):
        faces, quad = _insert_pillow(faces, port)
        pillows.append(quad)
        port = quad[1]
    t = StandardTriangulation(faces, pairs, fan, pillows)
    expect_e = 6 * g - 6 + 3 * n
    expect_f = 4 * g - 4 + 2 * n
    if (t.num_edges, t.num_faces, t.num_vertices) != (expect_e, expect_f, n) or t.sig != sig:
        raise AssertionError("standard triangulation of %s is inconsistent" % (sig,))
    if not t.is_connected():
        raise AssertionError("standard triangulation of %s is disconnected" % (sig,))
    return t
