"""Webs, braid-closure link diagrams, Rickard crossing complexes, colorings.

Webs are stored as directed graphs with labeled edges.  Everything we need
for links comes from ladders: parallel upward strands joined by rungs.
"""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as cartesian
from math import comb, prod

from .errors import InputError, VerificationError
from .symfn import RootMultiset, multisubsets


# webs ------------------------------------------------------------------------------

class Web:
    """Labeled trivalent web.

    vertices: id -> kind in {"merge", "split", "in", "out"}
    edges: list of (label, tail, head).  Boundary vertices "in"/"out" are
    univalent and carry the domain (bottom) and codomain (top) labels.
    """

    def __init__(self, N, vertices=None, edges=None):
        self.N = N
        self.vertices = dict(vertices or {})
        self.edges = list(edges or [])

    def add_vertex(self, kind):
        v = len(self.vertices)
        while v in self.vertices:
            v += 1
        self.vertices[v] = kind
        return v

    def add_edge(self, label, tail, head):
        self.edges.append((label, tail, head))

    def _incidence(self):
        ins = {v: [] for v in self.vertices}
        outs = {v: [] for v in self.vertices}
        for lab, t, h in self.edges:
            outs[t].append(lab)
            ins[h].append(lab)
        return ins, outs

    def boundary(self, kind):
        ins, outs = self._incidence()
        vs = sorted(v for v, k in self.vertices.items() if k == kind)
        if kind == "in":
            return tuple(outs[v][0] for v in vs)
        return tuple(ins[v][0] for v in vs)

    @property
    def domain(self):
        return self.boundary("in")

    @property
    def codomain(self):
        return self.boundary("out")

    def is_zero(self):
        """A web with a label outside 0..N is zero in the foam category."""
        return any(not 0 <= lab <= self.N for lab, _, _ in self.edges)

    def check(self):
        """Flow conservation and trivalence at every internal vertex."""
        ins, outs = self._incidence()
        for v, kind in self.vertices.items():
            i, o = ins[v], outs[v]
            if kind == "merge":
                ok = len(i) == 2 and len(o) == 1 and sum(i) == o[0]
            elif kind == "split":
                ok = len(i) == 1 and len(o) == 2 and i[0] == sum(o)
            elif kind == "in":
                ok = not i and len(o) == 1
            elif kind == "out":
                ok = len(i) == 1 and not o
            else:
                ok = False
            if not ok:
                return False
        return True

    def erase_zero(self):
        """Drop 0-labeled edges and smooth out the bivalent vertices left behind."""
        edges = [e for e in self.edges if e[0] != 0]
        verts = dict(self.vertices)
        changed = True
        while changed:
            changed = False
            deg = Counter()
            for _, t, h in edges:
                deg[t] += 1
                deg[h] += 1
            for v, kind in list(verts.items()):
                if kind in ("merge", "split") and deg[v] == 2:
                    inc = [e for e in edges if e[2] == v]
                    out = [e for e in edges if e[1] == v]
                    if len(inc) == 1 and len(out) == 1 and inc[0][0] == out[0][0]:
                        edges.remove(inc[0])
                        edges.remove(out[0])
                        edges.append((inc[0][0], inc[0][1], out[0][2]))
                        del verts[v]
                        changed = True
                        break
        used = {t for _, t, _ in edges} | {h for _, _, h in edges}
        verts = {v: k for v, k in verts.items() if v in used or k not in ("in", "out")}
        return Web(self.N, verts, edges)

    def __repr__(self):
        return f"Web(N={self.N}, {len(self.vertices)} vertices, {len(self.edges)} edges)"


def colorings_admissible(web, coloring):
    """coloring: edge index -> tuple of roots.  Checks sizes and vertex sums."""
    ins = {v: [] for v in web.vertices}
    outs = {v: [] for v in web.vertices}
    for idx, (lab, t, h) in enumerate(web.edges):
        c = Counter(coloring[idx])
        if sum(c.values()) != lab:
            return False
        outs[t].append(c)
        ins[h].append(c)
    for v, kind in web.vertices.items():
        if kind == "merge" and ins[v][0] + ins[v][1] != outs[v][0]:
            return False
        if kind == "split" and outs[v][0] + outs[v][1] != ins[v][0]:
            return False
    return True


@dataclass
class ColoredWeb:
    web: Web
    coloring: dict

    @property
    def admissible(self):
        return colorings_admissible(self.web, self.coloring)

    def is_zero(self):
        return self.web.is_zero() or not self.admissible


# ladders -------------------------------------------------------------------------

@dataclass(frozen=True)
class Rung:
    """Thickness-k rung between strands pos and pos+1 (0-based).

    kind "E" moves k units from strand pos+1 onto strand pos, "F" the reverse.
    """
    pos: int
    kind: str
    k: int


@dataclass
class Ladder:
    N: int
    bottom: tuple
    rungs: list = field(default_factory=list)

    def labels_after(self, n=None):
        lab = list(self.bottom)
        for r in self.rungs[:n]:
            s = r.k if r.kind == "E" else -r.k
            lab[r.pos] += s
            lab[r.pos + 1] -= s
        return tuple(lab)

    @property
    def top(self):
        return self.labels_after()

    def levels(self):
        """Label tuples between consecutive rungs, bottom first."""
        return [self.labels_after(i) for i in range(len(self.rungs) + 1)]

    def is_zero(self):
        return any(not 0 <= x <= self.N for lv in self.levels() for x in lv)

    def then(self, other):
        if tuple(other.bottom) != self.top:
            raise InputError(f"cannot stack ladders: {self.top} vs {other.bottom}")
        return Ladder(self.N, self.bottom, self.rungs + list(other.rungs))

    def to_web(self, closed=False):
        """Graph of the ladder; closed=True adds the N-labeled cap/cup closure."""
        W = Web(self.N)
        m = len(self.bottom)
        ins = [W.add_vertex("in") for _ in range(m)]
        cur = list(ins)
        lab = list(self.bottom)
        for r in self.rungs:
            if r.k == 0:
                continue
            src, dst = (r.pos + 1, r.pos) if r.kind == "E" else (r.pos, r.pos + 1)
            sv = W.add_vertex("split")
            W.add_edge(lab[src], cur[src], sv)
            mv = W.add_vertex("merge")
            W.add_edge(lab[dst], cur[dst], mv)
            W.add_edge(r.k, sv, mv)
            lab[src] -= r.k
            lab[dst] += r.k
            cur[src], cur[dst] = sv, mv
        if not closed:
            for i in range(m):
                o = W.add_vertex("out")
                W.add_edge(lab[i], cur[i], o)
            return W
        if tuple(lab) != tuple(self.bottom):
            raise InputError("closure needs matching top and bottom labels")
        # strand i closes through an N-edge: merge with the complementary N-a
        # strand at the top, split again at the bottom
        bottoms = {}
        for i in range(m):
            mv = W.add_vertex("merge")
            sv = W.add_vertex("split")
            W.add_edge(lab[i], cur[i], mv)
            W.add_edge(self.N - lab[i], sv, mv)
            W.add_edge(self.N, mv, sv)
            bottoms[ins[i]] = sv
        W.edges = [(lv, bottoms.get(t, t), h) for lv, t, h in W.edges]
        for v in ins:
            del W.vertices[v]
        return W


def identity_ladder(N, labels):
    return Ladder(N, tuple(labels), [])


def square_ladder(N, m, i, a, b, k, labels=None):
    """Square web W_k for a crossing of labels (a, b) on strands i, i+1.

    For a >= b: E^{(k)} then F^{(a-b+k)}; otherwise F^{(k)} then E^{(b-a+k)}.
    Both reach the swapped labels (b, a); the middle labels are (a+k, b-k)
    resp. (a-k, b+k).
    """
    lab = list(labels) if labels is not None else [0] * m
    lab[i], lab[i + 1] = a, b
    if a >= b:
        rungs = [Rung(i, "E", k), Rung(i, "F", a - b + k)]
    else:
        rungs = [Rung(i, "F", k), Rung(i, "E", b - a + k)]
    return Ladder(N, tuple(lab), rungs)


# crossing complexes ---------------------------------------------------------------

@dataclass(frozen=True)
class FoamSymbol:
    """Formal differential W_src -> W_tgt: a thickness-1 zip/unzip on one digon."""
    kind: str          # "zip" (towards the smoothing) or "unzip"
    src: int
    tgt: int
    strands: tuple
    thickness: int = 1
    decoration: int = 0


@dataclass
class CrossingComplex:
    a: int
    b: int
    sign: int
    N: int
    terms: list        # (degree, k, Ladder), increasing degree
    diffs: list        # FoamSymbol between consecutive terms

    def __len__(self):
        return len(self.terms)

    @property
    def shift(self):
        return self.sign * min(self.a, self.b)

    def check_d2(self):
        """Consecutive differentials compose; each step changes k by one."""
        for d, e in zip(self.diffs, self.diffs[1:]):
            if d.tgt != e.src:
                return False
        return all(abs(d.src - d.tgt) == 1 for d in self.diffs)

    def nonzero_terms(self):
        return [(deg, k, L) for deg, k, L in self.terms if not L.is_zero()]


def crossing_complex(a, b, sign, N, pos=0, m=2, labels=None):
    """Rickard complex of a crossing with incoming labels (a, b).

    sign=+1: smoothing W_0 in degree 0 up to W_min in degree min(a,b).
    sign=-1: W_min in degree -min(a,b) up to W_0 in degree 0.
    """
    if not (1 <= a <= N - 1 and 1 <= b <= N - 1):
        raise InputError(f"crossing labels must lie in 1..N-1, got ({a},{b}) for N={N}")
    if sign not in (1, -1):
        raise InputError("sign must be +1 or -1")
    mn = min(a, b)
    ks = list(range(mn + 1)) if sign > 0 else list(range(mn, -1, -1))
    terms = []
    for j, k in enumerate(ks):
        deg = j if sign > 0 else j - mn
        terms.append((deg, k, square_ladder(N, m, pos, a, b, k, labels)))
    diffs = []
    for j in range(len(ks) - 1):
        kind = "unzip" if sign > 0 else "zip"
        diffs.append(FoamSymbol(kind, ks[j], ks[j + 1], (pos, pos + 1)))
    return CrossingComplex(a, b, sign, N, terms, diffs)


# link diagrams ---------------------------------------------------------------------

@dataclass
class LinkDiagram:
    """Closure of a labeled braid.  word: nonzero ints, +i = σ_i, -i = σ_i^{-1}."""
    strands: int
    labels: tuple
    word: tuple
    name: str = ""
    closed: bool = True

    def __post_init__(self):
        self.labels = tuple(int(x) for x in self.labels)
        self.word = tuple(int(x) for x in self.word)
        if self.strands < 1 or len(self.labels) != self.strands:
            raise InputError(f"need {self.strands} labels, got {len(self.labels)}")
        for g in self.word:
            if g == 0 or abs(g) >= self.strands:
                raise InputError(f"generator {g} out of range for {self.strands} strands")
        if any(x < 0 for x in self.labels):
            raise InputError("labels must be nonnegative")
        if self.closed:
            top = self.labels_at(len(self.word))
            if top != self.labels:
                raise InputError("labels are not constant along components of the closure")

    @classmethod
    def parse(cls, text, name=""):
        """Parse 'braid: 3; labels: 1,1,1; word: 1 -2 1'."""
        fields = {}
        for part in text.split(";"):
            if not part.strip():
                continue
            if ":" not in part:
                raise InputError(f"bad field {part.strip()!r}")
            k, v = part.split(":", 1)
            fields[k.strip().lower()] = v.strip()
        try:
            m = int(fields["braid"])
            labels = [int(x) for x in fields.get("labels", ",".join(["1"] * m)).replace(",", " ").split()]
            word = [int(x) for x in fields.get("word", "").replace(",", " ").split()]
        except (KeyError, ValueError) as exc:
            raise InputError(f"cannot parse braid text {text!r}: {exc}") from None
        return cls(m, tuple(labels), tuple(word), name=name)

    def to_text(self):
        return (f"braid: {self.strands}; labels: {','.join(map(str, self.labels))}; "
                f"word: {' '.join(map(str, self.word))}")

    def labels_at(self, n):
        lab = list(self.labels)
        for g in self.word[:n]:
            i = abs(g) - 1
            lab[i], lab[i + 1] = lab[i + 1], lab[i]
        return tuple(lab)

    def permutation(self):
        """perm[i] = bottom position reached at the top by the strand starting at i."""
        pos = list(range(self.strands))   # pos[slot] = starting strand occupying slot
        for g in self.word:
            i = abs(g) - 1
            pos[i], pos[i + 1] = pos[i + 1], pos[i]
        perm = [0] * self.strands
        for slot, s in enumerate(pos):
            perm[s] = slot
        return perm

    def components(self):
        """Cycles of the closure permutation, as sorted tuples of starting strands."""
        perm = self.permutation()
        seen, out = set(), []
        for s in range(self.strands):
            if s in seen:
                continue
            cyc = []
            while s not in seen:
                seen.add(s)
                cyc.append(s)
                s = perm[s]
            out.append(tuple(sorted(cyc)))
        return out

    def component_labels(self):
        return [self.labels[c[0]] for c in self.components()]

    def crossing_strands(self):
        """For each letter, the starting strands of the two strands involved."""
        pos = list(range(self.strands))
        out = []
        for g in self.word:
            i = abs(g) - 1
            out.append((pos[i], pos[i + 1]))
            pos[i], pos[i + 1] = pos[i + 1], pos[i]
        return out

    def writhes(self):
        comp_of = {}
        for ci, c in enumerate(self.components()):
            for s in c:
                comp_of[s] = ci
        w = [0] * len(self.components())
        for g, (s, t) in zip(self.word, self.crossing_strands()):
            if comp_of[s] == comp_of[t]:
                w[comp_of[s]] += 1 if g > 0 else -1
        return w

    @property
    def n_crossings(self):
        return len(self.word)

    def sublink(self, comps):
        """Braid obtained by deleting every strand not in the chosen components."""
        comps = sorted(comps)
        allc = self.components()
        keep = sorted(s for ci in comps for s in allc[ci])
        if not keep:
            return LinkDiagram(1, (0,), (), name="empty")
        pos = list(range(self.strands))
        word = []
        for g in self.word:
            i = abs(g) - 1
            s, t = pos[i], pos[i + 1]
            if s in keep and t in keep:
                # slot index among kept strands
                kept_slots = [sl for sl in range(self.strands) if pos[sl] in keep]
                j = kept_slots.index(i)
                word.append((j + 1) * (1 if g > 0 else -1))
            pos[i], pos[i + 1] = t, s
        labels = tuple(self.labels[s] for s in keep)
        nm = self.name if len(comps) == len(allc) else f"{self.name}{list(comps)}"
        return LinkDiagram(len(keep), labels, tuple(word), name=nm)

    def relabel(self, comp_labels):
        """Same braid with new labels, given per component."""
        lab = [0] * self.strands
        for c, x in zip(self.components(), comp_labels):
            for s in c:
                lab[s] = x
        return LinkDiagram(self.strands, tuple(lab), self.word, name=self.name)


REGISTRY = {
    "unknot": (1, ()),
    "hopf": (2, (1, 1)),
    "trefoil": (2, (1, 1, 1)),
    "figure-eight": (3, (1, -2, 1, -2)),
}


def builtin_link(name, labels=None):
    key = name.lower().replace("_", "-")
    if key in ("figure8", "figure-8", "4_1", "4-1"):
        key = "figure-eight"
    if key not in REGISTRY:
        raise InputError(f"unknown link {name!r}; known: {', '.join(REGISTRY)}")
    m, word = REGISTRY[key]
    L = LinkDiagram(m, (1,) * m, word, name=key)
    if labels is not None:
        labels = tuple(labels)
        if len(labels) == m:
            L = LinkDiagram(m, labels, word, name=key)
        elif len(labels) == len(L.components()):
            L = L.relabel(labels)
        else:
            raise InputError(f"{key} needs {len(L.components())} component labels")
    return L


def parse_link(text, labels=None):
    """A registry name or a braid text."""
    if ":" in text:
        L = LinkDiagram.parse(text)
        if labels is not None:
            L = L.relabel(labels) if len(labels) == len(L.components()) else LinkDiagram(
                L.strands, tuple(labels), L.word)
        return L
    return builtin_link(text, labels)


# diagram complex ---------------------------------------------------------------------

@dataclass
class DiagramComplex:
    link: LinkDiagram
    N: int
    crossings: list                 # CrossingComplex per letter
    vertices: list                  # index tuples (mixed radix, first crossing slowest)
    objects: dict                   # vertex -> closed Ladder
    degree: dict                    # vertex -> homological degree
    edges: list                     # (v, w, sign, crossing index, FoamSymbol)

    def check_d2(self):
        """Every square anticommutes: the two paths v->w carry opposite signs."""
        by_src = {}
        for v, w, s, c, _ in self.edges:
            by_src.setdefault(v, []).append((w, s, c))
        sq = {}
        for v, outs in by_src.items():
            for w, s, c in outs:
                for u, t, c2 in by_src.get(w, []):
                    sq.setdefault((v, u), []).append(s * t)
        return all(sum(vals) == 0 for vals in sq.values()) and all(
            cx.check_d2() for cx in self.crossings)

    def nonzero_vertices(self):
        return [v for v in self.vertices if not self.objects[v].is_zero()]


def letter_sign(g):
    """Crossing sign used for the Rickard complex of the braid letter g.

    Mirror convention: σ_i gets the complex whose smoothing sits in degree 0
    at the top, matching the cube engine.
    """
    return -1 if g > 0 else 1


def diagram_complex(L, N):
    if not L.closed:
        raise InputError("open tangles are not supported")
    m = L.strands
    if any(x > N for x in L.labels):
        raise InputError(f"labels must be at most N={N}")
    crossings = []
    for n, g in enumerate(L.word):
        i = abs(g) - 1
        lab = L.labels_at(n)
        crossings.append(crossing_complex(lab[i], lab[i + 1], letter_sign(g), N, pos=i, m=m, labels=lab))
    sizes = [len(c) for c in crossings]
    vertices = list(cartesian(*(range(s) for s in sizes)))
    objects, degree = {}, {}
    for v in vertices:
        lad = Ladder(N, L.labels, [])
        for c, j in zip(crossings, v):
            lad = lad.then(c.terms[j][2])
        objects[v] = lad
        degree[v] = sum(c.terms[j][0] for c, j in zip(crossings, v))
    edges = []
    for v in vertices:
        for ci, c in enumerate(crossings):
            if v[ci] + 1 < len(c):
                w = v[:ci] + (v[ci] + 1,) + v[ci + 1:]
                sign = (-1) ** sum(v[:ci])
                edges.append((v, w, sign, ci, c.diffs[v[ci]]))
    return DiagramComplex(L, N, crossings, vertices, objects, degree, edges)


# colorings and the decomposition predictor ----------------------------------------

def enumerate_colorings(L, sigma):
    """All assignments of label-sized multisubsets of Σ to the link components."""
    sigma = RootMultiset(sigma)
    labs = L.component_labels()
    if any(x > len(sigma) for x in labs):
        raise InputError("component label exceeds N")
    choices = [multisubsets(sigma, x) for x in labs]
    return [tuple(f) for f in cartesian(*choices)]


def count_colorings(L, sigma):
    sigma = RootMultiset(sigma)
    mults = [m for _, m in sigma.distinct()]

    def n_multisubsets(size):
        # coefficient of t^size in prod (1 + t + ... + t^m)
        poly = [1]
        for m in mults:
            new = [0] * (len(poly) + m)
            for i, c in enumerate(poly):
                for j in range(m + 1):
                    new[i + j] += c
            poly = new
        return poly[size] if size < len(poly) else 0

    return prod(n_multisubsets(x) for x in L.component_labels())


class HomologyTable:
    """Undeformed homology dimensions keyed by (N, link id, component labels).

    JSON form: a list of {"N":..,"link":..,"labels":[..],"total_dim":..,"degrees":{deg:dim}}.
    """

    def __init__(self, entries=None):
        self.entries = {}
        for e in entries or []:
            self.add(e["N"], e["link"], e["labels"], e["total_dim"], e.get("degrees"))

    @staticmethod
    def key(N, link, labels):
        return (int(N), str(link), tuple(int(x) for x in labels))

    def add(self, N, link, labels, total_dim, degrees=None):
        degs = None
        if degrees is not None:
            degs = {int(k): int(v) for k, v in dict(degrees).items() if int(v)}
            if sum(degs.values()) != int(total_dim):
                raise InputError(f"degree profile of {link} does not sum to {total_dim}")
        self.entries[self.key(N, link, labels)] = (int(total_dim), degs)

    def lookup(self, N, link, labels):
        k = self.key(N, link, labels)
        if k not in self.entries:
            raise KeyError(k)
        return self.entries[k]

    @classmethod
    def load(cls, path):
        with open(path) as fh:
            data = json.load(fh)
        if isinstance(data, dict):
            data = data.get("entries", [])
        return cls(data)

    def to_json(self):
        out = []
        for (N, link, labels), (tot, degs) in sorted(self.entries.items()):
            e = {"N": N, "link": link, "labels": list(labels), "total_dim": tot}
            if degs is not None:
                e["degrees"] = {str(k): v for k, v in sorted(degs.items())}
            out.append(e)
        return out

    def save(self, path):
        with open(path, "w") as fh:
            json.dump(self.to_json(), fh, indent=1)


def _undeformed(sub, Nj, table, strict=True):
    """(total, degree profile or None) of the undeformed sl(Nj) homology of a sublink.

    A table may provide lookup_link(sub, Nj) to compute missing entries; with
    strict=False an unknown piece gives (None, None).
    """
    if Nj == 1 or not sub.labels or sub.name == "empty":
        return 1, {0: 1}
    labs = sub.component_labels()
    if not sub.word:
        # unlink: tensor product of unknots, each H_b of Gr(b, Nj)
        d = prod(comb(Nj, b) for b in labs)
        return d, {0: d}
    try:
        return table.lookup(Nj, sub.name, labs)
    except (KeyError, AttributeError):
        pass
    if hasattr(table, "lookup_link"):
        got = table.lookup_link(sub, Nj)
        if got is not None:
            return got
    if not strict:
        return None, None
    raise InputError(f"homology table has no entry for sl{Nj} {sub.name} labels {labs}") from None


def _convolve(p, q):
    if p is None or q is None:
        return None
    out = Counter()
    for i, x in p.items():
        for j, y in q.items():
            out[i + j] += x * y
    return dict(out)


@dataclass
class Summand:
    coloring: tuple
    pieces: list          # (root, N_j, sublink name, labels)
    dim: int
    degrees: dict = None

    def to_dict(self):
        return {
            "coloring": [[str(r) for r in c] for c in self.coloring],
            "pieces": [{"root": str(r), "N": n, "link": nm, "labels": list(lb)} for r, n, nm, lb in self.pieces],
            "dim": self.dim,
            "degrees": None if self.degrees is None else {str(k): v for k, v in sorted(self.degrees.items())},
        }


@dataclass
class Prediction:
    summands: list

    @property
    def total(self):
        if any(s.dim is None for s in self.summands):
            return None
        return sum(s.dim for s in self.summands)

    @property
    def euler(self):
        """Signed total with every summand placed at shift 0 (None without degree data)."""
        if any(s.degrees is None for s in self.summands):
            return None
        return sum((-1) ** (d % 2) * x for s in self.summands for d, x in s.degrees.items())

    def to_dict(self):
        return {"total": self.total, "euler": self.euler, "summands": [s.to_dict() for s in self.summands]}


def predict_decomposition(L, sigma, table=None, strict=True):
    """One summand per coloring: ⊗ over distinct roots of undeformed sl(N_j) pieces."""
    sigma = RootMultiset(sigma)
    dist = sigma.distinct()
    comps = L.components()
    out = []
    for f in enumerate_colorings(L, sigma):
        dim, degs, pieces = 1, {0: 1}, []
        for root, Nj in dist:
            b = [Counter(c)[root] for c in f]
            keep = [i for i, x in enumerate(b) if 0 < x < Nj]
            sub = L.sublink(keep) if keep else None
            if sub is None:
                pieces.append((root, Nj, "empty", ()))
                continue
            sub = sub.relabel([b[i] for i in keep]) if len(sub.components()) == len(keep) else sub
            d, p = _undeformed(sub, Nj, table, strict)
            pieces.append((root, Nj, sub.name, tuple(b[i] for i in keep)))
            dim = None if d is None or dim is None else dim * d
            degs = _convolve(degs, p)
        out.append(Summand(f, pieces, dim, degs))
    if len(comps) == 0:
        raise VerificationError("link has no components")
    return Prediction(out)


def unknot_prediction(N, a, sigma):
    """Predicted summand dimensions for the unknot labeled a (one per multisubset)."""
    L = LinkDiagram(1, (a,), (), name="unknot")
    return [s.dim for s in predict_decomposition(L, sigma).summands]


def profiles_match_up_to_shift(predicted, computed):
    """Can the summand profiles be translated independently so they add up to `computed`?

    Backtracking over shifts; summands without degree data only constrain the total.
    """
    computed = {k: v for k, v in computed.items() if v}
    if sum(s.dim for s in predicted) != sum(computed.values()):
        return False
    profs = [s.degrees for s in predicted]
    if any(p is None for p in profs):
        return True
    profs.sort(key=lambda p: -sum(p.values()))

    def rec(i, left):
        if i == len(profs):
            return not any(left.values())
        p = profs[i]
        lo = min(p)
        for d in sorted(k for k, v in left.items() if v):
            shift = d - lo
            if all(left.get(k + shift, 0) >= v for k, v in p.items()):
                nxt = dict(left)
                for k, v in p.items():
                    nxt[k + shift] -= v
                if rec(i + 1, nxt):
                    return True
        return False

    return rec(0, dict(computed))
