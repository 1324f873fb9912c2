"""Independent reference computations for the bundled fixtures.

Uses regina and the veering census tooling for the triangulation data and
sympy/networkx for the algebra.  Writes fixtures/*.vt and fixtures/manifest.json.

    VEERING_PATH=/path/to/veering python3 fixtures/oracles/oracle.py
"""

import itertools
import json
import os
import sys
from functools import reduce
from math import gcd

sys.path.insert(0, os.environ.get("VEERING_PATH", "/tmp/veering-0.4"))

import networkx as nx
import regina
import sympy as sp
from sympy.matrices.normalforms import hermite_normal_form
from veering.taut import isosig_to_tri_angle
from veering.transverse_taut import edge_side_face_collections, is_transverse_taut, top_bottom_embeddings_of_faces
from veering.veering_tri import is_veering

HERE = os.path.dirname(os.path.abspath(__file__))
FIXDIR = os.path.dirname(HERE)
CENSUS = os.path.join(os.environ.get("VEERING_PATH", "/tmp/veering-0.4"), "veering", "data",
                      "veering_census_with_data.txt")

FIXTURES = [
    ("FIX-A", "cPcbbbiht_12"),
    ("FIX-B", "eLMkbcddddedde_2100"),
    ("FIX-C", "fLAMcaccdeejsnaxk_20010"),
    ("m003", "cPcbbbdxm_10"),
    ("m125", "fLLQcbeddeehhbghh_01110"),
    ("m367", "fLLQcbecdeepuwsua_20102"),
    ("m227", "fLAMcbccdeehhsqqj_12202"),
    ("s948", "gLLAQcededffiikajwn_011220"),
    ("s596", "gLLPQbefefefhhhhhha_011102"),
    ("s776", "gvLQQcdeffeffffaafa_201102"),
    ("s227", "gLLAQbecdfffhhnkqnc_120012"),
]

SLOTS = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
NAMES = "abcdefgh"


def census_flags():
    flags = {}
    with open(CENSUS) as f:
        for line in f:
            parts = line.split()
            flags[parts[0]] = parts[1] == "F0"
    return flags


class Oracle:
    def __init__(self, code):
        self.code = code
        self.tri, self.angle = isosig_to_tri_angle(code)
        self.n = self.tri.countTetrahedra()
        self.coor = is_transverse_taut(self.tri, self.angle, return_type="tet_vert_coorientations")
        colours = is_veering(self.tri, self.angle, return_type="veering_colours")
        self.veer = ["L" if c == "blue" else "R" for c in colours]
        self.nf = self.tri.countTriangles()
        self.ne = self.tri.countEdges()
        top, bottom = top_bottom_embeddings_of_faces(self.tri, self.angle, self.coor)
        self.below = [top[f].simplex().index() for f in range(self.nf)]
        self.above = [bottom[f].simplex().index() for f in range(self.nf)]
        self.above_slot = [(bottom[f].simplex().index(), bottom[f].vertices()[3]) for f in range(self.nf)]
        self.sides = edge_side_face_collections(self.tri, self.angle, self.coor)

    # -- raw data ---------------------------------------------------------
    def vt(self):
        gl, vs = [], []
        for t in range(self.n):
            tet = self.tri.tetrahedron(t)
            row = []
            for f in range(4):
                p = tet.adjacentGluing(f)
                row.append([tet.adjacentTetrahedron(f).index(), p[f], str(p)])
            gl.append(row)
            vs.append([self.veer[tet.edge(k).index()] for k in range(6)])
        out = "{\n"
        out += '  "coorientations": [' + ", ".join("[" + ", ".join(str(x) for x in c) + "]" for c in self.coor) + "],\n"
        out += '  "format": "vt/1",\n'
        out += '  "gluings": [\n'
        out += ",\n".join("    [" + ", ".join('[%d, %d, "%s"]' % tuple(g) for g in row) + "]" for row in gl)
        out += "\n  ],\n"
        out += '  "tetrahedra": %d,\n' % self.n
        out += '  "veers": [' + ", ".join("[" + ", ".join('"%s"' % v for v in row) + "]" for row in vs) + "]\n"
        out += "}\n"
        return out

    def homology(self):
        h = self.tri.homology()
        return h.rank(), [int(str(h.invariantFactor(i))) for i in range(h.countInvariantFactors())]

    # -- cohomology coordinates --------------------------------------------
    def cocycles(self, b):
        rel = sp.zeros(self.ne, self.nf)
        for e, (s0, s1) in enumerate(self.sides):
            for f, _ in s0:
                rel[e, f] += 1
            for f, _ in s1:
                rel[e, f] -= 1
        kernel = rel.nullspace()
        cob = [[(1 if self.above[f] == t else 0) - (1 if self.below[f] == t else 0) for f in range(self.nf)]
               for t in range(self.n)]
        chosen, span = [], sp.Matrix(cob)
        base_rank = span.rank()
        for k in kernel:
            trial = span.col_join(k.T)
            if trial.rank() > span.rank():
                span = trial
                chosen.append(k)
        assert len(chosen) == b, (len(chosen), b)
        assert span.rank() - base_rank == b
        # Gauge to zero on a spanning tree, so values are cycle values.
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        tree = set()
        for f in range(self.nf):
            u, v = self.below[f], self.above[f]
            if not nx.has_path(g, u, v):
                g.add_edge(u, v)
                tree.add(f)
        t_graph = nx.Graph()
        t_graph.add_nodes_from(range(self.n))
        for f in tree:
            t_graph.add_edge(self.below[f], self.above[f], face=f)

        def gauge(c):
            pot = {0: sp.Integer(0)}
            for u, v in nx.bfs_edges(t_graph, 0):
                f = t_graph.edges[u, v]["face"]
                # c + delta p vanishes on f: c(f) + p(above) - p(below) = 0
                if self.below[f] == u:
                    pot[v] = pot[u] - c[f]
                else:
                    pot[v] = pot[u] + c[f]
            return [c[f] + pot[self.above[f]] - pot[self.below[f]] for f in range(self.nf)]

        cs = []
        for k in chosen:
            den = reduce(sp.ilcm, [sp.fraction(x)[1] for x in k], 1)
            cs.append(gauge([x * den for x in k]))
        vals = sp.Matrix([[c[f] for f in range(self.nf) if f not in tree] for c in cs])
        h = hermite_normal_form(vals)
        basis = h[:, :b]
        assert basis.det() != 0
        inv = basis.inv()
        out = []
        for i in range(b):
            row = [sum(inv[i, j] * cs[j][f] for j in range(b)) for f in range(self.nf)]
            assert all(x.is_integer for x in row)
            out.append([int(x) for x in row])
        return out

    # -- combinatorics ----------------------------------------------------
    def tet_edges(self, t):
        co = self.coor[t]
        bottom = tuple(v for v in range(4) if co[v] == 1)
        top = tuple(v for v in range(4) if co[v] == -1)
        return bottom, top

    def edge_index(self, t, a, b):
        return self.tri.tetrahedron(t).edge(a, b).index()

    def ascending(self, t, a, b):
        """Faces crossed going up the fan of edge {a,b} from t until it is a bottom edge."""
        faces = []
        while True:
            bottom, top = self.tet_edges(t)
            if set((a, b)) == set(bottom):
                return faces
            ups = sorted(u for u in range(4) if self.coor[t][u] == 1 and u not in (a, b))
            u = ups[0]
            tet = self.tri.tetrahedron(t)
            faces.append(tet.triangle(u).index())
            g = tet.adjacentGluing(u)
            t, a, b = tet.adjacentTetrahedron(u).index(), g[a], g[b]
            assert len(faces) <= 6 * self.n

    def label(self, cs, faces):
        return tuple(sum(c[f] for f in faces) for c in cs)

    def side_edges(self, t):
        bottom, top = self.tet_edges(t)
        out = []
        for a, b in SLOTS:
            if {a, b} in ({*bottom}, {*top}):
                continue
            out.append((a, b))
        return out

    def ab_map(self):
        image = []
        for f in range(self.nf):
            t, v = self.above_slot[f]
            bottom, top = self.tet_edges(t)
            top_veer = self.veer[self.edge_index(t, *top)]
            verts = [x for x in range(4) if x != v]
            cands = [(a, b) for a, b in itertools.combinations(verts, 2) if {a, b} != set(bottom)]
            r = [e for e in cands if self.veer[self.edge_index(t, *e)] == top_veer]
            assert len(r) == 1
            u = [x for x in range(4) if self.coor[t][x] == 1 and x not in r[0]]
            assert len(u) == 1
            image.append(self.tri.tetrahedron(t).triangle(u[0]).index())
        assert sorted(image) == list(range(self.nf))
        return image

    def ab_cycles(self):
        image, seen, cycles = self.ab_map(), set(), []
        for f in range(self.nf):
            if f in seen:
                continue
            cyc, x = [], f
            while x not in seen:
                seen.add(x)
                cyc.append(x)
                x = image[x]
            cycles.append(cyc)
        return cycles

    def gamma_cycles(self):
        g = nx.DiGraph()
        for f in range(self.nf):
            g.add_edge(("t", self.below[f]), ("f", f))
            g.add_edge(("f", f), ("t", self.above[f]))
        out = []
        for c in nx.simple_cycles(g):
            out.append([x[1] for x in c if x[0] == "f"])
        return out

    # -- polynomials ------------------------------------------------------
    def polynomials(self, cs):
        b = len(cs)
        xs = sp.symbols(list(NAMES[:b]))

        def mono(h):
            return sp.Mul(*[x ** e for x, e in zip(xs, h)])

        eidx = lambda t, e: self.edge_index(t, *e)
        L = sp.zeros(self.ne, self.n)
        for t in range(self.n):
            bottom, top = self.tet_edges(t)
            L[eidx(t, bottom), t] += 1
            L[eidx(t, top), t] -= mono(self.label(cs, self.ascending(t, *top)))
            top_veer = self.veer[eidx(t, top)]
            for e in self.side_edges(t):
                if self.veer[eidx(t, e)] != top_veer:
                    L[eidx(t, e), t] -= mono(self.label(cs, self.ascending(t, *e)))
        LF = sp.zeros(self.ne, self.nf)
        for f in range(self.nf):
            t, v = self.above_slot[f]
            bottom, _ = self.tet_edges(t)
            LF[eidx(t, bottom), f] += 1
            verts = [x for x in range(4) if x != v]
            for e in itertools.combinations(verts, 2):
                if set(e) != set(bottom):
                    LF[eidx(t, e), f] -= mono(self.label(cs, self.ascending(t, *e)))
        V = sp.expand(L.det(method="berkowitz"))
        theta = sp.Integer(0)
        for cols in itertools.combinations(range(self.nf), self.ne):
            m = sp.expand(LF.extract(list(range(self.ne)), list(cols)).det(method="berkowitz"))
            if m == 0:
                continue
            theta = canonical(m, xs) if theta == 0 else canonical(sp.gcd(sp.numer(sp.together(theta)),
                                                                             sp.numer(sp.together(m))), xs)
            if theta == 1:
                break
        vab = sp.Integer(1)
        cycles = []
        for cyc in self.ab_cycles():
            g = self.label(cs, cyc)
            k = len(cyc)
            vab *= 1 + (-1) ** (k + 1) * mono(g)
            cycles.append({"length": k, "class": list(g)})
        return xs, canonical(V, xs), theta, canonical(sp.expand(vab), xs), cycles


def canonical(p, xs):
    """Strip monomial content and fix the sign of the lexicographically greatest term."""
    p = sp.together(sp.expand(p))
    num, den = sp.fraction(p)
    poly = sp.Poly(sp.expand(num), *xs)
    terms = poly.terms()
    mins = [min(m[i] for m, _ in terms) for i in range(len(xs))]
    terms = [(tuple(e - mn for e, mn in zip(m, mins)), c) for m, c in terms]
    top = max(terms)
    sign = -1 if top[1] < 0 else 1
    content = reduce(gcd, [abs(int(c)) for _, c in terms])
    assert content == 1 or len(terms) == 1, "non-unit content"
    return sp.Add(*[sign * c * sp.Mul(*[x ** e for x, e in zip(xs, m)]) for m, c in terms])


def render(p, xs):
    """Same rendering as the library: graded-lex descending, a*b^-1 + 3."""
    if p == 0:
        return "0"
    poly = sp.Poly(sp.expand(p), *xs)
    terms = sorted(poly.terms(), key=lambda mc: (sum(mc[0]), mc[0]), reverse=True)
    out = ""
    for i, (m, c) in enumerate(terms):
        c = int(c)
        factors = []
        for x, e in zip(xs, m):
            if e == 1:
                factors.append(str(x))
            elif e != 0:
                factors.append("%s^%d" % (x, e))
        body = "*".join(factors)
        mag = abs(c)
        if not body:
            term = str(mag)
        elif mag == 1:
            term = body
        else:
            term = "%d*%s" % (mag, body)
        if i == 0:
            out = ("-" if c < 0 else "") + term
        else:
            out += (" - " if c < 0 else " + ") + term
    return out


def primitive(v):
    g = reduce(gcd, [abs(x) for x in v], 0)
    return tuple(x // g for x in v) if g else tuple(v)


def main():
    flags = census_flags()
    manifest = {"fixtures": []}
    for name, code in FIXTURES:
        o = Oracle(code)
        with open(os.path.join(FIXDIR, name + ".vt"), "w") as f:
            f.write(o.vt())
        b, torsion = o.homology()
        cs = o.cocycles(b)
        xs, V, theta, vab, cycles = o.polynomials(cs)
        gam = o.gamma_cycles()
        gens = sorted({primitive(o.label(cs, c)) for c in gam})
        sides = sorted(sorted([len(s0) - 1, len(s1) - 1]) for s0, s1 in o.sides)
        entry = {
            "name": name,
            "file": name + ".vt",
            "code": code,
            "tetrahedra": o.n,
            "edges": o.ne,
            "faces": o.nf,
            "b": b,
            "torsion": torsion,
            "layered": flags[code],
            "side_lengths": sides,
            "ab_cycle_lengths": sorted(c["length"] for c in cycles),
            "ab_cycles": sorted(cycles, key=lambda c: (c["length"], c["class"])),
            "simple_cycles": len(gam),
            "generators": [list(g) for g in gens],
            "face_slots": [list(o.above_slot[f]) for f in range(o.nf)],
            "cocycles": cs,
            "veering": render(V, xs),
            "taut": render(theta, xs),
            "ab": render(vab, xs),
        }
        manifest["fixtures"].append(entry)
        print(name, code, "b=%d" % b, entry["veering"], "|", entry["taut"], "|", entry["ab"], flush=True)
    with open(os.path.join(FIXDIR, "manifest.json"), "w") as f:
        json.dump(manifest, f, indent=1, sort_keys=True)
        f.write("\n")


if __name__ == "__main__":
    main()
