#!/usr/bin/env python3
"""Independent reference values for the test suite.

Everything here is computed from first principles with a throwaway
noncommutative polynomial type (a set of tuples of names) and plain
integer matrices.  Run it to regenerate expected.json:

    python3 tests/oracles/oracle.py [--cli build/celldga]

With --cli, augmentation counts are also computed by brute force from
DGAs dumped by the command line tool.
"""

import argparse
import itertools
import json
import subprocess
from pathlib import Path

import numpy as np


# ---------------------------------------------------------------- algebra

def P(*words):
    """Polynomial from words; a word is a tuple of names, () is the unit."""
    out = set()
    for w in words:
        out ^= {tuple(w)}
    return frozenset(out)


ZERO = frozenset()
ONE = P(())


def g(name):
    return P((name,))


def add(*ps):
    out = set()
    for p in ps:
        out ^= set(p)
    return frozenset(out)


def mul(p, q):
    out = set()
    for a in p:
        for b in q:
            out ^= {a + b}
    return frozenset(out)


def text(p):
    if not p:
        return "0"
    return " + ".join("1" if not w else "·".join(w) for w in sorted(p))


def derive(d, p):
    out = ZERO
    for w in p:
        for i, s in enumerate(w):
            out = add(out, mul(mul(P(w[:i]), d[s]), P(w[i + 1:])))
    return out


class Mat:
    def __init__(self, n):
        self.n = n
        self.e = [[ZERO] * n for _ in range(n)]

    @staticmethod
    def eye(n):
        m = Mat(n)
        for i in range(n):
            m.e[i][i] = ONE
        return m

    @staticmethod
    def unit(n, i, j):  # 1-based
        m = Mat(n)
        m.e[i - 1][j - 1] = ONE
        return m

    def __add__(self, o):
        m = Mat(self.n)
        for i in range(self.n):
            for j in range(self.n):
                m.e[i][j] = add(self.e[i][j], o.e[i][j])
        return m

    def __mul__(self, o):
        m = Mat(self.n)
        for i in range(self.n):
            for j in range(self.n):
                acc = ZERO
                for k in range(self.n):
                    acc = add(acc, mul(self.e[i][k], o.e[k][j]))
                m.e[i][j] = acc
        return m


def gens(n, name, skip=()):
    """Strictly upper triangular matrix of generators name:i,j (1-based)."""
    m = Mat(n)
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            if (i, j) not in skip:
                m.e[i - 1][j - 1] = g(f"{name}:{i},{j}")
    return m


def upper_entries(m):
    return {f"{i + 1},{j + 1}": text(m.e[i][j]) for i in range(m.n) for j in range(i + 1, m.n)}


# ---------------------------------------------------------------- formulas

def formulas():
    out = {}
    d = {"a13": P(("a12", "a23")), "a12": ZERO, "a23": ZERO}
    out["leibniz_a13a13"] = text(derive(d, P(("a13", "a13"))))

    bu, bl = Mat(2), Mat(2)
    bu.e[0][1], bl.e[0][1] = g("bU"), g("bL")
    prod = (Mat.eye(2) + bu) * (Mat.eye(2) + bl)
    out["product_2x2_12"] = text(prod.e[0][1])

    # Cu(1) edge with two sheets: the lower vertex has none, A_- = E_{1,2}
    ap = gens(2, "a:H")
    am = Mat.unit(2, 1, 2)
    b = Mat.eye(2) + gens(2, "b:E")
    out["cusp_edge_b12"] = text((ap * b + b * am).e[0][1])

    # plain edge, three sheets
    ap, am = gens(3, "a:H"), gens(3, "a:T")
    b = Mat.eye(3) + gens(3, "b:E")
    out["pv3_edge_b13"] = text((ap * b + b * am).e[0][2])

    # Type 1, three sheets, every corner and side labelled identically
    I = Mat.eye(3)
    C = gens(3, "c:sq")
    app, amm = gens(3, "a:UR"), gens(3, "a:LL")
    BU, BL, BR, BD = (gens(3, f"b:{s}") for s in "ULRD")
    dC = app * C + C * amm + (I + BU) * (I + BL) + (I + BR) * (I + BD)
    out["type1_n3"] = upper_entries(dC)

    # Type 9, n = 3, cusp (1,2): nothing survives on L or at LL except A_{--}(1,2) = 1
    amm = Mat.unit(3, 1, 2)
    BL = Mat(3)
    dC = app * C + C * amm + (I + BU) * (I + BL) + (I + BR) * (I + BD)
    out["type9_n3_k1"] = upper_entries(dC)

    # Type 13, n = 3, k = 1.  Sheets above the lower right corner are, top to
    # bottom, S1, S3, S2, so the chord of D between positions p < q sits at
    # labels (lab[p], lab[q]); the (2,3) chord of D lands below the diagonal
    # and is left out.  A_{--} = E_{1,3}; B_L = 0.
    lab = {1: 1, 2: 3, 3: 2}
    BD = Mat(3)
    for p, q in [(1, 2), (1, 3)]:
        i, j = lab[p], lab[q]
        BD.e[i - 1][j - 1] = g(f"b:D:{p},{q}")
    amm = Mat.unit(3, 1, 3)
    Q = I + Mat.unit(3, 3, 2)
    S = I + amm * Mat.unit(3, 2, 1) + Mat.unit(3, 2, 3)
    BR = gens(3, "b:R")
    BL = Mat(3)
    dC = app * C + C * Q * amm * Q + (I + BU) * (I + BL) * S + (I + BR) * (I + BD + BD * Mat.unit(3, 3, 2))
    out["type13_n3_k1"] = upper_entries(dC)
    return out


# ---------------------------------------------------------------- homology

def rank2(m):
    m = (np.array(m, dtype=np.uint8) % 2).copy()
    if m.size == 0:
        return 0
    r = 0
    rows, cols = m.shape
    for c in range(cols):
        piv = next((i for i in range(r, rows) if m[i, c]), None)
        if piv is None:
            continue
        m[[r, piv]] = m[[piv, r]]
        for i in range(rows):
            if i != r and m[i, c]:
                m[i] ^= m[r]
        r += 1
        if r == rows:
            break
    return r


def torus_homology(rows, cols):
    V = [(i, j) for j in range(rows) for i in range(cols)]
    vid = {v: k for k, v in enumerate(V)}
    E = []
    for (i, j) in V:
        E.append(((i, j), ((i + 1) % cols, j)))
        E.append(((i, j), (i, (j + 1) % rows)))
    eid = {e: k for k, e in enumerate(E)}
    d1 = np.zeros((len(V), len(E)), dtype=np.uint8)
    for k, (a, b) in enumerate(E):
        d1[vid[a], k] ^= 1
        d1[vid[b], k] ^= 1
    d2 = np.zeros((len(E), len(V)), dtype=np.uint8)
    for f, (i, j) in enumerate(V):
        i1, j1 = (i + 1) % cols, (j + 1) % rows
        for e in [((i, j), (i1, j)), ((i, j), (i, j1)), ((i1, j), (i1, j1)), ((i, j1), (i1, j1))]:
            d2[eid[e], f] ^= 1
    r1, r2 = rank2(d1), rank2(d2)
    return [len(V) - r1, len(E) - r1 - r2, len(V) - r2]


def sphere_homology():
    # four vertices, the four edges of a square, two discs on the same boundary
    d1 = np.array([[1, 1, 0, 0], [0, 1, 1, 0], [0, 0, 1, 1], [1, 0, 0, 1]], dtype=np.uint8)
    d2 = np.ones((4, 2), dtype=np.uint8)
    r1, r2 = rank2(d1), rank2(d2)
    return [4 - r1, 4 - r1 - r2, 2 - r2]


# ---------------------------------------------------------------- augmentations

def parse_poly(s):
    if s == "0":
        return []
    return [() if t == "1" else tuple(t.split("·")) for t in s.split(" + ")]


def count_augmentations(dga):
    m = dga["m"]
    deg = {x["id"]: x["degree"] for x in dga["generators"]}
    zero = [x for x in deg if (deg[x] % m == 0 if m else deg[x] == 0)]
    diffs = [parse_poly(p) for p in dga["diff"].values()]
    count = 0
    for bits in itertools.product((0, 1), repeat=len(zero)):
        eps = dict(zip(zero, bits))
        if all(sum(all(eps.get(s, 0) for s in w) for w in p) % 2 == 0 for p in diffs):
            count += 1
    return count


AUG_ENTRIES = [
    "square-1-n2", "square-2-n3-k1", "square-9-n2-k1", "square-9-n4-k2", "square-13-n3-k1",
    "square-11-n4-k1-l3", "cusp-pair", "swallowtail-ST-n3", "sphere",
]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--cli")
    args = ap.parse_args()
    out = {"formulas": formulas(), "torus_3x3": torus_homology(3, 3), "sphere": sphere_homology()}
    here = Path(__file__).resolve().parent
    old = here / "expected.json"
    if args.cli:
        aug = {}
        for name in AUG_ENTRIES:
            dga = json.loads(subprocess.check_output([args.cli, "build", "catalog:" + name]))
            aug[name] = count_augmentations(dga)
        out["augmentations"] = aug
    elif old.exists():
        out["augmentations"] = json.loads(old.read_text()).get("augmentations", {})
    old.write_text(json.dumps(out, indent=2, ensure_ascii=False, sort_keys=True) + "\n")


if __name__ == "__main__":
    main()
