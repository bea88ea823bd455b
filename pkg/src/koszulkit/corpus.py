"""Bundled example algebras and seeded random generators.

Random objects are drawn from a ``random.Random`` passed in by the caller,
so every suite run is reproducible from its seed.
"""

import os
from fractions import Fraction
from importlib import resources

from .algebra import make_algebra, parse_algebra
from .complexes import INJECTIVE, FreeComplex
from .expressions import presented_module

BUNDLED = ("sl2", "sl2_dual", "a3", "loop_sq", "free_loop", "cycle3")
COEFFS = (Fraction(1), Fraction(-1), Fraction(2), Fraction(1, 2), Fraction(3))


def bundled_dir():
    return str(resources.files("koszulkit") / "data")


def load_algebra(path):
    with open(path, encoding="utf-8") as fh:
        return parse_algebra(fh.read())


def load_corpus(directory):
    """Sorted list of (name, algebra) for the ``*.alg`` files in a directory."""
    out = []
    for fn in sorted(os.listdir(directory)):
        if fn.endswith(".alg"):
            out.append((fn[:-4], load_algebra(os.path.join(directory, fn))))
    return out


def bundled_corpus():
    return load_corpus(bundled_dir())


def _find_cycle(A):
    """An allowed cycle of arrows (list of arrow pairs), or None."""
    succ = A.allowed_successors
    names = [a.name for a in A.arrows]
    colour, parent = {a: 0 for a in names}, {}
    for root in names:
        if colour[root]:
            continue
        stack = [(root, iter(succ[root]))]
        colour[root] = 1
        while stack:
            node, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                colour[node] = 2
                stack.pop()
            elif colour[nxt] == 1:
                cyc, cur = [(node, nxt)], node
                while cur != nxt:
                    cyc.append((parent[cur], cur))
                    cur = parent[cur]
                return cyc
            elif colour[nxt] == 0:
                colour[nxt], parent[nxt] = 1, node
                stack.append((nxt, iter(succ[nxt])))
    return None


def random_algebra(rng, max_vertices=6, max_arrows=10, finite=True, density=0.4):
    """Random quadratic monomial algebra; with ``finite`` the allowed graph is made acyclic
    by adding relations along cycles."""
    nv = rng.randint(1, max_vertices)
    vertices = [str(i + 1) for i in range(nv)]
    na = rng.randint(0, max_arrows)
    arrows = [("a%d" % (i + 1), rng.choice(vertices), rng.choice(vertices)) for i in range(na)]
    pairs = [(a, b) for a in arrows for b in arrows if a[2] == b[1]]
    rels = {(a[0], b[0]) for a, b in pairs if rng.random() < density}
    A = make_algebra(vertices, arrows, rels)
    while finite and not A.finite_dim:
        cyc = _find_cycle(A)
        rels.add(rng.choice(sorted(cyc)))
        A = make_algebra(vertices, arrows, rels)
    return A


def _random_word(rng, A, vertex, length, forward=True):
    """A random nonzero word of the given length starting (or ending) at ``vertex``."""
    pool = A.words_from(vertex, length) if forward else A.words_into(vertex, length)
    pool = sorted(pool, key=lambda w: w.arrows)
    return rng.choice(pool) if pool else None


def _format_entry(terms):
    if not terms:
        return "0"
    parts = []
    for c, arrows in terms:
        parts.append("%s*%s" % (c, ".".join(arrows)))
    return " + ".join(parts).replace("+ -", "- ")


def random_presentation(rng, A, kind="coker", max_gens=2, max_cols=3, max_len=2):
    """Random (generators text, body text) for ``coker`` (or ``ker``) over A, or None when
    A has no arrows at the chosen vertices."""
    forward = kind == "coker"
    for _ in range(20):
        gens = [(rng.choice(A.vertices), rng.randint(0, 1)) for _ in range(rng.randint(1, max_gens))]
        cols = []
        for _ in range(rng.randint(1, max_cols)):
            i = rng.randrange(len(gens))
            w = _random_word(rng, A, gens[i][0], rng.randint(1, max_len), forward)
            if w is None:
                continue
            end = w.target if forward else w.source
            target_deg = gens[i][1] + (len(w.arrows) if forward else -len(w.arrows))
            col = [[] for _ in gens]
            col[i].append((rng.choice(COEFFS), w.arrows))
            for r, (v, j) in enumerate(gens):
                ln = target_deg - j if forward else j - target_deg
                if r == i or ln < 1 or rng.random() < 0.5:
                    continue
                pool = sorted(A.words_between(v, end, ln) if forward else A.words_between(end, v, ln),
                              key=lambda w: w.arrows)
                if pool:
                    col[r].append((rng.choice(COEFFS), rng.choice(pool).arrows))
            cols.append(col)
        if cols:
            head = ", ".join("%s<%d>" % g if g[1] else g[0] for g in gens)
            body = " | ".join(", ".join(_format_entry(col[r]) for col in cols)
                              for r in range(len(gens)))
            return head, body
    return None


def random_module_expression(rng, A, kind="coker"):
    p = random_presentation(rng, A, kind)
    if p is None:
        v = rng.choice(A.vertices)
        return "P(%s)" % v if kind == "coker" else "I(%s)" % v
    return "%s(%s; %s)" % (kind, p[0], p[1])


def random_module(rng, A, kind="coker", cutoff=None):
    text = random_module_expression(rng, A, kind)
    from .expressions import parse_module
    return text, parse_module(A, text, cutoff)


def random_two_term_complex(rng, B, cutoff=None):
    """Random two-term complex of shifted injectives over B, expanded to modules in degrees 0, 1."""
    p = random_presentation(rng, B, "ker")
    if p is None:
        v = rng.choice(B.vertices)
        X = FreeComplex(B, INJECTIVE, {0: [(v, 0)]}, {})
        return "I(%s)" % v, X.expand(cutoff)
    M = presented_module(B, p[0], p[1], "ker", cutoff)
    listed, inferred, entries = M.info["copresentation"]
    X = FreeComplex(B, INJECTIVE, {0: list(listed), 1: list(inferred)}, {0: entries})
    return "ker(%s; %s)" % p, X.expand(cutoff)
