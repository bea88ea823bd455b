"""Minimal graded projective resolutions and injective coresolutions.

The engine is plain degree-wise linear algebra: take the top of the current
module, cover it by shifted projectives, pass to the kernel, repeat.  The
cover is canonical: in each block the generators are the first standard
basis vectors (in label order) completing the radical.
"""

import os
from dataclasses import dataclass, field
from itertools import combinations

from .algebra import opposite_algebra
from .complexes import FreeComplex, PROJECTIVE, INJECTIVE
from .linalg import Matrix, ZERO, ONE, extend_to_complement, independent_subset, nullspace
from .modules import (DEFAULT_DEGREE, EXACT, GradedMorphism, free_module, kernel,
                      radical_vectors, cyclic_submodule_dims, dual_module)

DEFAULT_STEPS = int(os.environ.get("KOSZULKIT_STEPS", "20"))


def _std(n, j):
    v = [ZERO] * n
    v[j] = ONE
    return v


def top_generators(M, max_degree=None):
    """Canonical homogeneous generators ``(vertex, degree, vector)`` of M modulo its radical."""
    out = []
    for (v, d) in M.blocks():
        if max_degree is not None and d > max_degree:
            continue
        n = M.dim(v, d)
        rad = radical_vectors(M, v, d)
        rad = [rad[i] for i in independent_subset(rad, n)] if rad else []
        for j in extend_to_complement(rad, [_std(n, j) for j in range(n)], n):
            out.append((v, d, _std(n, j)))
    return out


@dataclass
class BettiTable:
    entries: dict            # (step, degree, vertex) -> multiplicity
    steps: int               # steps computed
    degree_bound: object     # internal degree up to which entries are certified (None: all)
    complete: bool           # resolution known to terminate within the computed steps

    def total(self, s):
        return sum(m for (t, _, _), m in self.entries.items() if t == s)

    def totals(self):
        return [self.total(s) for s in range(self.steps + 1)]

    def rows(self, vertex_order):
        vidx = {v: i for i, v in enumerate(vertex_order)}
        return sorted(((s, v, d, m) for (s, d, v), m in self.entries.items()),
                      key=lambda r: (r[0], r[2], vidx[r[1]]))

    def projective_dimension(self):
        if not self.complete:
            return None
        used = [s for (s, _, _) in self.entries]
        return max(used) if used else 0


@dataclass
class Resolution:
    """Minimal projective resolution; ``complex`` has term -s at step s."""
    module: object
    complex: FreeComplex
    betti: BettiTable
    syzygies: list = field(default_factory=list)   # Omega^s as submodules of F_{s-1}, s >= 1
    covers: list = field(default_factory=list)     # free modules F_s


def minimal_projective_resolution(M, steps=None, cutoff=None):
    """Resolve M through ``steps`` steps (the term at step ``steps`` is included).

    Over an infinite-dimensional algebra, or for a module truncated above, all
    data is certified in internal degrees ``<= cutoff`` (and the module window).
    """
    steps = DEFAULT_STEPS if steps is None else steps
    cutoff = DEFAULT_DEGREE if cutoff is None else cutoff
    A = M.algebra
    infinite = A.max_word_length() is None
    bound = None
    if infinite:
        bound = cutoff
    if M.completeness != EXACT:
        bound = M.window[1] if bound is None else min(bound, M.window[1])
    terms, diffs, betti, syz, covers = {}, {}, {}, [], []
    cur, into = M, None      # into: block -> list of vectors in the previous cover
    complete = False
    last = -1
    for s in range(steps + 1):
        gens = top_generators(cur, bound)
        if not gens:
            complete = True
            break
        last = s
        terms[-s] = tuple((v, d) for v, d, _ in gens)
        for v, d, _ in gens:
            betti[(s, d, v)] = betti.get((s, d, v), 0) + 1
        if s > 0:
            prev = covers[-1]
            entries = {}
            for k, (v, d, vec) in enumerate(gens):
                amb = _to_ambient(into[(v, d)], vec, prev.dim(v, d))
                for (i, p), c in zip(prev.labels(v, d), amb):
                    if c:
                        entries.setdefault((i, k), {})[p.arrows] = c
            diffs[-s] = entries
        F = free_module(A, terms[-s], cutoff)
        if bound is not None:
            F = _clip(F, bound)
        covers.append(F)
        blocks = {}
        for (v, d) in F.basis:
            cols = []
            for (k, p) in F.labels(v, d):
                gv, gd, gvec = gens[k]
                cols.append(cur.apply_word(p, gd, gvec))
            blocks[(v, d)] = Matrix.from_columns(cols, cur.dim(v, d))
        pi = GradedMorphism(F, cur, blocks)
        K, _ = kernel(pi, "Omega%d" % (s + 1))
        syz.append(K)
        cur, into = K, K.info["vectors"]
    else:
        complete = not top_generators(cur, bound)
    if bound is not None and not infinite and M.completeness == EXACT:
        bound = None
    cx = FreeComplex(A, PROJECTIVE, terms, {n: d for n, d in diffs.items()},
                     (None, bound), "res(%s)" % M.name)
    table = BettiTable(betti, max(last, 0), bound, complete)
    return Resolution(M, cx, table, syz, covers)


def _to_ambient(basis_vectors, coords, n):
    out = [ZERO] * n
    for c, b in zip(coords, basis_vectors):
        if c:
            for i, x in enumerate(b):
                if x:
                    out[i] += c * x
    return out


def _clip(F, bound):
    """Drop degrees above ``bound`` from a free module (window bookkeeping)."""
    if F.window[1] <= bound:
        return F
    F.basis = {k: v for k, v in F.basis.items() if k[1] <= bound}
    F.action = {k: m for k, m in F.action.items() if k[1] + 1 <= bound}
    F.window = (F.window[0], max(F.window[0], bound))
    return F


def syzygy(res, s):
    """Omega^s as a module (s >= 1)."""
    if s < 1 or s > len(res.syzygies):
        raise ValueError("syzygy %d not computed" % s)
    return res.syzygies[s - 1]


# --- syzygy decomposition ----------------------------------------------------

@dataclass
class Summand:
    kind: str        # "L" (arrow ideal), "P" (projective) or "U" (other cyclic)
    name: str        # arrow or vertex
    shift: int
    vertex: str      # vertex of the generator
    annihilator: tuple

    def __str__(self):
        if self.kind == "L":
            return "L(%s)<%d>" % (self.name, self.shift)
        if self.kind == "P":
            return "P(%s)<%d>" % (self.name, self.shift)
        return "U(%s; %s)<%d>" % (self.vertex, ",".join(self.annihilator), self.shift)


@dataclass
class Decomposition:
    summands: list
    ok: bool
    witness: str = ""

    def pairs(self):
        return [(s.name, s.shift) for s in self.summands if s.kind == "L"]


def _cyclic_dims(A, y, d, B, bound):
    """Graded dims of P_y<d> / (sum of b.Lambda, b in B), up to ``bound``."""
    out = {}
    L = A.max_word_length()
    top = bound - d if bound is not None else L
    for n in range(0, top + 1):
        for w in A.words_from(y, n):
            if w.arrows and w.arrows[0] in B:
                continue
            key = (w.target, d + n)
            out[key] = out.get(key, 0) + 1
    return out


def classify(A, y, B, d):
    """Name the cyclic module P_y<d>/(B) as an arrow ideal, a projective, or neither."""
    B = tuple(sorted(B, key=lambda b: A.quiver.arrow_index[b]))
    for a in A.quiver.incoming[y]:
        z = tuple(sorted(A.zero_successors[a], key=lambda b: A.quiver.arrow_index[b]))
        if set(z) == set(B):
            return Summand("L", a, d - 1, y, B)
    if not B:
        return Summand("P", y, d, y, B)
    return Summand("U", y, d, y, B)


def decompose_monomial_submodule(Om, bound=None):
    """Split a graded module into cyclic summands P_y<d>/(B), chosen greedily by annihilator.

    For each top block the candidate generators are taken from the joint kernels
    of the largest arrow sets first.  The result is verified: each cyclic
    submodule has the expected dimensions and their sum exhausts Om.  For a
    truncated module the check runs one degree below the window top, since
    annihilators of generators in the top degree cannot be seen.
    """
    A = Om.algebra
    exact = Om.completeness == EXACT and bound is None
    hi = Om.window[1] if exact else min(Om.window[1], bound if bound is not None else Om.window[1]) - 1
    limit = None if exact else hi
    summands, gens = [], []
    for (y, d) in Om.blocks():
        if d > hi:
            continue
        n = Om.dim(y, d)
        rad = radical_vectors(Om, y, d)
        chosen = [rad[i] for i in independent_subset(rad, n)] if rad else []
        out = list(A.quiver.outgoing[y])
        for size in range(len(out), -1, -1):
            for S in combinations(out, size):
                rows = []
                for b in S:
                    rows.extend(Om.act(b, d).rows)
                cand = nullspace(Matrix(rows, len(rows), n)) if rows else \
                    [_std(n, j) for j in range(n)]
                for j in extend_to_complement(chosen, cand, n):
                    chosen.append(cand[j])
                    gens.append((y, d, cand[j]))
    total = {}
    for (y, d, vec) in gens:
        Z = tuple(b for b in A.quiver.outgoing[y] if not any(Om.act(b, d).apply(vec)))
        s = classify(A, y, Z, d)
        summands.append(s)
        got = cyclic_submodule_dims(Om, y, d, vec, Om.window[1] if exact else hi)
        want = _cyclic_dims(A, y, d, Z, limit)
        if got != want:
            return Decomposition(summands, False,
                                 "generator at (%s, %d) spans %s, expected %s" % (y, d, got, want))
        for k, m in got.items():
            total[k] = total.get(k, 0) + m
    dims = {k: m for k, m in Om.dims().items() if k[1] <= hi}
    if total != dims:
        return Decomposition(summands, False, "summand dims %s != %s" % (total, dims))
    return Decomposition(summands, True)


def syzygy_decomposition(res, step, allow_projective=True):
    """Express Omega^step as a sum of arrow ideals (and projectives if allowed).

    Summands that are neither are reported as a failed decomposition.
    """
    if step > len(res.syzygies):
        raise ValueError("resolution too short for step %d" % step)
    Om = syzygy(res, step)
    dec = decompose_monomial_submodule(Om, res.betti.degree_bound)
    if dec.ok:
        bad = [s for s in dec.summands
               if s.kind == "U" or (s.kind == "P" and not allow_projective)]
        if bad:
            return Decomposition(dec.summands, False, "summand %s is not an arrow ideal" % bad[0])
    return dec


# --- linear part and linearity defect ----------------------------------------

def linear_part(X):
    """Keep exactly the single-arrow entries of every differential."""
    diffs = {n: {rc: {w: c for w, c in e.items() if len(w) == 1} for rc, e in d.items()}
             for n, d in X.diffs.items()}
    return FreeComplex(X.algebra, X.kind, X.terms, diffs, X.strands, "lin(%s)" % X.name)


def _first_split(res, upto):
    for s in range(1, min(upto, len(res.syzygies)) + 1):
        if syzygy_decomposition(res, s).ok:
            return s
    return None


@dataclass
class LinDefectReport:
    defect: object            # int, or "> N" when not settled within the cutoff
    certified: bool
    table: list               # (step k, "exact" | "not exact" | "structural", witness dims)
    structural_step: object   # first s with Omega^s a sum of linear summands, or None


def linearity_defect(M, steps=None, cutoff=None):
    """ld(M) = largest k with H^{-k}(lin F) != 0 (0 if none), F the minimal resolution.

    Steps 1..steps are checked explicitly.  Once some syzygy splits into arrow
    ideals and projectives, all later syzygies have linear resolutions and the
    linear part is exact from there on; that step certifies the value.
    """
    steps = DEFAULT_STEPS if steps is None else steps
    # a split syzygy usually shows up by step 2, so try a short resolution first
    res, structural = None, None
    for n in sorted({min(3, steps + 1), steps + 1}):
        res = minimal_projective_resolution(M, n, cutoff)
        structural = _first_split(res, min(steps, n - 1))
        if structural is not None or res.betti.complete:
            break
    lin = linear_part(res.complex)
    table, worst = [], 0
    last = res.betti.steps if res.betti.complete else min(steps, res.betti.steps - 1)
    for k in range(1, steps + 1):
        if structural is not None and k > structural:
            table.append((k, "structural", {}))
            break
        if k > last and not res.betti.complete:
            break
        h = lin.cohomology_dims(-k)
        if h:
            worst = k
            table.append((k, "not exact", h))
        else:
            table.append((k, "exact", {}))
    certified = res.betti.complete or structural is not None
    defect = worst
    if not certified and worst == last:
        defect = "> %d" % (last - 1)
    return LinDefectReport(defect, certified, table, structural)


# --- injective coresolutions via duality -------------------------------------

@dataclass
class Coresolution:
    module: object
    complex: FreeComplex
    cobetti: BettiTable


def minimal_injective_coresolution(M, steps=None, cutoff=None):
    """Coresolve M by shifted injectives: dualize, resolve over the opposite algebra,
    dualize back (words reverse, prepending becomes deletion from the end)."""
    steps = DEFAULT_STEPS if steps is None else steps
    B = M.algebra
    opp = opposite_algebra(B)
    R = minimal_projective_resolution(dual_module(M, opp), steps, cutoff)
    X = R.complex
    terms = {-n: tuple((x, -j) for x, j in g) for n, g in X.terms.items()}
    diffs = {}
    for n, d in X.diffs.items():
        # d^n: term n -> n+1 of the resolution; dual runs from -(n+1) to -n
        out = {}
        for (r, c), e in d.items():
            out[(c, r)] = {tuple(reversed(w)): x for w, x in e.items()}
        diffs[-n - 1] = out
    lo = None if X.strands[1] is None else -X.strands[1]
    cx = FreeComplex(B, INJECTIVE, terms, diffs, (lo, None), "cores(%s)" % M.name)
    co = {(s, -d, v): m for (s, d, v), m in R.betti.entries.items()}
    bound = None if R.betti.degree_bound is None else -R.betti.degree_bound
    return Coresolution(M, cx, BettiTable(co, R.betti.steps, bound, R.betti.complete))


# --- gradedness of syzygies --------------------------------------------------

def generated_dims(M, gens, bound=None):
    """Blockwise dimensions of the submodule generated by homogeneous ``(v, d, vector)``."""
    from .linalg import span_basis
    A = M.algebra
    spans = {}
    for v, d, vec in gens:
        spans.setdefault((v, d), []).append(vec)
    for d in sorted({d for (_, d) in M.basis}):
        if bound is not None and d >= bound:
            break
        for v in A.vertices:
            vecs = spans.get((v, d))
            if not vecs:
                continue
            vecs = span_basis(vecs, M.dim(v, d))
            spans[(v, d)] = vecs
            for a in A.quiver.outgoing[v]:
                key = (A.arrow(a).target, d + 1)
                if M.dim(*key):
                    spans.setdefault(key, []).extend(M.act(a, d).apply(x) for x in vecs)
    return {k: len(span_basis(vs, M.dim(*k))) for k, vs in spans.items() if vs}


def syzygy_gradedness(res):
    """Every computed syzygy is generated by homogeneous elements: its canonical top,
    propagated by arrows, fills every block within the certified window.

    Returns (ok, witness)."""
    bound = res.betti.degree_bound
    for s, Om in enumerate(res.syzygies, 1):
        got = generated_dims(Om, top_generators(Om, bound), bound)
        for (v, d) in Om.blocks():
            if bound is not None and d > bound:
                continue
            if got.get((v, d), 0) != Om.dim(v, d):
                return False, "Omega^%d block (%s, %d): generated %d of %d" % (
                    s, v, d, got.get((v, d), 0), Om.dim(v, d))
    return True, ""
