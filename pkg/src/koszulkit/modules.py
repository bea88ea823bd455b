"""Graded modules over quadratic monomial algebras, stored degree-wise.

A module assigns a finite basis to each ``(vertex, degree)`` inside a window
``[lo, hi]`` and a rational matrix to each ``(arrow, degree)``: the matrix
of the arrow ``a: x -> y`` at degree ``n`` maps ``M_n(x)`` to ``M_{n+1}(y)``.
Arrow actions always raise the internal degree by one, so projectives live
in degrees ``>= 0`` and injectives in degrees ``<= 0`` (socle in degree 0).

Modules over infinite-dimensional algebras are carried inside a window with
a completeness flag:

``exact``             the module vanishes outside the window;
``truncated-above``   the module may continue above ``hi`` (projective side);
``truncated-below``   the module may continue below ``lo`` (injective side);
``truncated``         both.
"""

import os
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import Word
from .linalg import (Matrix, ZERO, ONE, nullspace, rank, solve_in_basis, span_basis,
                     quotient_projection, independent_subset)

DEFAULT_DEGREE = int(os.environ.get("KOSZULKIT_DEGREE", "24"))

EXACT = "exact"
ABOVE = "truncated-above"
BELOW = "truncated-below"
BOTH = "truncated"


class ModuleError(ValueError):
    pass


class OrientationError(ModuleError):
    """A truncation piece that should be a submodule is not closed under the action."""


def _combine_completeness(*flags):
    above = any(f in (ABOVE, BOTH) for f in flags)
    below = any(f in (BELOW, BOTH) for f in flags)
    if above and below:
        return BOTH
    return ABOVE if above else BELOW if below else EXACT


@dataclass(eq=False)
class GradedModule:
    algebra: object
    basis: dict                      # (vertex, degree) -> tuple of labels
    action: dict                     # (arrow, degree) -> Matrix
    window: tuple = (0, 0)
    completeness: str = EXACT
    name: str = ""
    info: dict = field(default_factory=dict)   # provenance (presentation data etc.)
    _zeros: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.basis = {k: tuple(v) for k, v in self.basis.items() if len(v)}
        self.action = {k: m for k, m in self.action.items() if not m.is_zero()}
        lo, hi = self.window
        for (v, d) in self.basis:
            if d < lo or d > hi:
                raise ModuleError("basis at (%s, %d) outside window %s" % (v, d, self.window))
        for (a, d), m in self.action.items():
            arr = self.algebra.arrow(a)
            if m.shape != (self.dim(arr.target, d + 1), self.dim(arr.source, d)):
                raise ModuleError("action of %s at degree %d has shape %s" % (a, d, m.shape))

    # --- access -------------------------------------------------------------

    def dim(self, v, d):
        return len(self.basis.get((v, d), ()))

    def labels(self, v, d):
        return self.basis.get((v, d), ())

    def degrees(self):
        return sorted({d for (_, d) in self.basis})

    def dims(self):
        """Dimension vector as a dict (vertex, degree) -> dim, nonzero entries only."""
        key = _block_key(self.algebra)
        return {k: len(self.basis[k]) for k in sorted(self.basis, key=key)}

    def total_dim(self):
        return sum(len(v) for v in self.basis.values())

    def is_zero(self):
        return not self.basis

    def act(self, arrow, d):
        """Matrix of ``arrow`` from degree d to d + 1 (zero matrix if absent)."""
        m = self.action.get((arrow, d))
        if m is not None:
            return m
        m = self._zeros.get((arrow, d))
        if m is None:
            arr = self.algebra.arrow(arrow)
            m = self._zeros[(arrow, d)] = Matrix.zeros(self.dim(arr.target, d + 1),
                                                       self.dim(arr.source, d))
        return m

    def act_word(self, word, d):
        """Matrix of a word from degree d (starting at ``word.source``)."""
        m = Matrix.identity(self.dim(word.source, d))
        for k, a in enumerate(word.arrows):
            m = self.act(a, d + k) @ m
        return m

    def apply_word(self, word, d, vec):
        """Image of the vector ``vec`` at degree d under a word, arrow by arrow."""
        for k, a in enumerate(word.arrows):
            if not any(vec):
                arr = self.algebra.arrow(word.arrows[-1])
                return [ZERO] * self.dim(arr.target, d + len(word.arrows))
            vec = self.act(a, d + k).apply(vec)
        return list(vec)

    def blocks(self):
        return sorted(self.basis, key=_block_key(self.algebra))

    def certified(self, d):
        """Whether degree d lies in the part of the window known to be exact."""
        lo, hi = self.window
        if self.completeness == EXACT:
            return True
        if d < lo and self.completeness in (BELOW, BOTH):
            return False
        if d > hi and self.completeness in (ABOVE, BOTH):
            return False
        return True

    def check_relations(self):
        """Return the first (relation, degree) whose composite action is nonzero, or None."""
        lo, hi = self.window
        for a, b in self.algebra.sorted_relations:
            for d in range(lo, hi - 1):
                if not (self.act(b, d + 1) @ self.act(a, d)).is_zero():
                    return (a, b), d
        return None

    def __repr__(self):
        return "GradedModule(%s, dims=%s, window=%s, %s)" % (
            self.name or "?", self.dims(), self.window, self.completeness)


def _block_key(A):
    vidx = A.quiver.vertex_index
    return lambda k: (k[1], vidx[k[0]])


@dataclass(eq=False)
class GradedMorphism:
    source: GradedModule
    target: GradedModule
    blocks: dict    # (vertex, degree) -> Matrix (target dim x source dim)

    def __post_init__(self):
        self.blocks = {k: m for k, m in self.blocks.items() if not m.is_zero()}
        for (v, d), m in self.blocks.items():
            if m.shape != (self.target.dim(v, d), self.source.dim(v, d)):
                raise ModuleError("morphism block at (%s, %d) has shape %s" % (v, d, m.shape))

    def block(self, v, d):
        m = self.blocks.get((v, d))
        if m is not None:
            return m
        return Matrix.zeros(self.target.dim(v, d), self.source.dim(v, d))

    def commutes(self):
        """First (arrow, degree) where the square fails to commute, or None."""
        A = self.source.algebra
        lo = min(self.source.window[0], self.target.window[0])
        hi = max(self.source.window[1], self.target.window[1])
        for arr in A.arrows:
            for d in range(lo, hi):
                left = self.target.act(arr.name, d) @ self.block(arr.source, d)
                right = self.block(arr.target, d + 1) @ self.source.act(arr.name, d)
                if left != right:
                    return arr.name, d
        return None

    def is_zero(self):
        return not self.blocks

    def __matmul__(self, other):
        """Composition ``self o other``."""
        keys = set(self.blocks) | set(other.blocks)
        return GradedMorphism(other.source, self.target,
                              {k: self.block(*k) @ other.block(*k) for k in keys})

    def __add__(self, other):
        keys = set(self.blocks) | set(other.blocks)
        return GradedMorphism(self.source, self.target,
                              {k: self.block(*k) + other.block(*k) for k in keys})

    def scale(self, c):
        return GradedMorphism(self.source, self.target,
                              {k: m.scale(c) for k, m in self.blocks.items()})


def identity_morphism(M):
    return GradedMorphism(M, M, {k: Matrix.identity(len(v)) for k, v in M.basis.items()})


def zero_morphism(M, N):
    return GradedMorphism(M, N, {})


def zero_module(A, window=(0, 0), name="0"):
    return GradedModule(A, {}, {}, window, EXACT, name)


# --- monomial constructions --------------------------------------------------

def monomial_module(A, basis, step, window, completeness=EXACT, name="", info=None):
    """Module with a basis of labels whose arrow actions send labels to labels or zero.

    ``basis`` maps (vertex, degree) -> list of labels, ``step(label, arrow)``
    returns ``(label', coefficient)`` or None.
    """
    basis = {k: tuple(v) for k, v in basis.items() if v}
    index = {k: {lab: i for i, lab in enumerate(v)} for k, v in basis.items()}
    action = {}
    for (v, d), labs in basis.items():
        for a in A.quiver.outgoing[v]:
            tgt = (A.arrow(a).target, d + 1)
            if tgt not in basis:
                continue
            rows = [[ZERO] * len(labs) for _ in basis[tgt]]
            hit = False
            for j, lab in enumerate(labs):
                res = step(lab, a)
                if res is None:
                    continue
                lab2, c = res
                i = index[tgt].get(lab2)
                if i is None:
                    continue
                rows[i][j] = Fraction(c)
                hit = True
            if hit:
                action[(a, d)] = Matrix(rows, len(basis[tgt]), len(labs))
    return GradedModule(A, basis, action, window, completeness, name, dict(info or {}))


def _proj_window(A, shift, cutoff):
    L = A.max_word_length()
    if L is None:
        return (shift, max(shift, cutoff)), ABOVE
    return (shift, shift + L), EXACT


def free_module(A, generators, cutoff=None, name=""):
    """Direct sum of shifted projectives ``P_x<j>`` for generators ``(x, j)``.

    Labels are ``(i, word)``; ``word`` starts at the i-th generator's vertex.
    ``cutoff`` bounds the window from above when A is infinite-dimensional.
    """
    cutoff = DEFAULT_DEGREE if cutoff is None else cutoff
    generators = list(generators)
    L = A.max_word_length()
    if generators:
        lo = min(j for _, j in generators)
        hi = max(j for _, j in generators) + L if L is not None else max(cutoff, lo)
    else:
        lo, hi = 0, 0
    completeness = EXACT if L is not None else ABOVE
    basis = {}
    for i, (x, j) in enumerate(generators):
        top = (j + L) if L is not None else hi
        for d in range(j, top + 1):
            for w in A.words_from(x, d - j):
                basis.setdefault((w.target, d), []).append((i, w))

    def step(label, a):
        i, w = label
        if w.arrows and (w.arrows[-1], a) in A.relations:
            return None
        return (i, Word(w.source, A.arrow(a).target, w.arrows + (a,))), 1

    return monomial_module(A, basis, step, (lo, hi), completeness, name,
                           {"generators": tuple(generators)})


def cofree_module(A, cogenerators, cutoff=None, name=""):
    """Direct sum of shifted injectives ``I_x<j>`` (socle of ``I_x<j>`` in degree j).

    Labels are ``(i, word)``; ``word`` ends at the i-th cogenerator's vertex and
    sits in degree ``j - len(word)``.  Arrow actions delete the first arrow.
    """
    cutoff = DEFAULT_DEGREE if cutoff is None else cutoff
    cogenerators = list(cogenerators)
    L = A.max_word_length()
    if cogenerators:
        hi = max(j for _, j in cogenerators)
        lo = min(j for _, j in cogenerators) - L if L is not None else min(-cutoff, hi)
    else:
        lo, hi = 0, 0
    completeness = EXACT if L is not None else BELOW
    basis = {}
    for i, (x, j) in enumerate(cogenerators):
        for d in range(lo, j + 1):
            for w in A.words_into(x, j - d):
                basis.setdefault((w.source, d), []).append((i, w))

    def step(label, a):
        i, w = label
        if w.arrows and w.arrows[0] == a:
            rest = w.arrows[1:]
            return (i, Word(A.arrow(a).target, w.target, rest)), 1
        return None

    return monomial_module(A, basis, step, (lo, hi), completeness, name,
                           {"cogenerators": tuple(cogenerators)})


def simple_module(A, x, degree=0):
    return GradedModule(A, {(x, degree): (Word(x, x, ()),)}, {}, (degree, degree), EXACT,
                        "S(%s)" % x)


def projective_module(A, x, shift=0, cutoff=None):
    M = free_module(A, [(x, shift)], cutoff, "P(%s)" % x)
    M.basis = {k: tuple(w for _, w in v) for k, v in M.basis.items()}
    return M


def injective_module(A, x, shift=0, cutoff=None):
    M = cofree_module(A, [(x, shift)], cutoff, "I(%s)" % x)
    M.basis = {k: tuple(w for _, w in v) for k, v in M.basis.items()}
    return M


def arrow_ideal(A, a, cutoff=None):
    """L(a): words of P(source(a)) beginning with a (a submodule)."""
    P = projective_module(A, A.arrow(a).source, 0, cutoff)
    keep = {k: [w for w in labs if w.arrows[:1] == (a,)] for k, labs in P.basis.items()}

    def step(w, b):
        if (w.arrows[-1], b) in A.relations:
            return None
        return Word(w.source, A.arrow(b).target, w.arrows + (b,)), 1

    lo = 1
    hi = max(P.window[1], 1)
    return monomial_module(A, keep, step, (lo, hi), P.completeness, "L(%s)" % a)


def arrow_coideal(A, a, cutoff=None):
    """C(a): words of I(target(a)) ending with a.

    Spanned words ending with ``a`` are not closed under the action (deleting
    the last remaining arrow leaves the socle), so C(a) is realised as the
    quotient of I(target(a)) by the span of the other words; equivalently the
    image of I(target(a)) -> I(source(a))<-1> deleting ``a`` from the end.
    """
    I = injective_module(A, A.arrow(a).target, 0, cutoff)
    keep = {k: [w for w in labs if w.arrows[-1:] == (a,)] for k, labs in I.basis.items()}

    def step(w, b):
        if w.arrows[0] != b or len(w.arrows) == 1:
            return None
        return Word(A.arrow(b).target, w.target, w.arrows[1:]), 1

    return monomial_module(A, keep, step, (I.window[0], -1), I.completeness, "C(%s)" % a)


# --- shifts and sums ---------------------------------------------------------

def shift(M, i):
    """Grading shift: (M<i>)_n = M_{n-i}."""
    if i == 0:
        return M
    lo, hi = M.window
    N = GradedModule(M.algebra, {(v, d + i): labs for (v, d), labs in M.basis.items()},
                     {(a, d + i): m for (a, d), m in M.action.items()},
                     (lo + i, hi + i), M.completeness,
                     "%s<%d>" % (M.name, i) if M.name else "", dict(M.info))
    if "generators" in N.info:
        N.info["generators"] = tuple((x, j + i) for x, j in N.info["generators"])
    if "cogenerators" in N.info:
        N.info["cogenerators"] = tuple((x, j + i) for x, j in N.info["cogenerators"])
    return N


def direct_sum(*modules):
    if not modules:
        raise ModuleError("empty direct sum")
    A = modules[0].algebra
    basis, action = {}, {}
    for k, M in enumerate(modules):
        for key, labs in M.basis.items():
            basis.setdefault(key, []).extend((k, lab) for lab in labs)
    offsets = []
    for k, M in enumerate(modules):
        offsets.append({key: sum(modules[j].dim(*key) for j in range(k)) for key in basis})
    for arr in A.arrows:
        degs = {d for (v, d) in basis if v == arr.source}
        for d in degs:
            src, tgt = (arr.source, d), (arr.target, d + 1)
            if tgt not in basis:
                continue
            rows = [[ZERO] * len(basis[src]) for _ in basis[tgt]]
            for k, M in enumerate(modules):
                m = M.action.get((arr.name, d))
                if m is None:
                    continue
                ro, co = offsets[k][tgt], offsets[k][src]
                for r in range(m.nrows):
                    for c in range(m.ncols):
                        if m.rows[r][c]:
                            rows[ro + r][co + c] = m.rows[r][c]
            action[(arr.name, d)] = Matrix(rows, len(basis[tgt]), len(basis[src]))
    lo = min(M.window[0] for M in modules)
    hi = max(M.window[1] for M in modules)
    return GradedModule(A, basis, action, (lo, hi),
                        _combine_completeness(*(M.completeness for M in modules)),
                        " + ".join(M.name or "?" for M in modules))


# --- sub, quotient, kernel, cokernel -----------------------------------------

def submodule(M, vectors, name=""):
    """Submodule spanned blockwise by ``vectors[(v, d)]`` (must be action-closed).

    Returns ``(S, inclusion)``; the basis of S is the canonical echelon basis.
    """
    A = M.algebra
    basis_vecs = {}
    for key, vecs in vectors.items():
        n = M.dim(*key)
        b = span_basis(vecs, n)
        if b:
            basis_vecs[key] = b
    action = {}
    for (v, d), vecs in basis_vecs.items():
        for a in A.quiver.outgoing[v]:
            tgt = (A.arrow(a).target, d + 1)
            if not M.certified(d + 1) or d + 1 > M.window[1]:
                continue
            m = M.action.get((a, d))
            if m is None:
                continue
            images = [m.apply(x) for x in vecs]
            if not any(any(x) for x in images):
                continue
            if tgt not in basis_vecs:
                raise OrientationError("span at (%s, %d) not closed under %s" % (v, d, a))
            try:
                coords = solve_in_basis(basis_vecs[tgt], images, M.dim(*tgt))
            except ValueError:
                raise OrientationError("span at (%s, %d) not closed under %s" % (v, d, a))
            action[(a, d)] = Matrix.from_columns(coords, len(basis_vecs[tgt]))
    labels = {k: tuple("%s#%d" % (name or "s", i) for i in range(len(b)))
              for k, b in basis_vecs.items()}
    S = GradedModule(A, labels, action, M.window, M.completeness, name)
    S.info["vectors"] = basis_vecs
    inc = GradedMorphism(S, M, {k: Matrix.from_columns(b, M.dim(*k))
                                for k, b in basis_vecs.items()})
    return S, inc


def quotient(M, vectors, name=""):
    """Quotient of M by the submodule spanned blockwise by ``vectors``.

    Returns ``(Q, projection)``.  Basis labels of Q are the labels of M chosen
    (greedily, in basis order) to span a complement.
    """
    A = M.algebra
    proj, lifts = {}, {}
    for key, labs in M.basis.items():
        n = len(labs)
        p, comp = quotient_projection(vectors.get(key, []), n)
        proj[key] = p
        lifts[key] = comp
    basis = {k: tuple(M.basis[k][j] for j in lifts[k]) for k in M.basis}
    action = {}
    for (v, d), comp in lifts.items():
        if not comp:
            continue
        for a in A.quiver.outgoing[v]:
            tgt = (A.arrow(a).target, d + 1)
            if tgt not in proj or not lifts[tgt]:
                continue
            m = M.act(a, d)
            cols = [proj[tgt].apply(m.column(j)) for j in comp]
            action[(a, d)] = Matrix.from_columns(cols, len(lifts[tgt]))
    Q = GradedModule(A, basis, action, M.window, M.completeness, name)
    pi = GradedMorphism(M, Q, {k: p for k, p in proj.items() if p.nrows})
    return Q, pi


def kernel(f, name="ker"):
    """Kernel with its inclusion into the source."""
    vecs = {key: nullspace(f.block(*key)) for key in f.source.basis}
    return submodule(f.source, vecs, name)


def image(f, name="im"):
    """Image as a submodule of the target, with its inclusion."""
    vecs = {}
    for key in f.source.basis:
        m = f.block(*key)
        if m.nrows:
            vecs[key] = [m.column(j) for j in range(m.ncols)]
    return submodule(f.target, vecs, name)


def cokernel(f, name="coker"):
    vecs = {}
    for key in f.source.basis:
        m = f.block(*key)
        if m.nrows:
            vecs[key] = [m.column(j) for j in range(m.ncols)]
    return quotient(f.target, vecs, name)


def is_isomorphism(f):
    """Whether a morphism is bijective in every block (and commutes with actions)."""
    keys = set(f.source.basis) | set(f.target.basis)
    for k in keys:
        m = f.block(*k)
        if m.nrows != m.ncols or rank(m) != m.nrows:
            return False
    return f.commutes() is None


# --- truncation --------------------------------------------------------------

@dataclass
class Truncation:
    """Short exact sequence 0 -> sub -> M -> quotient -> 0 cut at a degree."""
    sub: GradedModule
    quotient: GradedModule
    cut: int
    mode: str
    orientation: str   # which degrees form the submodule: "upper"


def _degree_part(M, keep, name):
    basis = {k: v for k, v in M.basis.items() if keep(k[1])}
    action = {k: m for k, m in M.action.items()
              if keep(k[1]) and keep(k[1] + 1)}
    degs = [d for (_, d) in basis] or [M.window[0]]
    lo = max(M.window[0], min(degs)) if basis else M.window[0]
    hi = min(M.window[1], max(degs)) if basis else M.window[0]
    completeness = M.completeness
    return GradedModule(M.algebra, basis, action, (lo, hi), completeness, name)


def truncate(M, r, mode="le"):
    """Cut M at degree r.

    ``mode="le"`` gives ``(tau_{>r} M, tau_{<=r} M)``; ``mode="ge"`` gives
    ``(tau_{>=r} M, tau_{<r} M)``.  The first piece is always the submodule:
    arrow actions raise degree, so the upper degrees are action-closed.
    """
    if mode == "le":
        upper = lambda d: d > r
        sub_name, quo_name = "tau>%d" % r, "tau<=%d" % r
    elif mode == "ge":
        upper = lambda d: d >= r
        sub_name, quo_name = "tau>=%d" % r, "tau<%d" % r
    else:
        raise ValueError("mode must be 'le' or 'ge'")
    sub = _degree_part(M, upper, sub_name)
    quo = _degree_part(M, lambda d: not upper(d), quo_name)
    # orientation check: nothing in the upper part maps into the lower part
    for (a, d), m in M.action.items():
        if upper(d) and not upper(d + 1) and not m.is_zero():
            raise OrientationError("upper part not closed under %s at degree %d" % (a, d))
    if sub.completeness != EXACT and mode == "le":
        # the finite upper part of a right-bounded module is exact
        sub.completeness = EXACT if M.completeness == BELOW else sub.completeness
    if quo.completeness != EXACT and M.completeness == ABOVE:
        quo.completeness = EXACT
    return Truncation(sub, quo, r, mode, "upper")


# --- numerical data ----------------------------------------------------------

@dataclass
class HilbertData:
    coefficients: dict      # (vertex, degree) -> dim
    bound: int

    def total(self):
        out = {}
        for (v, d), n in self.coefficients.items():
            out[d] = out.get(d, 0) + n
        return dict(sorted(out.items()))

    def per_vertex(self, v):
        return {d: n for (x, d), n in sorted(self.coefficients.items(), key=lambda k: k[0][1])
                if x == v}


def hilbert_truncated(M, D):
    """Graded dimensions with |degree| <= D."""
    lo, hi = M.window
    if M.completeness in (ABOVE, BOTH) and hi < D:
        raise ModuleError("window %s does not reach degree %d" % (M.window, D))
    if M.completeness in (BELOW, BOTH) and lo > -D:
        raise ModuleError("window %s does not reach degree %d" % (M.window, -D))
    coeffs = {k: n for k, n in M.dims().items() if abs(k[1]) <= D}
    return HilbertData(coeffs, D)


def radical_vectors(M, v, d):
    """Spanning vectors of (rad M)_{v,d}: images of incoming arrow actions."""
    vecs = []
    for a in M.algebra.quiver.incoming[v]:
        m = M.act(a, d - 1)
        vecs.extend(m.column(j) for j in range(m.ncols))
    return vecs


def socle_vectors(M, v, d):
    """Basis of the joint kernel of all outgoing arrow actions at (v, d)."""
    n = M.dim(v, d)
    rows = []
    for a in M.algebra.quiver.outgoing[v]:
        rows.extend(M.act(a, d).rows)
    if not rows:
        return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]
    return nullspace(Matrix(rows, len(rows), n))


def top_and_socle(M):
    """Graded dimension vectors of M / rad M and of soc M."""
    top, soc = {}, {}
    for (v, d) in M.blocks():
        n = M.dim(v, d)
        rad = radical_vectors(M, v, d)
        t = n - (len(independent_subset(rad, n)) if rad else 0)
        if t:
            top[(v, d)] = t
        s = len(socle_vectors(M, v, d))
        if s:
            soc[(v, d)] = s
    return top, soc


# --- duality -----------------------------------------------------------------

def dual_module(M, opposite):
    """Vector-space dual D M as a module over the opposite algebra.

    (D M)_{-d}(x) = M_d(x)^*, and the arrow a acts on D M by the transpose
    of M(a), now running from degree -(d+1) to -d.
    """
    basis = {(v, -d): labs for (v, d), labs in M.basis.items()}
    action = {(a, -d - 1): m.transpose() for (a, d), m in M.action.items()}
    lo, hi = M.window
    flip = {EXACT: EXACT, ABOVE: BELOW, BELOW: ABOVE, BOTH: BOTH}[M.completeness]
    return GradedModule(opposite, basis, action, (-hi, -lo), flip,
                        "D(%s)" % M.name if M.name else "")


def cyclic_submodule_dims(M, v, d, vec, limit=None):
    """Dimension vector of the submodule generated by one homogeneous element."""
    A = M.algebra
    hi = M.window[1] if limit is None else limit
    frontier = {(v, d): [vec]}
    dims = {}
    while frontier:
        nxt = {}
        for (x, e), vecs in frontier.items():
            b = span_basis(vecs, M.dim(x, e))
            if not b:
                continue
            dims[(x, e)] = len(b)
            if e + 1 > hi:
                continue
            for a in A.quiver.outgoing[x]:
                m = M.act(a, e)
                imgs = [m.apply(y) for y in b]
                imgs = [y for y in imgs if any(y)]
                if imgs:
                    nxt.setdefault((A.arrow(a).target, e + 1), []).extend(imgs)
        frontier = nxt
    return dims
