"""The Koszul functor K, the coKoszul functor G and the totalization F.

For a module M over the dual algebra, ``K(M)^n`` is the sum of
``P_x<-n> (x) M_n(x)`` over vertices; the entry from the block of a basis
element m of ``M_n(x)`` to a basis element m' of ``M_{n+1}(y)`` is the sum
over arrows ``alpha: y -> x`` of ``alpha`` (prepended) times
``M(alpha_op)[m', m]``.  Dually ``G(N)^n`` is the sum of
``I!_x<-n> (x) N_n(x)``, the entry for ``alpha: x -> y`` being the
deletion of ``alpha_op`` times ``N(alpha)``.
"""

from dataclasses import dataclass, field

from .algebra import dual_arrow_name, koszul_dual
from .complexes import (FreeComplex, ModuleComplex, DoubleComplex, PROJECTIVE, INJECTIVE,
                        total_complex)
from .linalg import Matrix, ZERO, nullspace, rank
from .modules import (ABOVE, BELOW, BOTH, EXACT, DEFAULT_DEGREE, GradedModule,
                      arrow_coideal, arrow_ideal, injective_module, projective_module,
                      simple_module)


class FunctorError(ValueError):
    pass


def _check_dual_pair(A, B):
    names = {a.name for a in B.arrows}
    for a in A.arrows:
        if dual_arrow_name(a.name) not in names:
            raise FunctorError("module algebra is not the dual of %s (missing %s)"
                               % ("the given algebra", dual_arrow_name(a.name)))


def _generators(M):
    """Per degree n, the list of (vertex, basis index) in vertex order."""
    gens = {}
    for n in sorted({d for (_, d) in M.basis}):
        for v in M.algebra.vertices:
            for k in range(M.dim(v, n)):
                gens.setdefault(n, []).append((v, k))
    return gens


def _position(gens):
    return {g: i for i, g in enumerate(gens)}


def koszul_K(A, M, cutoff=None):
    """K(M) as a linear complex of projectives over A; M lives over koszul_dual(A).

    Strand bounds: internal degrees ``j <= -lo`` are complete when M is
    truncated below at ``lo``; ``cutoff`` bounds expansion when A is infinite.
    """
    _check_dual_pair(A, M.algebra)
    if M.completeness in (ABOVE, BOTH):
        raise FunctorError("K needs a right-bounded module")
    cutoff = DEFAULT_DEGREE if cutoff is None else cutoff
    gens = _generators(M)
    pos = {n: _position(g) for n, g in gens.items()}
    terms = {n: tuple((v, -n) for v, _ in g) for n, g in gens.items()}
    diffs = {}
    for n, g in gens.items():
        if n + 1 not in gens:
            continue
        d = {}
        for c, (x, m) in enumerate(g):
            for alpha in A.quiver.incoming[x]:
                y = A.arrow(alpha).source
                mat = M.act(dual_arrow_name(alpha), n)
                for mp in range(M.dim(y, n + 1)):
                    coeff = mat.rows[mp][m]
                    if coeff:
                        r = pos[n + 1][(y, mp)]
                        d.setdefault((r, c), {})[(alpha,)] = coeff
        diffs[n] = d
    hi = None
    if M.completeness in (BELOW, BOTH):
        hi = -M.window[0]
    if A.max_word_length() is None:
        hi = cutoff if hi is None else min(hi, cutoff)
    prov = {n: list(g) for n, g in gens.items()}
    return FreeComplex(A, PROJECTIVE, terms, diffs, (None, hi), "K(%s)" % M.name, prov)


def cokoszul_G(A, N, cutoff=None):
    """G(N) as a colinear complex of injectives over koszul_dual(A); N lives over A."""
    if N.algebra is not A and N.algebra != A:
        raise FunctorError("module is not over the given algebra")
    if N.completeness in (BELOW, BOTH):
        raise FunctorError("G needs a left-bounded module")
    cutoff = DEFAULT_DEGREE if cutoff is None else cutoff
    B = koszul_dual(A)
    gens = _generators(N)
    pos = {n: _position(g) for n, g in gens.items()}
    terms = {n: tuple((v, -n) for v, _ in g) for n, g in gens.items()}
    diffs = {}
    for n, g in gens.items():
        if n + 1 not in gens:
            continue
        d = {}
        for c, (x, m) in enumerate(g):
            for alpha in A.quiver.outgoing[x]:
                y = A.arrow(alpha).target
                mat = N.act(alpha, n)
                for mp in range(N.dim(y, n + 1)):
                    coeff = mat.rows[mp][m]
                    if coeff:
                        r = pos[n + 1][(y, mp)]
                        d.setdefault((r, c), {})[(dual_arrow_name(alpha),)] = coeff
        diffs[n] = d
    lo = None
    if N.completeness in (ABOVE, BOTH):
        lo = -N.window[1]
    if B.max_word_length() is None:
        lo = -cutoff if lo is None else max(lo, -cutoff)
    prov = {n: list(g) for n, g in gens.items()}
    return FreeComplex(B, INJECTIVE, terms, diffs, (lo, None), "G(%s)" % N.name, prov)


def double_complex_of(A, X, cutoff=None):
    """The double complex B^{q,p} = K(X^p)^q of a complex of dual-side modules."""
    cutoff = DEFAULT_DEGREE if cutoff is None else cutoff
    Ks = {p: koszul_K(A, X.term(p), cutoff) for p in X.degrees()}
    gens = {p: _generators(X.term(p)) for p in X.degrees()}
    terms, d1, d2, prov = {}, {}, {}, {}
    for p, K in Ks.items():
        for q, g in K.terms.items():
            terms[(q, p)] = g
            prov[(q, p)] = [(p, v, k) for v, k in gens[p][q]]
        for q, d in K.diffs.items():
            d2[(q, p)] = d
    for p in X.degrees():
        if p + 1 not in Ks:
            continue
        f = X.diff(p)
        for q, g in gens[p].items():
            tgt = gens[p + 1].get(q)
            if not tgt:
                continue
            tpos = _position(tgt)
            d = {}
            for c, (x, m) in enumerate(g):
                blk = f.block(x, q)
                for mp in range(blk.nrows):
                    coeff = blk.rows[mp][m]
                    if coeff:
                        d[(tpos[(x, mp)], c)] = {(): coeff}
            d1[(q, p)] = d
    his = [K.strands[1] for K in Ks.values() if K.strands[1] is not None]
    strands = (None, min(his) if his else None)
    B = DoubleComplex(A, PROJECTIVE, terms, d1, d2, strands)
    B.provenance = prov
    return B


def F_on_complex(A, X, cutoff=None):
    """Tot of the double complex K(X^p)^q with d = d1 + (-1)^p d2."""
    B = double_complex_of(A, X, cutoff)
    T = total_complex(B)
    prov = {}
    for (q, p) in sorted(B.terms, key=lambda k: (k[1], k[0])):
        prov.setdefault(q + p, []).extend(B.provenance[(q, p)])
    T.provenance = prov
    T.name = "F(X)"
    return T


def single_term_complex(M, n=0):
    return ModuleComplex(M.algebra, {n: M}, {})


# --- augmentations -----------------------------------------------------------

@dataclass
class Check:
    name: str
    ok: bool
    witness: str = ""

    def line(self):
        return "%s %s%s" % ("PASS" if self.ok else "FAIL", self.name,
                            (": " + self.witness) if (self.witness and not self.ok) else "")


@dataclass
class Report:
    title: str
    checks: list = field(default_factory=list)
    data: dict = field(default_factory=dict)

    @property
    def ok(self):
        return all(c.ok for c in self.checks)

    def add(self, name, ok, witness=""):
        self.checks.append(Check(name, bool(ok), witness))
        return ok

    def lines(self):
        out = ["%s: %s" % (self.title, "PASS" if self.ok else "FAIL")]
        out.extend("  " + c.line() for c in self.checks)
        return out


def _strand_ok(X, d):
    lo, hi = X.strands
    return (lo is None or d >= lo) and (hi is None or d <= hi)


def augmentation_check(X, n0, N, images):
    """Whether ``eps: X^{n0} -> N`` (projective X) induces H^{n0}(X) = N, H^n(X) = 0 otherwise.

    ``images[i]`` is the image in N of the i-th generator of X^{n0}, given as
    ``(vertex, degree, vector)``.  Checked blockwise within the strand bounds;
    returns (ok, witness).
    """
    A = X.algebra
    gens = X.term(n0)
    for i, (x, j) in enumerate(gens):
        if images[i][0] != x or images[i][1] != j:
            return False, "generator %d maps to the wrong block" % i
    degrees = set(X.block_degrees(n0)) | {d for (_, d) in N.basis}
    for d in sorted(degrees):
        if not _strand_ok(X, d) or not N.certified(d):
            continue
        for v in A.vertices:
            labels = X.block_basis(n0, v, d)
            nd = N.dim(v, d)
            cols = []
            for (i, p) in labels:
                _, jd, vec = images[i]
                cols.append(N.apply_word(p, jd, vec) if nd else [])
            eps = Matrix.from_columns(cols, nd)
            if rank(eps) != nd:
                return False, "not surjective at (%s, %d)" % (v, d)
            dout = X.block_matrix(n0, v, d) if X.term(n0 + 1) else Matrix.zeros(0, len(labels))
            z = nullspace(dout)
            if rank(Matrix.from_columns([eps.apply(c) for c in z], nd)) != nd:
                return False, "cycles do not surject at (%s, %d)" % (v, d)
            if X.term(n0 - 1):
                din = X.block_matrix(n0 - 1, v, d)
                if not (eps @ din).is_zero():
                    return False, "eps o d != 0 at (%s, %d)" % (v, d)
                r_in = rank(din)
            else:
                r_in = 0
            if len(z) - r_in != nd:
                return False, "H^%d has the wrong dimension at (%s, %d)" % (n0, v, d)
    for n in X.degrees():
        if n == n0:
            continue
        h = {k: v for k, v in X.cohomology_dims(n).items()}
        if h:
            key = min(h, key=lambda k: (k[1], k[0]))
            return False, "H^%d != 0 at (%s, %d)" % (n, key[0], key[1])
    return True, ""


def coaugmentation_check(X, n0, N, functionals):
    """Injective analogue: ``eta: N -> X^{n0}`` given by, for each cogenerator i,
    a functional on ``N`` at the socle block ``(x_i, j_i)`` (a list of coefficients).

    Verifies that eta is injective onto the cycles modulo boundaries, i.e.
    H^{n0}(X) = N and H^n(X) = 0 otherwise, blockwise within the strand bounds.
    """
    A = X.algebra
    gens = X.term(n0)
    degrees = set(X.block_degrees(n0)) | {d for (_, d) in N.basis}
    for d in sorted(degrees):
        if not _strand_ok(X, d) or not N.certified(d):
            continue
        for v in A.vertices:
            labels = X.block_basis(n0, v, d)
            nd = N.dim(v, d)
            rows = []
            for (i, q) in labels:
                x, j = gens[i]
                phi = functionals[i]
                # component of eta(n) at label (i, q) is phi(q . n)
                m = N.act_word(q, d)
                rows.append([sum((phi[k] * m.rows[k][c] for k in range(m.nrows)), ZERO)
                             for c in range(nd)])
            eta = Matrix(rows, len(labels), nd)
            if rank(eta) != nd:
                return False, "not injective at (%s, %d)" % (v, d)
            if X.term(n0 + 1):
                dout = X.block_matrix(n0, v, d)
                if not (dout @ eta).is_zero():
                    return False, "d o eta != 0 at (%s, %d)" % (v, d)
                r_out = rank(dout)
            else:
                r_out = 0
            r_in = rank(X.block_matrix(n0 - 1, v, d)) if X.term(n0 - 1) else 0
            if len(labels) - r_out != nd + r_in:
                return False, "H^%d has the wrong dimension at (%s, %d)" % (n0, v, d)
            if r_in:
                both = Matrix([eta.rows[k] + X.block_matrix(n0 - 1, v, d).rows[k]
                               for k in range(len(labels))])
                if rank(both) != nd + r_in:
                    return False, "boundaries meet eta at (%s, %d)" % (v, d)
    for n in X.degrees():
        if n == n0:
            continue
        h = X.cohomology_dims(n)
        if h:
            key = min(h, key=lambda k: (k[1], k[0]))
            return False, "H^%d != 0 at (%s, %d)" % (n, key[0], key[1])
    return True, ""


def _unit(n, k):
    return [1 if i == k else 0 for i in range(n)]


# --- certificates ------------------------------------------------------------

def adaptive_depth(A, budget=700, cap=None):
    """Largest strand depth whose dual-side word count (all vertices, lengths <= depth)
    stays within ``budget``; at least 1."""
    cap = DEFAULT_DEGREE if cap is None else cap
    B = koszul_dual(A)
    total = 0
    for d in range(cap + 1):
        total += sum(len(B.words_from(v, d)) for v in B.vertices)
        if total > budget:
            return max(d - 1, 1)
    return cap


def koszul_certificate(A, depth=None):
    """Executable form of Koszulness for every vertex.

    Projective side: K(I!(x)) is linear, minimal, a complex, exact off degree 0
    and has H^0 = S(x) (via the augmentation to S(x)), within strands
    ``j <= depth``.  Dual side: G(P(x)) is colinear, minimal, and coresolves
    S!(x) within strands ``j >= -depth``.
    """
    depth = DEFAULT_DEGREE if depth is None else depth
    B = koszul_dual(A)
    rep = Report("koszul-certificate")
    pds = {}
    for x in A.vertices:
        I = injective_module(B, x, 0, depth)
        X = koszul_K(A, I, depth)
        rep.add("K(I!(%s)) is a complex" % x, X.check() is None, str(X.check()))
        rep.add("K(I!(%s)) linear" % x, X.is_linear())
        rep.add("K(I!(%s)) minimal" % x, X.is_minimal())
        S = simple_module(A, x)
        ok, wit = augmentation_check(X, 0, S, [(x, 0, [1])])
        rep.add("K(I!(%s)) resolves S(%s)" % (x, x), ok, wit)
        pds[x] = -min(X.degrees()) if I.completeness == EXACT else None
        P = projective_module(A, x, 0, depth)
        Y = cokoszul_G(A, P, depth)
        rep.add("G(P(%s)) is a complex" % x, Y.check() is None, str(Y.check()))
        rep.add("G(P(%s)) colinear" % x, Y.is_linear())
        rep.add("G(P(%s)) minimal" % x, Y.is_minimal())
        Sd = simple_module(B, x)
        ok, wit = coaugmentation_check(Y, 0, Sd, [[1]])
        rep.add("G(P(%s)) coresolves S!(%s)" % (x, x), ok, wit)
    rep.data["pd"] = pds
    rep.data["depth"] = depth
    return rep


def arrow_checks(A, a, depth=None):
    """Linearity of the arrow ideal L(a) and colinearity of C(a_op), both directions.

    H(K(C(a_op))) is L(a) in degree -1 via ``gen -> a``; G(L(a)) coresolves
    C(a_op) in degree 1 via deletion of a_op.
    """
    depth = DEFAULT_DEGREE if depth is None else depth
    B = koszul_dual(A)
    ao = dual_arrow_name(a)
    arr = A.arrow(a)
    rep = Report("arrow %s" % a)
    C = arrow_coideal(B, ao, depth)
    X = koszul_K(A, C, depth)
    rep.add("K(C(%s)) is a linear complex" % ao, X.check() is None and X.is_linear())
    L = arrow_ideal(A, a, depth)
    # K(C)^{-1} has the single generator (t(a), 1) coming from the word a_op
    gens = X.term(-1)
    ok = len(gens) == 1 and gens[0] == (arr.target, 1)
    if ok:
        ok, wit = augmentation_check(X, -1, L, [(arr.target, 1, [1])])
    else:
        wit = "unexpected term in degree -1: %s" % (gens,)
    rep.add("H(K(C(%s))) = L(%s) in degree -1" % (ao, a), ok, wit)
    Y = cokoszul_G(A, L, depth)
    rep.add("G(L(%s)) is a colinear minimal complex" % a,
            Y.check() is None and Y.is_linear() and Y.is_minimal())
    gens = Y.term(1)
    ok = len(gens) == 1 and gens[0] == (arr.target, -1)
    if ok:
        # cogenerator socle at (t(a), -1) is the word a_op of C, which sits in that block
        lab = C.labels(arr.target, -1)
        ok, wit = coaugmentation_check(Y, 1, C, [[1 if len(w.arrows) == 1 else 0 for w in lab]])
    else:
        wit = "unexpected term in degree 1: %s" % (gens,)
    rep.add("G(L(%s)) coresolves C(%s)" % (a, ao), ok, wit)
    return rep


def roundtrip_check(A, N, depth=None):
    """F(G(N)) has cohomology N in degree 0 via the augmentation ``w (x) n -> N(w) n``.

    The component coming from column p carries the sign (-1)^{p(p+1)/2}, which
    absorbs the (-1)^p of the totalization.
    """
    depth = DEFAULT_DEGREE if depth is None else depth
    rep = Report("roundtrip %s" % (N.name or "N"))
    G = cokoszul_G(A, N, depth)
    Gx = G.expand(depth)
    rep.add("G(N) expands to a complex", Gx.check() is None, str(Gx.check()))
    T = F_on_complex(A, Gx, depth)
    rep.add("F(G(N)) is a complex", T.check() is None, str(T.check()))
    # Tot^0 generators come from the socles of G(N)^p, i.e. basis elements of N_p
    images = []
    ok = True
    for (p, v, k) in T.provenance.get(0, []):
        label = Gx.term(p).labels(v, -p)[k]
        i, w = label
        if w.arrows:
            ok = False
            break
        x, m = G.provenance[p][i]
        sign = -1 if (p * (p + 1) // 2) % 2 else 1
        images.append((x, p, [sign * c for c in _unit(N.dim(x, p), m)]))
    if not ok:
        rep.add("F(G(N)) ~ N", False, "Tot^0 has a non-socle generator")
        return rep
    T.strands = (T.strands[0], depth if T.strands[1] is None else min(T.strands[1], depth))
    ok, wit = augmentation_check(T, 0, N, images)
    rep.add("F(G(N)) ~ N", ok, wit)
    return rep


# --- colinear truncation -----------------------------------------------------

@dataclass
class TruncationResult:
    r: object                 # cut degree, or None for the zero module
    finite: GradedModule      # tau_{>r} M
    tail: GradedModule        # tau_{<=r} M
    cohomology: list          # rows (n, vertex, degree, dim) of K(M)
    certificate: Report
    strands: tuple


def find_linear_truncation(A, M, steps=6, depth=None):
    """Split a finitely copresented dual-side module as 0 -> finite -> M -> colinear tail -> 0.

    With K(M)^n built from M_n, the brutal truncation of K(M) at n <= r is
    K(tau_{<=r} M), so cutting at the lowest degree r carrying cohomology
    leaves a tail whose K-complex has cohomology in the single degree r.
    The tail is certified by its minimal injective coresolution: step s is
    cogenerated in internal degree r - s.
    """
    from .modules import truncate
    from .resolution import minimal_injective_coresolution
    depth = DEFAULT_DEGREE if depth is None else depth
    X = koszul_K(A, M, depth)
    table = X.cohomology_table()
    rep = Report("colinear truncation")
    if not table:
        if M.is_zero():
            rep.add("zero module", True)
            return TruncationResult(None, M, M, table, rep, X.strands)
        rep.add("K(M) has cohomology", False, "no cohomology within the window")
        return TruncationResult(None, M, M, table, rep, X.strands)
    r = min(row[0] for row in table)
    cut = truncate(M, r, "le")
    finite, tail = cut.sub, cut.quotient
    rep.add("finite part is finite-dimensional", finite.completeness == EXACT,
            finite.completeness)
    KT = koszul_K(A, tail, depth)
    others = [row for row in KT.cohomology_table() if row[0] != r]
    rep.add("K(tail) has cohomology in degree %d only" % r, not others,
            str(others[:1]))
    co = minimal_injective_coresolution(tail, steps, depth)
    bad = [(s, d, v) for (s, d, v) in co.cobetti.entries if d != r - s]
    rep.add("tail coresolution is colinear after shift by %d" % (-r), not bad, str(bad[:1]))
    return TruncationResult(r, finite, tail, table, rep, X.strands)


# --- grading shift compatibility ---------------------------------------------

def shift_tables(A, X, i, depth=None):
    """Cohomology tables of F(X<i>), F(X)<-i>[-i] and F(X)<i>[-i], on a common strand range.

    The first two agree under the conventions used here; the third is the
    variant with the internal shift of the same sign.
    """
    from .complexes import grade_shift_complex, shift_complex
    depth = DEFAULT_DEGREE if depth is None else depth
    FX = F_on_complex(A, X, depth)
    lhs = F_on_complex(A, grade_shift_complex(X, i), depth)
    rhs = shift_complex(grade_shift_complex(FX, -i), -i)
    lit = shift_complex(grade_shift_complex(FX, i), -i)
    his = [c.strands[1] for c in (lhs, rhs, lit) if c.strands[1] is not None]
    hi = min(his) if his else None
    for c in (lhs, rhs, lit):
        c.strands = (c.strands[0], hi)

    def table(c):
        return [row for row in c.cohomology_table() if hi is None or row[2] <= hi]
    return table(lhs), table(rhs), table(lit)
