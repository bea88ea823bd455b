"""Exact rational generating functions over integer polynomials.

Polynomials are tuples of ints, index = degree, no trailing zeros; the zero
polynomial is ``()``.  A :class:`RationalSeries` is ``t^val * num / den``
in canonical form: num and den coprime with no factor t, gcd of all
coefficients 1, and ``den(0) > 0``.
"""

import os
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .algebra import count_paths, koszul_dual, opposite_algebra
from .modules import BELOW, EXACT, dual_module
from .resolution import minimal_projective_resolution, syzygy_decomposition

DEFAULT_ORDER = int(os.environ.get("KOSZULKIT_ORDER", "30"))


# --- integer polynomials -----------------------------------------------------

def p_trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def p_add(a, b):
    n = max(len(a), len(b))
    return p_trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def p_neg(a):
    return tuple(-x for x in a)


def p_sub(a, b):
    return p_add(a, p_neg(b))


def p_scale(a, c):
    return p_trim([c * x for x in a])


def p_mul(a, b):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return p_trim(out)


def p_shift(a, k):
    """Multiply by t^k (k >= 0)."""
    return tuple([0] * k + list(a)) if a else ()


def p_content(a):
    g = 0
    for x in a:
        g = gcd(g, x)
    return g


def p_primitive(a):
    c = p_content(a)
    if c == 0:
        return ()
    if a[-1] < 0:
        c = -c
    return tuple(x // c for x in a)


def p_divexact(a, b):
    """Exact quotient a / b over the integers (ValueError if not exact)."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    q = [0] * max(len(a) - len(b) + 1, 0)
    lb = b[-1]
    for k in range(len(a) - len(b), -1, -1):
        c = a[k + len(b) - 1]
        if c % lb:
            raise ValueError("inexact polynomial division")
        c //= lb
        q[k] = c
        if c:
            for j, y in enumerate(b):
                a[k + j] -= c * y
    if any(a):
        raise ValueError("inexact polynomial division")
    return p_trim(q)


def p_prem(a, b):
    """Pseudo-remainder of a by b."""
    r = list(a)
    lb, db = b[-1], len(b) - 1
    while len(r) - 1 >= db and r:
        c, k = r[-1], len(r) - 1 - db
        r = [lb * x for x in r]
        for j, y in enumerate(b):
            r[k + j] -= c * y
        r = list(p_trim(r))
    return tuple(r)


def p_gcd(a, b):
    """Primitive gcd with positive leading coefficient."""
    a, b = p_primitive(a), p_primitive(b)
    while b:
        a, b = b, p_primitive(p_prem(a, b))
    return a


def p_eval_low(a):
    return a[0] if a else 0


def p_str(p, var="t"):
    if not p:
        return "0"
    terms = []
    for k, c in enumerate(p):
        if not c:
            continue
        mono = "" if k == 0 else (var if k == 1 else "%s^%d" % (var, k))
        if k == 0:
            body = str(abs(c))
        elif abs(c) == 1:
            body = mono
        else:
            body = "%d*%s" % (abs(c), mono)
        if not terms:
            terms.append(("-" if c < 0 else "") + body)
        else:
            terms.append(("- " if c < 0 else "+ ") + body)
    return " ".join(terms)


# --- rational series ---------------------------------------------------------

@dataclass(frozen=True)
class RationalSeries:
    num: tuple
    den: tuple = (1,)
    val: int = 0
    var: str = "t"

    def __post_init__(self):
        num, den, val = p_trim(self.num), p_trim(self.den), self.val
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            object.__setattr__(self, "num", ())
            object.__setattr__(self, "den", (1,))
            object.__setattr__(self, "val", 0)
            return
        while num[0] == 0:
            num, val = num[1:], val + 1
        while den[0] == 0:
            den, val = den[1:], val - 1
        g = p_gcd(num, den)
        if len(g) > 1:
            num, den = p_divexact(num, g), p_divexact(den, g)
        c = gcd(p_content(num), p_content(den))
        if den[0] < 0:
            c = -c
        num = tuple(x // c for x in num)
        den = tuple(x // c for x in den)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)
        object.__setattr__(self, "val", val)

    @classmethod
    def poly(cls, coeffs, var="t"):
        return cls(tuple(coeffs), (1,), 0, var)

    @classmethod
    def from_dict(cls, coeffs, var="t"):
        """Laurent polynomial from {degree: coefficient}."""
        coeffs = {k: v for k, v in coeffs.items() if v}
        if not coeffs:
            return cls((), (1,), 0, var)
        lo = min(coeffs)
        hi = max(coeffs)
        return cls(tuple(coeffs.get(k, 0) for k in range(lo, hi + 1)), (1,), lo, var)

    def _align(self, other):
        if self.var != other.var:
            raise ValueError("series in different variables")
        m = min(self.val, other.val)
        return m, p_shift(self.num, self.val - m), p_shift(other.num, other.val - m)

    def __add__(self, other):
        m, a, b = self._align(other)
        return RationalSeries(p_add(p_mul(a, other.den), p_mul(b, self.den)),
                              p_mul(self.den, other.den), m, self.var)

    def __neg__(self):
        return RationalSeries(p_neg(self.num), self.den, self.val, self.var)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if self.var != other.var:
            raise ValueError("series in different variables")
        return RationalSeries(p_mul(self.num, other.num), p_mul(self.den, other.den),
                              self.val + other.val, self.var)

    def shift(self, k):
        """Multiply by t^k."""
        return RationalSeries(self.num, self.den, self.val + k, self.var)

    def is_zero(self):
        return not self.num

    def is_polynomial(self):
        return self.den == (1,)

    def coefficients(self, D):
        """Coefficients of t^k for k from min(val, 0) to D, as a dict of ints or Fractions."""
        out = {}
        start = min(self.val, 0)
        n = D - self.val
        if n < 0:
            return {k: 0 for k in range(start, D + 1)}
        d0 = self.den[0]
        c = []
        for k in range(n + 1):
            s = Fraction(self.num[k] if k < len(self.num) else 0)
            for j in range(1, min(k, len(self.den) - 1) + 1):
                s -= self.den[j] * c[k - j]
            c.append(s / d0)
        for k in range(start, D + 1):
            i = k - self.val
            x = c[i] if 0 <= i < len(c) else Fraction(0)
            out[k] = int(x) if x.denominator == 1 else x
        return out

    def truncate(self, D):
        """Coefficient list for degrees 0..D (negative-degree terms must vanish)."""
        co = self.coefficients(D)
        return [co[k] for k in range(0, D + 1)]

    def __str__(self):
        num = p_str(self.num, self.var)
        den = p_str(self.den, self.var)
        if self.val > 0 and self.num:
            num = p_str(p_shift(self.num, self.val), self.var)
        elif self.val < 0:
            return "%s^%d*(%s)/(%s)" % (self.var, self.val, num, den)
        return "(%s)/(%s)" % (num, den)


ONE_SERIES = RationalSeries((1,))
ZERO_SERIES = RationalSeries(())


def series_ops(a, b, op, k=0, D=None):
    """Dispatch for +, -, *, shift, truncate and equality."""
    if op == "+":
        return a + b
    if op == "-":
        return a - b
    if op in ("*", "x"):
        return a * b
    if op == "shift":
        return a.shift(k)
    if op == "truncate":
        return a.truncate(D)
    if op in ("=", "equal?"):
        return a == b
    raise ValueError("unknown series operation %r" % op)


# --- fraction-free resolvents -------------------------------------------------

def resolvent_solve(adj, rhs):
    """Solve (I - t*adj) Y = rhs over Z[t] without fractions.

    ``adj`` is a square 0/1 (or integer) matrix, ``rhs`` a list of rows of
    integer polynomials.  Returns ``(det, N)`` with Y = N / det.  Bareiss
    Gauss-Jordan: every division is exact and no pivoting is needed because
    the leading principal minors of I - t*adj have constant term 1.
    """
    n = len(adj)
    m = len(rhs[0]) if rhs else 0
    M = []
    for i in range(n):
        row = []
        for j in range(n):
            row.append(p_trim(((1 if i == j else 0), -adj[i][j])))
        row.extend(p_trim(x) for x in rhs[i])
        M.append(row)
    prev = (1,)
    for k in range(n):
        piv = M[k][k]
        for i in range(n):
            if i == k:
                continue
            f = M[i][k]
            row_i, row_k = M[i], M[k]
            for j in range(n + m):
                if j == k:
                    continue
                v = p_sub(p_mul(piv, row_i[j]), p_mul(f, row_k[j]))
                row_i[j] = p_divexact(v, prev) if v else ()
            row_i[k] = ()
        prev = piv
    det = prev if n else (1,)
    return det, [[M[i][n + j] for j in range(m)] for i in range(n)]


@dataclass
class VertexMatrixSeries:
    vertices: tuple
    entries: dict       # (x, y) -> RationalSeries

    def __getitem__(self, key):
        return self.entries[key]

    def total(self):
        s = ZERO_SERIES
        for x in self.vertices:
            for y in self.vertices:
                s = s + self.entries[(x, y)]
        return s

    def row(self, x):
        return {y: self.entries[(x, y)] for y in self.vertices}


def _incidence(A, end):
    vidx = A.quiver.vertex_index
    out = []
    for a in A.arrows:
        row = [0] * len(A.vertices)
        row[vidx[getattr(a, end)]] = 1
        out.append(row)
    return out


def _arrow_target_solution(A):
    """(det, N): N[a][y] / det counts words starting with arrow a and ending at y,
    weighted by t^(length - 1)."""
    if not A.arrows:
        return (1,), []
    rhs = [[(x,) if x else () for x in row] for row in _incidence(A, "target")]
    return resolvent_solve(A.allowed_graph, rhs)


def hilbert_algebra_closed(A):
    """Matrix series H(x, y) = delta + sum_n count_paths(x, y, n) t^n."""
    V = A.vertices
    det, N = _arrow_target_solution(A)
    entries = {}
    for x in V:
        for y in V:
            num = det if x == y else ()
            for i, a in enumerate(A.arrows):
                if a.source == x:
                    num = p_add(num, p_shift(N[i][A.quiver.vertex_index[y]], 1))
            entries[(x, y)] = RationalSeries(num, det)
    return VertexMatrixSeries(V, entries)


def arrow_ideal_hilbert(A, a):
    """Per-vertex Hilbert series of L(a) (words starting with a)."""
    det, N = _arrow_target_solution(A)
    i = A.quiver.arrow_index[a]
    return {y: RationalSeries(p_shift(N[i][j], 1), det) for j, y in enumerate(A.vertices)}


def arrow_ideal_poincare(A, a):
    """Total and per-vertex Poincare series of L(a): walks in the zero graph from a."""
    k = len(A.arrows)
    ones = [[(1,)] for _ in range(k)]
    det, N = resolvent_solve(A.zero_graph, ones)
    i = A.quiver.arrow_index[a]
    total = RationalSeries(N[i][0], det)
    rhs = [[(x,) if x else () for x in row] for row in _incidence(A, "target")]
    det2, N2 = resolvent_solve(A.zero_graph, rhs)
    per = {y: RationalSeries(N2[i][j], det2) for j, y in enumerate(A.vertices)}
    return total, per


# --- module series -----------------------------------------------------------

@dataclass
class SeriesResult:
    total: RationalSeries
    per_vertex: dict
    closed: bool           # False when the decomposition was unavailable (truncated fallback)
    side: str = "t"        # "t" for non-negative grading, "u" = t^-1 for the dual side
    note: str = ""


def _sum_series(items, var="t"):
    s = RationalSeries((), (1,), 0, var)
    for x in items:
        s = s + x
    return s


def _step_series(entries, v):
    """Betti numbers at vertex v summed over internal degrees, as a polynomial in t."""
    out = {}
    for (s, d, x), m in entries.items():
        if x == v:
            out[s] = out.get(s, 0) + m
    return RationalSeries.from_dict(out)


def poincare_closed(M, steps=None, cutoff=None):
    """Closed-form Poincare series: b0 + b1 t + t^2 * (series of the arrow-ideal syzygy)."""
    A = M.algebra
    res = minimal_projective_resolution(M, 1, cutoff)
    b = res.betti
    per = {v: _step_series(b.entries, v) for v in A.vertices}
    if len(res.syzygies) < 2:
        return SeriesResult(_sum_series(per.values()), per, True)
    dec = syzygy_decomposition(res, 2)
    if not dec.ok:
        full = minimal_projective_resolution(M, steps, cutoff)
        per = {v: _step_series(full.betti.entries, v) for v in A.vertices}
        return SeriesResult(_sum_series(per.values()), per, False,
                            note="decomposition unavailable: %s" % dec.witness)
    for sm in dec.summands:
        if sm.kind == "L":
            _, pv = arrow_ideal_poincare(A, sm.name)
            for v in A.vertices:
                per[v] = per[v] + pv[v].shift(2)
        else:
            per[sm.vertex] = per[sm.vertex] + RationalSeries((1,)).shift(2)
    return SeriesResult(_sum_series(per.values()), per, True)


def _free_hilbert(A, H, gens):
    per = {v: ZERO_SERIES for v in A.vertices}
    for x, j in gens:
        for v in A.vertices:
            per[v] = per[v] + H[(x, v)].shift(j)
    return per


def hilbert_presented(M, cutoff=None):
    """H_M = H_{F0} - H_{F1} + sum of the Hilbert series of the second syzygy's summands."""
    A = M.algebra
    H = hilbert_algebra_closed(A)
    res = minimal_projective_resolution(M, 1, cutoff)
    X = res.complex
    f0 = _free_hilbert(A, H, X.term(0))
    f1 = _free_hilbert(A, H, X.term(-1))
    per = {v: f0[v] - f1[v] for v in A.vertices}
    closed, note = True, ""
    if len(res.syzygies) >= 2 and not res.syzygies[1].is_zero():
        dec = syzygy_decomposition(res, 2)
        if not dec.ok:
            closed, note = False, "decomposition unavailable: %s" % dec.witness
            per = {v: RationalSeries.from_dict({d: M.dim(v, d) for d in M.degrees()})
                   for v in A.vertices}
        else:
            for sm in dec.summands:
                if sm.kind == "L":
                    hl = arrow_ideal_hilbert(A, sm.name)
                    for v in A.vertices:
                        per[v] = per[v] + hl[v].shift(sm.shift)
                else:
                    for v in A.vertices:
                        per[v] = per[v] + H[(sm.vertex, v)].shift(sm.shift)
    return SeriesResult(_sum_series(per.values()), per, closed, note=note)


def is_dual_side(M):
    """Modules living in non-positive degrees that may continue downward."""
    if M.completeness == BELOW:
        return True
    return M.completeness == EXACT and M.window[1] <= 0 and M.window[0] < 0


def hilbert_module_closed(M, cutoff=None):
    """Closed-form Hilbert series; dual-side modules are handled through D M, in u = t^-1."""
    if not is_dual_side(M):
        return hilbert_presented(M, cutoff)
    opp = opposite_algebra(M.algebra)
    r = hilbert_presented(dual_module(M, opp), cutoff)
    rename = lambda s: RationalSeries(s.num, s.den, s.val, "u")
    return SeriesResult(rename(r.total), {v: rename(s) for v, s in r.per_vertex.items()},
                        r.closed, "u", r.note)


# --- reciprocity -------------------------------------------------------------

def _count_matrix(A, D):
    V = A.vertices
    return [[[count_paths(A, x, y, n) for n in range(D + 1)] for y in V] for x in V]


def _series_matmul(P, Q, D):
    n = len(P)
    out = [[[0] * (D + 1) for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            for k in range(n):
                p, q = P[i][k], Q[k][j]
                for a in range(D + 1):
                    if p[a]:
                        for b in range(D + 1 - a):
                            out[i][j][a + b] += p[a] * q[b]
    return out


def _transpose(P):
    n = len(P)
    return [[P[j][i] for j in range(n)] for i in range(n)]


def _is_identity(P):
    n = len(P)
    return all(P[i][j][k] == (1 if (i == j and k == 0) else 0)
               for i in range(n) for j in range(n) for k in range(len(P[i][j])))


RECIPROCITY_VARIANTS = ("H!(-t) H(t)", "H(t) H!(-t)", "H!(-t)^T H(t)", "H(t) H!(-t)^T")


def reciprocity_products(A, D):
    """The four candidate products, as truncated matrix power series."""
    H = _count_matrix(A, D)
    B = koszul_dual(A)
    Hd = _count_matrix(B, D)
    Hm = [[[c * (-1) ** k for k, c in enumerate(s)] for s in row] for row in Hd]
    return {
        RECIPROCITY_VARIANTS[0]: _series_matmul(Hm, H, D),
        RECIPROCITY_VARIANTS[1]: _series_matmul(H, Hm, D),
        RECIPROCITY_VARIANTS[2]: _series_matmul(_transpose(Hm), H, D),
        RECIPROCITY_VARIANTS[3]: _series_matmul(H, _transpose(Hm), D),
    }


def holding_variants(A, D):
    return [name for name, P in reciprocity_products(A, D).items() if _is_identity(P)]


def calibrate_reciprocity(calibration, D=20):
    """The first variant holding on every calibration algebra, or None."""
    ok = set(RECIPROCITY_VARIANTS)
    for A in calibration:
        ok &= set(holding_variants(A, D))
    for name in RECIPROCITY_VARIANTS:
        if name in ok:
            return name
    return None


def hilbert_reciprocity_check(A, variant, D=20):
    return _is_identity(reciprocity_products(A, D)[variant])
