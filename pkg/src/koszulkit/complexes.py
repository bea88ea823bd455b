"""Cochain complexes of graded modules and of free (co)modules.

Two representations are used.  :class:`ModuleComplex` holds explicit graded
modules and morphisms.  :class:`FreeComplex` holds a complex whose terms are
finite sums of shifted indecomposable projectives (``kind="projective"``)
or injectives (``kind="injective"``), with differential entries that are
linear combinations of path words.

An entry at ``(row, col)`` of ``d^n`` always holds words running from the
row generator's vertex to the column generator's vertex.  For projectives a
word ``w`` acts by ``p -> w.p`` (prepend); for injectives it acts by
``q -> q'`` when ``q = q'.w`` (delete from the end).  In both cases the
composite of entries ``u`` (later) and ``w`` (earlier) is the word ``u.w``.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import Word, multiply_words
from .linalg import Matrix, ZERO, rank, solve_in_basis
from .modules import (GradedModule, GradedMorphism, ModuleError, free_module, cofree_module,
                      kernel, quotient, zero_module, shift as shift_module)

PROJECTIVE = "projective"
INJECTIVE = "injective"


class ComplexError(ValueError):
    pass


def _add_term(entry, word, coeff):
    c = entry.get(word, ZERO) + Fraction(coeff)
    if c:
        entry[word] = c
    else:
        entry.pop(word, None)


@dataclass(eq=False)
class FreeComplex:
    """Complex of finite sums of shifted projectives or injectives.

    ``terms[n]`` is a tuple of generators ``(vertex, degree)``: for
    projectives the degree of the generator ``e_x`` of ``P_x<degree>``, for
    injectives the degree of the socle of ``I_x<degree>``.
    ``diffs[n][(row, col)]`` maps arrow tuples to coefficients.
    ``strands`` bounds the internal degrees where the complex is known to be
    complete: ``(lo, hi)`` with None for unbounded.
    """
    algebra: object
    kind: str
    terms: dict
    diffs: dict
    strands: tuple = (None, None)
    name: str = ""
    provenance: dict = field(default_factory=dict)   # n -> per-generator origin

    def __post_init__(self):
        self.terms = {n: tuple(g) for n, g in self.terms.items() if g}
        self.diffs = {n: {k: dict(v) for k, v in d.items() if v}
                      for n, d in self.diffs.items()}
        self._cache = {}

    # --- structure ----------------------------------------------------------

    def degrees(self):
        return sorted(self.terms)

    def term(self, n):
        return self.terms.get(n, ())

    def diff(self, n):
        return self.diffs.get(n, {})

    def validate(self):
        """Check entry endpoints and lengths against generator degrees."""
        A = self.algebra
        for n, d in self.diffs.items():
            src, tgt = self.term(n), self.term(n + 1)
            for (r, c), entry in d.items():
                if r >= len(tgt) or c >= len(src):
                    raise ComplexError("d^%d entry (%d, %d) out of range" % (n, r, c))
                (y, jr), (x, jc) = tgt[r], src[c]
                for w in entry:
                    word = A.word(w, y) if w else Word(y, y, ())
                    if word.source != y or word.target != x:
                        raise ComplexError("d^%d entry (%d, %d): word %s does not run %s -> %s"
                                           % (n, r, c, word, y, x))
                    if len(w) != jc - jr:
                        raise ComplexError("d^%d entry (%d, %d): word %s has wrong length"
                                           % (n, r, c, word))
        return True

    def composite(self, n):
        """Entries of d^{n+1} o d^n, reduced in the algebra."""
        A = self.algebra
        out = {}
        d0, d1 = self.diff(n), self.diff(n + 1)
        by_col = {}
        for (k, c), e in d0.items():
            by_col.setdefault(k, []).append((c, e))
        for (r, k), u_entry in d1.items():
            for c, w_entry in by_col.get(k, ()):
                y = self.term(n + 2)[r][0]
                for u, cu in u_entry.items():
                    for w, cw in w_entry.items():
                        mid = self.term(n + 1)[k][0]
                        uw = multiply_words(A, Word(y, mid, u), Word(mid, self.term(n)[c][0], w))
                        if uw is not None:
                            _add_term(out.setdefault((r, c), {}), uw.arrows, cu * cw)
        return {k: v for k, v in out.items() if v}

    def check(self):
        """Return None if d^2 = 0, else the first failing (n, (row, col))."""
        for n in sorted(self.diffs):
            comp = self.composite(n)
            if comp:
                return n, min(comp)
        return None

    def is_linear(self):
        """Every entry is a combination of single arrows and term n is generated in degree -n
        (projectives) or cogenerated in degree -n (injectives)."""
        for n, gens in self.terms.items():
            if any(j != -n for _, j in gens):
                return False
        return all(len(w) == 1 for d in self.diffs.values() for e in d.values() for w in e)

    def is_minimal(self):
        """No trivial-word (scalar) entries."""
        return not any(len(w) == 0 for d in self.diffs.values() for e in d.values() for w in e)

    def multiplicities(self, n):
        out = {}
        for x, j in self.term(n):
            out[(x, j)] = out.get((x, j), 0) + 1
        return out

    # --- blockwise expansion -------------------------------------------------

    def block_basis(self, n, v, d):
        """Labels ``(i, word)`` spanning the (v, d) block of term n."""
        key = (n, v, d)
        if key not in self._cache:
            A = self.algebra
            out = []
            for i, (x, j) in enumerate(self.term(n)):
                if self.kind == PROJECTIVE:
                    out.extend((i, w) for w in A.words_between(x, v, d - j))
                else:
                    out.extend((i, w) for w in A.words_between(v, x, j - d))
            self._cache[key] = out
        return self._cache[key]

    def block_matrix(self, n, v, d):
        """Matrix of d^n on the (v, d) block."""
        src = self.block_basis(n, v, d)
        tgt = self.block_basis(n + 1, v, d)
        index = {lab: i for i, lab in enumerate(tgt)}
        rows = [[ZERO] * len(src) for _ in tgt]
        by_col = {}
        for (r, c), e in self.diff(n).items():
            by_col.setdefault(c, []).append((r, e))
        A = self.algebra
        gens = self.term(n + 1)
        for col, (c, p) in enumerate(src):
            for r, e in by_col.get(c, ()):
                y = gens[r][0]
                for w, coeff in e.items():
                    if self.kind == PROJECTIVE:
                        img = multiply_words(A, Word(y, p.source, w), p)
                    else:
                        if len(w) > len(p.arrows) or (w and p.arrows[len(p.arrows) - len(w):] != w):
                            continue
                        img = Word(p.source, y, p.arrows[:len(p.arrows) - len(w)])
                    if img is None:
                        continue
                    i = index.get((r, img))
                    if i is None:
                        raise ComplexError("image outside the expanded block")
                    rows[i][col] += coeff
        return Matrix(rows, len(tgt), len(src))

    def block_degrees(self, n):
        """Internal degrees at which term n can be nonzero, within the strand bounds."""
        gens = self.term(n)
        if not gens:
            return []
        lo_s, hi_s = self.strands
        L = self.algebra.max_word_length()
        if self.kind == PROJECTIVE:
            lo = min(j for _, j in gens)
            hi = max(j for _, j in gens) + L if L is not None else hi_s
            if hi is None:
                raise ComplexError("unbounded projective term needs a strand bound")
            if hi_s is not None:
                hi = min(hi, hi_s)
            if lo_s is not None:
                lo = max(lo, lo_s)
        else:
            hi = max(j for _, j in gens)
            lo = min(j for _, j in gens) - L if L is not None else lo_s
            if lo is None:
                raise ComplexError("unbounded injective term needs a strand bound")
            if lo_s is not None:
                lo = max(lo, lo_s)
            if hi_s is not None:
                hi = min(hi, hi_s)
        return list(range(lo, hi + 1))

    def cohomology_dims(self, n):
        """Dimensions of H^n per (vertex, degree) within the strand bounds."""
        out = {}
        A = self.algebra
        for d in self.block_degrees(n):
            for v in A.vertices:
                dim = len(self.block_basis(n, v, d))
                if not dim:
                    continue
                r_out = rank(self.block_matrix(n, v, d)) if self.term(n + 1) else 0
                r_in = rank(self.block_matrix(n - 1, v, d)) if self.term(n - 1) else 0
                h = dim - r_out - r_in
                if h:
                    out[(v, d)] = h
        return out

    def cohomology_table(self):
        """Rows (n, vertex, degree, dim) for all nonzero cohomology."""
        rows = []
        vidx = self.algebra.quiver.vertex_index
        for n in self.degrees():
            for (v, d), h in sorted(self.cohomology_dims(n).items(),
                                    key=lambda kv: (kv[0][1], vidx[kv[0][0]])):
                rows.append((n, v, d, h))
        return rows

    def expand(self, cutoff=None):
        """Explicit ModuleComplex; ``cutoff`` bounds the internal degrees of infinite terms."""
        A = self.algebra
        lo_s, hi_s = self.strands
        terms, diffs = {}, {}
        for n in self.degrees():
            if self.kind == PROJECTIVE:
                c = cutoff if cutoff is not None else hi_s
                terms[n] = free_module(A, self.term(n), c)
            else:
                c = cutoff if cutoff is not None else (-lo_s if lo_s is not None else None)
                terms[n] = cofree_module(A, self.term(n), c)
        for n in self.degrees():
            if n + 1 not in terms:
                continue
            src, tgt = terms[n], terms[n + 1]
            blocks = {}
            for (v, d) in src.basis:
                if not tgt.dim(v, d):
                    continue
                blocks[(v, d)] = _relabelled_block(self, n, v, d, src, tgt)
            diffs[n] = GradedMorphism(src, tgt, blocks)
        return ModuleComplex(A, terms, diffs)

    def __repr__(self):
        return "FreeComplex(%s, %s, %s)" % (self.kind, self.name or "?",
                                            {n: len(g) for n, g in sorted(self.terms.items())})


def _relabelled_block(X, n, v, d, src, tgt):
    """Block matrix of d^n in the label order of the expanded modules."""
    m = X.block_matrix(n, v, d)
    sb, tb = X.block_basis(n, v, d), X.block_basis(n + 1, v, d)
    s_pos = {lab: i for i, lab in enumerate(sb)}
    t_pos = {lab: i for i, lab in enumerate(tb)}
    s_labels, t_labels = src.labels(v, d), tgt.labels(v, d)
    rows = []
    for lab in t_labels:
        i = t_pos.get(lab)
        row = m.rows[i] if i is not None else [ZERO] * m.ncols
        rows.append([row[s_pos[l]] if l in s_pos else ZERO for l in s_labels])
    return Matrix(rows, len(t_labels), len(s_labels))


def format_free_complex(X):
    """Serialization: per degree a header ``term n: ...`` then ``row col: coeff*word`` lines."""
    lines = []
    for n in X.degrees():
        gens = ", ".join("%s%s<%d>" % ("P" if X.kind == PROJECTIVE else "I", x, j)
                         for x, j in X.term(n))
        lines.append("term %d: %s" % (n, gens))
        for (r, c) in sorted(X.diff(n)):
            e = X.diff(n)[(r, c)]
            parts = []
            for w in sorted(e, key=lambda w: (len(w), w)):
                word = ".".join(w) if w else "e_%s" % X.term(n + 1)[r][0]
                parts.append("%s*%s" % (e[w], word))
            lines.append("  %d %d: %s" % (r, c, " + ".join(parts)))
    return "\n".join(lines)


def shift_free_complex(X, k):
    """Cohomological shift X[k]: X[k]^n = X^{n+k}, differential times (-1)^k."""
    sign = -1 if k % 2 else 1
    terms = {n - k: g for n, g in X.terms.items()}
    diffs = {n - k: {rc: {w: sign * c for w, c in e.items()} for rc, e in d.items()}
             for n, d in X.diffs.items()}
    return FreeComplex(X.algebra, X.kind, terms, diffs, X.strands, X.name,
                       {n - k: p for n, p in X.provenance.items()})


def grade_shift_free_complex(X, i):
    """Internal shift <i> applied termwise."""
    terms = {n: tuple((x, j + i) for x, j in g) for n, g in X.terms.items()}
    lo, hi = X.strands
    strands = (None if lo is None else lo + i, None if hi is None else hi + i)
    return FreeComplex(X.algebra, X.kind, terms, X.diffs, strands, X.name, X.provenance)


# --- explicit module complexes ----------------------------------------------

@dataclass(eq=False)
class ModuleComplex:
    algebra: object
    terms: dict      # n -> GradedModule
    diffs: dict      # n -> GradedMorphism X^n -> X^{n+1}

    def degrees(self):
        return sorted(self.terms)

    def term(self, n):
        M = self.terms.get(n)
        return M if M is not None else zero_module(self.algebra)

    def diff(self, n):
        f = self.diffs.get(n)
        if f is not None:
            return f
        return GradedMorphism(self.term(n), self.term(n + 1), {})

    def check(self):
        """Return None if valid, else the first (n, vertex, degree) where d^2 != 0
        or (n, arrow, degree) where a differential fails to commute."""
        for n in sorted(self.diffs):
            bad = self.diffs[n].commutes()
            if bad is not None:
                return n, bad[0], bad[1]
        for n in sorted(self.diffs):
            if n + 1 not in self.diffs:
                continue
            f, g = self.diffs[n], self.diffs[n + 1]
            for key in sorted(f.source.basis, key=lambda k: (k[1], k[0])):
                if not (g.block(*key) @ f.block(*key)).is_zero():
                    return n, key[0], key[1]
        return None

    def cohomology_dims(self, n):
        out = {}
        for key in self.term(n).basis:
            dim = self.term(n).dim(*key)
            r_out = rank(self.diff(n).block(*key)) if n in self.diffs else 0
            r_in = rank(self.diff(n - 1).block(*key)) if n - 1 in self.diffs else 0
            h = dim - r_out - r_in
            if h:
                out[key] = h
        return out

    def cohomology(self, n):
        """H^n as a graded module (kernel of d^n modulo image of d^{n-1})."""
        M = self.term(n)
        if n in self.diffs:
            K, inc = kernel(self.diffs[n], "Z%d" % n)
        else:
            K, inc = M, None
        if n - 1 not in self.diffs or K.is_zero():
            if inc is None:
                return K
            H, _ = quotient(K, {}, "H%d" % n)
            return H
        f = self.diffs[n - 1]
        vecs = {}
        for key in f.source.basis:
            m = f.block(*key)
            if not m.nrows:
                continue
            cols = [m.column(j) for j in range(m.ncols)]
            if inc is None:
                vecs[key] = cols
            else:
                basis = K.info["vectors"].get(key, [])
                vecs[key] = solve_in_basis(basis, cols, M.dim(*key)) if basis else []
        H, _ = quotient(K, vecs, "H%d" % n)
        return H


def shift_complex(X, k):
    """X[k]^n = X^{n+k} with differentials multiplied by (-1)^k."""
    if isinstance(X, FreeComplex):
        return shift_free_complex(X, k)
    sign = -1 if k % 2 else 1
    return ModuleComplex(X.algebra, {n - k: M for n, M in X.terms.items()},
                         {n - k: f.scale(sign) for n, f in X.diffs.items()})


def grade_shift_complex(X, i):
    if isinstance(X, FreeComplex):
        return grade_shift_free_complex(X, i)
    terms = {n: shift_module(M, i) for n, M in X.terms.items()}
    diffs = {n: GradedMorphism(terms[n], terms[n + 1],
                               {(v, d + i): m for (v, d), m in f.blocks.items()})
             for n, f in X.diffs.items()}
    return ModuleComplex(X.algebra, terms, diffs)


def check_complex(X):
    """Uniform entry point: None when valid, else the first violation."""
    return X.check()


# --- double complexes --------------------------------------------------------

@dataclass(eq=False)
class DoubleComplex:
    """Bigraded free terms ``B^{q,p}`` with horizontal d1 (p -> p+1) and vertical d2 (q -> q+1).

    ``terms[(q, p)]`` are generator tuples; ``d1[(q, p)]`` and ``d2[(q, p)]``
    are entry dicts as in :class:`FreeComplex`.  The two differentials commute.
    """
    algebra: object
    kind: str
    terms: dict
    d1: dict
    d2: dict
    strands: tuple = (None, None)


def total_complex(B):
    """Tot(B)^n = sum over p + q = n of B^{q,p}, with d = d1 + (-1)^p d2.

    Summands of Tot^n are ordered by increasing p.
    """
    by_n = {}
    for (q, p) in sorted(B.terms, key=lambda k: (k[1], k[0])):
        if B.terms[(q, p)]:
            by_n.setdefault(q + p, []).append((q, p))
    offsets, terms = {}, {}
    for n, keys in by_n.items():
        gens, off = [], 0
        for key in keys:
            offsets[key] = off
            gens.extend(B.terms[key])
            off += len(B.terms[key])
        terms[n] = tuple(gens)
    diffs = {}
    for (q, p), gens in B.terms.items():
        if not gens:
            continue
        n = q + p
        out = diffs.setdefault(n, {})
        for tgt, entries, sign in (((q, p + 1), B.d1.get((q, p), {}), 1),
                                   ((q + 1, p), B.d2.get((q, p), {}), -1 if p % 2 else 1)):
            if tgt not in offsets:
                continue
            ro, co = offsets[tgt], offsets[(q, p)]
            for (r, c), e in entries.items():
                cell = out.setdefault((ro + r, co + c), {})
                for w, x in e.items():
                    _add_term(cell, w, sign * x)
    return FreeComplex(B.algebra, B.kind, terms, diffs, B.strands)
