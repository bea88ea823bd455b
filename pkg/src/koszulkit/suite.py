"""Property matrix over a corpus of algebras.

Every row is a family of exact checks; the report is a plain table whose
text depends only on the corpus and the seed.
"""

import os
import random
import sys
from dataclasses import dataclass, field

from .algebra import koszul_dual, dual_arrow_name, is_radical_square_zero
from .corpus import (bundled_dir, load_algebra, load_corpus, random_algebra, random_module,
                     random_two_term_complex)
from .koszul import (adaptive_depth, arrow_checks, find_linear_truncation, koszul_certificate,
                     roundtrip_check, shift_tables)
from .modules import (EXACT, arrow_coideal, arrow_ideal, injective_module, projective_module,
                      simple_module)
from .resolution import (linearity_defect, minimal_projective_resolution, syzygy_decomposition,
                         syzygy_gradedness)
from .series import (calibrate_reciprocity, hilbert_module_closed, hilbert_reciprocity_check,
                     poincare_closed)


@dataclass
class SuiteConfig:
    random_algebras: int = 100
    coker_modules: int = 200
    copresented: int = 50
    complexes: int = 50
    shifts: tuple = (-2, -1, 0, 1, 2)
    steps: int = 20
    degree: int = 24
    order: int = 30
    small_depth: int = 8
    golden_steps: int = 6
    golden_cutoff: int = 12


QUICK = SuiteConfig(random_algebras=10, coker_modules=20, copresented=6, complexes=6,
                    steps=8, degree=12, order=12)


@dataclass
class Row:
    name: str
    count: int = 0
    failures: list = field(default_factory=list)
    note: str = ""

    @property
    def ok(self):
        return not self.failures

    def check(self, ok, witness):
        self.count += 1
        if not ok:
            self.failures.append(witness)
        return ok


@dataclass
class SuiteResult:
    rows: list
    lines: list
    warnings: list

    @property
    def ok(self):
        return all(r.ok for r in self.rows)

    def text(self):
        return "\n".join(self.lines) + "\n"


# --- golden Betti tables -----------------------------------------------------

def betti_golden_text(A, steps=6, cutoff=12):
    """TSV of the Betti tables of all simples: module, step, degree, vertex, multiplicity."""
    out = ["module\tstep\tdegree\tvertex\tmult"]
    for x in A.vertices:
        res = minimal_projective_resolution(simple_module(A, x), steps, cutoff)
        for s, v, d, m in res.betti.rows(A.vertices):
            out.append("S(%s)\t%d\t%d\t%s\t%d" % (x, s, d, v, m))
    return "\n".join(out) + "\n"


def _first_diff(expected, got):
    e, g = expected.splitlines(), got.splitlines()
    for i in range(max(len(e), len(g))):
        a = e[i] if i < len(e) else "<missing>"
        b = g[i] if i < len(g) else "<missing>"
        if a != b:
            return "line %d: expected %r, got %r" % (i + 1, a, b)
    return ""


# --- individual families -----------------------------------------------------

def _certificates(row, corpus, rng, cfg):
    for name, A in corpus:
        rep = koszul_certificate(A, cfg.degree)
        row.check(rep.ok, "%s: %s" % (name, _first_fail(rep)))
    for i in range(cfg.random_algebras):
        A = random_algebra(rng)
        rep = koszul_certificate(A, adaptive_depth(A, cap=cfg.degree))
        row.check(rep.ok, "random algebra %d: %s" % (i, _first_fail(rep)))


def _first_fail(rep):
    for c in rep.checks:
        if not c.ok:
            return c.line()
    return ""


def _arrows(row, corpus, cfg):
    for name, A in corpus:
        for a in A.arrows:
            rep = arrow_checks(A, a.name, cfg.small_depth)
            row.check(rep.ok, "%s arrow %s: %s" % (name, a.name, _first_fail(rep)))


def _module_pool(corpus, rng, cfg):
    """Seeded random coker modules distributed round-robin over the corpus."""
    pool = []
    for i in range(cfg.coker_modules):
        name, A = corpus[i % len(corpus)]
        text, M = random_module(rng, A, "coker", cfg.degree)
        pool.append((name, A, text, M))
    return pool


def _resolutions(rows, pool, cfg):
    split, ld, rsz, graded = rows
    for name, A, text, M in pool:
        where = "%s %s" % (name, text)
        res = minimal_projective_resolution(M, 3, cfg.degree)
        if split.ok:
            if len(res.syzygies) >= 2:
                dec = syzygy_decomposition(res, 2, allow_projective=False)
                split.check(dec.ok, "%s: %s" % (where, dec.witness))
            else:
                split.check(True, "")
        ok, wit = syzygy_gradedness(res)
        graded.check(ok, "%s: %s" % (where, wit))
        rep = linearity_defect(M, cfg.steps, cfg.degree)
        good = rep.certified and isinstance(rep.defect, int) and rep.defect <= 1
        ld.check(good, "%s: defect %s certified %s" % (where, rep.defect, rep.certified))
        if is_radical_square_zero(A):
            rsz.check(good and rep.defect == 0, "%s: defect %s" % (where, rep.defect))
    if not split.ok:
        split.note = "halted at first falsifier"


def _series_modules(corpus, pool):
    out = []
    for name, A in corpus:
        for x in A.vertices:
            out.append((name, "S(%s)" % x, simple_module(A, x)))
        for a in A.arrows:
            out.append((name, "L(%s)" % a.name, None))
    seen = set()
    for name, A, text, M in pool:
        if name not in seen:
            seen.add(name)
            out.append((name, text, M))
    return out


def _poincare(row, corpus, pool, cfg):
    algebras = dict(corpus)
    for name, text, M in _series_modules(corpus, pool):
        A = algebras[name]
        if M is None:
            M = arrow_ideal(A, text[2:-1], cfg.degree)
        closed = poincare_closed(M, cfg.steps, cfg.degree)
        res = minimal_projective_resolution(M, cfg.steps, cfg.degree)
        brute = res.betti.totals() + [0] * (cfg.steps + 1 - len(res.betti.totals()))
        co = closed.total.coefficients(cfg.steps)
        got = [co.get(k, 0) for k in range(cfg.steps + 1)]
        upto = cfg.steps if res.betti.complete else res.betti.steps
        row.check(closed.closed and got[:upto + 1] == brute[:upto + 1],
                  "%s %s: closed %s vs brute %s" % (name, text, got[:upto + 1], brute[:upto + 1]))


def _hilbert(row, corpus, pool, cfg):
    algebras = dict(corpus)
    for name, text, M in _series_modules(corpus, pool):
        A = algebras[name]
        if M is None:
            M = arrow_ideal(A, text[2:-1], cfg.order)
        elif "coker" in text:
            from .expressions import parse_module
            M = parse_module(A, text, cfg.order)
        _hilbert_one(row, name, text, M, cfg, 1)
    for name, A in corpus:
        B = koszul_dual(A)
        for x in B.vertices:
            _hilbert_one(row, name, "I!(%s)" % x, injective_module(B, x, 0, cfg.order), cfg, -1)
        for a in B.arrows:
            _hilbert_one(row, name, "C(%s)" % a.name, arrow_coideal(B, a.name, cfg.order), cfg, -1)


def _hilbert_one(row, name, text, M, cfg, sign):
    closed = hilbert_module_closed(M, cfg.order)
    D = cfg.order
    if sign > 0:
        brute = [sum(M.dim(v, d) for v in M.algebra.vertices) for d in range(D + 1)]
        ok_range = D if M.completeness == EXACT else min(D, M.window[1])
    else:
        brute = [sum(M.dim(v, -d) for v in M.algebra.vertices) for d in range(D + 1)]
        ok_range = D if M.completeness == EXACT else min(D, -M.window[0])
    co = closed.total.coefficients(D)
    got = [co.get(k, 0) for k in range(D + 1)]
    row.check(closed.closed and got[:ok_range + 1] == brute[:ok_range + 1],
              "%s %s: closed %s vs brute %s" % (name, text, got[:ok_range + 1], brute[:ok_range + 1]))


def _shifts(row, corpus, rng, cfg):
    for i in range(cfg.complexes):
        name, A = corpus[i % len(corpus)]
        B = koszul_dual(A)
        text, X = random_two_term_complex(rng, B, cfg.small_depth)
        for k in cfg.shifts:
            lhs, rhs, _ = shift_tables(A, X, k, cfg.small_depth)
            row.check(lhs == rhs, "%s %s shift %d: %s vs %s" % (name, text, k, lhs[:3], rhs[:3]))


def _truncations(row, corpus, rng, cfg):
    for i in range(cfg.copresented):
        name, A = corpus[i % len(corpus)]
        B = koszul_dual(A)
        text, M = random_module(rng, B, "ker", cfg.small_depth)
        res = find_linear_truncation(A, M, 4, cfg.small_depth)
        row.check(res.certificate.ok, "%s %s: %s" % (name, text, _first_fail(res.certificate)))


def _roundtrips(row, corpus, cfg):
    for name, A in corpus:
        mods = [("S(%s)" % x, simple_module(A, x)) for x in A.vertices]
        if A.finite_dim:
            mods += [("P(%s)" % x, projective_module(A, x)) for x in A.vertices]
            mods += [("L(%s)" % a.name, arrow_ideal(A, a.name)) for a in A.arrows]
        else:
            row.note = "projectives and arrow ideals only over finite-dimensional algebras"
        for text, N in mods:
            rep = roundtrip_check(A, N, cfg.small_depth)
            row.check(rep.ok, "%s %s: %s" % (name, text, _first_fail(rep)))


def _reciprocity(row, corpus, cfg):
    data = bundled_dir()
    calib = [load_algebra(os.path.join(data, f)) for f in ("sl2.alg", "a3.alg")]
    variant = calibrate_reciprocity(calib, cfg.order)
    row.note = "calibrated variant %s" % variant
    for name, A in corpus:
        row.check(variant is not None and hilbert_reciprocity_check(A, variant, cfg.order),
                  "%s: %s is not the identity" % (name, variant))


def _golden(row, corpus_dir, corpus, cfg):
    for name, A in corpus:
        path = os.path.join(corpus_dir, name + ".betti")
        if not os.path.exists(path):
            continue
        with open(path, encoding="utf-8") as fh:
            expected = fh.read()
        got = betti_golden_text(A, cfg.golden_steps, cfg.golden_cutoff)
        row.check(got == expected, "%s: %s" % (name, _first_diff(expected, got)))


# --- driver ------------------------------------------------------------------

ROW_NAMES = (
    "koszul certificate",
    "arrow ideals linear / coideals colinear",
    "second syzygies split into arrow ideals",
    "linearity defect <= 1",
    "radical square zero: weakly koszul",
    "syzygies graded",
    "rational poincare series",
    "rational hilbert series",
    "grading shift compatibility",
    "colinear truncation",
    "roundtrip F(G(N)) ~ N",
    "hilbert reciprocity",
    "golden betti tables",
)


def run_suite(corpus_dir=None, seed=0, config=None):
    cfg = config or SuiteConfig()
    corpus_dir = corpus_dir or bundled_dir()
    corpus = load_corpus(corpus_dir)
    rows = {n: Row(n) for n in ROW_NAMES}
    warnings = []
    if not corpus:
        warnings.append("warning: no *.alg files in %s; all checks pass vacuously" % corpus_dir)
    else:
        rng = random.Random(seed)
        _certificates(rows["koszul certificate"], corpus, rng, cfg)
        _arrows(rows["arrow ideals linear / coideals colinear"], corpus, cfg)
        pool = _module_pool(corpus, rng, cfg)
        _resolutions([rows[n] for n in ROW_NAMES[2:6]], pool, cfg)
        _poincare(rows["rational poincare series"], corpus, pool, cfg)
        _hilbert(rows["rational hilbert series"], corpus, pool, cfg)
        _shifts(rows["grading shift compatibility"], corpus, rng, cfg)
        _truncations(rows["colinear truncation"], corpus, rng, cfg)
        _roundtrips(rows["roundtrip F(G(N)) ~ N"], corpus, cfg)
        _reciprocity(rows["hilbert reciprocity"], corpus, cfg)
        _golden(rows["golden betti tables"], corpus_dir, corpus, cfg)
    lines = ["corpus: %d algebras (%s)" % (len(corpus), ", ".join(n for n, _ in corpus)),
             "seed: %d" % seed, ""]
    width = max(len(n) for n in ROW_NAMES)
    for n in ROW_NAMES:
        r = rows[n]
        lines.append("%s  %5d  %s%s" % (n.ljust(width), r.count, "PASS" if r.ok else "FAIL",
                                        ("  (%s)" % r.note) if r.note else ""))
        for w in r.failures[:3]:
            lines.append("    witness: %s" % w)
    ok = all(r.ok for r in rows.values())
    lines.append("")
    lines.append("overall: %s" % ("PASS" if ok else "FAIL"))
    if not ok:
        lines.append("reproduce: koszulkit suite %s --seed %d" % (corpus_dir, seed))
    return SuiteResult(list(rows.values()), lines, warnings)


def main_suite(corpus_dir, seed, config=None, out=sys.stdout, err=sys.stderr):
    res = run_suite(corpus_dir, seed, config)
    for w in res.warnings:
        print(w, file=err)
    out.write(res.text())
    return 0 if res.ok else 1
