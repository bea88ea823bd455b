"""Command-line front end: ``koszulkit <subcommand> <algebra file> [options]``.

Exit codes: 0 success or PASS, 1 property falsified, 2 input error.
Diagnostics go to standard error; reports to standard output.
"""

import argparse
import contextlib
import os
import sys

from .algebra import (AlgebraError, format_algebra, is_finite_dimensional, koszul_dual,
                      parse_algebra)
from .complexes import ComplexError, format_free_complex
from .corpus import bundled_dir, load_algebra
from .expressions import ExpressionError, parse_module
from .koszul import (FunctorError, cokoszul_G, find_linear_truncation, koszul_K,
                     koszul_certificate, roundtrip_check)
from .modules import DEFAULT_DEGREE, ModuleError, hilbert_truncated
from .resolution import (DEFAULT_STEPS, linearity_defect, minimal_injective_coresolution,
                         minimal_projective_resolution)
from .series import (RECIPROCITY_VARIANTS, calibrate_reciprocity, hilbert_algebra_closed,
                     hilbert_module_closed, holding_variants, poincare_closed)
from .suite import QUICK, SuiteConfig, main_suite

DEFAULT_ORDER = int(os.environ.get("KOSZULKIT_ORDER", "30"))

# subcommand -> side the module expression lives on by default
MODULE_SIDE = {"hilbert": "algebra", "resolve": "algebra", "coresolve": "dual",
               "betti": "algebra", "poincare": "algebra", "lindefect": "algebra",
               "kfunctor": "dual", "gfunctor": "algebra", "roundtrip": "algebra",
               "truncation": "dual"}
NEEDS_MODULE = {"resolve", "coresolve", "betti", "poincare", "lindefect", "kfunctor",
                "gfunctor", "roundtrip", "truncation"}


class InputError(Exception):
    pass


def _positive(text):
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError("expected a positive integer, got %r" % text)
    if n <= 0:
        raise argparse.ArgumentTypeError("expected a positive integer, got %r" % text)
    return n


def build_parser():
    p = argparse.ArgumentParser(prog="koszulkit",
                                description="Koszul duality computations for quadratic "
                                            "monomial algebras.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, module=False):
        sp.add_argument("algebra", help="algebra file")
        sp.add_argument("--format", choices=("text", "tsv"), default="text")
        sp.add_argument("--steps", type=_positive, default=DEFAULT_STEPS)
        sp.add_argument("--cutoff", "--degree", dest="cutoff", type=_positive,
                        default=DEFAULT_DEGREE)
        sp.add_argument("--order", type=_positive, default=DEFAULT_ORDER)
        if module:
            sp.add_argument("--module", dest="module", help="module expression")
            sp.add_argument("--over", choices=("algebra", "dual"), default=None,
                            help="algebra the module expression is read over")
        return sp

    common(sub.add_parser("validate", help="parse and validate an algebra file"))
    common(sub.add_parser("dual", help="print the quadratic dual algebra"))
    common(sub.add_parser("basis", help="list the nonzero path words"))
    common(sub.add_parser("dim", help="finiteness, longest word, dimension"))
    h = common(sub.add_parser("hilbert", help="Hilbert series of the algebra or a module"), True)
    g = h.add_mutually_exclusive_group()
    g.add_argument("--closed", action="store_true", default=True)
    g.add_argument("--truncate", type=_positive, default=None, metavar="D")
    for name, text in (("resolve", "minimal projective resolution"),
                       ("coresolve", "minimal injective coresolution"),
                       ("betti", "Betti table of the minimal resolution"),
                       ("poincare", "closed Poincare series"),
                       ("lindefect", "linearity defect"),
                       ("kfunctor", "Koszul functor K(M) of a dual-side module"),
                       ("gfunctor", "coKoszul functor G(N)"),
                       ("roundtrip", "check F(G(N)) ~ N"),
                       ("truncation", "colinear truncation of a dual-side module")):
        common(sub.add_parser(name, help=text), True)
    common(sub.add_parser("koszul-check", help="Koszulness certificate for every vertex"))
    common(sub.add_parser("reciprocity", help="Hilbert series reciprocity"))
    s = sub.add_parser("suite", help="run the property matrix over a corpus")
    s.add_argument("corpus", nargs="?", default=None, help="directory of *.alg files")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--quick", action="store_true", help="reduced sample sizes")
    return p


# --- helpers -----------------------------------------------------------------

def _load(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise InputError("%s: %s" % (path, e.strerror or e))
    try:
        return parse_algebra(text)
    except AlgebraError as e:
        raise InputError("%s: %s" % (path, e))


def _module(args, A):
    side = args.over or MODULE_SIDE[args.command]
    B = koszul_dual(A) if side == "dual" else A
    if not args.module:
        if args.command in NEEDS_MODULE:
            raise InputError("%s needs --module" % args.command)
        return B, None
    try:
        return B, parse_module(B, args.module, args.cutoff)
    except (ExpressionError, ModuleError, ComplexError) as e:
        raise InputError("module expression: %s" % e)


def _table(args, header, rows):
    out = []
    if args.format == "tsv":
        out.append("\t".join(header))
        out.extend("\t".join(str(x) for x in r) for r in rows)
    else:
        widths = [max(len(str(x)) for x in col) for col in zip(header, *rows)] if rows else \
            [len(h) for h in header]
        out.append("  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip())
        out.extend("  ".join(str(x).ljust(w) for x, w in zip(r, widths)).rstrip() for r in rows)
    return out


def _report(rep):
    return rep.lines(), (0 if rep.ok else 1)


# --- subcommands -------------------------------------------------------------

def cmd_validate(args, A):
    return ["valid: %d vertices, %d arrows, %d relations"
            % (len(A.vertices), len(A.arrows), len(A.relations))], 0


def cmd_dual(args, A):
    return [format_algebra(koszul_dual(A)).rstrip("\n")], 0


def cmd_basis(args, A):
    finite, L, _ = is_finite_dimensional(A)
    top = L if finite else args.cutoff
    rows = []
    for n in range(top + 1):
        for x in A.vertices:
            for w in A.words_from(x, n):
                rows.append((n, w.source, w.target, ".".join(w.arrows) if w.arrows else "e_" + x))
    out = _table(args, ("length", "source", "target", "word"), rows)
    if not finite:
        out.append("# infinite-dimensional: words listed up to length %d" % top)
    return out, 0


def cmd_dim(args, A):
    finite, L, dim = is_finite_dimensional(A)
    if finite:
        return ["finite: true, max_path_len: %d, dim: %d" % (L, dim)], 0
    return ["finite: false"], 0


def cmd_hilbert(args, A):
    if args.truncate:
        args.cutoff = max(args.cutoff, args.truncate)
    B, M = _module(args, A)
    if M is None:
        H = hilbert_algebra_closed(A)
        if args.truncate:
            rows = []
            for x in A.vertices:
                for y in A.vertices:
                    co = H[(x, y)].coefficients(args.truncate)
                    rows.extend((x, y, d, co.get(d, 0)) for d in range(args.truncate + 1))
            return _table(args, ("source", "target", "degree", "value"), rows), 0
        rows = [(x, y, str(H[(x, y)])) for x in A.vertices for y in A.vertices]
        return _table(args, ("source", "target", "series"), rows) + ["total: %s" % H.total()], 0
    if args.truncate:
        try:
            data = hilbert_truncated(M, args.truncate)
        except ModuleError as e:
            raise InputError(str(e))
        return _table(args, ("degree", "value"), list(data.total().items())), 0
    r = hilbert_module_closed(M, args.cutoff)
    out = _table(args, ("vertex", "series"), [(v, str(s)) for v, s in r.per_vertex.items()])
    out.append("total: %s" % r.total)
    if not r.closed:
        out.append("# not closed: %s" % r.note)
    return out, 0


def _betti_rows(betti, B):
    return [(s, d, v, m) for s, v, d, m in betti.rows(B.vertices)]


def cmd_resolve(args, A):
    B, M = _module(args, A)
    res = minimal_projective_resolution(M, args.steps, args.cutoff)
    out = [format_free_complex(res.complex)] if res.complex.degrees() else ["(zero module)"]
    out.append("complete: %s" % str(res.betti.complete).lower())
    if res.betti.degree_bound is not None:
        out.append("certified internal degrees: <= %d" % res.betti.degree_bound)
    return out, 0


def cmd_coresolve(args, A):
    B, M = _module(args, A)
    co = minimal_injective_coresolution(M, args.steps, args.cutoff)
    out = [format_free_complex(co.complex)] if co.complex.degrees() else ["(zero module)"]
    out.append("complete: %s" % str(co.cobetti.complete).lower())
    if co.cobetti.degree_bound is not None:
        out.append("certified internal degrees: >= %d" % co.cobetti.degree_bound)
    return out, 0


def cmd_betti(args, A):
    B, M = _module(args, A)
    res = minimal_projective_resolution(M, args.steps, args.cutoff)
    out = _table(args, ("step", "degree", "vertex", "mult"), _betti_rows(res.betti, B))
    pd = res.betti.projective_dimension()
    out.append("# projective dimension: %s" % (pd if pd is not None else
                                                 "> %d or unknown" % res.betti.steps))
    if res.betti.degree_bound is not None:
        out.append("# certified internal degrees: <= %d" % res.betti.degree_bound)
    return out, 0


def cmd_poincare(args, A):
    B, M = _module(args, A)
    r = poincare_closed(M, args.steps, args.cutoff)
    out = _table(args, ("vertex", "series"), [(v, str(s)) for v, s in r.per_vertex.items()])
    out.append("total: %s" % r.total)
    if not r.closed:
        out.append("# not closed: %s" % r.note)
    return out, 0


def cmd_lindefect(args, A):
    B, M = _module(args, A)
    rep = linearity_defect(M, args.steps, args.cutoff)
    rows = [(k, status, ",".join("%s:%d:%d" % (v, d, n) for (v, d), n in sorted(h.items(),
                                                                                key=str)))
            for k, status, h in rep.table]
    out = _table(args, ("step", "linear part", "cohomology"), rows)
    out.append("linearity defect: %s" % rep.defect)
    out.append("certified: %s" % str(rep.certified).lower())
    if rep.structural_step is not None:
        out.append("syzygy %d splits into arrow ideals and projectives" % rep.structural_step)
    return out, 0


def cmd_koszul_check(args, A):
    rep = koszul_certificate(A, args.cutoff)
    lines, code = _report(rep)
    pd = rep.data["pd"]
    lines.append("projective dimension of simples: " +
                 ", ".join("%s=%s" % (x, pd[x] if pd[x] is not None else "inf") for x in A.vertices))
    lines.append("certified strands: <= %d" % rep.data["depth"])
    return lines, code


def cmd_kfunctor(args, A):
    B, M = _module(args, A)
    X = koszul_K(A, M, args.cutoff)
    out = [format_free_complex(X)] if X.degrees() else ["(zero complex)"]
    out.append("cohomology:")
    out += _table(args, ("degree", "vertex", "internal", "dim"), X.cohomology_table())
    return out, 0


def cmd_gfunctor(args, A):
    B, N = _module(args, A)
    X = cokoszul_G(A, N, args.cutoff)
    out = [format_free_complex(X)] if X.degrees() else ["(zero complex)"]
    return out, 0


def cmd_roundtrip(args, A):
    B, N = _module(args, A)
    if N.completeness != "exact":
        raise InputError("roundtrip needs a finite-dimensional module")
    return _report(roundtrip_check(A, N, args.cutoff))


def cmd_truncation(args, A):
    B, M = _module(args, A)
    res = find_linear_truncation(A, M, min(args.steps, 6), args.cutoff)
    out = ["r: %s" % res.r,
           "finite part dims: %s" % _dims(res.finite),
           "tail dims: %s" % _dims(res.tail)]
    lines, code = _report(res.certificate)
    return out + lines, code


def _dims(M):
    items = sorted(M.dims().items(), key=lambda kv: (kv[0][1], str(kv[0][0])))
    return "{" + ", ".join("(%s,%d): %d" % (v, d, n) for (v, d), n in items) + "}"


def cmd_reciprocity(args, A):
    data = bundled_dir()
    calib = [load_algebra(os.path.join(data, f)) for f in ("sl2.alg", "a3.alg")]
    variant = calibrate_reciprocity(calib, args.order)
    holds = holding_variants(A, args.order)
    rows = [(v, "yes" if v in holds else "no") for v in RECIPROCITY_VARIANTS]
    out = _table(args, ("product", "identity through degree %d" % args.order), rows)
    ok = variant in holds
    out.append("calibrated variant: %s" % variant)
    out.append("%s reciprocity" % ("PASS" if ok else "FAIL"))
    return out, 0 if ok else 1


COMMANDS = {
    "validate": cmd_validate, "dual": cmd_dual, "basis": cmd_basis, "dim": cmd_dim,
    "hilbert": cmd_hilbert, "resolve": cmd_resolve, "coresolve": cmd_coresolve,
    "betti": cmd_betti, "poincare": cmd_poincare, "lindefect": cmd_lindefect,
    "koszul-check": cmd_koszul_check, "kfunctor": cmd_kfunctor, "gfunctor": cmd_gfunctor,
    "roundtrip": cmd_roundtrip, "truncation": cmd_truncation, "reciprocity": cmd_reciprocity,
}


def run(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        with contextlib.redirect_stderr(err), contextlib.redirect_stdout(out):
            args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    if args.command == "suite":
        if args.corpus is not None and not os.path.isdir(args.corpus):
            print("koszulkit: %s is not a directory" % args.corpus, file=err)
            return 2
        cfg = QUICK if args.quick else SuiteConfig()
        try:
            return main_suite(args.corpus, args.seed, cfg, out, err)
        except AlgebraError as e:
            print("koszulkit: %s" % e, file=err)
            return 2
    try:
        A = _load(args.algebra)
        lines, code = COMMANDS[args.command](args, A)
    except InputError as e:
        print("koszulkit: %s" % e, file=err)
        return 2
    except (FunctorError, ModuleError, ExpressionError) as e:
        print("koszulkit: %s" % e, file=err)
        return 2
    out.write("\n".join(lines) + "\n")
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
