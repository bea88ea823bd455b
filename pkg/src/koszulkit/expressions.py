"""Module expression mini-language.

::

    E := S(v) | P(v) | I(v) | L(a) | C(a)
       | shift(E, i) | sum(E, E) | truncle(E, r) | truncge(E, r)
       | coker(targets; rows) | ker(cogenerators; rows)

``coker`` is the cokernel of a map into ``P^0 = sum P_v<j>`` listed as
``v`` or ``v<j>``; rows are separated by ``|``, entries by ``,``, and each
entry is ``0`` or a sum of terms ``c*w`` with ``w`` a dotted word such as
``alpha.beta`` (``e_v`` is the trivial word).  The source generator of each
column is read off from its nonzero entries.  ``ker`` is dual: rows are the
listed cogenerators of ``I^0``, columns the inferred cogenerators of ``I^1``,
and M is the kernel of ``I^0 -> I^1``.
"""

import re
from fractions import Fraction

from .complexes import ComplexError, FreeComplex, PROJECTIVE, INJECTIVE
from .modules import (arrow_coideal, arrow_ideal, cokernel, direct_sum, injective_module,
                      kernel, projective_module, shift, simple_module, truncate)


class ExpressionError(ValueError):
    pass


class _Parser:
    def __init__(self, A, text, cutoff):
        self.A, self.text, self.pos, self.cutoff = A, text, 0, cutoff

    def error(self, msg):
        raise ExpressionError("%s at position %d in %r" % (msg, self.pos, self.text))

    def expect(self, sym):
        m = re.compile(r"\s*").match(self.text, self.pos)
        p = m.end()
        if not self.text.startswith(sym, p):
            self.pos = p
            self.error("expected %r" % sym)
        self.pos = p + len(sym)

    def name(self):
        m = re.compile(r"\s*([A-Za-z0-9_]+)").match(self.text, self.pos)
        if not m:
            self.error("expected identifier")
        self.pos = m.end()
        return m.group(1)

    def integer(self):
        m = re.compile(r"\s*([+-]?[0-9]+)").match(self.text, self.pos)
        if not m:
            self.error("expected integer")
        self.pos = m.end()
        return int(m.group(1))

    def raw_until(self, stop):
        """Text up to the matching ``stop`` at nesting depth zero."""
        depth, p = 0, self.pos
        while p < len(self.text):
            ch = self.text[p]
            if ch == "(":
                depth += 1
            elif ch == ")":
                if depth == 0 and stop == ")":
                    break
                depth -= 1
            elif ch == stop and depth == 0:
                break
            p += 1
        if p >= len(self.text):
            self.error("unterminated argument")
        out = self.text[self.pos:p]
        self.pos = p
        return out

    def vertex(self):
        v = self.name()
        if v not in self.A.quiver.vertex_index:
            self.error("unknown vertex %r" % v)
        return v

    def arrow(self):
        a = self.name()
        if a not in self.A.quiver.arrow:
            self.error("unknown arrow %r" % a)
        return a

    def expr(self):
        head = self.name()
        self.expect("(")
        A, c = self.A, self.cutoff
        if head == "S":
            M = simple_module(A, self.vertex())
        elif head == "P":
            M = projective_module(A, self.vertex(), 0, c)
        elif head == "I":
            M = injective_module(A, self.vertex(), 0, c)
        elif head == "L":
            M = arrow_ideal(A, self.arrow(), c)
        elif head == "C":
            M = arrow_coideal(A, self.arrow(), c)
        elif head == "shift":
            E = self.expr()
            self.expect(",")
            M = shift(E, self.integer())
        elif head == "sum":
            E = self.expr()
            self.expect(",")
            M = direct_sum(E, self.expr())
        elif head in ("truncle", "truncge"):
            E = self.expr()
            self.expect(",")
            r = self.integer()
            if head == "truncle":
                M = truncate(E, r, "le").quotient
            else:
                M = truncate(E, r - 1, "le").sub
        elif head in ("coker", "ker"):
            gens = self.raw_until(";")
            self.expect(";")
            body = self.raw_until(")")
            M = presented_module(A, gens, body, head, c)
        else:
            self.error("unknown constructor %r" % head)
        self.expect(")")
        return M


def parse_module(A, text, cutoff=None):
    p = _Parser(A, text, cutoff)
    M = p.expr()
    if p.pos != len(text) and text[p.pos:].strip():
        p.error("trailing input")
    M.info.setdefault("expression", text.strip())
    return M


_GEN = re.compile(r"^\s*([A-Za-z0-9_]+)\s*(?:<\s*([+-]?[0-9]+)\s*>)?\s*$")


def _parse_generators(A, text):
    out = []
    for part in text.split(","):
        m = _GEN.match(part)
        if not m:
            raise ExpressionError("bad generator %r" % part.strip())
        v = m.group(1)
        if v not in A.quiver.vertex_index:
            raise ExpressionError("unknown vertex %r" % v)
        out.append((v, int(m.group(2) or 0)))
    return out


def _parse_word(A, text):
    if text.startswith("e_") and text[2:] in A.quiver.vertex_index:
        return text[2:], text[2:], ()
    arrows = tuple(text.split("."))
    for a in arrows:
        if a not in A.quiver.arrow:
            raise ExpressionError("unknown arrow %r" % a)
    try:
        w = A.word(arrows)
    except ValueError as e:
        raise ExpressionError(str(e))
    if not A.is_nonzero(arrows):
        return None
    return w.source, w.target, arrows


_ENTRY_TERM = re.compile(r"\s*([+-]?)\s*(?:([+-]?[0-9]+(?:/[0-9]+)?)\s*\*\s*)?([A-Za-z0-9_.]+)\s*")


def _parse_entry(A, text):
    """Entry text -> list of (coefficient, source, target, arrows); zero words dropped."""
    text = text.strip()
    if text in ("", "0"):
        return []
    out, pos = [], 0
    while pos < len(text):
        m = _ENTRY_TERM.match(text, pos)
        if not m or (pos and not m.group(1)):
            raise ExpressionError("bad term at %r" % text[pos:])
        pos = m.end()
        coeff = Fraction(m.group(2) or 1) * (-1 if m.group(1) == "-" else 1)
        w = _parse_word(A, m.group(3))
        if w is not None and coeff:
            out.append((coeff, w[0], w[1], w[2]))
    return out


def presented_module(A, gens_text, body, kind, cutoff=None):
    listed = _parse_generators(A, gens_text)
    rows = [r for r in body.split("|")]
    if len(rows) != len(listed):
        raise ExpressionError("%d rows for %d listed generators" % (len(rows), len(listed)))
    cells = [[_parse_entry(A, e) for e in r.split(",")] for r in rows]
    ncols = {len(r) for r in cells}
    if len(ncols) != 1:
        raise ExpressionError("rows have different lengths")
    ncols = ncols.pop()
    inferred, entries = [], {}
    for k in range(ncols):
        gen = None
        for i, (v, j) in enumerate(listed):
            for coeff, src, tgt, arrows in cells[i][k]:
                if kind == "coker":
                    if src != v:
                        raise ExpressionError("entry %s in row %d does not start at %s"
                                              % (".".join(arrows), i + 1, v))
                    g = (tgt, j + len(arrows))
                else:
                    if tgt != v:
                        raise ExpressionError("entry %s in row %d does not end at %s"
                                              % (".".join(arrows), i + 1, v))
                    g = (src, j - len(arrows))
                if gen is not None and g != gen:
                    raise ExpressionError("column %d mixes generators %s and %s" % (k + 1, gen, g))
                gen = g
                cell = entries.setdefault((i, k), {})
                cell[arrows] = cell.get(arrows, 0) + coeff
        if gen is None:
            raise ExpressionError("column %d is zero" % (k + 1))
        inferred.append(gen)
    if kind == "coker":
        X = FreeComplex(A, PROJECTIVE, {-1: inferred, 0: listed}, {-1: entries})
        _validate(X)
        mc = X.expand(cutoff)
        M, _ = cokernel(mc.diff(-1), "coker")
        M.info["presentation"] = (tuple(listed), tuple(inferred), entries)
    else:
        flipped = {(k, i): e for (i, k), e in entries.items()}
        X = FreeComplex(A, INJECTIVE, {0: listed, 1: inferred}, {0: flipped})
        _validate(X)
        mc = X.expand(cutoff)
        M, _ = kernel(mc.diff(0), "ker")
        M.info["copresentation"] = (tuple(listed), tuple(inferred), flipped)
    return M


def _validate(X):
    try:
        X.validate()
    except ComplexError as e:
        raise ExpressionError(str(e))
