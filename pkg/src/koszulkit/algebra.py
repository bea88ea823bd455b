"""Quivers and quadratic monomial algebras.

Words are read left to right: the word ``(a, b)`` traverses ``a`` and then
``b``, so it is composable when ``target(a) == source(b)``.  A relation
``(a, b)`` declares that word zero.
"""

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product


class AlgebraError(ValueError):
    """Malformed algebra data; carries the offending line when parsed from text."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = "line %d: %s" % (line, message)
        super().__init__(message)


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


@dataclass(frozen=True)
class Quiver:
    vertices: tuple
    arrows: tuple  # of Arrow, in declaration order

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise AlgebraError("duplicate vertex identifier")
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise AlgebraError("duplicate arrow identifier")
        if set(names) & set(self.vertices):
            raise AlgebraError("identifier used for both a vertex and an arrow")
        vs = set(self.vertices)
        for a in self.arrows:
            if a.source not in vs or a.target not in vs:
                raise AlgebraError("arrow %s has an unknown endpoint" % a.name)

    @cached_property
    def arrow(self):
        return {a.name: a for a in self.arrows}

    @cached_property
    def arrow_index(self):
        return {a.name: i for i, a in enumerate(self.arrows)}

    @cached_property
    def vertex_index(self):
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def outgoing(self):
        out = {v: [] for v in self.vertices}
        for a in self.arrows:
            out[a.source].append(a.name)
        return {v: tuple(xs) for v, xs in out.items()}

    @cached_property
    def incoming(self):
        inc = {v: [] for v in self.vertices}
        for a in self.arrows:
            inc[a.target].append(a.name)
        return {v: tuple(xs) for v, xs in inc.items()}

    def composable(self, a, b):
        return self.arrow[a].target == self.arrow[b].source

    def composable_pairs(self):
        return [(a.name, b.name) for a, b in product(self.arrows, repeat=2)
                if a.target == b.source]


@dataclass(frozen=True)
class Word:
    """A path in the quiver; ``arrows == ()`` is the trivial path at ``source``."""

    source: str
    target: str
    arrows: tuple = ()

    @property
    def degree(self):
        return len(self.arrows)

    def __str__(self):
        if not self.arrows:
            return "e_%s" % self.source
        return ".".join(self.arrows)

    def sort_key(self):
        return (len(self.arrows), self.arrows, self.source)


@dataclass(frozen=True)
class MonomialAlgebra:
    """Path algebra of ``quiver`` modulo the length-2 words in ``relations``."""

    quiver: Quiver
    relations: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "relations", frozenset(tuple(r) for r in self.relations))
        arrows = self.quiver.arrow
        for a, b in self.relations:
            if a not in arrows or b not in arrows:
                raise AlgebraError("relation %s %s mentions an unknown arrow" % (a, b))
            if not self.quiver.composable(a, b):
                raise AlgebraError("relation not composable: %s %s" % (a, b))

    @property
    def vertices(self):
        return self.quiver.vertices

    @property
    def arrows(self):
        return self.quiver.arrows

    def arrow(self, name):
        return self.quiver.arrow[name]

    @cached_property
    def sorted_relations(self):
        idx = self.quiver.arrow_index
        return tuple(sorted(self.relations, key=lambda r: (idx[r[0]], idx[r[1]])))

    @cached_property
    def allowed_graph(self):
        """0/1 matrix over arrows: entry (a, b) is 1 iff a then b is a nonzero word."""
        arrows = self.quiver.arrows
        return tuple(tuple(int(a.target == b.source and (a.name, b.name) not in self.relations)
                           for b in arrows) for a in arrows)

    @cached_property
    def zero_graph(self):
        """0/1 matrix over arrows: entry (a, b) is 1 iff (a, b) is a relation."""
        arrows = self.quiver.arrows
        return tuple(tuple(int((a.name, b.name) in self.relations) for b in arrows)
                     for a in arrows)

    @cached_property
    def allowed_successors(self):
        """Arrow name -> arrows that may follow it in a nonzero word."""
        out = {}
        for a in self.quiver.arrows:
            out[a.name] = tuple(b for b in self.quiver.outgoing[a.target]
                                if (a.name, b) not in self.relations)
        return out

    @cached_property
    def zero_successors(self):
        """Arrow name -> arrows ``b`` with ``(a, b)`` a relation."""
        out = {}
        for a in self.quiver.arrows:
            out[a.name] = tuple(b for b in self.quiver.outgoing[a.target]
                                if (a.name, b) in self.relations)
        return out

    @cached_property
    def allowed_predecessors(self):
        out = {}
        for b in self.quiver.arrows:
            out[b.name] = tuple(a for a in self.quiver.incoming[b.source]
                                if (a, b.name) not in self.relations)
        return out

    @cached_property
    def finite_dim(self):
        return _is_acyclic(self.allowed_successors)

    def is_nonzero(self, arrows):
        return all((a, b) not in self.relations for a, b in zip(arrows, arrows[1:]))

    def word(self, arrows, vertex=None):
        """Build a Word from arrow names; ``vertex`` is needed for the trivial word."""
        arrows = tuple(arrows)
        if not arrows:
            if vertex is None:
                raise ValueError("trivial word needs a vertex")
            return Word(vertex, vertex, ())
        q = self.quiver
        for a, b in zip(arrows, arrows[1:]):
            if not q.composable(a, b):
                raise ValueError("arrows %s, %s are not composable" % (a, b))
        return Word(q.arrow[arrows[0]].source, q.arrow[arrows[-1]].target, arrows)

    def words_from(self, vertex, length):
        """Nonzero words of the given length starting at ``vertex``, sorted."""
        if length == 0:
            return [Word(vertex, vertex, ())]
        out = []
        for w in self._arrow_words(length):
            if self.arrow(w[0]).source == vertex:
                out.append(Word(vertex, self.arrow(w[-1]).target, w))
        return out

    def words_into(self, vertex, length):
        """Nonzero words of the given length ending at ``vertex``, sorted."""
        if length == 0:
            return [Word(vertex, vertex, ())]
        out = []
        for w in self._arrow_words(length):
            if self.arrow(w[-1]).target == vertex:
                out.append(Word(self.arrow(w[0]).source, vertex, w))
        return out

    def words_between(self, x, y, length):
        """Nonzero words of the given length from x to y, sorted."""
        cache = self.__dict__.setdefault("_between_cache", {})
        key = (x, y, length)
        if key not in cache:
            if length < 0:
                cache[key] = ()
            elif length == 0:
                cache[key] = (Word(x, x, ()),) if x == y else ()
            else:
                cache[key] = tuple(w for w in self.words_from(x, length) if w.target == y)
        return cache[key]

    def _arrow_words(self, length):
        cache = self.__dict__.setdefault("_word_cache", {})
        if length not in cache:
            if length == 1:
                cache[1] = tuple((a.name,) for a in self.quiver.arrows)
            else:
                prev = self._arrow_words(length - 1)
                succ = self.allowed_successors
                cache[length] = tuple(w + (b,) for w in prev for b in succ[w[-1]])
        return cache[length]

    def max_word_length(self):
        """Longest nonzero word length, or None when the algebra is infinite-dimensional."""
        if not self.finite_dim:
            return None
        if not self.quiver.arrows:
            return 0
        # longest path in the acyclic allowed graph, counted in arrows
        memo = {}

        def longest(a):
            if a not in memo:
                memo[a] = 1 + max((longest(b) for b in self.allowed_successors[a]), default=0)
            return memo[a]

        return max(longest(a.name) for a in self.quiver.arrows)


def _is_acyclic(succ):
    state = {}

    for start in succ:
        if start in state:
            continue
        stack = [(start, iter(succ[start]))]
        state[start] = 1
        while stack:
            node, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                state[node] = 2
                stack.pop()
            elif state.get(nxt) == 1:
                return False
            elif nxt not in state:
                state[nxt] = 1
                stack.append((nxt, iter(succ[nxt])))
    return True


# --- construction -----------------------------------------------------------

def make_algebra(vertices, arrows, relations=()):
    """Convenience constructor: arrows as (name, source, target) triples."""
    quiver = Quiver(tuple(vertices), tuple(Arrow(*a) for a in arrows))
    return MonomialAlgebra(quiver, frozenset(tuple(r) for r in relations))


def parse_algebra(text):
    """Parse the line-oriented algebra format.

    ``vertex <id>``, ``arrow <id> <source> <target>``, ``relation <a> <b>``;
    ``#`` starts a comment.
    """
    vertices, arrows, relations = [], [], []
    seen_v, seen_a = set(), {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        kind = parts[0]
        if kind == "vertex":
            if len(parts) != 2:
                raise AlgebraError("expected 'vertex <id>'", lineno)
            v = parts[1]
            if v in seen_v or v in seen_a:
                raise AlgebraError("duplicate identifier %s" % v, lineno)
            seen_v.add(v)
            vertices.append(v)
        elif kind == "arrow":
            if len(parts) != 4:
                raise AlgebraError("expected 'arrow <id> <source> <target>'", lineno)
            name, s, t = parts[1:]
            if name in seen_a or name in seen_v:
                raise AlgebraError("duplicate identifier %s" % name, lineno)
            for v in (s, t):
                if v not in seen_v:
                    raise AlgebraError("unknown endpoint %s of arrow %s" % (v, name), lineno)
            seen_a[name] = (s, t)
            arrows.append((name, s, t))
        elif kind == "relation":
            if len(parts) != 3:
                raise AlgebraError("expected 'relation <arrowA> <arrowB>'", lineno)
            a, b = parts[1:]
            for x in (a, b):
                if x not in seen_a:
                    raise AlgebraError("unknown arrow %s in relation" % x, lineno)
            if seen_a[a][1] != seen_a[b][0]:
                raise AlgebraError("relation not composable: %s %s" % (a, b), lineno)
            if (a, b) in relations:
                raise AlgebraError("duplicate relation %s %s" % (a, b), lineno)
            relations.append((a, b))
        else:
            raise AlgebraError("syntax error: unknown directive %r" % kind, lineno)
    return make_algebra(vertices, arrows, relations)


def format_algebra(A):
    """Canonical serialization, lines in declaration order."""
    lines = ["vertex %s" % v for v in A.vertices]
    lines += ["arrow %s %s %s" % (a.name, a.source, a.target) for a in A.arrows]
    lines += ["relation %s %s" % r for r in A.sorted_relations]
    return "\n".join(lines) + "\n"


# --- operations -------------------------------------------------------------

def dual_arrow_name(name):
    return name + "_op"


def koszul_dual(A):
    """Quadratic dual: opposite quiver, relations dual to the allowed words of A."""
    arrows = [(dual_arrow_name(a.name), a.target, a.source) for a in A.arrows]
    rels = [(dual_arrow_name(b), dual_arrow_name(a))
            for a, b in A.quiver.composable_pairs() if (a, b) not in A.relations]
    return make_algebra(A.vertices, arrows, rels)


def opposite_algebra(A):
    """Opposite algebra: arrows reversed (same names), words read backwards."""
    arrows = [(a.name, a.target, a.source) for a in A.arrows]
    return make_algebra(A.vertices, arrows, [(b, a) for a, b in A.relations])


def multiply_words(A, p, q):
    """Product ``p * q`` (traverse p then q), or None when it vanishes."""
    if p.target != q.source:
        return None
    if p.arrows and q.arrows and (p.arrows[-1], q.arrows[0]) in A.relations:
        return None
    return Word(p.source, q.target, p.arrows + q.arrows)


def count_paths(A, x, y, n):
    """Number of nonzero words of length n from x to y (transfer-matrix powers)."""
    if n == 0:
        return int(x == y)
    arrows = A.quiver.arrows
    vec = [int(a.source == x) for a in arrows]
    G = A.allowed_graph
    for _ in range(n - 1):
        vec = [sum(vec[i] for i in range(len(arrows)) if G[i][j]) for j in range(len(arrows))]
    return sum(c for c, a in zip(vec, arrows) if a.target == y)


def path_count_table(A, n):
    """Matrix (vertex x vertex) of path counts of length n."""
    return [[count_paths(A, x, y, n) for y in A.vertices] for x in A.vertices]


def is_finite_dimensional(A):
    """(finite?, longest nonzero word length, total dimension)."""
    if not A.finite_dim:
        return False, None, None
    L = A.max_word_length()
    total = sum(count_paths(A, x, y, n) for n in range(L + 1)
                for x in A.vertices for y in A.vertices)
    return True, L, total


def is_radical_square_zero(A):
    return not any(any(r) for r in A.allowed_graph)
