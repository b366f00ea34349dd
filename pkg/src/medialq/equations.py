"""Balanced functional equations: term AST, parser, catalogs, satisfaction.

Grammar for equation text:

    equation := term '=' term
    term     := VAR | OP '(' term ',' term ')'

A symbol used with parentheses is an operation, otherwise a variable;
whitespace is ignored.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Iterator, Union

from .errors import MedialqError, OrderTooLargeError
from .tables import QuasigroupTable

DEFAULT_SATISFIES_MAX_ORDER = 16
DEFAULT_SATISFIES_MAX_VARS = 4


class EquationError(MedialqError):
    pass


class EquationSyntaxError(EquationError):
    def __init__(self, position: int, message: str):
        self.position = position
        super().__init__(f"syntax error at position {position}: {message}")


class NotBalancedError(EquationError):
    def __init__(self, variable: str, side: str, count: int):
        self.variable = variable
        self.side = side
        self.count = count
        super().__init__(
            f"variable {variable!r} appears {count} times in {side} (expected 1)")


class AritySurpriseError(EquationError):
    def __init__(self, symbol: str):
        self.symbol = symbol
        super().__init__(f"symbol {symbol!r} is used both as variable and operation")


class UnboundSymbolError(EquationError):
    def __init__(self, symbol: str):
        self.symbol = symbol
        super().__init__(f"operation symbol {symbol!r} has no bound table")


class OrderMismatchError(EquationError):
    def __init__(self):
        super().__init__("all bound tables must have the same order")


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class App:
    op: str
    left: "Term"
    right: "Term"


Term = Union[Var, App]


def subterms(t: Term) -> Iterator[Term]:
    yield t
    if isinstance(t, App):
        yield from subterms(t.left)
        yield from subterms(t.right)


def term_vars(t: Term) -> tuple[str, ...]:
    """Variables in order of first appearance."""
    out: list[str] = []
    for s in subterms(t):
        if isinstance(s, Var) and s.name not in out:
            out.append(s.name)
    return tuple(out)


def term_ops(t: Term) -> tuple[str, ...]:
    out: list[str] = []
    for s in subterms(t):
        if isinstance(s, App) and s.op not in out:
            out.append(s.op)
    return tuple(out)


def term_text(t: Term) -> str:
    if isinstance(t, Var):
        return t.name
    return f"{t.op}({term_text(t.left)},{term_text(t.right)})"


def rename_vars(t: Term, mapping: dict[str, str]) -> Term:
    if isinstance(t, Var):
        return Var(mapping.get(t.name, t.name))
    return App(t.op, rename_vars(t.left, mapping), rename_vars(t.right, mapping))


@dataclass(frozen=True)
class BalancedEquation:
    """Two-sided equation in which each variable occurs once per side."""

    lhs: Term
    rhs: Term
    vars: tuple[str, ...] = field(init=False)
    ops: tuple[str, ...] = field(init=False)

    def __post_init__(self):
        for side_name, side, other in (("lhs", self.lhs, self.rhs),
                                       ("rhs", self.rhs, self.lhs)):
            counts: dict[str, int] = {}
            for s in subterms(side):
                if isinstance(s, Var):
                    counts[s.name] = counts.get(s.name, 0) + 1
            for v, c in counts.items():
                if c != 1:
                    raise NotBalancedError(v, side_name, c)
            for v in term_vars(other):
                if v not in counts:
                    raise NotBalancedError(v, side_name, 0)
        variables = term_vars(self.lhs)
        ops = term_ops(self.lhs)
        for o in term_ops(self.rhs):
            if o not in ops:
                ops = ops + (o,)
        object.__setattr__(self, "vars", variables)
        object.__setattr__(self, "ops", ops)

    @property
    def text(self) -> str:
        return f"{term_text(self.lhs)}={term_text(self.rhs)}"


_TOKEN = re.compile(r"\s*(?:(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<punct>[(),=]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if m is None:
            raise EquationSyntaxError(pos, f"unexpected character {text[pos]!r}")
        pos = m.end()
        if m.group("name") is not None:
            tokens.append(("name", m.group("name"), m.start("name")))
        else:
            tokens.append(("punct", m.group("punct"), m.start("punct")))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0
        self.roles: dict[str, str] = {}

    def _peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def _next(self, expect: str | None = None):
        tok = self._peek()
        if tok is None:
            raise EquationSyntaxError(len(self.text), "unexpected end of input")
        if expect is not None and tok[1] != expect:
            raise EquationSyntaxError(tok[2], f"expected {expect!r}, got {tok[1]!r}")
        self.i += 1
        return tok

    def _record(self, symbol: str, role: str):
        prev = self.roles.setdefault(symbol, role)
        if prev != role:
            raise AritySurpriseError(symbol)

    def term(self) -> Term:
        kind, value, pos = self._next()
        if kind != "name":
            raise EquationSyntaxError(pos, f"expected identifier, got {value!r}")
        nxt = self._peek()
        if nxt is not None and nxt[1] == "(":
            self._record(value, "op")
            self._next("(")
            left = self.term()
            self._next(",")
            right = self.term()
            self._next(")")
            return App(value, left, right)
        self._record(value, "var")
        return Var(value)

    def equation(self) -> BalancedEquation:
        lhs = self.term()
        self._next("=")
        rhs = self.term()
        tok = self._peek()
        if tok is not None:
            raise EquationSyntaxError(tok[2], f"trailing input {tok[1]!r}")
        return BalancedEquation(lhs, rhs)


def parse_equation(text: str) -> BalancedEquation:
    """Parse equation text; the balanced invariant is checked and enforced."""
    return _Parser(text).equation()


def is_belousov(eq: BalancedEquation) -> bool:
    """Every subterm's variable set on one side must occur as a subterm
    variable set on the other side, in both directions."""
    lhs_sets = {frozenset(term_vars(s)) for s in subterms(eq.lhs)}
    rhs_sets = {frozenset(term_vars(s)) for s in subterms(eq.rhs)}
    return lhs_sets == rhs_sets


@dataclass(frozen=True)
class Counterexample:
    """A falsifying variable assignment; truthiness is False by design."""

    assignment: tuple[tuple[str, int], ...]
    lhs_value: int
    rhs_value: int

    def __bool__(self) -> bool:
        return False


def _compile(term: Term, var_index: dict[str, int], tables: dict[str, tuple]):
    if isinstance(term, Var):
        i = var_index[term.name]
        return lambda a: a[i]
    left = _compile(term.left, var_index, tables)
    right = _compile(term.right, var_index, tables)
    t = tables[term.op]
    return lambda a: t[left(a)][right(a)]


def satisfies(eq: BalancedEquation, bindings: dict[str, QuasigroupTable], *,
              force: bool = False,
              max_order: int = DEFAULT_SATISFIES_MAX_ORDER,
              max_vars: int = DEFAULT_SATISFIES_MAX_VARS):
    """Brute-force satisfaction over all n**|vars| assignments.

    Returns True or the lexicographically first Counterexample (variables in
    order of first appearance in the LHS).
    """
    for op in eq.ops:
        if op not in bindings:
            raise UnboundSymbolError(op)
    orders = {bindings[op].order for op in eq.ops}
    if len(orders) != 1:
        raise OrderMismatchError()
    n = orders.pop()
    if not force and (n > max_order or len(eq.vars) > max_vars):
        raise OrderTooLargeError(
            f"order {n} with {len(eq.vars)} variables exceeds the brute-force "
            f"guard ({max_order}/{max_vars}); pass force=True to override")
    var_index = {v: i for i, v in enumerate(eq.vars)}
    tables = {op: bindings[op].cells for op in eq.ops}
    lhs = _compile(eq.lhs, var_index, tables)
    rhs = _compile(eq.rhs, var_index, tables)
    for assignment in itertools.product(range(n), repeat=len(eq.vars)):
        lv = lhs(assignment)
        rv = rhs(assignment)
        if lv != rv:
            return Counterexample(tuple(zip(eq.vars, assignment)), lv, rv)
    return True


# --- the two 24-equation catalogs -------------------------------------------

#: Label suffix for each RHS permutation of (x, y, u, v).  Suffixes with a
#: leading zero mark the Belousov entries; generation order is
#: itertools.permutations over (x, y, u, v).
PERMUTATION_LABELS: dict[tuple[str, str, str, str], str] = {
    ("x", "y", "u", "v"): "0",
    ("x", "y", "v", "u"): "00",
    ("x", "u", "y", "v"): "1",
    ("x", "u", "v", "y"): "2",
    ("x", "v", "y", "u"): "3",
    ("x", "v", "u", "y"): "4",
    ("y", "x", "u", "v"): "05",
    ("y", "x", "v", "u"): "06",
    ("y", "u", "x", "v"): "5",
    ("y", "u", "v", "x"): "6",
    ("y", "v", "x", "u"): "7",
    ("y", "v", "u", "x"): "8",
    ("u", "x", "y", "v"): "9",
    ("u", "x", "v", "y"): "10",
    ("u", "y", "x", "v"): "11",
    ("u", "y", "v", "x"): "12",
    ("u", "v", "x", "y"): "013",
    ("u", "v", "y", "x"): "014",
    ("v", "x", "y", "u"): "13",
    ("v", "x", "u", "y"): "14",
    ("v", "y", "x", "u"): "15",
    ("v", "y", "u", "x"): "16",
    ("v", "u", "x", "y"): "015",
    ("v", "u", "y", "x"): "016",
}

BELOUSOV_SUFFIXES = frozenset({"0", "00", "05", "06", "013", "014", "015", "016"})
COMMUTATIVITY_SUFFIXES = frozenset({"00", "05", "06", "013", "014", "015"})

#: Composition pair; under the right-to-left convention ("rl") the pair
#: (A, B) denotes the mapping x -> A(B(x)).
Relation = tuple[tuple[str, str], tuple[str, str]]
RelationSet = tuple[Relation, Relation, Relation, Relation]

#: Commutation relation sets for the non-Belousov pair equations (medial
#: pair, paramedial pair, and the fourteen mixed cases), kept as fixed data
#: so they can be checked against the symbolic derivation rather than
#: generated by it.  Which composition convention the pairs denote is
#: settled by relation_convention().
RELATION_SETS: dict[str, RelationSet] = {
    "2-1": ((("phi1", "psi2"), ("psi2", "phi1")),
            (("phi2", "psi1"), ("psi1", "phi2")),
            (("psi1", "psi2"), ("psi2", "psi1")),
            (("phi1", "phi2"), ("phi2", "phi1"))),
    "2-2": ((("phi1", "phi2"), ("phi2", "phi1")),
            (("phi1", "psi2"), ("psi2", "psi1")),
            (("psi1", "phi2"), ("phi2", "psi1")),
            (("psi1", "psi2"), ("psi2", "phi1"))),
    "2-3": ((("phi1", "phi2"), ("phi2", "phi1")),
            (("phi1", "psi2"), ("psi2", "phi1")),
            (("psi1", "phi2"), ("psi2", "psi1")),
            (("psi1", "psi2"), ("phi2", "psi1"))),
    "2-4": ((("phi1", "phi2"), ("phi2", "phi1")),
            (("phi1", "psi2"), ("psi2", "psi1")),
            (("psi1", "phi2"), ("psi2", "phi1")),
            (("psi1", "psi2"), ("phi2", "psi1"))),
    "2-5": ((("phi1", "phi2"), ("psi2", "phi1")),
            (("phi1", "psi2"), ("phi2", "phi1")),
            (("psi1", "phi2"), ("phi2", "psi1")),
            (("psi1", "psi2"), ("psi2", "psi1"))),
    "2-6": ((("phi1", "phi2"), ("psi2", "psi1")),
            (("phi1", "psi2"), ("phi2", "phi1")),
            (("psi1", "phi2"), ("phi2", "psi1")),
            (("psi1", "psi2"), ("psi2", "phi1"))),
    "2-7": ((("phi1", "phi2"), ("psi2", "phi1")),
            (("phi1", "psi2"), ("phi2", "phi1")),
            (("psi1", "phi2"), ("psi2", "psi1")),
            (("psi1", "psi2"), ("phi2", "psi1"))),
    "2-8": ((("phi1", "phi2"), ("psi2", "psi1")),
            (("phi1", "psi2"), ("phi2", "phi1")),
            (("psi1", "phi2"), ("psi2", "phi1")),
            (("psi1", "psi2"), ("phi2", "psi1"))),
    "2-9": ((("phi1", "phi2"), ("phi2", "psi1")),
            (("phi1", "psi2"), ("psi2", "phi1")),
            (("psi1", "phi2"), ("phi2", "phi1")),
            (("psi1", "psi2"), ("psi2", "psi1"))),
    "2-10": ((("phi1", "phi2"), ("phi2", "psi1")),
             (("phi1", "psi2"), ("psi2", "psi1")),
             (("psi1", "phi2"), ("phi2", "phi1")),
             (("psi1", "psi2"), ("psi2", "phi1"))),
    "2-11": ((("phi1", "phi2"), ("psi2", "phi1")),
             (("phi1", "psi2"), ("phi2", "psi1")),
             (("psi1", "phi2"), ("phi2", "phi1")),
             (("psi1", "psi2"), ("psi2", "psi1"))),
    "2-12": ((("phi1", "phi2"), ("psi2", "psi1")),
             (("phi1", "psi2"), ("phi2", "psi1")),
             (("psi1", "phi2"), ("phi2", "phi1")),
             (("psi1", "psi2"), ("psi2", "phi1"))),
    "2-13": ((("phi1", "phi2"), ("phi2", "psi1")),
             (("phi1", "psi2"), ("psi2", "phi1")),
             (("psi1", "phi2"), ("psi2", "psi1")),
             (("psi1", "psi2"), ("phi2", "phi1"))),
    "2-14": ((("phi1", "phi2"), ("phi2", "psi1")),
             (("phi1", "psi2"), ("psi2", "psi1")),
             (("psi1", "phi2"), ("psi2", "phi1")),
             (("psi1", "psi2"), ("phi2", "phi1"))),
    "2-15": ((("phi1", "phi2"), ("psi2", "phi1")),
             (("phi1", "psi2"), ("phi2", "psi1")),
             (("psi1", "phi2"), ("psi2", "psi1")),
             (("psi1", "psi2"), ("phi2", "phi1"))),
    "2-16": ((("phi1", "phi2"), ("psi2", "psi1")),
             (("phi2", "phi1"), ("psi1", "psi2")),
             (("phi1", "psi2"), ("phi2", "psi1")),
             (("psi1", "phi2"), ("psi2", "phi1"))),
}


def derive_relation_set(perm: tuple[str, str, str, str]) -> RelationSet:
    """Re-derive the commutation relations for a pair equation symbolically.

    Substituting f(x,y)=phi1(x)+psi1(y)+c1 and g(x,y)=phi2(x)+psi2(y)+c2 into
    f(g(x,y),g(u,v)) = g(f(a,b),f(c,d)) and matching the coefficient of each
    variable gives one relation per variable.  All compositions here are in
    right-to-left ("rl") order.
    """
    lhs_coeff = {"x": ("phi1", "phi2"), "y": ("phi1", "psi2"),
                 "u": ("psi1", "phi2"), "v": ("psi1", "psi2")}
    rhs_pos_coeff = (("phi2", "phi1"), ("phi2", "psi1"),
                     ("psi2", "phi1"), ("psi2", "psi1"))
    rhs_coeff = {var: rhs_pos_coeff[i] for i, var in enumerate(perm)}
    return tuple((lhs_coeff[v], rhs_coeff[v]) for v in ("x", "y", "u", "v"))


def _normalize_relations(relations: RelationSet) -> frozenset:
    return frozenset(frozenset(rel) for rel in relations)


def relation_convention(label: str) -> str:
    """Which composition convention makes the stored relation table for
    ``label`` agree with the symbolic re-derivation: "rl" or "lr".

    A mismatch under both conventions means the stored table is wrong and is
    a build failure.
    """
    perm = next(p for p, s in PERMUTATION_LABELS.items() if f"2-{s}" == label)
    derived = _normalize_relations(derive_relation_set(perm))
    stored = RELATION_SETS[label]
    if _normalize_relations(stored) == derived:
        return "rl"
    flipped = tuple(((a[1], a[0]), (b[1], b[0])) for a, b in stored)
    if _normalize_relations(flipped) == derived:
        return "lr"
    raise MedialqError(f"stored relation table for {label} matches neither "
                       f"composition convention; transcription is wrong")


@dataclass(frozen=True)
class CatalogEntry:
    label: str
    equation: BalancedEquation
    rhs_permutation: tuple[str, str, str, str]
    belousov: bool
    classification: str
    relations: RelationSet | None = None


def _nested(op_outer: str, op_inner: str,
            names: tuple[str, str, str, str]) -> Term:
    a, b, c, d = (Var(v) for v in names)
    return App(op_outer, App(op_inner, a, b), App(op_inner, c, d))


def _classify_single(suffix: str) -> str:
    if suffix == "0":
        return "trivial"
    if suffix in COMMUTATIVITY_SUFFIXES:
        return "commutativity"
    if suffix == "1":
        return "medial"
    if suffix == "16":
        return "paramedial"
    if suffix == "016":
        return "palindromic4"
    return "commutativeT"


def single_catalog() -> list[CatalogEntry]:
    """The 24 one-operation equations f(f(x,y),f(u,v)) = f(f(.,.),f(.,.))."""
    entries = []
    for perm in itertools.permutations(("x", "y", "u", "v")):
        suffix = PERMUTATION_LABELS[perm]
        eq = BalancedEquation(_nested("f", "f", ("x", "y", "u", "v")),
                              _nested("f", "f", perm))
        entries.append(CatalogEntry(
            label=f"1-{suffix}",
            equation=eq,
            rhs_permutation=perm,
            belousov=suffix in BELOUSOV_SUFFIXES,
            classification=_classify_single(suffix),
        ))
    return entries


def _classify_pair(suffix: str) -> str:
    if suffix in BELOUSOV_SUFFIXES:
        return "belousov"
    if suffix == "1":
        return "medialPair"
    if suffix == "16":
        return "paramedialPair"
    return "mainTheorem"


def pair_catalog() -> list[CatalogEntry]:
    """The 24 two-operation equations f(g(x,y),g(u,v)) = g(f(.,.),f(.,.))."""
    entries = []
    for perm in itertools.permutations(("x", "y", "u", "v")):
        suffix = PERMUTATION_LABELS[perm]
        label = f"2-{suffix}"
        eq = BalancedEquation(_nested("f", "g", ("x", "y", "u", "v")),
                              _nested("g", "f", perm))
        entries.append(CatalogEntry(
            label=label,
            equation=eq,
            rhs_permutation=perm,
            belousov=suffix in BELOUSOV_SUFFIXES,
            classification=_classify_pair(suffix),
            relations=RELATION_SETS.get(label),
        ))
    return entries


def catalog_entry(label: str) -> CatalogEntry:
    catalog = single_catalog() if label.startswith("1-") else pair_catalog()
    for entry in catalog:
        if entry.label == label:
            return entry
    raise MedialqError(f"unknown catalog label {label!r}")
