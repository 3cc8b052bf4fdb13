"""Formulas, parsing, matrix evaluation, consequence, and VSP scanning.

The connectives are & (meet), | (join), * (fusion) and ~ (neg); the arrow is
defined, x -> y = ~(x * ~y), and is desugared at parse time.  Consequence is
finitary matrix consequence over a list of algebras: premises designated at a
valuation must force the conclusion designated.
"""

from __future__ import annotations

import heapq
import re
from dataclasses import dataclass
from itertools import product

from .algebra import arrow
from .errors import ParseError, SizeCapExceeded, UnboundVariable

DEFAULT_VALUATION_CAP = 10**7


# ---------------------------------------------------------------------------
# Formulas
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Formula:
    def variables(self):
        raise NotImplementedError

    def size(self):
        """Number of tree nodes, variable occurrences included."""
        raise NotImplementedError

    def connective_count(self):
        raise NotImplementedError

    def substitute(self, mapping):
        raise NotImplementedError


@dataclass(frozen=True)
class Var(Formula):
    name: str

    def variables(self):
        return frozenset((self.name,))

    def size(self):
        return 1

    def connective_count(self):
        return 0

    def substitute(self, mapping):
        return mapping.get(self.name, self)

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Not(Formula):
    arg: Formula

    def variables(self):
        return self.arg.variables()

    def size(self):
        return 1 + self.arg.size()

    def connective_count(self):
        return 1 + self.arg.connective_count()

    def substitute(self, mapping):
        return Not(self.arg.substitute(mapping))

    def __str__(self):
        inner = str(self.arg)
        if isinstance(self.arg, (Var, Not)):
            return f"~{inner}"
        return f"~({inner})"


@dataclass(frozen=True)
class _Binary(Formula):
    left: Formula
    right: Formula

    SYMBOL = "?"
    PRECEDENCE = 0

    def variables(self):
        return self.left.variables() | self.right.variables()

    def size(self):
        return 1 + self.left.size() + self.right.size()

    def connective_count(self):
        return 1 + self.left.connective_count() + self.right.connective_count()

    def substitute(self, mapping):
        return type(self)(self.left.substitute(mapping),
                          self.right.substitute(mapping))

    def __str__(self):
        def wrap(child, strict):
            prec = getattr(child, "PRECEDENCE", 9)
            if prec < self.PRECEDENCE or (strict and prec == self.PRECEDENCE):
                return f"({child})"
            return str(child)

        return f"{wrap(self.left, False)} {self.SYMBOL} {wrap(self.right, True)}"


@dataclass(frozen=True)
class And(_Binary):
    SYMBOL = "&"
    PRECEDENCE = 2


@dataclass(frozen=True)
class Or(_Binary):
    SYMBOL = "|"
    PRECEDENCE = 1


@dataclass(frozen=True)
class Fuse(_Binary):
    SYMBOL = "*"
    PRECEDENCE = 3


def arrow_formula(antecedent, consequent):
    """The defined implication: x -> y stands for ~(x * ~y)."""
    return Not(Fuse(antecedent, Not(consequent)))


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

_TOKEN_RE = re.compile(r"\s*(->|[a-z][a-z0-9_]*|[~*&|()])")


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            if text[pos:].strip():
                raise ParseError(f"unexpected character {text[pos:].strip()[0]!r}",
                                 position=pos)
            break
        tokens.append((match.group(1), match.start(1)))
        pos = match.end()
    return tokens


def parse_formula(text):
    """Parse with precedence ~ > * > & > | > ->, right-associative arrow."""
    tokens = _tokenize(text)
    index = 0

    def peek():
        return tokens[index][0] if index < len(tokens) else None

    def advance():
        nonlocal index
        token = tokens[index]
        index += 1
        return token

    def expect(symbol):
        if peek() != symbol:
            at = tokens[index][1] if index < len(tokens) else len(text)
            raise ParseError(f"expected {symbol!r}", position=at)
        advance()

    def parse_arrow():
        left = parse_or()
        if peek() == "->":
            advance()
            right = parse_arrow()
            return arrow_formula(left, right)
        return left

    def parse_or():
        node = parse_and()
        while peek() == "|":
            advance()
            node = Or(node, parse_and())
        return node

    def parse_and():
        node = parse_fuse()
        while peek() == "&":
            advance()
            node = And(node, parse_fuse())
        return node

    def parse_fuse():
        node = parse_unary()
        while peek() == "*":
            advance()
            node = Fuse(node, parse_unary())
        return node

    def parse_unary():
        token = peek()
        if token == "~":
            advance()
            return Not(parse_unary())
        if token == "(":
            advance()
            node = parse_arrow()
            expect(")")
            return node
        if token is None:
            raise ParseError("unexpected end of formula", position=len(text))
        if re.fullmatch(r"[a-z][a-z0-9_]*", token):
            advance()
            return Var(token)
        at = tokens[index][1]
        raise ParseError(f"unexpected token {token!r}", position=at)

    node = parse_arrow()
    if index != len(tokens):
        raise ParseError(f"trailing input {tokens[index][0]!r}",
                         position=tokens[index][1])
    return node


def parse_premises(text):
    """Comma-separated formula list; empty/whitespace text means no premises."""
    if not text or not text.strip():
        return []
    return [parse_formula(part) for part in text.split(",")]


# ---------------------------------------------------------------------------
# Evaluation and consequence
# ---------------------------------------------------------------------------

def evaluate(algebra, valuation, formula):
    """Bottom-up table evaluation; valuation maps variable names to element indices."""
    if isinstance(formula, Var):
        try:
            return valuation[formula.name]
        except KeyError:
            raise UnboundVariable(f"variable {formula.name!r} has no value") from None
    if isinstance(formula, Not):
        return algebra.neg[evaluate(algebra, valuation, formula.arg)]
    left = evaluate(algebra, valuation, formula.left)
    right = evaluate(algebra, valuation, formula.right)
    if isinstance(formula, And):
        return algebra.meet[left][right]
    if isinstance(formula, Or):
        return algebra.join[left][right]
    return algebra.fusion[left][right]


def designated(algebra, x):
    """The truth filter: x is designated iff x -> x <= x."""
    return algebra.is_designated(x)


@dataclass
class Countermodel:
    algebra: object
    valuation: dict  # variable name -> element index

    def named(self):
        return {v: self.algebra.elements[i] for v, i in self.valuation.items()}

    def __repr__(self):
        assign = ", ".join(f"{v}={e}" for v, e in sorted(self.named().items()))
        return f"Countermodel({self.algebra.name}: {assign})"


@dataclass
class EntailmentVerdict:
    holds: bool
    countermodel: Countermodel | None = None

    def __bool__(self):
        return self.holds


def verify_countermodel(algebra, valuation, premises, conclusion):
    """Independently re-check: all premises designated, conclusion not."""
    for premise in premises:
        if not algebra.is_designated(evaluate(algebra, valuation, premise)):
            return False
    return not algebra.is_designated(evaluate(algebra, valuation, conclusion))


def entails(algebras, premises, conclusion, cap=DEFAULT_VALUATION_CAP):
    """Finitary consequence over a list of algebras.

    Holds iff for every algebra and every valuation designating all premises,
    the conclusion is designated.  Countermodels are reported deterministically:
    first algebra in the list, lexicographically least valuation.
    """
    premises = list(premises)
    variables = sorted(set().union(
        conclusion.variables(), *[p.variables() for p in premises]
    ))
    for algebra in algebras:
        if algebra.size ** len(variables) > cap:
            raise SizeCapExceeded(
                f"valuation space {algebra.size}^{len(variables)} exceeds cap {cap}"
            )
        for assignment in product(range(algebra.size), repeat=len(variables)):
            valuation = dict(zip(variables, assignment))
            if all(
                algebra.is_designated(evaluate(algebra, valuation, p))
                for p in premises
            ) and not algebra.is_designated(evaluate(algebra, valuation, conclusion)):
                return EntailmentVerdict(False, Countermodel(algebra, valuation))
    return EntailmentVerdict(True)


def theorem(algebras, formula, cap=DEFAULT_VALUATION_CAP):
    """Theoremhood: consequence from no premises."""
    return entails(algebras, [], formula, cap=cap)


# Ten standard theorem schemata of the base relevant logic, instantiated.
R_THEOREM_SCHEMATA = (
    ("identity", "p -> p"),
    ("suffixing", "(p -> q) -> ((q -> r) -> (p -> r))"),
    ("contraction", "(p -> (p -> q)) -> (p -> q)"),
    ("assertion", "p -> ((p -> q) -> q)"),
    ("double-negation", "~~p -> p"),
    ("contraposition", "(p -> ~q) -> (q -> ~p)"),
    ("conjunction-elimination", "(p & q) -> p"),
    ("disjunction-introduction", "p -> (p | q)"),
    ("distribution", "(p & (q | r)) -> ((p & q) | (p & r))"),
    ("excluded-middle", "p | ~p"),
)


# ---------------------------------------------------------------------------
# Bounded VSP scanning
# ---------------------------------------------------------------------------

def enumerate_formula_classes(algebras, varname, max_size):
    """One-variable formulas up to `max_size` nodes, one representative per
    value-vector class over the given algebras, in order of increasing size.

    Returns a list of (formula, vectors) where vectors[i][x] is the value in
    algebras[i] when the variable is element x.
    """
    start = Var(varname)
    start_vecs = tuple(tuple(range(a.size)) for a in algebras)
    counter = 0
    heap = [(start.size(), counter, start, start_vecs)]
    seen = {start_vecs}
    popped = []

    def push(formula, vecs):
        nonlocal counter
        if formula.size() <= max_size and vecs not in seen:
            seen.add(vecs)
            counter += 1
            heapq.heappush(heap, (formula.size(), counter, formula, vecs))

    while heap:
        _, _, formula, vecs = heapq.heappop(heap)
        popped.append((formula, vecs))
        push(Not(formula), tuple(
            tuple(a.neg[v] for v in vec) for a, vec in zip(algebras, vecs)
        ))
        for other, ovecs in popped:
            for ctor, tables in (
                (And, [a.meet for a in algebras]),
                (Or, [a.join for a in algebras]),
                (Fuse, [a.fusion for a in algebras]),
            ):
                if other is not formula:
                    push(ctor(other, formula), tuple(
                        tuple(t[u][v] for u, v in zip(vec, ovec))
                        for t, vec, ovec in zip(tables, ovecs, vecs)
                    ))
                push(ctor(formula, other), tuple(
                    tuple(t[u][v] for u, v in zip(vec, ovec))
                    for t, vec, ovec in zip(tables, vecs, ovecs)
                ))
    return popped


@dataclass
class VspViolation:
    antecedent: Formula
    consequent: Formula

    def implication(self):
        return arrow_formula(self.antecedent, self.consequent)

    def __repr__(self):
        return f"VspViolation({self.antecedent} -> {self.consequent})"


def vsp_scan(algebras, size_bound=4, left_var="p", right_var="q"):
    """Hunt for theorems alpha -> beta with var(alpha)={p}, var(beta)={q}.

    Enumerates both sides up to `size_bound` tree nodes modulo value-vector
    equivalence and returns every pair whose implication is designated under
    all cross valuations in every algebra.  A logic with the variable sharing
    property yields no violations.
    """
    lefts = enumerate_formula_classes(algebras, left_var, size_bound)
    rights = enumerate_formula_classes(algebras, right_var, size_bound)
    violations = []
    for alpha, avecs in lefts:
        for beta, bvecs in rights:
            if _cross_theorem(algebras, avecs, bvecs):
                violations.append(VspViolation(alpha, beta))
    return violations


def _cross_theorem(algebras, avecs, bvecs):
    for algebra, avec, bvec in zip(algebras, avecs, bvecs):
        for x in range(algebra.size):
            va = avec[x]
            for y in range(algebra.size):
                if not algebra.is_designated(arrow(algebra, va, bvec[y])):
                    return False
    return True
