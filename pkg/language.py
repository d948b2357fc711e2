# coding=utf-8
"""
Regular expressions and right-linear language equations.

Text grammar: `+` is union, juxtaposition is concatenation, postfix `*` is
the star, `0` is the empty language and `id` (or `id_B`) the empty word.
A `|` between factors is ignored, so `(y1 + y2) | b2` parses like
`(y1 + y2) b2`.
"""
import re
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from automata import Dfa, Nfa, Num, bfs_order, minimize, trim
from kan_helpers import AutomatonError, InvariantViolation, RegexSyntaxError, logger, timing
from presentation import IDENTITY, ZERO, Word

REGEX_TOKEN = re.compile(r'\s*(?:([A-Za-z_][A-Za-z0-9_]*|0)|([()+*|]))')


class Regex:
    pass


@dataclass(frozen=True)
class Empty(Regex):
    pass


@dataclass(frozen=True)
class Id(Regex):
    pass


@dataclass(frozen=True)
class Sym(Regex):
    symbol: str


@dataclass(frozen=True)
class Concat(Regex):
    items: Tuple[Regex, ...]


@dataclass(frozen=True)
class Union(Regex):
    items: Tuple[Regex, ...]


@dataclass(frozen=True)
class Star(Regex):
    inner: Regex


EMPTY = Empty()
ID = Id()


def nullable(r: Regex) -> bool:
    if isinstance(r, (Id, Star)):
        return True
    if isinstance(r, (Empty, Sym)):
        return False
    if isinstance(r, Concat):
        return all(nullable(item) for item in r.items)
    return any(nullable(item) for item in r.items)


def symbols(r: Regex) -> List[str]:
    """Symbols of r in order of first occurrence."""
    if isinstance(r, Sym):
        return [r.symbol]
    if isinstance(r, Star):
        return symbols(r.inner)
    found = []
    for item in getattr(r, 'items', ()):
        found.extend(s for s in symbols(item) if s not in found)
    return found


def concat(*parts: Regex) -> Regex:
    items = []
    for part in parts:
        if isinstance(part, Empty):
            return EMPTY
        if isinstance(part, Id):
            continue
        items.extend(part.items if isinstance(part, Concat) else [part])
    if not items:
        return ID
    if len(items) == 1:
        return items[0]
    return Concat(tuple(items))


def union(*parts: Regex) -> Regex:
    items = []
    for part in parts:
        for item in (part.items if isinstance(part, Union) else [part]):
            if not isinstance(item, Empty) and item not in items:
                items.append(item)
    if ID in items and any(nullable(item) for item in items if item != ID):
        items.remove(ID)
    if not items:
        return EMPTY
    if len(items) == 1:
        return items[0]
    return Union(tuple(items))


def star(r: Regex) -> Regex:
    if isinstance(r, (Empty, Id)):
        return ID
    if isinstance(r, Star):
        return r
    if isinstance(r, Union) and ID in r.items:
        return star(union(*(item for item in r.items if item != ID)))
    return Star(r)


def simplify(r: Regex) -> Regex:
    if isinstance(r, Concat):
        return concat(*(simplify(item) for item in r.items))
    if isinstance(r, Union):
        return union(*(simplify(item) for item in r.items))
    if isinstance(r, Star):
        return star(simplify(r.inner))
    return r


UNION_LEVEL, CONCAT_LEVEL, STAR_LEVEL = 0, 1, 2


def format_regex(r: Regex, level: int = UNION_LEVEL) -> str:
    if isinstance(r, Empty):
        return ZERO
    if isinstance(r, Id):
        return IDENTITY
    if isinstance(r, Sym):
        return r.symbol
    if isinstance(r, Star):
        return '%s*' % format_regex(r.inner, STAR_LEVEL)

    if isinstance(r, Concat):
        text = ' '.join(format_regex(item, CONCAT_LEVEL) for item in r.items)
        return '(%s)' % text if level > CONCAT_LEVEL else text

    text = ' + '.join(format_regex(item, UNION_LEVEL) for item in r.items)
    return '(%s)' % text if level > UNION_LEVEL else text


class _Parser:
    def __init__(self, text: str, alphabet: Optional[Iterable[str]]) -> None:
        self.text = text
        self.alphabet = None if alphabet is None else set(alphabet)
        self.tokens: List[Tuple[str, int]] = []
        position = 0
        while position < len(text):
            match = REGEX_TOKEN.match(text, position)
            if not match:
                if text[position:].strip():
                    offset = len(text[position:]) - len(text[position:].lstrip())
                    raise RegexSyntaxError(position + offset + 1, 'unexpected character %r' % text[position + offset])
                break
            token = match.group(1) or match.group(2)
            if token != '|':
                self.tokens.append((token, match.start(match.lastindex) + 1))
            position = match.end()
        self.index = 0

    def peek(self) -> Optional[str]:
        return self.tokens[self.index][0] if self.index < len(self.tokens) else None

    def position(self) -> int:
        if self.index < len(self.tokens):
            return self.tokens[self.index][1]
        return len(self.text) + 1

    def take(self) -> str:
        token = self.tokens[self.index][0]
        self.index += 1
        return token

    def parse(self) -> Regex:
        if not self.tokens:
            raise RegexSyntaxError(1, 'empty expression')
        result = self.union()
        if self.peek() is not None:
            raise RegexSyntaxError(self.position(), 'unexpected %r' % self.peek())
        return result

    def union(self) -> Regex:
        items = [self.concat()]
        while self.peek() == '+':
            self.take()
            items.append(self.concat())
        return items[0] if len(items) == 1 else Union(tuple(items))

    def concat(self) -> Regex:
        items = []
        while self.peek() not in (None, '+', ')'):
            items.append(self.postfix())
        if not items:
            raise RegexSyntaxError(self.position(), 'expected an expression')
        return items[0] if len(items) == 1 else Concat(tuple(items))

    def postfix(self) -> Regex:
        result = self.atom()
        while self.peek() == '*':
            self.take()
            result = Star(result)
        return result

    def atom(self) -> Regex:
        position = self.position()
        token = self.take()
        if token == '(':
            inner = self.union()
            if self.peek() != ')':
                raise RegexSyntaxError(self.position(), "expected ')'")
            self.take()
            return inner
        if token in (')', '*'):
            raise RegexSyntaxError(position, 'unexpected %r' % token)
        if token == ZERO:
            return EMPTY
        if token == IDENTITY or token.startswith(IDENTITY + '_'):
            return ID
        if self.alphabet is not None and token not in self.alphabet:
            raise RegexSyntaxError(position, 'unknown symbol %r' % token)
        return Sym(token)


def parse_regex(text: str, alphabet: Optional[Iterable[str]] = None) -> Regex:
    return _Parser(text, alphabet).parse()


@dataclass(frozen=True)
class EquationSystem:
    """X_i = sum_j A_ij X_j + E_i for i in 0..size-1; X_0 belongs to the initial state."""
    size: int
    coefficients: Dict[Tuple[int, int], Regex]
    constants: Tuple[Regex, ...]
    alphabet: Word = ()
    states: Tuple = field(default=(), compare=False)


def _is_sink(d: Dfa, state) -> bool:
    return state not in d.accepting and all(
        d.target(state, symbol) in (None, state) for symbol in d.alphabet)


def dfa_to_equations(d: Dfa) -> EquationSystem:
    """
    One equation per state, numbered in BFS order from the initial state.
    Transitions into non-accepting sinks are left out, a sink's own equation
    is X = 0.
    """
    order = bfs_order(d)
    index = {state: i for i, state in enumerate(order)}
    sinks = {state for state in order if _is_sink(d, state)}

    coefficients: Dict[Tuple[int, int], Regex] = {}
    for state in order:
        if state in sinks:
            continue
        for symbol in d.alphabet:
            target = d.target(state, symbol)
            if target is None or target in sinks:
                continue
            key = (index[state], index[target])
            coefficients[key] = union(coefficients.get(key, EMPTY), Sym(symbol))

    constants = tuple(ID if state in d.accepting else EMPTY for state in order)
    return EquationSystem(len(order), coefficients, constants, d.alphabet, tuple(order))


def arden(a: Regex, e: Regex) -> Regex:
    """The unique solution a* e of X = a X + e."""
    if nullable(a):
        raise InvariantViolation('coefficient %s contains the empty word' % format_regex(a))
    return concat(star(a), e)


@timing
def solve(system: EquationSystem, order: Optional[Sequence[int]] = None) -> Dict[int, Regex]:
    """Eliminates unknowns in `order` (highest index first by default), then back-substitutes."""
    if order is None:
        order = list(range(system.size - 1, -1, -1))
    if sorted(order) != list(range(system.size)):
        raise InvariantViolation('elimination order %r is not a permutation of the unknowns' % (order,))

    rows: Dict[int, Dict[int, Regex]] = {i: {} for i in range(system.size)}
    for (i, j), coefficient in system.coefficients.items():
        rows[i][j] = coefficient
    constants = dict(enumerate(system.constants))

    solved_rows = {}
    remaining = set(range(system.size))
    for k in order:
        remaining.discard(k)
        loop = rows[k].pop(k, EMPTY)
        row = {j: arden(loop, c) for j, c in rows[k].items()}
        constant = arden(loop, constants[k])
        solved_rows[k] = (row, constant)

        for i in remaining:
            through = rows[i].pop(k, None)
            if through is None:
                continue
            for j, c in row.items():
                rows[i][j] = union(rows[i].get(j, EMPTY), concat(through, c))
            constants[i] = union(constants[i], concat(through, constant))

    solution: Dict[int, Regex] = {}
    for k in reversed(order):
        row, constant = solved_rows[k]
        solution[k] = simplify(union(constant, *(concat(c, solution[j]) for j, c in row.items())))

    logger.debug('Solved %d equations', system.size)
    return solution


def format_equations(system: EquationSystem) -> str:
    """One line per unknown, `X4 = b1 X2 + b4 X4 + b5 X3 + id`."""
    position = {symbol: i for i, symbol in enumerate(system.alphabet)}

    lines = []
    for i in range(system.size):
        terms = []
        for (row, j), coefficient in system.coefficients.items():
            if row != i:
                continue
            parts = coefficient.items if isinstance(coefficient, Union) else (coefficient,)
            for part in parts:
                first = symbols(part)[0] if symbols(part) else ''
                terms.append((position.get(first, len(position)), j, '%s X%d' % (format_regex(part, 1), j)))
        terms.sort()
        rhs = [text for _, _, text in terms]
        if system.constants[i] != EMPTY:
            rhs.append(format_regex(system.constants[i]))
        lines.append('X%d = %s' % (i, ' + '.join(rhs) if rhs else ZERO))
    return '\n'.join(lines) + '\n'


def dfa_to_regex(d: Dfa, order: Optional[Sequence[int]] = None) -> Regex:
    system = dfa_to_equations(trim(minimize(d)))
    return simplify(solve(system, order)[0])


def regex_to_nfa(r: Regex, alphabet: Optional[Sequence[str]] = None) -> Nfa:
    """Thompson construction followed by removal of the empty-word edges."""
    if alphabet is None:
        alphabet = tuple(symbols(r))
    alphabet = tuple(alphabet)
    for symbol in symbols(r):
        if symbol not in alphabet:
            raise AutomatonError('symbol %r is not in the alphabet' % symbol)

    edges: List[Tuple[int, Optional[str], int]] = []
    counter = [0]

    def fresh() -> int:
        counter[0] += 1
        return counter[0] - 1

    def build(node: Regex) -> Tuple[int, int]:
        start, end = fresh(), fresh()
        if isinstance(node, Id):
            edges.append((start, None, end))
        elif isinstance(node, Sym):
            edges.append((start, node.symbol, end))
        elif isinstance(node, Concat):
            current = start
            for item in node.items:
                s, e = build(item)
                edges.append((current, None, s))
                current = e
            edges.append((current, None, end))
        elif isinstance(node, Union):
            for item in node.items:
                s, e = build(item)
                edges.append((start, None, s))
                edges.append((e, None, end))
        elif isinstance(node, Star):
            s, e = build(node.inner)
            edges.extend([(start, None, s), (e, None, s), (start, None, end), (e, None, end)])
        return start, end

    start, end = build(r)
    size = counter[0]

    silent: Dict[int, set] = {q: set() for q in range(size)}
    moves: Dict[Tuple[int, str], set] = {}
    for source, symbol, target in edges:
        if symbol is None:
            silent[source].add(target)
        else:
            moves.setdefault((source, symbol), set()).add(target)

    def closure(q: int) -> set:
        seen = {q}
        stack = [q]
        while stack:
            for t in silent[stack.pop()]:
                if t not in seen:
                    seen.add(t)
                    stack.append(t)
        return seen

    closures = {q: closure(q) for q in range(size)}
    transitions = {}
    for q in range(size):
        for symbol in alphabet:
            targets = set()
            for p in closures[q]:
                for t in moves.get((p, symbol), ()):
                    targets |= closures[t]
            if targets:
                transitions[(Num(q), symbol)] = frozenset(Num(t) for t in targets)

    return Nfa(
        states=frozenset(Num(q) for q in range(size)),
        alphabet=alphabet,
        initial=frozenset([Num(start)]),
        transitions=transitions,
        accepting=frozenset(Num(q) for q in range(size) if end in closures[q]))


def _element_head(r: Regex, elements: set) -> bool:
    if isinstance(r, Sym):
        return r.symbol in elements
    return isinstance(r, Union) and all(isinstance(i, Sym) and i.symbol in elements for i in r.items)


def format_term_regex(r: Regex, elements: Iterable[str]) -> str:
    """Prints each summand as `head | rest`, head being the union of the element symbols sharing that rest."""
    elements = set(elements)
    r = simplify(r)
    if isinstance(r, Empty):
        return ZERO

    heads: Dict[Regex, Regex] = {}
    entries: List[Tuple[bool, Regex]] = []
    for summand in (r.items if isinstance(r, Union) else (r,)):
        if _element_head(summand, elements):
            head, rest = summand, ID
        elif isinstance(summand, Concat) and _element_head(summand.items[0], elements):
            head, rest = summand.items[0], concat(*summand.items[1:])
        else:
            logger.info('Summand %s does not start with an element factor', format_regex(summand))
            entries.append((False, summand))
            continue
        if rest not in heads:
            entries.append((True, rest))
        heads[rest] = union(heads.get(rest, EMPTY), head)

    texts = []
    for grouped, item in entries:
        if grouped:
            texts.append('%s | %s' % (format_regex(heads[item], CONCAT_LEVEL), format_regex(item, CONCAT_LEVEL)))
        else:
            texts.append(format_regex(item, CONCAT_LEVEL))
    return ' + '.join(texts)
