# coding=utf-8
"""
Finite automata over the alphabet of a presentation.

States carry structured labels (Start, Dump, Obj, Elem, TPrefix, PPrefix,
Subset) until renumber() replaces them with Num labels in BFS order.
"""
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, NamedTuple, Optional, Sequence, Tuple, Union

import graphviz

from kan_helpers import AutomatonError, IncompleteSystemError, InvariantViolation, logger, timing, words_text
from presentation import KanPresentation, Path, Word
from rewriting import RewriteSystem, Term, is_complete, lhs_sets


@dataclass(frozen=True)
class Start:
    def __str__(self):
        return 's0'


@dataclass(frozen=True)
class Dump:
    def __str__(self):
        return 'd'


@dataclass(frozen=True)
class Obj:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Elem:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class TPrefix:
    term: Term

    def __str__(self):
        return '%s|%s' % (self.term.element, words_text(self.term.word))


@dataclass(frozen=True)
class PPrefix:
    path: Path

    def __str__(self):
        return words_text(self.path.arrows)


@dataclass(frozen=True)
class Num:
    index: int

    def __str__(self):
        return 'S%d' % self.index


@dataclass(frozen=True)
class Subset:
    members: FrozenSet

    def __str__(self):
        return '{%s}' % ', '.join(str(s) for s in sorted(self.members, key=state_key))


State = Union[Start, Dump, Obj, Elem, TPrefix, PPrefix, Num, Subset]

_RANKS = {Start: 0, Elem: 1, TPrefix: 2, PPrefix: 3, Obj: 4, Dump: 5, Num: 6, Subset: 7}


def state_key(state) -> tuple:
    rank = _RANKS.get(type(state))
    if rank is None:
        return 8, repr(state)
    if isinstance(state, Num):
        return rank, state.index
    if isinstance(state, Subset):
        return rank, tuple(sorted(state_key(s) for s in state.members))
    return rank, str(state)


@dataclass(frozen=True)
class Nfa:
    states: FrozenSet
    alphabet: Word
    initial: FrozenSet
    transitions: Dict[Tuple[State, str], FrozenSet]
    accepting: FrozenSet

    def step(self, current: Iterable, symbol: str) -> FrozenSet:
        result = set()
        for state in current:
            result |= self.transitions.get((state, symbol), frozenset())
        return frozenset(result)


@dataclass(frozen=True)
class Dfa:
    states: FrozenSet
    alphabet: Word
    initial: State
    transitions: Dict[Tuple[State, str], State]
    accepting: FrozenSet

    def target(self, state, symbol: str) -> Optional[State]:
        return self.transitions.get((state, symbol))

    @property
    def is_complete(self) -> bool:
        return all((state, symbol) in self.transitions for state in self.states for symbol in self.alphabet)


Machine = Union[Nfa, Dfa]


class LanguageCount(NamedTuple):
    count: Optional[int]

    @property
    def is_finite(self) -> bool:
        return self.count is not None

    def __str__(self):
        if self.count is None:
            return 'Infinite'
        return 'Finite(%d)' % self.count


def as_nfa(d: Dfa) -> Nfa:
    return Nfa(
        states=d.states,
        alphabet=d.alphabet,
        initial=frozenset([d.initial]),
        transitions={key: frozenset([target]) for key, target in d.transitions.items()},
        accepting=d.accepting)


def build_T_automaton(p: KanPresentation) -> Dfa:
    start, dump = Start(), Dump()
    objects = [Obj(b) for b in p.delta.objects]
    alphabet = p.alphabet_order

    transitions = {}
    for symbol in alphabet:
        transitions[(start, symbol)] = Obj(p.start_of(symbol)) if p.is_element(symbol) else dump
        transitions[(dump, symbol)] = dump
        for obj in objects:
            arrow = p.delta.by_name.get(symbol)
            transitions[(obj, symbol)] = Obj(arrow.tgt) if arrow is not None and arrow.src == obj.name else dump

    return Dfa(
        states=frozenset([start, dump] + objects),
        alphabet=alphabet,
        initial=start,
        transitions=transitions,
        accepting=frozenset(objects))


def build_reducible_nfa(p: KanPresentation, r: RewriteSystem, B: str, check: bool = True) -> Nfa:
    """
    The automaton A_B accepting every word over the alphabet that is not the
    flattening of an irreducible term with target B. Three kinds of thread run
    side by side: the validity thread (s0, elements, objects, d) tracks the
    target of the word read so far, the term-prefix thread follows a partial
    match of a term rule lhs from the start of the word and the path-prefix
    threads follow partial matches of path rule lhs started anywhere in the
    word part. Completing any lhs sends the word to d.
    """
    if B not in p.delta.objects:
        raise AutomatonError('unknown object %r' % B)
    if check and not is_complete(r):
        raise IncompleteSystemError('the reducibility automaton needs a complete rewrite system')

    prefixes = lhs_sets(r)
    t_lhs, t_ppl = prefixes.terms.l, prefixes.terms.ppl
    p_lhs = {path.arrows for path in prefixes.paths.l}
    p_ppl = {path.arrows for path in prefixes.paths.ppl}

    start, dump = Start(), Dump()
    dead = frozenset([dump])
    states = {start, dump}
    states.update(Obj(b) for b in p.delta.objects)
    states.update(Elem(x) for x in p.elements)
    states.update(TPrefix(t) for t in t_ppl)
    states.update(PPrefix(q) for q in prefixes.paths.ppl)

    def path_spawn(arrow_name: str) -> Optional[set]:
        """Targets of a path-prefix thread that starts with this arrow; None when it completes an lhs."""
        if (arrow_name,) in p_lhs:
            return None
        if (arrow_name,) in p_ppl:
            return {PPrefix(Path(p.delta.arrow(arrow_name).src, (arrow_name,)))}
        return set()

    def follow(state, symbol: str) -> FrozenSet:
        if isinstance(state, Dump):
            return dead

        if isinstance(state, Start):
            if not p.is_element(symbol) or Term(symbol) in t_lhs:
                return dead
            return frozenset([Elem(symbol)])

        arrow = p.delta.by_name.get(symbol)

        if isinstance(state, (Elem, Obj)):
            at = p.start_of(state.name) if isinstance(state, Elem) else state.name
            if arrow is None or arrow.src != at:
                return dead
            targets = {Obj(arrow.tgt)}
            if isinstance(state, Elem):
                term = Term(state.name, (symbol,))
                if term in t_lhs:
                    return dead
                if term in t_ppl:
                    targets.add(TPrefix(term))
            spawned = path_spawn(symbol)
            if spawned is None:
                return dead
            return frozenset(targets | spawned)

        if arrow is None:
            return frozenset()

        if isinstance(state, TPrefix):
            term = state.term.append((symbol,))
            if term in t_lhs:
                return dead
            if term in t_ppl:
                return frozenset([TPrefix(term)])
            return frozenset()

        if isinstance(state, PPrefix):
            word = state.path.arrows + (symbol,)
            if word in p_lhs:
                return dead
            if word in p_ppl:
                return frozenset([PPrefix(Path(state.path.start, word))])
            return frozenset()

        raise InvariantViolation('unexpected state %r' % (state,))

    transitions = {}
    for state in states:
        for symbol in p.alphabet_order:
            targets = follow(state, symbol)
            if dump in targets:
                targets = dead
            if targets:
                transitions[(state, symbol)] = targets

    accepting = {start, dump}
    accepting.update(Obj(b) for b in p.delta.objects if b != B)
    accepting.update(Elem(x) for x in p.elements if p.start_of(x) != B)

    logger.debug('A_%s has %d states', B, len(states))
    return Nfa(
        states=frozenset(states),
        alphabet=p.alphabet_order,
        initial=frozenset([start]),
        transitions=transitions,
        accepting=frozenset(accepting))


def _universal_states(n: Nfa) -> FrozenSet:
    return frozenset(
        state for state in n.accepting
        if all(n.transitions.get((state, symbol)) == frozenset([state]) for symbol in n.alphabet))


@timing
def determinize(n: Nfa) -> Dfa:
    universal = _universal_states(n)

    def label(members: FrozenSet) -> Subset:
        absorbing = sorted(members & universal, key=state_key)
        if absorbing:
            return Subset(frozenset(absorbing[:1]))
        return Subset(members)

    initial = label(n.initial)
    states = [initial]
    seen = {initial}
    transitions = {}
    i = 0
    while i < len(states):
        current = states[i]
        for symbol in n.alphabet:
            members = n.step(current.members, symbol)
            if not members:
                continue
            target = label(members)
            if target not in seen:
                seen.add(target)
                states.append(target)
            transitions[(current, symbol)] = target
        i += 1

    accepting = frozenset(s for s in states if s.members & n.accepting)
    logger.debug('Determinized %d NFA states into %d subsets', len(n.states), len(states))
    return Dfa(frozenset(states), n.alphabet, initial, transitions, accepting)


def complete_dfa(d: Dfa) -> Dfa:
    if d.is_complete:
        return d

    dump = Dump()
    index = len(d.states)
    while dump in d.states:
        dump = Num(index)
        index += 1

    transitions = dict(d.transitions)
    for state in list(d.states) + [dump]:
        for symbol in d.alphabet:
            transitions.setdefault((state, symbol), dump)

    return Dfa(d.states | {dump}, d.alphabet, d.initial, transitions, d.accepting)


def complement(d: Dfa) -> Dfa:
    if not d.is_complete:
        raise InvariantViolation('complement needs a complete DFA')
    return Dfa(d.states, d.alphabet, d.initial, d.transitions, d.states - d.accepting)


def _reachable(d: Dfa) -> set:
    seen = {d.initial}
    stack = [d.initial]
    while stack:
        state = stack.pop()
        for symbol in d.alphabet:
            target = d.target(state, symbol)
            if target is not None and target not in seen:
                seen.add(target)
                stack.append(target)
    return seen


def _coreachable(d: Dfa) -> set:
    predecessors: Dict[State, set] = {}
    for (state, _), target in d.transitions.items():
        predecessors.setdefault(target, set()).add(state)

    seen = set(d.accepting)
    stack = list(d.accepting)
    while stack:
        for state in predecessors.get(stack.pop(), ()):
            if state not in seen:
                seen.add(state)
                stack.append(state)
    return seen


def trim(d: Dfa) -> Dfa:
    useful = _reachable(d) & _coreachable(d)
    if d.initial not in useful:
        return Dfa(frozenset([d.initial]), d.alphabet, d.initial, {}, frozenset())

    transitions = {
        (state, symbol): target
        for (state, symbol), target in d.transitions.items()
        if state in useful and target in useful}
    return Dfa(frozenset(useful), d.alphabet, d.initial, transitions, d.accepting & useful)


@timing
def minimize(d: Dfa) -> Dfa:
    """Moore partition refinement on the reachable part of the completed machine."""
    complete = complete_dfa(d)
    states = sorted(_reachable(complete), key=state_key)

    block = {state: int(state in complete.accepting) for state in states}
    while True:
        signatures = {
            state: (block[state],) + tuple(block[complete.target(state, symbol)] for symbol in complete.alphabet)
            for state in states}
        numbering = {}
        for state in states:
            numbering.setdefault(signatures[state], len(numbering))
        refined = {state: numbering[signatures[state]] for state in states}
        if len(numbering) == len(set(block.values())):
            block = refined
            break
        block = refined

    representative = {}
    for state in states:
        representative.setdefault(block[state], state)

    transitions = {
        (block[state], symbol): block[complete.target(state, symbol)]
        for state in representative.values()
        for symbol in complete.alphabet}
    quotient = Dfa(
        states=frozenset(representative),
        alphabet=complete.alphabet,
        initial=block[complete.initial],
        transitions=transitions,
        accepting=frozenset(block[s] for s in representative.values() if s in complete.accepting))
    return renumber(quotient)


def equivalent(d1: Dfa, d2: Dfa) -> bool:
    if set(d1.alphabet) != set(d2.alphabet):
        raise AutomatonError('cannot compare machines over different alphabets')

    m1, m2 = complete_dfa(d1), complete_dfa(d2)
    seen = {(m1.initial, m2.initial)}
    queue = [(m1.initial, m2.initial)]
    while queue:
        s1, s2 = queue.pop()
        if (s1 in m1.accepting) != (s2 in m2.accepting):
            return False
        for symbol in m1.alphabet:
            pair = (m1.target(s1, symbol), m2.target(s2, symbol))
            if pair not in seen:
                seen.add(pair)
                queue.append(pair)
    return True


def accepts(m: Machine, word: Sequence[str]) -> bool:
    for symbol in word:
        if symbol not in m.alphabet:
            raise AutomatonError('unknown symbol %r' % symbol)

    if isinstance(m, Nfa):
        current = m.initial
        for symbol in word:
            current = m.step(current, symbol)
            if not current:
                return False
        return bool(current & m.accepting)

    state = m.initial
    for symbol in word:
        state = m.target(state, symbol)
        if state is None:
            return False
    return state in m.accepting


def enumerate_words(d: Dfa, max_len: int) -> List[Word]:
    """Accepted words of length at most max_len in shortlex order."""
    useful = trim(d)
    words = []
    level = [((), useful.initial)] if useful.initial in useful.states else []
    for length in range(max_len + 1):
        words.extend(word for word, state in level if state in useful.accepting)
        if length == max_len:
            break
        level = [
            (word + (symbol,), useful.target(state, symbol))
            for word, state in level
            for symbol in useful.alphabet
            if useful.target(state, symbol) is not None]
    return words


def count_language(d: Dfa) -> LanguageCount:
    useful = trim(d)
    if not useful.accepting:
        return LanguageCount(0)

    counts: Dict[State, int] = {}
    on_stack = {useful.initial}
    stack = [(useful.initial, iter(useful.alphabet))]
    while stack:
        state, symbols = stack[-1]
        for symbol in symbols:
            target = useful.target(state, symbol)
            if target is None or target in counts:
                continue
            if target in on_stack:
                return LanguageCount(None)
            on_stack.add(target)
            stack.append((target, iter(useful.alphabet)))
            break
        else:
            stack.pop()
            on_stack.discard(state)
            counts[state] = int(state in useful.accepting) + sum(
                counts[t] for t in (useful.target(state, symbol) for symbol in useful.alphabet) if t is not None)

    return LanguageCount(counts[useful.initial])


def _successors(m: Machine, state, symbol: str) -> List[State]:
    if isinstance(m, Nfa):
        return sorted(m.transitions.get((state, symbol), ()), key=state_key)
    target = m.target(state, symbol)
    return [] if target is None else [target]


def bfs_order(m: Machine) -> List[State]:
    initial = sorted(m.initial, key=state_key) if isinstance(m, Nfa) else [m.initial]
    order = list(initial)
    seen = set(order)
    i = 0
    while i < len(order):
        for symbol in m.alphabet:
            for target in _successors(m, order[i], symbol):
                if target not in seen:
                    seen.add(target)
                    order.append(target)
        i += 1
    order.extend(sorted((s for s in m.states if s not in seen), key=state_key))
    return order


def renumber(m: Machine) -> Machine:
    names = {state: Num(i) for i, state in enumerate(bfs_order(m))}
    states = frozenset(names.values())
    accepting = frozenset(names[s] for s in m.accepting)
    if isinstance(m, Nfa):
        transitions = {
            (names[state], symbol): frozenset(names[t] for t in targets)
            for (state, symbol), targets in m.transitions.items()}
        return Nfa(states, m.alphabet, frozenset(names[s] for s in m.initial), transitions, accepting)

    transitions = {(names[state], symbol): names[target] for (state, symbol), target in m.transitions.items()}
    return Dfa(states, m.alphabet, names[m.initial], transitions, accepting)


def _initial_states(m: Machine) -> FrozenSet:
    return m.initial if isinstance(m, Nfa) else frozenset([m.initial])


def transition_rows(m: Machine) -> List[Tuple[State, List[str]]]:
    rows = []
    for state in bfs_order(m):
        cells = []
        for symbol in m.alphabet:
            targets = _successors(m, state, symbol)
            cells.append(', '.join(str(t) for t in targets) if targets else '-')
        rows.append((state, cells))
    return rows


def transition_table(m: Machine) -> str:
    """Rows are states (`>` initial, `*` accepting), columns are the alphabet."""
    initial = _initial_states(m)
    header = ['state'] + list(m.alphabet)
    body = []
    for state, cells in transition_rows(m):
        marks = ('>' if state in initial else ' ') + ('*' if state in m.accepting else ' ')
        body.append([marks + str(state)] + cells)

    widths = [max(len(row[i]) for row in [header] + body) for i in range(len(header))]
    lines = ['  '.join(cell.ljust(width) for cell, width in zip(row, widths)).rstrip() for row in [header] + body]
    return '\n'.join(lines) + '\n'


def to_dot(m: Machine, name: str = 'automaton') -> str:
    dot = graphviz.Digraph(name)
    dot.attr(rankdir='LR')

    order = bfs_order(m)
    ids = {state: 'q%d' % i for i, state in enumerate(order)}
    dot.node('start', '', shape='point')
    for state in order:
        shape = 'doublecircle' if state in m.accepting else 'circle'
        dot.node(ids[state], str(state), shape=shape)
    for state in sorted(_initial_states(m), key=state_key):
        dot.edge('start', ids[state])

    for state in order:
        labels: Dict[State, List[str]] = {}
        for symbol in m.alphabet:
            for target in _successors(m, state, symbol):
                labels.setdefault(target, []).append(symbol)
        for target in sorted(labels, key=lambda t: order.index(t)):
            dot.edge(ids[state], ids[target], label=', '.join(labels[target]))

    return dot.source


def kb_machine(p: KanPresentation, r: RewriteSystem, B: str, check: bool = True) -> Dfa:
    """The complete DFA accepting the normal forms with target B."""
    return complement(complete_dfa(determinize(build_reducible_nfa(p, r, B, check=check))))
