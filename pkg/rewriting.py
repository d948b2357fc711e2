# coding=utf-8
"""
Two-sorted rewriting on the terms x|p of a Kan extension presentation.

Term rules (R_T) rewrite an element-rooted prefix, x|u v -> y|w v. Path rules
(R_P) rewrite a subword of the word part, x|u l v -> x|u r v. All rules are
oriented by the shortlex order on the flattening x b1 ... bn under the
presentation's alphabet order, so reduction always terminates.
"""
import re
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterator, List, NamedTuple, Optional, Tuple, Union

import config
from kan_helpers import (CompletionFailure, PresentationError, StepBudgetExceeded, TermError, UnorientableRuleError,
                         logger, timing, words_text)
from presentation import IDENTITY, KanPresentation, Path, Word, path_from_names

LT, EQ, GT = -1, 0, 1

TERM_TOKEN = re.compile(r'\s*([A-Za-z_][A-Za-z0-9_]*|\|)')


@dataclass(frozen=True)
class Term:
    element: str
    word: Word = ()

    def sigma(self) -> Word:
        return (self.element,) + self.word

    def append(self, arrows: Word) -> 'Term':
        return Term(self.element, self.word + tuple(arrows))

    def __str__(self):
        return '%s | %s' % (self.element, words_text(self.word))


@dataclass(frozen=True)
class TRule:
    lhs: Term
    rhs: Term

    def __str__(self):
        return '%s -> %s' % (self.lhs, self.rhs)


@dataclass(frozen=True)
class PRule:
    lhs: Path
    rhs: Path

    def __str__(self):
        return '%s -> %s' % (words_text(self.lhs.arrows), words_text(self.rhs.arrows))


Rule = Union[TRule, PRule]
Side = Union[Term, Path]


class PrefixSets(NamedTuple):
    l: FrozenSet
    pl: FrozenSet
    ppl: FrozenSet


class RulePrefixes(NamedTuple):
    terms: PrefixSets
    paths: PrefixSets


class CriticalPair(NamedTuple):
    overlap: Side
    left: Side
    right: Side

    @property
    def joined(self) -> bool:
        return self.left == self.right


class CompletionResult(NamedTuple):
    system: 'RewriteSystem'
    rounds: int
    added: int


def sigma(side: Side) -> Word:
    if isinstance(side, Term):
        return side.sigma()
    return side.arrows


def shortlex_key(side: Side, order_index: Dict[str, int]) -> Tuple[int, Tuple[int, ...]]:
    word = sigma(side)
    return len(word), tuple(order_index[s] for s in word)


def shortlex_compare(t1: Side, t2: Side, order: Word) -> int:
    order_index = {s: i for i, s in enumerate(order)}
    k1, k2 = shortlex_key(t1, order_index), shortlex_key(t2, order_index)
    if k1 < k2:
        return LT
    elif k1 > k2:
        return GT
    return EQ


class RewriteSystem:
    def __init__(self, presentation: KanPresentation, t_rules=(), p_rules=()) -> None:
        self.presentation = presentation
        self.order = presentation.alphabet_order
        index = presentation.order_index
        self.t_rules: Tuple[TRule, ...] = tuple(sorted(set(t_rules), key=lambda r: (
            shortlex_key(r.lhs, index), shortlex_key(r.rhs, index))))
        self.p_rules: Tuple[PRule, ...] = tuple(sorted(set(p_rules), key=lambda r: (
            shortlex_key(r.lhs, index), shortlex_key(r.rhs, index))))

        self._t_by_element: Dict[str, List[TRule]] = {}
        for rule in self.t_rules:
            self._t_by_element.setdefault(rule.lhs.element, []).append(rule)
        self._p_by_first: Dict[str, List[PRule]] = {}
        for rule in self.p_rules:
            self._p_by_first.setdefault(rule.lhs.arrows[0], []).append(rule)

    def rules(self) -> List[Rule]:
        return list(self.t_rules) + list(self.p_rules)

    def without(self, rule: Rule) -> 'RewriteSystem':
        return RewriteSystem(
            self.presentation,
            [r for r in self.t_rules if r != rule],
            [r for r in self.p_rules if r != rule])

    def with_rule(self, rule: Rule) -> 'RewriteSystem':
        if isinstance(rule, TRule):
            return RewriteSystem(self.presentation, self.t_rules + (rule,), self.p_rules)
        return RewriteSystem(self.presentation, self.t_rules, self.p_rules + (rule,))

    def key(self, side: Side):
        return shortlex_key(side, self.presentation.order_index)

    def __eq__(self, other):
        return (isinstance(other, RewriteSystem)
                and set(self.t_rules) == set(other.t_rules)
                and set(self.p_rules) == set(other.p_rules))

    def __len__(self):
        return len(self.t_rules) + len(self.p_rules)

    def __repr__(self):
        return 'RewriteSystem(%d term rules, %d path rules)' % (len(self.t_rules), len(self.p_rules))


def dump_rules(r: RewriteSystem) -> str:
    return ''.join('%s\n' % rule for rule in r.rules())


def orient(r_or_presentation, a: Side, b: Side) -> Optional[Rule]:
    """Orients an equation by shortlex; None when both sides are the same."""
    presentation = getattr(r_or_presentation, 'presentation', r_or_presentation)
    if a == b:
        return None

    comparison = shortlex_compare(a, b, presentation.alphabet_order)
    if comparison == EQ:
        raise UnorientableRuleError('cannot orient %s = %s: equal flattenings of distinct sides' % (a, b))

    lhs, rhs = (a, b) if comparison == GT else (b, a)
    if isinstance(lhs, Term):
        return TRule(lhs, rhs)
    return PRule(lhs, rhs)


def initial_system(p: KanPresentation) -> RewriteSystem:
    t_rules = []
    for arrow in p.gamma.arrows:
        for x in p.x_obj[arrow.src]:
            rule = orient(p, Term(x, p.f_arr[arrow.name].arrows), Term(p.act_element(x, arrow.name)))
            if rule is not None:
                t_rules.append(rule)

    p_rules = []
    for lhs, rhs in p.relations:
        rule = orient(p, lhs, rhs)
        if rule is not None:
            p_rules.append(rule)

    system = RewriteSystem(p, t_rules, p_rules)
    logger.info('Initial system: %s', system)
    return system


def make_term(p: KanPresentation, element: str, word: Word = ()) -> Term:
    if not p.is_element(element):
        raise TermError('unknown element %r' % element)
    if not p.is_composable(p.start_of(element), tuple(word)):
        raise TermError('not in T: %s | %s is not a composable word from %s' % (
            element, words_text(word), p.start_of(element)))
    return Term(element, tuple(word))


def _term_tokens(text: str) -> List[str]:
    tokens = []
    position = 0
    stripped = text.strip()
    while position < len(stripped):
        match = TERM_TOKEN.match(stripped, position)
        if not match:
            raise TermError('malformed term %r at position %d' % (text, position + 1))
        tokens.append(match.group(1))
        position = match.end()
    return tokens


def parse_term(p: KanPresentation, text: str) -> Term:
    tokens = _term_tokens(text)
    if len(tokens) < 3 or tokens[1] != '|' or tokens.count('|') > 1:
        raise TermError("malformed term %r: expected 'x | b1 b2' or 'x | id'" % text)

    element, word = tokens[0], tokens[2:]
    if not p.is_element(element):
        raise TermError('not in T: unknown element %r' % element)
    if word == [IDENTITY] or word == ['%s_%s' % (IDENTITY, p.start_of(element))]:
        return Term(element)
    if any(w.startswith(IDENTITY) and not p.is_arrow(w) for w in word):
        raise TermError('not in T: %r has an identity of the wrong object or inside a word' % text)
    return make_term(p, element, tuple(word))


def parse_path(p: KanPresentation, text: str, start: Optional[str] = None) -> Path:
    names = tuple(_term_tokens(text))
    if not names or '|' in names:
        raise TermError('malformed path %r' % text)
    try:
        return path_from_names(p.delta, names, start, 'path')
    except PresentationError as e:
        raise TermError("non-composable: %s" % e)


def term_from_word(p: KanPresentation, word: Word) -> Optional[Term]:
    if not word or not p.is_element(word[0]):
        return None
    if not p.is_composable(p.start_of(word[0]), tuple(word[1:])):
        return None
    return Term(word[0], tuple(word[1:]))


def tau(p: KanPresentation, t: Term) -> str:
    if t.word:
        return p.delta.arrow(t.word[-1]).tgt
    return p.start_of(t.element)


def _apply_t(rule: TRule, t: Term) -> Optional[Term]:
    u = rule.lhs.word
    if rule.lhs.element == t.element and t.word[:len(u)] == u:
        return Term(rule.rhs.element, rule.rhs.word + t.word[len(u):])
    return None


def _path_rewrites_at(r: RewriteSystem, word: Word, position: int) -> Iterator[Tuple[PRule, Word]]:
    for rule in r._p_by_first.get(word[position], ()):
        lhs = rule.lhs.arrows
        if word[position:position + len(lhs)] == lhs:
            yield rule, word[:position] + rule.rhs.arrows + word[position + len(lhs):]


def reduce_once(r: RewriteSystem, t: Term) -> Optional[Term]:
    for rule in r._t_by_element.get(t.element, ()):
        result = _apply_t(rule, t)
        if result is not None:
            return result

    for position in range(len(t.word)):
        for _, word in _path_rewrites_at(r, t.word, position):
            return Term(t.element, word)

    return None


def rewrites(r: RewriteSystem, t: Term) -> List[Term]:
    """All one-step rewrites of t, by any rule at any position."""
    results = []
    for rule in r._t_by_element.get(t.element, ()):
        result = _apply_t(rule, t)
        if result is not None:
            results.append(result)
    for position in range(len(t.word)):
        results.extend(Term(t.element, word) for _, word in _path_rewrites_at(r, t.word, position))
    return results


def reductions(r: RewriteSystem, t: Term) -> Iterator[Term]:
    current = t
    while True:
        current = reduce_once(r, current)
        if current is None:
            return
        yield current


def reduce(r: RewriteSystem, t: Term, max_steps: Optional[int] = None) -> Term:
    if max_steps is None:
        max_steps = config.MAX_REWRITE_STEPS

    current = t
    for step, current in enumerate(reductions(r, t), start=1):
        if step > max_steps:
            raise StepBudgetExceeded('reduction of %s exceeded %d steps' % (t, max_steps))
    return current


def reduce_path(r: RewriteSystem, path: Path, max_steps: Optional[int] = None) -> Path:
    if max_steps is None:
        max_steps = config.MAX_REWRITE_STEPS

    word = path.arrows
    for _ in range(max_steps + 1):
        for position in range(len(word)):
            rewritten = next((w for _, w in _path_rewrites_at(r, word, position)), None)
            if rewritten is not None:
                word = rewritten
                break
        else:
            return Path(path.start, word)

    raise StepBudgetExceeded('reduction of %s exceeded %d steps' % (path, max_steps))


def _reduce_side(r: RewriteSystem, side: Side) -> Side:
    if isinstance(side, Term):
        return reduce(r, side)
    return reduce_path(r, side)


def act(r: RewriteSystem, t: Term, path: Path, max_steps: Optional[int] = None) -> Term:
    target = tau(r.presentation, t)
    if path.start != target:
        raise TermError('non-composable: %s ends at %s but %s starts at %s' % (t, target, path, path.start))
    return reduce(r, t.append(path.arrows), max_steps)


def epsilon(r: RewriteSystem, x: str, max_steps: Optional[int] = None) -> Term:
    if not r.presentation.is_element(x):
        raise TermError('unknown element %r' % x)
    return reduce(r, Term(x), max_steps)


def _pair(r: RewriteSystem, overlap: Side, left: Side, right: Side) -> CriticalPair:
    return CriticalPair(overlap, _reduce_side(r, left), _reduce_side(r, right))


def critical_pairs(r: RewriteSystem) -> List[CriticalPair]:
    pairs = []

    for rule1 in r.p_rules:
        l1 = rule1.lhs.arrows
        for rule2 in r.p_rules:
            l2 = rule2.lhs.arrows
            for k in range(1, min(len(l1), len(l2))):
                if l1[-k:] == l2[:k]:
                    overlap = Path(rule1.lhs.start, l1 + l2[k:])
                    pairs.append(_pair(
                        r, overlap,
                        Path(rule1.lhs.start, rule1.rhs.arrows + l2[k:]),
                        Path(rule1.lhs.start, l1[:-k] + rule2.rhs.arrows)))
            if rule1 != rule2 and len(l2) <= len(l1):
                for i in range(len(l1) - len(l2) + 1):
                    if l1[i:i + len(l2)] == l2:
                        pairs.append(_pair(
                            r, rule1.lhs,
                            rule1.rhs,
                            Path(rule1.lhs.start, l1[:i] + rule2.rhs.arrows + l1[i + len(l2):])))

    for rule1 in r.t_rules:
        u1 = rule1.lhs.word
        for rule2 in r.t_rules:
            u2 = rule2.lhs.word
            if rule1 != rule2 and rule1.lhs.element == rule2.lhs.element and u2[:len(u1)] == u1:
                pairs.append(_pair(r, rule2.lhs, rule2.rhs, rule1.rhs.append(u2[len(u1):])))

    for t_rule in r.t_rules:
        x, u = t_rule.lhs.element, t_rule.lhs.word
        for p_rule in r.p_rules:
            l = p_rule.lhs.arrows
            for k in range(1, min(len(u), len(l) - 1) + 1):
                if u[-k:] == l[:k]:
                    pairs.append(_pair(
                        r, Term(x, u + l[k:]),
                        t_rule.rhs.append(l[k:]),
                        Term(x, u[:-k] + p_rule.rhs.arrows)))
            for i in range(len(u) - len(l) + 1):
                if u[i:i + len(l)] == l:
                    pairs.append(_pair(
                        r, t_rule.lhs,
                        t_rule.rhs,
                        Term(x, u[:i] + p_rule.rhs.arrows + u[i + len(l):])))

    unique = []
    seen = set()
    for pair in pairs:
        if pair not in seen:
            seen.add(pair)
            unique.append(pair)
    return unique


def is_complete(r: RewriteSystem) -> bool:
    return all(pair.joined for pair in critical_pairs(r))


def _reducible_by_others(r: RewriteSystem, rule: Rule) -> bool:
    others = r.without(rule)
    if isinstance(rule, TRule):
        return reduce_once(others, rule.lhs) is not None
    return _path_reducible(others, rule.lhs)


def _path_reducible(r: RewriteSystem, path: Path) -> bool:
    return any(True for position in range(len(path.arrows)) for _ in _path_rewrites_at(r, path.arrows, position))


def interreduce(r: RewriteSystem) -> RewriteSystem:
    system = r
    changed = True
    while changed:
        changed = False
        for rule in system.rules():
            others = system.without(rule)
            if _reducible_by_others(system, rule):
                logger.debug('Removing rule %s: left hand side is reducible', rule)
                replacement = orient(system, _reduce_side(others, rule.lhs), _reduce_side(others, rule.rhs))
                system = others if replacement is None else others.with_rule(replacement)
                changed = True
                break

            rhs = _reduce_side(others, rule.rhs)
            if rhs != rule.rhs:
                logger.debug('Reducing right hand side of %s to %s', rule, rhs)
                system = others.with_rule(type(rule)(rule.lhs, rhs))
                changed = True
                break

    return system


@timing
def completion(r: RewriteSystem, max_rounds: Optional[int] = None) -> CompletionResult:
    if max_rounds is None:
        max_rounds = config.MAX_COMPLETION_ROUNDS

    system = interreduce(r)
    rounds = 0
    added = 0

    while True:
        pending = [pair for pair in critical_pairs(system) if not pair.joined]
        if not pending:
            logger.info('Completed after %d rounds, %d rules added: %s', rounds, added, system)
            return CompletionResult(system, rounds, added)

        if rounds >= max_rounds:
            logger.warning('Completion gave up after %d rounds with %d unresolved pairs', rounds, len(pending))
            raise CompletionFailure(system, rounds)

        rounds += 1
        pending.sort(key=lambda pair: max(system.key(pair.left), system.key(pair.right)))
        logger.info('Round %d: %d unresolved critical pairs', rounds, len(pending))

        for pair in pending:
            left, right = _reduce_side(system, pair.left), _reduce_side(system, pair.right)
            rule = orient(system, left, right)
            if rule is None:
                continue
            logger.debug('Adding rule %s from overlap %s', rule, pair.overlap)
            system = interreduce(system.with_rule(rule))
            added += 1


def complete(r: RewriteSystem, max_rounds: Optional[int] = None) -> RewriteSystem:
    return completion(r, max_rounds).system


def lhs_sets(r: RewriteSystem) -> RulePrefixes:
    t_l = frozenset(rule.lhs for rule in r.t_rules)
    t_ppl = frozenset(
        Term(rule.lhs.element, rule.lhs.word[:k])
        for rule in r.t_rules
        for k in range(1, len(rule.lhs.word)))

    p_l = frozenset(rule.lhs for rule in r.p_rules)
    p_ppl = frozenset(
        Path(rule.lhs.start, rule.lhs.arrows[:k])
        for rule in r.p_rules
        for k in range(1, len(rule.lhs.arrows)))

    return RulePrefixes(
        terms=PrefixSets(l=t_l, pl=t_l | t_ppl, ppl=t_ppl),
        paths=PrefixSets(l=p_l, pl=p_l | p_ppl, ppl=p_ppl))
