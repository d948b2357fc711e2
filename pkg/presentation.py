# coding=utf-8
"""
Kan extension presentations kan<Gamma | Delta | RelB | X | F>.

A presentation file is line oriented, `#` starts a comment:

    objects A : A1 A2
    arrows A : a1 : A1 -> A2 ; a2 : A2 -> A1
    objects B : B1 B2 B3
    arrows B : b1 : B1 -> B2 ; b2 : B2 -> B3 ; b3 : B3 -> B1 ; b4 : B1 -> B1 ; b5 : B1 -> B3
    relations B : b1 b2 b3 = b4
    X A1 : x1 x2 x3
    X A2 : y1 y2
    X a1 : x1 -> y1 ; x2 -> y2 ; x3 -> y1
    X a2 : y1 -> x1 ; y2 -> x2
    F A1 : B1
    F A2 : B2
    F a1 : b1
    F a2 : b2 b3
    order : x1 x2 x3 y1 y2 b1 b2 b3 b4 b5
"""
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, List, NamedTuple, Optional, Tuple

from kan_helpers import PresentationError, PresentationSyntaxError, logger, words_text

NAME = re.compile(r'[A-Za-z_][A-Za-z0-9_]*')
TOKEN = re.compile(r'\s*(->|[:;=]|[A-Za-z_][A-Za-z0-9_]*)')
IDENTITY = 'id'
ZERO = '0'

Word = Tuple[str, ...]
Relation = Tuple[Word, Word]


@dataclass(frozen=True)
class Arrow:
    name: str
    src: str
    tgt: str


@dataclass(frozen=True)
class Graph:
    objects: Tuple[str, ...] = ()
    arrows: Tuple[Arrow, ...] = ()

    @cached_property
    def by_name(self) -> Dict[str, Arrow]:
        return {a.name: a for a in self.arrows}

    def arrow(self, name: str) -> Arrow:
        return self.by_name[name]


@dataclass(frozen=True)
class Path:
    start: str
    arrows: Word = ()

    def is_identity(self) -> bool:
        return not self.arrows

    def __str__(self):
        if self.arrows:
            return ' '.join(self.arrows)
        return 'id_%s' % self.start


@dataclass(frozen=True)
class KanPresentation:
    gamma: Graph
    delta: Graph
    relations: Tuple[Tuple[Path, Path], ...]
    x_obj: Dict[str, Word]
    x_arr: Dict[str, Dict[str, str]]
    f_obj: Dict[str, str]
    f_arr: Dict[str, Path]
    alphabet_order: Word

    @cached_property
    def order_index(self) -> Dict[str, int]:
        return {symbol: i for i, symbol in enumerate(self.alphabet_order)}

    @cached_property
    def homes(self) -> Dict[str, str]:
        return {x: obj for obj, elements in self.x_obj.items() for x in elements}

    @property
    def elements(self) -> Word:
        return tuple(s for s in self.alphabet_order if s in self.homes)

    @property
    def arrows(self) -> Word:
        return tuple(s for s in self.alphabet_order if s in self.delta.by_name)

    def is_element(self, symbol: str) -> bool:
        return symbol in self.homes

    def is_arrow(self, symbol: str) -> bool:
        return symbol in self.delta.by_name

    def home(self, x: str) -> str:
        return self.homes[x]

    def start_of(self, x: str) -> str:
        return self.f_obj[self.homes[x]]

    def act_element(self, x: str, a: str) -> str:
        return self.x_arr[a][x]

    def path_end(self, path: Path) -> str:
        if path.arrows:
            return self.delta.arrow(path.arrows[-1]).tgt
        return path.start

    def is_composable(self, start: str, arrows: Word) -> bool:
        current = start
        for name in arrows:
            arrow = self.delta.by_name.get(name)
            if arrow is None or arrow.src != current:
                return False
            current = arrow.tgt
        return True


class SemigroupPresentation(NamedTuple):
    generators: Word
    relations: Tuple[Relation, ...]


class _Line(NamedTuple):
    number: int
    keyword: str
    head: Optional[str]
    body: List[Tuple[str, int]]


def _tokenize(text: str, number: int) -> List[Tuple[str, int]]:
    tokens = []
    position = 0
    stripped = text.rstrip()
    while position < len(stripped):
        match = TOKEN.match(stripped, position)
        if not match:
            while stripped[position].isspace():
                position += 1
            raise PresentationSyntaxError(number, position + 1, 'unexpected character %r' % stripped[position])
        tokens.append((match.group(1), match.start(1) + 1))
        position = match.end()
    return tokens


def _split(tokens: List[Tuple[str, int]], separator: str) -> List[List[Tuple[str, int]]]:
    parts = [[]]
    for token in tokens:
        if token[0] == separator:
            parts.append([])
        else:
            parts[-1].append(token)
    return parts


def _parts(line: _Line) -> List[List[Tuple[str, int]]]:
    if not line.body:
        return []
    return _split(line.body, ';')


def _read_lines(text: str) -> List[_Line]:
    lines = []

    for number, raw in enumerate(text.splitlines(), start=1):
        tokens = _tokenize(raw.split('#', 1)[0], number)
        if not tokens:
            continue

        keyword, column = tokens[0]
        if keyword not in ('objects', 'arrows', 'relations', 'X', 'F', 'order'):
            raise PresentationSyntaxError(number, column, 'unknown declaration %r' % keyword)

        if keyword == 'order':
            head, rest = None, tokens[1:]
        else:
            if len(tokens) < 2 or not NAME.fullmatch(tokens[1][0]):
                raise PresentationSyntaxError(number, column, '%s needs a graph or name' % keyword)
            head, rest = tokens[1][0], tokens[2:]

            if keyword in ('objects', 'arrows') and head not in ('A', 'B'):
                raise PresentationSyntaxError(number, tokens[1][1], 'graph must be A or B, not %r' % head)
            if keyword == 'relations' and head != 'B':
                raise PresentationSyntaxError(number, tokens[1][1], 'relations are only given on B')

        if not rest or rest[0][0] != ':':
            column = rest[0][1] if rest else len(raw.rstrip()) + 1
            raise PresentationSyntaxError(number, column, "expected ':'")

        lines.append(_Line(number, keyword, head, rest[1:]))

    if not lines:
        raise PresentationSyntaxError(1, 1, 'empty presentation file')

    return lines


def _names(line: _Line, tokens: List[Tuple[str, int]]) -> Word:
    for token, column in tokens:
        if not NAME.fullmatch(token):
            raise PresentationSyntaxError(line.number, column, 'expected a name, got %r' % token)
    return tuple(token for token, _ in tokens)


def _arrow_decl(line: _Line, tokens: List[Tuple[str, int]]) -> Arrow:
    shape = [t for t, _ in tokens]
    if len(shape) != 5 or shape[1] != ':' or shape[3] != '->':
        column = tokens[0][1] if tokens else 1
        raise PresentationSyntaxError(line.number, column, "arrow must be written 'name : src -> tgt'")
    name, src, tgt = _names(line, [tokens[0], tokens[2], tokens[4]])
    return Arrow(name, src, tgt)


def _mapping(line: _Line, tokens: List[Tuple[str, int]]) -> Tuple[str, str]:
    shape = [t for t, _ in tokens]
    if len(shape) != 3 or shape[1] != '->':
        column = tokens[0][1] if tokens else 1
        raise PresentationSyntaxError(line.number, column, "mapping must be written 'x -> y'")
    source, target = _names(line, [tokens[0], tokens[2]])
    return source, target


def _identity_start(token: str) -> Optional[str]:
    if token.startswith(IDENTITY + '_'):
        return token[len(IDENTITY) + 1:]
    return None


def _is_identity(token: str) -> bool:
    return token == IDENTITY or _identity_start(token) is not None


def path_from_names(delta: Graph, names: Word, start: Optional[str], where: str) -> Path:
    """Builds a validated path; `id` takes its object from `start`, `id_B` names it."""
    if len(names) == 1 and _is_identity(names[0]):
        explicit = _identity_start(names[0])
        if explicit is not None:
            if explicit not in delta.objects:
                raise PresentationError('%s: unknown object %r' % (where, explicit))
            if start is not None and start != explicit:
                raise PresentationError('%s: identity id_%s does not start at %s' % (where, explicit, start))
            return Path(explicit)
        if start is None:
            raise PresentationError('%s: ambiguous identity, write id_<Object>' % where)
        return Path(start)

    if not names:
        raise PresentationError('%s: empty path' % where)

    for name in names:
        if _is_identity(name):
            raise PresentationError('%s: identity inside a composite path' % where)
        if name not in delta.by_name:
            raise PresentationError('%s: unknown arrow %r' % (where, name))

    first = delta.arrow(names[0]).src
    if start is not None and first != start:
        raise PresentationError('%s: path %s starts at %s, expected %s' % (where, ' '.join(names), first, start))

    current = first
    for name in names:
        arrow = delta.arrow(name)
        if arrow.src != current:
            raise PresentationError('%s: non-composable path %s' % (where, ' '.join(names)))
        current = arrow.tgt

    return Path(first, tuple(names))


def _relation(delta: Graph, line: _Line, tokens: List[Tuple[str, int]]) -> Tuple[Path, Path]:
    sides = _split(tokens, '=')
    if len(sides) != 2 or not sides[0] or not sides[1]:
        column = tokens[0][1] if tokens else 1
        raise PresentationSyntaxError(line.number, column, "relation must be written 'path = path'")

    left, right = _names(line, sides[0]), _names(line, sides[1])
    where = 'relation on line %d' % line.number

    start = None
    for names in (left, right):
        if not _is_identity(names[0]):
            if names[0] not in delta.by_name:
                raise PresentationError('%s: unknown arrow %r' % (where, names[0]))
            start = delta.arrow(names[0]).src
            break

    lhs = path_from_names(delta, left, start, where)
    rhs = path_from_names(delta, right, lhs.start, where)

    lhs_end = delta.arrow(lhs.arrows[-1]).tgt if lhs.arrows else lhs.start
    rhs_end = delta.arrow(rhs.arrows[-1]).tgt if rhs.arrows else rhs.start
    if lhs_end != rhs_end:
        raise PresentationError('%s: relation endpoint mismatch (%s and %s)' % (where, lhs_end, rhs_end))

    return lhs, rhs


def _graph(objects: List[str], arrows: List[Arrow], which: str) -> Graph:
    seen = set()
    for name in objects + [a.name for a in arrows]:
        if name in seen:
            raise PresentationError('duplicate symbol %r in graph %s' % (name, which))
        if _is_identity(name):
            raise PresentationError('reserved name %r in graph %s' % (name, which))
        seen.add(name)

    for arrow in arrows:
        for end in (arrow.src, arrow.tgt):
            if end not in objects:
                raise PresentationError('unknown object %r for arrow %s of graph %s' % (end, arrow.name, which))

    return Graph(tuple(objects), tuple(arrows))


def parse_presentation(text: str) -> KanPresentation:
    lines = _read_lines(text)

    objects = {'A': [], 'B': []}
    arrows = {'A': [], 'B': []}
    for line in lines:
        if line.keyword == 'objects':
            objects[line.head].extend(_names(line, line.body))
        elif line.keyword == 'arrows':
            arrows[line.head].extend(_arrow_decl(line, part) for part in _parts(line))

    gamma = _graph(objects['A'], arrows['A'], 'A')
    delta = _graph(objects['B'], arrows['B'], 'B')

    if not delta.objects:
        raise PresentationError('graph B needs at least one object')

    relations = []
    x_obj: Dict[str, Word] = {}
    x_arr: Dict[str, Dict[str, str]] = {}
    f_obj: Dict[str, str] = {}
    f_names: Dict[str, Tuple[_Line, Word]] = {}
    order = None

    for line in lines:
        if line.keyword == 'relations':
            relations.extend(_relation(delta, line, part) for part in _parts(line))

        elif line.keyword == 'X':
            if line.head in gamma.objects:
                x_obj[line.head] = x_obj.get(line.head, ()) + _names(line, line.body)
            elif line.head in gamma.by_name:
                mapping = x_arr.setdefault(line.head, {})
                for part in _parts(line):
                    source, target = _mapping(line, part)
                    if source in mapping:
                        raise PresentationError('X %s maps %r twice' % (line.head, source))
                    mapping[source] = target
            else:
                raise PresentationError('X on unknown object or arrow %r of A' % line.head)

        elif line.keyword == 'F':
            if line.head in gamma.objects:
                names = _names(line, line.body)
                if len(names) != 1 or names[0] not in delta.objects:
                    raise PresentationError('F %s: unknown object %s of B' % (line.head, ' '.join(names)))
                f_obj[line.head] = names[0]
            elif line.head in gamma.by_name:
                f_names[line.head] = (line, _names(line, line.body))
            else:
                raise PresentationError('F on unknown object or arrow %r of A' % line.head)

        elif line.keyword == 'order':
            if order is not None:
                raise PresentationError('order declared twice (line %d)' % line.number)
            order = _names(line, line.body)

    if order is None:
        raise PresentationError("missing 'order' line: the alphabet order is mandatory")

    for obj in gamma.objects:
        if obj not in f_obj:
            raise PresentationError('F is not given on object %s' % obj)
        x_obj.setdefault(obj, ())

    f_arr: Dict[str, Path] = {}
    for arrow in gamma.arrows:
        if arrow.name not in f_names:
            raise PresentationError('F is not given on arrow %s' % arrow.name)
        line, names = f_names[arrow.name]
        path = path_from_names(delta, names, f_obj[arrow.src], 'F %s' % arrow.name)
        end = delta.arrow(path.arrows[-1]).tgt if path.arrows else path.start
        if end != f_obj[arrow.tgt]:
            raise PresentationError(
                'F %s: F-image path endpoint mismatch (ends at %s, F(%s) = %s)' % (
                    arrow.name, end, arrow.tgt, f_obj[arrow.tgt]))
        f_arr[arrow.name] = path

    presentation = KanPresentation(
        gamma=gamma,
        delta=delta,
        relations=tuple(relations),
        x_obj=x_obj,
        x_arr=x_arr,
        f_obj=f_obj,
        f_arr=f_arr,
        alphabet_order=order,
    )
    validate(presentation)

    logger.info('Parsed presentation: %d objects and %d arrows in A, %d objects and %d arrows in B, '
                '%d relations, %d elements', len(gamma.objects), len(gamma.arrows), len(delta.objects),
                len(delta.arrows), len(relations), len(presentation.homes))

    return presentation


def validate(p: KanPresentation) -> None:
    symbols = [x for obj in p.gamma.objects for x in p.x_obj.get(obj, ())]
    seen = set()
    for x in symbols:
        if x in seen:
            raise PresentationError('duplicate symbol %r: element sets must be disjoint' % x)
        if x in p.delta.by_name:
            raise PresentationError('duplicate symbol %r: element names must differ from arrow names' % x)
        if _is_identity(x):
            raise PresentationError('reserved name %r used as an element' % x)
        seen.add(x)

    for arrow in p.gamma.arrows:
        mapping = p.x_arr.get(arrow.name)
        if mapping is None:
            raise PresentationError('X is not given on arrow %s' % arrow.name)
        domain, codomain = p.x_obj[arrow.src], p.x_obj[arrow.tgt]
        for x in domain:
            if x not in mapping:
                raise PresentationError('X %s is not total: %r has no image' % (arrow.name, x))
        for x, y in mapping.items():
            if x not in domain:
                raise PresentationError('X %s: %r is not an element of X%s' % (arrow.name, x, arrow.src))
            if y not in codomain:
                raise PresentationError('X %s: image %r is not an element of X%s' % (arrow.name, y, arrow.tgt))

    sigma = set(symbols) | {a.name for a in p.delta.arrows}
    order = list(p.alphabet_order)
    if len(set(order)) != len(order):
        raise PresentationError('incomplete alphabet order: a symbol is listed twice')
    if set(order) != sigma:
        missing = sorted(sigma - set(order))
        unknown = sorted(set(order) - sigma)
        raise PresentationError('incomplete alphabet order: missing %s, unknown %s' % (missing, unknown))


def load_presentation(filename: str) -> KanPresentation:
    with open(filename, encoding='utf-8') as f:
        return parse_presentation(f.read())


def format_presentation(p: KanPresentation) -> str:
    lines = []

    for which, graph in (('A', p.gamma), ('B', p.delta)):
        lines.append(('objects %s : %s' % (which, ' '.join(graph.objects))).rstrip())
        if graph.arrows:
            lines.append('arrows %s : %s' % (which, ' ; '.join(
                '%s : %s -> %s' % (a.name, a.src, a.tgt) for a in graph.arrows)))

    if p.relations:
        lines.append('relations B : %s' % ' ; '.join('%s = %s' % (l, r) for l, r in p.relations))

    for obj in p.gamma.objects:
        lines.append(('X %s : %s' % (obj, ' '.join(p.x_obj[obj]))).rstrip())
    for arrow in p.gamma.arrows:
        mapping = p.x_arr[arrow.name]
        lines.append(('X %s : %s' % (arrow.name, ' ; '.join(
            '%s -> %s' % (x, mapping[x]) for x in p.x_obj[arrow.src]))).rstrip())

    for obj in p.gamma.objects:
        lines.append('F %s : %s' % (obj, p.f_obj[obj]))
    for arrow in p.gamma.arrows:
        lines.append('F %s : %s' % (arrow.name, p.f_arr[arrow.name]))

    lines.append(('order : %s' % ' '.join(p.alphabet_order)).rstrip())
    return '\n'.join(lines) + '\n'


def semigroup_presentation(p: KanPresentation) -> SemigroupPresentation:
    generators = p.alphabet_order + (ZERO,)
    zero = (ZERO,)
    relations: List[Relation] = []

    def add(lhs: Word, rhs: Word):
        relation = (lhs, rhs)
        if relation not in seen:
            seen.add(relation)
            relations.append(relation)

    seen = set()

    for u in generators:
        add((ZERO, u), zero)
        add((u, ZERO), zero)

    for u in generators:
        for x in p.elements:
            add((u, x), zero)

    for x in p.elements:
        for b in p.arrows:
            if p.delta.arrow(b).src != p.start_of(x):
                add((x, b), zero)

    for b1 in p.arrows:
        for b2 in p.arrows:
            if p.delta.arrow(b2).src != p.delta.arrow(b1).tgt:
                add((b1, b2), zero)

    for arrow in p.gamma.arrows:
        for x in p.x_obj[arrow.src]:
            add((x,) + p.f_arr[arrow.name].arrows, (p.act_element(x, arrow.name),))

    for lhs, rhs in p.relations:
        add(lhs.arrows, rhs.arrows)

    return SemigroupPresentation(generators, tuple(relations))


def format_semigroup(s: SemigroupPresentation) -> str:
    lines = ['generators : %s' % ' '.join(s.generators)]
    lines.extend('%s = %s' % (words_text(lhs), words_text(rhs)) for lhs, rhs in s.relations)
    return '\n'.join(lines) + '\n'
