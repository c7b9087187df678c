'''
S-expression reader with source locations.

Comments run from `;` to the end of the line. Strings are double-quoted
with backslash escapes. Integer tokens are 64-bit signed.
'''
from __future__ import annotations
import re
from bisect import bisect_right
from dataclasses import dataclass, field
from typing import List, Union
from ..errors import IncompleteInput, Loc, ParseError
from ..values import I64_MAX, I64_MIN

TOKEN = re.compile(
    r'''
    (?P<space>\s+)
    |(?P<comment>;[^\n]*)
    |(?P<open>\()
    |(?P<close>\))
    |(?P<string>"(?:[^"\\]|\\.)*")
    |(?P<quote>")
    |(?P<atom>[^\s()";]+)
    ''',
    re.VERBOSE | re.DOTALL,
)
INTEGER = re.compile(r'-?[0-9]+')
SYMBOL = re.compile(r'[:A-Za-z0-9\-_+*/<>=!?%.]+')
ESCAPES = {'n': '\n', 't': '\t', '"': '"', '\\': '\\'}


@dataclass
class Symbol:
    name: str
    loc: Loc = field(compare=False)


@dataclass
class Atom:
    'Integer or string literal'
    value: Union[int, str]
    loc: Loc = field(compare=False)


@dataclass
class SList:
    items: List['SExp']
    loc: Loc = field(compare=False)


SExp = Union[Symbol, Atom, SList]


def _unescape(body: str, loc: Loc) -> str:
    out = []
    it = iter(body)
    for c in it:
        if c != '\\':
            out.append(c)
            continue
        e = next(it, '')
        if e not in ESCAPES:
            raise ParseError(f'unknown escape \\{e}', loc)
        out.append(ESCAPES[e])
    return ''.join(out)


class Reader:

    def __init__(self, text: str):
        self.text = text
        self._line_starts = [0] + [m.end() for m in re.finditer('\n', text)]

    def loc(self, offset: int) -> Loc:
        line = bisect_right(self._line_starts, offset)
        return Loc(line, offset - self._line_starts[line - 1] + 1)

    def tokens(self):
        for m in TOKEN.finditer(self.text):
            kind = m.lastgroup
            if kind in ('space', 'comment'):
                continue
            loc = self.loc(m.start())
            if kind == 'quote':
                raise IncompleteInput('unterminated string', loc)
            yield kind, m.group(), loc

    def read_all(self) -> List[SExp]:
        stack: List[SList] = []
        top: List[SExp] = []
        for kind, text, loc in self.tokens():
            if kind == 'open':
                stack.append(SList([], loc))
                continue
            if kind == 'close':
                if not stack:
                    raise ParseError('unbalanced )', loc)
                node: SExp = stack.pop()
            elif kind == 'string':
                node = Atom(_unescape(text[1:-1], loc), loc)
            elif INTEGER.fullmatch(text):
                n = int(text)
                if not I64_MIN <= n <= I64_MAX:
                    raise ParseError(f'integer {text} does not fit in i64', loc)
                node = Atom(n, loc)
            elif SYMBOL.fullmatch(text):
                node = Symbol(text, loc)
            else:
                raise ParseError(f'invalid token {text!r}', loc)
            (stack[-1].items if stack else top).append(node)
        if stack:
            raise IncompleteInput('missing )', stack[-1].loc)
        return top


def read_all(text: str) -> List[SExp]:
    return Reader(text).read_all()
