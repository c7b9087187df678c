'''
Constants, sorts and the equivalence relation over ids.

A Value is one of
    int   : signed 64-bit integer (sort i64)
    str   : string (sort String)
    UNIT  : the unit constant (sort Unit)
    Id    : uninterpreted constant of a user sort
'''
from __future__ import annotations
from typing import Dict, Iterator, List, NamedTuple, Tuple, Union
from typing_extensions import Literal
from .errors import TypeCheckError

SortKind = Literal['i64', 'String', 'Unit', 'user']


class Sort(NamedTuple):
    name: str
    kind: SortKind = 'user'

    @property
    def is_primitive(self):
        return self.kind != 'user'

    def __repr__(self):
        return self.name


I64 = Sort('i64', 'i64')
STRING = Sort('String', 'String')
UNIT_SORT = Sort('Unit', 'Unit')
PRIMITIVE_SORTS: Dict[str, Sort] = {s.name: s for s in (I64, STRING, UNIT_SORT)}


class Unit:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return '()'

    def __lt__(self, other):
        return False

    def __reduce__(self):
        return (Unit, ())


UNIT = Unit()


class Id(NamedTuple):
    sort: str
    raw: int

    def __repr__(self):
        return f'{self.sort}#{self.raw}'


Value = Union[int, str, Unit, Id]

I64_MIN = -(1 << 63)
I64_MAX = (1 << 63) - 1


def wrap_i64(n: int) -> int:
    return ((n - I64_MIN) & 0xFFFFFFFFFFFFFFFF) + I64_MIN


def value_key(v: Value) -> tuple:
    'Total order over values, used wherever output must be deterministic'
    if isinstance(v, Id):
        return (3, v.sort, v.raw)
    if isinstance(v, Unit):
        return (2,)
    if isinstance(v, str):
        return (1, v)
    return (0, v)


def tuple_key(values) -> tuple:
    return tuple(value_key(v) for v in values)


def quote_string(s: str) -> str:
    escaped = (s.replace('\\', '\\\\').replace('"', '\\"').replace(
        '\n', '\\n').replace('\t', '\\t'))
    return f'"{escaped}"'


def format_value(v: Value) -> str:
    if isinstance(v, str):
        return quote_string(v)
    return repr(v)


def sort_of(v: Value) -> str:
    if isinstance(v, Id):
        return v.sort
    if isinstance(v, Unit):
        return UNIT_SORT.name
    if isinstance(v, str):
        return STRING.name
    return I64.name


class UnionFind:
    '''
    Per-sort union-find with min-representative canonicalization.

    fresh_id(sort)   -> Id
    find(value)      -> Value   (primitives pass through)
    union(x, y)      -> Value   (the representative of the merged class)
    take_dirty()     -> List[Id] ids that stopped being representatives
    '''

    def __init__(self):
        self._parents: Dict[str, List[int]] = {}
        self._dirty: List[Id] = []
        self.unions = 0

    def __repr__(self):
        sizes = {s: len(p) for s, p in self._parents.items()}
        return f'UnionFind(sizes={sizes}, unions={self.unions})'

    def add_sort(self, sort: Sort):
        if sort.is_primitive:
            raise TypeCheckError(f'{sort.name} is primitive and has no ids')
        self._parents.setdefault(sort.name, [])

    def fresh_id(self, sort: Sort) -> Id:
        if sort.is_primitive:
            raise TypeCheckError(f'cannot mint an id of primitive sort {sort.name}')
        parents = self._parents.setdefault(sort.name, [])
        raw = len(parents)
        parents.append(raw)
        return Id(sort.name, raw)

    def find(self, x: Value) -> Value:
        if not isinstance(x, Id):
            return x
        parents = self._parents[x.sort]
        i = x.raw
        while parents[i] != i:
            parents[i] = parents[parents[i]]
            i = parents[i]
        return x if i == x.raw else Id(x.sort, i)

    def check_union(self, x: Value, y: Value):
        if not isinstance(x, Id) or not isinstance(y, Id):
            culprit = y if isinstance(x, Id) else x
            raise TypeCheckError(
                f'cannot union {format_value(culprit)}: {sort_of(culprit)} is primitive'
            )
        if x.sort != y.sort:
            raise TypeCheckError(f'cannot union ids of sorts {x.sort} and {y.sort}')

    def union(self, x: Value, y: Value) -> Value:
        self.check_union(x, y)
        rx, ry = self.find(x), self.find(y)
        assert isinstance(rx, Id) and isinstance(ry, Id)
        if rx == ry:
            return rx
        lo, hi = (rx, ry) if rx.raw < ry.raw else (ry, rx)
        self._parents[x.sort][hi.raw] = lo.raw
        self._dirty.append(hi)
        self.unions += 1
        return lo

    def equiv(self, x: Value, y: Value) -> bool:
        return self.find(x) == self.find(y)

    def take_dirty(self) -> List[Id]:
        dirty, self._dirty = self._dirty, []
        return dirty

    @property
    def has_dirty(self):
        return bool(self._dirty)

    def ids(self, sort: str) -> Iterator[Id]:
        for raw in range(len(self._parents.get(sort, ()))):
            yield Id(sort, raw)

    def size(self, sort: str) -> int:
        return len(self._parents.get(sort, ()))

    def num_classes(self) -> int:
        total = 0
        for sort, parents in self._parents.items():
            total += sum(1 for i in range(len(parents)) if self.find(Id(sort, i)).raw == i)
        return total

    def classes(self) -> Dict[Id, Tuple[Id, ...]]:
        out: Dict[Id, List[Id]] = {}
        for sort in self._parents:
            for x in self.ids(sort):
                rep = self.find(x)
                assert isinstance(rep, Id)
                out.setdefault(rep, []).append(x)
        return {k: tuple(v) for k, v in out.items()}
