'''
Builtin primitive functions.

A primitive returns a Value, or None when it fails (a false comparison,
a division by zero). Failures filter matches in queries and are runtime
errors in actions.
'''
from __future__ import annotations
from typing import Callable, Dict, List, Optional, Sequence, Tuple
from ..values import I64, UNIT, UNIT_SORT, Sort, UnionFind, Value, wrap_i64

Impl = Callable[..., Optional[Value]]


class Primitive:

    def __init__(self, name: str, inputs: Optional[Sequence[Sort]], output: Sort,
                 impl: Impl, arity: int = 2):
        # inputs=None: polymorphic over any single sort
        self.name = name
        self.inputs = None if inputs is None else tuple(inputs)
        self.output = output
        self.impl = impl
        self.arity = arity if inputs is None else len(self.inputs)  # type:ignore

    def __repr__(self):
        ins = 'any' if self.inputs is None else ', '.join(map(str, self.inputs))
        return f'Primitive({self.name}: {ins} -> {self.output})'

    @property
    def compares_ids(self):
        return self.inputs is None

    def accepts(self, sorts: Sequence[Optional[Sort]]) -> bool:
        if len(sorts) != self.arity:
            return False
        if self.inputs is None:
            known = {s for s in sorts if s is not None}
            return len(known) <= 1
        return all(s is None or s == t for s, t in zip(sorts, self.inputs))

    def apply(self, args: Sequence[Value], uf: Optional[UnionFind] = None) -> Optional[Value]:
        if self.compares_ids and uf is not None:
            args = [uf.find(a) for a in args]
        return self.impl(*args)


def _div(a: int, b: int):
    if b == 0:
        return None
    q = abs(a) // abs(b)
    return wrap_i64(q if (a < 0) == (b < 0) else -q)


def _mod(a: int, b: int):
    if b == 0:
        return None
    r = abs(a) % abs(b)
    return r if a >= 0 else -r


def _pred(test: Callable[..., bool]) -> Impl:
    return lambda *args: UNIT if test(*args) else None


def _arith(op: Callable[[int, int], int]) -> Impl:
    return lambda a, b: wrap_i64(op(a, b))


_i2 = (I64, I64)
BUILTINS: List[Primitive] = [
    Primitive('+', _i2, I64, _arith(lambda a, b: a + b)),
    Primitive('-', _i2, I64, _arith(lambda a, b: a - b)),
    Primitive('-', (I64,), I64, lambda a: wrap_i64(-a)),
    Primitive('*', _i2, I64, _arith(lambda a, b: a * b)),
    Primitive('/', _i2, I64, _div),
    Primitive('%', _i2, I64, _mod),
    Primitive('min', _i2, I64, min),
    Primitive('max', _i2, I64, max),
    Primitive('<', _i2, UNIT_SORT, _pred(lambda a, b: a < b)),
    Primitive('>', _i2, UNIT_SORT, _pred(lambda a, b: a > b)),
    Primitive('<=', _i2, UNIT_SORT, _pred(lambda a, b: a <= b)),
    Primitive('>=', _i2, UNIT_SORT, _pred(lambda a, b: a >= b)),
    Primitive('=', None, UNIT_SORT, _pred(lambda a, b: a == b)),
    Primitive('!=', None, UNIT_SORT, _pred(lambda a, b: a != b)),
]

_BY_NAME: Dict[str, List[Primitive]] = {}
for _p in BUILTINS:
    _BY_NAME.setdefault(_p.name, []).append(_p)


def is_primitive(name: str) -> bool:
    return name in _BY_NAME


def resolve(name: str, sorts: Sequence[Optional[Sort]]) -> Optional[Primitive]:
    for prim in _BY_NAME.get(name, ()):
        if prim.accepts(sorts):
            return prim
    return None


def signatures(name: str) -> Tuple[Primitive, ...]:
    return tuple(_BY_NAME.get(name, ()))
