'''
Typed intermediate representation produced by the typechecker.
'''
from __future__ import annotations
from dataclasses import dataclass
from typing import Dict, Optional, Tuple, Union
from ..database.types import custom_repr
from ..errors import EvalError, Loc
from ..values import UNIT_SORT, Sort, UnionFind, Value
from .primitives import Primitive


class FunctionDecl:
    '''
    A declared function. Datatype constructors, relations and define'd
    globals are all functions; `origin` says which surface form made it.
    '''

    def __init__(
        self,
        name: str,
        inputs: Tuple[Sort, ...],
        output: Sort,
        index: int,
        merge: Optional['TExpr'] = None,
        default: Optional['TExpr'] = None,
        origin: str = 'function',
    ):
        self.name = name
        self.inputs = inputs
        self.output = output
        self.index = index
        self.merge = merge
        self.default = default
        self.origin = origin

    def __repr__(self):
        return custom_repr(self, 'name', 'inputs', 'output')

    @property
    def arity(self):
        return len(self.inputs)

    @property
    def has_id_output(self):
        return not self.output.is_primitive

    @property
    def is_relation(self):
        return self.output == UNIT_SORT

    @property
    def extractable(self):
        return self.has_id_output and self.origin != 'define'


@dataclass(frozen=True)
class TVar:
    name: str
    sort: Sort


@dataclass(frozen=True)
class TLit:
    value: Value
    sort: Sort


@dataclass(frozen=True)
class TApp:
    decl: FunctionDecl
    args: Tuple['TExpr', ...]

    @property
    def sort(self) -> Sort:
        return self.decl.output


@dataclass(frozen=True)
class TPrim:
    prim: Primitive
    args: Tuple['TExpr', ...]

    @property
    def sort(self) -> Sort:
        return self.prim.output


TExpr = Union[TVar, TLit, TApp, TPrim]


@dataclass(frozen=True)
class TEq:
    'Both sides denote the same value'
    left: TExpr
    right: TExpr


@dataclass(frozen=True)
class TFact:
    expr: TExpr


TFactLike = Union[TEq, TFact]


@dataclass(frozen=True)
class TSet:
    app: TApp
    value: TExpr


@dataclass(frozen=True)
class TUnion:
    left: TExpr
    right: TExpr


@dataclass(frozen=True)
class TLet:
    name: str
    expr: TExpr


@dataclass(frozen=True)
class TPanic:
    message: str


@dataclass(frozen=True)
class TEval:
    expr: TExpr


TAction = Union[TSet, TUnion, TLet, TPanic, TEval]


@dataclass
class TypedQuery:
    facts: Tuple[TFactLike, ...]
    var_sorts: Dict[str, Sort]


@dataclass
class TypedRule:
    name: str
    query: TypedQuery
    actions: Tuple[TAction, ...]
    loc: Optional[Loc] = None


def evaluate_pure(expr: TExpr, env: Dict[str, Value], uf: Optional[UnionFind] = None) -> Value:
    'Evaluate a merge or default expression (variables, literals, builtins)'
    if isinstance(expr, TLit):
        return expr.value
    if isinstance(expr, TVar):
        return env[expr.name]
    if isinstance(expr, TPrim):
        args = [evaluate_pure(a, env, uf) for a in expr.args]
        out = expr.prim.apply(args, uf)
        if out is None:
            raise EvalError(f'primitive {expr.prim.name} failed on {args}')
        return out
    raise EvalError(f'function {expr.decl.name} cannot be called here')
