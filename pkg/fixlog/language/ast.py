'''
Surface syntax tree. Locations never take part in equality.
'''
from __future__ import annotations
from dataclasses import dataclass, field
from typing import Optional, Tuple, Union
from ..errors import Loc
from ..values import Value


def _loc():
    return field(default=None, compare=False, repr=False)


# Expressions and patterns


@dataclass(frozen=True)
class Var:
    name: str
    loc: Optional[Loc] = _loc()


@dataclass(frozen=True)
class Lit:
    value: Value
    loc: Optional[Loc] = _loc()


@dataclass(frozen=True)
class Call:
    head: str
    args: Tuple['Expr', ...] = ()
    loc: Optional[Loc] = _loc()


Expr = Union[Var, Lit, Call]

# Actions


@dataclass(frozen=True)
class Set:
    call: Call
    value: Expr
    loc: Optional[Loc] = _loc()


@dataclass(frozen=True)
class Union_:
    left: Expr
    right: Expr
    loc: Optional[Loc] = _loc()


@dataclass(frozen=True)
class Let:
    name: str
    expr: Expr
    loc: Optional[Loc] = _loc()


@dataclass(frozen=True)
class Panic:
    message: str
    loc: Optional[Loc] = _loc()


@dataclass(frozen=True)
class Eval:
    expr: Expr
    loc: Optional[Loc] = _loc()


Action = Union[Set, Union_, Let, Panic, Eval]

# Commands


@dataclass(frozen=True)
class Variant:
    name: str
    inputs: Tuple[str, ...] = ()
    loc: Optional[Loc] = _loc()


@dataclass(frozen=True)
class DeclareSort:
    name: str
    loc: Optional[Loc] = _loc()


@dataclass(frozen=True)
class DeclareDatatype:
    name: str
    variants: Tuple[Variant, ...]
    loc: Optional[Loc] = _loc()


@dataclass(frozen=True)
class DeclareFunction:
    name: str
    inputs: Tuple[str, ...]
    output: str
    merge: Optional[Expr] = None
    default: Optional[Expr] = None
    loc: Optional[Loc] = _loc()
    # function | constructor | relation | define
    origin: str = field(default='function', compare=False, repr=False)


@dataclass(frozen=True)
class DeclareRelation:
    name: str
    inputs: Tuple[str, ...]
    loc: Optional[Loc] = _loc()


@dataclass(frozen=True)
class Rule:
    query: Tuple[Expr, ...]
    actions: Tuple[Action, ...]
    name: Optional[str] = None
    loc: Optional[Loc] = _loc()


@dataclass(frozen=True)
class Rewrite:
    lhs: Expr
    rhs: Expr
    when: Tuple[Expr, ...] = ()
    bidirectional: bool = False
    loc: Optional[Loc] = _loc()


@dataclass(frozen=True)
class Define:
    name: str
    expr: Expr
    loc: Optional[Loc] = _loc()


@dataclass(frozen=True)
class ActionCommand:
    action: Action
    loc: Optional[Loc] = _loc()


@dataclass(frozen=True)
class Run:
    limit: Optional[int] = None
    loc: Optional[Loc] = _loc()


@dataclass(frozen=True)
class Check:
    facts: Tuple[Expr, ...]
    loc: Optional[Loc] = _loc()


@dataclass(frozen=True)
class Extract:
    expr: Expr
    loc: Optional[Loc] = _loc()


Command = Union[DeclareSort, DeclareDatatype, DeclareFunction, DeclareRelation,
                Rule, Rewrite, Define, ActionCommand, Run, Check, Extract]


def expr_vars(expr: Expr):
    'Variable names of an expression, in first-occurrence order'
    if isinstance(expr, Var):
        yield expr.name
    elif isinstance(expr, Call):
        for arg in expr.args:
            yield from expr_vars(arg)
