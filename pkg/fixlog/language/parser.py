from __future__ import annotations
from typing import List, Optional, Sequence, Tuple
from ..errors import ParseError
from ..values import UNIT
from . import ast as A
from .reader import Atom, SExp, SList, Symbol, read_all

ACTION_HEADS = ('set', 'union', 'let', 'define', 'panic')


def _fail(msg: str, node: SExp):
    return ParseError(msg, node.loc)


def _symbol(node: SExp, what: str) -> str:
    if not isinstance(node, Symbol) or node.name.startswith(':'):
        raise _fail(f'expected {what}', node)
    return node.name


def _slist(node: SExp, what: str) -> List[SExp]:
    if not isinstance(node, SList):
        raise _fail(f'expected {what}', node)
    return node.items


def _head(node: SList) -> Optional[str]:
    if node.items and isinstance(node.items[0], Symbol):
        return node.items[0].name
    return None


def _arity(node: SList, lo: int, hi: Optional[int] = None):
    n = len(node.items) - 1
    hi = lo if hi is None else hi
    if not lo <= n <= hi:
        want = f'{lo}' if lo == hi else f'{lo} to {hi}'
        raise _fail(f'{_head(node)} expects {want} arguments, got {n}', node)


def _keywords(node: SList, items: Sequence[SExp], allowed: Sequence[str]):
    if len(items) % 2:
        raise _fail('keyword without value', node)
    out = {}
    for key, value in zip(items[::2], items[1::2]):
        if not isinstance(key, Symbol) or key.name not in allowed:
            raise _fail(f'unexpected {key}, expected one of {list(allowed)}', key)
        if key.name in out:
            raise _fail(f'repeated {key.name}', key)
        out[key.name] = value
    return out


def parse_expr(node: SExp) -> A.Expr:
    if isinstance(node, Symbol):
        if node.name.startswith(':'):
            raise _fail(f'unexpected keyword {node.name}', node)
        return A.Var(node.name, node.loc)
    if isinstance(node, Atom):
        return A.Lit(node.value, node.loc)
    if not node.items:
        return A.Lit(UNIT, node.loc)
    head = _symbol(node.items[0], 'function name')
    args = tuple(parse_expr(x) for x in node.items[1:])
    return A.Call(head, args, node.loc)


def parse_call(node: SExp) -> A.Call:
    expr = parse_expr(node)
    if not isinstance(expr, A.Call):
        raise _fail('expected a function application', node)
    return expr


def parse_action(node: SExp) -> A.Action:
    items = _slist(node, 'an action')
    head = _head(node)  # type:ignore
    assert isinstance(node, SList)
    if head == 'set':
        _arity(node, 2)
        return A.Set(parse_call(items[1]), parse_expr(items[2]), node.loc)
    if head == 'union':
        _arity(node, 2)
        return A.Union_(parse_expr(items[1]), parse_expr(items[2]), node.loc)
    if head in ('let', 'define'):
        _arity(node, 2)
        return A.Let(_symbol(items[1], 'a name'), parse_expr(items[2]), node.loc)
    if head == 'panic':
        _arity(node, 1)
        msg = items[1]
        if not isinstance(msg, Atom) or not isinstance(msg.value, str):
            raise _fail('panic expects a string', msg)
        return A.Panic(msg.value, node.loc)
    return A.Eval(parse_call(node), node.loc)


def _sorts(node: SExp) -> Tuple[str, ...]:
    return tuple(_symbol(x, 'a sort name') for x in _slist(node, 'a list of sorts'))


def _variant(node: SExp) -> A.Variant:
    items = _slist(node, 'a constructor')
    if not items:
        raise _fail('empty constructor', node)
    name = _symbol(items[0], 'a constructor name')
    return A.Variant(name, tuple(_symbol(x, 'a sort name') for x in items[1:]), node.loc)


def parse_command(node: SExp) -> A.Command:
    if not isinstance(node, SList) or not node.items:
        raise _fail('expected a command', node)
    head = _head(node)
    items = node.items
    loc = node.loc
    if head == 'sort':
        _arity(node, 1)
        return A.DeclareSort(_symbol(items[1], 'a sort name'), loc)
    if head == 'datatype':
        _arity(node, 1, len(items))
        name = _symbol(items[1], 'a sort name')
        return A.DeclareDatatype(name, tuple(_variant(x) for x in items[2:]), loc)
    if head == 'function':
        _arity(node, 3, 7)
        kw = _keywords(node, items[4:], (':merge', ':default'))
        merge = kw.get(':merge')
        default = kw.get(':default')
        return A.DeclareFunction(
            _symbol(items[1], 'a function name'),
            _sorts(items[2]),
            _symbol(items[3], 'an output sort'),
            None if merge is None else parse_expr(merge),
            None if default is None else parse_expr(default),
            loc,
        )
    if head == 'relation':
        _arity(node, 2)
        return A.DeclareRelation(_symbol(items[1], 'a relation name'), _sorts(items[2]), loc)
    if head == 'rule':
        _arity(node, 2, 4)
        kw = _keywords(node, items[3:], (':name',))
        name = kw.get(':name')
        if name is not None and not (isinstance(name, Atom) and isinstance(name.value, str)):
            raise _fail(':name expects a string', name)
        return A.Rule(
            tuple(parse_expr(x) for x in _slist(items[1], 'a list of facts')),
            tuple(parse_action(x) for x in _slist(items[2], 'a list of actions')),
            None if name is None else str(name.value),  # type:ignore
            loc,
        )
    if head in ('rewrite', 'birewrite'):
        _arity(node, 2, 4)
        kw = _keywords(node, items[3:], (':when',))
        when = kw.get(':when')
        facts = () if when is None else tuple(
            parse_expr(x) for x in _slist(when, 'a list of facts'))
        return A.Rewrite(parse_expr(items[1]), parse_expr(items[2]), facts,
                         head == 'birewrite', loc)
    if head == 'define':
        _arity(node, 2)
        return A.Define(_symbol(items[1], 'a name'), parse_expr(items[2]), loc)
    if head == 'run':
        _arity(node, 0, 1)
        if len(items) == 1:
            return A.Run(None, loc)
        n = items[1]
        if not isinstance(n, Atom) or not isinstance(n.value, int) or n.value < 0:
            raise _fail('run expects a non-negative iteration count', n)
        return A.Run(n.value, loc)
    if head == 'check':
        _arity(node, 1, len(items))
        return A.Check(tuple(parse_expr(x) for x in items[1:]), loc)
    if head == 'extract':
        _arity(node, 1)
        return A.Extract(parse_expr(items[1]), loc)
    if head == 'let':
        _arity(node, 2)
        return A.Define(_symbol(items[1], 'a name'), parse_expr(items[2]), loc)
    return A.ActionCommand(parse_action(node), loc)


def parse(text: str) -> List[A.Command]:
    return [parse_command(node) for node in read_all(text)]


def parse_exprs(text: str) -> List[A.Expr]:
    return [parse_expr(node) for node in read_all(text)]
