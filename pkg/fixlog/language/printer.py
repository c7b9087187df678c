'''
Prints commands back to surface syntax; parse(print(c)) == c.
'''
from __future__ import annotations
from typing import Iterable
from ..values import Unit, format_value
from . import ast as A


def _list(items: Iterable[str]) -> str:
    return '(' + ' '.join(items) + ')'


def format_expr(expr: A.Expr) -> str:
    if isinstance(expr, A.Var):
        return expr.name
    if isinstance(expr, A.Lit):
        return '()' if isinstance(expr.value, Unit) else format_value(expr.value)
    return _list([expr.head, *map(format_expr, expr.args)])


def format_action(action: A.Action) -> str:
    if isinstance(action, A.Set):
        return _list(['set', format_expr(action.call), format_expr(action.value)])
    if isinstance(action, A.Union_):
        return _list(['union', format_expr(action.left), format_expr(action.right)])
    if isinstance(action, A.Let):
        return _list(['let', action.name, format_expr(action.expr)])
    if isinstance(action, A.Panic):
        return _list(['panic', format_value(action.message)])
    return format_expr(action.expr)


def format_command(cmd: A.Command) -> str:
    if isinstance(cmd, A.DeclareSort):
        return _list(['sort', cmd.name])
    if isinstance(cmd, A.DeclareDatatype):
        variants = (_list([v.name, *v.inputs]) for v in cmd.variants)
        return _list(['datatype', cmd.name, *variants])
    if isinstance(cmd, A.DeclareFunction):
        parts = ['function', cmd.name, _list(cmd.inputs), cmd.output]
        if cmd.merge is not None:
            parts += [':merge', format_expr(cmd.merge)]
        if cmd.default is not None:
            parts += [':default', format_expr(cmd.default)]
        return _list(parts)
    if isinstance(cmd, A.DeclareRelation):
        return _list(['relation', cmd.name, _list(cmd.inputs)])
    if isinstance(cmd, A.Rule):
        parts = [
            'rule',
            _list(map(format_expr, cmd.query)),
            _list(map(format_action, cmd.actions)),
        ]
        if cmd.name is not None:
            parts += [':name', format_value(cmd.name)]
        return _list(parts)
    if isinstance(cmd, A.Rewrite):
        head = 'birewrite' if cmd.bidirectional else 'rewrite'
        parts = [head, format_expr(cmd.lhs), format_expr(cmd.rhs)]
        if cmd.when:
            parts += [':when', _list(map(format_expr, cmd.when))]
        return _list(parts)
    if isinstance(cmd, A.Define):
        return _list(['define', cmd.name, format_expr(cmd.expr)])
    if isinstance(cmd, A.ActionCommand):
        return format_action(cmd.action)
    if isinstance(cmd, A.Run):
        return '(run)' if cmd.limit is None else f'(run {cmd.limit})'
    if isinstance(cmd, A.Check):
        return _list(['check', *map(format_expr, cmd.facts)])
    if isinstance(cmd, A.Extract):
        return _list(['extract', format_expr(cmd.expr)])
    raise TypeError(f'not a command: {cmd!r}')


def format_program(commands: Iterable[A.Command]) -> str:
    return ''.join(format_command(c) + '\n' for c in commands)
