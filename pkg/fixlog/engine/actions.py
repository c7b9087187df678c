from __future__ import annotations
from typing import Dict, List, Optional, Sequence, Tuple
from ..database.instance import Instance
from ..database.types import Row
from ..errors import EvalError, PanicError
from ..language.typed import (TAction, TApp, TEval, TExpr, TLet, TLit, TPanic, TPrim, TSet,
                              TUnion, TVar)
from ..values import Value, format_value

Env = Dict[str, Value]


def eval_expr(instance: Instance, expr: TExpr, env: Env,
              rows: Optional[List[Row]] = None) -> Value:
    'Evaluate with insertion: missing applications get their default'
    if isinstance(expr, TVar):
        return instance.uf.find(env[expr.name])
    if isinstance(expr, TLit):
        return expr.value
    args = [eval_expr(instance, a, env, rows) for a in expr.args]
    if isinstance(expr, TPrim):
        out = expr.prim.apply(args, instance.uf)
        if out is None:
            shown = ', '.join(map(format_value, args))
            raise EvalError(f'builtin {expr.prim.name}({shown}) failed')
        return out
    out = instance.get_or_default(expr.decl, args)
    if rows is not None:
        rows.append((expr.decl.name, instance.canonicalize(args), out))
    return out


def flatten_ground_atom(instance: Instance, expr: TExpr,
                        env: Optional[Env] = None) -> Tuple[Value, List[Row]]:
    '''
    The rows a ground expression stands for, innermost first, each
    resolved by lookup or else default, plus the value of the whole.
    '''
    rows: List[Row] = []
    value = eval_expr(instance, expr, env or {}, rows)
    return value, rows


def lookup_expr(instance: Instance, expr: TExpr, env: Optional[Env] = None) -> Optional[Value]:
    'Evaluate without inserting; None if some application is missing'
    env = env or {}
    if isinstance(expr, TVar):
        return instance.uf.find(env[expr.name])
    if isinstance(expr, TLit):
        return expr.value
    args = []
    for a in expr.args:
        v = lookup_expr(instance, a, env)
        if v is None:
            return None
        args.append(v)
    if isinstance(expr, TPrim):
        return expr.prim.apply(args, instance.uf)
    assert isinstance(expr, TApp)
    return instance.lookup(expr.decl, args)


def run_actions(instance: Instance, actions: Sequence[TAction], env: Env):
    'Run actions left to right; `let` extends the shared environment'
    env = dict(env)
    for action in actions:
        if isinstance(action, TSet):
            args = [eval_expr(instance, a, env) for a in action.app.args]
            value = eval_expr(instance, action.value, env)
            instance.set(action.app.decl, args, value)
        elif isinstance(action, TUnion):
            left = eval_expr(instance, action.left, env)
            right = eval_expr(instance, action.right, env)
            instance.union(left, right)
        elif isinstance(action, TLet):
            env[action.name] = eval_expr(instance, action.expr, env)
        elif isinstance(action, TPanic):
            raise PanicError(action.message)
        elif isinstance(action, TEval):
            eval_expr(instance, action.expr, env)
        else:
            raise EvalError(f'unknown action {action!r}')
