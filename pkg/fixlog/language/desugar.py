'''
Surface forms that reduce to core commands:

    relation  -> function with output Unit
    datatype  -> sort + one constructor function per variant
    rewrite   -> rule binding the lhs and unioning it with the rhs
    define    -> nullary function + top-level set
'''
from __future__ import annotations
from typing import TYPE_CHECKING, List
from ..errors import TypeCheckError
from ..values import UNIT
from . import ast as A
from .printer import format_command

if TYPE_CHECKING:
    from .typecheck import TypeEnv

REWRITE_VAR = '__rewrite'


def desugar_relation(decl: A.DeclareRelation) -> A.DeclareFunction:
    return A.DeclareFunction(decl.name, decl.inputs, 'Unit', None, A.Lit(UNIT),
                             loc=decl.loc, origin='relation')


def desugar_datatype(dt: A.DeclareDatatype) -> List[A.Command]:
    seen = set()
    out: List[A.Command] = [A.DeclareSort(dt.name, loc=dt.loc)]
    for v in dt.variants:
        if v.name in seen:
            raise TypeCheckError(f'duplicate constructor {v.name} in datatype {dt.name}', v.loc)
        seen.add(v.name)
        out.append(
            A.DeclareFunction(v.name, v.inputs, dt.name, loc=v.loc or dt.loc,
                              origin='constructor'))
    return out


def desugar_rewrite(rw: A.Rewrite) -> List[A.Rule]:
    if not isinstance(rw.lhs, A.Call):
        raise TypeCheckError('rewrite lhs must be a function application', rw.loc)
    if rw.bidirectional:
        forward = A.Rewrite(rw.lhs, rw.rhs, rw.when, loc=rw.loc)
        if not isinstance(rw.rhs, A.Call):
            raise TypeCheckError('birewrite rhs must be a function application', rw.loc)
        backward = A.Rewrite(rw.rhs, rw.lhs, rw.when, loc=rw.loc)
        return desugar_rewrite(forward) + desugar_rewrite(backward)
    bound = set(A.expr_vars(rw.lhs))
    for fact in rw.when:
        for name in A.expr_vars(fact):
            if name not in bound:
                raise TypeCheckError(
                    f'guard variable {name} is not bound by the rewrite lhs', rw.loc)
    var = A.Var(REWRITE_VAR, rw.loc)
    query = (A.Call('=', (var, rw.lhs), rw.loc), *rw.when)
    action = A.Union_(var, rw.rhs, rw.loc)
    return [A.Rule(query, (action,), format_command(rw), rw.loc)]


def desugar_define(d: A.Define, env: 'TypeEnv') -> List[A.Command]:
    sort = env.infer_sort(d.expr, f'define {d.name}')
    decl = A.DeclareFunction(d.name, (), sort.name, loc=d.loc, origin='define')
    assign = A.ActionCommand(A.Set(A.Call(d.name, (), d.loc), d.expr, d.loc), d.loc)
    return [decl, assign]


def desugar(cmd: A.Command, env: 'TypeEnv') -> List[A.Command]:
    if isinstance(cmd, A.DeclareRelation):
        return [desugar_relation(cmd)]
    if isinstance(cmd, A.DeclareDatatype):
        return desugar_datatype(cmd)
    if isinstance(cmd, A.Rewrite):
        return list(desugar_rewrite(cmd))
    if isinstance(cmd, A.Define):
        return desugar_define(cmd, env)
    return [cmd]
