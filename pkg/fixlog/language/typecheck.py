'''
Static checking of commands against the declarations seen so far.

TypeEnv keeps sorts and functions in declaration order and turns core
commands into the typed IR of `typed.py`. Programs are checked one
command at a time because `define` needs the sort of its expression
before it can be desugared.
'''
from __future__ import annotations
from typing import Dict, Iterable, List, Optional, Set as SetT, Tuple, Union
from ..errors import Loc, TypeCheckError
from ..values import PRIMITIVE_SORTS, UNIT, UNIT_SORT, I64, STRING, Sort, Unit, Value
from . import ast as A
from . import primitives
from .desugar import desugar
from .printer import format_action, format_expr
from .typed import (FunctionDecl, TAction, TApp, TEq, TEval, TExpr, TFact, TFactLike, TLet, TLit,
                    TPanic, TPrim, TSet, TUnion, TVar, TypedQuery, TypedRule)


class TopAction:

    def __init__(self, action: TAction, text: str, loc: Optional[Loc]):
        self.action = action
        self.text = text
        self.loc = loc


class TopRun:

    def __init__(self, limit: Optional[int], loc: Optional[Loc]):
        self.limit = limit
        self.loc = loc


class TopCheck:

    def __init__(self, query: TypedQuery, text: str, loc: Optional[Loc]):
        self.query = query
        self.text = text
        self.loc = loc


class TopExtract:

    def __init__(self, expr: TExpr, text: str, loc: Optional[Loc]):
        self.expr = expr
        self.text = text
        self.loc = loc


TypedCommand = Union[Sort, FunctionDecl, TypedRule, TopAction, TopRun, TopCheck, TopExtract]
Scope = Dict[str, Sort]


def literal_sort(value: Value) -> Sort:
    if isinstance(value, Unit):
        return UNIT_SORT
    if isinstance(value, str):
        return STRING
    return I64


class TypeEnv:
    '''
    sort(name)                  -> Sort
    declare_sort(cmd)           -> Sort
    declare_function(cmd)       -> FunctionDecl
    check_query(facts)          -> TypedQuery
    check_actions(actions, ..)  -> Tuple[TAction, ...]
    check_rule(cmd)             -> TypedRule
    check_command(cmd)          -> List[TypedCommand]   (desugars first)
    '''

    def __init__(self):
        self.sorts: Dict[str, Sort] = dict(PRIMITIVE_SORTS)
        self.functions: Dict[str, FunctionDecl] = {}
        self.globals: SetT[str] = set()
        self._rules = 0

    def __repr__(self):
        return f'TypeEnv(sorts={list(self.sorts)}, functions={list(self.functions)})'

    # Declarations

    def sort(self, name: str, loc: Optional[Loc] = None) -> Sort:
        sort = self.sorts.get(name)
        if sort is None:
            raise TypeCheckError(f'unknown sort {name}', loc)
        return sort

    def declare_sort(self, cmd: A.DeclareSort) -> Sort:
        if cmd.name in self.sorts:
            raise TypeCheckError(f'sort {cmd.name} already declared', cmd.loc)
        sort = Sort(cmd.name)
        self.sorts[cmd.name] = sort
        return sort

    def declare_function(self, cmd: A.DeclareFunction) -> FunctionDecl:
        name = cmd.name
        if name in self.functions or primitives.is_primitive(name):
            raise TypeCheckError(f'function {name} already declared', cmd.loc)
        inputs = tuple(self.sort(s, cmd.loc) for s in cmd.inputs)
        output = self.sort(cmd.output, cmd.loc)
        where = f'function {name}'
        merge = default = None
        if not output.is_primitive:
            if cmd.merge is not None:
                raise TypeCheckError(
                    f'{where}: outputs of sort {output} always merge by union', cmd.loc)
            if cmd.default is not None:
                raise TypeCheckError(
                    f'{where}: outputs of sort {output} default to fresh ids', cmd.loc)
        else:
            if cmd.merge is not None:
                merge = self._pure(cmd.merge, {'old': output, 'new': output}, output, where)
            if cmd.default is not None:
                default = self._pure(cmd.default, {}, output, where)
            elif output == UNIT_SORT:
                default = TLit(UNIT, UNIT_SORT)
        decl = FunctionDecl(name, inputs, output, len(self.functions), merge, default,
                            cmd.origin)
        self.functions[name] = decl
        if cmd.origin == 'define':
            self.globals.add(name)
        return decl

    def _pure(self, expr: A.Expr, scope: Scope, expected: Sort, where: str) -> TExpr:
        texpr = self._build(expr, scope, expected, where)
        for node in _walk(texpr):
            if isinstance(node, TApp):
                raise TypeCheckError(
                    f'{where}: only builtins may appear in merge and default expressions',
                    expr.loc)
        return texpr

    # Expressions

    def _global(self, name: str, scope: Scope) -> Optional[FunctionDecl]:
        if name in self.globals and name not in scope:
            return self.functions[name]
        return None

    def _call_decl(self, expr: A.Call, where: str) -> FunctionDecl:
        decl = self.functions.get(expr.head)
        if decl is None:
            raise TypeCheckError(f'{where}: unknown function {expr.head}', expr.loc)
        if len(expr.args) != decl.arity:
            raise TypeCheckError(
                f'{where}: {expr.head} expects {decl.arity} arguments in {format_expr(expr)}',
                expr.loc)
        return decl

    def _infer(self, expr: A.Expr, scope: Scope, expected: Optional[Sort],
               where: str) -> Optional[Sort]:
        'Propagate sorts into unbound variables; returns the sort if known'
        if isinstance(expr, A.Var):
            decl = self._global(expr.name, scope)
            if decl is not None:
                return decl.output
            if expr.name not in scope and expected is not None:
                scope[expr.name] = expected
            return scope.get(expr.name)
        if isinstance(expr, A.Lit):
            return literal_sort(expr.value)
        if expr.head in self.functions:
            decl = self._call_decl(expr, where)
            for arg, sort in zip(expr.args, decl.inputs):
                self._infer(arg, scope, sort, where)
            return decl.output
        if not primitives.is_primitive(expr.head):
            raise TypeCheckError(f'{where}: unknown function {expr.head}', expr.loc)
        sorts = [self._infer(a, scope, None, where) for a in expr.args]
        candidates = [
            p for p in primitives.signatures(expr.head) if p.arity == len(expr.args)
        ]
        if len(candidates) == 1:
            prim = candidates[0]
            hints = prim.inputs
            if hints is None:
                known = [s for s in sorts if s is not None]
                hints = tuple(known[:1] * len(sorts)) if known else None
            if hints is not None:
                for arg, sort in zip(expr.args, hints):
                    self._infer(arg, scope, sort, where)
        prim = primitives.resolve(expr.head, sorts)
        return None if prim is None else prim.output

    def _build(self, expr: A.Expr, scope: Scope, expected: Optional[Sort], where: str) -> TExpr:
        texpr = self._build_any(expr, scope, where)
        if expected is not None and texpr.sort != expected:
            raise TypeCheckError(
                f'{where}: {format_expr(expr)} has sort {texpr.sort}, expected {expected}',
                expr.loc)
        return texpr

    def _build_any(self, expr: A.Expr, scope: Scope, where: str) -> TExpr:
        if isinstance(expr, A.Var):
            decl = self._global(expr.name, scope)
            if decl is not None:
                return TApp(decl, ())
            if expr.name not in scope:
                raise TypeCheckError(f'{where}: unbound variable {expr.name}', expr.loc)
            return TVar(expr.name, scope[expr.name])
        if isinstance(expr, A.Lit):
            return TLit(expr.value, literal_sort(expr.value))
        if expr.head in self.functions:
            decl = self._call_decl(expr, where)
            args = tuple(
                self._build(a, scope, s, where) for a, s in zip(expr.args, decl.inputs))
            return TApp(decl, args)
        if not primitives.is_primitive(expr.head):
            raise TypeCheckError(f'{where}: unknown function {expr.head}', expr.loc)
        targs = tuple(self._build_any(a, scope, where) for a in expr.args)
        prim = primitives.resolve(expr.head, [a.sort for a in targs])
        if prim is None:
            sorts = ', '.join(str(a.sort) for a in targs)
            raise TypeCheckError(
                f'{where}: no builtin {expr.head} for ({sorts}) in {format_expr(expr)}',
                expr.loc)
        return TPrim(prim, targs)

    def check_expr(self, expr: A.Expr, scope: Optional[Scope] = None,
                   expected: Optional[Sort] = None, where: str = 'expression') -> TExpr:
        return self._build(expr, dict(scope or {}), expected, where)

    def infer_sort(self, expr: A.Expr, where: str = 'expression') -> Sort:
        return self.check_expr(expr, {}, None, where).sort

    # Queries

    def check_query(self, facts: Iterable[A.Expr], where: str = 'query') -> TypedQuery:
        facts = tuple(facts)
        scope: Scope = {}
        for fact in facts:
            if not isinstance(fact, A.Call):
                raise TypeCheckError(
                    f'{where}: fact {format_expr(fact)} must be an application', fact.loc)
        for _ in range(len(facts) + 2):
            before = len(scope)
            for fact in facts:
                assert isinstance(fact, A.Call)
                if fact.head == '=' and len(fact.args) == 2:
                    left, right = fact.args
                    ls = self._infer(left, scope, None, where)
                    rs = self._infer(right, scope, ls, where)
                    if ls is None and rs is not None:
                        self._infer(left, scope, rs, where)
                else:
                    self._infer(fact, scope, None, where)
            if len(scope) == before:
                break
        for fact in facts:
            for name in A.expr_vars(fact):
                if name not in scope and self._global(name, scope) is None:
                    raise TypeCheckError(
                        f'{where}: cannot infer the sort of {name} in {format_expr(fact)}',
                        fact.loc)
        typed: List[TFactLike] = []
        for fact in facts:
            assert isinstance(fact, A.Call)
            if fact.head == '=' and len(fact.args) == 2:
                left = self._build_any(fact.args[0], scope, where)
                right = self._build(fact.args[1], scope, left.sort, where)
                typed.append(TEq(left, right))
            else:
                typed.append(TFact(self._build_any(fact, scope, where)))
        return TypedQuery(tuple(typed), scope)

    # Actions

    def check_action(self, action: A.Action, scope: Scope, where: str) -> TAction:
        if isinstance(action, A.Set):
            if action.call.head not in self.functions:
                raise TypeCheckError(f'{where}: set on unknown function {action.call.head}',
                                     action.loc)
            app = self._build(action.call, scope, None, where)
            assert isinstance(app, TApp)
            value = self._build(action.value, scope, app.decl.output, where)
            return TSet(app, value)
        if isinstance(action, A.Union_):
            left = self._build_any(action.left, scope, where)
            if left.sort.is_primitive:
                raise TypeCheckError(
                    f'{where}: cannot union values of primitive sort {left.sort} '
                    f'in {format_action(action)}', action.loc)
            right = self._build(action.right, scope, left.sort, where)
            return TUnion(left, right)
        if isinstance(action, A.Let):
            if action.name in scope:
                raise TypeCheckError(f'{where}: {action.name} is already bound', action.loc)
            expr = self._build_any(action.expr, scope, where)
            scope[action.name] = expr.sort
            return TLet(action.name, expr)
        if isinstance(action, A.Panic):
            return TPanic(action.message)
        return TEval(self._build_any(action.expr, scope, where))

    def check_actions(self, actions: Iterable[A.Action], scope: Scope,
                      where: str) -> Tuple[TAction, ...]:
        scope = dict(scope)
        return tuple(self.check_action(a, scope, where) for a in actions)

    def check_rule(self, cmd: A.Rule) -> TypedRule:
        self._rules += 1
        name = cmd.name or f'rule{self._rules}'
        where = f'rule {name}'
        query = self.check_query(cmd.query, where)
        actions = self.check_actions(cmd.actions, query.var_sorts, where)
        return TypedRule(name, query, actions, cmd.loc)

    # Commands

    def check_core(self, cmd: A.Command) -> TypedCommand:
        try:
            return self._check_core(cmd)
        except TypeCheckError as e:
            raise e.at(cmd.loc)

    def _check_core(self, cmd: A.Command) -> TypedCommand:
        if isinstance(cmd, A.DeclareSort):
            return self.declare_sort(cmd)
        if isinstance(cmd, A.DeclareFunction):
            return self.declare_function(cmd)
        if isinstance(cmd, A.Rule):
            return self.check_rule(cmd)
        if isinstance(cmd, A.ActionCommand):
            text = format_action(cmd.action)
            action = self.check_action(cmd.action, {}, text)
            return TopAction(action, text, cmd.loc)
        if isinstance(cmd, A.Run):
            return TopRun(cmd.limit, cmd.loc)
        if isinstance(cmd, A.Check):
            text = ' '.join(format_expr(f) for f in cmd.facts)
            return TopCheck(self.check_query(cmd.facts, f'check {text}'), text, cmd.loc)
        if isinstance(cmd, A.Extract):
            text = format_expr(cmd.expr)
            return TopExtract(self.check_expr(cmd.expr, {}, None, f'extract {text}'), text,
                              cmd.loc)
        raise TypeCheckError(f'{type(cmd).__name__} must be desugared first', cmd.loc)

    def check_command(self, cmd: A.Command) -> List[TypedCommand]:
        try:
            core = desugar(cmd, self)
        except TypeCheckError as e:
            raise e.at(cmd.loc)
        return [self.check_core(c) for c in core]


def _walk(expr: TExpr):
    yield expr
    if isinstance(expr, (TApp, TPrim)):
        for arg in expr.args:
            yield from _walk(arg)


def typecheck(commands: Iterable[A.Command], env: Optional[TypeEnv] = None) -> List[TypedCommand]:
    env = TypeEnv() if env is None else env
    out: List[TypedCommand] = []
    for cmd in commands:
        out.extend(env.check_command(cmd))
    return out
