'''
Flattening of typed queries into conjunctive queries over function rows.

Every function application becomes an Atom `f(t1..tk) -> t` whose terms
are variables or constants; nested applications get auxiliary variables
named `$0`, `$1`, ... in the order they are flattened. Applications of
builtins become Computes, evaluated once their inputs are bound. `=`
facts unify terms instead of producing atoms.
'''
from __future__ import annotations
from typing import Dict, Iterator, List, NamedTuple, Optional, Sequence, Tuple, Union
from ..errors import TypeCheckError
from ..language.primitives import Primitive
from ..language.typed import (FunctionDecl, TApp, TEq, TExpr, TLit, TPrim, TVar,
                              TypedQuery, TypedRule, TAction)
from ..values import UNIT, Value, format_value


class Const(NamedTuple):
    value: Value

    def __repr__(self):
        return format_value(self.value)


Term = Union[str, Const]  # str = variable name


def is_var(term: Term) -> bool:
    return isinstance(term, str)


class Atom(NamedTuple):
    decl: FunctionDecl
    args: Tuple[Term, ...]
    out: Term

    @property
    def terms(self) -> Tuple[Term, ...]:
        return (*self.args, self.out)

    def variables(self) -> List[str]:
        seen: Dict[str, None] = {}
        for t in self.terms:
            if is_var(t):
                seen[t] = None  # type:ignore
        return list(seen)

    def __repr__(self):
        args = ', '.join(map(str, self.args))
        return f'{self.decl.name}({args})->{self.out}'


class Compute(NamedTuple):
    prim: Primitive
    args: Tuple[Term, ...]
    out: Term

    def inputs(self) -> List[str]:
        return [t for t in self.args if is_var(t)]  # type:ignore

    def __repr__(self):
        args = ', '.join(map(str, self.args))
        return f'{self.prim.name}({args})->{self.out}'


class FlatQuery:
    '''
    atoms      : function atoms, in flattening order
    computes   : builtin applications (guards and derived values)
    variables  : variables bound by atoms, in first-occurrence order
    derived    : variables bound only by computes
    outputs    : source variable name -> term it denotes after unification
    satisfiable: False when unification equated two distinct constants
    '''

    def __init__(self, atoms: List[Atom], computes: List[Compute], outputs: Dict[str, Term],
                 satisfiable: bool = True):
        self.atoms = atoms
        self.computes = computes
        self.outputs = outputs
        self.satisfiable = satisfiable
        seen: Dict[str, None] = {}
        for atom in atoms:
            for v in atom.variables():
                seen[v] = None
        self.variables: List[str] = list(seen)
        # computes run once their inputs are bound, possibly by other computes
        bound = set(self.variables)
        derived: List[str] = []
        pending = list(computes)
        while pending:
            ready = [all(v in bound for v in c.inputs()) for c in pending]
            if not any(ready):
                missing = next(v for c in pending for v in c.inputs() if v not in bound)
                raise TypeCheckError(f'variable {missing} is not bound by any function atom')
            for c, ok in zip(pending, ready):
                if ok and is_var(c.out) and c.out not in bound:
                    bound.add(c.out)  # type:ignore
                    derived.append(c.out)  # type:ignore
            pending = [c for c, ok in zip(pending, ready) if not ok]
        self.derived = derived
        for name, term in outputs.items():
            if is_var(term) and term not in bound:
                raise TypeCheckError(f'variable {name} is not bound by any function atom')

    def __repr__(self):
        parts = [*map(repr, self.atoms), *map(repr, self.computes)]
        return f'FlatQuery({", ".join(parts)})'

    @property
    def names(self) -> List[str]:
        return list(self.outputs)

    def substitution(self, binding: Dict[str, Value]) -> Dict[str, Value]:
        out = {}
        for name, term in self.outputs.items():
            out[name] = binding[term] if is_var(term) else term.value  # type:ignore
        return out


class _Flattener:

    def __init__(self):
        self.atoms: List[Atom] = []
        self.computes: List[Compute] = []
        self.parent: Dict[str, str] = {}
        self.const: Dict[str, Value] = {}
        self.satisfiable = True
        self._aux = 0

    def fresh(self) -> str:
        name = f'${self._aux}'
        self._aux += 1
        self.parent[name] = name
        return name

    def var(self, name: str) -> str:
        self.parent.setdefault(name, name)
        return name

    def find(self, name: str) -> str:
        while self.parent[name] != name:
            self.parent[name] = self.parent[self.parent[name]]
            name = self.parent[name]
        return name

    def unify(self, a: Term, b: Term):
        if not is_var(a) and not is_var(b):
            if a != b:
                self.satisfiable = False
            return
        if not is_var(a):
            a, b = b, a
        ra = self.find(a)  # type:ignore
        if not is_var(b):
            self._bind(ra, b.value)  # type:ignore
            return
        rb = self.find(b)  # type:ignore
        if ra == rb:
            return
        # user variables outrank auxiliary ones as representatives
        if ra.startswith('$') and not rb.startswith('$'):
            ra, rb = rb, ra
        self.parent[rb] = ra
        if rb in self.const:
            self._bind(ra, self.const.pop(rb))

    def _bind(self, root: str, value: Value):
        if root in self.const and self.const[root] != value:
            self.satisfiable = False
        self.const[root] = value

    def flatten(self, expr: TExpr) -> Term:
        if isinstance(expr, TVar):
            return self.var(expr.name)
        if isinstance(expr, TLit):
            return Const(expr.value)
        args = tuple(self.flatten(a) for a in expr.args)
        out = self.fresh()
        if isinstance(expr, TApp):
            self.atoms.append(Atom(expr.decl, args, out))
        else:
            self.computes.append(Compute(expr.prim, args, out))
        return out

    def resolve(self, term: Term) -> Term:
        if not is_var(term):
            return term
        root = self.find(term)  # type:ignore
        if root in self.const:
            return Const(self.const[root])
        return root


def compile_query(query: TypedQuery) -> FlatQuery:
    fl = _Flattener()
    for name in query.var_sorts:
        fl.var(name)
    for fact in query.facts:
        if isinstance(fact, TEq):
            fl.unify(fl.flatten(fact.left), fl.flatten(fact.right))
        else:
            term = fl.flatten(fact.expr)
            if isinstance(fact.expr, TPrim):
                fl.unify(term, Const(UNIT))
    atoms = [
        Atom(a.decl, tuple(map(fl.resolve, a.args)), fl.resolve(a.out)) for a in fl.atoms
    ]
    computes = [
        Compute(c.prim, tuple(map(fl.resolve, c.args)), fl.resolve(c.out)) for c in fl.computes
    ]
    outputs = {name: fl.resolve(name) for name in query.var_sorts}
    return FlatQuery(atoms, computes, outputs, fl.satisfiable)


class RuleIR:
    '''
    A compiled rule: flat query plus typed actions. `since` is the
    timestamp from which rows count as new for the next semi-naive match.
    '''

    def __init__(self, name: str, query: FlatQuery, actions: Sequence[TAction],
                 source: Optional[TypedRule] = None):
        self.name = name
        self.query = query
        self.actions = tuple(actions)
        self.source = source
        self.since = 0
        self.matched = False

    def __repr__(self):
        return f'RuleIR({self.name}: {self.query!r})'


def compile_rule(rule: TypedRule) -> RuleIR:
    return RuleIR(rule.name, compile_query(rule.query), rule.actions, rule)


class DeltaVariant(NamedTuple):
    '''
    The query with atom `delta` restricted to rows stamped at or after
    `since` and the atoms before it to rows stamped earlier.
    '''
    query: FlatQuery
    delta: int
    since: int


def delta_expand(query: FlatQuery, since: int) -> Iterator[DeltaVariant]:
    for j in range(len(query.atoms)):
        yield DeltaVariant(query, j, since)
