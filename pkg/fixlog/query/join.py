'''
Generic join over flattened queries.

Variables are bound one at a time; for each variable the candidate
values are the intersection of what every atom mentioning it allows
given the variables already bound. Per-atom prefix indexes are built on
the fly for each evaluation and dropped afterwards.
'''
from __future__ import annotations
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple
from ..database.instance import Instance
from ..database.types import Key
from ..errors import TypeCheckError
from ..values import Value
from .flat import Atom, Compute, FlatQuery, is_var

Binding = Dict[str, Value]
Index = Dict[Tuple[Value, ...], Dict[Value, None]]


class JoinStats:
    'Counters shared by every join an engine runs'

    def __init__(self):
        self.considered = 0
        self.matches = 0

    def __repr__(self):
        return f'JoinStats(considered={self.considered}, matches={self.matches})'


def _project(atom: Atom, rows: Iterable[Tuple[Key, Value, int]],
             variables: Sequence[str]) -> List[Tuple[Value, ...]]:
    terms = atom.terms
    consts = [(i, t.value) for i, t in enumerate(terms) if not is_var(t)]  # type:ignore
    first: Dict[str, int] = {}
    repeats: List[Tuple[int, int]] = []
    for i, t in enumerate(terms):
        if not is_var(t):
            continue
        if t in first:
            repeats.append((first[t], i))  # type:ignore
        else:
            first[t] = i  # type:ignore
    picks = [first[v] for v in variables]
    out: Dict[Tuple[Value, ...], None] = {}
    for key, value, _ in rows:
        full = (*key, value)
        if any(full[i] != c for i, c in consts):
            continue
        if any(full[i] != full[j] for i, j in repeats):
            continue
        out[tuple(full[p] for p in picks)] = None
    return list(out)


def plan_order(query: FlatQuery, sizes: Sequence[int]) -> List[str]:
    '''
    Variables in the most atoms first, then those whose smallest atom is
    smallest, then first occurrence. `sizes[i]` is the row estimate of atom i.
    '''
    occurs: Dict[str, int] = {}
    smallest: Dict[str, int] = {}
    for atom, size in zip(query.atoms, sizes):
        for v in atom.variables():
            occurs[v] = occurs.get(v, 0) + 1
            smallest[v] = min(smallest.get(v, size), size)
    first = {v: i for i, v in enumerate(query.variables)}
    return sorted(query.variables, key=lambda v: (-occurs[v], smallest[v], first[v]))


def _schedule(query: FlatQuery, order: Sequence[str]) -> Dict[int, List[Compute]]:
    'Level at which each compute runs: once all of its inputs are bound'
    level = {v: i for i, v in enumerate(order)}
    sched: Dict[int, List[Compute]] = {}
    pending = list(query.computes)
    while pending:
        rest = []
        for c in pending:
            inputs = c.inputs()
            if all(v in level for v in inputs):
                at = max((level[v] for v in inputs), default=-1)
                if is_var(c.out) and c.out in level:
                    # an output already bound by an atom is checked, not assigned
                    at = max(at, level[c.out])  # type:ignore
                sched.setdefault(at, []).append(c)
                if is_var(c.out) and c.out not in level:
                    level[c.out] = at  # type:ignore
            else:
                rest.append(c)
        if len(rest) == len(pending):
            raise TypeCheckError(f'cannot order builtin computations {rest}')
        pending = rest
    return sched


def generic_join(
    query: FlatQuery,
    instance: Instance,
    delta: Optional[Tuple[int, int]] = None,
    order: Optional[Sequence[str]] = None,
    stats: Optional[JoinStats] = None,
) -> Iterator[Binding]:
    '''
    Yield every substitution (source variable -> value) satisfying the
    query. With delta=(j, since), atom j only ranges over rows stamped at
    or after `since` and the atoms before it over rows stamped earlier, so
    the variants for j = 0, 1, ... never produce the same binding twice.
    '''
    if not query.satisfiable:
        return
    stats = JoinStats() if stats is None else stats
    uf = instance.uf
    relations: List[Tuple[List[str], List[Tuple[Value, ...]]]] = []
    for i, atom in enumerate(query.atoms):
        table = instance.tables[atom.decl.name]
        if delta is not None and delta[0] == i:
            rows: Iterable = table.rows_since(delta[1])
        elif delta is not None and i < delta[0]:
            rows = table.rows_before(delta[1])
        else:
            rows = table.items()
        avars = atom.variables()
        projected = _project(atom, rows, avars)
        if not projected:
            return
        relations.append((avars, projected))

    if order is None:
        order = plan_order(query, [len(rows) for _, rows in relations])
    assert sorted(order) == sorted(query.variables), f'bad order {order}'
    position = {v: i for i, v in enumerate(order)}

    # levels[k]: (index, prefix variables) for every atom containing order[k]
    levels: List[List[Tuple[Index, Tuple[str, ...]]]] = [[] for _ in order]
    for avars, rows in relations:
        ordered = sorted(avars, key=position.__getitem__)
        perm = [avars.index(v) for v in ordered]
        tuples = [tuple(r[p] for p in perm) for r in rows]
        for depth, v in enumerate(ordered):
            index: Index = {}
            for t in tuples:
                index.setdefault(t[:depth], {})[t[depth]] = None
            levels[position[v]].append((index, tuple(ordered[:depth])))

    sched = _schedule(query, order)
    env: Binding = {}

    def computes_hold(level: int, assigned: List[str]) -> bool:
        for c in sched.get(level, ()):
            args = [env[t] if is_var(t) else t.value for t in c.args]  # type:ignore
            out = c.prim.apply(args, uf)
            if out is None:
                return False
            if not is_var(c.out):
                if c.out.value != out:  # type:ignore
                    return False
            elif c.out in env:
                if env[c.out] != out:  # type:ignore
                    return False
            else:
                env[c.out] = out  # type:ignore
                assigned.append(c.out)  # type:ignore
        return True

    def search(level: int) -> Iterator[Binding]:
        if level == len(order):
            stats.matches += 1
            yield query.substitution(env)
            return
        var = order[level]
        candidates = []
        for index, prefix in levels[level]:
            values = index.get(tuple(env[u] for u in prefix))
            if not values:
                return
            candidates.append(values)
        candidates.sort(key=len)
        smallest, others = candidates[0], candidates[1:]
        for value in list(smallest):
            stats.considered += 1
            if any(value not in other for other in others):
                continue
            env[var] = value
            assigned: List[str] = []
            if computes_hold(level, assigned):
                yield from search(level + 1)
            for name in assigned:
                del env[name]
        env.pop(var, None)

    top: List[str] = []
    if computes_hold(-1, top):
        yield from search(0)
