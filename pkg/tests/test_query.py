import itertools
import random
import pytest
from fixlog.errors import TypeCheckError
from fixlog.language import TypeEnv, parse, parse_exprs
from fixlog.language.typed import FunctionDecl
from fixlog.query import (Const, FlatQuery, JoinStats, compile_query, delta_expand, generic_join,
                          plan_order)
from fixlog.rebuild import rebuild_fixpoint
from fixlog.values import UNIT, Sort
from oracles import nested_loop_join

DECLARATIONS = '''
    (relation r (i64 i64))
    (function s (i64) i64)
    (function t (i64 i64) i64)
    (function big (i64 i64) i64)
    (datatype Math (Num i64) (Add Math Math) (Mul Math Math))
    (relation edge (i64 i64))
    (relation path (i64 i64))
'''


def declare():
    env = TypeEnv()
    from fixlog.database.instance import Instance
    instance = Instance()
    for command in parse(DECLARATIONS):
        for typed in env.check_command(command):
            if isinstance(typed, Sort):
                instance.add_sort(typed)
            elif isinstance(typed, FunctionDecl):
                instance.add_function(typed)
    return env, instance


def flat(env: TypeEnv, text: str) -> FlatQuery:
    return compile_query(env.check_query(parse_exprs(text)))


def show(query: FlatQuery):
    return [repr(a) for a in query.atoms] + [repr(c) for c in query.computes]


def test_flatten_relations():
    env, _ = declare()
    query = flat(env, '(path x y) (edge y z)')
    assert show(query) == ['path(x, y)->$0', 'edge(y, z)->$1']
    assert query.variables == ['x', 'y', '$0', 'z', '$1']
    assert query.names == ['x', 'y', 'z']


def test_flatten_nested_terms():
    env, _ = declare()
    query = flat(env, '(= v (Mul a (Add b c)))')
    assert show(query) == ['Add(b, c)->$0', 'Mul(a, $0)->v']


def test_flatten_constants_and_builtins():
    env, _ = declare()
    query = flat(env, '(= (s 3) y) (< y 10) (= (+ y 1) w)')
    assert show(query) == ['s(3)->y', '<(y, 10)->()', '+(y, 1)->w']
    assert query.derived == ['w']
    assert query.outputs['y'] == 'y'


def test_equal_constants_unify_and_distinct_ones_fail():
    env, _ = declare()
    query = flat(env, '(= x 3) (r x y)')
    assert show(query) == ['r(3, y)->$0']
    assert query.outputs['x'] == Const(3)
    assert not flat(env, '(= x 3) (= x 4) (r x y)').satisfiable


def test_variables_only_in_builtins_are_rejected():
    env, _ = declare()
    with pytest.raises(TypeCheckError, match='not bound by any function atom'):
        flat(env, '(r x y) (< x z)')


def test_plan_order():
    env, _ = declare()
    single = flat(env, '(= (t x y) z)')
    assert plan_order(single, [10]) == ['x', 'y', 'z']
    chain = flat(env, '(r x y) (= (s y) z)')
    # y occurs in both atoms; ties go to the smaller atom
    assert plan_order(chain, [100, 5]) == ['y', 'z', 'x', '$0']


def fill(instance, rng: random.Random, later: int = 0):
    'Random rows; the last `later` rows of each table are stamped 1'
    sizes = {'r': 150, 's': 12, 't': 150, 'big': 2000}
    domain = {'r': 15, 's': 15, 't': 15, 'big': 60}
    for name, size in sizes.items():
        table = instance.table(name)
        n = rng.randrange(size + 1)
        keys = set()
        while len(keys) < n:
            keys.add(tuple(rng.randrange(domain[name]) for _ in range(table.decl.arity)))
        for i, key in enumerate(sorted(keys)):
            instance.timestamp = 1 if i >= n - later * n // 10 else 0
            if table.decl.is_relation:
                instance.get_or_default(name, key)
            else:
                instance.set(name, key, rng.randrange(15))
    instance.timestamp = 1


def random_fact(rng: random.Random, variables: str, allow_big: bool) -> str:

    def term():
        if rng.random() < 0.15:
            return str(rng.randrange(15))
        return rng.choice(variables)

    kinds = ['r', 's', 't', 'lt', 'sum'] + (['big'] if allow_big else [])
    kind = rng.choice(kinds)
    if kind == 'r':
        return f'(r {term()} {term()})'
    if kind == 's':
        return f'(= (s {term()}) {term()})'
    if kind in ('t', 'big'):
        return f'(= ({kind} {term()} {term()}) {term()})'
    if kind == 'lt':
        return f'(< {rng.choice(variables)} {rng.choice(variables)})'
    return f'(= (+ {rng.choice(variables)} {rng.choice(variables)}) {rng.choice(variables)})'


def random_query(env: TypeEnv, rng: random.Random) -> FlatQuery:
    while True:
        variables = 'xyzw'[:rng.randint(1, 3)]
        n = rng.randint(1, 4)
        facts = [random_fact(rng, variables, allow_big=n <= 2) for _ in range(n)]
        try:
            query = flat(env, ' '.join(facts))
        except TypeCheckError:
            continue
        if query.atoms:
            return query


@pytest.mark.parametrize('seed', range(100))
def test_generic_join_matches_nested_loops(seed):
    rng = random.Random(seed)
    env, instance = declare()
    fill(instance, rng, later=3)
    query = random_query(env, rng)
    expected = nested_loop_join(query, instance)

    def run(order=None, delta=None):
        found = [tuple(s[n] for n in query.names)
                 for s in generic_join(query, instance, delta=delta, order=order)]
        return set(found)

    assert run() == expected, query
    if len(query.variables) <= 4:
        for order in itertools.permutations(query.variables):
            assert run(order=list(order)) == expected, (query, order)
    # matches using at least one row stamped 1
    old = nested_loop_join(query, instance, before=1)
    delta = set()
    for variant in delta_expand(query, 1):
        delta |= run(delta=(variant.delta, variant.since))
    assert delta == expected - old


def test_join_stats_and_duplicates():
    env, instance = declare()
    for key in [(1, 2), (2, 3), (3, 4)]:
        instance.get_or_default('edge', key)
        instance.get_or_default('path', key)
    query = flat(env, '(path x y) (edge y z)')
    stats = JoinStats()
    found = list(generic_join(query, instance, stats=stats))
    assert sorted((s['x'], s['y'], s['z']) for s in found) == [(1, 2, 3), (2, 3, 4)]
    assert stats.matches == 2
    assert stats.considered >= 2


def test_repeated_variable_within_an_atom():
    env, instance = declare()
    for key in [(1, 1), (1, 2), (3, 3)]:
        instance.get_or_default('r', key)
    found = {s['x'] for s in generic_join(flat(env, '(r x x)'), instance)}
    assert found == {1, 3}


def test_builtin_output_bound_by_an_atom_is_a_filter():
    env, instance = declare()
    instance.set('s', (1,), 2)
    instance.set('s', (2,), 5)
    instance.set('s', (3,), 4)
    query = flat(env, '(= (s x) y) (= (+ x 1) y)')
    found = {(s['x'], s['y']) for s in generic_join(query, instance)}
    assert found == {(1, 2), (3, 4)}


def test_matching_is_modulo_equality():
    env, instance = declare()
    a = instance.get_or_default('Num', (1,))
    b = instance.get_or_default('Num', (2,))
    add = instance.get_or_default('Add', (a, b))
    query = flat(env, '(= e (Add (Num 2) (Num 2)))')
    assert list(generic_join(query, instance)) == []
    instance.union(a, b)
    rebuild_fixpoint(instance)
    found = list(generic_join(query, instance))
    assert found == [{'e': instance.uf.find(add)}]


def test_unsatisfiable_query_has_no_matches():
    env, instance = declare()
    instance.get_or_default('r', (3, 3))
    assert list(generic_join(flat(env, '(= x 3) (= x 4) (r x y)'), instance)) == []
    assert UNIT is instance.lookup('r', (3, 3))


def test_delta_variants_are_disjoint():
    env, instance = declare()
    for ts, edges in enumerate([[(1, 2), (2, 3)], [(3, 4), (2, 5), (0, 1), (1, 6)]]):
        instance.timestamp = ts
        for key in edges:
            instance.get_or_default('edge', key)
            instance.get_or_default('path', key)
    query = flat(env, '(path x y) (edge y z)')
    variants = [
        {(s['x'], s['y'], s['z']) for s in generic_join(query, instance, delta=(v.delta, v.since))}
        for v in delta_expand(query, 1)
    ]
    # path(0, 1) and edge(1, 6) are both new; only the first variant sees them
    assert variants == [{(0, 1, 2), (0, 1, 6)}, {(1, 2, 5), (2, 3, 4)}]
    assert nested_loop_join(query, instance) - nested_loop_join(query, instance, before=1) == \
        variants[0] | variants[1]


def test_builtin_feeding_itself_is_rejected():
    env, _ = declare()
    with pytest.raises(TypeCheckError, match='variable x is not bound'):
        flat(env, '(r y w) (= x (+ x 1))')
    with pytest.raises(TypeCheckError, match='variable b is not bound'):
        flat(env, '(r y w) (= a (+ b 1)) (= b (- a 1))')
    # a chain of builtins hanging off an atom is fine
    assert flat(env, '(r y w) (= a (+ y 1)) (= b (* a 2))').derived == ['a', 'b']
