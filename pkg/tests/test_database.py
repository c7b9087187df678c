import pytest
from fixlog.errors import EvalError, MergeConflict, MissingDefault
from fixlog.rebuild import rebuild_fixpoint
from fixlog.values import UNIT, Id
from oracles import make_instance

GRAPH = '''
    (relation edge (i64 i64))
    (function dist (i64 i64) i64)
    (function path (i64 i64) i64 :merge (min old new))
    (function hits (i64) i64 :default 0)
    (sort Node)
    (function mk (i64) Node)
    (function next (Node) Node)
    (function rank (Node) i64 :merge (max old new))
'''


@pytest.fixture
def instance():
    return make_instance(GRAPH)


def test_relation_rows_default_to_unit(instance):
    assert instance.lookup('edge', (1, 2)) is None
    assert instance.get_or_default('edge', (1, 2)) is UNIT
    assert instance.lookup('edge', (1, 2)) is UNIT
    assert instance.row_count == 1


def test_id_outputs_default_to_fresh_ids(instance):
    a = instance.get_or_default('mk', (1,))
    b = instance.get_or_default('mk', (2,))
    assert a == Id('Node', 0) and b == Id('Node', 1)
    assert instance.get_or_default('mk', (1,)) == a


def test_missing_default_and_default_expression(instance):
    with pytest.raises(MissingDefault):
        instance.get_or_default('dist', (1, 2))
    assert instance.get_or_default('hits', (7,)) == 0


def test_lookup_never_inserts(instance):
    assert instance.lookup('mk', (1,)) is None
    assert instance.row_count == 0


def test_arity_is_checked(instance):
    with pytest.raises(EvalError, match='expects 2 arguments'):
        instance.lookup('edge', (1,))
    with pytest.raises(EvalError, match='unknown function'):
        instance.lookup('nope', ())


def test_merge_keeps_the_minimum(instance):
    instance.set('path', (1, 3), 30)
    assert instance.set('path', (1, 3), 20) == 20
    assert instance.set('path', (1, 3), 25) == 20
    assert instance.lookup('path', (1, 3)) == 20


def test_conflict_without_merge(instance):
    instance.set('dist', (1, 2), 10)
    instance.set('dist', (1, 2), 10)
    with pytest.raises(MergeConflict, match='dist\\(1, 2\\) is 10'):
        instance.set('dist', (1, 2), 11)


def test_setting_an_id_output_unions(instance):
    a, b = instance.get_or_default('mk', (1,)), instance.get_or_default('mk', (2,))
    instance.set('next', (a,), a)
    assert instance.set('next', (a,), b) == a
    # the clash is queued as a union; the stored output stays put
    assert not instance.uf.equiv(a, b) and instance.has_pending_unions
    assert instance.apply_unions() == 1
    assert instance.uf.equiv(a, b)


def test_timestamps_only_move_on_change(instance):
    instance.set('path', (1, 3), 30)
    instance.timestamp = 1
    instance.set('path', (1, 3), 40)
    instance.get_or_default('edge', (1, 2))
    assert [k for k, _, _ in instance.rows_since('path', 1)] == []
    assert [k for k, _, _ in instance.rows_since('edge', 1)] == [(1, 2)]
    instance.timestamp = 2
    instance.set('path', (1, 3), 10)
    assert list(instance.rows_since('path', 2)) == [((1, 3), 10, 2)]


def test_changes_counter(instance):
    before = instance.changes
    instance.set('path', (1, 3), 30)
    instance.set('path', (1, 3), 30)
    assert instance.changes == before + 1
    a, b = instance.get_or_default('mk', (1,)), instance.get_or_default('mk', (2,))
    middle = instance.changes
    instance.union(a, b)
    assert instance.changes == middle
    instance.apply_unions()
    assert instance.changes == middle + 1
    instance.union(b, a)
    assert instance.apply_unions() == 0
    assert instance.changes == middle + 1


def test_dump_is_sorted_and_canonical(instance):
    instance.get_or_default('edge', (2, 3))
    instance.get_or_default('edge', (1, 2))
    instance.set('hits', (5,), 1)
    assert instance.dump() == 'edge(1, 2) -> () @0\nedge(2, 3) -> () @0\nhits(5) -> 1 @0'
    assert instance.dump(timestamps=False).splitlines()[0] == 'edge(1, 2) -> ()'


def test_snapshot(instance):
    a = instance.get_or_default('mk', (1,))
    assert instance.snapshot()['mk'] == {(1,): a}


def test_rows_using_back_references(instance):
    a, b = instance.get_or_default('mk', (1,)), instance.get_or_default('mk', (2,))
    instance.set('next', (b,), a)
    uses = instance.rows_using([b])
    assert [(t.name, k) for t, k in uses] == [('mk', (2,)), ('next', (b,))]


def test_union_then_rebuild_merges_rows(instance):
    a, b = instance.get_or_default('mk', (1,)), instance.get_or_default('mk', (2,))
    c = instance.get_or_default('next', (a,))
    d = instance.get_or_default('next', (b,))
    instance.union(a, b)
    assert instance.metric()[2] == 0
    instance.apply_unions()
    assert instance.metric()[2] > 0
    rebuild_fixpoint(instance)
    assert instance.uf.equiv(c, d)
    assert len(instance.table('next')) == 1
    assert instance.metric()[2] == 0


def test_back_references_do_not_pile_up(instance):
    a = instance.get_or_default('mk', (1,))
    for value in range(50):
        instance.set('rank', (a,), value)
    assert instance.lookup('rank', (a,)) == 49
    assert instance._uses[a] == {('mk', (1,)), ('rank', (a,))}
    assert [(t.name, k) for t, k in instance.rows_using([a])] == [('mk', (1,)), ('rank', (a,))]
