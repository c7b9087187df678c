'''
Rebuilding: apply queued unions, then restore canonical keys and
outputs and the functional dependency.

Conflicting rows that land on the same canonical key are merged: id
outputs are unioned (the smaller id survives), primitive outputs fold
the function's merge expression. Rows are visited in declaration order,
then key order, so primitive merges see a deterministic encounter order.
'''
from __future__ import annotations
import logging
from .database.instance import Instance
from .values import tuple_key

logger = logging.getLogger(__name__)


def rebuild_step(instance: Instance) -> bool:
    'Apply queued unions and make one full pass over every row; True if anything changed'
    changed = instance.apply_unions() > 0
    instance.uf.take_dirty()
    for table in instance.tables.values():
        for key in sorted(table.rows, key=tuple_key):
            if instance.recanonicalize(table, key):
                changed = True
    return changed


def _rebuild_worklist(instance: Instance) -> int:
    rounds = 0
    while True:
        instance.apply_unions()
        if not instance.uf.has_dirty:
            break
        rounds += 1
        for table, key in instance.rows_using(instance.uf.take_dirty()):
            instance.recanonicalize(table, key)
    return rounds


def rebuild_fixpoint(instance: Instance, full_scan: bool = False) -> int:
    '''
    Rebuild until nothing changes; returns the number of rounds.
    full_scan=True visits every row each round instead of only rows that
    referenced ids made stale by unions; both give the same instance.
    '''
    if full_scan:
        rounds = 0
        while rebuild_step(instance):
            rounds += 1
    else:
        rounds = _rebuild_worklist(instance)
    if rounds:
        logger.debug('rebuild: %d rounds, %d rows', rounds, instance.row_count)
    return rounds
