from __future__ import annotations
from collections import defaultdict
from typing import DefaultDict, Dict, Iterable, List, Optional, Sequence, Set, Tuple, Union
from ..errors import EvalError, MergeConflict, MissingDefault
from ..language.typed import FunctionDecl, evaluate_pure
from ..values import Id, Sort, UnionFind, Value, format_value, tuple_key
from .table import FunctionTable
from .types import Key, Snapshot, custom_repr


FunctionRef = Union[str, FunctionDecl]


class Instance:
    '''
    The database DB together with the equivalence relation over ids.

    lookup(f, args)           -> output | None     (never inserts)
    get_or_default(f, args)   -> output            (inserts the default on a miss)
    set(f, args, value)       -> stored output     (merges on conflict)
    union(a, b)               -> None              (queued until apply_unions)
    rows_since(f, ts)         -> Iterator[(key, output, timestamp)]
    dump()                    -> str  one `f(args) -> value @ts` line per row

    Writes are stamped with `timestamp`. Unions, including those caused
    by setting an id output that is already present, are queued and only
    reach the union-find when a rebuild calls `apply_unions`, so every
    read during a write phase sees canonical keys. `rebuild.py` then
    restores canonical keys and outputs using the back-references kept
    here.
    '''

    def __init__(self):
        self.tables: Dict[str, FunctionTable] = {}
        self.uf = UnionFind()
        self.timestamp = 0
        self._edits = 0
        self._uses: DefaultDict[Id, Set[Tuple[str, Key]]] = defaultdict(set)
        self._pending: List[Tuple[Id, Id]] = []

    def __repr__(self):
        return custom_repr(self, 'timestamp', 'row_count')

    # Schema

    def add_sort(self, sort: Sort):
        self.uf.add_sort(sort)

    def add_function(self, decl: FunctionDecl) -> FunctionTable:
        assert decl.name not in self.tables, f'{decl.name} already has a table'
        table = FunctionTable(decl)
        self.tables[decl.name] = table
        return table

    def table(self, f: FunctionRef) -> FunctionTable:
        name = f if isinstance(f, str) else f.name
        table = self.tables.get(name)
        if table is None:
            raise EvalError(f'unknown function {name}')
        return table

    # Counters

    @property
    def changes(self) -> int:
        'Grows whenever a row is inserted, updated or removed, or ids are unioned'
        return self._edits + self.uf.unions

    @property
    def row_count(self) -> int:
        return sum(len(t) for t in self.tables.values())

    def row_counts(self) -> Dict[str, int]:
        return {name: len(t) for name, t in self.tables.items()}

    def metric(self) -> Tuple[int, int, int]:
        'Rows, equivalence classes and stale id references; rebuilding shrinks it'
        find = self.uf.find
        stale = 0
        for table in self.tables.values():
            for key, out, _ in table.items():
                stale += sum(1 for v in (*key, out) if isinstance(v, Id) and find(v) != v)
        return (self.row_count, self.uf.num_classes(), stale)

    # Reads

    def canonicalize(self, args: Iterable[Value]) -> Key:
        find = self.uf.find
        return tuple(find(v) for v in args)

    def _checked(self, f: FunctionRef, args: Sequence[Value]) -> Tuple[FunctionTable, Key]:
        table = self.table(f)
        if len(args) != table.decl.arity:
            raise EvalError(f'{table.name} expects {table.decl.arity} arguments, got {len(args)}')
        return table, self.canonicalize(args)

    def lookup(self, f: FunctionRef, args: Sequence[Value]) -> Optional[Value]:
        table, key = self._checked(f, args)
        return table.get(key)

    def rows_since(self, f: FunctionRef, ts: int):
        return self.table(f).rows_since(ts)

    # Writes

    def get_or_default(self, f: FunctionRef, args: Sequence[Value]) -> Value:
        table, key = self._checked(f, args)
        out = table.get(key)
        if out is not None:
            return out
        decl = table.decl
        if decl.has_id_output:
            value: Value = self.uf.fresh_id(decl.output)
        elif decl.default is None:
            shown = ', '.join(map(format_value, key))
            raise MissingDefault(f'{decl.name}({shown}) has no row and no :default')
        else:
            value = evaluate_pure(decl.default, {}, self.uf)
        self._store(table, key, value)
        return value

    def set(self, f: FunctionRef, args: Sequence[Value], value: Value) -> Value:
        table, key = self._checked(f, args)
        return self._write(table, key, self.uf.find(value))

    def union(self, a: Value, b: Value):
        self.uf.check_union(a, b)
        self._pending.append((a, b))  # type:ignore

    @property
    def has_pending_unions(self) -> bool:
        return bool(self._pending)

    def apply_unions(self) -> int:
        'Apply queued unions in order; returns how many joined two classes'
        pending, self._pending = self._pending, []
        before = self.uf.unions
        for a, b in pending:
            self.uf.union(a, b)
        return self.uf.unions - before

    def _store(self, table: FunctionTable, key: Key, value: Value):
        table.rows[key] = (value, self.timestamp)
        self._edits += 1
        uses = self._uses
        for v in key:
            if isinstance(v, Id):
                uses[v].add((table.name, key))
        if isinstance(value, Id):
            uses[value].add((table.name, key))

    def _write(self, table: FunctionTable, key: Key, value: Value) -> Value:
        entry = table.rows.get(key)
        if entry is None:
            self._store(table, key, value)
            return value
        old = entry[0]
        if old == value:
            return old
        merged = self._merge(table, key, old, value)
        if merged != old:
            self._store(table, key, merged)
        return merged

    def _merge(self, table: FunctionTable, key: Key, old: Value, new: Value) -> Value:
        decl = table.decl
        if decl.has_id_output:
            self.union(old, new)
            return old
        if decl.merge is None:
            shown = ', '.join(map(format_value, key))
            raise MergeConflict(
                f'{decl.name}({shown}) is {format_value(old)}, cannot set {format_value(new)}'
                ' without a :merge')
        return evaluate_pure(decl.merge, {'old': old, 'new': new}, self.uf)

    # Rebuilding support

    def recanonicalize(self, table: FunctionTable, key: Key) -> bool:
        'Move a row to its canonical key and output; False if already canonical'
        entry = table.rows.get(key)
        if entry is None:
            return False
        value = entry[0]
        new_key = self.canonicalize(key)
        new_value = self.uf.find(value)
        if new_key == key and new_value == value:
            return False
        del table.rows[key]
        self._edits += 1
        self._write(table, new_key, new_value)
        return True

    def rows_using(self, ids: Iterable[Id]) -> List[Tuple[FunctionTable, Key]]:
        'Rows that referenced any of `ids`, in declaration then key order'
        found: Set[Tuple[str, Key]] = set()
        for x in ids:
            found.update(self._uses.pop(x, ()))
        rows = [(self.tables[name], key) for name, key in found]
        return sorted(rows, key=lambda tk: (tk[0].decl.index, tuple_key(tk[1])))

    # Inspection

    def snapshot(self) -> Snapshot:
        return {
            name: {key: out for key, out, _ in table.items()}
            for name, table in self.tables.items()
        }

    def dump(self, timestamps: bool = True) -> str:
        lines: List[str] = []
        for table in self.tables.values():
            lines.extend(table.lines(timestamps))
        return '\n'.join(lines)
