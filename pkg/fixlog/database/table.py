from __future__ import annotations
from typing import Dict, Iterator, List, Optional, Tuple
from ..values import Value, format_value, tuple_key
from ..language.typed import FunctionDecl
from .types import Entry, Key, custom_repr


class FunctionTable:
    '''
    Rows of one function: canonical argument tuple -> (output, timestamp).

    len(table)            -> int
    get(key)              -> output | None
    items()               -> Iterator[(key, output, timestamp)]
    rows_since(ts)        -> Iterator[(key, output, timestamp)]
    sorted_keys()         -> List[Key]
    lines(timestamps)     -> List[str]   (debug dump)
    '''

    def __init__(self, decl: FunctionDecl):
        self.decl = decl
        self.rows: Dict[Key, Entry] = {}

    def __repr__(self):
        return custom_repr(self, 'name', 'size')

    @property
    def name(self):
        return self.decl.name

    @property
    def size(self):
        return len(self.rows)

    def __len__(self):
        return len(self.rows)

    def get(self, key: Key) -> Optional[Value]:
        entry = self.rows.get(key)
        return None if entry is None else entry[0]

    def items(self) -> Iterator[Tuple[Key, Value, int]]:
        for key, (out, ts) in self.rows.items():
            yield key, out, ts

    def rows_since(self, ts: int) -> Iterator[Tuple[Key, Value, int]]:
        for key, (out, stamp) in self.rows.items():
            if stamp >= ts:
                yield key, out, stamp

    def rows_before(self, ts: int) -> Iterator[Tuple[Key, Value, int]]:
        for key, (out, stamp) in self.rows.items():
            if stamp < ts:
                yield key, out, stamp

    def sorted_keys(self) -> List[Key]:
        return sorted(self.rows, key=tuple_key)

    def format_row(self, key: Key, timestamp: bool = True) -> str:
        out, ts = self.rows[key]
        args = ', '.join(map(format_value, key))
        line = f'{self.name}({args}) -> {format_value(out)}'
        return f'{line} @{ts}' if timestamp else line

    def lines(self, timestamps: bool = True) -> List[str]:
        return [self.format_row(k, timestamps) for k in self.sorted_keys()]
