from typing import Dict, Tuple
from ..values import Value

Key = Tuple[Value, ...]
Entry = Tuple[Value, int]  # (output, timestamp)
Row = Tuple[str, Key, Value]  # (function name, key, output)
Snapshot = Dict[str, Dict[Key, Value]]


def custom_repr(self, *keys):
    name = self.__class__.__name__
    comma_kwargs = ', '.join(f'{k}={repr(getattr(self, k))}' for k in keys)
    return f'{name}({comma_kwargs})'
