import heapq
from typing import Any, Dict, List, Tuple, TypeVar

K = TypeVar('K')
Comparable = Any


class MinDict(Dict[K, Comparable]):
    '''
    Dictionary whose smallest (value, key) entry can be popped in
    O(log n). Overwritten entries stay in the heap until they surface;
    the heap is rebuilt when stale entries outnumber live ones.
    '''
    compact_after = 256

    def __init__(self):
        super().__init__()
        self._heap: List[Tuple[Comparable, K]] = []

    def __setitem__(self, key: K, value: Comparable):
        if key in self and self[key] == value:
            return
        super().__setitem__(key, value)
        heapq.heappush(self._heap, (value, key))
        if len(self._heap) > max(self.compact_after, 2 * len(self)):
            self._heap = [(v, k) for k, v in self.items()]
            heapq.heapify(self._heap)

    def lower(self, key: K, value: Comparable) -> bool:
        'Set key to value unless it already holds something smaller'
        if key in self and self[key] <= value:
            return False
        self[key] = value
        return True

    def _skip_stale(self):
        heap = self._heap
        while heap and (heap[0][1] not in self or self[heap[0][1]] != heap[0][0]):
            heapq.heappop(heap)

    def peek_min(self) -> Tuple[K, Comparable]:
        self._skip_stale()
        value, key = self._heap[0]
        return key, value

    def pop_min(self) -> Tuple[K, Comparable]:
        key, value = self.peek_min()
        heapq.heappop(self._heap)
        super().__delitem__(key)
        return key, value
