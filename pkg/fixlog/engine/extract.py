'''
Extraction of a smallest term from an equivalence class.

A term's cost is the number of function applications in it, with every
primitive constant costing 1. Best costs per class are settled in
increasing order with a priority dictionary (a node becomes available
once all of its id children are settled), then each class picks its
cheapest node, preferring lower declaration index and then the smaller
(cost, id) child tuple.
'''
from __future__ import annotations
from collections import defaultdict
from typing import DefaultDict, Dict, List, NamedTuple, Tuple
from ..collections import MinDict
from ..database.instance import Instance
from ..database.types import Key
from ..errors import Unextractable
from ..language import ast as A
from ..language.typed import FunctionDecl
from ..values import Id, Value, format_value, value_key


class Node(NamedTuple):
    decl: FunctionDecl
    key: Key
    out: Id


class Extractor:

    def __init__(self, instance: Instance):
        self.instance = instance
        self.costs: Dict[Id, int] = {}
        self.best: Dict[Id, Node] = {}
        self._terms: Dict[Id, A.Expr] = {}
        self._settle(self._nodes())

    def _nodes(self) -> List[Node]:
        nodes = []
        for table in self.instance.tables.values():
            if table.decl.extractable:
                for key, out, _ in table.items():
                    nodes.append(Node(table.decl, key, out))  # type:ignore
        return nodes

    def _node_cost(self, node: Node) -> int:
        return 1 + sum(self.costs[v] if isinstance(v, Id) else 1 for v in node.key)

    def _settle(self, nodes: List[Node]):
        parents: DefaultDict[Id, List[int]] = defaultdict(list)
        remaining: List[int] = []
        frontier = MinDict()
        costs = self.costs

        def relax(node: Node):
            cost = self._node_cost(node)
            if node.out not in costs:
                frontier.lower(node.out, cost)

        for i, node in enumerate(nodes):
            children = [v for v in node.key if isinstance(v, Id)]
            remaining.append(len(children))
            for child in children:
                parents[child].append(i)
            if not children:
                relax(node)
        while frontier:
            cls, cost = frontier.pop_min()
            costs[cls] = cost
            for i in parents.get(cls, ()):
                remaining[i] -= 1
                if remaining[i] == 0:
                    relax(nodes[i])

        ranked: Dict[Id, tuple] = {}
        for i, node in enumerate(nodes):
            if remaining[i] != 0:
                continue
            children = tuple((self.costs[v], value_key(v)) if isinstance(v, Id) else
                             (1, value_key(v)) for v in node.key)
            rank = (self._node_cost(node), node.decl.index, children)
            if node.out not in ranked or rank < ranked[node.out]:
                ranked[node.out] = rank
                self.best[node.out] = node

    def term(self, value: Value) -> A.Expr:
        value = self.instance.uf.find(value)
        if not isinstance(value, Id):
            return A.Lit(value)
        if value not in self.best:
            raise Unextractable(f'class {format_value(value)} has no finite term')
        term = self._terms.get(value)
        if term is None:
            node = self.best[value]
            term = A.Call(node.decl.name, tuple(self.term(v) for v in node.key))
            self._terms[value] = term
        return term

    def cost(self, value: Value) -> int:
        value = self.instance.uf.find(value)
        if not isinstance(value, Id):
            return 1
        if value not in self.costs:
            raise Unextractable(f'class {format_value(value)} has no finite term')
        return self.costs[value]


def extract_term(instance: Instance, value: Value) -> Tuple[A.Expr, int]:
    extractor = Extractor(instance)
    return extractor.term(value), extractor.cost(value)
