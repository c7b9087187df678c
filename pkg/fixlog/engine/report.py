from __future__ import annotations
from typing import Dict, Optional, Union
from typing_extensions import Literal, TypedDict
from ..database.types import custom_repr
from ..language import ast as A
from ..language.printer import format_expr
from ..values import Value, format_value

Mode = Literal['seminaive', 'naive']


class IterationRecord(TypedDict):
    iteration: int
    mode: Mode
    rows: int
    millis: float
    considered: int
    matches: int


class RunReport:

    def __init__(self, iterations: int, saturated: bool, capped: bool,
                 row_counts: Dict[str, int]):
        self.iterations = iterations
        self.saturated = saturated
        self.capped = capped
        self.row_counts = row_counts

    def __repr__(self):
        return custom_repr(self, 'iterations', 'saturated', 'capped')

    @property
    def rows(self):
        return sum(self.row_counts.values())

    def __str__(self):
        status = 'saturated' if self.saturated else (
            'stopped by the iteration cap' if self.capped else 'not saturated')
        sizes = ', '.join(f'{k}={v}' for k, v in self.row_counts.items() if v)
        return f'run: {self.iterations} iterations, {status}, {self.rows} rows ({sizes})'


class CheckResult:

    def __init__(self, text: str, passed: bool, value: Optional[Value] = None):
        self.text = text
        self.passed = passed
        self.value = value

    def __repr__(self):
        return custom_repr(self, 'text', 'passed', 'value')

    def __bool__(self):
        return self.passed

    def __str__(self):
        if not self.passed:
            return f'check failed: {self.text}'
        return 'ok' if self.value is None else format_value(self.value)


class ExtractResult:

    def __init__(self, term: A.Expr, cost: int):
        self.term = term
        self.cost = cost

    def __repr__(self):
        return custom_repr(self, 'term', 'cost')

    def __str__(self):
        return format_expr(self.term)


Outcome = Union[RunReport, CheckResult, ExtractResult]
