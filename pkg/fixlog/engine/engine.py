from __future__ import annotations
import logging
import time
from typing import Dict, List, Optional, Sequence, Tuple, Union
from ..database.instance import Instance
from ..database.types import custom_repr
from ..errors import FixlogError
from ..language import ast as A
from ..language.desugar import desugar
from ..language.parser import parse, parse_expr, parse_exprs
from ..language.printer import format_expr
from ..language.reader import read_all
from ..language.typecheck import (TopAction, TopCheck, TopExtract, TopRun, TypedCommand,
                                  TypeEnv)
from ..language.typed import FunctionDecl, TApp, TExpr, TFact, TypedQuery, TypedRule
from ..query.flat import RuleIR, compile_query, compile_rule, delta_expand
from ..query.join import Binding, JoinStats, generic_join
from ..rebuild import rebuild_fixpoint
from ..values import Sort, UNIT_SORT, format_value, tuple_key
from .actions import eval_expr, lookup_expr, run_actions
from .extract import extract_term
from .report import CheckResult, ExtractResult, IterationRecord, Mode, Outcome, RunReport

logger = logging.getLogger(__name__)


class EngineConfig:

    def __init__(self, mode: Mode = 'seminaive', max_iterations: int = 1000,
                 full_scan_rebuild: bool = False):
        assert mode in ('seminaive', 'naive'), f'unknown mode {mode}'
        assert max_iterations >= 0, f'max_iterations must be >= 0, got {max_iterations}'
        self.mode = mode
        self.max_iterations = max_iterations
        self.full_scan_rebuild = full_scan_rebuild

    def __repr__(self):
        return custom_repr(self, 'mode', 'max_iterations', 'full_scan_rebuild')


def _show(sub: Binding) -> str:
    return '{' + ', '.join(f'{k}: {format_value(v)}' for k, v in sub.items()) + '}'


class Engine:
    '''
    load(text)           -> List[Outcome]   parse and execute a program
    execute(command)     -> List[Outcome]
    run(limit)           -> RunReport       limit=None runs to saturation (capped)
    step()               -> bool            one iteration; True if anything changed
    check(facts)         -> CheckResult     never writes
    extract(expr)        -> ExtractResult
    dump()               -> str

    Each iteration matches every rule against the same instance, then
    applies the matches rule by rule in canonical order, then rebuilds.
    '''

    def __init__(self, config: Optional[EngineConfig] = None):
        self.config = EngineConfig() if config is None else config
        self.env = TypeEnv()
        self.instance = Instance()
        self.rules: List[RuleIR] = []
        self.stats = JoinStats()
        self.iteration = 0
        self.log: List[IterationRecord] = []

    def __repr__(self):
        return custom_repr(self, 'config', 'iteration', 'instance')

    @property
    def mode(self) -> Mode:
        return self.config.mode

    # Commands

    def load(self, text: str) -> List[Outcome]:
        outcomes: List[Outcome] = []
        for command in parse(text):
            outcomes.extend(self.execute(command))
        return outcomes

    def execute(self, command: A.Command) -> List[Outcome]:
        outcomes: List[Outcome] = []
        try:
            for core in desugar(command, self.env):
                outcome = self._execute(self.env.check_core(core))
                if outcome is not None:
                    outcomes.append(outcome)
        except FixlogError as e:
            raise e.at(command.loc)
        return outcomes

    def _execute(self, typed: TypedCommand) -> Optional[Outcome]:
        if isinstance(typed, Sort):
            self.instance.add_sort(typed)
        elif isinstance(typed, FunctionDecl):
            self.instance.add_function(typed)
        elif isinstance(typed, TypedRule):
            self.rules.append(compile_rule(typed))
        elif isinstance(typed, TopAction):
            run_actions(self.instance, [typed.action], {})
            self._rebuild()
        elif isinstance(typed, TopRun):
            return self.run(typed.limit)
        elif isinstance(typed, TopCheck):
            return self._check(typed.query, typed.text)
        elif isinstance(typed, TopExtract):
            return self._extract(typed.expr)
        else:
            raise TypeError(f'cannot execute {typed!r}')
        return None

    def _rebuild(self):
        rebuild_fixpoint(self.instance, self.config.full_scan_rebuild)

    # Iterations

    def _matches(self, rule: RuleIR) -> List[Binding]:
        query = rule.query
        if self.mode == 'naive' or not rule.matched:
            variants: Sequence[Optional[Tuple[int, int]]] = [None]
        else:
            variants = [(v.delta, v.since) for v in delta_expand(query, rule.since)]
        seen: Dict[tuple, Binding] = {}
        for delta in variants:
            for sub in generic_join(query, self.instance, delta, stats=self.stats):
                seen.setdefault(tuple(sub[n] for n in query.names), sub)
        return [seen[k] for k in sorted(seen, key=tuple_key)]

    def step(self) -> bool:
        instance = self.instance
        started = time.perf_counter()
        before = instance.changes
        considered, matched = self.stats.considered, self.stats.matches
        pending = [(rule, self._matches(rule)) for rule in self.rules]
        instance.timestamp += 1
        for rule, subs in pending:
            for sub in subs:
                try:
                    run_actions(instance, rule.actions, sub)
                except FixlogError as e:
                    e.detail = f'in rule {rule.name} with {_show(sub)}: {e.detail}'
                    raise
        for rule in self.rules:
            rule.since = instance.timestamp
            rule.matched = True
        self._rebuild()
        self.iteration += 1
        millis = (time.perf_counter() - started) * 1000
        record = IterationRecord(
            iteration=self.iteration,
            mode=self.mode,
            rows=instance.row_count,
            millis=millis,
            considered=self.stats.considered - considered,
            matches=self.stats.matches - matched,
        )
        self.log.append(record)
        logger.debug('iteration %d (%s): %d matches, %d rows, %.1f ms', self.iteration,
                     self.mode, record['matches'], record['rows'], millis)
        return instance.changes != before

    def run(self, limit: Optional[int] = None) -> RunReport:
        cap = self.config.max_iterations
        budget = cap if limit is None else min(limit, cap)
        iterations = 0
        saturated = False
        while iterations < budget:
            iterations += 1
            if not self.step():
                saturated = True
                break
        capped = not saturated and budget == cap and (limit is None or limit > cap)
        if capped:
            logger.warning('run stopped by the iteration cap (%d) before saturation', cap)
        return RunReport(iterations, saturated, capped, self.instance.row_counts())

    # Queries

    def _check(self, query: TypedQuery, text: str) -> CheckResult:
        flat = compile_query(query)
        sub = next(generic_join(flat, self.instance), None)
        if sub is None:
            return CheckResult(text, False)
        value = None
        if len(query.facts) == 1:
            fact = query.facts[0]
            if isinstance(fact, TFact) and isinstance(fact.expr, TApp) \
                    and fact.expr.sort != UNIT_SORT:
                value = lookup_expr(self.instance, fact.expr, sub)
        return CheckResult(text, True, value)

    def check(self, facts: Union[str, Sequence[A.Expr]]) -> CheckResult:
        if isinstance(facts, str):
            text = facts
            facts = parse_exprs(facts)
        else:
            text = ' '.join(map(format_expr, facts))
        return self._check(self.env.check_query(facts, f'check {text}'), text)

    def _extract(self, expr: TExpr) -> ExtractResult:
        value = lookup_expr(self.instance, expr)
        if value is None:
            value = eval_expr(self.instance, expr, {})
            self._rebuild()
        term, cost = extract_term(self.instance, value)
        return ExtractResult(term, cost)

    def extract(self, expr: Union[str, A.Expr]) -> ExtractResult:
        if isinstance(expr, str):
            node, = read_all(expr)
            expr = parse_expr(node)
        return self._extract(self.env.check_expr(expr, {}, None, 'extract'))

    def dump(self, timestamps: bool = True) -> str:
        return self.instance.dump(timestamps)
