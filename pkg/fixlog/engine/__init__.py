'''
Evaluation: actions, iterations (naive or semi-naive), checks and extraction.
'''
from .engine import Engine, EngineConfig
from .report import CheckResult, ExtractResult, IterationRecord, Mode, Outcome, RunReport
