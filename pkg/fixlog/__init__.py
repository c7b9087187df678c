'''
fixlog: a fixpoint engine for Datalog-style rules over functions with
equality. Programs declare sorts and functions, add facts, and run rules
until nothing changes; equal terms are merged and smallest terms can be
extracted back.

    from fixlog import Engine
    engine = Engine()
    engine.load(open('programs/transitive_closure.egg').read())
    engine.check('(path 1 4)')
'''
VERSION = '0.1.0'

from .engine import CheckResult, Engine, EngineConfig, ExtractResult, RunReport
from .errors import (EvalError, FixlogError, IncompleteInput, MergeConflict, MissingDefault,
                     PanicError, ParseError, TypeCheckError, Unextractable)
