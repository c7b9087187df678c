'''
Exceptions raised by fixlog.

Every class carries a short `message`; instances add a detail string
and, when known, the source location of the offending command.
'''
from __future__ import annotations
from typing import NamedTuple, Optional


class Loc(NamedTuple):
    line: int
    col: int

    def __str__(self):
        return f'{self.line}:{self.col}'


class FixlogError(Exception):
    message = 'Error'

    def __init__(self, detail: str = '', loc: Optional[Loc] = None):
        super().__init__(detail)
        self.detail = detail
        self.loc = loc

    def at(self, loc: Optional[Loc]):
        'Attach a location if none is known yet'
        if self.loc is None and loc is not None:
            self.loc = loc
        return self

    def __str__(self):
        text = f'{self.message}: {self.detail}' if self.detail else self.message
        return f'{self.loc}: {text}' if self.loc else text


class ParseError(FixlogError):
    message = 'Parse error'


class IncompleteInput(ParseError):
    message = 'Parse error: unexpected end of input'


class TypeCheckError(FixlogError):
    message = 'Type error'


class EvalError(FixlogError):
    message = 'Runtime error'


class MissingDefault(EvalError):
    message = 'Missing default'


class MergeConflict(EvalError):
    message = 'Merge conflict'


class Unextractable(EvalError):
    message = 'Unextractable'


class PanicError(EvalError):
    message = 'Panic'
