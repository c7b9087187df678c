'''
Surface language: reading, parsing, printing, desugaring and typechecking.
'''
from .parser import parse, parse_command, parse_expr, parse_exprs
from .printer import format_command, format_expr, format_program
from .typecheck import TypeEnv, typecheck
