'''
fixlog [<path>] [--naive/--seminaive] [--max-iterations N] [--dump/--no-dump]
       [--bench/--no-bench] [--verbose/--quiet]

Runs a program file, or reads commands interactively when no path is given.
Exit status: 0 when every check passed, 1 when some check failed,
2 on a parse, type or runtime error.
'''
from __future__ import annotations
import csv
import logging
import sys
from typing import List, Optional, TextIO
from .command_line import Command, Option, parse_nonnegative
from .engine import CheckResult, Engine, EngineConfig
from .errors import FixlogError, IncompleteInput
from .language import parse

logger = logging.getLogger(__name__)

OK, CHECK_FAILED, ERROR = 0, 1, 2
BENCH_FIELDS = ['iteration', 'mode', 'rows', 'millis']


def _read(path: str, stderr: TextIO) -> Optional[str]:
    try:
        with open(path) as f:
            return f.read()
    except OSError as e:
        print(f'{path}: cannot read: {e.strerror}', file=stderr)
        return None


def _execute_file(path: str, engine: Engine, stdout: Optional[TextIO],
                  stderr: TextIO) -> int:
    text = _read(path, stderr)
    if text is None:
        return ERROR
    try:
        commands = parse(text)
    except FixlogError as e:
        print(f'{path}:{e}', file=stderr)
        return ERROR
    status = OK
    for command in commands:
        try:
            outcomes = engine.execute(command)
        except FixlogError as e:
            print(f'{path}:{e}', file=stderr)
            return ERROR
        for outcome in outcomes:
            if isinstance(outcome, CheckResult):
                if not outcome.passed:
                    status = CHECK_FAILED
                    print(outcome, file=stderr)
            elif stdout is not None:
                print(outcome, file=stdout)
    return status


def run_file(path: str, config: Optional[EngineConfig] = None, dump: bool = False,
             stdout: Optional[TextIO] = None, stderr: Optional[TextIO] = None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    engine = Engine(config)
    status = _execute_file(path, engine, stdout, stderr)
    if dump:
        print(engine.dump(), file=stdout)
    return status


def bench(path: str, config: Optional[EngineConfig] = None, stdout: Optional[TextIO] = None,
          stderr: Optional[TextIO] = None) -> int:
    'Run the program silently, then write one CSV line per iteration'
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    engine = Engine(config)
    status = _execute_file(path, engine, None, stderr)
    writer = csv.DictWriter(stdout, BENCH_FIELDS, extrasaction='ignore', lineterminator='\n')
    writer.writeheader()
    for record in engine.log:
        writer.writerow({**record, 'millis': f'{record["millis"]:.3f}'})
    total = sum(r['millis'] for r in engine.log)
    logger.info('%s: %d iterations in %.1f ms (%s)', path, len(engine.log), total,
                engine.mode)
    return status


run_bench = bench


def repl(config: Optional[EngineConfig] = None, stdin: Optional[TextIO] = None,
         stdout: Optional[TextIO] = None) -> int:
    '''
    Read commands until end of input. A command may span several lines;
    errors are reported and the session goes on with its state intact.
    '''
    stdin = sys.stdin if stdin is None else stdin
    stdout = sys.stdout if stdout is None else stdout
    interactive = stdin.isatty()
    engine = Engine(config)
    pending: List[str] = []
    while True:
        if interactive:
            stdout.write('... ' if pending else '> ')
            stdout.flush()
        line = stdin.readline()
        if not line:
            break
        pending.append(line)
        try:
            commands = parse(''.join(pending))
        except IncompleteInput:
            continue
        except FixlogError as e:
            print(f'error: {e}', file=stdout)
            pending.clear()
            continue
        pending.clear()
        for command in commands:
            try:
                outcomes = engine.execute(command)
            except FixlogError as e:
                print(f'error: {e}', file=stdout)
                continue
            for outcome in outcomes:
                print(outcome, file=stdout)
    if pending and ''.join(pending).strip():
        logger.warning('discarding incomplete input at end of session')
    return OK


def fixlog(path: str, naive: bool, max_iterations: int, dump: bool, bench: bool,
           verbose: bool) -> int:
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format='%(levelname)s %(name)s: %(message)s',
    )
    config = EngineConfig(
        mode='naive' if naive else 'seminaive',
        max_iterations=max_iterations,
    )
    logger.debug('%r', config)
    if not path:
        return repl(config)
    if bench:
        return run_bench(path, config)
    return run_file(path, config, dump=dump)


main = Command(
    fixlog,
    Option('path', positional=True, default='', description='program file (REPL if omitted)'),
    Option('naive/seminaive', env='FIXLOG_NAIVE', default='0',
           description='rematch the whole database every iteration'),
    Option('max-iterations', env='FIXLOG_MAX_ITERATIONS', default='1000',
           parser=parse_nonnegative, description='cap for runs without a limit'),
    Option('dump/no-dump', default='0', description='print every table at exit'),
    Option('bench/no-bench', default='0', description='print per-iteration CSV timings'),
    Option('verbose/quiet', default='0', description='log every iteration'),
    docs=__doc__,
)
