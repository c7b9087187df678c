'''
Small alternative to docopt and click for creating Command Line Interfaces (CLIs) out of functions:

 - Command defaults are shown by default
 - Environment variables can be used optionally and are shown by default
 - Boolean options come in pairs: --yes/--no
 - The function's return value is the exit status

Example:

from fixlog.command_line import Command, Option

def run(path: str, naive: bool, max_iterations: int):
    ...
    return 0

main = Command(
    run,
    Option('path', positional=True),
    Option('naive/seminaive', env='FIXLOG_NAIVE', default='0'),
    Option('max-iterations', env='FIXLOG_MAX_ITERATIONS', default='1000', parser=int),
)

if __name__ == '__main__':
    main()
'''
from __future__ import annotations
import abc
import os
import sys
from typing import Any, Callable, Dict, List, Optional, Sequence, TextIO, Tuple

USAGE_ERROR = 2


def parse_bool(s: str) -> bool:
    value = s.strip().lower()
    assert value in ('0', '1', 'true', 'false', 'yes', 'no', ''), \
        f'Expected a boolean (0/1), got {s!r}'
    return value in ('1', 'true', 'yes')


def parse_nonnegative(s: str) -> int:
    try:
        n = int(s)
    except ValueError:
        raise AssertionError(f'Expected an integer, got {s!r}')
    assert n >= 0, f'Expected a non-negative integer, got {n}'
    return n


class Option:

    def __init__(
        self,
        name: str,
        positional: bool = False,
        env: Optional[str] = None,
        description: Optional[str] = None,
        default: Optional[str] = None,
        parser: Callable[[str], Any] = str,
    ):
        assert name
        assert not name.startswith('-')
        assert name.count('/') <= 1
        if '/' not in name:
            self.name = name
            self.neg = None
        else:
            self.name, self.neg = name.split('/', maxsplit=1)
            assert self.neg, f'Expected boolean format --yes/--no'
            assert parser is str, f'Parser is forced for booleans'
            parser = parse_bool
        self.positional = positional
        self.env = env
        self.description = description
        self.default = default
        self.parser = parser

    @property
    def kwarg(self):
        return self.name.replace('-', '_')

    def parse(self, value: Optional[str] = None):
        if value is None:
            default = self.default
            if self.env:
                default = os.getenv(self.env, default)
            if default is None:
                return None
            value = str(default)
        return self.parser(value)

    def usage(self):
        default = f'[default: {self.default}]' if self.default else ''
        if self.env:
            value = os.getenv(self.env)
            value = '' if value is None else f':{value}'
            env = f'(env {self.env}{value}) '
        else:
            env = ''
        name = self.name
        if self.neg:
            name += f'/--{self.neg}'
        key = (f'--{name}' + ' ' * 30)[:24]
        description = '' if self.description is None else self.description
        return f'{key} {env}{default} {description}'.rstrip()

    def params(self):
        if self.positional:
            return f'[<{self.name}>]' if self.default is not None else f'<{self.name}>'
        if self.neg:
            return f'[--{self.name}/--{self.neg}]'
        return f'[--{self.name} ...]'


class CommandDuck(abc.ABC):

    options: Sequence[Option]

    def __call__(self, argv: Optional[Sequence[str]] = None):
        argv = sys.argv[1:] if argv is None else argv
        script = os.path.basename(sys.argv[0]) or 'fixlog'
        sys.exit(self.call(script, *argv))

    @abc.abstractmethod
    def parse(self, prefix: str, *argv: str) -> \
        Tuple[Callable, Sequence, Dict]:
        ...

    @abc.abstractmethod
    def usage(self, prefix: str) -> str:
        ...

    def call(self, prefix: str, *argv: str, stderr: Optional[TextIO] = None) -> int:
        stderr = sys.stderr if stderr is None else stderr
        try:
            func, args, kwargs = self.parse(prefix, *argv)
        except AssertionError as e:
            print(self.usage(prefix), file=stderr)
            print('Error:', *e.args, file=stderr)
            return USAGE_ERROR
        out = func(*args, **kwargs)
        return 0 if out is None else int(out)

    def params(self):
        return ' '.join(opt.params() for opt in self.options)


class Command(CommandDuck):

    def __init__(
        self,
        func: Callable[..., Optional[int]],
        *options: Option,
        name: Optional[str] = None,
        docs: Optional[str] = None,
    ):
        self.func = func
        self.options = options
        self.name = func.__name__ if name is None else name
        self.docs = func.__doc__ if docs is None else docs

    def _help(self, prefix: str):
        print(self.usage(prefix))
        return 0

    def parse(self, prefix: str, *argv: str):
        options = {opt.name: opt for opt in self.options}
        positional = iter([opt for opt in self.options if opt.positional])
        neg_options = {opt.neg: opt for opt in self.options if opt.neg}

        str_kwargs: Dict[str, str] = {}
        it = iter(argv)
        for arg in it:
            if arg.startswith('--'):
                key = arg[2:]
                opt = options.get(key, neg_options.get(key))
                if opt and opt.neg:
                    value = '0' if key == opt.neg else '1'
                elif opt:
                    value = next(it, None)
                    assert value is not None, f'Expecting value after {arg}'
                elif arg == '--help':
                    return self._help, [prefix], {}
                else:
                    assert False, f'Unknown option {arg}'
            else:
                value = arg
                opt = next(positional, None)
                assert opt, f'Unexpected positional value {value}'
            str_kwargs[opt.name] = value

        kwargs: Dict[str, Any] = {}
        for opt in options.values():
            value = opt.parse(str_kwargs.get(opt.name))
            assert value is not None, f'Required argument {opt.name} has no value'
            kwargs[opt.kwarg] = value
        return self.func, [], kwargs

    def usage(self, prefix: str):
        options: List[str] = [opt.usage() for opt in self.options]
        listed = '\n    '.join(options)
        docs = '' if self.docs is None else f'\n{self.docs.strip()}\n'
        return f'''
        Usage:
            {prefix} {self.params()}
            {prefix} --help

        Options:
            {listed}
        '''.replace('\n        ', '\n').strip() + '\n' + docs
