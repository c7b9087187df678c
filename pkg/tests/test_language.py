import pytest
from fixlog.errors import IncompleteInput, Loc, ParseError, TypeCheckError
from fixlog.language import TypeEnv, format_command, format_program, parse, typecheck
from fixlog.language import ast as A
from fixlog.language.desugar import REWRITE_VAR, desugar
from fixlog.language.reader import Atom, SList, Symbol, read_all
from fixlog.language.typecheck import TopCheck
from fixlog.language.typed import FunctionDecl, TApp, TEq, TFact, TypedRule
from fixlog.values import I64, UNIT, UNIT_SORT
from oracles import PROGRAMS


def test_reader_locations_and_atoms():
    nodes = read_all('; comment\n(edge 1 "two" -3)')
    assert len(nodes) == 1
    node = nodes[0]
    assert isinstance(node, SList)
    assert node.loc == Loc(2, 1)
    head, one, two, three = node.items
    assert head == Symbol('edge', Loc(0, 0))
    assert (one, two, three) == (Atom(1, None), Atom('two', None), Atom(-3, None))
    assert two.loc == Loc(2, 9)


def test_reader_string_escapes():
    node, = read_all(r'"a\"b\nc"')
    assert node.value == 'a"b\nc'


@pytest.mark.parametrize('text', ['(edge 1 2', '(check "open', '(run (run)'])
def test_incomplete_input(text):
    with pytest.raises(IncompleteInput) as info:
        read_all(text)
    assert 'parse error: unexpected end of input' in str(info.value).lower()


@pytest.mark.parametrize('text', ['(edge 1 2))', '(edge 1 99999999999999999999)', '(f [x])'])
def test_malformed_input(text):
    with pytest.raises(ParseError) as info:
        read_all(text)
    assert not isinstance(info.value, IncompleteInput)


def test_parse_commands():
    relation, rule, check, run = parse('''
        (relation edge (i64 i64))
        (rule ((edge x y)) ((path x y)) :name "base")
        (check (path 1 4))
        (run)
    ''')
    assert relation == A.DeclareRelation('edge', ('i64', 'i64'))
    assert rule.name == 'base'
    assert rule.query == (A.Call('edge', (A.Var('x'), A.Var('y'))),)
    assert rule.actions == (A.Eval(A.Call('path', (A.Var('x'), A.Var('y')))),)
    assert check == A.Check((A.Call('path', (A.Lit(1), A.Lit(4))),))
    assert run == A.Run(None)


def test_parse_function_options():
    fn, = parse('(function path (i64 i64) i64 :merge (min old new) :default 0)')
    assert fn.merge == A.Call('min', (A.Var('old'), A.Var('new')))
    assert fn.default == A.Lit(0)


def test_parse_unit_literal_and_let():
    let, unit = parse('(let x (Num 1)) (set (flag) ())')
    assert let == A.Define('x', A.Call('Num', (A.Lit(1),)))
    assert unit.action.value == A.Lit(UNIT)


@pytest.mark.parametrize('text', [
    '(function f (i64) i64 :merge)',
    '(run -1)',
    '(sort)',
    '(rule ((f x)) ((set (f x) 1)) :when ())',
    '(panic x)',
    '5',
])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse(text)


def test_print_then_parse_roundtrip_on_corpus():
    for path in sorted(PROGRAMS.glob('*.egg')):
        commands = parse(path.read_text())
        assert parse(format_program(commands)) == commands, path.name


def test_rewrite_desugars_to_a_rule():
    env = TypeEnv()
    rewrite, = parse('(rewrite (Add a b) (Add b a) :when ((!= a b)))')
    rule, = desugar(rewrite, env)
    assert isinstance(rule, A.Rule)
    var = A.Var(REWRITE_VAR)
    assert rule.query[0] == A.Call('=', (var, A.Call('Add', (A.Var('a'), A.Var('b')))))
    assert rule.query[1] == A.Call('!=', (A.Var('a'), A.Var('b')))
    assert rule.actions == (A.Union_(var, A.Call('Add', (A.Var('b'), A.Var('a')))),)
    assert rule.name == format_command(rewrite)


def test_birewrite_desugars_both_ways():
    birewrite, = parse('(birewrite (Add a b) (Add b a))')
    forward, backward = desugar(birewrite, TypeEnv())
    assert forward.query[0].args[1] == backward.actions[0].right
    assert backward.query[0].args[1] == forward.actions[0].right


def test_guard_variables_must_come_from_lhs():
    rewrite, = parse('(rewrite (Add a b) (Add b a) :when ((= c a)))')
    with pytest.raises(TypeCheckError, match='guard variable c'):
        desugar(rewrite, TypeEnv())


def test_datatype_desugars_to_sort_and_constructors():
    typed = typecheck(parse('(datatype Math (Num i64) (Add Math Math))'))
    sort, num, add = typed
    assert sort.name == 'Math' and not sort.is_primitive
    assert isinstance(num, FunctionDecl) and num.origin == 'constructor'
    assert num.inputs == (I64,) and num.output == sort
    assert add.index == 1 and add.has_id_output


def test_duplicate_constructor():
    with pytest.raises(TypeCheckError, match='duplicate constructor'):
        typecheck(parse('(datatype Math (Num i64) (Num i64))'))


def test_relation_has_unit_output_and_default():
    decl, = typecheck(parse('(relation edge (i64 i64))'))
    assert decl.output == UNIT_SORT and decl.is_relation
    assert decl.default is not None


def test_function_signature_with_merge():
    typed = typecheck(parse('(function path (i64 i64) i64 :merge (min old new))'))
    decl, = typed
    assert decl.inputs == (I64, I64) and decl.output == I64
    assert decl.merge is not None and not decl.extractable


@pytest.mark.parametrize('text, message', [
    ('(sort Math) (function f () Math :merge (min old new))', 'always merge by union'),
    ('(function f (i64) i64 :merge (g old))', 'unknown function g'),
    ('(function f (Foo) i64)', 'unknown sort Foo'),
    ('(relation r (i64)) (relation r (i64))', 'already declared'),
    ('(relation r (i64)) (rule ((r x)) ((r y)))', 'unbound variable y'),
    ('(relation r (i64)) (r "a")', 'has sort String, expected i64'),
    ('(relation r (i64)) (rule ((r x)) ((union x x)))', 'primitive sort'),
    ('(relation r (i64)) (rule ((r x)) ((let x 1)))', 'already bound'),
    ('(relation r (i64)) (check (r 1 2))', 'expects 1 arguments'),
    ('(relation r (i64)) (check (= x y))', 'cannot infer the sort'),
])
def test_type_errors(text, message):
    with pytest.raises(TypeCheckError, match=message):
        typecheck(parse(text))


def test_type_error_has_location():
    with pytest.raises(TypeCheckError) as info:
        typecheck(parse('(relation r (i64))\n  (r "a")'))
    assert info.value.loc == Loc(2, 6)
    assert str(info.value).startswith('2:6: Type error')


def test_rule_query_sorts_are_inferred():
    typed = typecheck(parse('''
        (function edge (i64 i64) i64)
        (function path (i64 i64) i64 :merge (min old new))
        (rule ((= (path x y) xy) (= (edge y z) yz))
              ((set (path x z) (+ xy yz))))
    '''))
    rule = typed[-1]
    assert isinstance(rule, TypedRule)
    assert rule.name == 'rule1'
    assert rule.query.var_sorts == {'x': I64, 'y': I64, 'xy': I64, 'z': I64, 'yz': I64}
    assert all(isinstance(f, TEq) for f in rule.query.facts)


def test_defined_globals_resolve_in_queries():
    typed = typecheck(parse('''
        (datatype Math (Num i64))
        (define two (Num 2))
        (check (= two (Num 2)))
    '''))
    two = typed[2]
    assert two.origin == 'define' and not two.extractable
    check = typed[-1]
    assert isinstance(check, TopCheck)
    fact, = check.query.facts
    assert isinstance(fact, TEq) and isinstance(fact.left, TApp)
    assert fact.left.decl is two
    assert check.query.var_sorts == {}


def test_builtin_predicates_become_facts():
    typed = typecheck(parse('(relation r (i64)) (check (r x) (< x 3))'))
    facts = typed[-1].query.facts
    assert all(isinstance(f, TFact) for f in facts)
    assert facts[1].expr.sort == UNIT_SORT


@pytest.mark.parametrize('path', sorted(PROGRAMS.glob('*.egg')), ids=lambda p: p.stem)
def test_corpus_typechecks(path):
    assert typecheck(parse(path.read_text()))
