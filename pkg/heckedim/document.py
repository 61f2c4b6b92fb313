"""Text format for matrices over RW: parsing, printing and evaluation.

The grammar lives in grammar/matrix_document.lark. Parsing yields an expression tree per
entry; the tree is only turned into HeckeElems by `MatrixDocument.evaluate`, since tau-basis
products need the parameters.
"""
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import List, Optional, Tuple, Union

from lark import Lark, Token, Transformer, v_args
from lark.exceptions import UnexpectedInput, VisitError

from .dihedral import Params, Word
from .hecke import Basis, HeckeElem, invert_unit, mul, power
from .utils.misc import format_fraction


class MatrixSyntaxError(ValueError):
    def __init__(self, message: str, line: int = 0, column: int = 0, context: str = ''):
        self.line, self.column, self.context = line, column, context
        where = f' at line {line}, column {column}' if line > 0 else ''
        super().__init__(f'{message}{where}' + (f'\n{context}' if context else ''))


class MatrixDimensionError(ValueError):
    pass


class EvaluationError(ValueError):
    pass


# |k| above this in x^k is refused: the support of a non-unit grows linearly in k
MAX_EXPONENT = 256


# --- expression tree ---

@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Atom:
    name: str


@dataclass(frozen=True)
class Add:
    left: 'Expr'
    right: 'Expr'


@dataclass(frozen=True)
class Sub:
    left: 'Expr'
    right: 'Expr'


@dataclass(frozen=True)
class Mul:
    left: 'Expr'
    right: 'Expr'


@dataclass(frozen=True)
class Neg:
    operand: 'Expr'


@dataclass(frozen=True)
class Pow:
    base: 'Expr'
    exponent: int


Expr = Union[Num, Atom, Add, Sub, Mul, Neg, Pow]

GROUP_ATOMS = {'e', 's', 't'}
TAU_ATOMS = {'e', 'Ts', 'Tt'}


@dataclass(frozen=True)
class MatrixDocument:
    basis: Basis
    m: int
    n: int
    rows: Tuple[Tuple[Expr, ...], ...]

    def evaluate(self, p: Optional[Params] = None) -> List[List[HeckeElem]]:
        if self.basis is Basis.TAU and p is None:
            raise EvaluationError('tau-basis documents need parameters (q_s, q_t) to be evaluated')
        return [[evaluate_expr(e, self.basis, p) for e in row] for row in self.rows]


# --- parsing ---

@lru_cache(maxsize=1)
def get_parser() -> Lark:
    grammar_file = os.path.join(os.path.dirname(os.path.realpath(__file__)), 'grammar', 'matrix_document.lark')
    with open(grammar_file, 'r') as f:
        grammar = f.read()
    return Lark(grammar, parser='lalr', propagate_positions=True)


class DocumentTransformer(Transformer):
    def rational(self, children):
        num = int(children[0])
        den = int(children[1]) if len(children) > 1 else 1
        if den == 0:
            tok = children[1]
            raise MatrixSyntaxError('zero denominator', tok.line, tok.column)
        return Num(Fraction(num, den))

    def atom(self, children):
        return Atom(str(children[0]))

    def add(self, children):
        return Add(*children)

    def sub(self, children):
        return Sub(*children)

    def mul(self, children):
        return Mul(*children)

    def neg(self, children):
        return Neg(children[0])

    def pow(self, children):
        base, exponent = children
        return Pow(base, int(exponent))

    def header(self, children):
        basis, m, n = children
        return Basis(str(basis)), int(m), int(n)

    @v_args(meta=True)
    def row(self, meta, children):
        return meta.line, tuple(children)

    def start(self, children):
        (basis, m, n), rows = children[0], children[1:]
        if len(rows) != m:
            raise MatrixDimensionError(f'header declares {m} rows, found {len(rows)}')
        for line, row in rows:
            if len(row) != n:
                raise MatrixDimensionError(f'row at line {line} has {len(row)} entries, header declares {n}')
        return MatrixDocument(basis, m, n, tuple(row for _, row in rows))


def parse_matrix(text: str) -> MatrixDocument:
    try:
        tree = get_parser().parse(text)
    except UnexpectedInput as err:
        raise MatrixSyntaxError(f'unexpected input {_describe(err)}', getattr(err, 'line', 0),
                                getattr(err, 'column', 0), err.get_context(text).rstrip()) from err

    basis = Basis(str(next(tree.find_data('header')).children[0]))
    allowed = GROUP_ATOMS if basis is Basis.GROUP else TAU_ATOMS
    for tok in tree.scan_values(lambda v: isinstance(v, Token) and v.type == 'ATOM'):
        if str(tok) not in allowed:
            raise MatrixSyntaxError(f'"{tok}" is not allowed under basis {basis.value}', tok.line, tok.column)

    try:
        return DocumentTransformer().transform(tree)
    except VisitError as err:
        if isinstance(err.orig_exc, (MatrixSyntaxError, MatrixDimensionError)):
            raise err.orig_exc from None
        raise


def _describe(err: UnexpectedInput) -> str:
    token = getattr(err, 'token', None)
    if token is not None:
        return repr(str(token)) if token.type != '$END' else 'end of input'
    char = getattr(err, 'char', None)
    return repr(char) if char is not None else ''


# --- printing ---

def _prec(e: Expr) -> int:
    if isinstance(e, (Add, Sub)):
        return 1
    if isinstance(e, Neg):
        return 2
    if isinstance(e, Mul):
        return 3
    if isinstance(e, Pow):
        return 4
    return 5


def format_expr(e: Expr, min_prec: int = 1) -> str:
    if isinstance(e, Num):
        text = format_fraction(e.value)
    elif isinstance(e, Atom):
        text = e.name
    elif isinstance(e, Add):
        text = f'{format_expr(e.left, 1)} + {format_expr(e.right, 2)}'
    elif isinstance(e, Sub):
        text = f'{format_expr(e.left, 1)} - {format_expr(e.right, 2)}'
    elif isinstance(e, Neg):
        text = f'-{format_expr(e.operand, 3)}'
    elif isinstance(e, Mul):
        text = f'{format_expr(e.left, 3)}*{format_expr(e.right, 4)}'
    elif isinstance(e, Pow):
        text = f'{format_expr(e.base, 5)}^{e.exponent}'
    else:
        raise TypeError(f'not an expression node: {e!r}')
    return f'({text})' if _prec(e) < min_prec else text


def format_document(doc: MatrixDocument) -> str:
    lines = [f'basis {doc.basis.value} size {doc.m}x{doc.n}']
    lines += ['[ ' + ' , '.join(format_expr(e) for e in row) + ' ]' for row in doc.rows]
    return '\n'.join(lines) + '\n'


# --- evaluation ---

def _atom_value(name: str, basis: Basis) -> HeckeElem:
    if name == 'e':
        return HeckeElem.one(basis)
    return HeckeElem.word(Word.gen(name[-1]), basis)


def evaluate_expr(e: Expr, basis: Basis, p: Optional[Params] = None) -> HeckeElem:
    if isinstance(e, Num):
        return HeckeElem.scalar(e.value, basis)
    if isinstance(e, Atom):
        return _atom_value(e.name, basis)
    if isinstance(e, Add):
        return evaluate_expr(e.left, basis, p) + evaluate_expr(e.right, basis, p)
    if isinstance(e, Sub):
        return evaluate_expr(e.left, basis, p) - evaluate_expr(e.right, basis, p)
    if isinstance(e, Neg):
        return -evaluate_expr(e.operand, basis, p)
    if isinstance(e, Mul):
        return mul(evaluate_expr(e.left, basis, p), evaluate_expr(e.right, basis, p), p)
    if isinstance(e, Pow):
        if abs(e.exponent) > MAX_EXPONENT:
            raise EvaluationError(f'exponent {e.exponent} exceeds the bound {MAX_EXPONENT}')
        base = evaluate_expr(e.base, basis, p)
        if e.exponent < 0:
            if not base.is_unit():
                raise EvaluationError(f'negative power of {format_expr(e.base)}, which is not a unit')
            base = invert_unit(base, p)
        return power(base, abs(e.exponent), p)
    raise TypeError(f'not an expression node: {e!r}')
