"""Laurent polynomials in z over the rationals, matrices over them and their ranks.

`rank_fraction_field` is the authoritative rank (fraction-free elimination over QQ[z]);
`rank_by_evaluation` is the independent oracle used to cross-check it.
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import numpy as np
from loguru import logger
from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.rings import ring

from .utils.misc import format_fraction, to_fraction

_QQZ = ring('z', QQ)[0]


class ZeroEvaluationError(ValueError):
    pass


class LaurentPoly:
    """Finite sum c_k z^k, k in Z, with exact rational coefficients."""
    __slots__ = ('_c',)

    def __init__(self, coeffs: Optional[Mapping[int, Fraction]] = None):
        c = {}
        for k, v in (coeffs or {}).items():
            v = to_fraction(v)
            if v != 0:
                c[int(k)] = v
        self._c = c

    @classmethod
    def const(cls, c) -> 'LaurentPoly':
        return cls({0: c})

    @classmethod
    def monomial(cls, c, k: int) -> 'LaurentPoly':
        return cls({k: c})

    @classmethod
    def z(cls, k: int = 1) -> 'LaurentPoly':
        return cls({k: 1})

    @property
    def coeffs(self) -> Dict[int, Fraction]:
        return dict(self._c)

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self):
        return bool(self._c)

    def min_exp(self) -> Optional[int]:
        return min(self._c) if self._c else None

    def max_exp(self) -> Optional[int]:
        return max(self._c) if self._c else None

    def is_monomial(self) -> bool:
        return len(self._c) == 1

    def __getitem__(self, k: int) -> Fraction:
        return self._c.get(k, Fraction(0))

    def __add__(self, other):
        other = _coerce(other)
        c = dict(self._c)
        for k, v in other._c.items():
            c[k] = c.get(k, 0) + v
        return LaurentPoly(c)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({k: -v for k, v in self._c.items()})

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        c: Dict[int, Fraction] = {}
        for k1, v1 in self._c.items():
            for k2, v2 in other._c.items():
                c[k1 + k2] = c.get(k1 + k2, 0) + v1 * v2
        return LaurentPoly(c)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            if not self.is_monomial():
                raise ValueError(f'{self} is not a unit in Q[z, 1/z]')
            (k, v), = self._c.items()
            return LaurentPoly({k * e: v ** e})
        out = LaurentPoly.const(1)
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        return hash(frozenset(self._c.items()))

    def bar(self) -> 'LaurentPoly':
        return LaurentPoly({-k: v for k, v in self._c.items()})

    def shift(self, k: int) -> 'LaurentPoly':
        return LaurentPoly({e + k: v for e, v in self._c.items()})

    def eval(self, point) -> Fraction:
        point = to_fraction(point)
        if point == 0:
            raise ZeroEvaluationError('cannot evaluate a Laurent polynomial at 0')
        return sum((v * point ** k for k, v in self._c.items()), Fraction(0))

    def to_poly(self, shift: int = 0):
        """z^shift * self as an element of QQ[z]; requires every exponent + shift >= 0."""
        terms = {}
        for k, v in self._c.items():
            if k + shift < 0:
                raise ValueError(f'shift {shift} leaves a negative power in {self}')
            terms[(k + shift,)] = QQ(v.numerator, v.denominator)
        return _QQZ.from_dict(terms) if terms else _QQZ.zero

    def __repr__(self):
        return f'LaurentPoly({self})'

    def __str__(self):
        if not self._c:
            return '0'
        parts = []
        for k in sorted(self._c):
            v = self._c[k]
            mono = '' if k == 0 else ('z' if k == 1 else f'z^{k}')
            if not mono:
                parts.append(format_fraction(v))
            elif v == 1:
                parts.append(mono)
            elif v == -1:
                parts.append('-' + mono)
            else:
                parts.append(f'{format_fraction(v)}*{mono}')
        return ' + '.join(parts).replace('+ -', '- ')


def _coerce(x) -> LaurentPoly:
    return x if isinstance(x, LaurentPoly) else LaurentPoly.const(x)


def lp_eval(f: LaurentPoly, point) -> Fraction:
    return f.eval(point)


def lp_bar(f: LaurentPoly) -> LaurentPoly:
    return f.bar()


@dataclass(frozen=True)
class LaurentMatrix:
    entries: Tuple[Tuple[LaurentPoly, ...], ...]
    n_cols: int = -1

    def __post_init__(self):
        rows = tuple(tuple(_coerce(e) for e in row) for row in self.entries)
        widths = {len(r) for r in rows}
        if len(widths) > 1:
            raise ValueError(f'ragged Laurent matrix, row lengths {sorted(widths)}')
        n_cols = widths.pop() if widths else max(self.n_cols, 0)
        object.__setattr__(self, 'entries', rows)
        object.__setattr__(self, 'n_cols', n_cols)

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable], n_cols: int = -1) -> 'LaurentMatrix':
        return cls(tuple(tuple(r) for r in rows), n_cols)

    @property
    def shape(self) -> Tuple[int, int]:
        return len(self.entries), self.n_cols

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def transpose(self) -> 'LaurentMatrix':
        m, n = self.shape
        return LaurentMatrix.from_rows(([self.entries[i][j] for i in range(m)] for j in range(n)), m)

    def bar(self) -> 'LaurentMatrix':
        return LaurentMatrix.from_rows(([e.bar() for e in row] for row in self.entries), self.n_cols)

    def evaluate(self, point) -> np.ndarray:
        m, n = self.shape
        out = np.empty((m, n), dtype=object)
        for i in range(m):
            for j in range(n):
                out[i, j] = self.entries[i][j].eval(point)
        return out

    def __str__(self):
        return '\n'.join('[' + ', '.join(str(e) for e in row) + ']' for row in self.entries)


# --- ranks ---

def rational_rank(A) -> int:
    """Exact rank of a matrix of rationals (numpy object array or nested lists)."""
    A = np.asarray(A, dtype=object)
    if A.ndim != 2 or 0 in A.shape:
        return 0
    rows = [[QQ(Fraction(x).numerator, Fraction(x).denominator) for x in row] for row in A]
    return DomainMatrix(rows, A.shape, QQ).rank()


def _cleared_rows(M: LaurentMatrix) -> List[list]:
    # multiply each row by z^k (a unit) so that all exponents are >= 0
    out = []
    for row in M.entries:
        lows = [e.min_exp() for e in row if not e.is_zero()]
        shift = -min(lows) if lows else 0
        out.append([e.to_poly(shift) for e in row])
    return out


def rank_fraction_field(M: LaurentMatrix) -> int:
    """Rank over Q(z) by fraction-free (Bareiss) elimination over QQ[z].

    The pivot is the lowest-degree nonzero entry of the current column, ties broken by
    row index; columns with no candidate pivot are skipped.
    """
    a = _cleared_rows(M)
    m, n = M.shape
    rank, prev = 0, _QQZ.one
    for col in range(n):
        if rank == m:
            break
        candidates = [i for i in range(rank, m) if a[i][col]]
        if not candidates:
            continue
        piv = min(candidates, key=lambda i: (a[i][col].degree(), i))
        a[rank], a[piv] = a[piv], a[rank]
        p = a[rank][col]
        for i in range(rank + 1, m):
            lead = a[i][col]
            for j in range(col + 1, n):
                a[i][j] = (p * a[i][j] - lead * a[rank][j]).exquo(prev)
            a[i][col] = _QQZ.zero
        prev = p
        rank += 1
    return rank


def rank_by_evaluation(M: LaurentMatrix, points: Sequence) -> int:
    if not points:
        raise ValueError('rank_by_evaluation needs at least one evaluation point')
    return max(rational_rank(M.evaluate(pt)) for pt in points)


def rank_with_redraws(M: LaurentMatrix, rng: np.random.Generator, pool: Sequence,
                      points_per_draw: int = 5, draws: int = 3) -> Tuple[int, int, int]:
    """Fraction-free rank cross-checked by evaluation at random points of `pool`.

    Points are drawn without repetition; when fewer than `points_per_draw` remain the draw
    takes the rest. Returns (rank, best evaluation rank, draws used).
    """
    exact = rank_fraction_field(M)
    remaining = [to_fraction(x) for x in pool]
    best, used = 0, 0
    while used < draws and remaining:
        k = min(points_per_draw, len(remaining))
        idx = sorted(rng.choice(len(remaining), size=k, replace=False).tolist())
        chosen = set(idx)
        points = [remaining[i] for i in idx]
        remaining = [x for i, x in enumerate(remaining) if i not in chosen]
        used += 1
        best = max(best, rank_by_evaluation(M, points))
        if best > exact:
            # a specialization never has larger rank than the generic matrix
            raise RuntimeError(f'evaluation rank {best} exceeds fraction-field rank {exact} at {points}')
        if best == exact:
            break
        if used < draws and remaining:
            logger.warning(f'evaluation rank {best} below fraction-field rank {exact} after draw {used}, redrawing')
        else:
            logger.error(f'evaluation rank {best} still below fraction-field rank {exact} after {used} draws')
    return exact, best, used


def random_laurent_poly(rng: np.random.Generator, max_degree: int, coeff_bound: int = 3,
                        density: float = 0.5) -> LaurentPoly:
    c = {}
    for k in range(-max_degree, max_degree + 1):
        if rng.random() < density:
            c[k] = int(rng.integers(-coeff_bound, coeff_bound + 1))
    return LaurentPoly(c)


def random_laurent_matrix(rng: np.random.Generator, m: int, n: int, max_degree: int) -> LaurentMatrix:
    """Random matrix; about a third of the time the last row is a combination of two others."""
    rows = [[random_laurent_poly(rng, max_degree) for _ in range(n)] for _ in range(m)]
    if m >= 3 and rng.random() < 1 / 3:
        f, g = random_laurent_poly(rng, 1), random_laurent_poly(rng, 1)
        rows[-1] = [f * x + g * y for x, y in zip(rows[0], rows[1])]
    return LaurentMatrix.from_rows(rows, n)
