"""Elements of RW in the group basis {w} and the Hecke basis {tau_w}.

The two bases are tied by s = (1-q_s)/(1+q_s) + 2/(1+q_s) tau_s (and likewise for t),
so every conversion and every tau-product depends on Params. Arithmetic between
elements of different bases is rejected.
"""
import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterator, Mapping, Optional, Tuple

import numpy as np

from .dihedral import Params, Word, letter_counts, q_pow, word_mul, words_up_to
from .utils.misc import format_fraction, to_fraction


class BasisMismatchError(ValueError):
    pass


class DivergentSeriesError(ValueError):
    pass


class Basis(enum.Enum):
    GROUP = 'group'
    TAU = 'tau'


class HeckeElem:
    """Finite linear combination of basis words with rational coefficients."""
    __slots__ = ('_c', 'basis')

    def __init__(self, coeffs: Optional[Mapping[Word, Fraction]] = None, basis: Basis = Basis.GROUP):
        c = {}
        for w, v in (coeffs or {}).items():
            v = to_fraction(v)
            if v != 0:
                c[w] = v
        self._c = c
        self.basis = basis

    @classmethod
    def zero(cls, basis: Basis) -> 'HeckeElem':
        return cls({}, basis)

    @classmethod
    def one(cls, basis: Basis) -> 'HeckeElem':
        return cls({Word.identity(): 1}, basis)

    @classmethod
    def word(cls, w, basis: Basis, c=1) -> 'HeckeElem':
        if isinstance(w, str):
            w = Word.from_letters(w)
        return cls({w: c}, basis)

    @classmethod
    def scalar(cls, c, basis: Basis) -> 'HeckeElem':
        return cls({Word.identity(): c}, basis)

    def __iter__(self) -> Iterator[Tuple[Word, Fraction]]:
        return iter(sorted(self._c.items(), key=lambda kv: (len(kv[0]), kv[0].first_letter() != 's')))

    def __getitem__(self, w: Word) -> Fraction:
        return self._c.get(w, Fraction(0))

    @property
    def coeffs(self) -> Dict[Word, Fraction]:
        return dict(self._c)

    def support(self):
        return set(self._c)

    def is_zero(self) -> bool:
        return not self._c

    def max_length(self) -> int:
        return max((len(w) for w in self._c), default=0)

    def is_unit(self) -> bool:
        """A nonzero multiple of a single basis word (invertible in both bases)."""
        return len(self._c) == 1

    def truncate(self, depth: int) -> 'HeckeElem':
        return HeckeElem({w: v for w, v in self._c.items() if len(w) <= depth}, self.basis)

    def _check(self, other: 'HeckeElem'):
        if other.basis is not self.basis:
            raise BasisMismatchError(f'cannot combine {self.basis.value} and {other.basis.value} basis elements')

    def __add__(self, other):
        if not isinstance(other, HeckeElem):
            other = HeckeElem.scalar(other, self.basis)
        self._check(other)
        c = dict(self._c)
        for w, v in other._c.items():
            c[w] = c.get(w, 0) + v
        return HeckeElem(c, self.basis)

    __radd__ = __add__

    def __neg__(self):
        return HeckeElem({w: -v for w, v in self._c.items()}, self.basis)

    def __sub__(self, other):
        if not isinstance(other, HeckeElem):
            other = HeckeElem.scalar(other, self.basis)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, c):
        # scalars only: products of elements go through hecke_mul / group_mul
        if isinstance(c, HeckeElem):
            return NotImplemented
        c = to_fraction(c)
        return HeckeElem({w: v * c for w, v in self._c.items()}, self.basis)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, HeckeElem):
            return NotImplemented
        return self.basis is other.basis and self._c == other._c

    def __hash__(self):
        return hash((self.basis, frozenset(self._c.items())))

    def __repr__(self):
        return f'HeckeElem[{self.basis.value}]({self})'

    def __str__(self):
        if not self._c:
            return '0'
        parts = []
        for w, v in self:
            label = str(w) if self.basis is Basis.GROUP else f'T{w}'
            if w.is_identity:
                parts.append(format_fraction(v))
            elif v == 1:
                parts.append(label)
            elif v == -1:
                parts.append('-' + label)
            else:
                parts.append(f'{format_fraction(v)}*{label}')
        return ' + '.join(parts).replace('+ -', '- ')


def _require(x: HeckeElem, basis: Basis, op: str):
    if x.basis is not basis:
        raise BasisMismatchError(f'{op} expects {basis.value}-basis operands, got {x.basis.value}')


# --- products ---

def right_gen_mul(x: HeckeElem, letter: str, p: Params) -> HeckeElem:
    """x * tau_g for a generator g, by the quadratic rule tau_w tau_g = (q_g-1) tau_w + q_g tau_wg when |wg| < |w|."""
    _require(x, Basis.TAU, 'right_gen_mul')
    g, q = Word.gen(letter), p.q(letter)
    out: Dict[Word, Fraction] = {}
    for w, c in x._c.items():
        wg = word_mul(w, g)
        if w.last_letter() != letter:
            out[wg] = out.get(wg, 0) + c
        else:
            out[w] = out.get(w, 0) + (q - 1) * c
            out[wg] = out.get(wg, 0) + q * c
    return HeckeElem(out, Basis.TAU)


def left_gen_mul(letter: str, x: HeckeElem, p: Params) -> HeckeElem:
    """tau_g * x, by the mirror rule on the first letter."""
    _require(x, Basis.TAU, 'left_gen_mul')
    g, q = Word.gen(letter), p.q(letter)
    out: Dict[Word, Fraction] = {}
    for w, c in x._c.items():
        gw = word_mul(g, w)
        if w.first_letter() != letter:
            out[gw] = out.get(gw, 0) + c
        else:
            out[w] = out.get(w, 0) + (q - 1) * c
            out[gw] = out.get(gw, 0) + q * c
    return HeckeElem(out, Basis.TAU)


def hecke_mul(x: HeckeElem, y: HeckeElem, p: Params) -> HeckeElem:
    _require(x, Basis.TAU, 'hecke_mul')
    _require(y, Basis.TAU, 'hecke_mul')
    out = HeckeElem.zero(Basis.TAU)
    for v, c in y._c.items():
        # tau_v = tau_{g1} ... tau_{gk} along the reduced word of v
        xv = x
        for letter in v.letters():
            xv = right_gen_mul(xv, letter, p)
        out = out + xv * c
    return out


def group_mul(x: HeckeElem, y: HeckeElem) -> HeckeElem:
    _require(x, Basis.GROUP, 'group_mul')
    _require(y, Basis.GROUP, 'group_mul')
    out: Dict[Word, Fraction] = {}
    for u, a in x._c.items():
        for v, b in y._c.items():
            uv = word_mul(u, v)
            out[uv] = out.get(uv, 0) + a * b
    return HeckeElem(out, Basis.GROUP)


def mul(x: HeckeElem, y: HeckeElem, p: Params) -> HeckeElem:
    """Product in the common basis of x and y."""
    if x.basis is not y.basis:
        raise BasisMismatchError(f'cannot multiply {x.basis.value} by {y.basis.value} basis elements')
    return group_mul(x, y) if x.basis is Basis.GROUP else hecke_mul(x, y, p)


def power(x: HeckeElem, k: int, p: Optional[Params] = None) -> HeckeElem:
    """x^k for k >= 0 by repeated squaring."""
    if k < 0:
        raise ValueError(f'power expects a non-negative exponent, got {k}')
    out, base = HeckeElem.one(x.basis), x
    while k:
        if k & 1:
            out = mul(out, base, p)
        k >>= 1
        if k:
            base = mul(base, base, p)
    return out


# --- basis change ---

def phi_gen(letter: str, p: Params) -> HeckeElem:
    """The generator g written in the tau basis."""
    q = p.q(letter)
    return HeckeElem({Word.identity(): (1 - q) / (1 + q), Word.gen(letter): 2 / (1 + q)}, Basis.TAU)


def tau_gen(letter: str, p: Params) -> HeckeElem:
    """tau_g written in the group basis."""
    q = p.q(letter)
    return HeckeElem({Word.identity(): (q - 1) / 2, Word.gen(letter): (q + 1) / 2}, Basis.GROUP)


@lru_cache(maxsize=4096)
def _word_to_tau(w: Word, p: Params) -> HeckeElem:
    out = HeckeElem.one(Basis.TAU)
    for letter in w.letters():
        out = hecke_mul(out, phi_gen(letter, p), p)
    return out


@lru_cache(maxsize=4096)
def _tau_to_group(w: Word, p: Params) -> HeckeElem:
    out = HeckeElem.one(Basis.GROUP)
    for letter in w.letters():
        out = group_mul(out, tau_gen(letter, p))
    return out


def convert_basis(x: HeckeElem, target: Basis, p: Params) -> HeckeElem:
    if x.basis is target:
        return x
    expand = _word_to_tau if target is Basis.TAU else _tau_to_group
    out = HeckeElem.zero(target)
    for w, c in x._c.items():
        out = out + expand(w, p) * c
    return out


# --- inner product and adjoint ---

def inner_product(x: HeckeElem, y: HeckeElem, p: Params) -> Fraction:
    x, y = convert_basis(x, Basis.TAU, p), convert_basis(y, Basis.TAU, p)
    small, big = (x, y) if len(x._c) <= len(y._c) else (y, x)
    return sum((c * big[w] * q_pow(w, p) for w, c in small._c.items()), Fraction(0))


def norm_sq(x: HeckeElem, p: Params) -> Fraction:
    return inner_product(x, x, p)


def adjoint(x: HeckeElem) -> HeckeElem:
    return HeckeElem({w.inverse(): c for w, c in x._c.items()}, x.basis)


def invert_unit(x: HeckeElem, p: Params) -> HeckeElem:
    """Inverse of c*w (group basis) or c*tau_w (tau basis)."""
    if not x.is_unit():
        raise ValueError(f'{x} is not a single basis word, no inverse in RW')
    (w, c), = x._c.items()
    if x.basis is Basis.GROUP:
        return HeckeElem({w.inverse(): 1 / c}, Basis.GROUP)
    # tau_g^{-1} = (tau_g - (q_g - 1)) / q_g, taken in reverse letter order
    out = HeckeElem.scalar(1 / c, Basis.TAU)
    for letter in reversed(w.letters()):
        q = p.q(letter)
        inv = (HeckeElem.word(Word.gen(letter), Basis.TAU) - (q - 1)) * (1 / q)
        out = hecke_mul(out, inv, p)
    return out


# --- special elements ---

def special_element(name: str, basis: Basis, p: Optional[Params] = None) -> HeckeElem:
    """The self-adjoint idempotents a_g = (1+g)/2 and h_g = (1-g)/2 for g in {s, t}."""
    if name not in ('a_s', 'a_t', 'h_s', 'h_t'):
        raise ValueError(f'unknown special element {name!r}')
    kind, letter = name.split('_')
    sgn = 1 if kind == 'a' else -1
    elem = HeckeElem({Word.identity(): Fraction(1, 2), Word.gen(letter): Fraction(sgn, 2)}, Basis.GROUP)
    return convert_basis(elem, basis, p)


def r_operator(p: Params) -> HeckeElem:
    """R = c (a_s - a_t) = (q_t - q_s) + (1+q_t) tau_s - (1+q_s) tau_t, c = (1+q_s)(1+q_t)."""
    return HeckeElem({Word.identity(): p.q_t - p.q_s,
                      Word.gen('s'): 1 + p.q_t,
                      Word.gen('t'): -(1 + p.q_s)}, Basis.TAU)


def random_element(rng: np.random.Generator, basis: Basis, max_length: int, coeff_bound: int = 3,
                   density: float = 0.6) -> HeckeElem:
    c = {}
    for w in words_up_to(max_length):
        if rng.random() < density:
            c[w] = int(rng.integers(-coeff_bound, coeff_bound + 1))
    return HeckeElem(c, basis)


# --- the eigenvectors kappa(r_s, r_t) = sum_w r^w tau_w ---

@dataclass(frozen=True)
class KappaSpec:
    r_s: Fraction
    r_t: Fraction
    vanishing: bool = False

    def coeff(self, w: Word) -> Fraction:
        if self.vanishing:
            return Fraction(0)
        ns, nt = letter_counts(w)
        return self.r_s ** ns * self.r_t ** nt

    def converges(self, p: Params) -> bool:
        return self.vanishing or (self.r_s * self.r_t) ** 2 * p.q_s * p.q_t < 1

    def action_scalar(self, w: Word, p: Params) -> Fraction:
        """kappa * tau_w = q^w r^w kappa."""
        return q_pow(w, p) * self.coeff(w)

    def gen_sign(self, letter: str, p: Params) -> int:
        """Sign by which the group generator acts on kappa: +1 when r_g = 1, -1 when r_g = -1/q_g."""
        if self.vanishing:
            return 0
        r = self.r_s if letter == 's' else self.r_t
        return 1 if r == 1 else -1


ZERO_KAPPA = KappaSpec(Fraction(0), Fraction(0), vanishing=True)


def kappa_plus(p: Params) -> KappaSpec:
    prod = p.q_s * p.q_t
    if prod < 1:
        return KappaSpec(Fraction(1), Fraction(1))
    if prod > 1:
        return KappaSpec(-1 / p.q_s, -1 / p.q_t)
    return ZERO_KAPPA


def kappa_minus(p: Params) -> KappaSpec:
    if p.q_s < p.q_t:
        return KappaSpec(Fraction(1), -1 / p.q_t)
    if p.q_s > p.q_t:
        return KappaSpec(-1 / p.q_s, Fraction(1))
    return ZERO_KAPPA


def kappa_select(which: str, p: Params) -> KappaSpec:
    if which == 'plus':
        return kappa_plus(p)
    if which == 'minus':
        return kappa_minus(p)
    raise ValueError(f"kappa selector must be 'plus' or 'minus', got {which!r}")


def kappa_truncated(spec: KappaSpec, depth: int, p: Params) -> HeckeElem:
    if depth < 0:
        raise ValueError(f'truncation depth must be >= 0, got {depth}')
    if spec.vanishing:
        return HeckeElem.zero(Basis.TAU)
    return HeckeElem({w: spec.coeff(w) for w in words_up_to(depth)}, Basis.TAU)


def kappa_norm_sq(spec: KappaSpec, p: Params) -> Fraction:
    if spec.vanishing:
        return Fraction(0)
    if not spec.converges(p):
        raise DivergentSeriesError(
            f'kappa({spec.r_s}, {spec.r_t}) is not square-summable at {p}: '
            f'(r_s r_t)^2 q_s q_t = {(spec.r_s * spec.r_t) ** 2 * p.q_s * p.q_t} >= 1')
    rs2, rt2 = spec.r_s ** 2, spec.r_t ** 2
    return (1 + rs2 * p.q_s) * (1 + rt2 * p.q_t) / (1 - rs2 * rt2 * p.q_s * p.q_t)


def kappa_tail(spec: KappaSpec, depth: int, p: Params) -> Fraction:
    """Squared norm of the part of kappa outside length <= depth."""
    partial = sum((spec.coeff(w) ** 2 * q_pow(w, p) for w in words_up_to(depth)), Fraction(0))
    return kappa_norm_sq(spec, p) - partial


def kappa_projection_coeff(which: str, p: Params) -> Fraction:
    """Scalar k with k*kappa the central projection onto span(kappa); zero on the boundary."""
    spec = kappa_select(which, p)
    if spec.vanishing:
        return Fraction(0)
    return 1 / kappa_norm_sq(spec, p)

