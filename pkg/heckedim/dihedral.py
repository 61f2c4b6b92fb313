"""The infinite dihedral group W = <s, t | s^2 = t^2 = 1> and its deformation parameters.

Every element is stored in the normal form z^n or z^n s with z = st, which makes the
group law O(1). Reduced letter strings are only produced on demand (word lengths,
letter counts, the generator-by-generator products of the Hecke basis).
"""
import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import List, Optional, Tuple, Union

from .utils.misc import exact_sqrt, format_fraction, sign, to_fraction


class InvalidParamsError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Word:
    """Group element z^n (refl=False) or z^n s (refl=True), z = st."""
    n: int
    refl: bool = False

    @classmethod
    def identity(cls) -> 'Word':
        return cls(0, False)

    @classmethod
    def gen(cls, letter: str) -> 'Word':
        if letter == 's':
            return cls(0, True)
        if letter == 't':
            return cls(-1, True)
        raise ValueError(f'unknown generator {letter!r}')

    @classmethod
    def from_letters(cls, letters: str) -> 'Word':
        w = cls.identity()
        for letter in letters:
            w = word_mul(w, cls.gen(letter))
        return w

    def inverse(self) -> 'Word':
        # z^n s is an involution
        return self if self.refl else Word(-self.n, False)

    @property
    def is_identity(self) -> bool:
        return self.n == 0 and not self.refl

    def letters(self) -> str:
        """The reduced word, e.g. Word(1, True) -> 'sts'."""
        n = self.n
        if not self.refl:
            return 'st' * n if n >= 0 else 'ts' * (-n)
        if n >= 0:
            return 'st' * n + 's'
        return 'ts' * (-n - 1) + 't'

    def __len__(self) -> int:
        ns, nt = letter_counts(self)
        return ns + nt

    def first_letter(self) -> Optional[str]:
        if self.is_identity:
            return None
        if self.refl:
            return 's' if self.n >= 0 else 't'
        return 's' if self.n > 0 else 't'

    def last_letter(self) -> Optional[str]:
        if self.is_identity:
            return None
        if self.refl:
            return 's' if self.n >= 0 else 't'
        return 't' if self.n > 0 else 's'

    def __str__(self) -> str:
        return self.letters() or 'e'


def word_mul(u: Word, v: Word) -> Word:
    # (n1, r1)(n2, r2) = (n1 + (-n2 if r1 else n2), r1 xor r2), from s z s = z^-1
    return Word(u.n + (-v.n if u.refl else v.n), u.refl != v.refl)


def letter_counts(w: Word) -> Tuple[int, int]:
    """Number of s- and t-letters in the reduced word of w."""
    n = w.n
    if not w.refl:
        return abs(n), abs(n)
    if n >= 0:
        return n + 1, n
    return -n - 1, -n


def q_pow(w: Word, p: 'Params') -> Fraction:
    ns, nt = letter_counts(w)
    return p.q_s ** ns * p.q_t ** nt


def words_of_length(length: int) -> List[Word]:
    """The (at most two) words of a given length, the one starting with s first."""
    if length == 0:
        return [Word.identity()]
    k, odd = divmod(length, 2)
    if odd:
        return [Word(k, True), Word(-(k + 1), True)]
    return [Word(k, False), Word(-k, False)]


@lru_cache(maxsize=64)
def words_up_to(depth: int) -> Tuple[Word, ...]:
    """All 2*depth + 1 words of length <= depth, ordered by length."""
    out = []
    for length in range(depth + 1):
        out.extend(words_of_length(length))
    return tuple(out)


class Cmp(enum.Enum):
    LT = '<'
    EQ = '='
    GT = '>'

    @classmethod
    def of(cls, a, b) -> 'Cmp':
        return cls.LT if a < b else cls.GT if a > b else cls.EQ


@dataclass(frozen=True)
class Region:
    """Position of (q_s, q_t) relative to the curves q_s*q_t = 1 and q_s = q_t."""
    cmp_prod: Cmp  # q_s*q_t vs 1
    cmp_pair: Cmp  # q_s vs q_t

    @property
    def is_open(self) -> bool:
        return self.cmp_prod is not Cmp.EQ and self.cmp_pair is not Cmp.EQ

    @property
    def sigma_plus(self) -> Optional[int]:
        """Sign by which s and t act on kappa_plus; None where kappa_plus vanishes."""
        return {Cmp.LT: 1, Cmp.GT: -1, Cmp.EQ: None}[self.cmp_prod]

    @property
    def sigma_minus(self) -> Optional[int]:
        """Sign by which s acts on kappa_minus (t acts by the opposite sign)."""
        return {Cmp.LT: 1, Cmp.GT: -1, Cmp.EQ: None}[self.cmp_pair]

    def closure_regions(self) -> List['Region']:
        """Open regions whose closure contains this region."""
        prods = [self.cmp_prod] if self.cmp_prod is not Cmp.EQ else [Cmp.LT, Cmp.GT]
        pairs = [self.cmp_pair] if self.cmp_pair is not Cmp.EQ else [Cmp.LT, Cmp.GT]
        return [Region(a, b) for a in prods for b in pairs]

    @property
    def label(self) -> str:
        return f'qs*qt{self.cmp_prod.value}1,qs{self.cmp_pair.value}qt'

    def __str__(self) -> str:
        return self.label


OPEN_REGIONS = tuple(Region(a, b) for a in (Cmp.LT, Cmp.GT) for b in (Cmp.LT, Cmp.GT))


@dataclass(frozen=True)
class Params:
    """Deformation parameters (q_s, q_t), both positive rationals."""
    q_s: Fraction
    q_t: Fraction

    def __post_init__(self):
        q_s, q_t = to_fraction(self.q_s), to_fraction(self.q_t)
        if q_s <= 0 or q_t <= 0:
            raise InvalidParamsError(f'q_s and q_t must be positive, got ({q_s}, {q_t})')
        object.__setattr__(self, 'q_s', q_s)
        object.__setattr__(self, 'q_t', q_t)

    @classmethod
    def parse(cls, q_s: Union[str, int, Fraction], q_t: Union[str, int, Fraction]) -> 'Params':
        try:
            return cls(to_fraction(q_s), to_fraction(q_t))
        except (ValueError, ZeroDivisionError) as err:
            raise InvalidParamsError(f'bad parameters ({q_s}, {q_t}): {err}') from err

    def q(self, letter: str) -> Fraction:
        return self.q_s if letter == 's' else self.q_t

    @property
    def c_norm(self) -> Fraction:
        return (1 + self.q_s) * (1 + self.q_t)

    @property
    def sign_plus(self) -> int:
        return sign(1 - self.q_s * self.q_t)

    @property
    def sign_minus(self) -> int:
        return sign(self.q_t - self.q_s)

    @property
    def region(self) -> Region:
        return Region(Cmp.of(self.q_s * self.q_t, 1), Cmp.of(self.q_s, self.q_t))

    @property
    def is_square_rational(self) -> bool:
        return exact_sqrt(self.q_s) is not None and exact_sqrt(self.q_t) is not None

    def __str__(self) -> str:
        return f'(q_s={format_fraction(self.q_s)}, q_t={format_fraction(self.q_t)})'
