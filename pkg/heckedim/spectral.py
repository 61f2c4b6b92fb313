"""Truncation-based verification of the st-eigenvectors kappa and the surrounding identities.

Everything is computed in the orthonormal basis tau~_w = q^{-w/2} tau_w. When q_s and q_t are
squares of rationals every square root below is rational and all checks are exact; otherwise
the square roots fall back to floats and comparisons use a tolerance.

Each truncated identity is only read on words whose length is at most the truncation depth
minus the support radius of the multiplier.
"""
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import partial
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from loguru import logger

from .dihedral import InvalidParamsError, Params, Word, q_pow, word_mul, words_up_to
from .hecke import (Basis, HeckeElem, convert_basis, hecke_mul, inner_product, kappa_minus,
                    kappa_norm_sq, kappa_plus, kappa_projection_coeff, kappa_select, kappa_tail,
                    kappa_truncated, KappaSpec, left_gen_mul, norm_sq, random_element, r_operator,
                    right_gen_mul, special_element)
from .kernel_dim import dims_of_K
from .utils.misc import exact_sqrt, format_fraction, log_on, parallel_map, real_sqrt


class DegenerateParameterError(ValueError):
    def __init__(self, message: str, data: Optional['RecurrenceData'] = None):
        super().__init__(message)
        self.data = data


# the st-eigenvector residuals need a non-empty interior: depth minus the radius 2 of st
MIN_VERIFY_DEPTH = 3


def _close(a, b, tol: float) -> bool:
    if isinstance(a, (int, Fraction)) and isinstance(b, (int, Fraction)):
        return a == b
    return abs(float(a) - float(b)) <= tol


def _st(p: Params) -> HeckeElem:
    return convert_basis(HeckeElem.word('st', Basis.GROUP), Basis.TAU, p)


# --- truncated operators ---

@dataclass
class TruncatedOperator:
    """Right multiplication restricted to words of length <= depth.

    matrix[i, j] is the tau~_{w_j} coordinate of tau~_{w_i} * elem; rows of words longer than
    `interior` lost mass past the truncation.
    """
    depth: int
    words: Tuple[Word, ...]
    matrix: np.ndarray
    exact: bool
    interior: int

    @property
    def size(self) -> int:
        return len(self.words)

    def interior_indices(self) -> List[int]:
        return [i for i, w in enumerate(self.words) if len(w) <= self.interior]

    def is_symmetric(self, tol: float = 1e-9) -> bool:
        A = self.matrix
        if self.exact:
            return bool((A == A.T).all())
        return bool(np.allclose(A, A.T, atol=tol))


def truncated_right_op(elem: HeckeElem, depth: int, p: Params) -> TruncatedOperator:
    if depth < 1:
        raise ValueError(f'truncation depth must be >= 1, got {depth}')
    x = convert_basis(elem, Basis.TAU, p)
    words = words_up_to(depth)
    index = {w: i for i, w in enumerate(words)}
    exact = p.is_square_rational
    if exact:
        A = np.full((len(words), len(words)), Fraction(0), dtype=object)
    else:
        A = np.zeros((len(words), len(words)))
    for i, u in enumerate(words):
        img = hecke_mul(HeckeElem.word(u, Basis.TAU), x, p)
        for v, c in img.coeffs.items():
            j = index.get(v)
            if j is None:
                continue
            ratio = q_pow(v, p) / q_pow(u, p)
            A[i, j] = c * exact_sqrt(ratio) if exact else float(c) * math.sqrt(ratio)
    return TruncatedOperator(depth, words, A, exact, depth - x.max_length())


def unitarity_check(p: Params, depth: int, tol: float = 1e-9) -> bool:
    """Interior rows of the truncated st-operator are orthonormal."""
    op = truncated_right_op(HeckeElem.word('st', Basis.GROUP), depth, p)
    rows = op.matrix[op.interior_indices()]
    gram = rows.dot(rows.T)
    k = len(rows)
    return all(_close(gram[i, j], int(i == j), tol) for i in range(k) for j in range(k))


# --- eigenvector residuals ---

def element_residual(spec: KappaSpec, elem: HeckeElem, lam, depth: int, p: Params, side: str = 'right'):
    """|kappa_N * elem - lam kappa_N| on the interior, relative to |kappa_N|."""
    if side not in ('right', 'left'):
        raise ValueError(f"side must be 'right' or 'left', got {side!r}")
    x = convert_basis(elem, Basis.TAU, p)
    kt = kappa_truncated(spec, depth, p)
    if kt.is_zero():
        return Fraction(0)
    prod = hecke_mul(kt, x, p) if side == 'right' else hecke_mul(x, kt, p)
    resid = (prod - kt * lam).truncate(depth - x.max_length())
    return real_sqrt(norm_sq(resid, p) / norm_sq(kt, p))


def eigen_residual(spec: KappaSpec, lam, depth: int, p: Params, side: str = 'right'):
    return element_residual(spec, HeckeElem.word('st', Basis.GROUP), lam, depth, p, side)


def circle_residuals(spec: KappaSpec, depth: int, p: Params, n_angles: int = 12) -> List[Tuple[float, float]]:
    """Float residuals of kappa*st - e^{i theta} kappa for theta strictly between 0 and pi."""
    kt = kappa_truncated(spec, depth, p)
    if kt.is_zero():
        return []
    radius = depth - 2
    a = hecke_mul(kt, _st(p), p).truncate(radius)
    b = kt.truncate(radius)
    aa, ab, bb = (float(norm_sq(a, p)), float(inner_product(a, b, p)), float(norm_sq(b, p)))
    total = float(norm_sq(kt, p))
    out = []
    for k in range(1, n_angles):
        theta = math.pi * k / n_angles
        out.append((theta, math.sqrt(max(aa - 2 * math.cos(theta) * ab + bb, 0.0) / total)))
    return out


def mu_from_lambda(lam) -> Tuple:
    """Eigenvalues +-sqrt(1/2 - lam/2) of a_s - a_t on an st-eigenvector with real eigenvalue lam."""
    root = real_sqrt(Fraction(1, 2) - Fraction(lam) / 2)
    return (root,) if root == 0 else (root, -root)


# --- kappa identities on truncations ---

def kappa_invariance_check(which: str, p: Params, depth: int) -> Dict[str, bool]:
    """Generators act on kappa by signs, tau_g by q_g r_g, on both sides (interior depth-1)."""
    spec = kappa_select(which, p)
    kt = kappa_truncated(spec, depth, p)
    out = {}
    for letter in ('s', 't'):
        g = convert_basis(HeckeElem.word(letter, Basis.GROUP), Basis.TAU, p)
        sign = spec.gen_sign(letter, p)
        scalar = spec.action_scalar(Word.gen(letter), p)
        expected = (kt * sign).truncate(depth - 1)
        out[f'{letter}_right'] = hecke_mul(kt, g, p).truncate(depth - 1) == expected
        out[f'{letter}_left'] = hecke_mul(g, kt, p).truncate(depth - 1) == expected
        out[f'tau_{letter}_right'] = right_gen_mul(kt, letter, p).truncate(depth - 1) == (kt * scalar).truncate(depth - 1)
        out[f'tau_{letter}_left'] = left_gen_mul(letter, kt, p).truncate(depth - 1) == (kt * scalar).truncate(depth - 1)
    return out


def idempotent_check(which: str, p: Params, depth: int) -> bool:
    """kappa_N * kappa_2N agrees with |kappa_N|^2 kappa on lengths <= N."""
    spec = kappa_select(which, p)
    kt = kappa_truncated(spec, depth, p)
    k2 = kappa_truncated(spec, 2 * depth, p)
    return hecke_mul(kt, k2, p).truncate(depth) == kt * norm_sq(kt, p)


@dataclass
class BoundedReport:
    identity: bool
    interior_mass: bool
    bound: bool

    @property
    def passed(self) -> bool:
        return self.identity and self.interior_mass and self.bound


def bounded_check(spec: KappaSpec, y: HeckeElem, depth: int, p: Params) -> BoundedReport:
    """kappa_N * y equals c_y kappa on the interior, with c_y^2 <= |y|^2 |kappa|^2."""
    y = convert_basis(y, Basis.TAU, p)
    radius = depth - y.max_length()
    kt = kappa_truncated(spec, depth, p)
    interior = hecke_mul(kt, y, p).truncate(radius)
    c_y = sum((c * spec.action_scalar(w, p) for w, c in y.coeffs.items()), Fraction(0))
    k2 = kappa_norm_sq(spec, p)
    return BoundedReport(
        identity=interior == kappa_truncated(spec, radius, p) * c_y,
        interior_mass=norm_sq(interior, p) == c_y ** 2 * (k2 - kappa_tail(spec, radius, p)),
        bound=c_y ** 2 <= norm_sq(y, p) * k2)


# --- the recurrence behind the eigenvector analysis ---

@dataclass
class RecurrenceData:
    p: Params
    mu: object
    alpha_s: object
    alpha_t: object
    alpha_st: object
    delta: object
    beta: object
    gamma: object
    M_rec: np.ndarray
    N_rec: np.ndarray
    chi1: Optional[object]
    chi2: Optional[object]
    checks: Dict[str, bool] = field(default_factory=dict)

    @property
    def trace(self):
        return self.beta * self.gamma + self.delta + 1 / self.delta

    @property
    def exact(self) -> bool:
        return isinstance(self.delta, Fraction)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())


def _det(A):
    return A[0, 0] * A[1, 1] - A[0, 1] * A[1, 0]


def _apply(A, v):
    return (A[0, 0] * v[0] + A[0, 1] * v[1], A[1, 0] * v[0] + A[1, 1] * v[1])


def recurrence_data(p: Params, mu) -> RecurrenceData:
    rs, rt = real_sqrt(p.q_s), real_sqrt(p.q_t)
    alpha_s, alpha_t = rs + 1 / rs, rt + 1 / rt
    alpha_st = rs * rt - 1 / (rs * rt)
    delta = alpha_s / alpha_t
    beta = alpha_st / alpha_s - alpha_t * mu
    gamma = alpha_st / alpha_t + alpha_s * mu
    M = np.array([[1 / delta, beta], [gamma / delta, beta * gamma + delta]], dtype=object)
    N = np.array([[delta, gamma], [beta * delta, beta * gamma + 1 / delta]], dtype=object)
    trace = beta * gamma + delta + 1 / delta
    disc = trace * trace - 4
    chi1 = chi2 = None
    if disc >= 0:
        root = real_sqrt(disc)
        a, b = (trace + root) / 2, (trace - root) / 2
        chi1, chi2 = (a, b) if abs(a) >= abs(b) else (b, a)
    return RecurrenceData(p, mu, alpha_s, alpha_t, alpha_st, delta, beta, gamma, M, N, chi1, chi2)


def solution_pairs(p: Params) -> List[Tuple[object, int]]:
    """The four (chi, mu) pairs for which an eigenvector candidate decays along both recurrences."""
    rs, rt = real_sqrt(p.q_s), real_sqrt(p.q_t)
    r = rs * rt
    return [(r, 0), (1 / r, 0), (-rs / rt, 1), (-rt / rs, -1)]


def recurrence_check(p: Params, mu, tol: float = 1e-9) -> RecurrenceData:
    data = recurrence_data(p, mu)
    checks = {
        'det_M': _close(_det(data.M_rec), 1, tol),
        'det_N': _close(_det(data.N_rec), 1, tol),
        'trace': _close(data.M_rec[0, 0] + data.M_rec[1, 1], data.N_rec[0, 0] + data.N_rec[1, 1], tol)
                 and _close(data.M_rec[0, 0] + data.M_rec[1, 1], data.trace, tol),
    }
    pairs = [(chi, format_fraction(chi) if isinstance(chi, Fraction) else f'{chi:.6g}')
             for chi, pair_mu in solution_pairs(p) if pair_mu == mu]
    for chi, label in pairs:
        checks[f'char[{label}]'] = _close(chi * chi - data.trace * chi + 1, 0, tol)
    data.checks = checks
    if data.beta == 0 or data.gamma == 0:
        failing = [k for k, v in checks.items() if not v]
        raise DegenerateParameterError(f'beta or gamma vanishes at {p}, mu={mu}; failing identities: {failing}', data)
    rhs = mu - 1 / (1 + p.q_s) + 1 / (1 + p.q_t)
    for chi, label in pairs:
        x_s = (chi - 1 / data.delta) / data.beta
        x_t = (chi - data.delta) / data.gamma
        checks[f'init[{label}]'] = _close(x_s / data.alpha_s - x_t / data.alpha_t, rhs, tol)
    data.checks = checks
    log_on(not data.passed, f'recurrence identities fail at {p}, mu={mu}: {checks}', 'ERROR')
    return data


def eigenvector(A, chi) -> Tuple:
    if A[0, 1] != 0:
        return A[0, 1], chi - A[0, 0]
    if A[1, 0] != 0:
        return chi - A[1, 1], A[1, 0]
    return (1, 0) if A[0, 0] == chi else (0, 1)


def _norm_sq(v):
    return v[0] * v[0] + v[1] * v[1]


# Transfer matrix of the double-root case trace = 2 (chi1 = chi2 = 1). Started off its eigenline at
# JORDAN_START, iterates grow linearly instead of geometrically, so divergence_check must still
# report non-decay.
JORDAN_BLOCK = np.array([[1, 1], [0, 1]], dtype=object)
JORDAN_START = (0, 1)


def divergence_check(p: Params, mu, trials: int = 1, iterations: int = 50, non_decay_fraction=Fraction(1, 2),
                     initial: Optional[Sequence] = None, matrix=None, seed: int = 0) -> bool:
    """True when |A^n m| stays >= fraction*|m| for every initial vector tried.

    Without `initial`, the vectors are the chi1-eigenvector of M plus random integer multiples
    of the chi2-eigenvector, so each has a nonzero chi1-component.
    """
    A = np.asarray(matrix, dtype=object) if matrix is not None else recurrence_data(p, mu).M_rec
    if initial is not None:
        vectors = [tuple(initial)]
    else:
        data = recurrence_data(p, mu)
        if data.chi1 is None:
            raise DegenerateParameterError(f'complex eigenvalues at {p}, mu={mu}: no chi1 direction')
        v1, v2 = eigenvector(A, data.chi1), eigenvector(A, data.chi2)
        rng = np.random.default_rng(seed)
        vectors = [v1]
        for _ in range(max(trials - 1, 0)):
            k = int(rng.integers(-5, 6))
            vectors.append((v1[0] + k * v2[0], v1[1] + k * v2[1]))
    frac2 = non_decay_fraction * non_decay_fraction
    for v in vectors:
        start, cur = _norm_sq(v), v
        for _ in range(iterations):
            cur = _apply(A, cur)
        if _norm_sq(cur) < frac2 * start:
            return False
    return True


# --- coordinates of kappa in the orthonormal basis ---

def eigen_coordinates(spec: KappaSpec, depth: int, p: Params) -> Dict[Word, object]:
    """x_w = <kappa, tau~_w> = r^w q^{w/2}."""
    return {w: spec.coeff(w) * real_sqrt(q_pow(w, p)) for w in words_up_to(depth)}


def kappa_pairing(which: str, p: Params) -> Tuple[object, int]:
    """(chi2, mu) belonging to kappa_plus / kappa_minus in the region of p."""
    rs, rt = real_sqrt(p.q_s), real_sqrt(p.q_t)
    if which == 'plus':
        return (rs * rt if p.q_s * p.q_t < 1 else 1 / (rs * rt)), 0
    if p.q_s < p.q_t:
        return -rs / rt, 1
    return -rt / rs, -1


def eigen_coordinate_check(which: str, p: Params, depth: int, tol: float = 1e-9) -> bool:
    """Coordinates of kappa follow the M and N recurrences, with x_{(st)^n} = chi2^n."""
    spec = kappa_select(which, p)
    if spec.vanishing:
        return True
    chi2, mu = kappa_pairing(which, p)
    data = recurrence_data(p, mu)
    x = eigen_coordinates(spec, depth, p)
    ok = True
    for n in range((depth - 1) // 2):
        ok &= _close(x[Word(n, False)], chi2 ** n, tol)
        for A, cur, nxt in ((data.M_rec, (Word(n, False), Word(n, True)), (Word(n + 1, False), Word(n + 1, True))),
                            (data.N_rec, (Word(-n, False), Word(-n - 1, True)), (Word(-n - 1, False), Word(-n - 2, True)))):
            got = _apply(A, (x[cur[0]], x[cur[1]]))
            ok &= _close(got[0], x[nxt[0]], tol) and _close(got[1], x[nxt[1]], tol)
    return bool(ok)


def generator_rows(p: Params, mu, words: Sequence[Word]) -> Dict[Word, Dict[Word, object]]:
    """Closed-form rows of right multiplication by R - c mu in the orthonormal basis."""
    rs, rt = real_sqrt(p.q_s), real_sqrt(p.q_t)
    c = p.c_norm
    up_s, down_t = rs * (1 + p.q_t), -rt * (1 + p.q_s)
    s, t = Word.gen('s'), Word.gen('t')
    rows = {}
    for w in words:
        last = w.last_letter()
        if last is None:
            rows[w] = {w: p.q_t - p.q_s - c * mu, s: up_s, t: down_t}
        elif last == 's':
            rows[w] = {word_mul(w, t): down_t, w: p.q_s * p.q_t - 1 - c * mu, word_mul(w, s): up_s}
        else:
            rows[w] = {word_mul(w, s): up_s, w: -(p.q_s * p.q_t - 1 + c * mu), word_mul(w, t): down_t}
    return rows


def generator_row_check(p: Params, mu, depth: int = 4, tol: float = 1e-9) -> bool:
    elem = r_operator(p) - p.c_norm * mu
    op = truncated_right_op(elem, depth, p)
    index = {w: i for i, w in enumerate(op.words)}
    interior = [w for w in op.words if len(w) <= op.interior]
    ok = True
    for w, row in generator_rows(p, mu, interior).items():
        got = op.matrix[index[w]]
        for j, v in enumerate(op.words):
            ok &= _close(got[j], row.get(v, 0), tol)
    return bool(ok)


def case_one_polynomial(p: Params) -> Fraction:
    """(q_s+q_t+2)(2 q_s q_t+q_s+q_t), which would have to vanish for a non-decaying solution."""
    return (p.q_s + p.q_t + 2) * (2 * p.q_s * p.q_t + p.q_s + p.q_t)


# --- orthogonality of the decomposition ---

@dataclass
class OrthogonalityReport:
    s_value: Fraction
    t_value: Fraction
    dims_sum: Fraction
    projections_agree: bool
    partial_inner: List[Fraction]
    monotone: bool
    final: Fraction

    @property
    def passed(self) -> bool:
        return self.s_value == 0 and self.t_value == 0 and self.dims_sum == 1 \
            and self.projections_agree and self.monotone


def orthogonality_check(p: Params, depths: Sequence[int] = range(4, 17)) -> OrthogonalityReport:
    kp, km = kappa_plus(p), kappa_minus(p)
    proj_p, proj_m = kappa_projection_coeff('plus', p), kappa_projection_coeff('minus', p)
    one = HeckeElem.one(Basis.GROUP)
    values = {}
    for letter in ('s', 't'):
        g = HeckeElem.word(letter, Basis.GROUP)
        # <g k~_empty, 1> with k~_empty = 1 - k~_plus - k~_minus and <k~, 1> = 1/|k|^2
        values[letter] = inner_product(g, one, p) - kp.gen_sign(letter, p) * proj_p - km.gen_sign(letter, p) * proj_m
    d_plus, d_minus, d_empty = dims_of_K(p)
    partial_inner = [inner_product(kappa_truncated(kp, n, p), kappa_truncated(km, n, p), p) for n in depths]
    mags = [abs(v) for v in partial_inner]
    return OrthogonalityReport(
        s_value=values['s'], t_value=values['t'], dims_sum=d_plus + d_minus + d_empty,
        projections_agree=(proj_p == d_plus and proj_m == d_minus),
        partial_inner=partial_inner,
        monotone=all(b <= a for a, b in zip(mags, mags[1:])),
        final=mags[-1] if mags else Fraction(0))


# --- reports ---

@dataclass
class CheckResult:
    name: str
    passed: bool
    params: Optional[Params] = None
    detail: str = ''
    skipped: bool = False

    def to_dict(self) -> dict:
        out = {'name': self.name, 'passed': self.passed, 'skipped': self.skipped, 'detail': self.detail}
        if self.params is not None:
            out['params'] = [format_fraction(self.params.q_s), format_fraction(self.params.q_t)]
        return out

    def __str__(self):
        status = 'skip' if self.skipped else ('ok' if self.passed else 'FAIL')
        where = f' {self.params}' if self.params is not None else ''
        detail = f'  {self.detail}' if self.detail else ''
        return f'[{status:>4}] {self.name}{where}{detail}'


@dataclass
class VerifyReport:
    checks: List[CheckResult]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> List[CheckResult]:
        return [c for c in self.checks if not c.passed]

    def to_dict(self) -> dict:
        return {'passed': self.passed, 'checks': [c.to_dict() for c in self.checks]}


def verify_point(p: Params, depth: int = 12, tol: float = 1e-9, divergence_iterations: int = 50,
                 non_decay_fraction=Fraction(1, 2), seed: int = 0) -> List[CheckResult]:
    if depth < MIN_VERIFY_DEPTH:
        raise InvalidParamsError(f'verification depth must be >= {MIN_VERIFY_DEPTH}, got {depth}')
    out: List[CheckResult] = []

    def add(name, passed, detail='', skipped=False):
        out.append(CheckResult(name, bool(passed), p, detail, skipped))

    orth = orthogonality_check(p, range(max(depth - 4, 1), depth + 1))
    add('orthogonality', orth.passed,
        f's={orth.s_value} t={orth.t_value} sum={orth.dims_sum} |<k+,k->|={float(orth.final):.3g}')
    add('case_one_polynomial', case_one_polynomial(p) > 0)

    res_depth = min(depth, 8)
    for which, lam in (('plus', 1), ('minus', -1)):
        spec = kappa_select(which, p)
        if spec.vanishing:
            add(f'eigen_{which}', True, 'kappa vanishes on this boundary', skipped=True)
            continue
        right = eigen_residual(spec, lam, res_depth, p)
        left = eigen_residual(spec, lam, res_depth, p, side='left')
        wrong = eigen_residual(spec, -lam, res_depth, p)
        add(f'eigen_{which}', right == 0 and left == 0 and wrong >= Fraction(1, 2),
            f'residual {right} / left {left} / wrong sign {float(wrong):.3g}')
        mu_ok = any(element_residual(spec, special_element('a_s', Basis.GROUP) - special_element('a_t', Basis.GROUP),
                                     mu, res_depth, p) == 0 for mu in mu_from_lambda(lam))
        add(f'mu_from_lambda_{which}', mu_ok)
        inv = kappa_invariance_check(which, p, res_depth)
        add(f'kappa_invariance_{which}', all(inv.values()), ','.join(k for k, v in inv.items() if not v))
        add(f'idempotent_{which}', idempotent_check(which, p, min(depth, 6)))
        y = random_element(np.random.default_rng(seed), Basis.GROUP, 2)
        add(f'bounded_{which}', bounded_check(spec, y, res_depth, p).passed)
        add(f'circle_{which}', all(r > tol for _, r in circle_residuals(spec, res_depth, p)))
        add(f'eigen_coordinates_{which}', eigen_coordinate_check(which, p, res_depth, tol))

    op_depth = min(depth, 6)
    for letter in ('s', 't'):
        op = truncated_right_op(HeckeElem.word(letter, Basis.TAU), op_depth, p)
        add(f'symmetric_tau_{letter}', op.is_symmetric(tol))
    add('unitarity_st', unitarity_check(p, op_depth, tol))

    for mu in (0, 1, -1):
        try:
            data = recurrence_check(p, mu, tol)
        except DegenerateParameterError as err:
            add(f'recurrence_mu={mu}', err.data is None or err.data.passed, str(err), skipped=True)
            continue
        add(f'recurrence_mu={mu}', data.passed, ','.join(k for k, v in data.checks.items() if not v))
        add(f'generator_rows_mu={mu}', generator_row_check(p, mu, 4, tol))
        if not isinstance(data.chi1, Fraction) or abs(data.chi1) == 1:
            add(f'divergence_mu={mu}', True, 'needs exact real eigenvalues off the unit circle', skipped=True)
            continue
        grows = divergence_check(p, mu, trials=3, iterations=divergence_iterations,
                                 non_decay_fraction=non_decay_fraction, seed=seed)
        v2 = eigenvector(data.M_rec, data.chi2)
        decays = not divergence_check(p, mu, iterations=divergence_iterations,
                                      non_decay_fraction=non_decay_fraction, initial=v2)
        add(f'divergence_mu={mu}', grows and decays, f'chi1={data.chi1} chi2={data.chi2}')
    return out


def verify(points: Sequence[Params], cfg, depth: Optional[int] = None, seed: int = 0,
           n_jobs: int = 1, progress: bool = False) -> VerifyReport:
    vc = cfg.VERIFY
    depth = vc.DEPTH if depth is None else depth
    if depth < MIN_VERIFY_DEPTH:
        raise InvalidParamsError(f'verification depth must be >= {MIN_VERIFY_DEPTH}, got {depth}')
    logger.info(f'verify: {len(points)} parameter points at depth {depth}')
    work = partial(verify_point, depth=depth, tol=vc.FLOAT_TOL,
                   divergence_iterations=vc.DIVERGENCE_ITERATIONS,
                   non_decay_fraction=Fraction(vc.NON_DECAY_FRACTION).limit_denominator(1000), seed=seed)
    per_point = parallel_map(work, points, n_jobs=n_jobs, desc='Verifying', progress=progress)
    checks = [c for batch in per_point for c in batch]
    for c in checks:
        log_on(not c.passed, f'verify: {c}', 'ERROR')
    return VerifyReport(checks)
