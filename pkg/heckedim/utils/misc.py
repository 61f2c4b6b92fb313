import contextlib
import math
from fractions import Fraction
from typing import Optional, Union

import joblib
from joblib import Parallel, delayed
from loguru import logger
from tqdm import tqdm
from yacs.config import CfgNode as CN


def lower_config(yacs_cfg):
    if not isinstance(yacs_cfg, CN):
        return yacs_cfg
    return {k.lower(): lower_config(v) for k, v in yacs_cfg.items()}


def log_on(condition, message, level):
    if condition:
        assert level in ['INFO', 'DEBUG', 'WARNING', 'ERROR', 'CRITICAL']
        logger.log(level, message)


@contextlib.contextmanager
def tqdm_joblib(tqdm_object):
    """Context manager to patch joblib to report into tqdm progress bar given as argument

    Usage:
        with tqdm_joblib(tqdm(desc="Sampling regions", total=4)) as progress_bar:
            Parallel(n_jobs=4)(delayed(dim_ker)(M, p) for p in samples)
    """
    class TqdmBatchCompletionCallback(joblib.parallel.BatchCompletionCallBack):
        def __init__(self, *args, **kwargs):
            super().__init__(*args, **kwargs)

        def __call__(self, *args, **kwargs):
            tqdm_object.update(n=self.batch_size)
            return super().__call__(*args, **kwargs)

    old_batch_callback = joblib.parallel.BatchCompletionCallBack
    joblib.parallel.BatchCompletionCallBack = TqdmBatchCompletionCallback
    try:
        yield tqdm_object
    finally:
        joblib.parallel.BatchCompletionCallBack = old_batch_callback
        tqdm_object.close()


def parallel_map(func, items, n_jobs=1, desc=None, progress=False):
    """Ordered map over `items` through joblib; results keep the input order."""
    items = list(items)
    if n_jobs == 1 and not progress:
        return [func(item) for item in items]
    with tqdm_joblib(tqdm(desc=desc, total=len(items), disable=not progress)):
        return Parallel(n_jobs=n_jobs)(delayed(func)(item) for item in items)


# --- exact rationals ---

def to_fraction(value: Union[str, int, Fraction]) -> Fraction:
    """Parse 'p/q', 'p' or an int/Fraction into a Fraction; floats are refused."""
    if isinstance(value, float):
        raise TypeError(f'refusing float {value!r}: pass a rational as "p/q"')
    return Fraction(value)


def exact_sqrt(x: Fraction) -> Optional[Fraction]:
    """Square root of a non-negative rational if it is itself rational, else None."""
    if x < 0:
        return None
    num, den = x.numerator, x.denominator
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn == num and rd * rd == den:
        return Fraction(rn, rd)
    return None


def real_sqrt(x):
    """Exact square root when available, float otherwise."""
    if isinstance(x, Fraction):
        root = exact_sqrt(x)
        if root is not None:
            return root
    return math.sqrt(x)


def sign(x) -> int:
    return (x > 0) - (x < 0)


def fraction_to_json(x: Fraction) -> dict:
    return {'num': x.numerator, 'den': x.denominator}


def format_fraction(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f'{x.numerator}/{x.denominator}'
