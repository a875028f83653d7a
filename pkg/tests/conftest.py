import numpy as np
import pytest

from greensfn import GreensEvaluator, random_rectangle_matrix
from greensfn.spectrum import DichotomyError


def rectangle(n, seed):
    return random_rectangle_matrix(n, np.random.default_rng(seed))


def dichotomous(n, seed):
    """Rectangle draw plus evaluator, resampling away axis-touching spectra."""
    rng = np.random.default_rng(seed)
    for _ in range(64):
        a = random_rectangle_matrix(n, rng)
        try:
            return a, GreensEvaluator(a)
        except DichotomyError:
            continue
    raise RuntimeError("could not draw a dichotomous matrix")


@pytest.fixture
def diag_pm1():
    """The workhorse example: one stable and one unstable direction."""
    a = np.diag([-1.0, 1.0]).astype(complex)
    return a, GreensEvaluator(a)
