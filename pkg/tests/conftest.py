import warnings

import pytest
from hypothesis import settings

from qtorus import FieldSpec, get_field, validate
from qtorus.commutation import NonMinimalPresentation

settings.register_profile("default", deadline=None, max_examples=100)
settings.load_profile("default")


def cd_of(n, ell, h):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", NonMinimalPresentation)
        return validate(n, ell, h)


ALL_ANTI = ((3, 2, [[0, 1, 1], [1, 0, 1], [1, 1, 0]]))
PARTIAL_ANTI = ((3, 2, [[0, 1, 1], [1, 0, 0], [1, 0, 0]]))
Q_MINUS1 = ((2, 2, [[0, 1], [1, 0]]))


def rank_two(ell):
    return (2, ell, [[0, 1], [-1, 0]])


@pytest.fixture
def cd_i():
    return cd_of(*ALL_ANTI)


@pytest.fixture
def cd_ii():
    return cd_of(*PARTIAL_ANTI)


@pytest.fixture
def cd_q():
    return cd_of(*Q_MINUS1)


def field_for(cd, kind="cyclotomic", p=None):
    return get_field(FieldSpec(kind, cd.ell, p))


def word_of(s):
    """x^s spelled as a word of (variable, +-1) letters in normal order."""
    return [(i, 1 if e > 0 else -1) for i, e in enumerate(s) for _ in range(abs(e))]


def normal_order_word(cd, word):
    """Bubble-sort letters into index order; returns (exponent vector, eps exponent).

    Swapping x_i^a x_j^b (i > j, a, b = +-1) into x_j^b x_i^a costs q_ij^(ab).
    """
    w = list(word)
    e = 0
    changed = True
    while changed:
        changed = False
        for k in range(len(w) - 1):
            (i, a), (j, b) = w[k], w[k + 1]
            if i > j:
                e += cd.h[i][j] * a * b
                w[k], w[k + 1] = w[k + 1], w[k]
                changed = True
    out = [0] * cd.n
    for i, a in w:
        out[i] += a
    return tuple(out), e % cd.ell
