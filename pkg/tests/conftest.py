"""Shared fixtures: the worked two-criteria pair and exact bound helpers."""
from fractions import Fraction as F

import pytest

from utapair.model import CriterionScale, Grid, UtaModel


def make_grid(*breakpoint_lists, names=None):
    scales = []
    for index, points in enumerate(breakpoint_lists, start=1):
        name = names[index - 1] if names else f"crit{index}"
        scales.append(CriterionScale(name, tuple(F(p) for p in points)))
    return Grid(tuple(scales))


@pytest.fixture
def grid22():
    # two criteria, breakpoints 0 < 2 < 4 on both
    return make_grid([0, 2, 4], [0, 2, 4])


@pytest.fixture
def alpha(grid22):
    # marginal slopes: crit1 (1, 2), crit2 (1, 3)
    return UtaModel(grid22, ((F(1), F(2)), (F(1), F(3))))


@pytest.fixture
def beta(grid22):
    # marginal slopes: crit1 (1, 1), crit2 (2, 1)
    return UtaModel(grid22, ((F(1), F(1)), (F(2), F(1))))


@pytest.fixture
def grid32():
    return make_grid([0, 2, 4], [0, 2, 4], [0, 2, 4])


@pytest.fixture
def alpha3(grid32):
    return UtaModel(grid32, ((F(1), F(2)), (F(1), F(3)), (F(1), F(1))))


@pytest.fixture
def beta3(grid32):
    return UtaModel(grid32, ((F(1), F(1)), (F(2), F(1)), (F(3), F(1))))


def nr_query_bound(models, i, interval_i, j, interval_j):
    """Exact query cap for one neighboring-rectangles play, from ground truth.

    The probe loop first flattens (each flattening at least halves the probe
    slope; stops once the slope drops under the smaller of the two respondents'
    in-rectangle slope ratios), then shrinks the offset (each overshoot halves
    it; an offset small enough that even the steeper respondent's answer fits
    inside the band above always terminates). One extra query answers on the
    terminating probe.
    """
    grid = models[0].grid
    left = grid.breakpoint(i, interval_i - 1)
    right = grid.breakpoint(i, interval_i)
    lower = grid.breakpoint(j, interval_j - 1)
    boundary = grid.breakpoint(j, interval_j)
    upper = grid.breakpoint(j, interval_j + 1)

    delta = (right - left) / 2
    lam = (boundary - lower) / (2 * delta)
    s_min = min(m.slope(i, interval_i) / m.slope(j, interval_j) for m in models)
    c2 = 0
    while lam >= s_min:
        lam /= 2
        c2 += 1
    offset_cap = min(
        m.slope(j, interval_j + 1) * (upper - boundary) / m.slope(i, interval_i)
        for m in models
    )
    c1 = 0
    while delta > offset_cap:
        delta /= 2
        c1 += 1
    return 1 + c2 + c1


def ceil_log2(x):
    """Smallest h >= 0 with 2**h >= x, for rational x."""
    h = 0
    power = F(1)
    while power < x:
        power *= 2
        h += 1
    return h


def nr_query_bound_analytic(models, i, interval_i, j, interval_j):
    """Coarser closed-form cap: 2 + ceil(log2(lambda0/s_min)) + offset halvings."""
    grid = models[0].grid
    left = grid.breakpoint(i, interval_i - 1)
    right = grid.breakpoint(i, interval_i)
    lower = grid.breakpoint(j, interval_j - 1)
    boundary = grid.breakpoint(j, interval_j)
    upper = grid.breakpoint(j, interval_j + 1)

    delta = (right - left) / 2
    lam = (boundary - lower) / (2 * delta)
    s_min = min(m.slope(i, interval_i) / m.slope(j, interval_j) for m in models)
    flatten_term = ceil_log2(lam / s_min) if lam >= s_min else 0
    offset_cap = min(
        m.slope(j, interval_j + 1) * (upper - boundary) / m.slope(i, interval_i)
        for m in models
    )
    c1 = 0
    while delta > offset_cap:
        delta /= 2
        c1 += 1
    return 2 + flatten_term + c1
