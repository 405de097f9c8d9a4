"""Parameter validation and threshold scans against brute oracles."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from leblab import DomainError, KernelParams, validate_params
from leblab.params import (
    N1_RHS,
    N_STAR_RHS,
    n1_necessary_lower_bound,
    threshold_n0,
    threshold_n1,
    threshold_nstar,
    threshold_set,
)


def test_validate_accepts_interior_point():
    p = validate_params(1.0, 0.5, 0.0)
    assert (p.alpha, p.r, p.beta) == (1.0, 0.5, 0.0)


@pytest.mark.parametrize("bad", [(1.0, 1.0, 0.0), (-2.0, 0.5, 1.0), (0.0, 0.5, 0.0),
                                 (1.0, 0.0, 0.0), (math.nan, 0.5, 0.0), (1.0, 0.5, math.inf)])
def test_validate_rejects(bad):
    with pytest.raises(DomainError):
        validate_params(*bad)


@given(st.floats(1e-3, 1e3), st.floats(0.01, 0.99), st.floats(-8, 8))
@settings(max_examples=100, deadline=None)
def test_validate_interior_always_accepted(alpha, r, beta):
    p = validate_params(alpha, r, beta)
    assert 0.0 <= p.beta_mod4 < 4.0


def _oracle_smallest(lhs, rhs, strict, nmax):
    """Independent route: evaluate every n upward, no bound-skipping."""
    for lo in range(1, nmax + 1, 1 << 20):
        ns = np.arange(lo, min(nmax, lo + (1 << 20) - 1) + 1, dtype=np.float64)
        vals = lhs(ns)
        ok = vals < rhs if strict else vals <= rhs
        hits = np.nonzero(ok)[0]
        if hits.size:
            return int(ns[hits[0]])
    raise AssertionError("oracle exhausted")


def _lhs_n0(p, chi):
    ar = p.alpha * p.r
    return lambda n: 1.0 / (ar * n**p.r) + ar * chi / n ** (1.0 - p.r)


def test_n0_p1_matches_oracle():
    p = KernelParams(1.0, 0.5)
    res = threshold_n0(p, 1.0)
    oracle = _oracle_smallest(_lhs_n0(p, 1.0), 1.0 / 14.0, False, 10**5)
    assert res.exact and res.n == oracle


def test_n0_p2_matches_oracle():
    p = KernelParams(2.0, 0.5)
    res = threshold_n0(p, 2.0)
    oracle = _oracle_smallest(_lhs_n0(p, 2.0), N1_RHS * 0.5, False, 10**8)
    assert res.exact and res.n == oracle


def test_nstar_matches_oracle():
    p = KernelParams(1.0, 0.5)
    res = threshold_nstar(p)
    oracle = _oracle_smallest(_lhs_n0(p, 1.0), N_STAR_RHS, True, 10**5)
    assert res.exact and res.n == oracle


def test_thresholds_postconditions():
    p = KernelParams(1.0, 0.5)
    ar = 0.5

    def lhs_n1(n):
        return (1.0 / (ar * n**p.r)) * (1.0 + math.log(math.pi * n ** (1 - p.r) / ar)) + ar / n ** (1 - p.r)

    res = threshold_n1(p)
    assert res.exact
    assert lhs_n1(res.n) <= N1_RHS
    assert lhs_n1(res.n - 1) > N1_RHS
    ns = threshold_nstar(p)
    assert _lhs_n0(p, 1.0)(float(ns.n)) < N_STAR_RHS
    assert _lhs_n0(p, 1.0)(float(ns.n - 1)) >= N_STAR_RHS


def test_n1_frozen_value_and_ordering():
    # frozen from an independent doubling + downward-walk run
    p = KernelParams(1.0, 0.5)
    res = threshold_n1(p)
    assert res.n == 479795037
    assert res.n >= n1_necessary_lower_bound(p) == 175214
    assert threshold_nstar(p).n <= res.n
    assert threshold_n0(p, math.inf).n <= res.n


def test_n1_alpha100_direction():
    # the second summand dominates at alpha = 100, pushing n1 up, not down
    n1_a100 = threshold_n1(KernelParams(100.0, 0.5))
    n1_a1 = threshold_n1(KernelParams(1.0, 0.5))
    assert n1_a100.exact
    assert n1_a100.n > n1_a1.n


def test_summand_monotone_in_alpha():
    # doubling alpha at fixed n strictly increases the alpha r / n^(1-r) summand
    for n in [10, 1000, 10**6]:
        for alpha in [0.25, 1.0, 7.0]:
            s1 = alpha * 0.5 / n**0.5
            s2 = 2 * alpha * 0.5 / n**0.5
            assert s2 > s1


def test_scan_ceiling_flag():
    p = KernelParams(1.0, 0.5)
    res = threshold_n1(p, ceiling=1024)
    assert not res.exact and res.n == 1024


def test_threshold_set_bundle():
    p = KernelParams(2.0, 0.7)
    ts = threshold_set(p, ps=(1.0, math.inf), ceiling=1 << 38)
    assert ts.n1 >= ts.n_star
    assert ts.n0_for_p[math.inf] <= ts.n1
    assert ts.exact


def test_n0_branch_table():
    p = KernelParams(1.0, 0.5)
    with pytest.raises(DomainError):
        threshold_n0(p, 0.5)
    # p = infinity uses chi = 1 and the strict (3 pi)^-3 bound: larger n0
    # than p = 1 whose right side 1/14 is far looser
    assert threshold_n0(p, math.inf).n > threshold_n0(p, 1.0).n
