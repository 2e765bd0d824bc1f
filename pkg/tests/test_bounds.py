import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from stabsel import bounds
from stabsel.bounds import (
    BoundQuery,
    corollary1_efp,
    efp_closed_form,
    fn_rate_bound,
    fn_vs_base_bound,
    fp_rate_bound,
    fp_vs_base_bound,
    kl_bernoulli,
    tau_min,
    tau_min_scan,
)


def _kl_mp(p, q):
    mpmath.mp.dps = 50
    p, q = mpmath.mpf(p), mpmath.mpf(q)
    a = p * mpmath.log(p / q) if p > 0 else 0
    b = (1 - p) * mpmath.log((1 - p) / (1 - q)) if p < 1 else 0
    return float(a + b)


@pytest.mark.parametrize("p,q", [(0.5, 0.1), (0.0, 0.3), (1.0, 0.028), (0.9, 0.2), (0.25, 0.75)])
def test_kl_matches_high_precision(p, q):
    assert kl_bernoulli(p, q) == pytest.approx(_kl_mp(p, q), rel=1e-14, abs=1e-300)


def test_kl_examples():
    assert kl_bernoulli(0.0, 0.3) == pytest.approx(-math.log(0.7), rel=1e-14)
    assert kl_bernoulli(1.0, 0.028) == pytest.approx(-math.log(0.028), rel=1e-14)
    with pytest.raises(ValueError):
        kl_bernoulli(0.5, 0.0)


def test_fp_rate_worked_example():
    r = fp_rate_bound(BoundQuery(L=2, tau=0.9, theta=0.028))
    # l0 = 2 is the only admissible term with a useful value: 0.5 * 0.028**2 / 0.4 ... ,
    # direct closed form: (L - 1)/(tau L - 1) * theta**2
    assert r.l0 == 2
    assert r.value == pytest.approx(0.028 ** 2 / 0.8, rel=1e-12)
    assert r.value == pytest.approx(9.8e-4, rel=1e-12)


@pytest.mark.parametrize("tau,theta", [(0.1, 0.3), (0.2, 0.45), (0.3, 0.4)])
def test_fn_rate_two_halves(tau, theta):
    # only l0 = 0 is admissible: (0 + 1) / (0 - 2 tau + 1) * exp(-2 D(0, theta))
    r = fn_rate_bound(BoundQuery(L=2, tau=tau, theta=theta))
    assert r.l0 == 0
    assert r.value == pytest.approx((1 - theta) ** 2 / (1 - 2 * tau), rel=1e-12)


def test_fp_vs_base_is_rate_over_theta_on_shared_terms():
    qy = BoundQuery(L=10, tau=0.8, theta=0.15)
    a = bounds.fp_rate_terms(qy)
    b = bounds.fp_vs_base_terms(qy)
    assert set(b) == set(a) - {math.ceil(qy.L * qy.theta)}
    for l0, v in b.items():
        assert v == a[l0] / qy.theta


def test_expected_false_positives_example():
    assert corollary1_efp(2, 0.9, 28, 1000, 980) == pytest.approx(980 * 9.8e-4, rel=1e-12)


@pytest.mark.parametrize("L,tau,q", [(2, 0.5, 20), (4, 0.75, 30), (8, 0.625, 5), (10, 0.9, 50)])
def test_closed_form_dominates_minimized_bound(L, tau, q):
    # the closed form is one of the candidates the bound minimizes over
    c1 = corollary1_efp(L, tau, q, 1000, 980)
    assert efp_closed_form(L, tau, q, 1000, 980) >= c1 * (1 - 1e-12)


def test_invalid_queries():
    with pytest.raises(ValueError):
        BoundQuery(L=1, tau=0.5, theta=0.1)
    with pytest.raises(ValueError):
        fp_rate_bound(BoundQuery(L=4, tau=0.2, theta=0.3))
    with pytest.raises(ValueError):
        fn_rate_bound(BoundQuery(L=4, tau=0.4, theta=0.3))


# exhaustive enumeration over every l0 in 0..L, same arithmetic


def _enum(L, tau, theta, kind):
    best = None
    for l0 in range(0, L + 1):
        if kind in ("fp", "fpb"):
            lo = math.ceil(L * theta) + (1 if kind == "fpb" else 0)
            if not lo <= l0 <= math.ceil(L * tau):
                continue
            den = tau * L - l0 + 1
            num = L - l0 + 1
        else:
            hi = math.floor(L * theta) - (1 if kind == "fnb" else 0)
            if not math.floor(L * tau) <= l0 <= hi:
                continue
            den = l0 - tau * L + 1
            num = l0 + 1
        if den <= 0:
            continue
        v = math.exp(math.log(num / den) - L * kl_bernoulli(l0 / L, theta))
        if kind == "fpb":
            v = v / theta
        elif kind == "fnb":
            v = v / (1 - theta)
        if best is None or v < best[0]:
            best = (v, l0)
    return best


def test_bounds_match_enumeration():
    rng = np.random.default_rng(2024)
    checked = 0
    for _ in range(1000):
        L = int(rng.integers(2, 17))
        a, b = np.sort(rng.uniform(0.001, 0.999, 2))
        for tau, theta, pairs in ((b, a, (("fp", fp_rate_bound), ("fpb", fp_vs_base_bound))),
                                  (a, b, (("fn", fn_rate_bound), ("fnb", fn_vs_base_bound)))):
            qy = BoundQuery(L=L, tau=float(tau), theta=float(theta))
            for kind, fn in pairs:
                ref = _enum(L, float(tau), float(theta), kind)
                if ref is None:
                    with pytest.raises(ValueError):
                        fn(qy)
                    continue
                r = fn(qy)
                assert (r.value, r.l0) == ref
                checked += 1
    assert checked > 3000


@settings(max_examples=200, deadline=None)
@given(L=st.integers(2, 30), theta=st.floats(0.01, 0.5),
       t1=st.floats(0.0, 1.0), t2=st.floats(0.0, 1.0))
def test_fp_bound_nonincreasing_in_tau(L, theta, t1, t2):
    lo, hi = sorted((theta + (0.999 - theta) * t1, theta + (0.999 - theta) * t2))
    if not theta < lo < 1:
        return
    a = fp_rate_bound(BoundQuery(L=L, tau=lo, theta=theta)).value
    b = fp_rate_bound(BoundQuery(L=L, tau=hi, theta=theta)).value
    assert b <= a * (1 + 1e-12)


@settings(max_examples=200, deadline=None)
@given(L=st.integers(2, 30), tau=st.floats(0.3, 0.99), t1=st.floats(0.0, 1.0),
       t2=st.floats(0.0, 1.0))
def test_fp_bound_nondecreasing_in_theta(L, tau, t1, t2):
    lo, hi = sorted((0.001 + (tau - 0.002) * t1, 0.001 + (tau - 0.002) * t2))
    a = fp_rate_bound(BoundQuery(L=L, tau=tau, theta=lo)).value
    b = fp_rate_bound(BoundQuery(L=L, tau=tau, theta=hi)).value
    assert a <= b * (1 + 1e-12)


def test_tau_min_two_halves():
    assert tau_min(2, 31, 1000, 980) is not None
    assert tau_min(2, 32, 1000, 980) is None
    t = tau_min(2, 28, 1000, 980)
    assert corollary1_efp(2, t, 28, 1000, 980) <= 1.0
    assert corollary1_efp(2, t - bounds.TAU_STEP, 28, 1000, 980) > 1.0


@pytest.mark.parametrize("L", [2, 4, 8, 16])
@pytest.mark.parametrize("q", [1, 10, 28, 31, 60, 100])
def test_tau_min_bisection_matches_scan(L, q):
    assert tau_min(L, q, 1000, 980) == tau_min_scan(L, q, 1000, 980)


def test_tau_min_grid_alignment():
    t = tau_min(4, 20, 1000, 980)
    j = (t - 0.02) / bounds.TAU_STEP
    assert abs(j - round(j)) < 1e-6
