import math

import numpy as np
import pytest

from becgates.params import (
    PhysicalParams,
    ValidationError,
    derive_params,
    params_from_dict,
    params_to_dict,
)


def make(**kw) -> PhysicalParams:
    base = dict(
        omega_a=1.2,
        omega_b=0.7,
        gamma_a=0.01,
        gamma_b=0.02,
        gamma_ab=0.015,
        g=1.0,
        delta=0.5,
        n_atoms=10,
    )
    base.update(kw)
    return PhysicalParams(**base)


def random_params(rng, n_atoms=None) -> PhysicalParams:
    return make(
        omega_a=rng.uniform(-3, 3),
        omega_b=rng.uniform(-3, 3),
        gamma_a=rng.uniform(-0.1, 0.1),
        gamma_b=rng.uniform(-0.1, 0.1),
        gamma_ab=rng.uniform(-0.1, 0.1),
        g=rng.uniform(0.1, 3.0),
        delta=rng.uniform(-5, 5),
        n_atoms=int(n_atoms if n_atoms is not None else rng.integers(1, 200)),
    )


def test_symmetric_collisions():
    p = make(gamma_a=0.02, gamma_b=0.02, gamma_ab=0.02)
    dp = derive_params(p)
    assert dp.lambda_nl == 0.0
    assert dp.gamma_fs == p.omega_a - p.omega_b


def test_matched_detuning_gives_right_angle():
    # gamma_fs == delta and g > 0 forces xi = pi/2 and varpi = 2g
    p = make(omega_a=0.5, omega_b=0.0, gamma_a=0.0, gamma_b=0.0, gamma_ab=0.0, g=1.3, delta=0.5)
    dp = derive_params(p)
    assert dp.gamma_fs == p.delta
    assert dp.xi == pytest.approx(math.pi / 2, abs=1e-15)
    assert dp.varpi == pytest.approx(2 * p.g, rel=1e-15)


def test_hadamard_setting_angle():
    # gamma_fs - delta = -2g gives xi = 3*pi/4, varpi = 2*sqrt(2)*g
    g = 0.7
    p = make(omega_a=-2 * g, omega_b=0.0, gamma_a=0.0, gamma_b=0.0, gamma_ab=0.0, g=g, delta=0.0)
    dp = derive_params(p)
    assert dp.xi == pytest.approx(3 * math.pi / 4, abs=1e-14)
    assert dp.varpi == pytest.approx(2 * math.sqrt(2) * g, rel=1e-14)


def test_eta_and_omegas():
    p = make()
    dp = derive_params(p)
    n = p.n_atoms
    assert dp.lambda_nl == 0.25 * (p.gamma_a + p.gamma_b - 2 * p.gamma_ab)
    assert dp.gamma_fs == (p.omega_a - p.omega_b) + (p.gamma_a - p.gamma_b) * (n - 1)
    assert dp.eta == pytest.approx(
        0.5 * ((p.omega_a + p.omega_b) + (p.gamma_a + p.gamma_b) * (n - 1)) * n, rel=1e-15
    )
    assert dp.omega0 == pytest.approx(0.5 * ((p.omega_a - p.gamma_a) + (p.omega_b - p.gamma_b)))
    assert dp.omega1 == pytest.approx(0.5 * ((p.omega_a - p.gamma_a) - (p.omega_b - p.gamma_b) - p.delta))
    assert dp.omega2 == pytest.approx(0.5 * (p.gamma_a - p.gamma_b))


@pytest.mark.parametrize("field", ["omega_a", "gamma_ab", "g", "delta"])
def test_rejects_non_finite(field):
    with pytest.raises(ValidationError, match=field):
        make(**{field: math.nan})
    with pytest.raises(ValidationError, match=field):
        make(**{field: math.inf})


def test_rejects_bad_scalars():
    with pytest.raises(ValidationError, match="'g'"):
        make(g=-0.5)
    with pytest.raises(ValidationError, match="n_atoms"):
        make(n_atoms=0)
    with pytest.raises(ValidationError, match="n_atoms"):
        make(n_atoms=2.5)


def test_branch_contract_and_varpi_identity():
    rng = np.random.default_rng(7)
    for _ in range(100):
        p = random_params(rng)
        dp = derive_params(p)
        mismatch = dp.gamma_fs - p.delta
        assert 0.0 < dp.xi < math.pi
        assert dp.sin_xi > 0.0
        # varpi is the hypotenuse of (gamma_fs - delta, 2g) on this branch:
        # the transverse combination (gamma_fs - delta) sin(xi) - 2g cos(xi)
        # vanishes, so varpi^2 = (gamma_fs - delta)^2 + 4g^2 - transverse^2
        assert dp.varpi == pytest.approx(math.hypot(mismatch, 2 * p.g), rel=1e-13)
        transverse = mismatch * dp.sin_xi - 2 * p.g * dp.cos_xi
        assert abs(transverse) < 1e-12 * dp.varpi
        assert dp.varpi**2 == pytest.approx(
            mismatch**2 + 4 * p.g**2 - transverse**2, rel=1e-12
        )
        assert dp.varpi == pytest.approx(
            mismatch * math.cos(dp.xi) + 2 * p.g * math.sin(dp.xi), rel=1e-12, abs=1e-12
        )
        if mismatch != 0.0:
            assert math.tan(dp.xi) * mismatch == pytest.approx(2 * p.g, rel=1e-10)


def test_frequency_scaling():
    rng = np.random.default_rng(11)
    for _ in range(25):
        p = random_params(rng)
        s = rng.uniform(0.1, 50.0)
        ps = PhysicalParams(
            omega_a=s * p.omega_a,
            omega_b=s * p.omega_b,
            gamma_a=s * p.gamma_a,
            gamma_b=s * p.gamma_b,
            gamma_ab=s * p.gamma_ab,
            g=s * p.g,
            delta=s * p.delta,
            n_atoms=p.n_atoms,
        )
        dp, dps = derive_params(p), derive_params(ps)
        assert dps.lambda_nl == pytest.approx(s * dp.lambda_nl, rel=1e-12, abs=1e-15)
        assert dps.gamma_fs == pytest.approx(s * dp.gamma_fs, rel=1e-12, abs=1e-15)
        assert dps.varpi == pytest.approx(s * dp.varpi, rel=1e-12)
        assert dps.eta == pytest.approx(s * dp.eta, rel=1e-12, abs=1e-12)
        assert dps.xi == pytest.approx(dp.xi, abs=1e-13)


def test_exact_trig_companions():
    p = make(g=0.0, omega_a=0.0, omega_b=1.0, gamma_a=0.0, gamma_b=0.0, gamma_ab=0.0, delta=0.0)
    dp = derive_params(p)  # gamma_fs - delta = -1 < 0
    assert dp.xi == math.pi
    assert dp.sin_xi == 0.0 and dp.cos_xi == -1.0
    p2 = make(g=0.0, omega_a=0.0, omega_b=0.0, gamma_a=0.0, gamma_b=0.0, gamma_ab=0.0, delta=0.0)
    dp2 = derive_params(p2)  # degenerate: no coupling, no mismatch
    assert dp2.sin_xi == 0.0 and dp2.cos_xi == 1.0


def test_dict_round_trip_and_schema():
    p = make()
    d = params_to_dict(p)
    assert set(d) == {
        "omega_a", "omega_b", "gamma_a", "gamma_b", "gamma_ab", "g", "delta", "n_atoms",
    }
    assert params_from_dict(d) == p
    bad = dict(d)
    del bad["delta"]
    with pytest.raises(ValidationError, match="'delta'"):
        params_from_dict(bad)
    bad = dict(d, extra_field=1.0)
    with pytest.raises(ValidationError, match="'extra_field'"):
        params_from_dict(bad)
    bad = dict(d, n_atoms=3.5)
    with pytest.raises(ValidationError, match="'n_atoms'"):
        params_from_dict(bad)
