"""Evolution engines for the coupled two-mode condensate.

Three independent routes compute the same dynamics:

* :func:`qubit_propagator` -- the analytic 2x2 rotation-product propagator
  acting on the (alpha, beta) spinor of an atomic coherent state.
* :func:`full_propagator_analytic` -- the analytic (N+1)-dimensional
  propagator U(t) V exp(-i H_V t) V', exact when the nonlinear parameter
  vanishes.
* :func:`evolve_oracle` -- exact eigendecomposition of the time-independent
  rotating-frame Hamiltonian, valid for any nonlinearity.

:func:`evolve_rk4` integrates the original explicitly time-dependent
Hamiltonian and serves as an independent cross-check of the oracle; the
three production engines share no evolution code path.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .fock import StateVector, pseudo_spin_matrices
from .params import DerivedParams, PhysicalParams, derive_params

__all__ = [
    "QubitPropagator",
    "qubit_propagator",
    "full_propagator_analytic",
    "evolve_oracle",
    "evolve_oracle_at_times",
    "evolve_rk4",
    "rotating_frame_hamiltonian",
    "spectral_radius_bound",
]


@dataclass(frozen=True)
class QubitPropagator:
    """2x2 propagator matrix plus the parameters it was built from."""

    matrix: np.ndarray
    t: float
    delta: float
    xi: float
    varpi: float
    eta: float


def qubit_propagator(dp: DerivedParams, delta: float, t: float) -> QubitPropagator:
    """Analytic 2x2 propagator for evolution time t.

    Equivalent to the rotation product
    e^{-i eta t} Rz(delta*t) Ry(-xi) Rz(varpi*t) Ry(xi)
    with Rz(a) = diag(e^{-ia/2}, e^{ia/2}) and Ry the real rotation matrix.
    Half-angle factors are taken from the exact (sin_xi, cos_xi) pair so that
    the off-diagonal elements vanish identically when g = 0.
    """
    if t < 0:
        raise ValueError(f"evolution time must be >= 0, got {t!r}")
    cos2 = 0.5 * (1.0 + dp.cos_xi)  # cos^2(xi/2)
    sin2 = 0.5 * (1.0 - dp.cos_xi)  # sin^2(xi/2)
    w = 0.5 * dp.varpi * t
    d = 0.5 * delta * t
    e_md = np.exp(-1j * d)
    e_mw = np.exp(-1j * w)
    e_2w = np.exp(2j * w)
    p11 = e_md * e_mw * (cos2 + e_2w * sin2)
    p12 = 1j * dp.sin_xi * math.sin(w) * e_md
    p21 = 1j * dp.sin_xi * math.sin(w) * np.conj(e_md)
    p22 = np.conj(e_md) * e_mw * (sin2 + e_2w * cos2)
    matrix = np.exp(-1j * dp.eta * t) * np.array([[p11, p12], [p21, p22]])
    return QubitPropagator(matrix=matrix, t=t, delta=delta, xi=dp.xi, varpi=dp.varpi, eta=dp.eta)


def full_propagator_analytic(p: PhysicalParams, t: float, *, lambda_atol: float = 1e-12) -> np.ndarray:
    """Analytic propagator on the full (N+1)-dimensional Fock space.

    Valid only when the nonlinear parameter vanishes: the two-mode dynamics
    is then an exact mode rotation, and the propagator factors as
    U(t) V exp(-i H_V t) V' with U(t) a diagonal frame phase, V the
    exponential of the anti-Hermitian mixing generator and H_V diagonal.

    Raises ValueError if |lambda_nl| > lambda_atol (precondition violated)
    or t < 0.
    """
    if t < 0:
        raise ValueError(f"evolution time must be >= 0, got {t!r}")
    dp = derive_params(p)
    if abs(dp.lambda_nl) > lambda_atol:
        raise ValueError(
            "full_propagator_analytic requires lambda_nl = 0 "
            f"(got lambda_nl = {dp.lambda_nl!r}); use evolve_oracle for nonzero nonlinearity"
        )
    n = p.n_atoms
    dn = n - 2.0 * np.arange(n + 1)  # eigenvalues of n_a - n_b

    # V = exp(i (xi/2) Jy), built by eigendecomposition of the Hermitian Jy
    _, jy, _ = pseudo_spin_matrices(n)
    evals, evecs = np.linalg.eigh(jy)
    v = (evecs * np.exp(0.5j * dp.xi * evals)) @ evecs.conj().T

    hv_diag = (
        dp.omega0 * n
        + p.gamma_ab * n**2
        + ((dp.omega1 + dp.omega2 * n) * dp.cos_xi + p.g * dp.sin_xi) * dn
    )
    u_diag = np.exp(-0.5j * p.delta * t * dn)
    core = v @ (np.exp(-1j * hv_diag * t)[:, None] * v.conj().T)
    return u_diag[:, None] * core


def rotating_frame_hamiltonian(p: PhysicalParams) -> np.ndarray:
    """Time-independent rotating-frame Hamiltonian as a dense Hermitian matrix.

    H_U = (omega_a - gamma_a) n_a + (omega_b - gamma_b) n_b + gamma_a n_a^2
        + gamma_b n_b^2 + 2 gamma_ab n_a n_b - g (a'b + ab')
        - (delta/2)(n_a - n_b)
    """
    n = p.n_atoms
    k = np.arange(n + 1)
    na = n - k
    nb = k
    diag = (
        (p.omega_a - p.gamma_a) * na
        + (p.omega_b - p.gamma_b) * nb
        + p.gamma_a * na**2
        + p.gamma_b * nb**2
        + 2.0 * p.gamma_ab * na * nb
        - 0.5 * p.delta * (na - nb)
    )
    h = np.diag(diag.astype(complex))
    kk = np.arange(n)
    off = -p.g * np.sqrt((n - kk) * (kk + 1.0))
    h[kk, kk + 1] = off
    h[kk + 1, kk] = off
    return h


def spectral_radius_bound(p: PhysicalParams) -> float:
    """Cheap upper estimate of the Hamiltonian spectral radius.

    Used to validate RK4 step sizes: steps should satisfy
    dt * spectral_radius_bound(p) < 0.1.
    """
    n = p.n_atoms
    k = np.arange(n + 1)
    na = n - k
    nb = k
    diag = (
        (p.omega_a - p.gamma_a) * na
        + (p.omega_b - p.gamma_b) * nb
        + p.gamma_a * na**2
        + p.gamma_b * nb**2
        + 2.0 * p.gamma_ab * na * nb
    )
    kk = np.arange(n)
    off = np.sqrt((n - kk) * (kk + 1.0))
    return float(np.max(np.abs(diag))) + 2.0 * p.g * float(np.max(off, initial=0.0))


def _check_state(p: PhysicalParams, s0: StateVector) -> None:
    if s0.n_atoms != p.n_atoms:
        raise ValueError(
            f"state has n_atoms = {s0.n_atoms} but parameters have n_atoms = {p.n_atoms}"
        )
    norm = s0.norm()
    if abs(norm - 1.0) > 1e-8:
        raise ValueError(f"input state must be normalized, got norm = {norm!r}")


def evolve_oracle(p: PhysicalParams, s0: StateVector, t: float) -> StateVector:
    """Exact reference evolution, valid for any nonlinearity.

    Returns U(t) exp(-i H_U t) s0 where H_U is the rotating-frame Hamiltonian
    and U(t) = exp(-i delta t (n_a - n_b)/2) restores the lab frame.  The
    matrix exponential is computed by eigendecomposition of the Hermitian H_U.
    """
    return evolve_oracle_at_times(p, s0, [t])[0]


def evolve_oracle_at_times(p: PhysicalParams, s0: StateVector, times) -> list[StateVector]:
    """Oracle evolution sampled at several times with one eigendecomposition."""
    _check_state(p, s0)
    h = rotating_frame_hamiltonian(p)
    evals, evecs = np.linalg.eigh(h)
    coeffs = evecs.conj().T @ s0.amplitudes
    n = p.n_atoms
    dn = n - 2.0 * np.arange(n + 1)
    out = []
    for t in times:
        if t < 0:
            raise ValueError(f"evolution time must be >= 0, got {t!r}")
        psi = evecs @ (np.exp(-1j * evals * t) * coeffs)
        psi = np.exp(-0.5j * p.delta * t * dn) * psi
        out.append(StateVector(n_atoms=n, amplitudes=psi))
    return out


def evolve_rk4(p: PhysicalParams, s0: StateVector, t: float, dt: float) -> StateVector:
    """Classic RK4 integration of the original time-dependent Hamiltonian.

    The coupling term carries the explicit e^{-i delta t} phase, so this
    path never forms the rotating-frame Hamiltonian used by the oracle.  No
    renormalization is applied; norm drift is a diagnostic of step quality.
    The step is rejected up front if dt times a spectral-radius estimate of
    the Hamiltonian is >= 0.1.
    """
    _check_state(p, s0)
    if dt <= 0:
        raise ValueError(f"dt must be > 0, got {dt!r}")
    if t < 0:
        raise ValueError(f"evolution time must be >= 0, got {t!r}")

    n = p.n_atoms
    k = np.arange(n + 1)
    na = n - k
    nb = k
    diag = (
        (p.omega_a - p.gamma_a) * na
        + (p.omega_b - p.gamma_b) * nb
        + p.gamma_a * na**2
        + p.gamma_b * nb**2
        + 2.0 * p.gamma_ab * na * nb
    ).astype(float)
    kk = np.arange(n)
    off = np.sqrt((n - kk) * (kk + 1.0))

    if dt * spectral_radius_bound(p) >= 0.1:
        raise ValueError(
            f"time step too large: dt * spectral-radius estimate = "
            f"{dt * spectral_radius_bound(p):.3g} >= 0.1"
        )

    def deriv(time: float, psi: np.ndarray) -> np.ndarray:
        phase = np.exp(-1j * p.delta * time)
        hpsi = diag * psi
        # -g (e^{-i delta t} a'b + e^{+i delta t} a b') psi
        hpsi[:-1] -= p.g * phase * off * psi[1:]
        hpsi[1:] -= p.g * np.conj(phase) * off * psi[:-1]
        return -1j * hpsi

    if t == 0:
        return StateVector(n_atoms=n, amplitudes=s0.amplitudes.copy())

    n_steps = max(1, math.ceil(t / dt))
    h = t / n_steps
    psi = s0.amplitudes.astype(complex).copy()
    time = 0.0
    for _ in range(n_steps):
        k1 = deriv(time, psi)
        k2 = deriv(time + 0.5 * h, psi + 0.5 * h * k1)
        k3 = deriv(time + 0.5 * h, psi + 0.5 * h * k2)
        k4 = deriv(time + h, psi + h * k3)
        psi = psi + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        time += h
    return StateVector(n_atoms=n, amplitudes=psi)
