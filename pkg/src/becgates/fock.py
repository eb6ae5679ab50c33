"""Two-mode Fock space: states, pseudo-spin operators, Bloch readout.

Basis convention: index k of an (N+1)-component amplitude vector labels the
Fock state with N-k atoms in mode a and k atoms in mode b.  The logical
|0> (all atoms in a) sits at k = 0 and |1> (all atoms in b) at k = N, so
that <Jz>/N = cos(theta) for an atomic coherent state at polar angle theta.

The pseudo-spin operators follow the factor-free Schwinger convention
Jx = a'b + ab', Jy = -i(a'b - ab'), Jz = n_a - n_b, which obey
[Jx, Jy] = 2i Jz (Pauli matrices at N = 1).
"""

from __future__ import annotations

import cmath
import io
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

__all__ = [
    "AcsParams",
    "StateVector",
    "BlochVector",
    "acs_state",
    "acs_from_spinor",
    "acs_params_from_state",
    "pseudo_spin_matrices",
    "bloch_vector",
    "state_to_csv",
    "state_from_csv",
]


@dataclass(frozen=True)
class AcsParams:
    """Bloch angles of an atomic coherent state: theta in [0, pi], phi in [0, 2*pi)."""

    theta: float
    phi: float

    def __post_init__(self) -> None:
        if not (0.0 <= self.theta <= math.pi):
            raise ValueError(f"theta must lie in [0, pi], got {self.theta!r}")
        if not (0.0 <= self.phi < 2.0 * math.pi):
            raise ValueError(f"phi must lie in [0, 2*pi), got {self.phi!r}")


@dataclass
class StateVector:
    """Normalized amplitudes over the (N+1)-dimensional two-mode Fock basis."""

    n_atoms: int
    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        self.amplitudes = np.asarray(self.amplitudes, dtype=complex)
        if self.amplitudes.shape != (self.n_atoms + 1,):
            raise ValueError(
                f"amplitudes must have length n_atoms + 1 = {self.n_atoms + 1}, "
                f"got shape {self.amplitudes.shape}"
            )

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))


@dataclass(frozen=True)
class BlochVector:
    x: float
    y: float
    z: float

    def length(self) -> float:
        return math.sqrt(self.x**2 + self.y**2 + self.z**2)


def _check_n_atoms(n_atoms: int) -> None:
    if not isinstance(n_atoms, int) or isinstance(n_atoms, bool) or n_atoms < 1:
        raise ValueError(f"n_atoms must be an integer >= 1, got {n_atoms!r}")


def acs_state(a: AcsParams, n_atoms: int) -> StateVector:
    """Atomic coherent state |theta, phi> for N bosons.

    Amplitude at index k is sqrt(C(N,k)) * cos(theta/2)^(N-k)
    * (sin(theta/2) e^{i phi})^k.  Binomial weights are assembled in log
    space so the construction stays finite up to N in the thousands.
    """
    _check_n_atoms(n_atoms)
    n = n_atoms
    ch = math.cos(a.theta / 2.0)
    sh = math.sin(a.theta / 2.0)
    amps = np.zeros(n + 1, dtype=complex)
    if sh == 0.0:
        amps[0] = 1.0
    elif ch == 0.0 or a.theta == math.pi:
        amps[n] = cmath.exp(1j * a.phi * n)
    else:
        k = np.arange(n + 1)
        ln_binom = gammaln(n + 1) - gammaln(k + 1) - gammaln(n - k + 1)
        log_mag = 0.5 * ln_binom + (n - k) * math.log(ch) + k * math.log(sh)
        amps = np.exp(log_mag) * np.exp(1j * a.phi * k)
    amps /= np.linalg.norm(amps)
    return StateVector(n_atoms=n, amplitudes=amps)


def acs_from_spinor(alpha: complex, beta: complex, n_atoms: int) -> StateVector:
    """ACS built from an (alpha, beta) qubit spinor, normalized first.

    The global spinor phase is dropped (it would only contribute an overall
    phase factor per atom), so the returned state corresponds to
    theta = 2*atan2(|beta|, |alpha|), phi = arg(beta) - arg(alpha).
    """
    norm = math.hypot(abs(alpha), abs(beta))
    if norm == 0.0:
        raise ValueError("spinor must be nonzero")
    alpha, beta = alpha / norm, beta / norm
    theta = 2.0 * math.atan2(abs(beta), abs(alpha))
    if abs(alpha) > 0.0 and abs(beta) > 0.0:
        phi = (cmath.phase(beta) - cmath.phase(alpha)) % (2.0 * math.pi)
    elif abs(beta) > 0.0:
        phi = cmath.phase(beta) % (2.0 * math.pi)
    else:
        phi = 0.0
    theta = min(max(theta, 0.0), math.pi)
    return acs_state(AcsParams(theta=theta, phi=phi), n_atoms)


def acs_params_from_state(s: StateVector) -> AcsParams:
    """Bloch angles read back from a state's Bloch vector (exact for an ACS)."""
    b = bloch_vector(s)
    r = b.length()
    if r == 0.0:
        raise ValueError("state has zero Bloch vector; no ACS angles exist")
    theta = math.acos(min(max(b.z / r, -1.0), 1.0))
    phi = math.atan2(b.y, b.x) % (2.0 * math.pi)
    return AcsParams(theta=theta, phi=phi)


def pseudo_spin_matrices(n_atoms: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Dense (N+1)-dimensional matrices (Jx, Jy, Jz).

    Jz is diagonal with entry N - 2k; Jx and Jy are tridiagonal with bosonic
    elements sqrt((N-k)(k+1)) coupling k <-> k+1.
    """
    _check_n_atoms(n_atoms)
    n = n_atoms
    k = np.arange(n)
    off = np.sqrt((n - k) * (k + 1.0))
    lower = np.diag(off, -1)  # a b' block: k -> k+1
    upper = np.diag(off, 1)  # a'b block: k+1 -> k
    jx = (upper + lower).astype(complex)
    jy = -1j * (upper - lower)
    jz = np.diag(n - 2.0 * np.arange(n + 1)).astype(complex)
    return jx, jy, jz


def bloch_vector(s: StateVector) -> BlochVector:
    """Normalized pseudo-spin mean values (<Jx>/N, <Jy>/N, <Jz>/N)."""
    n = s.n_atoms
    amps = s.amplitudes
    k = np.arange(n)
    off = np.sqrt((n - k) * (k + 1.0))
    raising = complex(np.sum(np.conj(amps[:-1]) * off * amps[1:]))  # <a'b>
    jx = 2.0 * raising.real
    jy = 2.0 * raising.imag
    jz = float(np.sum((n - 2.0 * np.arange(n + 1)) * np.abs(amps) ** 2))
    return BlochVector(x=jx / n, y=jy / n, z=jz / n)


def state_to_csv(s: StateVector) -> str:
    """Serialize a state to CSV with columns k, re, im (17 significant digits)."""
    lines = ["k,re,im"]
    for k, amp in enumerate(s.amplitudes):
        lines.append(f"{k},{amp.real:.17g},{amp.imag:.17g}")
    return "\n".join(lines) + "\n"


def state_from_csv(text: str) -> StateVector:
    buf = io.StringIO(text)
    header = buf.readline().strip()
    if header != "k,re,im":
        raise ValueError(f"expected header 'k,re,im', got {header!r}")
    rows = []
    for line in buf:
        line = line.strip()
        if not line:
            continue
        k_str, re_str, im_str = line.split(",")
        rows.append((int(k_str), float(re_str), float(im_str)))
    rows.sort()
    if [k for k, _, _ in rows] != list(range(len(rows))):
        raise ValueError("CSV rows must cover k = 0..N exactly once")
    amps = np.array([complex(re, im) for _, re, im in rows])
    return StateVector(n_atoms=len(rows) - 1, amplitudes=amps)
