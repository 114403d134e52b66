"""Sideband Hamiltonians and propagators.

The k-th sideband couples |g, n+k> to |e, n> with matrix element

    Omega * exp(-eta^2/2) * eta^k * L_n^(k)(eta^2) * sqrt(n! / (n+k)!)

For k = 4 and eta << 1 this reduces to g * sqrt((n+4)(n+3)(n+2)(n+1)) with
g = Omega * eta^4 / 24, and the propagator has a closed 2x2 block form in
the electronic basis (cosines on the diagonal, four-phonon shifts off it).
Both routes are implemented: the closed form, and exponentiation of the
full Hamiltonian via Hermitian eigendecomposition, each usable as an
independent check of the other.

Phase convention: the sideband coupling is taken real and positive.  The
i^k phase of the plane-wave expansion is a global gauge on each pulse and
is dropped; fidelities are insensitive to it.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import TYPE_CHECKING, Union

import numpy as np

from .fock import (
    QUBIT_INDEX,
    HybridState,
    Truncation,
    laguerre_assoc,
)

if TYPE_CHECKING:
    from .protocol import VacuumPi, SuperpositionPi

    Duration = Union[float, "VacuumPi", "SuperpositionPi"]


class PhysicsError(Exception):
    """Truncation, guard-band, or measurement-branch violation."""


@dataclass(frozen=True)
class PulseSpec:
    """One sideband pulse on one vibrational mode.

    The trap frequencies and detuning enter only through sideband
    selection (delta = k * nu of the driven axis); they are not simulated.
    ``duration`` is seconds, or a symbolic auto marker resolved by the
    protocol engine.  ``form`` selects the closed-form propagator
    ("closed", k = 4 only) or exponentiation of the full sideband
    Hamiltonian ("full").
    """

    axis: str
    k: int
    eta: float
    omega: float
    duration: "Duration"
    form: str = "closed"

    def __post_init__(self):
        if self.axis not in ("x", "y"):
            raise ValueError(f"pulse axis must be 'x' or 'y', got {self.axis!r}")
        if self.k < 1:
            raise ValueError("sideband order k must be >= 1")
        if self.eta < 0:
            raise ValueError("eta must be >= 0")
        if self.omega < 0:
            raise ValueError("omega must be >= 0")
        if self.form not in ("closed", "full"):
            raise ValueError(f"form must be 'closed' or 'full', got {self.form!r}")
        if self.form == "closed" and self.k != 4:
            raise ValueError("closed form is only available for k = 4")
        if self.eta >= 1:
            warnings.warn(
                f"eta = {self.eta} is outside the Lamb-Dicke regime (eta < 1)",
                stacklevel=2,
            )


@dataclass(frozen=True)
class RotationSpec:
    """Carrier rotation R(theta, phi); angles in radians, unrestricted."""

    theta: float
    phi: float


def coupling_g(spec: PulseSpec) -> float:
    """Effective four-phonon coupling g = Omega * eta^4 / 4!."""
    if spec.k != 4:
        raise PhysicsError(f"coupling_g is defined for k = 4 pulses, got k = {spec.k}")
    return spec.omega * spec.eta**4 / 24.0


def _embed_qubit_axis(block: np.ndarray, axis: str, trunc: Truncation) -> np.ndarray:
    """Lift an operator on (qubit, driven mode) to the full space.

    ``block`` is indexed (q * d + n) with d the driven-mode dimension.
    """
    d = trunc.dim_of(axis)
    b4 = block.reshape(2, d, 2, d)
    if axis == "x":
        iy = np.eye(trunc.dim_y, dtype=complex)
        full = np.einsum("qapb,yw->qaypbw", b4, iy)
    else:
        ix = np.eye(trunc.dim_x, dtype=complex)
        full = np.einsum("qapb,xw->qxapwb", b4, ix)
    return full.reshape(trunc.dim, trunc.dim)


def sideband_element(n: int, k: int, eta: float, omega: float) -> float:
    """<e, n| H |g, n+k> of the k-th sideband Hamiltonian."""
    lg_fact = math.lgamma(n + 1) - math.lgamma(n + k + 1)
    return (
        omega
        * math.exp(-eta * eta / 2.0)
        * eta**k
        * laguerre_assoc(n, k, eta * eta)
        * math.exp(0.5 * lg_fact)
    )


def sideband_hamiltonian(spec: PulseSpec, trunc: Truncation) -> np.ndarray:
    """Full-space Hermitian sideband Hamiltonian for one pulse.

    Couples |e, n> <-> |g, n+k> on the driven axis; all other elements
    vanish.
    """
    if trunc.guard < spec.k:
        raise PhysicsError(
            f"guard band {trunc.guard} too small for a k = {spec.k} pulse"
        )
    d = trunc.dim_of(spec.axis)
    if d <= spec.k:
        raise PhysicsError("truncation too small for the requested sideband order")
    g_idx, e_idx = QUBIT_INDEX["g"], QUBIT_INDEX["e"]
    h = np.zeros((2 * d, 2 * d), dtype=complex)
    for n in range(d - spec.k):
        elem = sideband_element(n, spec.k, spec.eta, spec.omega)
        h[e_idx * d + n, g_idx * d + n + spec.k] = elem
        h[g_idx * d + n + spec.k, e_idx * d + n] = elem
    return _embed_qubit_axis(h, spec.axis, trunc)


def _four_phonon_freq(n: int) -> float:
    return math.sqrt((n + 4.0) * (n + 3.0) * (n + 2.0) * (n + 1.0))


def closed_form_unitary(g: float, t: float, trunc: Truncation, axis: str) -> np.ndarray:
    """Closed-form propagator of the four-phonon sideband Hamiltonian.

    Acts as, with f(n) = sqrt((n+4)(n+3)(n+2)(n+1)):

        |e, n>       ->  cos(f(n) g t) |e, n> - i sin(f(n) g t) |g, n+4>
        |g, n>, n>=4 ->  cos(f(n-4) g t) |g, n> - i sin(f(n-4) g t) |e, n-4>
        |g, n < 4>   ->  fixed

    States |e, n> whose four-phonon partner falls above the cutoff are left
    fixed, which keeps the matrix exactly unitary; such population is what
    the guard band is for.
    """
    if axis not in ("x", "y"):
        raise ValueError(f"axis must be 'x' or 'y', got {axis!r}")
    if trunc.guard < 4:
        raise PhysicsError("closed-form four-phonon unitary requires guard >= 4")
    d = trunc.dim_of(axis)
    g_idx, e_idx = QUBIT_INDEX["g"], QUBIT_INDEX["e"]
    u = np.eye(2 * d, dtype=complex)
    for n in range(d - 4):
        phase = _four_phonon_freq(n) * g * t
        c, s = math.cos(phase), math.sin(phase)
        ie, ig = e_idx * d + n, g_idx * d + n + 4
        u[ie, ie] = c
        u[ig, ig] = c
        u[ig, ie] = -1j * s
        u[ie, ig] = -1j * s
    return _embed_qubit_axis(u, axis, trunc)


def expm_oracle(h: np.ndarray, t: float) -> np.ndarray:
    """e^{-i H t} via eigendecomposition of the Hermitian matrix H.

    Independent of the closed-form route; unitary to machine precision.
    """
    if np.max(np.abs(h - h.conj().T)) > 1e-12:
        raise ValueError("expm_oracle requires a Hermitian matrix")
    w, v = np.linalg.eigh(h)
    return (v * np.exp(-1j * w * t)) @ v.conj().T


def carrier_rotation(spec: RotationSpec, trunc: Truncation) -> np.ndarray:
    """On-resonance qubit rotation, identity on both modes.

    R(theta, phi) = exp(-i (theta/2) (cos phi sigma_x + sin phi sigma_y)),
    in the (g, e) ordering of the qubit index.  R(pi/2, -pi/2) maps
    |e> -> (|e> + |g>)/sqrt(2) and |g> -> (-|e> + |g>)/sqrt(2).
    """
    c = math.cos(spec.theta / 2.0)
    s = math.sin(spec.theta / 2.0)
    # -i (cos(phi) sigma_x + sin(phi) sigma_y), basis (|g>, |e>)
    off_ge = -1j * (math.cos(spec.phi) - 1j * math.sin(spec.phi))
    off_eg = -1j * (math.cos(spec.phi) + 1j * math.sin(spec.phi))
    r2 = np.array([[c, s * off_ge], [s * off_eg, c]], dtype=complex)
    iq = np.eye(trunc.dim_x * trunc.dim_y, dtype=complex)
    return np.kron(r2, iq)


def apply_operator(u: np.ndarray, state: HybridState, normalized: bool = True) -> HybridState:
    if u.shape != (state.trunc.dim, state.trunc.dim):
        raise ValueError("operator dimension does not match state truncation")
    amp = (u @ state.ravel()).reshape(state.amp.shape)
    return HybridState(amp, state.trunc, normalized=normalized and state.normalized)


def guard_band_population(state: HybridState, axis: str) -> float:
    """Probability mass in the top ``guard`` Fock levels of one axis."""
    g = state.trunc.guard
    if g == 0:
        return 0.0
    p = np.abs(state.amp) ** 2
    if axis == "x":
        return float(np.sum(p[:, state.trunc.dim_x - g :, :]))
    return float(np.sum(p[:, :, state.trunc.dim_y - g :]))


def apply_pulse(state: HybridState, spec: PulseSpec) -> tuple[HybridState, float]:
    """Propagate one sideband pulse; returns (new state, guard-band leakage).

    ``spec.duration`` must already be numeric; symbolic auto durations are
    resolved by the protocol engine.
    """
    t = spec.duration
    if not isinstance(t, (int, float)):
        raise ValueError(
            "apply_pulse needs a numeric duration; resolve auto markers first"
        )
    if spec.form == "closed":
        u = closed_form_unitary(coupling_g(spec), float(t), state.trunc, spec.axis)
    else:
        h = sideband_hamiltonian(spec, state.trunc)
        u = expm_oracle(h, float(t))
    out = apply_operator(u, state)
    return out, guard_band_population(out, spec.axis)
