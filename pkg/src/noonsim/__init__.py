"""Desk-scale simulator for generating N=8 NOON states of the vibrational
motion of a single trapped ion.

The package is organized in four layers:

- :mod:`noonsim.fock` -- truncated two-mode Fock space: states, ladder and
  number-shift operators, associated Laguerre polynomials, tensor embedding.
- :mod:`noonsim.dynamics` -- fourth-sideband Hamiltonians and propagators:
  the closed-form four-phonon unitary, an eigendecomposition matrix
  exponential used as an independent oracle, and carrier rotations.
- :mod:`noonsim.protocol` -- pulse-sequence execution, pulse-time solving
  (exact for the vacuum pulse, grid-searched for the superposition pulse),
  measurement post-selection and NOON fidelity scoring.
- :mod:`noonsim.program` / :mod:`noonsim.cli` -- the pulse-program text
  format, parser/serializer, and the ``run`` / ``scan`` command line.
"""

from .fock import (
    Truncation,
    HybridState,
    ModeOperator,
    LambDickeInput,
    QUBIT_INDEX,
    QUBIT_LABELS,
    laguerre_assoc,
    ladder,
    number_op,
    sg_lower,
    lamb_dicke,
    embed,
    basis_state,
    inner,
    norm,
    fidelity,
)
from .dynamics import (
    PulseSpec,
    RotationSpec,
    PhysicsError,
    coupling_g,
    sideband_hamiltonian,
    closed_form_unitary,
    expm_oracle,
    carrier_rotation,
    apply_pulse,
    apply_operator,
)
from .protocol import (
    Prepare,
    SidebandPulse,
    Rotate,
    MeasureQubit,
    VacuumPi,
    SuperpositionPi,
    MeasurementRecord,
    RunResult,
    NoonFidelity,
    vacuum_pulse_time,
    superposition_pulse_time,
    run_sequence,
    build_noon8,
    noon_target,
    noon_fidelity,
)
from .program import Program, ParseError, parse, serialize

__all__ = [
    "Truncation", "HybridState", "ModeOperator", "LambDickeInput",
    "QUBIT_INDEX", "QUBIT_LABELS",
    "laguerre_assoc", "ladder", "number_op", "sg_lower", "lamb_dicke",
    "embed", "basis_state", "inner", "norm", "fidelity",
    "PulseSpec", "RotationSpec", "PhysicsError",
    "coupling_g", "sideband_hamiltonian", "closed_form_unitary",
    "expm_oracle", "carrier_rotation", "apply_pulse", "apply_operator",
    "Prepare", "SidebandPulse", "Rotate", "MeasureQubit",
    "VacuumPi", "SuperpositionPi", "MeasurementRecord", "RunResult",
    "NoonFidelity", "vacuum_pulse_time", "superposition_pulse_time",
    "run_sequence", "build_noon8", "noon_target", "noon_fidelity",
    "Program", "ParseError", "parse", "serialize",
]

__version__ = "0.1.0"
