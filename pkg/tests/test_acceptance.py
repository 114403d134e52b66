"""Acceptance criteria, one test per criterion, each printing a pass line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
report.
"""

import math
import random
from pathlib import Path

import numpy as np
import pytest

from noonsim import (
    PulseSpec,
    Truncation,
    apply_operator,
    build_noon8,
    closed_form_unitary,
    expm_oracle,
    ladder,
    laguerre_assoc,
    noon_fidelity,
    parse,
    run_sequence,
    serialize,
    superposition_pulse_time,
)
from noonsim.fock import QUBIT_INDEX, HybridState
from noonsim.protocol import SidebandPulse, mode_amplitudes
from conftest import random_program

TRUNC = Truncation(12, 12, 4)
NOON8_PP = Path(__file__).resolve().parent.parent / "demos" / "noon8.pp"


def report(num: int, text: str):
    print(f"[PASS] criterion {num}: {text}")


def test_criterion_1_closed_form_matches_oracle():
    trunc = Truncation(16, 16, 4)
    d = trunc.dim_x
    a4 = np.linalg.matrix_power(ladder(d, "lower", "x").mat, 4)
    a_eg = np.zeros((2, 2), dtype=complex)
    a_eg[QUBIT_INDEX["e"], QUBIT_INDEX["g"]] = 1.0
    h = np.kron(a_eg, np.kron(a4, np.eye(d)))  # g = 1 four-phonon Hamiltonian
    h = h + h.conj().T
    keep = np.array(
        [x <= trunc.n_max_x - trunc.guard for _ in range(2) for x in range(d) for _ in range(d)]
    )
    worst = 0.0
    for t in (0.1, 0.7, 3.3):
        u_closed = closed_form_unitary(1.0, t, trunc, "x")
        u_oracle = expm_oracle(h, t)
        diff = np.abs(u_closed - u_oracle)[np.ix_(keep, keep)].max()
        worst = max(worst, diff)
        assert diff <= 1e-9
    report(1, f"closed form vs expm oracle, max deviation {worst:.2e} <= 1e-9")


def test_criterion_2_vacuum_four_phonon_transfer():
    steps = build_noon8(1.0, 1.0, 10)[:2]  # prepare |e,0,0> + x vacuum pulse
    result = run_sequence(steps, TRUNC)
    _, p_e = result.final_state.qubit_populations()
    pop = result.final_state.population("g", 4, 0)
    assert p_e <= 1e-12
    assert pop >= 1 - 1e-12
    report(2, f"vacuum pulse: P(e) = {p_e:.2e}, P(g,4,0) = {pop:.15f}")


def test_criterion_3_intermediate_fock_product():
    steps = build_noon8(1.0, 1.0, 10)[:4]  # through the second vacuum pulse
    result = run_sequence(steps, TRUNC)
    state = result.final_state
    sector = sum(state.population(q, 4, 4) for q in ("g", "e"))
    assert sector >= 1 - 1e-10
    report(3, f"population in the (4, 4) Fock sector = {sector:.12f}")


def test_criterion_4_end_to_end_noon():
    steps = build_noon8(1.0, 1.0, 1000)
    modes = {}
    for outcome in ("e", "g"):
        result = run_sequence(steps, TRUNC, outcome_override=outcome)
        nf = noon_fidelity(result.final_state, 8)
        prob = result.measurements[0].probability
        assert nf.best_fidelity >= 0.999
        assert prob == pytest.approx(0.5, abs=1e-3)
        modes[outcome] = mode_amplitudes(result.final_state)
    cross = abs(np.vdot(modes["e"], modes["g"])) ** 2
    assert cross <= 1e-6
    report(4, f"both outcomes: fidelity >= 0.999, P = 0.5, cross fidelity {cross:.2e}")


def test_criterion_5_incommensurability_gap():
    _, infid_10 = superposition_pulse_time(1.0, 10)
    _, infid_1000 = superposition_pulse_time(1.0, 1000)
    assert infid_1000 <= infid_10
    f_10 = noon_fidelity(
        run_sequence(build_noon8(1.0, 1.0, 10), TRUNC, outcome_override="g").final_state, 8
    ).best_fidelity
    f_1000 = noon_fidelity(
        run_sequence(build_noon8(1.0, 1.0, 1000), TRUNC, outcome_override="g").final_state, 8
    ).best_fidelity
    assert f_10 < f_1000
    report(
        5,
        f"predicted infidelity {infid_10:.2e} (M=10) -> {infid_1000:.2e} (M=1000); "
        f"protocol fidelity {f_10:.6f} < {f_1000:.9f}",
    )


def test_criterion_6_conservation_law():
    rng = np.random.default_rng(2718)
    worst = 0.0
    for axis in ("x", "y"):
        n_of = np.arange(13)
        for _ in range(50):
            amp = rng.normal(size=(2, 13, 13)) + 1j * rng.normal(size=(2, 13, 13))
            amp /= np.linalg.norm(amp)
            state = HybridState(amp, TRUNC)
            u = closed_form_unitary(
                rng.uniform(0.1, 2.0), rng.uniform(0.0, 4.0), TRUNC, axis
            )
            out = apply_operator(u, state)

            def charge(s):
                p = np.abs(s.amp) ** 2
                weights = n_of[None, :, None] if axis == "x" else n_of[None, None, :]
                return float(np.sum(p * weights) + 4.0 * np.sum(p[QUBIT_INDEX["e"]]))

            drift = abs(charge(out) - charge(state))
            worst = max(worst, drift)
            assert drift <= 1e-12
    report(6, f"n_axis + 4 P(e) conserved, worst drift {worst:.2e} over 100 pulses")


def test_criterion_7_laguerre_identities():
    for x in (0.0, 0.01, 0.04, 1.0, 5.0):
        for k in range(9):
            for n in range(31):
                lhs = (n + 1) * laguerre_assoc(n + 1, k, x)
                low = laguerre_assoc(n - 1, k, x) if n >= 1 else 0.0
                rhs = (2 * n + k + 1 - x) * laguerre_assoc(n, k, x) - (n + k) * low
                assert abs(lhs - rhs) <= 1e-9 * max(1.0, abs(lhs))
    for n in range(21):
        for k in range(21 - n):
            assert laguerre_assoc(n, k, 0.0) == math.comb(n + k, k)
    report(7, "three-term recurrence (n<=30, k<=8) and L_n^(k)(0) binomial identity")


def test_criterion_8_lamb_dicke_consistency():
    eta = 0.05
    closed_steps = build_noon8(1.0, 1.0, 1000)
    full_steps = []
    for step in closed_steps:
        if isinstance(step, SidebandPulse):
            s = step.spec
            full_steps.append(
                SidebandPulse(
                    PulseSpec(s.axis, 4, eta, 24.0 / eta**4, s.duration, "full")
                )
            )
        else:
            full_steps.append(step)
    for outcome in ("e", "g"):
        f_closed = noon_fidelity(
            run_sequence(closed_steps, TRUNC, outcome_override=outcome).final_state, 8
        ).best_fidelity
        f_full = noon_fidelity(
            run_sequence(full_steps, TRUNC, outcome_override=outcome).final_state, 8
        ).best_fidelity
        assert abs(f_full - f_closed) <= 5 * eta**2
    report(8, f"full-Hamiltonian protocol at eta = {eta} matches closed form within 5 eta^2")


def test_criterion_9_parser_round_trip():
    rng = random.Random(1234)
    for _ in range(100):
        program = random_program(rng)
        assert parse(serialize(program)) == program
    shipped = parse(NOON8_PP.read_text())
    assert shipped.steps == tuple(build_noon8(1.0, 1.0, 1000))
    report(9, "100 generated programs round-trip; noon8.pp equals build_noon8 output")
