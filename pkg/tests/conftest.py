import random

from noonsim import (
    MeasureQubit,
    Prepare,
    Program,
    PulseSpec,
    Rotate,
    RotationSpec,
    SidebandPulse,
    SuperpositionPi,
    Truncation,
    VacuumPi,
)


def random_program(rng: random.Random) -> Program:
    """One random valid pulse program; used for round-trip testing."""
    guard = rng.randint(4, 6)
    trunc = Truncation(
        n_max_x=rng.randint(8 + guard, 20),
        n_max_y=rng.randint(8 + guard, 20),
        guard=guard,
    )
    steps = [Prepare(rng.choice("ge"), rng.randint(0, 4), rng.randint(0, 4))]
    for _ in range(rng.randint(0, 8)):
        kind = rng.choice(["pulse", "rotate", "measure"])
        if kind == "pulse":
            form = rng.choice(["closed", "full"])
            k = 4 if form == "closed" else rng.randint(1, guard)
            duration = rng.choice(
                [
                    rng.uniform(0.0, 5.0),
                    VacuumPi() if k == 4 else rng.uniform(0.0, 5.0),
                    SuperpositionPi(rng.randint(1, 2000)) if k == 4 else 0.0,
                ]
            )
            steps.append(
                SidebandPulse(
                    PulseSpec(
                        axis=rng.choice("xy"),
                        k=k,
                        eta=rng.uniform(0.01, 0.9),
                        omega=rng.uniform(0.1, 2e4),
                        duration=duration,
                        form=form,
                    )
                )
            )
        elif kind == "rotate":
            steps.append(
                Rotate(RotationSpec(rng.uniform(-7, 7), rng.uniform(-7, 7)))
            )
        else:
            steps.append(MeasureQubit(rng.choice("ge")))
    return Program(trunc, tuple(steps))
