import math
import random

import pytest

import encoder_harmonics as eh


def reference_spec() -> eh.EncoderSpec:
    """The p=2 numerical example: disturbances of order 3 and 9."""
    return eh.EncoderSpec(
        main=eh.ideal_main(2),
        disturbances=(
            eh.HarmonicComponent(3, 0.05, math.pi / 8, 0.02, math.pi / 7),
            eh.HarmonicComponent(9, 0.075, 0.0, 0.09, math.pi / 4),
        ),
        normalized=True,
    )


def random_normalized_spec(
    rng: random.Random,
    max_p: int = 6,
    max_order: int = 20,
    l1_cap: float = 0.5,
    max_components: int = 3,
) -> eh.EncoderSpec:
    """Random normalized spec with l1 amplitude sum below ``l1_cap``."""
    p = rng.randint(1, max_p)
    m = rng.randint(1, max_components)
    orders = rng.sample(range(1, max_order + 1), m)
    budget = rng.uniform(0.05, l1_cap)
    raw = [rng.uniform(0.1, 1.0) for _ in range(2 * m)]
    scale = budget / sum(raw)
    comps = []
    for i, n in enumerate(orders):
        comps.append(
            eh.HarmonicComponent(
                n,
                raw[2 * i] * scale,
                rng.uniform(-math.pi, math.pi),
                raw[2 * i + 1] * scale,
                rng.uniform(-math.pi, math.pi),
            )
        )
    return eh.EncoderSpec(eh.ideal_main(p), tuple(comps), normalized=True)


@pytest.fixture
def reference():
    return reference_spec()
