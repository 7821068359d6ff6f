import numpy as np

from milnorkit.curves import star_curve
from milnorkit.errors import InvalidInputError
from milnorkit.fibration import critical_values

MIN_CLEARANCE = 0.1


def random_admissible_curve(params, rng, m=128):
    """Random star-shaped curve at least MIN_CLEARANCE from every critical value."""
    crit = critical_values(params)
    while True:
        center = complex(*rng.uniform(-0.6, 0.6, 2))
        base = rng.uniform(0.4, 2.2)
        harm = rng.uniform(-0.12, 0.12, 4) * base
        try:
            c = star_curve(np.r_[base, harm], center=center, phase=rng.uniform(0, 2 * np.pi), m=m)
        except InvalidInputError:
            continue
        if min(c.distance_to(z) for z in crit) >= MIN_CLEARANCE:
            return c
