"""Seeded random inputs shared by the engine tests and the acceptance gate."""

import random

from conormal import Ideal, make_ring

R3, (X, Y, Z) = make_ring(["x", "y", "z"])


def random_ideal(seed, ngens=None, ring=R3):
    rng = random.Random(seed)
    ngens = ngens or rng.randint(2, 3)
    gens = [ring.random_element(rng, terms=rng.randint(2, 3), degree=2, height=4) for _ in range(ngens)]
    return Ideal([g for g in gens if g] or [ring.gen("x")], ring)


def ideal_corpus(count=100, seed=2024):
    return [random_ideal(seed + k) for k in range(count)]


def random_element(seed, ring=R3):
    rng = random.Random(seed)
    f = ring.random_element(rng, terms=2, degree=1, height=3)
    return f if not f.is_constant() else ring.gen("x") + 1
