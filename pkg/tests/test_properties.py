"""Randomized property suites over generated instances.

Counts are chosen so the suites together exercise well over 1000
instances while staying fast; every check is exact.
"""

import random
from fractions import Fraction as F

from nilcalc.ideals import (adjoint_ideal, contains, minimalize,
                            multiplier_ideal, shift_by_axis)
from nilcalc.newton import build, classify, dominates
from nilcalc.parsing import format_ideal, parse_ideal


def random_ideal(rng, n=None, max_exp=4, max_gens=4):
    n = n or rng.randint(1, 3)
    gens = [tuple(rng.randint(0, max_exp) for _ in range(n))
            for _ in range(rng.randint(1, max_gens))]
    return minimalize(gens, n)


def is_antichain(I):
    gens = I.generators
    return all(not dominates(a, b)
               for a in gens for b in gens if a is not b)


def subset(I, J):
    """Upward-closed containment: every generator of I is in J."""
    return all(contains(J, g) for g in I.generators)


def test_antichain_and_upward_closedness():
    rng = random.Random(101)
    for _ in range(250):
        I = random_ideal(rng)
        c = F(rng.randint(1, 5), rng.randint(3, 4))
        J = multiplier_ideal(I, c)
        assert is_antichain(J)
        for _ in range(4):
            beta = tuple(rng.randint(0, 6) for _ in range(I.dimension))
            if contains(J, beta):
                for i in range(I.dimension):
                    up = tuple(b + (1 if j == i else 0)
                               for j, b in enumerate(beta))
                    assert contains(J, up)


def test_nesting_in_c():
    rng = random.Random(102)
    for _ in range(150):
        I = random_ideal(rng)
        c1 = F(rng.randint(1, 4), rng.randint(3, 4))
        c2 = c1 + F(rng.randint(1, 2), rng.randint(2, 4))
        assert subset(multiplier_ideal(I, c2), multiplier_ideal(I, c1))


def test_adjoint_sandwich():
    rng = random.Random(103)
    done = 0
    while done < 150:
        n = rng.randint(2, 3)
        I = random_ideal(rng, n=n)
        p = rng.randrange(n)
        if not any(g[p] == 0 for g in I.generators):
            continue
        done += 1
        c = F(rng.randint(1, 4), rng.randint(1, 3))
        J = multiplier_ideal(I, c)
        adj = adjoint_ideal(I, c, p)
        assert is_antichain(adj)
        assert subset(shift_by_axis(J, p), adj)
        assert subset(adj, J)


def test_classification_scaling_law():
    rng = random.Random(104)
    for _ in range(250):
        n = rng.randint(1, 3)
        P = build([tuple(F(rng.randint(0, 5)) for _ in range(n))
                   for _ in range(rng.randint(1, 4))])
        x = tuple(F(rng.randint(0, 6), rng.choice([1, 2, 3]))
                  for _ in range(n))
        c = F(rng.randint(1, 5), rng.randint(1, 4))
        assert classify(P, x, c).verdict == \
            classify(P, tuple(v / c for v in x), 1).verdict


def test_parse_print_round_trip():
    rng = random.Random(105)
    names_pool = ["x", "y", "z", "w"]
    for _ in range(300):
        n = rng.randint(1, 4)
        I = random_ideal(rng, n=n, max_exp=9, max_gens=6)
        names = names_pool[:n]
        assert parse_ideal(format_ideal(I, names), names)[0] == I
