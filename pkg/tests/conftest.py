import random

import pytest

from ktconway.diagram import PDCode, components
from ktconway.families import braid_closure
from ktconway.poly import LaurentPoly

# Jones polynomial of K11n34 = C(2,-1), frozen from the published table
K11N34_JONES = LaurentPoly("q", {4: -1, 3: 2, 2: -2, 1: 2, -2: 1, -3: -2, -4: 2, -5: -2, -6: 1})

# right-handed trefoil, writhe +3
TREFOIL_PD = "PD[X(1,5,2,4),X(3,1,4,6),X(5,3,6,2)]"

# as printed in the CLI examples; its gluing gives a 3-component link, not a knot
MISPRINTED_TREFOIL_PD = "PD[X(1,4,2,3),X(3,6,4,5),X(5,2,6,1)]"


def random_braid_knot(rng: random.Random, strands: int = 3, length: int = 6) -> PDCode:
    """Closure of a random braid word whose closure is a knot."""
    for _ in range(1000):
        word = [rng.choice([1, -1]) * rng.randint(1, strands - 1) for _ in range(length)]
        if len({abs(g) for g in word}) < strands - 1:
            continue
        pd = braid_closure(word, strands)
        if len(components(pd)) == 1:
            return pd
    raise ValueError(f"no knot among random {strands}-strand words of length {length}")


@pytest.fixture
def rng():
    return random.Random(20240917)
