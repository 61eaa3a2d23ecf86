"""Named families and a seed-deterministic random complex generator."""
from __future__ import annotations

import random

from .complex import (
    SimplicialComplex,
    boundary_simplex,
    delta_VS,
    mask,
    range_mask,
    skeleton_of_simplex,
)

RP2_6 = [(1, 2, 3), (1, 3, 4), (1, 4, 5), (1, 5, 6), (1, 2, 6), (2, 3, 5), (2, 4, 5), (2, 4, 6), (3, 4, 6), (3, 5, 6)]
EXAMPLE6 = [(1, 2, 3), (3, 4), (4, 5, 6)]


class UnknownFamily(ValueError):
    pass


def _one_based(facets) -> SimplicialComplex:
    return SimplicialComplex.from_facets([[v - 1 for v in f] for f in facets])


def _boundary(m: int | None = None, n: int | None = None) -> SimplicialComplex:
    # m counts vertices, n is the dimension of the simplex
    if m is None:
        if n is None:
            raise ValueError("boundary needs m (vertices) or n (dimension)")
        m = n + 1
    return boundary_simplex(range_mask(m))


def _delta_vs(m: int, S) -> SimplicialComplex:
    return delta_VS(range_mask(m), mask(v - 1 for v in S))


def _points(m: int) -> SimplicialComplex:
    return SimplicialComplex.from_masks([1 << v for v in range(m)])


FAMILIES = {
    "skeleton": lambda n, k: skeleton_of_simplex(n, k),
    "boundary": _boundary,
    "delta_VS": _delta_vs,
    "example6": lambda: _one_based(EXAMPLE6),
    "disjoint-points": _points,
    "rp2-6": lambda: _one_based(RP2_6),
}


def generate_family(name: str, **params) -> SimplicialComplex:
    try:
        make = FAMILIES[name]
    except KeyError:
        raise UnknownFamily(f"unknown family {name!r}; known: {', '.join(sorted(FAMILIES))}") from None
    return make(**params)


def generate_random(m: int, density: float = 0.5, seed: int = 0) -> SimplicialComplex:
    """Random complex on exactly the vertices 1..m.

    Draws a handful of random faces whose sizes grow with ``density`` and adds
    any vertex left uncovered as an isolated point.
    """
    if m < 1:
        raise ValueError("m must be positive")
    if not 0 <= density <= 1:
        raise ValueError("density must lie in [0, 1]")
    rng = random.Random(seed)
    facets = []
    for _ in range(rng.randint(1, 2 * m)):
        k = 1 + sum(rng.random() < density for _ in range(m - 1))
        facets.append(mask(rng.sample(range(m), k)))
    covered = 0
    for f in facets:
        covered |= f
    facets += [1 << v for v in range(m) if not covered >> v & 1]
    return SimplicialComplex.from_masks(facets, range_mask(m))


def random_instances(count: int, m_range=(2, 7), seed: int = 0):
    """(seed, K) pairs with m and density drawn from a master generator."""
    master = random.Random(seed)
    for _ in range(count):
        m = master.randint(*m_range)
        density = master.choice((0.3, 0.45, 0.6))
        s = master.randrange(2**32)
        yield s, generate_random(m, density, s)
