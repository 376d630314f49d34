"""Random embedded graphs for property testing and cross-checks."""

from __future__ import annotations

import random

from .rotation_system import RotationSystem, orbits, validate

__all__ = ["random_rotation_system", "random_degree_sequence"]


def random_degree_sequence(rng: random.Random, max_edges: int = 30, min_deg: int = 3, max_deg: int = 6) -> list[int]:
    """Degrees in [min_deg, max_deg] with an even sum of at most 2*max_edges."""
    while True:
        n_vert = rng.randint(1, max(1, 2 * max_edges // min_deg))
        degs = [rng.randint(min_deg, max_deg) for _ in range(n_vert)]
        if sum(degs) % 2:
            # bump one vertex to fix parity if it stays in range
            i = rng.randrange(n_vert)
            degs[i] += 1 if degs[i] < max_deg else -1
        if sum(degs) <= 2 * max_edges and sum(degs) % 2 == 0:
            return degs


def random_rotation_system(
    rng: random.Random,
    max_edges: int = 30,
    min_deg: int = 3,
    max_deg: int = 6,
    twist_prob: float = 0.25,
    max_tries: int = 1000,
) -> RotationSystem:
    """Connected rotation system with random dart pairing, rotations and twists.

    Darts are numbered consecutively per vertex, so each vertex's cyclic
    order is its dart order. Disconnected samples are rejected.
    """
    for _ in range(max_tries):
        degs = random_degree_sequence(rng, max_edges, min_deg, max_deg)
        m = sum(degs)
        nu = [0] * m
        start = 0
        for d in degs:
            for i in range(d):
                nu[start + i] = start + (i + 1) % d
            start += d
        darts = list(range(m))
        rng.shuffle(darts)
        eps = [0] * m
        for a, b in zip(darts[::2], darts[1::2]):
            eps[a], eps[b] = b, a
        if len(orbits((nu, eps), m)[0]) != 1:
            continue
        nu_inv = [0] * m
        for h, t in enumerate(nu):
            nu_inv[t] = h
        twisted = [False] * m
        for a, b in zip(darts[::2], darts[1::2]):
            twisted[a] = twisted[b] = rng.random() < twist_prob
        lam = [0] * (2 * m)
        rho = [0] * (2 * m)
        tau = [0] * (2 * m)
        for h in range(m):
            p, q = 2 * h, 2 * h + 1
            if twisted[h]:
                lam[p], lam[q] = 2 * eps[h], 2 * eps[h] + 1
            else:
                lam[p], lam[q] = 2 * eps[h] + 1, 2 * eps[h]
            rho[p], rho[q] = 2 * nu[h] + 1, 2 * nu_inv[h]
            tau[p], tau[q] = q, p
        r = RotationSystem(lam, rho, tau)
        if validate(r).ok:
            return r
    raise RuntimeError("could not sample a connected rotation system")
