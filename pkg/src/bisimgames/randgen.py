"""Seeded random transition systems for fuzzing the module invariants."""

from __future__ import annotations

import random
import string

from .lts import Lts, make_lts

TAU = "tau"


def random_lts(rng: random.Random | int, max_states: int = 7, max_labels: int = 3,
               tau_prob: float = 0.0, density: float = 0.25) -> Lts:
    """One random system: uniformly many states and labels, a uniform
    transition count up to ``states^2 * labels * density``, and each
    transition silent with probability ``tau_prob``."""
    if isinstance(rng, int):
        rng = random.Random(rng)
    n = rng.randint(1, max_states)
    n_labels = rng.randint(1, max_labels)
    letters = string.ascii_lowercase[:n_labels]
    max_m = max(1, round(n * n * n_labels * density))
    m = rng.randint(0, max_m)
    transitions = set()
    tau_used = False
    for _ in range(m):
        if tau_prob > 0 and rng.random() < tau_prob:
            label = TAU
            tau_used = True
        else:
            label = rng.choice(letters)
        transitions.add((rng.randrange(n), label, rng.randrange(n)))
    return make_lts(transitions, n_states=n, tau=TAU if tau_used else None, initial=0)


def corpus(seed: int, count: int, **kwargs) -> list[Lts]:
    """A reproducible list of random systems derived from one seed."""
    rng = random.Random(seed)
    return [random_lts(rng, **kwargs) for _ in range(count)]
