import pytest

from bisimgames.fixtures import builtin_lts
from bisimgames.lts import make_lts


@pytest.fixture(scope="session")
def choice_lts():
    """a.b + a.c versus a.(b + c): strongly distinguishable in two rounds."""
    return builtin_lts("choice")


@pytest.fixture(scope="session")
def silent_lts():
    """The silent-step system: branching-distinguishable in two rounds."""
    return builtin_lts("silent")


@pytest.fixture(scope="session")
def deadlock_lts():
    """Two deadlocked states d and e; every pair is bisimilar."""
    return make_lts([], names=("d", "e"), initial=0)


@pytest.fixture(scope="session")
def tau_cycle_lts():
    """A two-state silent cycle."""
    return make_lts([(0, "tau", 1), (1, "tau", 0)], names=("a0", "a1"),
                    tau="tau", initial=0)


def names(lts, items):
    """Map state indices to display names, for readable assertions."""
    return sorted(
        tuple(lts.state_name(i) for i in it) if isinstance(it, tuple)
        else lts.state_name(it)
        for it in items
    )
