import itertools

import pytest

from sftbounds import Alphabet, SftModel, builtin_model


@pytest.fixture(scope="session")
def hard_square2():
    return builtin_model("hard-square", 2)


@pytest.fixture(scope="session")
def hard_square3():
    return builtin_model("hard-square", 3)


@pytest.fixture(scope="session")
def hard_square1():
    return builtin_model("hard-square", 1)


@pytest.fixture(scope="session")
def coloring3_d2():
    return builtin_model("coloring", 2, 3)


def full_shift(q: int, d: int) -> SftModel:
    alphabet = Alphabet(tuple(str(i) for i in range(q)))
    return SftModel(d, alphabet, (frozenset(),) * d)


def forbid_axis_model(d: int = 2, q: int = 2) -> SftModel:
    """Every pair forbidden along axis 1: C_1 = q, C_n = 0 for n >= 2."""
    alphabet = Alphabet(tuple(str(i) for i in range(q)))
    all_pairs = frozenset(itertools.product(range(q), range(q)))
    return SftModel(d, alphabet, (all_pairs,) + (frozenset(),) * (d - 1))


def single_symbol_forced(d: int = 2) -> SftModel:
    """Symbol 1 forbidden next to anything: C_1 = 2, C_n = 1 for n >= 2."""
    alphabet = Alphabet(("0", "1"))
    pairs = frozenset({(0, 1), (1, 0), (1, 1)})
    return SftModel(d, alphabet, (pairs,) * d)


def brute_force_count(model: SftModel, n: int) -> int:
    """Test-local ground truth: scan every assignment with explicit loops.

    Deliberately independent of the package counters (pure itertools and
    direct pair checks on decoded coordinates).
    """
    d = model.dimension
    q = model.num_symbols
    cells = n ** d
    coords = list(itertools.product(range(n), repeat=d))
    index = {c: i for i, c in enumerate(coords)}
    adj = []
    for c in coords:
        for k in range(d):
            if c[k] + 1 < n:
                nb = list(c)
                nb[k] += 1
                adj.append((index[c], index[tuple(nb)], k))
    count = 0
    for assignment in itertools.product(range(q), repeat=cells):
        ok = True
        for i, j, k in adj:
            if (assignment[i], assignment[j]) in model.forbidden[k]:
                ok = False
                break
        if ok:
            count += 1
    return count
