"""Exact counting and streaming of locally admissible patterns.

The depth-first engine assigns cells in linear-index order, so each new
cell is constrained only by its already-placed predecessor neighbors (at
most one per axis); forbidden branches are pruned immediately.  Counts are
plain Python integers, hence exact at any size.

``oracle_count_naive`` is an independent ground truth for tests: it checks
every assignment of the full cube with the full-scan admissibility test,
vectorized with numpy but with no pruning and no shared logic with the
optimized counters.
"""

from __future__ import annotations

from typing import Iterator

import numpy as np

from .models import SftModel, mask_values
from .patterns import CubePattern, SurfaceState, surface_indices

DEFAULT_NODE_BUDGET = 50_000_000
DEFAULT_ORACLE_CAP = 1 << 24
_ORACLE_CHUNK = 1 << 18


class BudgetExceededError(RuntimeError):
    """The instance is too large for the requested exact computation."""


def _cell_checks(model: SftModel, n: int):
    """Per cell: (offset, masks) for each already-assigned neighbor axis."""
    d = model.dimension
    masks = model.allowed_masks
    checks: list[tuple[tuple[int, tuple[int, ...]], ...]] = []
    for idx in range(n ** d):
        cs = []
        rem = idx
        for k in range(d - 1, -1, -1):
            rem, x = divmod(rem, n)
            if x > 0:
                cs.append((n ** (d - 1 - k), masks[k]))
        checks.append(tuple(cs))
    return checks


def _admissible_assignments(
    model: SftModel, n: int, node_budget: int | None
) -> Iterator[list[int]]:
    """Yield every admissible cube assignment, reusing one value buffer.

    Order is lexicographic by values.  Each accepted cell assignment costs
    one unit of node budget; exceeding it raises BudgetExceededError.
    """
    cells = n ** model.dimension
    checks = _cell_checks(model, n)
    vfm = model.values_for_mask
    full = model.full_mask
    budget = DEFAULT_NODE_BUDGET if node_budget is None else node_budget

    buf = [0] * cells
    cand: list[tuple[int, ...]] = [()] * cells
    pos = [0] * cells
    cand[0] = vfm[full] if vfm is not None else mask_values(full)
    depth = 0
    while depth >= 0:
        options = cand[depth]
        p = pos[depth]
        if p == len(options):
            depth -= 1
            continue
        pos[depth] = p + 1
        buf[depth] = options[p]
        budget -= 1
        if budget < 0:
            raise BudgetExceededError(
                f"node budget exhausted enumerating side {n} in dimension "
                f"{model.dimension}"
            )
        nxt = depth + 1
        if nxt == cells:
            yield buf
            continue
        m = full
        for off, masks in checks[nxt]:
            m &= masks[buf[nxt - off]]
        cand[nxt] = vfm[m] if vfm is not None else mask_values(m)
        pos[nxt] = 0
        depth = nxt


def count_patterns_dfs(model: SftModel, n: int, node_budget: int | None = None) -> int:
    """Exact number of locally admissible patterns on the side-n cube."""
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    total = 0
    for _ in _admissible_assignments(model, n, node_budget):
        total += 1
    return total


def enumerate_patterns(
    model: SftModel, n: int, node_budget: int | None = None
) -> Iterator[CubePattern]:
    """All admissible patterns exactly once, lexicographic by values."""
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    d = model.dimension
    for buf in _admissible_assignments(model, n, node_budget):
        yield CubePattern(n, d, tuple(buf))


def count_by_state(
    model: SftModel, n: int, node_budget: int | None = None
) -> dict[SurfaceState, int]:
    """Exact pattern count per boundary state; values sum to the total."""
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    surf = surface_indices(n, model.dimension)
    raw: dict[tuple[int, ...], int] = {}
    for buf in _admissible_assignments(model, n, node_budget):
        key = tuple(buf[i] for i in surf)
        raw[key] = raw.get(key, 0) + 1
    d = model.dimension
    return {SurfaceState(n, d, key): c for key, c in sorted(raw.items())}


def oracle_count_naive(
    model: SftModel, n: int, cap: int = DEFAULT_ORACLE_CAP
) -> int:
    """Ground-truth count by testing every assignment of the cube.

    Intended for tests only; refuses instances with more than ``cap``
    total assignments.
    """
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    d = model.dimension
    q = model.num_symbols
    cells = n ** d
    total = q ** cells
    if total > cap:
        raise BudgetExceededError(
            f"{q}^{cells} assignments exceed the oracle cap of {cap}"
        )

    pairs = []
    for k in range(d):
        step = n ** (d - 1 - k)
        period = step * n
        for base in range(0, cells, period):
            for i in range(base, base + period - step):
                pairs.append((i, i + step, k))
    # flat q*q lookup per axis: row-major (a, b) -> forbidden?
    forb_flat = [
        np.array(
            [not model.allowed[k][a][b] for a in range(q) for b in range(q)],
            dtype=bool,
        )
        for k in range(d)
    ]
    # total <= cap <= 2^24, so 32-bit index arithmetic is exact
    powers = q ** np.arange(cells, dtype=np.int32)

    count = 0
    for start in range(0, total, _ORACLE_CHUNK):
        idx = np.arange(start, min(start + _ORACLE_CHUNK, total), dtype=np.int32)
        digits = (idx[:, None] // powers) % np.int32(q)
        bad = np.zeros(len(idx), dtype=bool)
        for i, j, k in pairs:
            bad |= forb_flat[k][digits[:, i] * np.int32(q) + digits[:, j]]
        count += int((~bad).sum())
    return count
