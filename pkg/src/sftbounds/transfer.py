"""Exact slice-transfer counting for d >= 2.

A side-n cube is a stack of n slices along the last axis.  A slice is a
(d-1)-cube of side n that is internally admissible for axes 1..d-1; two
consecutive slices must be componentwise allowed along axis d.  The cube
count is the number of length-n walks in that transition relation.

The relation is never materialized as an edge list (it is far too dense at
interesting sizes).  Instead each vector-through-relation product is
applied one slice cell at a time: live states are packed base-q integers
holding the undecided suffix of the previous slice and the decided prefix
of the next one, with exact integer weights.  ``TransitionStructure``
still builds explicit adjacency lists for small instances, where tests
cross-check the factored product against plain walk counting.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterator

from .models import SftModel, drop_last_axis, mask_values
from .enumeration import BudgetExceededError, count_patterns_dfs, enumerate_patterns
from .patterns import decode

DEFAULT_STATE_BUDGET = 5_000_000
DEFAULT_EDGE_BUDGET = 2_000_000


@dataclass(frozen=True)
class SliceStateSpace:
    """All admissible slices for one (model, n), in lexicographic order."""

    model: SftModel
    n: int
    slices: tuple[tuple[int, ...], ...]

    @cached_property
    def index(self) -> dict[tuple[int, ...], int]:
        return {s: i for i, s in enumerate(self.slices)}

    def __len__(self) -> int:
        return len(self.slices)


@dataclass(frozen=True)
class TransitionStructure:
    """Adjacency lists of the slice transition relation along the last axis."""

    space: SliceStateSpace
    neighbors: tuple[tuple[int, ...], ...]


def build_slice_space(
    model: SftModel,
    n: int,
    node_budget: int | None = None,
    state_budget: int = DEFAULT_STATE_BUDGET,
) -> SliceStateSpace:
    """Enumerate the admissible (d-1)-cube slices of side n."""
    if model.dimension < 2:
        raise ValueError("slice decomposition needs dimension >= 2")
    sub = drop_last_axis(model)
    slices = []
    for p in enumerate_patterns(sub, n, node_budget):
        slices.append(p.values)
        if len(slices) > state_budget:
            raise BudgetExceededError(
                f"more than {state_budget} slices at side {n}"
            )
    return SliceStateSpace(model, n, tuple(slices))


def build_transitions(
    space: SliceStateSpace, edge_budget: int = DEFAULT_EDGE_BUDGET
) -> TransitionStructure:
    """Explicit adjacency lists; checks the relation is symmetric.

    Quadratic in the slice count, so only for small instances; the
    counting path never calls this.
    """
    model = space.model
    allowed_last = model.allowed[model.dimension - 1]
    slices = space.slices
    m = len(slices)
    if m * m > 4 * edge_budget:
        raise BudgetExceededError(
            f"{m}^2 slice pairs exceed the transition budget"
        )
    neighbors = []
    edges = 0
    for s1 in slices:
        row = []
        for j, s2 in enumerate(slices):
            if all(allowed_last[a][b] for a, b in zip(s1, s2)):
                row.append(j)
                edges += 1
                if edges > edge_budget:
                    raise BudgetExceededError(
                        f"more than {edge_budget} transitions at side {space.n}"
                    )
        neighbors.append(tuple(row))
    for i, row in enumerate(neighbors):
        for j in row:
            if i not in neighbors[j]:
                raise AssertionError(
                    f"transition relation is not symmetric at pair ({i}, {j})"
                )
    return TransitionStructure(space, tuple(neighbors))


_PHASE_CACHE: dict[tuple[SftModel, int], list] = {}


def _phase_checks(model: SftModel, n: int):
    """Per slice cell: (divisor, masks) for each within-slice predecessor.

    The previous-slice constraint (oldest packed digit) is implicit and
    applied unconditionally by the advance loop.
    """
    key = (model, n)
    cached = _PHASE_CACHE.get(key)
    if cached is not None:
        return cached
    d = model.dimension
    q = model.num_symbols
    w = n ** (d - 1)
    masks = model.allowed_masks
    plans = []
    for p in range(w):
        y = decode(p, n, d - 1)
        cs = []
        for k in range(d - 1):
            if y[k] > 0:
                s_k = n ** (d - 2 - k)
                cs.append((q ** (w - s_k), masks[k]))
        plans.append(tuple(cs))
    _PHASE_CACHE[key] = plans
    return plans


def _pack(values: tuple[int, ...], q: int) -> int:
    code = 0
    for p, v in enumerate(values):
        code += v * q ** p
    return code


def _advance(model: SftModel, n: int, dist: dict[int, int], state_budget: int):
    """One vector-through-relation product, factored over slice cells."""
    d = model.dimension
    q = model.num_symbols
    w = n ** (d - 1)
    top = q ** (w - 1)
    vfm = model.values_for_mask
    last_masks = model.allowed_masks[d - 1]
    for checks in _phase_checks(model, n):
        new: dict[int, int] = {}
        get = new.get
        if not checks:
            for s, c in dist.items():
                m = last_masks[s % q]
                if m:
                    base = s // q
                    for v in vfm[m] if vfm is not None else mask_values(m):
                        k = base + v * top
                        new[k] = get(k, 0) + c
        elif len(checks) == 1:
            div, wmasks = checks[0]
            for s, c in dist.items():
                m = last_masks[s % q] & wmasks[(s // div) % q]
                if m:
                    base = s // q
                    for v in vfm[m] if vfm is not None else mask_values(m):
                        k = base + v * top
                        new[k] = get(k, 0) + c
        else:
            for s, c in dist.items():
                m = last_masks[s % q]
                for div, wmasks in checks:
                    m &= wmasks[(s // div) % q]
                if m:
                    base = s // q
                    for v in vfm[m] if vfm is not None else mask_values(m):
                        k = base + v * top
                        new[k] = get(k, 0) + c
        if len(new) > state_budget:
            raise BudgetExceededError(
                f"more than {state_budget} live transfer states at side {n}"
            )
        dist = new
    return dist


def count_via_transfer(
    model: SftModel,
    n: int,
    node_budget: int | None = None,
    state_budget: int = DEFAULT_STATE_BUDGET,
) -> int:
    """Exact cube count via the slice decomposition (DFS when d = 1)."""
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    if model.dimension == 1:
        return count_patterns_dfs(model, n, node_budget)
    space = build_slice_space(model, n, node_budget, state_budget)
    q = model.num_symbols
    dist = {_pack(s, q): 1 for s in space.slices}
    for _ in range(n - 1):
        dist = _advance(model, n, dist, state_budget)
    return sum(dist.values())


def upper_bound_stream(
    model: SftModel,
    n_max: int,
    backend: str = "auto",
    node_budget: int | None = None,
    state_budget: int = DEFAULT_STATE_BUDGET,
) -> Iterator[tuple[int, int]]:
    """Exact (n, C_n) for n = 1..n_max, feeding the per-n upper bounds.

    Slices of a side-n cube have side n, so each n builds its own slice
    space; results are cached across calls instead.
    """
    if n_max < 1:
        raise ValueError(f"need n_max >= 1, got {n_max}")
    for n in range(1, n_max + 1):
        yield n, count_patterns(model, n, backend, node_budget, state_budget)


_COUNT_CACHE: dict[tuple[SftModel, int], int] = {}

BACKENDS = ("auto", "dfs", "transfer")


def count_patterns(
    model: SftModel,
    n: int,
    backend: str = "auto",
    node_budget: int | None = None,
    state_budget: int = DEFAULT_STATE_BUDGET,
) -> int:
    """Backend dispatcher with a shared exact-count cache.

    auto = transfer for d >= 2, DFS for d = 1.  Forced backends always
    recompute (tests rely on that); their results still land in the cache.
    """
    if backend not in BACKENDS:
        raise ValueError(f"unknown backend {backend!r}; expected one of {BACKENDS}")
    key = (model, n)
    if backend == "auto":
        hit = _COUNT_CACHE.get(key)
        if hit is not None:
            return hit
    if backend == "dfs" or model.dimension == 1:
        result = count_patterns_dfs(model, n, node_budget)
    else:
        result = count_via_transfer(model, n, node_budget, state_budget)
    _COUNT_CACHE[key] = result
    return result
