"""Symmetric nearest-neighbor SFT models.

A model is a finite alphabet plus, for each coordinate axis, a set of
forbidden ordered pairs (value at x, value at x + e_axis).  Symmetry means
every forbidden set is closed under swapping the pair.  All counting and
gluing routines in this package rely on that closure, so asymmetric input
is rejected unless closure is explicitly requested.

Axes are numbered 1..d in user-facing messages and file formats, 0..d-1
internally.  Symbols are strings mapped to dense integer ids; every inner
loop works on ids.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property, lru_cache

MASK_TABLE_LIMIT = 16  # alphabets up to this size get a mask -> values table


class ModelFormatError(ValueError):
    """Malformed or inconsistent model document."""


@dataclass(frozen=True)
class Alphabet:
    """Ordered distinct symbol names; the id of a symbol is its position."""

    symbols: tuple[str, ...]

    def __post_init__(self):
        if len(self.symbols) < 1:
            raise ModelFormatError("alphabet must contain at least one symbol")
        if len(set(self.symbols)) != len(self.symbols):
            raise ModelFormatError("alphabet symbols must be distinct")

    @property
    def size(self) -> int:
        return len(self.symbols)

    @cached_property
    def _index(self) -> dict[str, int]:
        return {s: i for i, s in enumerate(self.symbols)}

    def id_of(self, symbol: str) -> int:
        try:
            return self._index[symbol]
        except KeyError:
            raise ModelFormatError(f"unknown symbol {symbol!r}") from None


@dataclass(frozen=True)
class SftModel:
    """Nearest-neighbor model on Z^d with per-axis forbidden pair sets.

    ``forbidden[i]`` holds ordered pairs of symbol ids along internal axis i
    (external axis i+1).  Forbidden sets may differ across axes.  Instances
    are immutable and hashable, hence safe to share across workers.
    """

    dimension: int
    alphabet: Alphabet
    forbidden: tuple[frozenset[tuple[int, int]], ...]

    def __post_init__(self):
        if self.dimension < 1:
            raise ModelFormatError(f"dimension must be >= 1, got {self.dimension}")
        if len(self.forbidden) != self.dimension:
            raise ModelFormatError(
                f"expected {self.dimension} forbidden sets, got {len(self.forbidden)}"
            )
        q = self.alphabet.size
        for axis, pairs in enumerate(self.forbidden):
            for pair in pairs:
                a, b = pair
                if not (0 <= a < q and 0 <= b < q):
                    raise ModelFormatError(
                        f"forbidden pair {pair} on axis {axis + 1} is outside the alphabet"
                    )

    @property
    def num_symbols(self) -> int:
        return self.alphabet.size

    @cached_property
    def allowed(self) -> tuple[tuple[tuple[bool, ...], ...], ...]:
        """allowed[axis][a][b]: complement of the forbidden relation."""
        q = self.num_symbols
        return tuple(
            tuple(tuple((a, b) not in pairs for b in range(q)) for a in range(q))
            for pairs in self.forbidden
        )

    @cached_property
    def allowed_masks(self) -> tuple[tuple[int, ...], ...]:
        """allowed_masks[axis][a]: bitmask over b with (a, b) allowed."""
        q = self.num_symbols
        out = []
        for pairs in self.forbidden:
            row = []
            for a in range(q):
                m = 0
                for b in range(q):
                    if (a, b) not in pairs:
                        m |= 1 << b
                row.append(m)
            out.append(tuple(row))
        return tuple(out)

    @property
    def full_mask(self) -> int:
        return (1 << self.num_symbols) - 1

    @cached_property
    def values_for_mask(self) -> tuple[tuple[int, ...], ...] | None:
        """Mask -> ascending symbol ids, or None for oversized alphabets."""
        if self.num_symbols > MASK_TABLE_LIMIT:
            return None
        return _mask_value_table(self.num_symbols)


@lru_cache(maxsize=None)
def _mask_value_table(q: int) -> tuple[tuple[int, ...], ...]:
    return tuple(
        tuple(v for v in range(q) if m & (1 << v)) for m in range(1 << q)
    )


@lru_cache(maxsize=65536)
def mask_values(m: int) -> tuple[int, ...]:
    """Set-bit positions of m, ascending; fallback for large alphabets."""
    out = []
    while m:
        low = m & -m
        out.append(low.bit_length() - 1)
        m ^= low
    return tuple(out)


def validate_symmetry(model: SftModel) -> list[tuple[int, str, str]]:
    """Violations of pair-reversal closure, as (external axis, a, b) names."""
    syms = model.alphabet.symbols
    violations = []
    for axis, pairs in enumerate(model.forbidden):
        for a, b in sorted(pairs):
            if (b, a) not in pairs:
                violations.append((axis + 1, syms[a], syms[b]))
    return violations


def symmetrize(model: SftModel) -> SftModel:
    """Close every forbidden set under pair reversal (idempotent)."""
    closed = tuple(
        frozenset(pairs | {(b, a) for (a, b) in pairs}) for pairs in model.forbidden
    )
    return SftModel(model.dimension, model.alphabet, closed)


def drop_last_axis(model: SftModel) -> SftModel:
    """The (d-1)-dimensional sub-model constraining transfer slices."""
    if model.dimension < 2:
        raise ValueError("cannot drop an axis from a 1-dimensional model")
    return SftModel(model.dimension - 1, model.alphabet, model.forbidden[:-1])


def parse_model(text: str) -> SftModel:
    """Parse and validate a model document (UTF-8 JSON text).

    Keys: "dimension" (int >= 1), "alphabet" (distinct strings),
    "forbidden" (one array of symbol pairs per axis), optional boolean
    "symmetrize" requesting reversal closure instead of rejection.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelFormatError(
            f"syntax error at line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from None
    return model_from_doc(doc)


def model_from_doc(doc) -> SftModel:
    if not isinstance(doc, dict):
        raise ModelFormatError("model document must be a JSON object")
    try:
        dimension = doc["dimension"]
        alphabet_names = doc["alphabet"]
        forbidden_doc = doc["forbidden"]
    except KeyError as exc:
        raise ModelFormatError(f"missing required key {exc.args[0]!r}") from None
    if not isinstance(dimension, int) or isinstance(dimension, bool):
        raise ModelFormatError("dimension must be an integer")
    if dimension < 1:
        raise ModelFormatError(f"dimension must be >= 1, got {dimension}")
    if not isinstance(alphabet_names, list) or not all(
        isinstance(s, str) for s in alphabet_names
    ):
        raise ModelFormatError("alphabet must be an array of strings")
    alphabet = Alphabet(tuple(alphabet_names))
    if not isinstance(forbidden_doc, list):
        raise ModelFormatError("forbidden must be an array with one entry per axis")
    if len(forbidden_doc) != dimension:
        raise ModelFormatError(
            f"forbidden lists {len(forbidden_doc)} axes but dimension is {dimension}"
        )
    forbidden = []
    for axis, pair_list in enumerate(forbidden_doc):
        if not isinstance(pair_list, list):
            raise ModelFormatError(f"forbidden[{axis}] must be an array of pairs")
        pairs = set()
        for pair in pair_list:
            if not isinstance(pair, list) or len(pair) != 2:
                raise ModelFormatError(
                    f"axis {axis + 1}: each forbidden entry must be a 2-element array"
                )
            try:
                a, b = alphabet.id_of(pair[0]), alphabet.id_of(pair[1])
            except ModelFormatError as exc:
                raise ModelFormatError(f"axis {axis + 1}: {exc}") from None
            pairs.add((a, b))
        forbidden.append(frozenset(pairs))
    model = SftModel(dimension, alphabet, tuple(forbidden))
    if doc.get("symmetrize", False):
        return symmetrize(model)
    violations = validate_symmetry(model)
    if violations:
        axis, a, b = violations[0]
        raise ModelFormatError(
            f"forbidden sets are not symmetric: axis {axis} has ({a},{b}) "
            f"without ({b},{a}); set \"symmetrize\": true to request closure"
        )
    return model


def model_to_doc(model: SftModel) -> dict:
    """JSON-compatible document that parse_model maps back to this model."""
    syms = model.alphabet.symbols
    return {
        "dimension": model.dimension,
        "alphabet": list(syms),
        "forbidden": [
            [[syms[a], syms[b]] for a, b in sorted(pairs)]
            for pairs in model.forbidden
        ],
    }


def builtin_model(name: str, d: int, q: int | None = None) -> SftModel:
    """Reference families: "hard-square" and "coloring" (q colors)."""
    if d < 1:
        raise ModelFormatError(f"dimension must be >= 1, got {d}")
    if name == "hard-square":
        alphabet = Alphabet(("0", "1"))
        pairs = frozenset({(1, 1)})
        return SftModel(d, alphabet, (pairs,) * d)
    if name == "coloring":
        if q is None:
            raise ModelFormatError("coloring requires a color count, e.g. coloring:3")
        if q < 1:
            raise ModelFormatError(f"color count must be >= 1, got {q}")
        alphabet = Alphabet(tuple(f"c{i}" for i in range(q)))
        pairs = frozenset((c, c) for c in range(q))
        return SftModel(d, alphabet, (pairs,) * d)
    raise ModelFormatError(f"unknown builtin model {name!r}")
