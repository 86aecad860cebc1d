"""Entropy brackets from exact counts, and the inequalities behind them.

For a symmetric nearest-neighbor model with alphabet size S and exact cube
counts C_n, every n >= 1 brackets the topological entropy h:

    (ln C_{n+1} - q_d(n) ln S) / n^d  <=  h  <=  ln C_n / n^d,

with the correction polynomial

    q_d(n) = (2^d - 1) * sum_{k=0}^{d-1} binom(d,k) / (2^d - 2^k) * n^k

kept as an exact rational until the final float multiply.  Since counts
are nondecreasing from side 2 on, the bracket width is at most
q_d(n) ln S / n^d = O(1/n).  Empty models follow the convention
ln 0 = -inf, so h = -inf stays bracketed.

q_d satisfies the exact doubling identity

    q_d(2n) + (2^d - 1)((n+1)^d - n^d) = 2^d q_d(n),

verified here in rational arithmetic; it is what makes the lower bounds
increase along the doubling chain n, 2n, 4n, ...
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .models import SftModel, model_to_doc
from .enumeration import BudgetExceededError, count_by_state
from .transfer import count_patterns

DOUBLING_TOL = 1e-12
EXACT_CHECK_BIT_LIMIT = 20_000_000
DEFAULT_KEY_ENUM_CAP = 100_000


def q_poly(d: int, n: int) -> Fraction:
    """The correction polynomial q_d(n), exact."""
    if d < 1:
        raise ValueError(f"need d >= 1, got {d}")
    if n < 0:
        raise ValueError(f"need n >= 0, got {n}")
    total = Fraction(0)
    for k in range(d):
        total += Fraction(math.comb(d, k), 2 ** d - 2 ** k) * n ** k
    return (2 ** d - 1) * total


def verify_qd_recurrence(d: int, n: int) -> bool:
    """Exact check of q_d(2n) + (2^d-1)((n+1)^d - n^d) = 2^d q_d(n)."""
    if d < 1 or n < 1:
        raise ValueError(f"need d >= 1 and n >= 1, got d={d}, n={n}")
    lhs = q_poly(d, 2 * n) + (2 ** d - 1) * ((n + 1) ** d - n ** d)
    return lhs == 2 ** d * q_poly(d, n)


def leading_gap_coefficient(d: int) -> Fraction:
    """d * (2 - 2^(1-d)): the degree-(d-1) coefficient of q_d."""
    if d < 1:
        raise ValueError(f"need d >= 1, got {d}")
    return d * (2 - Fraction(2, 2 ** d))


def log_count(c: int) -> float:
    """Natural log of an exact count; -inf for zero."""
    if c < 0:
        raise ValueError("counts are nonnegative")
    if c == 0:
        return float("-inf")
    return math.log(c)


@dataclass
class RowChecks:
    key_inequality: bool | None = None
    power_mean: bool | None = None
    doubling: bool | None = None


@dataclass
class BoundsRow:
    """One bracket row; upper/lower are None when a count was unavailable."""

    n: int
    c_n: int | None
    c_n_plus_1: int | None
    q_value: Fraction
    upper: float | None
    lower: float | None
    gap_bound: float
    checks: RowChecks = field(default_factory=RowChecks)


@dataclass
class ConvergenceReport:
    model: SftModel
    rows: list[BoundsRow]

    def doubling_checks(self) -> list[tuple[int, bool]]:
        return [
            (row.n, row.checks.doubling)
            for row in self.rows
            if row.checks.doubling is not None
        ]


def entropy_bounds(
    model: SftModel, n: int, c_n: int | None, c_n1: int | None
) -> BoundsRow:
    """Bracket row for side n from the counts C_n and C_{n+1} (nats)."""
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    d = model.dimension
    scale = n ** d
    q_value = q_poly(d, n)
    ln_sigma = math.log(model.num_symbols)
    gap_bound = float(q_value) * ln_sigma / scale
    upper = None if c_n is None else log_count(c_n) / scale
    if c_n1 is None:
        lower = None
    else:
        lower = (log_count(c_n1) - float(q_value) * ln_sigma) / scale
    return BoundsRow(n, c_n, c_n1, q_value, upper, lower, gap_bound)


def verify_power_mean_bound(
    model: SftModel,
    n: int,
    backend: str = "auto",
    node_budget: int | None = None,
    c_n1: int | None = None,
    c_2n1: int | None = None,
) -> bool:
    """Exact integer check of the state-averaged count bound:

        C_{2n+1} * S^((2^d - 1)((n+1)^d - n^d))  >=  (C_{n+1})^(2^d).
    """
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    d = model.dimension
    if c_n1 is None:
        c_n1 = count_patterns(model, n + 1, backend, node_budget)
    if c_2n1 is None:
        c_2n1 = count_patterns(model, 2 * n + 1, backend, node_budget)
    s = model.num_symbols
    exponent = (2 ** d - 1) * ((n + 1) ** d - n ** d)
    return c_2n1 * s ** exponent >= c_n1 ** (2 ** d)


def verify_doubling_monotonicity(
    model: SftModel,
    n: int,
    backend: str = "auto",
    node_budget: int | None = None,
    c_n1: int | None = None,
    c_2n1: int | None = None,
    tol: float = DOUBLING_TOL,
) -> bool:
    """Check the lower-bound sequence increases from n to 2n:

        (C_{2n+1} / S^q_d(2n))^(1/(2n)^d)  >=  (C_{n+1} / S^q_d(n))^(1/n^d).

    Compared exactly by clearing denominators while the integer powers
    stay within a bit budget, in the log domain with an absolute
    tolerance otherwise.  Zero counts on both sides are trivially true
    (-inf >= -inf).
    """
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    d = model.dimension
    if c_n1 is None:
        c_n1 = count_patterns(model, n + 1, backend, node_budget)
    if c_2n1 is None:
        c_2n1 = count_patterns(model, 2 * n + 1, backend, node_budget)
    if c_n1 == 0:
        return True
    if c_2n1 == 0:
        return False
    s = model.num_symbols
    q_n = q_poly(d, n)
    q_2n = q_poly(d, 2 * n)
    e_rhs = q_n * (2 * n) ** d
    e_lhs = q_2n * n ** d
    denom = math.lcm(e_rhs.denominator, e_lhs.denominator)
    bits = (
        c_2n1.bit_length() * n ** d * denom
        + c_n1.bit_length() * (2 * n) ** d * denom
        + int(e_rhs + e_lhs) * denom * max(s.bit_length(), 1)
    )
    if bits <= EXACT_CHECK_BIT_LIMIT:
        lhs = c_2n1 ** (n ** d * denom) * s ** int(e_rhs * denom)
        rhs = c_n1 ** ((2 * n) ** d * denom) * s ** int(e_lhs * denom)
        return lhs >= rhs
    ln_s = math.log(s)
    v_2n = (math.log(c_2n1) - float(q_2n) * ln_s) / (2 * n) ** d
    v_n = (math.log(c_n1) - float(q_n) * ln_s) / n ** d
    return v_2n >= v_n - tol


def build_report(
    model: SftModel,
    n_max: int,
    backend: str = "auto",
    node_budget: int | None = None,
    key_enum_cap: int = DEFAULT_KEY_ENUM_CAP,
) -> ConvergenceReport:
    """Bracket rows for n = 1..n_max with every check the counts support.

    Each row carries exact counts, the bracket, and the gap bound; the
    per-row checks are filled in whenever they only need counts up to
    n_max + 1 (and, for the state-resolved inequality, a per-state table
    small enough to enumerate).  A count that exceeds its budget marks
    the row unavailable instead of aborting the report.
    """
    if n_max < 1:
        raise ValueError(f"need n_max >= 1, got {n_max}")
    counts: dict[int, int | None] = {}
    for n in range(1, n_max + 2):
        try:
            counts[n] = count_patterns(model, n, backend, node_budget)
        except BudgetExceededError:
            counts[n] = None
    d = model.dimension
    rows = []
    for n in range(1, n_max + 1):
        row = entropy_bounds(model, n, counts[n], counts[n + 1])
        if 2 * n + 1 <= n_max + 1:
            c_n1, c_2n1 = counts[n + 1], counts[2 * n + 1]
            if c_n1 is not None and c_2n1 is not None:
                row.checks.power_mean = verify_power_mean_bound(
                    model, n, c_n1=c_n1, c_2n1=c_2n1
                )
                row.checks.doubling = verify_doubling_monotonicity(
                    model, n, c_n1=c_n1, c_2n1=c_2n1
                )
        c_n = counts[n]
        c_glued = counts.get(2 * n - 1)
        if c_n is not None and c_n <= key_enum_cap and c_glued is not None:
            table = count_by_state(model, n, node_budget)
            rhs = sum(c ** (1 << d) for c in table.values())
            row.checks.key_inequality = c_glued >= rhs
        rows.append(row)
    return ConvergenceReport(model, rows)


def _json_bound(x: float | None):
    if x is None:
        return None
    if x == float("-inf"):
        return "-inf"
    return x


def report_to_json_dict(report: ConvergenceReport, log_base: str = "e") -> dict:
    """Schema-stable dict; bounds rescaled when log_base is "2"."""
    if log_base not in ("e", "2"):
        raise ValueError(f"log_base must be 'e' or '2', got {log_base!r}")
    scale = 1.0 if log_base == "e" else 1.0 / math.log(2)
    rows = []
    for row in report.rows:
        rows.append(
            {
                "n": row.n,
                "C_n": None if row.c_n is None else str(row.c_n),
                "C_n_plus_1": None if row.c_n_plus_1 is None else str(row.c_n_plus_1),
                "q_d_n": f"{row.q_value.numerator}/{row.q_value.denominator}",
                "upper": _json_bound(None if row.upper is None else row.upper * scale),
                "lower": _json_bound(None if row.lower is None else row.lower * scale),
                "gap_bound": row.gap_bound * scale,
                "checks": {
                    "key_inequality": row.checks.key_inequality,
                    "power_mean": row.checks.power_mean,
                    "doubling": row.checks.doubling,
                },
            }
        )
    return {
        "model": model_to_doc(report.model),
        "d": report.model.dimension,
        "sigma_size": report.model.num_symbols,
        "log_base": log_base,
        "rows": rows,
    }


def report_to_csv(report: ConvergenceReport, log_base: str = "e") -> str:
    """CSV mirror of the JSON rows."""
    doc = report_to_json_dict(report, log_base)
    header = [
        "n",
        "C_n",
        "C_n_plus_1",
        "q_d_n",
        "upper",
        "lower",
        "gap_bound",
        "key_inequality",
        "power_mean",
        "doubling",
    ]
    lines = [",".join(header)]
    for row in doc["rows"]:
        cells = [
            str(row["n"]),
            row["C_n"] or "",
            row["C_n_plus_1"] or "",
            row["q_d_n"],
            _csv_bound(row["upper"]),
            _csv_bound(row["lower"]),
            repr(row["gap_bound"]),
            _csv_flag(row["checks"]["key_inequality"]),
            _csv_flag(row["checks"]["power_mean"]),
            _csv_flag(row["checks"]["doubling"]),
        ]
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def _csv_bound(x) -> str:
    if x is None:
        return ""
    if isinstance(x, str):
        return x
    return repr(x)


def _csv_flag(x) -> str:
    if x is None:
        return ""
    return "true" if x else "false"
