"""Command-line interface.

Subcommands: count, bounds, verify, glue-demo.  Global flags select the
model (--model FILE or --builtin NAME[:PARAM] with --dim), the counting
backend, output format, seed, and budgets, and come before the
subcommand, e.g.

    sftbounds --builtin hard-square --dim 2 count --n 3
    sftbounds --builtin coloring:3 --dim 2 --format json bounds --n-max 6

Exit codes: 0 success, 1 usage or parse failure, 2 budget exceeded or
sampling failure, 3 verification failure.
"""

from __future__ import annotations

import argparse
import json
import math
import random
import sys
from dataclasses import dataclass

from .models import ModelFormatError, SftModel, builtin_model, parse_model
from .patterns import format_pattern, is_locally_admissible
from .enumeration import BudgetExceededError
from .transfer import BACKENDS, count_patterns
from .gluing import (
    GlueError,
    GlueInput,
    glue,
    periodic_core,
    tiling_witness,
    verify_key_inequality,
)
from .bounds import (
    build_report,
    report_to_csv,
    report_to_json_dict,
    verify_doubling_monotonicity,
    verify_power_mean_bound,
    verify_qd_recurrence,
)
from .sampling import SamplingError, sample_same_state_group

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_BUDGET = 2
EXIT_VERIFY = 3


class CliError(Exception):
    def __init__(self, code: int, message: str | None = None):
        super().__init__(message)
        self.code = code
        self.message = message


class _Parser(argparse.ArgumentParser):
    # argparse defaults to exit code 2 on usage errors; the contract is 1.
    def error(self, message):
        self.print_usage(sys.stderr)
        raise CliError(EXIT_USAGE, f"{self.prog}: error: {message}")


@dataclass
class RunConfig:
    """Validated run parameters: one model source plus command settings."""

    command: str
    model_path: str | None
    builtin: str | None
    dim: int | None
    backend: str
    fmt: str
    seed: int
    jobs: int
    node_budget: int | None
    log_base: str
    n: int | None = None
    n_max: int | None = None
    samples: int = 200

    @classmethod
    def from_args(cls, args) -> "RunConfig":
        if (args.model is None) == (args.builtin is None):
            raise CliError(
                EXIT_USAGE, "exactly one of --model or --builtin is required"
            )
        if args.jobs < 1:
            raise CliError(EXIT_USAGE, "--jobs must be >= 1")
        if args.node_budget is not None and args.node_budget < 1:
            raise CliError(EXIT_USAGE, "--node-budget must be >= 1")
        return cls(
            command=args.command,
            model_path=args.model,
            builtin=args.builtin,
            dim=args.dim,
            backend=args.backend,
            fmt=args.format,
            seed=args.seed,
            jobs=args.jobs,
            node_budget=args.node_budget,
            log_base=args.log_base,
            n=getattr(args, "n", None),
            n_max=getattr(args, "n_max", None),
            samples=getattr(args, "samples", 200),
        )

    def load_model(self) -> SftModel:
        if self.model_path is not None:
            try:
                with open(self.model_path, encoding="utf-8") as fh:
                    text = fh.read()
            except OSError as exc:
                raise CliError(
                    EXIT_USAGE, f"cannot read {self.model_path}: {exc}"
                ) from None
            return parse_model(text)
        name, _, param = self.builtin.partition(":")
        if self.dim is None:
            raise CliError(EXIT_USAGE, "--builtin requires --dim")
        q = None
        if param:
            try:
                q = int(param)
            except ValueError:
                raise CliError(
                    EXIT_USAGE, f"builtin parameter must be an integer, got {param!r}"
                ) from None
        return builtin_model(name, self.dim, q)

    @property
    def scale(self) -> float:
        return 1.0 if self.log_base == "e" else 1.0 / math.log(2)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="sftbounds",
        description=(
            "Exact pattern counts and certified entropy brackets for "
            "symmetric nearest-neighbor subshifts of finite type."
        ),
    )
    parser.add_argument("--model", metavar="PATH", help="model document (JSON)")
    parser.add_argument(
        "--builtin",
        metavar="NAME[:PARAM]",
        help="builtin model: hard-square or coloring:q",
    )
    parser.add_argument("--dim", type=int, help="dimension for --builtin")
    parser.add_argument("--backend", choices=BACKENDS, default="auto")
    parser.add_argument("--format", choices=("human", "json", "csv"), default="human")
    parser.add_argument("--seed", type=int, default=0, help="RNG seed for demos")
    parser.add_argument(
        "--jobs",
        type=int,
        default=1,
        help="worker cap; results are independent of it",
    )
    parser.add_argument("--node-budget", type=int, default=None, metavar="N")
    parser.add_argument("--log-base", choices=("e", "2"), default="e")

    sub = parser.add_subparsers(dest="command", metavar="COMMAND")

    p_count = sub.add_parser("count", help="exact pattern counts")
    p_count.add_argument("--n", type=int, required=True)
    p_count.add_argument("--n-max", type=int, default=None)

    p_bounds = sub.add_parser("bounds", help="entropy bracket report")
    p_bounds.add_argument("--n-max", type=int, required=True)

    p_verify = sub.add_parser("verify", help="check the bound inequalities")
    p_verify.add_argument("--n", type=int, default=2)
    p_verify.add_argument("--samples", type=int, default=200)

    p_demo = sub.add_parser("glue-demo", help="show a reflection-gluing run")
    p_demo.add_argument("--n", type=int, default=2)

    return parser


def cmd_count(model: SftModel, cfg: RunConfig) -> int:
    n_lo = cfg.n
    n_hi = cfg.n_max if cfg.n_max is not None else cfg.n
    if n_lo < 1 or n_hi < n_lo:
        raise CliError(EXIT_USAGE, "need 1 <= --n <= --n-max")
    rows = []
    for n in range(n_lo, n_hi + 1):
        rows.append((n, count_patterns(model, n, cfg.backend, cfg.node_budget)))
    if cfg.fmt == "json":
        doc = {"counts": [{"n": n, "C_n": str(c)} for n, c in rows]}
        print(json.dumps(doc, indent=2))
    elif cfg.fmt == "csv":
        print("n,C_n")
        for n, c in rows:
            print(f"{n},{c}")
    else:
        for n, c in rows:
            print(f"C_{n} = {c}")
    return EXIT_OK


def _fmt_bound(x, scale: float) -> str:
    if x is None:
        return "n/a"
    if x == float("-inf"):
        return "-inf"
    return f"{x * scale:.6f}"


def cmd_bounds(model: SftModel, cfg: RunConfig) -> int:
    report = build_report(model, cfg.n_max, cfg.backend, cfg.node_budget)
    if cfg.fmt == "json":
        print(json.dumps(report_to_json_dict(report, cfg.log_base), indent=2))
        return EXIT_OK
    if cfg.fmt == "csv":
        sys.stdout.write(report_to_csv(report, cfg.log_base))
        return EXIT_OK
    scale = cfg.scale
    width = max([len(str(r.c_n)) if r.c_n is not None else 3 for r in report.rows] + [3])
    print(f"{'n':>4}  {'C_n':>{width}}  {'lower':>12}  {'upper':>12}  {'gap_bound':>12}")
    for row in report.rows:
        c_txt = "n/a" if row.c_n is None else str(row.c_n)
        print(
            f"{row.n:>4}  {c_txt:>{width}}  {_fmt_bound(row.lower, scale):>12}  "
            f"{_fmt_bound(row.upper, scale):>12}  {row.gap_bound * scale:>12.6f}"
        )
    return EXIT_OK


def cmd_verify(model: SftModel, cfg: RunConfig) -> int:
    if cfg.n < 2:
        raise CliError(EXIT_USAGE, "verify needs --n >= 2")
    n = cfg.n
    d = model.dimension
    results = []

    lhs, rhs, holds = verify_key_inequality(model, n, cfg.backend, cfg.node_budget)
    results.append(
        (f"state-resolved count bound (n={n}): C_{2 * n - 1} = {lhs} >= "
         f"sum_s C_{n}^(s)^{1 << d} = {rhs}", holds)
    )

    m = n - 1
    c_m1 = count_patterns(model, m + 1, cfg.backend, cfg.node_budget)
    c_2m1 = count_patterns(model, 2 * m + 1, cfg.backend, cfg.node_budget)
    s = model.num_symbols
    expo = (2 ** d - 1) * ((m + 1) ** d - m ** d)
    pm = verify_power_mean_bound(model, m, c_n1=c_m1, c_2n1=c_2m1)
    results.append(
        (f"power-mean bound (n={m}): {c_2m1} * {s}^{expo} >= {c_m1}^{1 << d}", pm)
    )
    db = verify_doubling_monotonicity(model, m, c_n1=c_m1, c_2n1=c_2m1)
    results.append(
        (f"doubling monotonicity (n={m}): v_{2 * m} >= v_{m} "
         f"with C_{m + 1} = {c_m1}, C_{2 * m + 1} = {c_2m1}", db)
    )

    sweep_ok = all(
        verify_qd_recurrence(dd, nn) for dd in range(1, 7) for nn in range(1, 65)
    )
    results.append(("correction-polynomial recurrence sweep (d<=6, n<=64)", sweep_ok))

    rng = random.Random(cfg.seed)
    sample_ok = True
    failures = 0
    for _ in range(cfg.samples):
        try:
            group = sample_same_state_group(model, n, 1 << d, rng)
        except SamplingError:
            failures += 1
            if failures > 10:
                raise
            continue
        glued = glue(GlueInput(model, tuple(group)))
        if not is_locally_admissible(model, glued):
            sample_ok = False
            break
        single = glue(GlueInput(model, (group[0],) * (1 << d)))
        core = periodic_core(model, single)
        if not is_locally_admissible(model, tiling_witness(model, core)):
            sample_ok = False
            break
    results.append(
        (f"glue/periodic property samples ({cfg.samples} draws, seed {cfg.seed})",
         sample_ok)
    )

    all_ok = all(ok for _, ok in results)
    if cfg.fmt == "json":
        doc = {
            "checks": [{"name": name, "pass": ok} for name, ok in results],
            "all_pass": all_ok,
        }
        print(json.dumps(doc, indent=2))
    else:
        for name, ok in results:
            print(f"{name} ... {'PASS' if ok else 'FAIL'}")
        print("all checks passed" if all_ok else "VERIFICATION FAILED")
    return EXIT_OK if all_ok else EXIT_VERIFY


def cmd_glue_demo(model: SftModel, cfg: RunConfig) -> int:
    if model.dimension not in (2, 3):
        raise CliError(EXIT_USAGE, "glue-demo supports dimension 2 or 3")
    if cfg.n < 2:
        raise CliError(EXIT_USAGE, "glue-demo needs --n >= 2")
    d = model.dimension
    rng = random.Random(cfg.seed)
    group = sample_same_state_group(model, cfg.n, 1 << d, rng)
    alphabet = model.alphabet
    for t, p in enumerate(group):
        print(f"# block {t}")
        print(format_pattern(p, alphabet))
    glued = glue(GlueInput(model, tuple(group)))
    print("# glued")
    print(format_pattern(glued, alphabet))
    glued_ok = is_locally_admissible(model, glued)

    single = glue(GlueInput(model, (group[0],) * (1 << d)))
    core = periodic_core(model, single)
    print("# periodic core (from block 0 glued with itself)")
    print(format_pattern(core, alphabet))
    wrap_ok = is_locally_admissible(model, tiling_witness(model, core))
    print(f"admissible: {'yes' if glued_ok else 'no'}, wrap: {'yes' if wrap_ok else 'no'}")
    return EXIT_OK if glued_ok and wrap_ok else EXIT_VERIFY


_COMMANDS = {
    "count": cmd_count,
    "bounds": cmd_bounds,
    "verify": cmd_verify,
    "glue-demo": cmd_glue_demo,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise CliError(
                EXIT_USAGE, "a command is required (count, bounds, verify, glue-demo)"
            )
        cfg = RunConfig.from_args(args)
        model = cfg.load_model()
        return _COMMANDS[cfg.command](model, cfg)
    except CliError as exc:
        if exc.message:
            print(exc.message, file=sys.stderr)
        return exc.code
    except ModelFormatError as exc:
        print(f"model error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (BudgetExceededError, SamplingError) as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except GlueError as exc:
        print(f"construction failure: {exc}", file=sys.stderr)
        return EXIT_VERIFY


def entry_point() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry_point()
