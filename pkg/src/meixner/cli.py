"""Command line entry point: ``meixner <command> (--spec ... | --family ...)``.

Every command writes one JSON document (stdout or ``--out``) and exits 0 iff
everything it checked passed.  Exit code 1 means a failed check or an invalid
point, 2 a usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .algebra import as_rational, format_rational, multi_indices, random_polynomial
from .operators import (
    build_degree_operator,
    build_variable_operator,
    verify_bispectrality,
    verify_commutativity,
)
from .orthogonality import DEFAULT_CAP, NoConvergence, PreconditionViolated, verify_orthogonality
from .parameters import (
    MeixnerPoint,
    ParameterError,
    family_geometric,
    family_triangular,
    from_weights,
    parameter_report,
)
from .polynomials import (
    MeixnerSpec,
    hypergeometric_polynomial,
    verify_classical,
    verify_duality,
    verify_representations,
)
from .report import VerificationReport

COMMANDS = ("construct", "polys", "verify", "orthogonality", "dump-operators")


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    spec_source: str
    spec_kind: str  # "json" or "family"
    beta: Fraction | None
    maxdeg: int
    grid: int
    tolerance: Fraction
    rel_tolerance: Fraction
    truncation_cap: int
    seed: int
    samples: int
    out: str | None
    unchecked: bool

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunConfig":
        for name in ("maxdeg", "grid", "truncation_cap", "samples"):
            if getattr(args, name) < 0:
                raise UsageError(f"--{name.replace('_', '-')} must be nonnegative")
        tol = _rational_arg(args.tol, "--tol")
        rel = _rational_arg(args.rel_tol, "--rel-tol")
        if tol <= 0 or rel <= 0:
            raise UsageError("tolerances must be positive")
        return cls(
            command=args.command,
            spec_source=args.spec if args.spec is not None else args.family,
            spec_kind="json" if args.spec is not None else "family",
            beta=None if args.beta is None else _rational_arg(args.beta, "--beta"),
            maxdeg=args.maxdeg,
            grid=args.grid,
            tolerance=tol,
            rel_tolerance=rel,
            truncation_cap=args.truncation_cap,
            seed=args.seed,
            samples=args.samples,
            out=args.out,
            unchecked=args.unchecked,
        )


def _rational_arg(text: str, flag: str) -> Fraction:
    """Accept ``p/q``, integers, and decimal/scientific literals such as ``1e-10``."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"{flag}: cannot parse {text!r} as a rational") from None


def _rationals(text: str) -> list[Fraction]:
    return [as_rational(v) for v in text.split(",") if v.strip()]


def parse_family(text: str) -> MeixnerPoint:
    """``triangular:c1,c2,...`` / ``geometric:q,d`` / ``gram:c1,...[;m1,m2,...]``."""
    kind, _, rest = text.partition(":")
    kind = kind.strip().lower()
    try:
        if kind == "triangular":
            return family_triangular(_rationals(rest))
        if kind == "geometric":
            q, d = rest.split(",")
            return family_geometric(as_rational(q), int(d))
        if kind == "gram":
            weights, _, mixing = rest.partition(";")
            return from_weights(_rationals(weights), _rationals(mixing) if mixing else None)
    except ParameterError:
        raise
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad family shorthand {text!r}: {exc}") from None
    raise UsageError(f"unknown family {kind!r}; use triangular, geometric or gram")


def load_spec(cfg: RunConfig) -> MeixnerSpec:
    if cfg.spec_kind == "family":
        point = parse_family(cfg.spec_source)
        beta = cfg.beta
    else:
        text = cfg.spec_source
        path = Path(text)
        if not text.lstrip().startswith("{") and path.exists():
            text = path.read_text()
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise UsageError(f"--spec is neither JSON nor a readable file: {exc}") from None
        if "spec" in data:
            data = data["spec"]
        try:
            point = MeixnerPoint.from_json(data, check=not cfg.unchecked)
        except (KeyError, TypeError) as exc:
            raise UsageError(f"malformed point JSON: {exc}") from None
        beta = cfg.beta if cfg.beta is not None else (
            as_rational(data["beta"]) if "beta" in data else None)
    if beta is None:
        beta = Fraction(1)
    return MeixnerSpec(point, beta)


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_construct(cfg: RunConfig) -> tuple[dict, bool]:
    spec = load_spec(cfg)
    report = parameter_report(spec.point)
    return {"point": spec.point.to_json(), "report": report.to_json()}, report.passed


def cmd_polys(cfg: RunConfig) -> tuple[dict, bool]:
    spec = load_spec(cfg)
    entries = [
        {"n": list(n), "polynomial": hypergeometric_polynomial(spec, n).to_json()}
        for n in multi_indices(spec.d, cfg.maxdeg)
    ]
    return {"spec": spec.to_json(), "polynomials": entries}, True


def sample_polynomials(d: int, count: int, seed: int, max_degree: int = 5) -> list:
    rng = random.Random(seed)
    return [random_polynomial(rng, d, max_degree) for _ in range(count)]


def run_verification(spec: MeixnerSpec, maxdeg: int, grid: int, samples: int,
                     seed: int) -> VerificationReport:
    report = VerificationReport()
    report.extend(verify_representations(spec, maxdeg, grid))
    report.extend(verify_duality(spec, grid))
    report.extend(verify_bispectrality(spec, maxdeg, grid))
    report.extend(verify_commutativity(spec, sample_polynomials(spec.d, samples, seed)))
    if spec.d == 1:
        report.extend(verify_classical(spec, maxdeg, grid))
    return report


def cmd_verify(cfg: RunConfig) -> tuple[dict, bool]:
    spec = load_spec(cfg)
    report = run_verification(spec, cfg.maxdeg, cfg.grid, cfg.samples, cfg.seed)
    out = {"spec": spec.to_json(), "maxdeg": cfg.maxdeg, "grid": cfg.grid,
           "seed": cfg.seed, "report": report.to_json()}
    return out, report.passed


def cmd_orthogonality(cfg: RunConfig) -> tuple[dict, bool]:
    spec = load_spec(cfg)
    report = verify_orthogonality(spec, cfg.maxdeg, cfg.tolerance, cfg.rel_tolerance,
                                  cfg.truncation_cap)
    out = {"spec": spec.to_json(), "maxdeg": cfg.maxdeg,
           "tolerance": format_rational(cfg.tolerance),
           "rel_tolerance": format_rational(cfg.rel_tolerance),
           "report": report.to_json()}
    return out, report.passed


def cmd_dump_operators(cfg: RunConfig) -> tuple[dict, bool]:
    spec = load_spec(cfg)
    d = spec.d
    out = {
        "spec": spec.to_json(),
        "variable": [build_variable_operator(spec, i).to_json() for i in range(1, d + 1)],
        "degree": [build_degree_operator(spec, i).to_json() for i in range(1, d + 1)],
    }
    return out, True


HANDLERS = {
    "construct": cmd_construct,
    "polys": cmd_polys,
    "verify": cmd_verify,
    "orthogonality": cmd_orthogonality,
    "dump-operators": cmd_dump_operators,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    source = common.add_mutually_exclusive_group(required=True)
    source.add_argument("--spec", help="point JSON, inline or as a file path")
    source.add_argument("--family",
                        help="triangular:c1,c2,... | geometric:q,d | gram:c1,...[;m1,...]")
    common.add_argument("--beta", help="rational beta (default 1, or the JSON's beta)")
    common.add_argument("--maxdeg", type=int, default=3)
    common.add_argument("--grid", type=int, default=4)
    common.add_argument("--tol", default="1e-10")
    common.add_argument("--rel-tol", default="1e-8")
    common.add_argument("--truncation-cap", type=int, default=DEFAULT_CAP)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--samples", type=int, default=10,
                        help="random polynomials for the commutativity check")
    common.add_argument("--out", help="write JSON here instead of stdout")
    common.add_argument("--unchecked", action="store_true",
                        help="skip validation of --spec input")

    parser = argparse.ArgumentParser(prog="meixner", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = RunConfig.from_args(args)
        payload, ok = HANDLERS[cfg.command](cfg)
    except UsageError as exc:
        print(f"meixner: {exc}", file=sys.stderr)
        return 2
    except (ParameterError, PreconditionViolated, NoConvergence) as exc:
        payload, ok = {"error": type(exc).__name__, "message": str(exc)}, False
        diagnostics = getattr(exc, "diagnostics", None)
        if diagnostics:
            payload["diagnostics"] = diagnostics
    text = json.dumps(payload, sort_keys=True, indent=1) + "\n"
    if cfg_out := getattr(args, "out", None):
        Path(cfg_out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
