#!/usr/bin/env python3
"""
CLI for constructing and certifying wavelet frame sets over F_q^d.

Every certificate is written as JSON; a human summary goes to stdout and
problems to stderr. Exit codes: 0 certified valid, 1 certified invalid,
2 usage or input error, 3 I/O error, 130 interrupted.
"""

import argparse
import os
import sys
import threading
import time
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional

from . import __version__
from fqwave import frames, jsonio, tiling
from fqwave.errors import FqwaveError, PreconditionError
from fqwave.ff_core import as_modulus, find_k
from fqwave.fourier import TransformConvention
from fqwave.geometry import lifted_rotation_group
from fqwave.points import PointSet

# Configuration
DEFAULT_SEED = 42
SEED_ENV = "FQWAVE_SEED"
DEFAULT_TRIALS = 100
RAYLEIGH_SAMPLES = 100

# Exit codes
EXIT_VALID = 0
EXIT_INVALID = 1
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_INTERRUPTED = 130

VERIFY_KINDS = ("multiplicative", "translational", "spectral", "all")
DEMOS = ("no-parseval", "duplicate", "q1mod4", "orthogonal-origin")


# =============================================================================
# Progress helpers
# =============================================================================


def format_duration(seconds: float) -> str:
    """Format duration in human-readable format."""
    if seconds < 60:
        return f"{seconds:.1f}s"
    minutes = int(seconds // 60)
    secs = seconds % 60
    if minutes < 60:
        return f"{minutes}m {secs:.0f}s"
    hours = minutes // 60
    mins = minutes % 60
    return f"{hours}h {mins}m {secs:.0f}s"


class Spinner:
    """A simple spinner to show progress during long computations."""

    def __init__(self):
        self.frames = ["⠋", "⠙", "⠹", "⠸", "⠼", "⠴", "⠦", "⠧", "⠇", "⠏"]
        self.running = False
        self.thread = None
        self.start_time = None
        self.prefix = ""

    def _spin(self):
        idx = 0
        while self.running:
            elapsed = time.time() - self.start_time
            frame = self.frames[idx % len(self.frames)]
            print(f"\r{self.prefix} {frame} ({format_duration(elapsed)})", end="", flush=True)
            idx += 1
            time.sleep(0.1)

    def start(self, prefix: str = ""):
        self.prefix = prefix
        self.running = True
        self.start_time = time.time()
        self.thread = threading.Thread(target=self._spin, daemon=True)
        self.thread.start()

    def stop(self):
        self.running = False
        if self.thread:
            self.thread.join(timeout=0.5)
        print(f"\r{' ' * 80}\r", end="", flush=True)


def run_with_progress(config: "RunConfig", label: str, func: Callable[[], Any]) -> Any:
    """Run ``func`` behind a spinner when stdout is an interactive terminal."""
    if config.quiet or config.json or not sys.stdout.isatty():
        return func()
    spinner = Spinner()
    spinner.start(label)
    try:
        return func()
    finally:
        spinner.stop()


def print_summary(title: str, rows: List[tuple], config: "RunConfig") -> None:
    if config.quiet or config.json:
        return
    print("=" * 50)
    print(title)
    for key, value in rows:
        print(f"  {key + ':':<22}{value}")
    print("=" * 50)


# =============================================================================
# Configuration
# =============================================================================


@dataclass
class RunConfig:
    command: str
    q: Optional[int] = None
    d: int = 2
    set_path: Optional[Path] = None
    spectrum_path: Optional[Path] = None
    lambda_path: Optional[Path] = None
    out: Optional[Path] = None
    spectrum_out: Optional[Path] = None
    group_out: Optional[Path] = None
    kind: str = "all"
    demo: Optional[str] = None
    tol: float = frames.CERTIFICATE_TOL
    seed: int = DEFAULT_SEED
    trials: int = DEFAULT_TRIALS
    limit: int = tiling.SPECTRUM_SEARCH_LIMIT
    drop_rotation: Optional[int] = None
    convention: str = TransformConvention.UNITARY.value
    json: bool = False
    quiet: bool = False

    def validate(self) -> None:
        if self.q is not None:
            as_modulus(self.q)
        if self.d < 1:
            raise PreconditionError(f"--d must be at least 1, got {self.d}")
        if self.tol <= 0:
            raise PreconditionError(f"--tol must be positive, got {self.tol}")
        if self.trials < 0:
            raise PreconditionError(f"--trials must be non-negative, got {self.trials}")
        if self.limit < 1:
            raise PreconditionError(f"--limit must be positive, got {self.limit}")
        if self.seed < 0:
            raise PreconditionError(
                f"seed must be non-negative, got {self.seed} (--seed or {SEED_ENV})"
            )


def resolve_seed(explicit: Optional[int]) -> int:
    """--seed > FQWAVE_SEED > 42."""
    if explicit is not None:
        return explicit
    raw = os.environ.get(SEED_ENV)
    if raw is None or raw == "":
        return DEFAULT_SEED
    try:
        return int(raw)
    except ValueError:
        raise PreconditionError(f"{SEED_ENV} must be an integer, got {raw!r}") from None


def _path(value: Optional[str]) -> Optional[Path]:
    return Path(value) if value else None


def _dimension(args: argparse.Namespace) -> int:
    d = getattr(args, "d", None)
    if d is not None:
        return d
    return 1 if getattr(args, "demo", None) == "no-parseval" else 2


def build_config(args: argparse.Namespace) -> RunConfig:
    config = RunConfig(
        command=args.command,
        q=getattr(args, "q", None),
        d=_dimension(args),
        set_path=_path(getattr(args, "set", None)),
        spectrum_path=_path(getattr(args, "spectrum", None)),
        lambda_path=_path(getattr(args, "lambda_", None)),
        out=_path(args.out),
        spectrum_out=_path(getattr(args, "spectrum_out", None)),
        group_out=_path(getattr(args, "group_out", None)),
        kind=getattr(args, "kind", "all"),
        demo=getattr(args, "demo", None),
        tol=args.tol,
        seed=resolve_seed(args.seed),
        trials=getattr(args, "trials", DEFAULT_TRIALS),
        limit=getattr(args, "limit", tiling.SPECTRUM_SEARCH_LIMIT),
        drop_rotation=getattr(args, "drop_rotation", None),
        convention=args.convention,
        json=args.json,
        quiet=args.quiet,
    )
    config.validate()
    return config


# =============================================================================
# Output
# =============================================================================


def emit(config: RunConfig, payload: Dict[str, Any]) -> None:
    """Write the JSON payload to --out and/or stdout (--json)."""
    if config.out:
        jsonio.write_json(config.out, payload)
        if not config.quiet and not config.json:
            print(f"Wrote {config.out}")
    if config.json:
        print(jsonio.dumps(payload), end="")


def _status(valid: bool) -> str:
    return "valid" if valid else "INVALID"


def _dilations(q: int, d: int) -> list:
    if d < 2:
        return tiling.sign_automorphisms(q, d)
    return lifted_rotation_group(q, d)


# =============================================================================
# Commands
# =============================================================================


def cmd_construct(config: RunConfig) -> int:
    modulus = as_modulus(config.q)
    if not modulus.is_three_mod_four:
        print(
            f"Error: q={modulus.q} ≡ 1 (mod 4) unsupported: the zero circle S_0 has "
            f"2q−1 = {2 * modulus.q - 1} points, so no rotational wavelet set exists "
            f"(run `fqwave demo q1mod4 --q {modulus.q}`)",
            file=sys.stderr,
        )
        return EXIT_USAGE
    points = tiling.construct_wavelet_frame_set(modulus, config.d)
    payload = jsonio.pointset_to_dict(points)
    emit(config, payload)

    if config.spectrum_out:
        jsonio.write_json(config.spectrum_out, jsonio.pointset_to_dict(tiling.canonical_spectrum(points)))
    if config.group_out:
        jsonio.write_json(
            config.group_out, jsonio.automorphisms_to_dict(lifted_rotation_group(modulus, config.d))
        )

    counts = tiling.circle_intersections(points)
    print_summary(
        f"Wavelet frame set (q={modulus.q}, d={config.d})",
        [
            ("Points", len(points)),
            ("k", find_k(modulus).value),
            ("Circle counts", " ".join(f"{r}:{c}" for r, c in counts.items())),
            ("Output", config.out or "-"),
        ],
        config,
    )
    return EXIT_VALID


def _load_optional(path: Optional[Path]) -> Optional[PointSet]:
    return jsonio.load_pointset(path) if path else None


def cmd_verify(config: RunConfig) -> int:
    points = jsonio.load_pointset(config.set_path)
    modulus = as_modulus(points.q)
    results: Dict[str, Any] = {}
    valid = True

    if config.kind in ("multiplicative", "all"):
        target = points if config.kind == "multiplicative" else points.star()
        cert = tiling.verify_multiplicative_tiling(target, _dilations(modulus.q, points.d))
        results["multiplicative"] = jsonio.certificate_to_dict(cert)
        valid = valid and cert.valid

    if config.kind in ("translational", "all"):
        partner = _load_optional(config.lambda_path)
        if partner is None:
            partner = tiling.tiling_partner(modulus, points.d) if points.d >= 2 else PointSet.full(modulus.q, 1)
        cert = tiling.verify_translational_tiling(points, partner)
        results["translational"] = jsonio.certificate_to_dict(cert)
        valid = valid and cert.valid

    if config.kind in ("spectral", "all"):
        spectrum = _load_optional(config.spectrum_path)
        if spectrum is None:
            spectrum = tiling.canonical_spectrum(points)
        pair = tiling.verify_spectral_pair(points, spectrum, config.tol)
        results["spectral"] = jsonio.spectral_pair_to_dict(pair)
        valid = valid and pair.valid

    payload = results[config.kind] if config.kind != "all" else {"valid": valid, "certificates": results}
    emit(config, payload)
    rows = [(name, _status(cert["valid"])) for name, cert in sorted(results.items())]
    for name, cert in sorted(results.items()):
        if not cert["valid"]:
            detail = cert.get("witness") if "witness" in cert else cert.get("reason")
            print(f"Warning: {name} certificate failed: {detail}", file=sys.stderr)
    print_summary(f"Certificates (q={modulus.q}, d={points.d}, #E={len(points)})", rows, config)
    return EXIT_VALID if valid else EXIT_INVALID


def cmd_analyze(config: RunConfig) -> int:
    points = jsonio.load_pointset(config.set_path)
    modulus = as_modulus(points.q)
    spectrum = _load_optional(config.spectrum_path)
    if spectrum is None:
        spectrum = tiling.canonical_spectrum(points)
    dilations = _dilations(modulus.q, points.d)
    if config.drop_rotation is not None:
        if not 0 <= config.drop_rotation < len(dilations):
            raise PreconditionError(
                f"--drop-rotation must be in [0, {len(dilations) - 1}], got {config.drop_rotation}"
            )
        dilations = [a for j, a in enumerate(dilations) if j != config.drop_rotation]

    def analyze():
        mother = frames.mother_wavelet(points, config.convention)
        system = frames.build_system(mother, dilations, spectrum)
        punctured = PointSet.full(modulus.q, points.d).star()
        report = frames.frame_bounds(system, punctured, config.tol, seed=config.seed)
        rayleigh = frames.rayleigh_check(system, punctured, RAYLEIGH_SAMPLES, config.seed)
        return report, rayleigh

    start = time.time()
    report, rayleigh = run_with_progress(config, "Analyzing", analyze)
    elapsed = time.time() - start
    report = replace(report, convention=config.convention)

    payload = jsonio.frame_report_to_dict(report)
    emit(config, payload)
    agree = rayleigh.within(report.lower, report.upper)
    if not agree:
        print(
            "Warning: Rayleigh samples fall outside the eigenvalue bounds "
            f"[{rayleigh.min_ratio:.12g}, {rayleigh.max_ratio:.12g}]",
            file=sys.stderr,
        )
    print_summary(
        f"Frame analysis (q={modulus.q}, d={points.d})",
        [
            ("Vectors", report.vectors),
            ("Dimension", report.dim),
            ("Redundancy", report.redundancy),
            ("Bounds", f"[{report.lower:.12g}, {report.upper:.12g}]"),
            ("Tightness residual", f"{report.tightness_residual:.3e}"),
            ("Parseval", report.parseval),
            ("Rayleigh range", f"[{rayleigh.min_ratio:.12g}, {rayleigh.max_ratio:.12g}]"),
            ("Time", format_duration(elapsed)),
        ],
        config,
    )
    return EXIT_VALID if report.parseval and agree else EXIT_INVALID


def cmd_search_spectrum(config: RunConfig) -> int:
    points = jsonio.load_pointset(config.set_path)
    found = run_with_progress(
        config, "Searching", lambda: tiling.spectrum_search(points, config.limit)
    )
    payload = {
        "set_size": len(points),
        "spectrum": jsonio.pointset_to_dict(found) if found is not None else None,
        "valid": found is not None,
    }
    emit(config, payload)
    print_summary(
        f"Spectrum search (q={points.q}, d={points.d}, #E={len(points)})",
        [("Spectrum", found.points() if found is not None else "none")],
        config,
    )
    return EXIT_VALID if found is not None else EXIT_INVALID


def cmd_demo(config: RunConfig) -> int:
    if config.demo == "no-parseval":
        q = config.q or 3
        report = run_with_progress(
            config,
            "Searching for a full-space Parseval system",
            lambda: frames.demo_no_full_space_parseval(q, config.d, config.trials, config.seed),
        )
        ok = report.confirmed
        rows = [
            ("Configurations", report.configurations),
            ("Exhaustive sets", report.exhaustive_sets),
            ("Min residual", f"{report.min_residual:.3e}"),
            ("Parseval found", report.parseval_found),
            ("Seed", f"{report.seed} ({report.generator})"),
        ]
    elif config.demo == "duplicate":
        q = config.q or 3
        report = run_with_progress(
            config, "Measuring W ∪ W", lambda: frames.demo_duplicate_system(q, config.tol)
        )
        ok = (
            abs(report.doubled_lower - 2) <= config.tol
            and abs(report.doubled_upper - 2) <= config.tol
            and report.converse_coverage
            and not report.converse_disjoint
        )
        rows = [
            ("Bound of W", f"{report.base_lower:.12g}"),
            ("Bound of W ∪ W", f"{report.doubled_lower:.12g}"),
            ("Claimed A/2", f"{report.claimed_bound:.12g}"),
            ("Claim", "reproduced" if report.claimed_reproduced else "not reproduced"),
            ("Supports disjoint", report.converse_disjoint),
        ]
    elif config.demo == "q1mod4":
        q = config.q or 5
        report = tiling.verify_q1mod4_obstruction(q)
        ok = report.confirmed
        rows = [
            ("#S_0", report.zero_circle_size),
            ("Uncovered", report.uncovered),
            ("On zero circle", report.uncovered_on_zero_circle),
            ("Maps", report.rotations),
        ]
    elif config.demo == "orthogonal-origin":
        q = config.q or 3
        report = run_with_progress(
            config, "Scanning", lambda: frames.search_orthogonal_origin(q, tol=config.tol)
        )
        ok = True
        rows = [
            ("Configurations", report.configurations),
            ("Orthogonal, 0 ∈ E", report.orthogonal_with_origin),
            ("With hypotheses", report.hypotheses_with_origin),
            ("First example", report.first_example),
        ]
    else:
        raise PreconditionError(f"unknown demo: {config.demo!r}")

    payload = {"demo": config.demo, **jsonio.report_to_dict(report)}
    emit(config, payload)
    print_summary(f"Demo {config.demo} (q={q})", rows, config)
    return EXIT_VALID if ok else EXIT_INVALID


COMMANDS: Dict[str, Callable[[RunConfig], int]] = {
    "construct": cmd_construct,
    "verify": cmd_verify,
    "analyze": cmd_analyze,
    "search-spectrum": cmd_search_spectrum,
    "demo": cmd_demo,
}


# =============================================================================
# Argument parsing
# =============================================================================


def parse_args() -> argparse.Namespace:
    """Parse command line arguments."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", type=str, help="Write the JSON result to this path")
    common.add_argument("--json", action="store_true", help="Print the JSON result to stdout")
    common.add_argument("--quiet", action="store_true", help="Suppress the summary")
    common.add_argument(
        "--tol",
        type=float,
        default=frames.CERTIFICATE_TOL,
        help=f"Certificate tolerance (default: {frames.CERTIFICATE_TOL})",
    )
    common.add_argument(
        "--seed",
        type=int,
        default=None,
        help=f"Random seed (default: ${SEED_ENV} or {DEFAULT_SEED})",
    )
    common.add_argument(
        "--convention",
        choices=[c.value for c in TransformConvention],
        default=TransformConvention.UNITARY.value,
        help="Fourier normalization used for the mother wavelet (default: unitary)",
    )

    parser = argparse.ArgumentParser(
        prog="fqwave",
        description="Construct and certify tight wavelet frame sets in F_q^d (q ≡ 3 mod 4)",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  fqwave construct --q 7 --out e7.json          Build the q=7 wavelet set
  fqwave verify --set e7.json                   Run every tiling/spectral certificate
  fqwave analyze --set e7.json --json           Frame bounds on PW_Y
  fqwave demo no-parseval --q 3 --d 1           Exhaustive falsification run
  fqwave demo q1mod4 --q 13                     Zero-circle obstruction
""",
    )
    parser.add_argument("--version", action="version", version=f"fqwave {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="command")

    construct = sub.add_parser("construct", parents=[common], help="Build the wavelet frame set")
    construct.add_argument("--q", type=int, required=True, help="Prime modulus (q ≡ 3 mod 4)")
    construct.add_argument("--d", type=int, default=2, help="Dimension (default: 2)")
    construct.add_argument("--spectrum-out", type=str, help="Also write the canonical spectrum")
    construct.add_argument("--group-out", type=str, help="Also write the rotation group")

    verify = sub.add_parser("verify", parents=[common], help="Run tiling/spectral certificates")
    verify.add_argument("--set", type=str, required=True, help="Point set JSON file")
    verify.add_argument("--kind", choices=VERIFY_KINDS, default="all", help="Certificate to run")
    verify.add_argument("--spectrum", type=str, help="Spectrum JSON (default: canonical)")
    verify.add_argument(
        "--lambda", dest="lambda_", type=str, help="Translation set JSON (default: {t·e_2})"
    )

    analyze = sub.add_parser("analyze", parents=[common], help="Frame bounds on PW_Y")
    analyze.add_argument("--set", type=str, required=True, help="Point set JSON file")
    analyze.add_argument("--spectrum", type=str, help="Spectrum JSON (default: canonical)")
    analyze.add_argument(
        "--drop-rotation",
        type=int,
        metavar="J",
        help="Leave R^J out of the dilation set",
    )

    search = sub.add_parser("search-spectrum", parents=[common], help="Brute-force spectrum search")
    search.add_argument("--set", type=str, required=True, help="Point set JSON file")
    search.add_argument(
        "--limit",
        type=int,
        default=tiling.SPECTRUM_SEARCH_LIMIT,
        help=f"Largest #E to search (default: {tiling.SPECTRUM_SEARCH_LIMIT})",
    )

    demo = sub.add_parser("demo", parents=[common], help="Falsification and counterexample demos")
    demo.add_argument("demo", choices=DEMOS, help="Which demo to run")
    demo.add_argument("--q", type=int, help="Prime modulus")
    demo.add_argument("--d", type=int, help="Dimension (no-parseval only)")
    demo.add_argument(
        "--trials",
        type=int,
        default=DEFAULT_TRIALS,
        help=f"Random configurations (default: {DEFAULT_TRIALS})",
    )

    return parser.parse_args()


def main() -> int:
    """Main entry point for the CLI."""
    args = parse_args()
    if args.command is None:
        print("Error: a command is required", file=sys.stderr)
        print("Usage: fqwave <command> [options]", file=sys.stderr)
        print("       fqwave --help for more information", file=sys.stderr)
        return EXIT_USAGE

    try:
        config = build_config(args)
        return COMMANDS[config.command](config)
    except KeyboardInterrupt:
        if not args.quiet:
            print("\n\nInterrupted by user.")
        return EXIT_INTERRUPTED
    except OSError as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_IO
    except FqwaveError as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
