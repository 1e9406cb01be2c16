"""``verify`` command: run a scenario's checks and write a report."""

import argparse
import datetime
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from . import __version__
from .checks import REGISTRY, CheckEnv, applicable_ids
from .errors import ConfigError, UnknownCheckError
from .report import ERROR, FORMATS, CheckResult, Report, emit_report
from .scenario import load_scenario


def select_checks(scenario):
    """Check ids to run, in registry order.

    ``None`` selects every check applicable to the family. Requested ids
    must exist; an inapplicable one is kept and reported as an error.
    """
    if scenario.checks is None:
        return applicable_ids(scenario.family)
    unknown = [c for c in scenario.checks if c not in REGISTRY]
    if unknown:
        raise UnknownCheckError(f"unknown check ids: {unknown}")
    unknown_tol = [c for c in scenario.tolerances if c not in REGISTRY]
    if unknown_tol:
        raise UnknownCheckError(f"tolerance override for unknown checks: {unknown_tol}")
    return list(dict.fromkeys(scenario.checks))


def run_check(scenario, check_id):
    d = REGISTRY[check_id]
    tol = scenario.tolerances.get(check_id, d.tolerance) * scenario.tolerance_scale
    start = time.perf_counter()
    if not d.applies(scenario.family):
        return CheckResult(check_id, ERROR, float("nan"), tol, message=f"not applicable to region {scenario.family.region}")
    try:
        out = d.func(CheckEnv(scenario, check_id))
    except Exception as exc:
        return CheckResult(
            check_id, ERROR, float("nan"), tol, message=f"{type(exc).__name__}: {exc}", wall_time=time.perf_counter() - start
        )
    return CheckResult.judged(
        check_id,
        out.residual,
        tol,
        worst_mode=out.worst_mode,
        message=out.note,
        mode_residuals=out.mode_residuals or [],
        wall_time=time.perf_counter() - start,
    )


def run_scenario(scenario, jobs=1):
    """Run the selected checks (possibly in parallel) and assemble a report."""
    ids = select_checks(scenario)
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(lambda cid: run_check(scenario, cid), ids))
    else:
        results = [run_check(scenario, cid) for cid in ids]
    return Report(
        scenario=scenario.name,
        scenario_hash=scenario.hash,
        version=__version__,
        seed=scenario.seed,
        checks=results,
        timestamp=datetime.datetime.now(datetime.timezone.utc).isoformat(timespec="seconds"),
    )


def build_parser():
    p = argparse.ArgumentParser(prog="verify", description="Run a verification scenario and emit a report.")
    p.add_argument("--scenario", required=True, help="TOML scenario file (or name inside $KGBF_SCENARIO_DIR)")
    p.add_argument("--out", help="directory for the report file; stdout if omitted")
    p.add_argument("--format", choices=FORMATS, default="human")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--seed", type=int)
    p.add_argument("--tolerance-scale", type=float)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    if args.jobs < 1:
        print("verify: --jobs must be positive", file=sys.stderr)
        return 2
    if args.tolerance_scale is not None and not args.tolerance_scale > 0:
        print("verify: --tolerance-scale must be positive", file=sys.stderr)
        return 2
    try:
        scenario = load_scenario(args.scenario)
        if args.seed is not None and not 0 <= args.seed < 2**64:
            raise ConfigError("seed must be a 64-bit unsigned integer")
        scenario = scenario.with_overrides(seed=args.seed, tolerance_scale=args.tolerance_scale)
        report = run_scenario(scenario, jobs=args.jobs)
    except ConfigError as exc:
        print(f"verify: {exc}", file=sys.stderr)
        return 2
    data = emit_report(report, args.format)
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        ext = {"json": "json", "csv": "csv", "human": "txt"}[args.format]
        (out / f"{scenario.name}.{ext}").write_bytes(data)
    else:
        sys.stdout.write(data.decode())
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
