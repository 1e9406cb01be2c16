"""Run every bundled scenario through the verifier and summarize the results."""

from pathlib import Path

from kgbf.cli import run_scenario
from kgbf.errors import ConfigError
from kgbf.scenario import load_scenario

SCENARIOS = Path(__file__).resolve().parent.parent / "scenarios"


def main():
    for path in sorted(SCENARIOS.glob("*.toml")):
        try:
            report = run_scenario(load_scenario(str(path)), jobs=4)
        except ConfigError as exc:
            print(f"{path.stem:<18} config error: {exc}")
            continue
        n = report.counts()
        worst = max(report.checks, key=lambda c: c.residual / c.tolerance if c.tolerance else 0.0)
        print(f"{path.stem:<18} exit {report.exit_code}  {n}  tightest: {worst.id} {worst.residual:.2e}/{worst.tolerance:.0e}")


if __name__ == "__main__":
    main()
