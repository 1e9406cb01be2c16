"""Check reports and their json, csv and human renderings.

Run-dependent fields (timestamp, wall times) live in a separate
``volatile`` block of the json document, so two runs of the same scenario
produce identical documents once that block is dropped.
"""

import csv
import io
import json
import math
from dataclasses import asdict, dataclass, field

SCHEMA = "kgbf.report/1"
FORMATS = ("json", "csv", "human")
PASS, FAIL, ERROR = "pass", "fail", "error"


@dataclass
class CheckResult:
    id: str
    status: str
    residual: float
    tolerance: float
    worst_mode: list = None
    message: str = ""
    mode_residuals: list = field(default_factory=list)
    wall_time: float = 0.0

    @classmethod
    def judged(cls, id, residual, tolerance, **kw):
        """Result with status ``pass`` iff ``residual <= tolerance``."""
        ok = residual is not None and math.isfinite(residual) and residual <= tolerance
        return cls(id, PASS if ok else FAIL, float(residual), float(tolerance), **kw)


@dataclass
class Report:
    scenario: str = ""
    scenario_hash: str = ""
    version: str = ""
    seed: int = 0
    checks: list = field(default_factory=list)
    timestamp: str = ""

    @property
    def passed(self):
        return all(c.status == PASS for c in self.checks)

    @property
    def exit_code(self):
        return 0 if self.passed else 1

    def counts(self):
        out = {PASS: 0, FAIL: 0, ERROR: 0}
        for c in self.checks:
            out[c.status] += 1
        return out

    def to_dict(self, volatile=True):
        checks = []
        for c in self.checks:
            d = asdict(c)
            d.pop("wall_time")
            d["residual"] = _num(d["residual"])
            d["mode_residuals"] = [[list(m), _num(r)] for m, r in d["mode_residuals"]]
            d["worst_mode"] = list(d["worst_mode"]) if d["worst_mode"] is not None else None
            checks.append(d)
        doc = {
            "schema": SCHEMA,
            "scenario": self.scenario,
            "scenario_hash": self.scenario_hash,
            "version": self.version,
            "seed": self.seed,
            "summary": self.counts(),
            "checks": checks,
        }
        if volatile:
            doc["volatile"] = {"timestamp": self.timestamp, "wall_times": {c.id: c.wall_time for c in self.checks}}
        return doc

    @classmethod
    def from_dict(cls, doc):
        if doc.get("schema") != SCHEMA:
            raise ValueError(f"unsupported report schema {doc.get('schema')!r}")
        vol = doc.get("volatile", {})
        walls = vol.get("wall_times", {})
        checks = []
        for d in doc["checks"]:
            d = dict(d)
            d["residual"] = _unnum(d["residual"])
            d["worst_mode"] = tuple(d["worst_mode"]) if d["worst_mode"] is not None else None
            d["mode_residuals"] = [(tuple(m), _unnum(r)) for m, r in d["mode_residuals"]]
            checks.append(CheckResult(wall_time=walls.get(d["id"], 0.0), **d))
        return cls(doc["scenario"], doc["scenario_hash"], doc["version"], doc["seed"], checks, vol.get("timestamp", ""))

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))


def _num(x):
    # json has no nan/inf; keep them as strings
    x = float(x)
    return x if math.isfinite(x) else repr(x)


def _unnum(x):
    return float(x)


def to_json(report):
    return json.dumps(report.to_dict(), sort_keys=True, indent=2) + "\n"


def to_csv(report):
    """One summary row per check (mode empty) followed by its per-mode rows."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["check_id", "status", "tolerance", "mode", "residual"])
    for c in report.checks:
        w.writerow([c.id, c.status, repr(c.tolerance), "", repr(c.residual)])
        for mode, r in c.mode_residuals:
            w.writerow([c.id, c.status, repr(c.tolerance), " ".join(repr(x) for x in mode), repr(r)])
    return buf.getvalue()


def to_human(report):
    lines = [f"scenario {report.scenario}  seed {report.seed}  hash {report.scenario_hash[:12]}"]
    lines.append(f"{'check':<38} {'status':<6} {'residual':>11} {'tolerance':>10}  worst mode")
    for c in report.checks:
        worst = "" if c.worst_mode is None else "(" + ", ".join(f"{x:g}" for x in c.worst_mode) + ")"
        lines.append(f"{c.id:<38} {c.status:<6} {c.residual:>11.3e} {c.tolerance:>10.1e}  {worst}")
        if c.status != PASS and c.message:
            lines.append(f"    {c.message}")
    n = report.counts()
    lines.append(f"{n[PASS]} passed, {n[FAIL]} failed, {n[ERROR]} errors")
    return "\n".join(lines) + "\n"


def emit_report(report, format="json"):
    """Render ``report`` as bytes in one of :data:`FORMATS`."""
    render = {"json": to_json, "csv": to_csv, "human": to_human}.get(format)
    if render is None:
        raise ValueError(f"unsupported report format {format!r}; choose from {FORMATS}")
    return render(report).encode()
