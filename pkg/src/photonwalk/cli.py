"""Command-line front end for the walk simulators.

Five modes, one per capability:

``walk``
    Coherent walk via the state-vector engine.
``network``
    The same walk computed by building the optical network and
    propagating a field through it.
``decohere``
    Monte Carlo ensemble with per-step random phase kicks.
``compare``
    Quantum walk vs. the classical random walk of the same length
    (spreads, total-variation distance, per-position table).
``equivalence``
    Cross-check of the two coherent backends; exits 1 on mismatch.

All angles on the command line and in config files are degrees;
conversion to radians happens exactly once, at the parse boundary.
Option precedence is flags > ``--config`` file > built-in defaults.
Config files hold one ``key=value`` pair per line (``#`` comments and
blank lines allowed) where keys are the long option names without the
leading dashes, e.g. ``coin-axis=22.5``.

Exit codes: 0 success (and equivalence pass), 1 equivalence failure,
2 usage error, 3 internal error.

JSON emitted by ``walk``/``network``/``decohere`` conforms to the
bundled schema (``schemas/distribution.schema.json``); probabilities
below 1e-15 in magnitude are clamped to 0.0 at serialization time only.
"""

from __future__ import annotations

import argparse
import importlib.resources
import json
import math
import sys
from dataclasses import dataclass

import jsonschema

from .dephasing import DephasingConfig, classical_walk, run_ensemble
from .optics import build_network, equivalence_report, propagate
from .stats import Distribution, compare_report, std_dev
from .walk import InitialSpec, distribution, evolve, hwp_coin, make_initial

__all__ = ["RunConfig", "UsageError", "load_distribution_json", "main",
           "parse_config", "run"]

#: probabilities smaller than this in magnitude serialize as 0.0
_CLAMP = 1e-15

_MODES = ("walk", "network", "decohere", "compare", "equivalence")

# key -> (python type, help text); keys double as config-file keys
_OPTIONS = {
    "steps": (int, "number of walk steps (default 1)"),
    "coin-axis": (float, "coin plate axis angle in degrees (default 22.5)"),
    "initial-theta": (float, "initial state mixing angle in degrees (default 0)"),
    "initial-phi": (float, "initial state relative phase in degrees (default 0)"),
    "gamma": (float, "dephasing strength in [0, 1] (default 0)"),
    "trajectories": (int, "Monte Carlo ensemble size (default 1000)"),
    "seed": (int, "base RNG seed (default 0)"),
    "format": (str, "output format: json or csv (default json)"),
    "output": (str, "write output to this path instead of stdout"),
}

_COMMON_KEYS = ("steps", "coin-axis", "initial-theta", "initial-phi",
                "format", "output")
_MODE_KEYS = {
    "walk": _COMMON_KEYS,
    "network": _COMMON_KEYS,
    "decohere": _COMMON_KEYS + ("gamma", "trajectories", "seed"),
    "compare": _COMMON_KEYS,
    "equivalence": _COMMON_KEYS,
}

_DEFAULTS = {
    "steps": 1,
    "coin-axis": 22.5,
    "initial-theta": 0.0,
    "initial-phi": 0.0,
    "gamma": 0.0,
    "trajectories": 1000,
    "seed": 0,
    "format": "json",
    "output": None,
}


class UsageError(Exception):
    """Bad arguments or config-file contents (exit code 2)."""


@dataclass(frozen=True)
class RunConfig:
    """Fully resolved invocation: mode plus every option it honours.

    Angles are kept in degrees here (they are user-facing and echoed
    into the output); the run functions convert to radians.  The
    dephasing fields are None for modes that do not use them, which
    also serializes naturally as JSON null.
    """

    mode: str
    steps: int
    coin_axis_deg: float
    initial_theta_deg: float
    initial_phi_deg: float
    gamma: float | None
    trajectories: int | None
    seed: int | None
    output_format: str
    output_path: str | None


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="photonwalk",
        description="coined quantum walk on a line: state-vector engine, "
                    "linear-optics network, and dephasing Monte Carlo",
    )
    sub = parser.add_subparsers(dest="mode", required=True, metavar="MODE")
    for mode in _MODES:
        p = sub.add_parser(mode, help=f"run the {mode} mode")
        p.add_argument("--config", default=None, metavar="PATH",
                       help="key=value file supplying option defaults")
        for key in _MODE_KEYS[mode]:
            typ, help_text = _OPTIONS[key]
            p.add_argument(f"--{key}", type=typ, default=None,
                           dest=key.replace("-", "_"), help=help_text)
    return parser


def _read_config_file(path: str) -> dict[str, str]:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read config file {path!r}: {exc}") from exc
    entries: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key=value, got {line!r}")
        key, _, value = line.partition("=")
        entries[key.strip()] = value.strip()
    return entries


def _coerce(key: str, raw: str) -> int | float | str:
    typ = _OPTIONS[key][0]
    if typ is str:
        return raw
    try:
        return typ(raw)
    except ValueError as exc:
        raise UsageError(
            f"config key {key!r}: cannot parse {raw!r} as {typ.__name__}"
        ) from exc


def parse_config(argv: list[str]) -> RunConfig:
    """Resolve argv (plus any --config file) into a RunConfig.

    Raises UsageError for semantic problems; argparse itself handles
    syntax errors (unknown flags, missing mode) by raising SystemExit.
    """
    ns = _build_parser().parse_args(argv)
    mode = ns.mode
    allowed = _MODE_KEYS[mode]

    resolved: dict[str, object] = {key: _DEFAULTS[key] for key in allowed}
    if ns.config is not None:
        for key, raw in _read_config_file(ns.config).items():
            if key not in allowed:
                raise UsageError(
                    f"config key {key!r} is not valid for mode {mode!r}"
                )
            resolved[key] = _coerce(key, raw)
    for key in allowed:
        flag_value = getattr(ns, key.replace("-", "_"))
        if flag_value is not None:
            resolved[key] = flag_value

    steps = resolved["steps"]
    if steps < 1:
        raise UsageError(f"steps must be >= 1, got {steps}")
    fmt = resolved["format"]
    if fmt not in ("json", "csv"):
        raise UsageError(f"format must be 'json' or 'csv', got {fmt!r}")

    if mode == "decohere":
        gamma = float(resolved["gamma"])
        trajectories = int(resolved["trajectories"])
        seed = int(resolved["seed"])
        if not 0.0 <= gamma <= 1.0:
            raise UsageError(f"gamma must lie in [0, 1], got {gamma}")
        if trajectories < 1:
            raise UsageError(f"trajectories must be >= 1, got {trajectories}")
    else:
        gamma = trajectories = seed = None

    return RunConfig(
        mode=mode,
        steps=int(steps),
        coin_axis_deg=float(resolved["coin-axis"]),
        initial_theta_deg=float(resolved["initial-theta"]),
        initial_phi_deg=float(resolved["initial-phi"]),
        gamma=gamma,
        trajectories=trajectories,
        seed=seed,
        output_format=fmt,
        output_path=resolved["output"],
    )


# ---------------------------------------------------------------------------
# serialization


def _clamp(p: float) -> float:
    return 0.0 if abs(p) < _CLAMP else float(p)


def _dist_rows(dist: Distribution) -> list[tuple[int, float]]:
    return [(int(x), _clamp(dist.probabilities[x])) for x in dist.positions()]


def _header_fields(config: RunConfig) -> dict[str, object]:
    return {
        "steps": config.steps,
        "coin_axis_deg": config.coin_axis_deg,
        "initial": {
            "theta_deg": config.initial_theta_deg,
            "phi_deg": config.initial_phi_deg,
        },
        "gamma": config.gamma,
        "trajectories": config.trajectories,
        "seed": config.seed,
    }


def _distribution_json(config: RunConfig, dist: Distribution,
                       std_error: dict[int, float] | None = None) -> str:
    doc: dict[str, object] = _header_fields(config)
    doc["distribution"] = [
        {"position": x, "probability": p} for x, p in _dist_rows(dist)
    ]
    doc["std_dev"] = std_dev(dist)
    if std_error is not None:
        doc["std_error"] = [_clamp(std_error[x]) for x in dist.positions()]
    return json.dumps(doc, indent=2) + "\n"


def _distribution_csv(dist: Distribution,
                      std_error: dict[int, float] | None = None) -> str:
    if std_error is None:
        lines = ["position,probability"]
        lines += [f"{x},{p!r}" for x, p in _dist_rows(dist)]
    else:
        lines = ["position,probability,std_error"]
        lines += [f"{x},{p!r},{_clamp(std_error[x])!r}"
                  for x, p in _dist_rows(dist)]
    return "\n".join(lines) + "\n"


def _table_json(config: RunConfig, extra: dict[str, object],
                rows: list[dict[str, object]]) -> str:
    doc: dict[str, object] = {
        "steps": config.steps,
        "coin_axis_deg": config.coin_axis_deg,
        "initial": {
            "theta_deg": config.initial_theta_deg,
            "phi_deg": config.initial_phi_deg,
        },
    }
    doc.update(extra)
    doc["table"] = rows
    return json.dumps(doc, indent=2) + "\n"


def _table_csv(columns: tuple[str, ...],
               rows: list[tuple[int, float, float]]) -> str:
    lines = [",".join(columns)]
    lines += [f"{x},{a!r},{b!r}" for x, a, b in rows]
    return "\n".join(lines) + "\n"


def _emit(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def load_distribution_json(text: str) -> tuple[Distribution, dict]:
    """Parse and schema-validate a walk/network/decohere JSON document.

    Returns the reconstructed Distribution together with the full
    parsed document (for callers that need the header fields).
    """
    doc = json.loads(text)
    schema_text = (
        importlib.resources.files("photonwalk")
        .joinpath("schemas/distribution.schema.json")
        .read_text(encoding="utf-8")
    )
    jsonschema.validate(doc, json.loads(schema_text))
    positions = [row["position"] for row in doc["distribution"]]
    if positions != sorted(positions):
        raise ValueError("distribution positions are not ascending")
    probs = {row["position"]: row["probability"] for row in doc["distribution"]}
    return Distribution(probabilities=probs, step_count=doc["steps"]), doc


# ---------------------------------------------------------------------------
# mode runners


def _initial_spec(config: RunConfig) -> InitialSpec:
    return InitialSpec(theta=math.radians(config.initial_theta_deg),
                       phi=math.radians(config.initial_phi_deg))


def _coin_axis(config: RunConfig) -> float:
    return math.radians(config.coin_axis_deg)


def _run_walk(config: RunConfig) -> int:
    spec = _initial_spec(config)
    coin = hwp_coin(_coin_axis(config))
    state = evolve(make_initial(spec, config.steps), coin, config.steps)
    dist = distribution(state)
    if config.output_format == "json":
        text = _distribution_json(config, dist)
    else:
        text = _distribution_csv(dist)
    _emit(text, config.output_path)
    return 0


def _run_network(config: RunConfig) -> int:
    spec = _initial_spec(config)
    layout = build_network(config.steps, coin_axis=_coin_axis(config))
    dist = propagate(layout, spec.coin_vector())
    if config.output_format == "json":
        text = _distribution_json(config, dist)
    else:
        text = _distribution_csv(dist)
    _emit(text, config.output_path)
    return 0


def _run_decohere(config: RunConfig) -> int:
    spec = _initial_spec(config)
    coin = hwp_coin(_coin_axis(config))
    deph = DephasingConfig(gamma=config.gamma,
                           trajectories=config.trajectories,
                           seed=config.seed)
    result = run_ensemble(spec, coin, config.steps, deph)
    if config.output_format == "json":
        text = _distribution_json(config, result.distribution,
                                  std_error=result.std_error)
    else:
        text = _distribution_csv(result.distribution,
                                 std_error=result.std_error)
    _emit(text, config.output_path)
    return 0


def _run_compare(config: RunConfig) -> int:
    spec = _initial_spec(config)
    coin = hwp_coin(_coin_axis(config))
    state = evolve(make_initial(spec, config.steps), coin, config.steps)
    quantum = distribution(state)
    classical = classical_walk(config.steps)
    report = compare_report(quantum, classical)
    rows_t = [(x, _clamp(q), _clamp(c)) for x, q, c in report.table]
    if config.output_format == "json":
        extra = {
            "sigma_quantum": report.sigma_quantum,
            "sigma_classical": report.sigma_classical,
            "sigma_ratio": report.sigma_ratio,
            "tv_distance": report.tv,
        }
        rows = [{"position": x, "quantum": q, "classical": c}
                for x, q, c in rows_t]
        text = _table_json(config, extra, rows)
    else:
        text = _table_csv(("position", "quantum", "classical"), rows_t)
    _emit(text, config.output_path)
    return 0


def _run_equivalence(config: RunConfig) -> int:
    spec = _initial_spec(config)
    report = equivalence_report(config.steps, spec,
                                coin_axis=_coin_axis(config))
    rows_t = [(x, _clamp(w), _clamp(n)) for x, w, n in report.table]
    if config.output_format == "json":
        extra = {
            "tolerance": report.tolerance,
            "max_abs_discrepancy": report.max_abs_discrepancy,
            "passed": report.passed,
        }
        rows = [{"position": x, "walk": w, "network": n}
                for x, w, n in rows_t]
        text = _table_json(config, extra, rows)
    else:
        text = _table_csv(("position", "walk", "network"), rows_t)
    _emit(text, config.output_path)
    return 0 if report.passed else 1


_RUNNERS = {
    "walk": _run_walk,
    "network": _run_network,
    "decohere": _run_decohere,
    "compare": _run_compare,
    "equivalence": _run_equivalence,
}


def run(config: RunConfig) -> int:
    return _RUNNERS[config.mode](config)


def main(argv: list[str] | None = None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    try:
        config = parse_config(argv)
    except UsageError as exc:
        print(f"photonwalk: error: {exc}", file=sys.stderr)
        return 2
    except SystemExit as exc:
        # argparse exits 2 on syntax errors and 0 after --help
        return int(exc.code) if exc.code is not None else 0
    try:
        return run(config)
    except UsageError as exc:
        print(f"photonwalk: error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001 - map anything else to exit 3
        print(f"photonwalk: internal error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
