"""Command-line front end.

Two verbs::

    twotime run <name>        # name in {ghz, three-box, ifm}
    twotime run-file <path>   # JSON scenario file, schema below

``--json`` emits a single machine-readable JSON document on stdout
(byte-identical across runs for identical inputs); otherwise a
human-readable rendering is printed.  Exit codes: 0 = ran (individual
entries may carry error fields), 2 = invalid input, 1 = internal failure.

Scenario file schema (all complex numbers are ``[re, im]`` pairs)::

    {
      "dim": 3,
      "pre":  [[re, im], ...],          # dim entries, unit norm
      "post": [[re, im], ...],          # dim entries, unit norm
      "observables": [
        {"label": "...",
         "branches": [
           {"outcome_label": "...",
            "eigenvalue": 1.0,
            "projector": [[[re, im], ...], ...]}   # dim x dim
         ]}
      ],
      "constraint_set": {               # optional
        "universe": [{"party": "A", "observable": "x"}, ...],
        "constraints": [
          {"settings": [{"party": "A", "observable": "x"}, ...],
           "required_product": -1}
        ]
      }
    }
"""

from __future__ import annotations

import argparse
import json
import sys
import traceback
from dataclasses import asdict

import numpy as np

from . import __version__, lhv, pps, weakmeas
from .linalg import DIM_CAP, Operator, StateVector
from .weakmeas import GridTooNarrowError
from .scenarios import (
    SCENARIO_NAMES,
    NamedScenario,
    ghz_quantum_check,
    mach_zehnder,
    named_scenario,
)

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_USAGE = 2

DEFAULT_COUPLING = 0.01

_ORTHOGONAL = "orthogonal selection"
_ZERO_SELECTION = "zero selection probability"


class ScenarioValidationError(ValueError):
    """A scenario file failed schema or invariant validation."""

    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}")


def _pair(value: complex) -> list[float]:
    return [value.real, value.imag]


def _amplitude_pairs(state: StateVector) -> list[list[float]]:
    return [_pair(complex(a)) for a in state.amps]


# ---------------------------------------------------------------------------
# scenario file parsing


def _fail(path: str, message: str):
    raise ScenarioValidationError(path, message)


def _want(doc: dict, key: str, path: str):
    if not isinstance(doc, dict):
        _fail(path, "expected an object")
    if key not in doc:
        _fail(f"{path}.{key}", "missing required field")
    return doc[key]


def _as_real(value, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        _fail(path, f"expected a number, got {type(value).__name__}")
    if not np.isfinite(value):
        _fail(path, "must be finite")
    return float(value)


def _as_complex(value, path: str) -> complex:
    if not isinstance(value, (list, tuple)) or len(value) != 2:
        _fail(path, "expected a [re, im] pair")
    return complex(_as_real(value[0], f"{path}[0]"), _as_real(value[1], f"{path}[1]"))


def _parse_state(doc: dict, key: str, dim: int) -> StateVector:
    raw = _want(doc, key, "$")
    path = f"$.{key}"
    if not isinstance(raw, list) or len(raw) != dim:
        _fail(path, f"expected a list of {dim} amplitude pairs")
    amps = [_as_complex(v, f"{path}[{i}]") for i, v in enumerate(raw)]
    state = StateVector(np.array(amps, dtype=np.complex128))
    if not state.is_normalized():
        _fail(path, f"state norm {state.norm():.12g} is not within 1e-09 of 1")
    return state


def _parse_matrix(raw, path: str, dim: int) -> Operator:
    if not isinstance(raw, list) or len(raw) != dim:
        _fail(path, f"expected a {dim}x{dim} matrix")
    rows = []
    for i, row in enumerate(raw):
        if not isinstance(row, list) or len(row) != dim:
            _fail(f"{path}[{i}]", f"expected a row of {dim} entries")
        rows.append([_as_complex(v, f"{path}[{i}][{j}]") for j, v in enumerate(row)])
    return Operator(np.array(rows, dtype=np.complex128))


def _parse_observable(raw, path: str, dim: int) -> pps.ProjectorDecomposition:
    label = _want(raw, "label", path)
    if not isinstance(label, str) or not label:
        _fail(f"{path}.label", "expected a non-empty string")
    raw_branches = _want(raw, "branches", path)
    if not isinstance(raw_branches, list) or not raw_branches:
        _fail(f"{path}.branches", "expected a non-empty list")
    branches = []
    for i, rb in enumerate(raw_branches):
        bpath = f"{path}.branches[{i}]"
        outcome = _want(rb, "outcome_label", bpath)
        if not isinstance(outcome, str) or not outcome:
            _fail(f"{bpath}.outcome_label", "expected a non-empty string")
        eigenvalue = _as_real(_want(rb, "eigenvalue", bpath), f"{bpath}.eigenvalue")
        projector = _parse_matrix(_want(rb, "projector", bpath), f"{bpath}.projector", dim)
        branches.append(pps.Branch(outcome, eigenvalue, projector))
    try:
        return pps.ProjectorDecomposition(label=label, branches=tuple(branches))
    except pps.InvalidDecompositionError as err:
        _fail(path, str(err))


def _parse_setting(raw, path: str) -> lhv.Setting:
    party = _want(raw, "party", path)
    observable = _want(raw, "observable", path)
    if not isinstance(party, str) or not party:
        _fail(f"{path}.party", "expected a non-empty string")
    if not isinstance(observable, str) or not observable:
        _fail(f"{path}.observable", "expected a non-empty string")
    return lhv.Setting(party, observable)


def _parse_constraint_set(raw, path: str) -> lhv.ConstraintSet:
    raw_universe = _want(raw, "universe", path)
    if not isinstance(raw_universe, list) or not raw_universe:
        _fail(f"{path}.universe", "expected a non-empty list")
    universe = tuple(
        _parse_setting(s, f"{path}.universe[{i}]") for i, s in enumerate(raw_universe)
    )
    if len(set(universe)) != len(universe):
        _fail(f"{path}.universe", "settings must be unique")
    raw_constraints = _want(raw, "constraints", path)
    if not isinstance(raw_constraints, list):
        _fail(f"{path}.constraints", "expected a list")
    known = set(universe)
    constraints = []
    for i, rc in enumerate(raw_constraints):
        cpath = f"{path}.constraints[{i}]"
        raw_settings = _want(rc, "settings", cpath)
        if not isinstance(raw_settings, list) or not raw_settings:
            _fail(f"{cpath}.settings", "expected a non-empty list")
        settings = []
        for j, rs in enumerate(raw_settings):
            setting = _parse_setting(rs, f"{cpath}.settings[{j}]")
            if setting not in known:
                _fail(f"{cpath}.settings[{j}]", "setting is not in the universe")
            settings.append(setting)
        product = _want(rc, "required_product", cpath)
        if isinstance(product, bool) or product not in (-1, 1):
            _fail(f"{cpath}.required_product", "must be -1 or 1")
        try:
            constraints.append(lhv.ProductConstraint(tuple(settings), int(product)))
        except ValueError as err:
            _fail(cpath, str(err))
    try:
        return lhv.ConstraintSet(universe, tuple(constraints))
    except (lhv.UniverseTooLargeError, ValueError) as err:
        _fail(path, str(err))


def parse_scenario_document(doc) -> tuple[pps.PrePostEnsemble, tuple, lhv.ConstraintSet | None]:
    """Validate a scenario file document, reporting JSON paths on failure."""
    if not isinstance(doc, dict):
        _fail("$", "expected a JSON object")
    dim = _want(doc, "dim", "$")
    if isinstance(dim, bool) or not isinstance(dim, int):
        _fail("$.dim", "expected an integer")
    if not 1 <= dim <= DIM_CAP:
        _fail("$.dim", f"must be between 1 and {DIM_CAP}")
    pre = _parse_state(doc, "pre", dim)
    post = _parse_state(doc, "post", dim)
    ensemble = pps.PrePostEnsemble(pre, post)
    raw_observables = _want(doc, "observables", "$")
    if not isinstance(raw_observables, list):
        _fail("$.observables", "expected a list")
    observables = []
    labels = set()
    for i, raw in enumerate(raw_observables):
        obs = _parse_observable(raw, f"$.observables[{i}]", dim)
        if obs.label in labels:
            _fail(f"$.observables[{i}].label", f"duplicate label {obs.label!r}")
        labels.add(obs.label)
        observables.append(obs)
    constraint_set = None
    if "constraint_set" in doc and doc["constraint_set"] is not None:
        constraint_set = _parse_constraint_set(doc["constraint_set"], "$.constraint_set")
    return ensemble, tuple(observables), constraint_set


def scenario_document(scenario: NamedScenario) -> dict:
    """Serialize a named scenario to the scenario-file schema."""
    if scenario.ensemble is None:
        raise ScenarioValidationError(
            "$", f"scenario {scenario.name!r} has no scenario-file representation"
        )
    doc = {
        "dim": scenario.ensemble.dim,
        "pre": _amplitude_pairs(scenario.ensemble.pre),
        "post": _amplitude_pairs(scenario.ensemble.post),
        "observables": [
            {
                "label": obs.label,
                "branches": [
                    {
                        "outcome_label": b.outcome_label,
                        "eigenvalue": b.eigenvalue,
                        "projector": [
                            [_pair(complex(v)) for v in row] for row in b.projector.entries
                        ],
                    }
                    for b in obs.branches
                ],
            }
            for obs in scenario.observables
        ],
    }
    if scenario.constraint_set is not None:
        cs = scenario.constraint_set
        doc["constraint_set"] = {
            "universe": [
                {"party": s.party, "observable": s.observable} for s in cs.universe
            ],
            "constraints": [
                {
                    "settings": [
                        {"party": s.party, "observable": s.observable} for s in c.settings
                    ],
                    "required_product": c.required_product,
                }
                for c in cs.constraints
            ],
        }
    return doc


# ---------------------------------------------------------------------------
# report assembly


def _observable_entry(ens: pps.PrePostEnsemble, obs: pps.ProjectorDecomposition, tol: float) -> dict:
    entry: dict = {}
    try:
        entry["abl"] = pps.abl(ens, obs)
    except pps.ZeroSelectionProbabilityError:
        entry["abl"] = {"error": _ZERO_SELECTION}
    try:
        element = pps.infer_element_of_reality(ens, obs, tol)
    except pps.ZeroSelectionProbabilityError:
        entry["element_of_reality"] = {"error": _ZERO_SELECTION}
    else:
        entry["element_of_reality"] = (
            None
            if element is None
            else {
                "outcome": element.certain_outcome_label,
                "eigenvalue": element.eigenvalue,
            }
        )
    branch_values: dict = {}
    for b in obs.branches:
        try:
            branch_values[b.outcome_label] = _pair(pps.weak_value(ens, b.projector))
        except pps.OrthogonalSelectionError:
            branch_values[b.outcome_label] = {"error": _ORTHOGONAL}
    entry["weak_values"] = branch_values
    try:
        entry["observable_weak_value"] = _pair(pps.weak_value(ens, obs.operator()))
    except pps.OrthogonalSelectionError:
        entry["observable_weak_value"] = {"error": _ORTHOGONAL}
    return entry


def _observables_section(ens, observables, tol: float) -> dict:
    return {obs.label: _observable_entry(ens, obs, tol) for obs in observables}


def _lhv_section(cs: lhv.ConstraintSet) -> dict:
    result = lhv.search(cs)
    certificate = lhv.parity_certificate(cs)
    assignment = None
    if result.assignment is not None:
        assignment = {
            f"{s.party}.{s.observable}": v for s, v in result.assignment.items()
        }
    return {
        "satisfiable": result.assignment is not None,
        "satisfier_count": result.count,
        "first_assignment": assignment,
        "parity_certificate": None if certificate is None else list(certificate),
    }


def _report(scenario: str, results: dict) -> dict:
    return {"scenario": scenario, "tool_version": __version__, "results": results}


def run_named(name: str, tol: float = pps.CERTAINTY_TOL, coupling: float = DEFAULT_COUPLING) -> dict:
    """Full report for one of the named scenarios."""
    scenario = named_scenario(name)
    if name == "ghz":
        results = {
            "quantum_check": ghz_quantum_check(scenario.ensemble.pre),
            "lhv": _lhv_section(scenario.constraint_set),
        }
    elif name == "three-box":
        ens = scenario.ensemble
        observables = scenario.observables
        all_boxes = observables[-1]
        weak_values = {
            f"P_{b.outcome_label}": _pair(pps.weak_value(ens, b.projector))
            for b in all_boxes.branches
        }
        pointer = {}
        for obs in observables[:-1]:
            report = weakmeas.simulate_pointer(ens, obs, coupling=coupling)
            pointer[obs.label] = asdict(report)
        results = {
            "observables": _observables_section(ens, observables, tol),
            "weak_values": weak_values,
            "pointer": pointer,
        }
    else:  # ifm
        results = {
            "without_obstacle": asdict(mach_zehnder(False)),
            "with_obstacle": asdict(mach_zehnder(True)),
        }
    return _report(name, results)


def run_file(path: str, tol: float = pps.CERTAINTY_TOL) -> dict:
    """Report for a scenario file: per-observable two-time analysis plus LHV search."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as err:
        raise ScenarioValidationError("$", f"cannot read file: {err}")
    except json.JSONDecodeError as err:
        raise ScenarioValidationError("$", f"invalid JSON: {err}")
    ensemble, observables, constraint_set = parse_scenario_document(doc)
    results: dict = {"observables": _observables_section(ensemble, observables, tol)}
    if constraint_set is not None:
        results["lhv"] = _lhv_section(constraint_set)
    return _report(path, results)


# ---------------------------------------------------------------------------
# rendering


def _format_value(value) -> str:
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, float):
        return f"{value:.12g}"
    if value is None:
        return "none"
    if isinstance(value, list) and len(value) == 2 and all(isinstance(v, float) for v in value):
        return f"{value[0]:.12g} {value[1]:+.12g}i"
    if isinstance(value, list):
        return "[" + ", ".join(_format_value(v) for v in value) + "]"
    return str(value)


def _render_human(report: dict, out) -> None:
    print(f"scenario: {report['scenario']}", file=out)
    print(f"tool version: {report['tool_version']}", file=out)

    def walk(node: dict, indent: int) -> None:
        pad = "  " * indent
        for key, value in node.items():
            if isinstance(value, dict):
                print(f"{pad}{key}:", file=out)
                walk(value, indent + 1)
            else:
                print(f"{pad}{key}: {_format_value(value)}", file=out)

    walk(report["results"], 0)


def _emit(report: dict, as_json: bool, out) -> None:
    if as_json:
        print(json.dumps(report, indent=2), file=out)
    else:
        _render_human(report, out)


# ---------------------------------------------------------------------------
# argument parsing and entry point


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="twotime",
        description="Pre/post-selected quantum scenarios: two-time probabilities, "
        "weak values, hidden-variable search, interferometry.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run a named scenario")
    run.add_argument("name", help=f"one of: {', '.join(SCENARIO_NAMES)}")
    run.add_argument("--json", action="store_true", help="emit a JSON report on stdout")
    run.add_argument(
        "--tol",
        type=float,
        default=pps.CERTAINTY_TOL,
        help="certainty tolerance for element-of-reality inference (default %(default)g)",
    )
    run.add_argument(
        "--coupling",
        type=float,
        default=DEFAULT_COUPLING,
        help="pointer coupling strength for the weak-measurement simulation (default %(default)g)",
    )
    run.add_argument(
        "--emit-scenario",
        metavar="PATH",
        help="write the scenario as a scenario file and exit without running",
    )

    run_file_cmd = sub.add_parser("run-file", help="run a JSON scenario file")
    run_file_cmd.add_argument("path", help="scenario file path")
    run_file_cmd.add_argument("--json", action="store_true", help="emit a JSON report on stdout")
    run_file_cmd.add_argument(
        "--tol",
        type=float,
        default=pps.CERTAINTY_TOL,
        help="certainty tolerance for element-of-reality inference (default %(default)g)",
    )
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exit_err:
        return int(exit_err.code or 0)
    try:
        if args.command == "run":
            if args.name not in SCENARIO_NAMES:
                print(
                    f"error: unknown scenario {args.name!r}; available: {', '.join(SCENARIO_NAMES)}",
                    file=sys.stderr,
                )
                return EXIT_USAGE
            if args.emit_scenario:
                try:
                    doc = scenario_document(named_scenario(args.name))
                    with open(args.emit_scenario, "w", encoding="utf-8") as fh:
                        json.dump(doc, fh, indent=2)
                        fh.write("\n")
                except (ScenarioValidationError, OSError) as err:
                    print(f"error: {err}", file=sys.stderr)
                    return EXIT_USAGE
                return EXIT_OK
            try:
                report = run_named(args.name, tol=args.tol, coupling=args.coupling)
            except (GridTooNarrowError, ValueError) as err:
                print(f"error: {err}", file=sys.stderr)
                return EXIT_USAGE
            _emit(report, args.json, sys.stdout)
            return EXIT_OK
        # run-file
        try:
            report = run_file(args.path, tol=args.tol)
        except ScenarioValidationError as err:
            print(f"error: scenario file invalid at {err}", file=sys.stderr)
            return EXIT_USAGE
        _emit(report, args.json, sys.stdout)
        return EXIT_OK
    except Exception:
        traceback.print_exc()
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
