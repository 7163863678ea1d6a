"""Command-line workbench: validate, evaluate, reduce, compare, serve.

Results go to stdout or to files under the configured output directory;
diagnostics go to stderr.  Exit status is 0 on success, 1 when validation
or consistency checks fail, 2 on usage errors.  All numeric output uses
shortest round-trip decimal formatting and LF line endings so identical
configurations produce byte-identical artifacts.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from pathlib import Path

from . import __version__
from .ces import ResourceBundle, criteria, validate_params
from .config import ConfigError, ScenarioConfig, load_config, normalized_dict
from .fuzzy import FuzzyScenario, build_membership, verify_nesting
from .pareto import (
    CriteriaKind,
    RayFamily,
    compare_formulas,
    oracle_pareto,
    ray_family_sweep,
)
from .quanta import check_consistency, check_natural_compromise, derived_table

__all__ = ["main", "run"]

_KIND_NAMES = {k.value: k for k in CriteriaKind}


def _fmt(value: float) -> str:
    """Shortest decimal representation that parses back to the same float."""
    return repr(float(value))


def _write_lines(path: Path, lines: list[str]) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        for line in lines:
            handle.write(line)
            handle.write("\n")


def _write_json(path: Path, payload: dict) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        json.dump(payload, handle, indent=2)
        handle.write("\n")


def _membership_rows(membership) -> list[dict]:
    nodes = membership.grid.nodes()
    return [
        {
            "k": float(nodes[i, 0]),
            "l": float(nodes[i, 1]),
            "tier": membership.tiers[i].value,
            "lambda": float(membership.values[i]),
        }
        for i in range(membership.grid.node_count)
    ]


def write_membership(path: Path, membership, fmt: str) -> None:
    rows = _membership_rows(membership)
    if fmt == "csv":
        lines = ["k,l,tier,lambda"]
        lines += [
            f"{_fmt(r['k'])},{_fmt(r['l'])},{r['tier']},{_fmt(r['lambda'])}" for r in rows
        ]
        _write_lines(path, lines)
    else:
        _write_lines(path, [json.dumps(r) for r in rows])


def _ray_rows(families: list[RayFamily]) -> list[dict]:
    rows = []
    for family in families:
        for entry in family.entries:
            lams = list(entry.weights) + [None] * (4 - len(entry.weights))
            rows.append(
                {
                    "source": family.source,
                    "kind": family.kind.value,
                    "rho": entry.rho,
                    "lambda1": lams[0],
                    "lambda2": lams[1],
                    "lambda3": lams[2],
                    "lambda4": lams[3],
                }
            )
    return rows


def write_rays(path: Path, families: list[RayFamily], fmt: str) -> None:
    rows = _ray_rows(families)
    if fmt == "csv":
        lines = ["source,kind,rho,lambda1,lambda2,lambda3,lambda4"]
        for r in rows:
            lam4 = "" if r["lambda4"] is None else _fmt(r["lambda4"])
            lines.append(
                f"{r['source']},{r['kind']},{_fmt(r['rho'])},"
                f"{_fmt(r['lambda1'])},{_fmt(r['lambda2'])},{_fmt(r['lambda3'])},{lam4}"
            )
        _write_lines(path, lines)
    else:
        _write_lines(path, [json.dumps(r) for r in rows])


def write_oracle_nodes(path: Path, oracle, fmt: str) -> None:
    nodes = oracle.grid.nodes()
    if fmt == "csv":
        lines = ["k,l"]
        lines += [f"{_fmt(nodes[i, 0])},{_fmt(nodes[i, 1])}" for i in oracle.kept_sorted]
        _write_lines(path, lines)
    else:
        _write_lines(
            path,
            [
                json.dumps({"k": float(nodes[i, 0]), "l": float(nodes[i, 1])})
                for i in oracle.kept_sorted
            ],
        )


def _apply_overrides(config: ScenarioConfig, args: argparse.Namespace) -> ScenarioConfig:
    """Command-line flags beat file values, field by field."""
    grid = config.grid
    sweep = config.sweep
    output = config.output
    if getattr(args, "grid_n", None) is not None:
        grid = dataclasses.replace(grid, n_k=args.grid_n, n_l=args.grid_n)
    if getattr(args, "seed", None) is not None:
        sweep = dataclasses.replace(sweep, seed=args.seed)
    if getattr(args, "out", None) is not None:
        output = dataclasses.replace(output, dir=args.out)
    if getattr(args, "format", None) is not None:
        output = dataclasses.replace(output, format=args.format)
    return dataclasses.replace(config, grid=grid, sweep=sweep, output=output)


def _load(args: argparse.Namespace) -> ScenarioConfig:
    config = load_config(args.config)
    return _apply_overrides(config, args)


def _cmd_validate(args: argparse.Namespace) -> int:
    config = _load(args)
    report = validate_params(config.problem.params, config.problem.prices)
    status = check_consistency(config.pair)
    nc = check_natural_compromise(config.pair)
    lines = [
        f"params: {'ok' if report.ok else 'violations: ' + ', '.join(report.violations)}",
    ]
    lines += [f"note: {note}" for note in report.notes]
    lines.append(f"consistency: {status.value}")
    lines.append(
        "naturalCompromise: " + ("ok" if not nc else "violations: " + ", ".join(nc))
    )
    ok = report.ok and status.value == "bothHold" and not nc
    lines.append(f"overall: {'pass' if ok else 'fail'}")
    stream = sys.stderr if args.emit_normalized else sys.stdout
    for line in lines:
        print(line, file=stream)
    if args.emit_normalized:
        print(json.dumps(normalized_dict(config), indent=2))
    return 0 if ok else 1


def _cmd_evaluate(args: argparse.Namespace) -> int:
    config = _load(args)
    bundle = ResourceBundle(K=args.k, L=args.l)
    f = criteria(config.problem, bundle)
    payload = {
        "k": bundle.K,
        "l": bundle.L,
        "q": f.f3 / config.problem.prices.pQ,
        "f": [f.f1, f.f2, f.f3],
    }
    for kind in (CriteriaKind.G4, CriteriaKind.FBAR4, CriteriaKind.FHAT3):
        table = derived_table(kind, config.pair)
        payload[kind.value] = [float(v) for v in table.apply(f.as_array())]
    print(json.dumps(payload))
    return 0


def _cmd_reduce_crisp(args: argparse.Namespace) -> int:
    config = _load(args)
    out_dir = Path(config.output.dir)
    fmt = config.output.format
    sweep_result = ray_family_sweep(
        CriteriaKind.G4, config.pair, config.problem, config.sweep
    )
    g4 = oracle_pareto(CriteriaKind.G4, config.pair, config.problem, config.grid)
    f3 = oracle_pareto(CriteriaKind.F3, config.pair, config.problem, config.grid)
    ext = "csv" if fmt == "csv" else "jsonl"
    write_rays(out_dir / f"rays.{ext}", [sweep_result.derived, sweep_result.reference], fmt)
    write_oracle_nodes(out_dir / f"oracle_g4.{ext}", g4, fmt)
    summary = {
        "gridNodes": config.grid.node_count,
        "g4Count": g4.cardinality,
        "f3Count": f3.cardinality,
        "f3IsWholeGrid": f3.cardinality == config.grid.node_count,
        "g4WithinF3": g4.kept <= f3.kept,
        "properReduction": g4.cardinality < config.grid.node_count,
        "rhoMin": sweep_result.derived.rho_min,
        "rhoMax": sweep_result.derived.rho_max,
        "referenceDomainFailures": sweep_result.domain_failures,
    }
    _write_json(out_dir / "reduction.json", summary)
    print(json.dumps(summary))
    return 0


def _cmd_reduce_fuzzy(args: argparse.Namespace) -> int:
    config = _load(args)
    out_dir = Path(config.output.dir)
    fmt = config.output.format
    scenario = FuzzyScenario(problem=config.problem, pair=config.pair, grid=config.grid)
    core = oracle_pareto(CriteriaKind.G4, config.pair, config.problem, config.grid)
    stage2 = oracle_pareto(scenario.stage2_kind, config.pair, config.problem, config.grid)
    membership = build_membership(scenario, core=core, stage2=stage2)
    nesting = verify_nesting(scenario, stage2=stage2, core=core)
    families = []
    failures = 0
    for kind in (CriteriaKind.G4, scenario.stage2_kind):
        result = ray_family_sweep(kind, config.pair, config.problem, config.sweep)
        families += [result.derived, result.reference]
        failures += result.domain_failures
    ext = "csv" if fmt == "csv" else "jsonl"
    write_membership(out_dir / f"membership.{ext}", membership, fmt)
    write_rays(out_dir / f"rays.{ext}", families, fmt)
    summary = {
        "branch": membership.branch,
        "tierValues": {t.value: v for t, v in membership.tier_values.items()},
        "tierCounts": {t.value: c for t, c in membership.tier_counts().items()},
        "nesting": nesting.to_dict(),
        "referenceDomainFailures": failures,
    }
    _write_json(out_dir / "fuzzy.json", summary)
    print(json.dumps(summary))
    return 0


def _cmd_oracle(args: argparse.Namespace) -> int:
    config = _load(args)
    kind = _KIND_NAMES[args.kind]
    out_dir = Path(config.output.dir)
    fmt = config.output.format
    oracle = oracle_pareto(kind, config.pair, config.problem, config.grid)
    ext = "csv" if fmt == "csv" else "jsonl"
    write_oracle_nodes(out_dir / f"oracle_{kind.value}.{ext}", oracle, fmt)
    summary = {
        "kind": kind.value,
        "gridNodes": config.grid.node_count,
        "keptCount": oracle.cardinality,
    }
    print(json.dumps(summary))
    return 0


def _cmd_compare(args: argparse.Namespace) -> int:
    config = _load(args)
    out_dir = Path(config.output.dir)
    report = compare_formulas(config.problem, config.pair, config.grid, config.sweep)
    _write_json(out_dir / "compare.json", report.to_dict())
    print(
        json.dumps(
            {
                "agreementPct": report.agreement_pct,
                "maxGradResidual": report.max_grad_residual,
                "domainFailures": report.domain_failures,
                "rows": len(report.rows),
            }
        )
    )
    return 0


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host="127.0.0.1", port=args.port, log_level="warning")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ceswork",
        description="Pareto set reduction workbench for a three-criterion CES economy",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser, *, config_required: bool = True) -> None:
        p.add_argument("--config", required=config_required, help="path to the scenario config")
        p.add_argument("--seed", type=int, help="override sweep.seed")
        p.add_argument("--grid-n", type=int, dest="grid_n", help="override grid.nK and grid.nL")
        p.add_argument("--out", help="override output.dir")
        p.add_argument("--format", choices=("csv", "jsonl"), help="override output.format")

    p = sub.add_parser("validate", help="run all invariant checks and print a report")
    add_common(p)
    p.add_argument(
        "--emit-normalized",
        action="store_true",
        help="print the normalized config to stdout (report moves to stderr)",
    )
    p.set_defaults(fn=_cmd_validate)

    p = sub.add_parser("evaluate", help="print criteria and derived criteria at a bundle")
    add_common(p)
    p.add_argument("--k", type=float, required=True, help="capital quantity")
    p.add_argument("--l", type=float, required=True, help="labor quantity")
    p.set_defaults(fn=_cmd_evaluate)

    p = sub.add_parser("reduce-crisp", help="ray sweep, oracle and inclusion check for G4")
    add_common(p)
    p.set_defaults(fn=_cmd_reduce_crisp)

    p = sub.add_parser("reduce-fuzzy", help="full fuzzy membership map over the grid")
    add_common(p)
    p.set_defaults(fn=_cmd_reduce_fuzzy)

    p = sub.add_parser("oracle", help="standalone dominance filter for one criteria kind")
    add_common(p)
    p.add_argument("--kind", choices=sorted(_KIND_NAMES), required=True)
    p.set_defaults(fn=_cmd_oracle)

    p = sub.add_parser("compare-formulas", help="reconcile closed-form rays with the oracle")
    add_common(p)
    p.set_defaults(fn=_cmd_compare)

    p = sub.add_parser("serve", help="start the HTTP service")
    add_common(p, config_required=False)
    p.add_argument("--port", type=int, default=8080)
    p.set_defaults(fn=_cmd_serve)

    return parser


def run(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ConfigError as exc:
        for violation in exc.violations:
            print(f"invalid config: {violation.field}: {violation.message}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
