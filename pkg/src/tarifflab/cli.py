"""``tarifflab`` command line: regress, cluster, simulate, cld.

Every command writes its artifacts plus a ``bundle.json`` manifest into
``--out``. Diagnostics go to stderr; nothing is printed on success except
the artifact list.
"""
from __future__ import annotations

import argparse
import datetime as dt
import hashlib
import json
import sys
import warnings
from dataclasses import dataclass, field
from pathlib import Path

from . import cld as cld_mod
from .cluster import DEFAULT_K, DEFAULT_RESTARTS, DEFAULT_SEED, cluster_dataset, model_to_json, raw_centroids
from .core import TariffLabError, load_dataset
from .regress import fit_dataset, fit_to_json, tariff_points
from .svg import bar_chart, cluster_chart, line_chart, scatter_chart
from .tariff_sim import TariffScenario, demand_shift

DEFAULT_SHOCK = 46.0
DEFAULT_HORIZON = 50


@dataclass
class ReportBundle:
    command: str
    run_id: str
    out_dir: Path
    inputs: dict[str, str] = field(default_factory=dict)
    outputs: list[tuple[str, str]] = field(default_factory=list)

    def add_input(self, label: str, path: Path):
        self.inputs[label] = hashlib.sha256(Path(path).read_bytes()).hexdigest()

    def write(self, name: str, text: str, kind: str):
        (self.out_dir / name).write_text(text, encoding="utf-8")
        self.outputs.append((name, kind))

    def write_json(self, name: str, obj):
        self.write(name, dump_json(obj), "json")

    def to_json(self) -> dict:
        return {
            "command": self.command,
            "run_id": self.run_id,
            "inputs": dict(sorted(self.inputs.items())),
            "outputs": [{"path": p, "kind": k} for p, k in self.outputs],
        }

    def finish(self) -> "ReportBundle":
        self.write_json("bundle.json", self.to_json())
        return self


def dump_json(obj) -> str:
    return json.dumps(obj, indent=2, allow_nan=False) + "\n"


def _bundle(command, out, run_id) -> ReportBundle:
    out = Path(out)
    out.mkdir(parents=True, exist_ok=True)
    run_id = run_id or dt.datetime.now(dt.timezone.utc).strftime("%Y%m%dT%H%M%SZ")
    return ReportBundle(command, run_id, out)


def cmd_regress(data, out, run_id=None) -> ReportBundle:
    bundle = _bundle("regress", out, run_id)
    bundle.add_input("data", data)
    dataset = load_dataset(data)
    fit = fit_dataset(dataset)
    bundle.write_json("fit.json", fit_to_json(fit))

    pts = [(r.name, x, y) for r, (x, y) in zip(dataset.records, tariff_points(dataset))]
    bundle.write("regression.svg", scatter_chart(
        pts,
        title="Tariffs charged to the USA vs. USA reciprocal tariffs",
        xlabel="Tariff charged to the USA (%)",
        ylabel="USA reciprocal tariff (%)",
        lines=[
            (1.0, 0.0, "#7f7f7f", True, "equal tariffs (y = x)"),
            (0.5, 0.0, "#1f77b4", False, "discounted (y = 0.5x)"),
            (fit.slope, fit.intercept, "#d62728", False, f"OLS fit (slope {fit.slope:.3f})"),
        ],
    ), "svg")

    exports = [(r.name, r.usa_reciprocal_tariff, r.export_value_usd_billions) for r in dataset.records]
    usable = [p for p in exports if p[2] is not None and p[2] > 0]
    dropped = [p[0] for p in exports if p not in usable]
    if dropped:
        warnings.warn(f"log-scale export plot drops countries without a positive export value: {dropped}")
    if usable:
        bundle.write("export_value.svg", scatter_chart(
            usable,
            title="USA reciprocal tariff vs. export value to the USA",
            xlabel="USA reciprocal tariff (%)",
            ylabel="Export value to the USA ($B, log scale)",
            log_y=True,
        ), "svg")
    return bundle.finish()


def cmd_cluster(data, out, k=DEFAULT_K, seed=DEFAULT_SEED, restarts=DEFAULT_RESTARTS,
                run_id=None, include_charged=False) -> ReportBundle:
    bundle = _bundle("cluster", out, run_id)
    bundle.add_input("data", data)
    dataset = load_dataset(data)
    model, points = cluster_dataset(dataset, k=k, seed=seed, restarts=restarts,
                                    include_charged=include_charged)
    payload = model_to_json(model, points)
    payload.update(seed=seed, restarts=restarts)
    bundle.write_json("clusters.json", payload)

    by_name = {p.country: p for p in points}
    cents = raw_centroids(model, points)
    groups = []
    for c in range(model.k):
        members = [by_name[n] for n in model.members(c)]
        label = f"Group {c + 1}: {model.labels[c]}"
        if members:
            label += f" ({cents[c][0]:.0f}%, {cents[c][1]:+.2f})"
        groups.append((label, [(p.country, p.raw_x, p.raw_y) for p in members], model.hulls[c]))
    bundle.write("clusters.svg", cluster_chart(
        groups,
        title=f"Country clusters with convex hulls (reciprocal tariff vs ECI, k={model.k})",
        xlabel="USA reciprocal tariff (%)",
        ylabel="Economic Complexity Index",
    ), "svg")
    return bundle.finish()


def _read_json(path) -> dict:
    try:
        obj = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise TariffLabError(f"{path}: invalid JSON: {exc}") from None
    if not isinstance(obj, dict):
        raise TariffLabError(f"{path}: expected a JSON object")
    return obj


def cmd_simulate(scenario, out, run_id=None) -> ReportBundle:
    bundle = _bundle("simulate", out, run_id)
    bundle.add_input("scenario", scenario)
    sc = TariffScenario.from_json(_read_json(scenario))
    proj = demand_shift(sc)
    bundle.write_json("projection.json", proj.to_json())

    names = [o.name for o in proj.origins]
    bundle.write("shares.svg", bar_chart(
        names,
        [("Before", [o.baseline_share for o in proj.origins]),
         ("After", [o.projected_share for o in proj.origins])],
        title="Share of US coffee imports before and after tariffs",
        ylabel="Share of US coffee imports (%)",
    ), "svg")

    focal = proj[proj.focal_origin]
    others = [o for o in proj.origins if o.name != proj.focal_origin]
    bundle.write("cost_index.svg", bar_chart(
        [o.name for o in others],
        [("Cost index", [o.cost_index for o in others])],
        title=f"Relative cost of coffee origins vs. {focal.name}",
        ylabel="Illustrative cost index (base 100)",
        reference=(focal.cost_index, f"{focal.name} ({focal.cost_index:.1f})"),
    ), "svg")
    print(f"focal loss {proj.focal_loss:.1f} points; consumer price change "
          f"{proj.weighted_price_change * 100:.1f}%", file=sys.stderr)
    return bundle.finish()


def load_cld_config(path=None):
    """Return ``(model, shock, horizon)`` from the ``cld`` block of a scenario JSON."""
    block = {}
    if path is not None:
        block = dict(_read_json(path).get("cld", {}))
    shock = float(block.pop("shock", DEFAULT_SHOCK))
    horizon = block.pop("horizon", DEFAULT_HORIZON)
    if not isinstance(horizon, int) or horizon < 1:
        raise TariffLabError(f"horizon: must be a positive integer, got {horizon!r}")
    if shock < 0:
        raise TariffLabError(f"shock: must be nonnegative, got {shock}")
    return cld_mod.CLDModel.from_json(block), shock, horizon


def cmd_cld(config, out, run_id=None) -> ReportBundle:
    bundle = _bundle("cld", out, run_id)
    if config is not None:
        bundle.add_input("scenario", config)
    model, shock, horizon = load_cld_config(config)
    states = cld_mod.simulate(model, shock, horizon)
    bundle.write("trajectory.csv", cld_mod.trajectory_csv(states), "csv")
    bundle.write("trajectory.svg", line_chart(
        [s.t for s in states],
        [("Tariff (%)", [s.tariff for s in states]),
         ("Trade volume (index)", [s.trade_volume for s in states])],
        title=f"Balancing loops after a {shock:g}-point tariff shock",
        xlabel="Step",
        ylabel="Level",
    ), "svg")
    return bundle.finish()


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tarifflab", description="Reciprocal tariff impact toolkit.")
    p.add_argument("command", choices=["regress", "cluster", "simulate", "cld"])
    p.add_argument("--data", help="country CSV (regress, cluster)")
    p.add_argument("--scenario", help="scenario JSON (simulate, cld)")
    p.add_argument("--k", type=int, default=DEFAULT_K)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--restarts", type=int, default=DEFAULT_RESTARTS)
    p.add_argument("--three-features", action="store_true",
                   help="cluster on tariff charged to the USA as well")
    p.add_argument("--out", default="out")
    p.add_argument("--run-id", help="pin the run id for reproducible bundles")
    return p


def _run(args) -> ReportBundle:
    if args.command in ("regress", "cluster") and not args.data:
        raise TariffLabError(f"{args.command} requires --data")
    if args.command == "simulate" and not args.scenario:
        raise TariffLabError("simulate requires --scenario")
    if args.command == "regress":
        return cmd_regress(args.data, args.out, args.run_id)
    if args.command == "cluster":
        return cmd_cluster(args.data, args.out, args.k, args.seed, args.restarts,
                           args.run_id, args.three_features)
    if args.command == "simulate":
        return cmd_simulate(args.scenario, args.out, args.run_id)
    return cmd_cld(args.scenario, args.out, args.run_id)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        try:
            bundle = _run(args)
        except (TariffLabError, OSError, ValueError) as exc:
            bundle = None
            error = exc
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    if bundle is None:
        print(f"error: {error}", file=sys.stderr)
        return 1
    for name, _ in bundle.outputs:
        print(bundle.out_dir / name)
    return 0


if __name__ == "__main__":
    sys.exit(main())
