"""Command-line front end.

Exit codes: 0 when every check passes, 1 when a check fails, 2 on bad input.
"""

from __future__ import annotations

import argparse
import os
import random
import sys
from typing import List, Optional

from . import homotopy as hc
from .exponents import exponent_report
from .filtration import (FiltrationError, adapted_model, cautious_filtration, check_delta_injective,
                         check_dnil_step_bound, classification_label, classify, filtration_mismatches,
                         naive_filtration)
from .io import ExpressionError, ParseError, parse_file, read_source, resolve_maps
from .lie import verify_jacobi_lemmas, verify_nonvanishing, verify_scaling, zeta
from .report import REFS, Report
from .weights import check_light_factor, check_weight_bounds, weight_data, weights


class InputError(Exception):
    pass


def _load(args):
    if not args.model:
        raise InputError("--model is required")
    try:
        text, label = read_source(args.model)
    except FileNotFoundError:
        raise InputError(f"{args.model}: no such file or bundled model") from None
    try:
        mf = parse_file(text)
    except ParseError as exc:
        raise InputError("\n".join(f"{label}:{ln}: {msg}" for ln, msg in exc.errors)) from None
    model = mf.model
    if args.truncate is not None:
        if args.truncate < 1:
            raise InputError("--truncate must be at least 1")
        model = model.restricted(args.truncate)
    return mf, model


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("SULLIVAN_SEED")
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise InputError(f"SULLIVAN_SEED must be an integer, got {env!r}") from None


def _validation_checks(report: Report, model) -> bool:
    v = model.validation
    report.add("d_squared", not v.d_squared, {k: str(e) for k, e in v.d_squared.items()}, REFS["d_squared"])
    report.add("minimality", not v.minimality, v.minimality, REFS["minimality"])
    report.add("nilpotence", not v.nilpotence, v.nilpotence, REFS["nilpotence"])
    if not v.ok:
        report.data["message"] = v.summary()
    return v.ok


def cmd_validate(args) -> Report:
    _, model = _load(args)
    r = Report("validate", model.name)
    if _validation_checks(r, model):
        r.data["tower"] = model.validation.tower_names()
    return r


def _require_valid(r: Report, model) -> bool:
    """Add validation checks; True if later stages can run."""
    if model.validation.ok:
        return True
    _validation_checks(r, model)
    return False


def cmd_classify(args) -> Report:
    _, model = _load(args)
    r = Report("classify", model.name)
    if not _require_valid(r, model):
        return r
    info = classify(model)
    table = cautious_filtration(model)
    r.data["classification"] = classification_label(info)
    r.data["nilpotency_class"] = info["nilpotency_class"]
    r.data["simply_connected"] = info["simply_connected"]
    r.data["coformal"] = info["coformal"]
    r.data["step_dimensions"] = {n: [s.dim for s in table.steps(n)] for n in table.degrees}
    r.add("classification", None, r.data["classification"], REFS["cautious"])
    return r


def cmd_filtration(args) -> Report:
    _, model = _load(args)
    r = Report("filtration", model.name)
    if not _require_valid(r, model):
        return r
    caut, naive = cautious_filtration(model), naive_filtration(model)
    r.data["cautious_steps"] = caut.describe()
    r.data["naive_steps"] = naive.describe()
    adapted = adapted_model(model)
    r.data["adapted_basis"] = {g.name: {"degree": g.degree, "step": g.step} for g in adapted.model.generators}
    mism = filtration_mismatches(model)
    r.add("naive_equals_cautious", not mism,
          [{"degree": n, "stage": J, "cautious": a, "naive": b} for n, J, a, b in mism],
          REFS["naive_equals_cautious"])
    d = check_delta_injective(model)
    r.add("delta_injective", d.ok, d.failures, REFS["delta_injective"])
    b = check_dnil_step_bound(model)
    r.add("dnil_step_bound", b.ok, b.failures,
          REFS["dnil_step_bound"] + ("; " + REFS["coformal_refinement"] if b.details.get("coformal") else ""))
    return r


def cmd_weights(args) -> Report:
    _, model = _load(args)
    r = Report("weights", model.name)
    if not _require_valid(r, model):
        return r
    data = weight_data(model)
    r.data["declared_weights"] = weights(model)
    r.data["adapted_weights"] = {g.name: {"degree": g.degree, "step": g.step, "weight": data.weight_of[g.name]}
                                 for g in data.basis.model.generators}
    rep = check_weight_bounds(model)
    sharp = rep.sharpest()
    r.data["sharpest_bounds"] = {k: {"bound": v.bound, "limit": v.limit, "weight": v.weight, "margin": v.margin}
                                 for k, v in sharp.items()}
    r.add("weight_bounds", rep.ok, [f"{b.generator}: {b.weight} > {b.limit} ({b.bound})" for b in rep.failures],
          REFS["weight_bounds"])
    light = check_light_factor(model)
    refuted = [k for k, v in light.items() if v is False]
    r.add("light_factor (conjectural, informational)", None, {"refuted_on": refuted}, REFS["light_factor"])
    return r


def cmd_bounds(args) -> Report:
    _, model = _load(args)
    r = Report("bounds", model.name)
    if not _require_valid(r, model):
        return r
    rep = exponent_report(model)
    r.data["classification"] = rep.classification
    r.data["upper_exponent"] = str(rep.upper.exponent)
    r.data["upper_formula"] = rep.upper.formula
    r.data["lower_exponent"] = str(rep.lower.exponent) if rep.lower else None
    r.data["applicable_upper"] = {c.column: str(c.exponent) for c in rep.applicable_upper}
    if rep.conjecture:
        r.data["conjecture"] = {"exponent": str(rep.conjecture.exponent), "flagged": True,
                                "note": rep.conjecture.note}
    r.data["flagged_alternatives"] = [{"kind": a.kind, "formula": a.formula, "exponent": str(a.exponent),
                                       "note": a.note} for a in rep.alternatives]
    r.data["per_n"] = rep.per_n
    r.add("exponents", None, {"upper": r.data["upper_exponent"], "lower": r.data["lower_exponent"]},
          REFS["exponents"])
    wb = check_weight_bounds(model)
    r.add("weight_bounds", wb.ok, [f"{b.generator}: {b.weight} > {b.limit} ({b.bound})" for b in wb.failures],
          REFS["weight_bounds"])
    return r


def cmd_homotopy_check(args) -> Report:
    mf, model = _load(args)
    r = Report("homotopy-check", model.name)
    if not _require_valid(r, model):
        return r
    seed = _seed(args)
    rng = random.Random(f"homotopy:{seed}:{model.name}")
    space = hc.IntervalAlgebra(hc.FreeDga(model))
    bad = []
    for _ in range(args.samples):
        u = hc.random_interval_element(rng, space, max_degree=model.max_degree + 1)
        if not hc.check_fundamental_theorems(u).ok:
            bad.append(str(u))
    r.add(f"fundamental_theorems ({args.samples} samples)", not bad, bad[:3], REFS["fundamental_theorems"])
    cocycle, roundtrip = [], []
    for i in range(3):
        data, zs = hc.obstruction_instance(rng, model)
        O = hc.obstruction_cochain(data)
        if hc.relative_cocycle_defects(data.eta, O):
            cocycle.append(i)
        bc = hc.solve_obstruction(data)
        if bc is None:
            roundtrip.append(f"instance {i}: obstruction does not vanish")
            continue
        chk = hc.check_extension(data, hc.extend_homotopy(data, bc))
        if not all(chk.values()):
            roundtrip.append(f"instance {i}: {sorted(k for k, v in chk.items() if not v)}")
    r.add("obstruction_cocycle", not cocycle, cocycle, REFS["obstruction"])
    r.add("extension_round_trip", not roundtrip, roundtrip, REFS["extension"])
    if mf.morphisms or mf.homotopies:
        try:
            morphisms, homotopies = resolve_maps(mf)
        except ParseError as exc:
            raise InputError(str(exc)) from None
        for name, phi in sorted(morphisms.items()):
            defects = phi.chain_map_defects()
            r.add(f"morphism {name} is a chain map", not defects, {k: str(v) for k, v in defects.items()},
                  REFS["artifact"])
            dil = hc.dilatation(phi)
            r.data.setdefault("dilatation", {})[name] = {"norms": dil.norms, "approx": dil.approx()}
        for name, H in sorted(homotopies.items()):
            defects = H.morphism.chain_map_defects()
            r.add(f"homotopy {name} is a chain map", not defects, {k: str(v) for k, v in defects.items()},
                  REFS["artifact"])
            r.data.setdefault("homotopies", {})[name] = {
                "start": {k: str(v) for k, v in H.start.images.items()},
                "end": {k: str(v) for k, v in H.end.images.items()},
                "dilatation": hc.dilatation(H).norms,
                "formal_length_T1": hc.formal_length(H).norms,
            }
    r.data["seed"] = seed
    return r


def cmd_whitehead(args) -> Report:
    c, k_max = args.c, args.max_k
    if c < 1 or k_max < 2:
        raise InputError("whitehead needs --c >= 1 and --max-k >= 2")
    r = Report("whitehead", f"c={c} k<={k_max}")
    for label, rep, ref in (("jacobi_lemmas", verify_jacobi_lemmas(k_max, c, seed=_seed(args)), "jacobi"),
                            ("nonvanishing", verify_nonvanishing(k_max, c), "nonvanishing"),
                            ("scaling_weight", verify_scaling(k_max, c), "scaling")):
        r.add(label, rep.ok, [f"{f.check} k={f.k} j={f.j}: {f.detail}" for f in rep.failures], REFS[ref])
    r.data["zeta"] = {k: zeta(k, c, c).expansion() for k in range(2, min(k_max, 4) + 1)}
    return r


def cmd_selftest(args) -> Report:
    from .suite import run_selftest

    return run_selftest(_seed(args))


COMMANDS = {
    "validate": (cmd_validate, "check d^2 = 0, minimality and nilpotence"),
    "classify": (cmd_classify, "nilpotency class, coformality, simple connectivity"),
    "filtration": (cmd_filtration, "cautious and naive filtrations and their lemmas"),
    "weights": (cmd_weights, "weights of generators and the weight bounds"),
    "bounds": (cmd_bounds, "filling-volume exponents for the model's class"),
    "homotopy-check": (cmd_homotopy_check, "interval-algebra identities, obstructions and file maps"),
    "whitehead": (cmd_whitehead, "bracket identities for the ζ classes"),
    "selftest": (cmd_selftest, "run the bundled acceptance suite"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sullivan", description="Exact checks on Sullivan minimal models.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--model", help="model file, or the name of a bundled model")
        p.add_argument("--json", action="store_true", help="emit the structured report as JSON")
        p.add_argument("--max-k", type=int, default=5, dest="max_k")
        p.add_argument("--c", type=int, default=2)
        p.add_argument("--seed", type=int, default=None, help="seed for randomized checks (default $SULLIVAN_SEED or 0)")
        p.add_argument("--truncate", type=int, default=None, help="drop generators above this degree")
        p.add_argument("--samples", type=int, default=200, help="random interval elements for homotopy-check")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    handler = COMMANDS[args.command][0]
    try:
        report = handler(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ExpressionError, FiltrationError, hc.HomotopyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(report.to_json() if args.json else report.to_text())
    return 0 if report.ok else 1


if __name__ == "__main__":
    sys.exit(main())
