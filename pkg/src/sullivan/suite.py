"""The bundled acceptance suite behind ``sullivan selftest``."""

from __future__ import annotations

import random
from typing import Dict, List

from . import homotopy as hc
from .exponents import exponent_report_for, flagged_alternatives, lower_cells, upper_cells
from .filtration import (check_delta_injective, check_dnil_step_bound, filtration_mismatches, is_coformal,
                         nilpotency_class)
from .io import FIXTURES, ParseError, bundled_models, data_path, parse_model
from .lie import verify_jacobi_lemmas, verify_nonvanishing, verify_scaling
from .model import MinimalModel
from .report import REFS, Report
from .sampler import random_models
from .weights import check_weight_bounds

CORPUS_SIZE = 100
INTERVAL_SAMPLES = 200


def fixture_outcome(name: str):
    """(exit code, message) the validator produces on a bundled failure fixture."""
    text = data_path(f"fixtures/{name}").read_text(encoding="utf-8")
    try:
        model = parse_model(text)
    except ParseError as exc:
        return 2, str(exc)
    report = model.validation
    return (0 if report.ok else 1), report.summary()


def criterion_validation(models: Dict[str, MinimalModel]) -> Report:
    r = Report("validation")
    bad = [name for name, m in models.items() if not m.validation.ok]
    r.add("bundled models are valid", not bad, bad, REFS["minimality"])
    for name, (code, text) in sorted(FIXTURES.items()):
        got_code, msg = fixture_outcome(name)
        r.add(f"fixture {name} fails with '{text}'", got_code == code and text in msg,
              {"exit": got_code, "message": msg}, REFS["artifact"])
    return r


def criterion_filtrations(models: List[MinimalModel]) -> Report:
    r = Report("filtrations")
    bad = {}
    for m in models:
        mism = filtration_mismatches(m)
        if mism:
            bad[m.name] = [{"degree": n, "stage": J, "cautious": a, "naive": b} for n, J, a, b in mism]
    r.add("naive filtration equals cautious filtration", not bad,
          {"failing_models": len(bad), "of": len(models), "examples": dict(sorted(bad.items())[:3])},
          REFS["naive_equals_cautious"])
    return r


def criterion_steps(models: List[MinimalModel]) -> Report:
    r = Report("steps")
    delta = {m.name: check_delta_injective(m).failures for m in models}
    dnil = {m.name: check_dnil_step_bound(m).failures for m in models}
    delta = {k: v for k, v in delta.items() if v}
    dnil = {k: v for k, v in dnil.items() if v}
    r.add("delta injective", not delta, delta, REFS["delta_injective"])
    coformal = sum(1 for m in models if is_coformal(m))
    r.add("d_nil block bound and coformal refinement", not dnil, {"failures": dnil, "coformal_models": coformal},
          REFS["dnil_step_bound"])
    return r


def criterion_weights(models: List[MinimalModel]) -> Report:
    r = Report("weights")
    bad = {}
    lines = 0
    for m in models:
        rep = check_weight_bounds(m)
        lines += len(rep.lines)
        if not rep.ok:
            bad[m.name] = [f"{b.generator}: weight {b.weight} > {b.limit} ({b.bound})" for b in rep.failures]
    r.add("weight bounds", not bad, {"failures": bad, "comparisons": lines}, REFS["weight_bounds"])
    return r


def criterion_exponents() -> Report:
    r = Report("exponents")
    cells = {}
    ok = True
    expected_upper = {"simply_connected": lambda n, c: 2 * n, "simple": lambda n, c: 2 * n + 1,
                      "c_step": lambda n, c: (4 * c - 1) * n, "coformal": lambda n, c: (c + 1) * n}
    expected_lower = {"simply_connected": lambda n, c: 2 * (n - 1), "coformal": lambda n, c: (c + 1) * (n - 1)}
    for c in range(1, 5):
        up, low = upper_cells(c), lower_cells(c)
        alts = flagged_alternatives(c)
        for n in range(2, 6):
            for col, fn in expected_upper.items():
                ok &= up[col].exponent(n) == fn(n, c)
            for col, fn in expected_lower.items():
                ok &= low[col].exponent(n) == fn(n, c)
            ok &= alts[0].exponent(n) == (c - 1) * (n - 1) and alts[0].flagged
            ok &= exponent_report_for(False, c, False).conjecture.exponent(n) == 3 * n * c
        cells[c] = {**{f"upper {k}": str(v.exponent) for k, v in up.items()},
                    **{f"lower {k}": str(v.exponent) for k, v in low.items()},
                    "flagged lower coformal": str(alts[0].exponent)}
    r.add("exponent table on (n, c) in 2..5 x 1..4", ok, cells, REFS["exponents"])
    return r


def criterion_interval(models: Dict[str, MinimalModel], seed: int) -> Report:
    r = Report("interval")
    bad = {}
    for name, m in models.items():
        rng = random.Random(f"interval:{seed}:{name}")
        space = hc.IntervalAlgebra(hc.FreeDga(m))
        for i in range(INTERVAL_SAMPLES):
            u = hc.random_interval_element(rng, space, max_degree=m.max_degree + 1)
            if not hc.check_fundamental_theorems(u).ok:
                bad.setdefault(name, []).append(str(u))
    r.add(f"fundamental theorems on {INTERVAL_SAMPLES} samples per model", not bad, bad,
          REFS["fundamental_theorems"])
    return r


def worked_relative_example():
    """φ(x) = u and ψ(x) = 2u into ∧(u), μ: ∧(u) -> Q; the obstruction is (u, 0)."""
    U = MinimalModel.build("U", [("u", 2)], {}, 4)
    P = MinimalModel.build("point", [], {}, 4)
    X = MinimalModel.build("X", [("x", 2)], {}, 4)
    CU, CP = hc.FreeDga(U), hc.FreeDga(P)
    mu = hc.DgaMorphism(U, CP, {"u": P.algebra.zero()}, "mu")
    phi = hc.DgaMorphism(X, CU, {"x": U.gen("u")}, "phi")
    psi = hc.DgaMorphism(X, CU, {"x": U.gen("u").scale(2)}, "psi")
    Phi = hc.AlgebraicHomotopy(hc.DgaMorphism(X, hc.IntervalAlgebra(CU), {}))
    space = hc.IntervalAlgebra(CP)
    chi = hc.AlgebraicHomotopy(hc.DgaMorphism(X, space, {"x": space.zero()}))
    return hc.relative_obstruction(phi, psi, Phi, chi, mu), mu, U


def criterion_obstruction(models: Dict[str, MinimalModel], seed: int, per_model: int = 3) -> Report:
    r = Report("obstruction")
    cocycle_bad, ext_bad = {}, {}
    instances = 0
    for name, m in models.items():
        rng = random.Random(f"obstruction:{seed}:{name}")
        for _ in range(per_model):
            data, _ = hc.obstruction_instance(rng, m)
            instances += 1
            O = hc.obstruction_cochain(data)
            if hc.relative_cocycle_defects(data.eta, O):
                cocycle_bad.setdefault(name, 0)
                cocycle_bad[name] += 1
            bc = hc.solve_obstruction(data)
            if bc is None:
                ext_bad.setdefault(name, []).append("unsolvable")
                continue
            ext = hc.extend_homotopy(data, bc)
            chk = hc.check_extension(data, ext)
            if not all(chk.values()):
                ext_bad.setdefault(name, []).append({k: v for k, v in chk.items() if not v})
    r.add(f"obstruction cochains are relative cocycles ({instances} instances)", not cocycle_bad, cocycle_bad,
          REFS["obstruction"])
    r.add("extended homotopies round-trip their endpoints", not ext_bad, ext_bad, REFS["extension"])
    rel, mu, U = worked_relative_example()
    a, b = rel.cochain["x"]
    ok = a == U.gen("u") and not b and not rel.vanishes and not hc.relative_cocycle_defects(mu, rel.cochain)
    r.add("worked example: obstruction u is non-vanishing", ok,
          {"obstruction": [str(a), str(b)], "vanishes": rel.vanishes, "truncation": rel.truncation},
          REFS["relative_obstruction"])
    return r


def criterion_whitehead(k_max: int = 6, c_values=(1, 2, 3)) -> Report:
    r = Report("whitehead")
    for c in c_values:
        for label, rep in (("Jacobi lemmas", verify_jacobi_lemmas(k_max, c)),
                           ("nonvanishing", verify_nonvanishing(k_max, c)),
                           ("scaling weight", verify_scaling(k_max, c))):
            ref = {"Jacobi lemmas": "jacobi", "nonvanishing": "nonvanishing", "scaling weight": "scaling"}[label]
            r.add(f"{label} c={c} k<={k_max}", rep.ok,
                  [f"{f.check} k={f.k} j={f.j}: {f.detail}" for f in rep.failures] or {"checks": rep.checks},
                  REFS[ref])
    return r


def run_selftest(seed: int) -> Report:
    models = bundled_models()
    corpus = random_models(CORPUS_SIZE, seed=seed)
    report = Report("selftest", f"seed {seed}")
    parts = [
        ("1 validation", criterion_validation(models)),
        ("2 filtrations", criterion_filtrations(list(models.values()) + corpus)),
        ("3 steps", criterion_steps(corpus)),
        ("4 weights", criterion_weights(corpus)),
        ("5 exponents", criterion_exponents()),
        ("6 interval", criterion_interval(models, seed)),
        ("7 obstruction", criterion_obstruction(models, seed)),
        ("8 whitehead", criterion_whitehead()),
    ]
    summary = {}
    for label, part in parts:
        report.extend(part, f"[{label}] ")
        summary[label] = part.status
    report.data["criteria"] = summary
    report.data["corpus"] = {"size": CORPUS_SIZE, "seed": seed,
                             "max_class": max(nilpotency_class(m) for m in corpus)}
    return report
