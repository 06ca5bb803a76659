"""Command-line front end: JSON scenario configs in, CSV/JSON/SVG out.

Subcommands: curve, delta, tails, margins, counterexamples, synthetic-split.
Every run is a pure function of (config, seed): rerunning an identical
scenario reproduces byte-identical outputs.  Exit codes: 0 success, 2 config
errors, 3 numeric infeasibilities (no exact regime, infeasible tilt, ...).
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from pathlib import Path

import numpy as np

from . import classification as cls
from . import curves as cv
from . import delta as dl
from . import distributions as ds
from . import ensembles as es
from . import ldp
from . import losses as ls
from ._svg import polyline_chart

EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC = 0, 2, 3


class ConfigError(ValueError):
    pass


NUMERIC_ERRORS = (
    cv.NoExactRegimeError,
    cv.QuadratureError,
    ldp.TiltError,
    ldp.TauSignError,
    ds.NoMgfError,
    ls.DomainError,
    ls.NonSmoothLossError,
)


# ---------------------------------------------------------------------------
# config plumbing
# ---------------------------------------------------------------------------


def _load_config(path):
    try:
        with open(path) as fh:
            cfg = json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise ConfigError(f"cannot read config {path}: {e}") from e
    if not isinstance(cfg, dict):
        raise ConfigError("config must be a JSON object")
    return cfg


def _validate(cfg, allowed, required=()):
    unknown = set(cfg) - set(allowed)
    if unknown:
        raise ConfigError(f"unknown config fields: {sorted(unknown)}; allowed: {sorted(allowed)}")
    missing = set(required) - set(cfg)
    if missing:
        raise ConfigError(f"missing required config fields: {sorted(missing)}")
    return cfg


def _merged(args, defaults):
    """Config file fields, overridden by explicit CLI flags, over defaults."""
    cfg = dict(defaults)
    if args.config:
        cfg.update(_load_config(args.config))
    for key in ("seed", "reps", "kmax", "nmax"):
        val = getattr(args, key, None)
        if val is not None:
            cfg[key] = val
    cfg["out"] = args.out
    cfg["svg"] = bool(args.svg)
    return cfg


def _jsonable(obj):
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {k: _jsonable(v) for k, v in dataclasses.asdict(obj).items()}
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, float) and not np.isfinite(obj):
        return None if np.isnan(obj) else ("inf" if obj > 0 else "-inf")
    return obj


def _write_json(obj, path):
    with open(path, "w") as fh:
        json.dump(_jsonable(obj), fh, indent=2, sort_keys=True)
        fh.write("\n")


def _write_svg(path, series, title, xlabel, ylabel):
    with open(path, "w") as fh:
        fh.write(polyline_chart(series, title, xlabel, ylabel))


def _tail_csv(path, n, exact, asymptote):
    lines = ["n,exact,asymptote,ratio"]
    for i, nn in enumerate(n):
        e = exact[i]
        a = asymptote[i] if asymptote is not None else float("nan")
        r = a / e if e > 0 else float("nan")
        lines.append(f"{int(nn)},{e:.17g},{a:.17g},{r:.17g}")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def _curve_summary(curve, z=3.0):
    rep = cv.monotonicity_report(curve, z=z) if len(curve) >= 3 else None
    out = {
        "K": curve.K,
        "value": curve.value,
        "std_err": curve.std_err,
        "method": list(dict.fromkeys(curve.method)),
    }
    if rep is not None:
        out["monotonicity"] = {"verdict": rep.verdict, "K0": rep.K0}
    return out


# ---------------------------------------------------------------------------
# curve
# ---------------------------------------------------------------------------

_CURVE_KEYS = ("loss", "distribution", "structure", "fixed", "kmax", "reps",
               "seed", "method", "out", "svg")


def run_curve(cfg):
    _validate(cfg, _CURVE_KEYS, required=("loss",))
    loss = ls.loss_from_descriptor(cfg["loss"])
    structure = cfg.get("structure", "iid")
    kmax = int(cfg.get("kmax", 20))
    if structure == "randomly_reordered":
        if "fixed" not in cfg:
            raise ConfigError("randomly_reordered needs a 'fixed' prediction list")
        spec = es.randomly_reordered(cfg["fixed"])
        kmax = min(kmax, spec.K)
    else:
        if "distribution" not in cfg:
            raise ConfigError("missing 'distribution'")
        base = ds.distribution_from_descriptor(cfg["distribution"])
        spec = es.EnsembleSpec(base, structure, 3 if structure == "duplicate_third" else kmax)
    method = cfg.get("method", "auto")
    if method not in ("auto", "exact", "mc"):
        raise ConfigError("method must be auto, exact, or mc")

    curve = None
    if method in ("auto", "exact"):
        try:
            curve = cv.exact_curve(loss, spec, kmax)
        except cv.NoExactRegimeError:
            if method == "exact":
                raise
    if curve is None:
        curve = cv.estimate_curve_mc(loss, spec, kmax, int(cfg.get("reps", 10**5)),
                                     int(cfg.get("seed", 0)))

    out = Path(cfg["out"])
    out.mkdir(parents=True, exist_ok=True)
    curve.save_csv(out / "curve.csv")
    summary = {"command": "curve", "loss": loss.descriptor(),
               "structure": structure, "curve": _curve_summary(curve),
               "files": ["curve.csv"]}
    if cfg.get("svg"):
        _write_svg(out / "plot.svg", [("expected loss", curve.K, curve.value)],
                   f"{loss.name}: expected loss vs K", "K", "E[L]")
        summary["files"].append("plot.svg")
    _write_json(summary, out / "summary.json")
    return summary


# ---------------------------------------------------------------------------
# delta
# ---------------------------------------------------------------------------

_DELTA_KEYS = ("loss", "distribution", "kmax", "seed", "out", "svg")


def run_delta(cfg):
    _validate(cfg, _DELTA_KEYS, required=("loss", "distribution"))
    loss = ls.loss_from_descriptor(cfg["loss"])
    base = ds.distribution_from_descriptor(cfg["distribution"])
    kmax = int(cfg.get("kmax", 100))
    exp = dl.delta_expansion(loss, base, seed=int(cfg.get("seed", 0)))
    Ks = np.arange(1, kmax + 1)
    pred = dl.delta_predict(exp, Ks)
    pred_curve = cv.LossCurve(Ks, pred, np.zeros(kmax), ["delta"] * kmax)

    summary = {"command": "delta", "loss": loss.descriptor(),
               "expansion": exp.to_json_dict(), "files": ["delta.csv"]}
    out = Path(cfg["out"])
    out.mkdir(parents=True, exist_ok=True)
    pred_curve.save_csv(out / "delta.csv")

    series = [("delta prediction", Ks, pred)]
    try:
        quad = cv.exact_curve(loss, es.iid(base, kmax), kmax)
        quad.save_csv(out / "quadrature.csv")
        summary["files"].append("quadrature.csv")
        resid = np.abs(pred - quad.value)
        summary["max_abs_residual"] = float(resid.max())
        series.append(("exact (quadrature)", quad.K, quad.value))
    except cv.NoExactRegimeError:
        summary["max_abs_residual"] = None

    mu = np.atleast_1d(base.mean)
    point = float(mu[0]) if loss.arity == 1 else mu
    summary["hessian_direction"] = dl.hessian_direction(loss, point)
    if cfg.get("svg"):
        _write_svg(out / "plot.svg", series, f"{loss.name}: delta expansion vs exact", "K", "E[L]")
        summary["files"].append("plot.svg")
    _write_json(summary, out / "summary.json")
    return summary


# ---------------------------------------------------------------------------
# tails
# ---------------------------------------------------------------------------

_TAILS_KEYS = ("distribution", "epsilon", "nmax", "strict", "seed", "out", "svg")


def _exact_tail_sequence(base, epsilon, nmax, strict=False):
    if isinstance(base, (ds.Gaussian, ds.Cauchy, ds.Levy)):
        loc = base.mu if isinstance(base, ds.Gaussian) else (
            base.loc if isinstance(base, ds.Cauchy) else 0.0)
        t = loc + epsilon
        vals = np.array([ds.tail_probability(base, n, t, strict) for n in range(1, nmax + 1)])
        return ldp.TailSequence(np.arange(1, nmax + 1), vals, {"threshold": t}), t
    lat = base.as_lattice() if isinstance(base, ds.Bernoulli) else base
    if not isinstance(lat, ds.FiniteLattice):
        raise ds.NoMgfError(f"no exact tail sequence for family {base.family!r}")
    t = lat.mean + epsilon
    return ldp.lattice_tail_sequence(lat, t, nmax, strict), t


def run_tails(cfg):
    _validate(cfg, _TAILS_KEYS, required=("distribution", "epsilon"))
    base = ds.distribution_from_descriptor(cfg["distribution"])
    epsilon = float(cfg["epsilon"])
    nmax = int(cfg.get("nmax", 200))
    strict = bool(cfg.get("strict", False))
    seq, threshold = _exact_tail_sequence(base, epsilon, nmax, strict)

    asym = None
    sol = None
    variant = None
    try:
        sol = ldp.solve_tilt(base, threshold)
        if sol.lattice is not None:
            variant = "lattice_strict" if strict else "lattice_geq"
        else:
            variant = "nonlattice"
        asym = np.full(nmax, np.nan)
        for i, n in enumerate(seq.n):
            try:
                asym[i] = ldp.petrov_asymptote(sol, int(n), variant)
            except ValueError:
                pass  # off-lattice n stays nan
    except (ldp.TiltError, ds.NoMgfError):
        pass

    verdict = ldp.eventual_decrease_verdict(base, epsilon)

    out = Path(cfg["out"])
    out.mkdir(parents=True, exist_ok=True)
    _tail_csv(out / "tails.csv", seq.n, seq.values, asym)
    seq_verdict, onset = cv.classify_sequence(seq.values)
    summary = {
        "command": "tails",
        "distribution": base.descriptor(),
        "epsilon": epsilon,
        "threshold": threshold,
        "variant": variant,
        "tilt": None if sol is None else {"h": sol.h, "rate": sol.rate, "rho": sol.rho,
                                          "sigma_h": sol.sigma_h},
        "assumptions": {"verdict": verdict.verdict, "violated": verdict.violated},
        "sequence_verdict": seq_verdict,
        "onset_n": None if onset is None else int(seq.n[onset]),
        "files": ["tails.csv"],
    }
    if cfg.get("svg"):
        series = [("exact", seq.n, seq.values)]
        if asym is not None and np.isfinite(asym).any():
            m = np.isfinite(asym)
            series.append(("asymptote", seq.n[m], asym[m]))
        _write_svg(out / "plot.svg", series, "tail probability of the mean", "n", "P")
        summary["files"].append("plot.svg")
    _write_json(summary, out / "summary.json")
    return summary


# ---------------------------------------------------------------------------
# margins
# ---------------------------------------------------------------------------

_MARGINS_KEYS = ("scores", "true_class", "kmax", "reps", "seed", "method", "out", "svg")


def run_margins(cfg):
    _validate(cfg, _MARGINS_KEYS, required=("scores",))
    sc = dict(cfg["scores"])
    _validate(sc, ("mean", "cov"), required=("mean",))
    mean = np.asarray(sc["mean"], dtype=float)
    cov = np.asarray(sc.get("cov", np.eye(mean.size).tolist()), dtype=float)
    model = cls.MarginModel(ds.MultivariateGaussian(mean, cov), int(cfg.get("true_class", 0)))
    kmax = int(cfg.get("kmax", 30))
    method = cfg.get("method", "auto")
    if method not in ("auto", "mc", "exact_gaussian"):
        raise ConfigError("method must be auto, mc, or exact_gaussian")

    report = cls.assumption_classify(model)
    files = []
    out = Path(cfg["out"])
    out.mkdir(parents=True, exist_ok=True)
    summary = {"command": "margins", "true_class": model.true_class,
               "n_classes": model.n_classes,
               "assumption": {"verdict": report.verdict,
                              "expected_margins": report.expected_margins,
                              "notes": report.notes},
               "files": files}
    if report.univariate is not None:
        summary["assumption"]["univariate"] = {"verdict": report.univariate.verdict,
                                               "violated": report.univariate.violated}
    if report.cone is not None:
        summary["assumption"]["cone"] = report.cone

    series = []
    if method in ("auto", "exact_gaussian") and model.n_classes <= 3:
        exact = cls.error_curve(model, kmax, method="exact_gaussian")
        exact.save_csv(out / "error_exact.csv")
        files.append("error_exact.csv")
        summary["exact_curve"] = _curve_summary(exact)
        series.append(("exact error", exact.K, exact.value))
    if method in ("auto", "mc"):
        mc = cls.error_curve(model, kmax, method="mc", R=int(cfg.get("reps", 10**5)),
                             seed=int(cfg.get("seed", 0)))
        mc.save_csv(out / "error_mc.csv")
        files.append("error_mc.csv")
        summary["mc_curve"] = _curve_summary(mc)
        series.append(("mc error", mc.K, mc.value))
    if cfg.get("svg"):
        _write_svg(out / "plot.svg", series, "classification error vs K", "K", "error")
        files.append("plot.svg")
    _write_json(summary, out / "summary.json")
    return summary


# ---------------------------------------------------------------------------
# counterexamples
# ---------------------------------------------------------------------------

_COUNTER_KEYS = ("nmax", "out", "svg", "seed")


def run_counterexamples(cfg):
    _validate(cfg, _COUNTER_KEYS)
    nmax = int(cfg.get("nmax", 200))
    out = Path(cfg["out"])
    out.mkdir(parents=True, exist_ok=True)
    files = []
    cases = {}

    # 1. Condorcet: Bernoulli(0.35) votes against the majority threshold 1/2
    seq = ldp.bernoulli_sequence(0.35, 0.15, nmax)
    _tail_csv(out / "condorcet-binomial.csv", seq.n, seq.values, None)
    files.append("condorcet-binomial.csv")
    verdict, _ = cv.classify_sequence(seq.values)
    odd = seq.values[::2]
    cases["condorcet_binomial"] = {
        "verdict": verdict,
        "p": 0.35, "epsilon": 0.15,
        "odd_subsequence_decreasing": bool(np.all(np.diff(odd) < 0)),
        "non_monotone_steps": int(seq.non_monotone_steps.size),
    }

    # 2. mass restoration at (mu, eps) = (0.55, 0.1): atom at the threshold
    summ = ldp.mass_restoration_summary(0.55, 0.1, nmax=nmax)
    mseq = summ["sequence"]
    sol = ldp.solve_tilt(summ["lattice"], summ["threshold"])
    asym = np.array([ldp.petrov_asymptote(sol, int(n), "lattice_geq") for n in mseq.n])
    _tail_csv(out / "mass-restored.csv", mseq.n, mseq.values, asym)
    files.append("mass-restored.csv")
    onset = mseq.first_strict_decrease_onset()
    conditions_ok = bool(summ["verdict"]) and bool(np.all(np.diff(mseq.values[onset - 1:]) < 0))
    cases["mass_restored"] = {
        "verdict": "eventually_decreasing" if conditions_ok else "assumptions_violated",
        "K0": onset,
        "atom_mass": summ["atom_mass"],
        "effective_mean": summ["effective_mean"],
        "mean_preserved": summ["mean_preserved"],
        "assumptions_violated": summ["verdict"].violated,
    }

    # 3. one-sided stable growth (levy) and 4. Cauchy constancy
    for fam, eps in (("levy", 1.0), ("cauchy", 1.0)):
        sseq = ldp.stable_counterexample(fam, eps, nmax)
        _tail_csv(out / f"{fam}.csv", sseq.n, sseq.values, None)
        files.append(f"{fam}.csv")
        v, _ = cv.classify_sequence(sseq.values, tol=1e-15)
        cases[fam] = {"verdict": v, "epsilon": eps,
                      "p1": float(sseq.values[0]),
                      "p_last": float(sseq.values[-1])}

    summary = {"command": "counterexamples", "nmax": nmax, "cases": cases, "files": files}
    if cfg.get("svg"):
        series = [("condorcet", seq.n, seq.values), ("mass-restored", mseq.n, mseq.values)]
        _write_svg(out / "plot.svg", series, "tail sequences", "n", "p_n")
        files.append("plot.svg")
    _write_json(summary, out / "summary.json")
    return summary


# ---------------------------------------------------------------------------
# synthetic-split
# ---------------------------------------------------------------------------

_SPLIT_KEYS = ("n_items", "n_correct", "n_zero", "kmax", "reps", "seed",
               "margin_range", "sigma", "method", "out", "svg")


def generate_items(n_items, n_correct, seed, margin_range=(0.1, 0.9), sigma=1.0, n_zero=0):
    """Two-class Gaussian score models with signed expected margins.

    ``n_correct`` items get a positive expected margin drawn uniformly from
    margin_range, ``n_zero`` get exactly zero margin (mixed bucket), and the
    rest get a negative margin."""
    if n_correct + n_zero > n_items:
        raise ConfigError("n_correct + n_zero cannot exceed n_items")
    rng = ds.stream_rng(seed, stream=977)
    lo, hi = margin_range
    models = []
    for i in range(n_items):
        if i < n_correct:
            m = rng.uniform(lo, hi)
        elif i < n_correct + n_zero:
            m = 0.0
        else:
            m = -rng.uniform(lo, hi)
        mean = np.array([0.5 + m / 2.0, 0.5 - m / 2.0])
        cov = (sigma**2 / 2.0) * np.eye(2)
        models.append(cls.MarginModel(ds.MultivariateGaussian(mean, cov), 0))
    return models


def _average_curves(curve_list):
    """Mean of item curves; independent items add variances."""
    K = curve_list[0].K
    vals = np.mean([c.value for c in curve_list], axis=0)
    ses = np.sqrt(np.sum([c.std_err**2 for c in curve_list], axis=0)) / len(curve_list)
    dses = None
    if all(c.diff_std_err is not None for c in curve_list):
        dses = np.sqrt(np.sum([c.diff_std_err**2 for c in curve_list], axis=0)) / len(curve_list)
    method = curve_list[0].method
    return cv.LossCurve(K, vals, ses, list(method), {"items": len(curve_list)}, dses)


def _item_xent_exact(model, kmax, tol=1e-10):
    """E[softplus(-margin mean)] per K: cross-entropy after softmax, exactly."""
    mdist = model.margin_distribution
    m, s2 = float(mdist.mean[0]), float(mdist.cov[0, 0])
    f = lambda x: np.logaddexp(0.0, -x)  # noqa: E731
    vals = np.array([cv.gauss_hermite_expectation(f, m, s2 / K, tol) for K in range(1, kmax + 1)])
    Ks = np.arange(1, kmax + 1)
    return cv.LossCurve(Ks, vals, np.zeros(kmax), ["quadrature"] * kmax)


def synthetic_split(items, kmax, method="mc", reps=2000, seed=0):
    """Per-item curves averaged inside assumption buckets.

    Returns a dict with error and cross-entropy curves for the overall,
    correct, and incorrect panels, plus the mixed-item indices (excluded
    from the two directional panels, as the theory is silent there)."""
    buckets = {"correct": [], "incorrect": [], "mixed": []}
    err_curves, xent_curves = [], []
    for i, model in enumerate(items):
        verdict = cls.assumption_classify(model).verdict
        key = {"correct": "correct", "completely_incorrect": "incorrect"}.get(verdict, "mixed")
        buckets[key].append(i)
        if method == "exact":
            err_curves.append(cls.error_curve(model, kmax, method="exact_gaussian"))
            xent_curves.append(_item_xent_exact(model, kmax))
        else:
            # independent per-item seeds: averaged standard errors assume it
            s_err = int(ds.stream_rng(seed, stream=2 * i).integers(2**62))
            s_xent = int(ds.stream_rng(seed, stream=2 * i + 1).integers(2**62))
            err_curves.append(cls.error_curve(model, kmax, method="mc", R=reps,
                                              seed=s_err, chunk=reps))
            xent = cv.estimate_curve_mc(ls.CrossEntropyLogitsLoss(0, 2),
                                        es.iid(model.score_distribution, kmax),
                                        kmax, reps, s_xent, chunk=reps)
            xent_curves.append(xent)
    panels = {}
    for name, idx in (("overall", list(range(len(items)))),
                      ("correct", buckets["correct"]),
                      ("incorrect", buckets["incorrect"])):
        if not idx:
            continue
        panels[f"error_{name}"] = _average_curves([err_curves[i] for i in idx])
        panels[f"xent_{name}"] = _average_curves([xent_curves[i] for i in idx])
    return {"panels": panels, "buckets": buckets}


def run_synthetic_split(cfg):
    _validate(cfg, _SPLIT_KEYS)
    n_items = int(cfg.get("n_items", 100))
    n_correct = int(cfg.get("n_correct", 80))
    n_zero = int(cfg.get("n_zero", 0))
    kmax = int(cfg.get("kmax", 40))
    seed = int(cfg.get("seed", 0))
    method = cfg.get("method", "mc")
    if method not in ("mc", "exact"):
        raise ConfigError("method must be mc or exact")
    items = generate_items(n_items, n_correct, seed,
                           tuple(cfg.get("margin_range", (0.1, 0.9))),
                           float(cfg.get("sigma", 1.0)), n_zero)
    result = synthetic_split(items, kmax, method, int(cfg.get("reps", 2000)), seed)

    out = Path(cfg["out"])
    out.mkdir(parents=True, exist_ok=True)
    files = []
    summary = {"command": "synthetic-split", "method": method,
               "n_items": n_items,
               "bucket_sizes": {k: len(v) for k, v in result["buckets"].items()},
               "mixed_items": result["buckets"]["mixed"],
               "panels": {}, "files": files}
    for name, curve in result["panels"].items():
        fn = f"{name}.csv"
        curve.save_csv(out / fn)
        files.append(fn)
        summary["panels"][name] = _curve_summary(curve)
    if cfg.get("svg"):
        err_series = [(n, c.K, c.value) for n, c in result["panels"].items() if n.startswith("error")]
        xent_series = [(n, c.K, c.value) for n, c in result["panels"].items() if n.startswith("xent")]
        _write_svg(out / "error_panels.svg", err_series, "0/1 error panels", "K", "error")
        _write_svg(out / "xent_panels.svg", xent_series, "cross-entropy panels", "K", "xent")
        files.extend(["error_panels.svg", "xent_panels.svg"])
    _write_json(summary, out / "summary.json")
    return summary


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

_RUNNERS = {
    "curve": run_curve,
    "delta": run_delta,
    "tails": run_tails,
    "margins": run_margins,
    "counterexamples": run_counterexamples,
    "synthetic-split": run_synthetic_split,
}


def run_scenario(config):
    """Run one scenario from a config dict carrying its own "command" field.

    Returns the summary dict that the matching subcommand writes out."""
    cfg = dict(config)
    command = cfg.pop("command", None)
    if command not in _RUNNERS:
        raise ConfigError(f"unknown command {command!r}; known: {sorted(_RUNNERS)}")
    cfg.setdefault("out", ".")
    return _RUNNERS[command](cfg)


def _build_parser():
    p = argparse.ArgumentParser(prog="ensemblelab",
                                description="expected-loss curves of averaged ensembles")
    sub = p.add_subparsers(dest="command", required=True)
    for name in _RUNNERS:
        sp = sub.add_parser(name)
        sp.add_argument("--config", type=str, default=None, help="JSON scenario config")
        sp.add_argument("--seed", type=int, default=None)
        sp.add_argument("--reps", type=int, default=None)
        sp.add_argument("--kmax", type=int, default=None)
        sp.add_argument("--nmax", type=int, default=None)
        sp.add_argument("--out", type=str, default=".", help="output directory")
        sp.add_argument("--svg", action="store_true", help="also write an SVG chart")
    return p


def main(argv=None):
    args = _build_parser().parse_args(argv)
    try:
        _RUNNERS[args.command](_merged(args, {}))
    except ConfigError as e:
        print(f"config error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except NUMERIC_ERRORS as e:
        print(f"numeric error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_NUMERIC
    except (ValueError, KeyError, TypeError) as e:
        # bad parameter values inside otherwise well-formed configs
        print(f"config error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_CONFIG
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
