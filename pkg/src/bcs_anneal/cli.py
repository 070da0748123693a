"""Command-line front end.

Exit codes: 0 ok, 2 invalid input, 3 capacity exceeded, 4 invariant failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

import numpy as np

from . import analytics, gibbs, markov, qgroup
from .config import COMMANDS, MODELS, RunConfig, ValidationError
from .figures import FIGURES, _pmap
from .gibbs import CapacityError, GibbsLaw
from .io import dumps, evolution_payload, fmt, trace_rows, write_csv, write_json
from .markov import MAX_SPINS
from .propagate import READOUTS, PropagationError, propagate
from .sector import build_sector, to_arrows, to_bitstring
from .spectrum import DENSE_CAP, classify_minima, spectrum_scan
from .verify import run_checks

EXIT_OK, EXIT_VALIDATION, EXIT_CAPACITY, EXIT_INVARIANT = 0, 2, 3, 4
DEFAULT_FORMAT = {"evolve": "json"}


class InvariantFailure(RuntimeError):
    pass


def _g_list(text: str) -> list[float]:
    try:
        return [float(v) for v in text.replace(",", " ").split()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad g list {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, default=12, help="number of spins")
    common.add_argument("--two-sz", type=int, default=0, help="twice the total magnetization")
    gg = common.add_mutually_exclusive_group()
    gg.add_argument("--g", type=float, help="coupling")
    gg.add_argument("--g-list", type=_g_list, default=[], help="comma separated couplings")
    common.add_argument("--model", choices=MODELS, default="bcs")
    lv = common.add_mutually_exclusive_group()
    lv.add_argument("--seed", type=int, default=7, help="seed for the random level recipe")
    lv.add_argument("--levels-file", help="ascending levels, one per line")
    lv.add_argument("--equidistant", action="store_true", help="use eps_j = j/N")
    common.add_argument("--t0", type=float, default=1e-3)
    common.add_argument("--t1", type=float, default=1e3)
    common.add_argument("--tol", type=float, default=1e-8)
    common.add_argument("--out", help="output file (directory for 'figure'); stdout if omitted")
    common.add_argument("--format", choices=("csv", "json"))
    common.add_argument("--error-json", action="store_true", help="print errors as JSON on stderr")

    p = argparse.ArgumentParser(prog="bcs-anneal", description="Annealing with the driven BCS model.")
    sub = p.add_subparsers(dest="command", required=True)
    s = sub.add_parser("spectrum", parents=[common], help="instantaneous spectrum and gap minima")
    s.add_argument("--points", type=int, default=200)
    s.add_argument("--refine", type=int, default=None, metavar="K", help="refine only the K smallest minima")
    e = sub.add_parser("evolve", parents=[common], help="integrate the Schrodinger equation")
    e.add_argument("--readout", choices=sorted(READOUTS), default="asymptotic")
    e.add_argument("--samples", type=int, default=200)
    e.add_argument("--min-prob", type=float, default=0.0, help="drop smaller final probabilities from JSON")
    sub.add_parser("gibbs", parents=[common], help="final microstate law by enumeration")
    sub.add_parser("eta-dist", parents=[common], help="distribution of the accuracy eta")
    sub.add_parser("entropy", parents=[common], help="entropy of the final law")
    sub.add_parser("qgroup", parents=[common], help="Yang-Baxter and monodromy checks")
    v = sub.add_parser("verify", parents=[common], help="bundled invariant checks")
    v.add_argument("--check", action="append", help="run only the named check")
    f = sub.add_parser("figure", parents=[common], help="data tables for a figure")
    f.add_argument("--id", dest="figure_id", required=True, choices=sorted(FIGURES))
    return p


def config_from_args(args) -> RunConfig:
    extra = {
        k: getattr(args, k)
        for k in ("points", "refine", "samples", "min_prob", "check")
        if hasattr(args, k)
    }
    return RunConfig(
        command=args.command,
        n=args.n,
        two_sz=args.two_sz,
        g=args.g,
        g_list=list(args.g_list),
        model=args.model,
        seed=args.seed,
        levels_file=args.levels_file,
        equidistant=args.equidistant,
        t0=args.t0,
        t1=args.t1,
        tol=args.tol,
        readout=getattr(args, "readout", "asymptotic"),
        out=args.out,
        format=args.format or DEFAULT_FORMAT.get(args.command, "csv"),
        figure_id=getattr(args, "figure_id", None),
        extra=extra,
    )


def _need_g(cfg: RunConfig) -> list[float]:
    gs = cfg.couplings
    if not gs:
        raise ValidationError(f"'{cfg.command}' needs --g or --g-list")
    return gs


def _emit(cfg: RunConfig, header, rows, payload=None):
    """Write one table (or JSON payload) to ``cfg.out`` or stdout."""
    meta = cfg.as_dict()
    if cfg.format == "json":
        payload = payload if payload is not None else [dict(zip(header, r)) for r in rows]
        if cfg.out:
            write_json(cfg.out, payload, meta)
        else:
            sys.stdout.write(dumps(payload))
        return
    if cfg.out:
        write_csv(cfg.out, header, rows, meta)
    else:
        w = csv.writer(sys.stdout, lineterminator="\n")
        w.writerow(header)
        w.writerows([fmt(v) for v in r] for r in rows)


def cmd_spectrum(cfg: RunConfig):
    if cfg.extra.get("points", 200) < 3:
        raise ValidationError("--points must be at least 3")
    sector = build_sector(cfg.n, cfg.two_sz)
    if sector.dim > DENSE_CAP:
        raise CapacityError(f"sector dimension {sector.dim} exceeds {DENSE_CAP}")
    grid = np.geomspace(cfg.t0, cfg.t1, cfg.extra.get("points", 200))
    tables = []
    for g in _need_g(cfg):
        model = cfg.build_model(g, sector)
        scan = spectrum_scan(model, grid)
        minima = classify_minima(model, scan, limit=cfg.extra.get("refine"))
        tables.append((g, scan, minima))
    if cfg.format == "json":
        payload = [
            {
                "g": g,
                "t": scan.t,
                "energies": scan.energies,
                "minima": [m.as_dict() for m in minima],
            }
            for g, scan, minima in tables
        ]
        _emit(cfg, None, None, payload)
        return
    rows = [
        [g, t, k, e]
        for g, scan, _ in tables
        for t, levels in zip(scan.t, scan.energies)
        for k, e in enumerate(levels)
    ]
    _emit(cfg, ["g", "t", "level_index", "eigenvalue"], rows)
    if cfg.out:
        mrows = [[g, m.level, m.t_star, m.gap, m.classification] for g, _, ms in tables for m in ms]
        write_csv(Path(cfg.out).with_suffix(".minima.csv"), ["g", "level", "t_star", "gap", "classification"], mrows, cfg.as_dict())


def _evolve_one(args):
    cfg, g, samples = args
    sector = build_sector(cfg.n, cfg.two_sz)
    return propagate(cfg.build_model(g, sector), cfg.t0, cfg.t1, cfg.tol, readout=cfg.readout, n_samples=samples)


def cmd_evolve(cfg: RunConfig):
    sector = build_sector(cfg.n, cfg.two_sz)
    if sector.dim > 20_000:
        raise CapacityError(f"sector dimension {sector.dim} is too large for dense-step propagation")
    gs = _need_g(cfg)
    samples = cfg.extra.get("samples", 200)
    if samples < 2:
        raise ValidationError("--samples must be at least 2")
    results = _pmap(_evolve_one, [(cfg, g, samples) for g in gs])
    if cfg.format == "json":
        payload = []
        for g, res in zip(gs, results):
            params = {k: v for k, v in cfg.as_dict().items() if k not in ("g_list", "extra")}
            params["g"] = g
            body = evolution_payload(res, sector, params, cfg.extra.get("min_prob", 0.0))
            body["final_eta"] = res.final_eta
            payload.append(body)
        _emit(cfg, None, None, payload[0] if len(payload) == 1 else payload)
        return
    header = ["g", "t", "eta"] + [f"s{j}" for j in range(1, cfg.n + 1)]
    rows = [[g, *r] for g, res in zip(gs, results) for r in trace_rows(res)]
    _emit(cfg, header, rows)
    if cfg.out:
        frows = [
            [g, to_arrows(int(b), cfg.n), to_bitstring(int(b), cfg.n), p]
            for g, res in zip(gs, results)
            for b, p in zip(sector.basis, res.final_probs)
        ]
        write_csv(Path(cfg.out).with_suffix(".final.csv"), ["g", "microstate", "bitstring", "probability"], frows, cfg.as_dict())


def cmd_gibbs(cfg: RunConfig):
    if cfg.n > 62:
        raise CapacityError("enumeration is limited to 62 spins")
    sector = build_sector(cfg.n, cfg.two_sz)
    rows = []
    for g in _need_g(cfg):
        p = gibbs.enumerate_distribution(GibbsLaw(cfg.n, cfg.two_sz, g), sector)
        for b, eta, pi in zip(sector.basis, sector.eta_values, p):
            rows.append([g, to_arrows(int(b), cfg.n), to_bitstring(int(b), cfg.n), float(eta), pi])
    _emit(cfg, ["g", "microstate", "bitstring", "eta", "probability"], rows)


def cmd_eta_dist(cfg: RunConfig):
    if cfg.n > MAX_SPINS:
        raise CapacityError(f"eta-dist is limited to {MAX_SPINS} spins")
    rows = []
    for g in _need_g(cfg):
        dist = markov.eta_distribution(GibbsLaw(cfg.n, cfg.two_sz, g))
        rows.extend([g, e, p] for e, p in zip(dist.support, dist.probs))
    _emit(cfg, ["g", "eta", "probability"], rows)


def cmd_entropy(cfg: RunConfig):
    rows = []
    for g in _need_g(cfg):
        direct = ""
        if cfg.n <= 16:
            direct = gibbs.entropy_direct(GibbsLaw(cfg.n, cfg.two_sz, g))
        sat = analytics.entropy_saturation(g) if g > 0 else float("inf")
        rows.append([g, cfg.n, analytics.entropy_partition(g, cfg.n), direct, sat])
    _emit(cfg, ["g", "n", "entropy_partition", "entropy_direct", "entropy_saturation"], rows)


def cmd_qgroup(cfg: RunConfig):
    gs = cfg.couplings or list(np.round(np.linspace(0.0, 1.5, 16), 6))
    rows, failed = [], []
    for g in gs:
        rep = qgroup.verification_report(qgroup.q_from_g(g))
        rows.append([g, rep["q"], rep["ybz_residual"], rep["eigenvalue_error"], rep["pass"]])
        if not rep["pass"]:
            failed.append(g)
    _emit(cfg, ["g", "q", "ybz_residual", "eigenvalue_error", "pass"], rows)
    if failed:
        raise InvariantFailure(f"quantum-group checks failed for g in {failed}")


def cmd_verify(cfg: RunConfig):
    checks = run_checks(cfg.extra.get("check"))
    for c in checks:
        print(c.line(), file=sys.stderr)
    if cfg.out:
        rows = [[c.name, c.value, c.tolerance, c.passed, c.seconds, c.detail] for c in checks]
        _emit(cfg, ["check", "value", "tolerance", "passed", "seconds", "detail"], rows)
    bad = [c for c in checks if not c.passed]
    if bad:
        raise InvariantFailure("; ".join(c.line() for c in bad))


def cmd_figure(cfg: RunConfig):
    outdir = Path(cfg.out or "figures")
    outdir.mkdir(parents=True, exist_ok=True)
    for table in FIGURES[cfg.figure_id]():
        meta = {"figure": cfg.figure_id, "table": table.name, "params": table.params, "run": cfg.as_dict()}
        path = write_csv(outdir / f"{table.name}.csv", table.header, table.rows, meta)
        print(path)


HANDLERS = {
    "spectrum": cmd_spectrum,
    "evolve": cmd_evolve,
    "gibbs": cmd_gibbs,
    "eta-dist": cmd_eta_dist,
    "entropy": cmd_entropy,
    "qgroup": cmd_qgroup,
    "verify": cmd_verify,
    "figure": cmd_figure,
}
assert set(HANDLERS) == set(COMMANDS)


def _fail(code: int, exc: Exception, as_json: bool) -> int:
    kind = {EXIT_VALIDATION: "validation", EXIT_CAPACITY: "capacity", EXIT_INVARIANT: "invariant"}[code]
    if as_json:
        print(json.dumps({"error": kind, "type": type(exc).__name__, "message": str(exc), "exit_code": code}), file=sys.stderr)
    else:
        print(f"bcs-anneal: {kind} error: {exc}", file=sys.stderr)
    return code


def run(cfg: RunConfig, error_json: bool = False) -> int:
    try:
        cfg.validate()
        HANDLERS[cfg.command](cfg)
    except CapacityError as exc:
        return _fail(EXIT_CAPACITY, exc, error_json)
    except (InvariantFailure, PropagationError) as exc:
        return _fail(EXIT_INVARIANT, exc, error_json)
    except (ValidationError, ValueError, KeyError) as exc:
        return _fail(EXIT_VALIDATION, exc, error_json)
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) and EXIT_VALIDATION
    return run(config_from_args(args), args.error_json)


if __name__ == "__main__":
    sys.exit(main())
