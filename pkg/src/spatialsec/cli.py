"""Command-line front end.

Every subcommand writes ``#``-prefixed header lines with the effective
configuration, then CSV rows (``optpower`` writes a short report instead).
Settings are layered: built-in defaults, then a figure preset, then
``--config`` file values, then command-line flags.

Exit codes: 0 success, 1 usage or configuration error, 2 validation threshold
exceeded, 3 numerical error.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import sys

import numpy as np

from . import __version__
from .closed_form import secrecy_capacity
from .model import (
    INFINITE,
    ConfigError,
    Dimension,
    DomainError,
    LinkGains,
    NumericalError,
    PowerNoiseConfig,
    SpatialConstraint,
    SystemKind,
    SystemParams,
    db_to_linear,
    linear_to_db,
    saturation_number,
)
from .montecarlo import Jamming, Layout, ReceiverLink, ValidationConfig, run_validation
from .worst_case import clip_jamming_power, grid_search_jamming, min_bob_antennas, optimal_jamming_power, worst_case_curve

EXIT_OK, EXIT_USAGE, EXIT_THRESHOLD, EXIT_NUMERICAL = 0, 1, 2, 3

DEFAULTS = {
    "pt_db": "20",
    "pj_db": "0",
    "alpha_b": "1",
    "alpha_e": "1",
    "beta_b": "1",
    "beta_e": "1",
    "sigma2_b": "1",
    "sigma2_e": "1",
    "rb": "1.5",
    "re": "1",
    "ri": "1",
    "nb": "35",
    "ne": "1:60",
    "dim": "2d",
    "geometry": "uca",
    "realizations": "200",
    "seed": "0",
    "threshold": "0.1",
    "nt": "100",
    "nj": "100",
    "ni": "1,5,10,20,40,60,80,100",
    "jamming": "none",
}

FIGURES = {
    3: ("capacity", {"system": "wiretap", "nb": "1:60", "ne": "1:60"}),
    4: ("capacity", {"system": "basic,an", "nb": "1:60", "ne": "1:60"}),
    5: ("nbmin", {"rb": "2", "re": "0.1:3:0.1"}),
    6: ("capacity", {"system": "wiretap,basic,an", "nb": "35", "ne": "1:60"}),
    7: ("worstcase", {"system": "basic,an", "rb": "2", "nb": "37", "re": "0.1:3:0.1"}),
    8: ("worstcase", {"system": "basic,an", "rb": "1.5", "re": "1", "nb": "30", "pj_db": "-20:30:0.05"}),
    9: ("validate", {"jamming": "none", "pt_db": "10", "ri": "1", "geometry": "uca,ula"}),
    10: ("validate", {"jamming": "basic", "pt_db": "10", "pj_db": "0", "ri": "1", "geometry": "uca,ula"}),
}

SYSTEMS = {"wiretap": SystemKind.WIRETAP, "basic": SystemKind.BASIC_JAMMER, "an": SystemKind.AN_JAMMER}


class UsageError(ConfigError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _fmt(x):
    if isinstance(x, str):
        return x
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return format(float(x), ".12g")


def parse_sweep(text, kind=float):
    """Parse ``"5"``, ``"1:60"``, ``"0.1:3:0.1"`` or comma-separated mixes into a list.

    Ranges are inclusive arithmetic progressions ``start:stop[:step]`` (step 1 by default).
    """
    values = []
    for item in str(text).split(","):
        item = item.strip()
        if not item:
            continue
        parts = item.split(":")
        try:
            if len(parts) == 1:
                values.append(kind(parts[0]) if parts[0] not in ("inf", "INF") else INFINITE)
                continue
            if len(parts) not in (2, 3):
                raise ValueError
            start, stop = float(parts[0]), float(parts[1])
            step = float(parts[2]) if len(parts) == 3 else 1.0
        except ValueError:
            raise UsageError(f"cannot parse sweep {text!r}") from None
        if step <= 0 or stop < start:
            raise UsageError(f"sweep {item!r} must be a nonempty increasing range")
        count = int(math.floor((stop - start) / step + 1e-9)) + 1
        values.extend(kind(round(start + i * step, 12)) for i in range(count))
    if not values:
        raise UsageError(f"sweep {text!r} is empty")
    return values


def _is_sweep(text):
    return ":" in str(text) or "," in str(text)


def read_config_file(path):
    """Flat ``key = value`` records; ``#`` starts a comment. Keys may use dashes."""
    out = {}
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise UsageError(f"cannot read config file {path!r}: {exc}") from None
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected 'key = value'")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in DEFAULTS and key not in ("system", "pj_max", "figure"):
            raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
        out[key] = value
    return out


def _num(settings, key, kind=float):
    try:
        return kind(settings[key])
    except (TypeError, ValueError):
        raise UsageError(f"invalid value for {key}: {settings[key]!r}") from None


def build_params(settings, kind, n_b, n_e, r_b=None, r_e=None, p_j_db=None) -> SystemParams:
    dim = Dimension(settings["dim"])
    return SystemParams(
        kind=kind,
        gains=LinkGains(*(_num(settings, k) for k in ("alpha_b", "alpha_e", "beta_b", "beta_e"))),
        power=PowerNoiseConfig(
            p_t=db_to_linear(_num(settings, "pt_db")),
            p_j=db_to_linear(_num(settings, "pj_db") if p_j_db is None else p_j_db),
            sigma2_b=_num(settings, "sigma2_b"),
            sigma2_e=_num(settings, "sigma2_e"),
        ),
        bob_constraint=SpatialConstraint(_num(settings, "rb") if r_b is None else r_b, dim),
        eve_constraint=SpatialConstraint(_num(settings, "re") if r_e is None else r_e, dim),
        n_b=n_b,
        n_e=n_e,
    )


def _systems(settings, default):
    names = [s.strip() for s in (settings.get("system") or default).split(",") if s.strip()]
    unknown = [n for n in names if n not in SYSTEMS]
    if unknown or not names:
        raise UsageError(f"unknown system(s) {unknown}; choose from {sorted(SYSTEMS)}")
    return names


def _header(command, settings, notes=()):
    lines = [f"# spatialsec {__version__}", f"# command = {command}"]
    lines += [f"# {k} = {settings[k]}" for k in sorted(settings) if settings[k] is not None]
    lines += [f"# note: {n}" for n in notes]
    return "\n".join(lines) + "\n"


def _csv(header_row, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header_row)
    for row in rows:
        w.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def cmd_saturation(settings):
    radius = _num(settings, "radius") if settings.get("radius") is not None else _num(settings, "rb")
    return f"{saturation_number(SpatialConstraint(radius, Dimension(settings['dim'])))}\n", EXIT_OK


def cmd_capacity(settings):
    systems = _systems(settings, "wiretap,basic,an")
    nbs = parse_sweep(settings["nb"], int)
    nes = parse_sweep(settings["ne"], int)
    if any(n == INFINITE for n in nes) or _num(settings, "sigma2_e") == 0:
        raise UsageError("N_e = inf or sigma2_e = 0 is the worst-case eavesdropper; use the 'worstcase' subcommand")
    rows = []
    for name in systems:
        for nb in nbs:
            for ne in nes:
                res = secrecy_capacity(build_params(settings, SYSTEMS[name], nb, ne))
                rows.append((name, nb, ne, res.c_b, res.c_e, res.c_s))
    body = _csv(["system", "n_b", "n_e", "c_b", "c_e", "c_s"], rows)
    return _header("capacity", settings) + body, EXIT_OK


def cmd_worstcase(settings):
    systems = _systems(settings, "basic,an")
    sweep_re, sweep_pj = _is_sweep(settings["re"]), _is_sweep(settings["pj_db"])
    if sweep_re and sweep_pj:
        raise UsageError("sweep either --re or --pj-db, not both")
    nb = _num(settings, "nb", int)
    notes = []
    if "wiretap" in systems:
        notes.append("wiretap worst-case secrecy capacity is identically zero (Eve capacity unbounded)")
    if sweep_pj:
        var, xs = "pj_db", parse_sweep(settings["pj_db"])
        cols = {}
        for name in systems:
            params = build_params(settings, SYSTEMS[name], nb, INFINITE, p_j_db=xs[0]).worst_case()
            cols[name] = worst_case_curve(params, [db_to_linear(x) for x in xs])
    else:
        var, xs = "re", parse_sweep(settings["re"])
        cols = {name: [] for name in systems}
        for x in xs:
            for name in systems:
                params = build_params(settings, SYSTEMS[name], nb, INFINITE, r_e=x).worst_case()
                cols[name].append(float(worst_case_curve(params, [params.power.p_j])[0]))
    rows = [(x, *(cols[n][i] for n in systems)) for i, x in enumerate(xs)]
    body = _csv([var, *(f"cs_wor_{n}" for n in systems)], rows)
    return _header("worstcase", settings, notes) + body, EXIT_OK


def cmd_nbmin(settings):
    systems = [s for s in _systems(settings, "basic,an")]
    rows = []
    for r_e in parse_sweep(settings["re"]):
        row = [r_e]
        for name in systems:
            params = build_params(settings, SYSTEMS[name], 1, INFINITE, r_e=r_e).worst_case()
            rep = min_bob_antennas(params)
            row.append(rep.n_b_min if rep.feasible else "INFEASIBLE")
        rows.append(row)
    body = _csv(["re", *(f"nbmin_{n}" for n in systems)], rows)
    return _header("nbmin", settings) + body, EXIT_OK


def cmd_optpower(settings):
    # P_j is the optimisation variable; any configured value or sweep is ignored.
    nb = _num(settings, "nb", int)
    params = build_params(settings, SystemKind.BASIC_JAMMER, nb, INFINITE, p_j_db=0.0).worst_case()
    opt = optimal_jamming_power(params)
    grid = grid_search_jamming(params)
    lines = [
        f"n_b: {params.n_b}",
        f"nsat_b: {params.nsat_b}",
        f"nsat_e: {params.nsat_e}",
        f"method: {opt.method}",
    ]
    for c in opt.candidates:
        value = c.value if not isinstance(c.value, complex) else f"{c.value.real:.12g}{c.value.imag:+.12g}j"
        obj = "n/a" if c.objective is None else _fmt(c.objective)
        lines.append(
            f"{c.name}: value={_fmt(value)} objective={obj} branch={c.branch} "
            f"admissible={'yes' if c.admissible else 'no'}"
        )
    if opt.diagnostic:
        lines.append(f"diagnostic: {opt.diagnostic}")
    if opt.applicable:
        lines.append(f"p_j_opt_db: {_fmt(linear_to_db(opt.selected_pj))}")
        lines.append(f"p_j_opt_linear: {_fmt(opt.selected_pj)}")
        lines.append(f"cs_wor: {_fmt(opt.achieved_cs)}")
    else:
        lines.append("p_j_opt_db: n/a")
        lines.append("cs_wor: 0")
    lines.append(f"grid_p_j_db: {_fmt(linear_to_db(grid.pj_star))}")
    lines.append(f"grid_cs_wor: {_fmt(grid.cs_star)}")
    if opt.applicable:
        lines.append(f"grid_delta_db: {_fmt(linear_to_db(grid.pj_star) - linear_to_db(opt.selected_pj))}")
    if settings.get("pj_max") is not None:
        applied = clip_jamming_power(opt, db_to_linear(_num(settings, "pj_max")))
        lines.append(f"p_j_max_db: {settings['pj_max']}")
        lines.append(f"p_j_applied_db: {'n/a' if applied is None else _fmt(linear_to_db(applied))}")
    return _header("optpower", settings) + "\n".join(lines) + "\n", EXIT_OK


def cmd_validate(settings):
    jamming = Jamming(settings["jamming"])
    threshold = _num(settings, "threshold")
    layouts = [Layout(g.strip()) for g in settings["geometry"].split(",") if g.strip()]
    if Dimension(settings["dim"]) is not Dimension.CIRCULAR_2D:
        raise UsageError("validate supports 2D apertures only")
    link = ReceiverLink(
        alpha=_num(settings, "alpha_b"),
        beta=_num(settings, "beta_b"),
        p_t=db_to_linear(_num(settings, "pt_db")),
        p_j=db_to_linear(_num(settings, "pj_db")) if jamming is not Jamming.NONE else 0.0,
        sigma2=_num(settings, "sigma2_b"),
    )
    rows, failed = [], False
    for layout in layouts:
        cfg = ValidationConfig(
            jamming=jamming,
            layout=layout,
            radius_wavelengths=_num(settings, "ri"),
            n_values=tuple(parse_sweep(settings["ni"], int)),
            n_t=_num(settings, "nt", int),
            n_j=_num(settings, "nj", int),
            n_b=_num(settings, "nb", int),
            realizations=_num(settings, "realizations", int),
            seed=_num(settings, "seed", int),
            link=link,
        )
        for pt in run_validation(cfg).points:
            failed |= pt.rel_gap > threshold
            stderr = "0*" if pt.single_realization else pt.mc_stderr
            rows.append((layout.value, pt.n_receive, pt.mc_mean, stderr, pt.approx_corr, pt.approx_piecewise, pt.rel_gap))
    notes = ["stderr marked 0* comes from a single realization"] if any(r[3] == "0*" for r in rows) else []
    body = _csv(["geometry", "n_i", "mc_mean", "mc_stderr", "approx_corr", "approx_piecewise", "rel_gap"], rows)
    return _header("validate", settings, notes) + body, EXIT_THRESHOLD if failed else EXIT_OK


COMMANDS = {
    "saturation": cmd_saturation,
    "capacity": cmd_capacity,
    "worstcase": cmd_worstcase,
    "nbmin": cmd_nbmin,
    "optpower": cmd_optpower,
    "validate": cmd_validate,
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    add = common.add_argument
    add("--config", help="flat key = value scenario file")
    add("--figure", type=int, choices=sorted(FIGURES), help="load a figure preset's settings")
    add("--out", help="write output here instead of stdout")
    add("--seed", help="Monte-Carlo master seed")
    add("--geometry", help="receive array layout(s): uca, ula or uca,ula")
    add("--realizations", help="Monte-Carlo realizations per point")
    add("--pj-max", dest="pj_max", help="jammer peak power in dB (optpower clip)")
    add("--threshold", help="largest acceptable relative gap for validate")
    add("--system", help="comma list of wiretap, basic, an")
    add("--dim", choices=["2d", "3d"], help="aperture dimensionality")
    for flag in ("pt-db", "pj-db", "rb", "re", "ri", "nb", "ne", "nt", "nj", "ni",
                 "alpha-b", "alpha-e", "beta-b", "beta-e", "sigma2-b", "sigma2-e"):
        add(f"--{flag}", dest=flag.replace("-", "_"))
    add("--jamming", choices=["none", "basic", "an"], help="validate: jamming model")

    parser = _Parser(prog="spatialsec", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sat = sub.add_parser("saturation", parents=[common], help="saturation number of an aperture")
    sat.add_argument("--radius", help="aperture radius in wavelengths")
    for name in ("capacity", "worstcase", "nbmin", "optpower", "validate"):
        sub.add_parser(name, parents=[common])
    fig = sub.add_parser("figure", parents=[common], help="run a figure preset (3-10)")
    fig.add_argument("number", type=int, choices=sorted(FIGURES))
    return parser


def resolve_settings(args):
    settings = dict(DEFAULTS)
    command = args.command
    if command == "figure":
        command, preset = FIGURES[args.number]
        settings.update(preset)
        settings["figure"] = str(args.number)
    elif args.figure is not None:
        settings.update(FIGURES[args.figure][1])
        settings["figure"] = str(args.figure)
    if args.config:
        settings.update(read_config_file(args.config))
    flags = {k: v for k, v in vars(args).items() if v is not None and k not in ("command", "number", "config", "out", "figure")}
    settings.update({k: str(v) for k, v in flags.items()})
    return command, settings


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        command, settings = resolve_settings(args)
        text, code = COMMANDS[command](settings)
    except (ConfigError, DomainError) as exc:
        print(f"spatialsec: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NumericalError, ArithmeticError) as exc:
        print(f"spatialsec: numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except ValueError as exc:
        print(f"spatialsec: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if code == EXIT_THRESHOLD:
        print("spatialsec: validation gap exceeds threshold", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
