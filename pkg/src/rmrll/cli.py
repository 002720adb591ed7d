"""Command-line experiment runner.

Every subcommand is a pure function of its configuration: reruns with the same
flags (and seed) produce byte-identical output. Configuration may come from a
flat ``key = value`` file (``--config``); command-line flags override it.

Exit codes: 0 success, 2 configuration error, 3 enumeration-guard refusal.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import time
from pathlib import Path
from typing import Any, Callable

from .bounds import achievable_rate, coset_baseline, r_star, rll_rate_upper_bound, upper_bound_chain
from .channels import BEC, BIAWGN, BSC, ChannelModel
from .decoding import EXHAUSTIVE_GUARD, estimate_pb, subcode_decoder
from .rll import RLLConstraint, noiseless_capacity
from .rm_code import GuardError, RMCode, weight_distribution
from .subcode import SubcodeSpec, largest_rll_subcode_bruteforce, plotkin_filter_count, subcode_rate

EXIT_CONFIG = 2
EXIT_GUARD = 3


class ConfigError(ValueError):
    pass


def _int_list(text: str) -> list[int]:
    out: list[int] = []
    for part in str(text).split(","):
        part = part.strip()
        if ":" in part:
            lo, hi = part.split(":")
            out.extend(range(int(lo), int(hi) + 1))
        elif part:
            out.append(int(part))
    if not out:
        raise ValueError("empty list")
    return out


def _float_list(text: str) -> list[float]:
    out = [float(p) for p in str(text).split(",") if p.strip()]
    if not out:
        raise ValueError("empty list")
    return out


def _unit(text: str) -> float:
    v = float(text)
    if not 0.0 < v < 1.0:
        raise ValueError("must lie in (0, 1)")
    return v


def _format(text: str) -> str:
    if text not in ("csv", "json"):
        raise ValueError("format must be csv or json")
    return text


def _bool(text: str) -> bool:
    t = str(text).strip().lower()
    if t in ("1", "true", "yes", "on"):
        return True
    if t in ("0", "false", "no", "off"):
        return False
    raise ValueError("expected a boolean")


def _positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise ValueError("must be positive")
    return v


_PARSERS: dict[str, Callable[[str], Any]] = {
    "m": _int_list,
    "r": int,
    "d": _int_list,
    "rate": _unit,
    "epsilon": _float_list,
    "p": _float_list,
    "sigma": _float_list,
    "trials": _positive_int,
    "seed": int,
    "out": str,
    "format": _format,
    "grid_step": _unit,
    "delta": _unit,
    "timing": _bool,
}

# key -> default, per command
_COMMANDS: dict[str, dict[str, Any]] = {
    "rates": {"m": "2:60", "rate": "0.5", "d": "1", "format": "csv", "out": None},
    "bounds": {"d": "1", "grid_step": "0.01", "m": None, "delta": "0.1", "format": "csv", "out": None},
    "simulate": {
        "m": "7,9,11", "rate": "0.5", "d": "1", "epsilon": None, "p": None, "sigma": None,
        "trials": "1000", "seed": "0", "format": "csv", "out": None, "timing": "false",
    },
    "oracle": {"m": None, "r": None, "format": "json", "out": None},
    "weights": {"m": None, "r": None, "format": "csv", "out": None},
    "channel-cap": {"epsilon": None, "p": None, "sigma": None, "d": "1", "format": "csv", "out": None},
}


def read_config_file(path: str | Path) -> dict[str, str]:
    """Parse ``key = value`` lines; ``#`` starts a comment."""
    values: dict[str, str] = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
        key, value = (s.strip() for s in line.split("=", 1))
        values[key.replace("-", "_")] = value
    return values


def resolve_config(command: str, file_values: dict[str, str], flag_values: dict[str, Any]) -> dict[str, Any]:
    allowed = _COMMANDS[command]
    merged: dict[str, Any] = dict(allowed)
    for source in (file_values, flag_values):
        for key, value in source.items():
            if value is None:
                continue
            if key not in allowed:
                raise ConfigError(f"unknown key '{key}' for command '{command}'")
            merged[key] = value
    cfg: dict[str, Any] = {}
    for key, value in merged.items():
        if value is None or key == "out":
            cfg[key] = value
            continue
        try:
            cfg[key] = _PARSERS[key](value) if isinstance(value, str) else value
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"bad value for '{key}': {value!r} ({exc})") from None
    return cfg


def _num(x: float) -> str:
    return format(x, ".12g")


def _emit_csv(header: list[str], rows: list[list[Any]], comments: list[str] = ()) -> str:
    buf = io.StringIO()
    for c in comments:
        buf.write(f"# {c}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_num(v) if isinstance(v, float) else v for v in row])
    return buf.getvalue()


def _emit_json(command: str, params: dict[str, Any], header: list[str], rows: list[list[Any]]) -> str:
    doc = {
        "command": command,
        "params": {k: v for k, v in params.items() if k not in ("out", "format")},
        "rows": [dict(zip(header, map(_json_value, row))) for row in rows],
    }
    return json.dumps(doc, indent=2, allow_nan=False) + "\n"


def _json_value(v: Any) -> Any:
    # JSON has no infinities; a missing log-sum is reported as null
    if isinstance(v, float) and not math.isfinite(v):
        return None
    return v


def _channels(cfg: dict[str, Any]) -> list[ChannelModel]:
    given = [k for k in ("epsilon", "p", "sigma") if cfg.get(k) is not None]
    if len(given) > 1:
        raise ConfigError("give only one of epsilon, p, sigma")
    if not given:
        raise ConfigError("one of epsilon, p, sigma is required")
    key = given[0]
    make = {"epsilon": BEC, "p": BSC, "sigma": BIAWGN}[key]
    try:
        return [make(v) for v in cfg[key]]
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def cmd_rates(cfg: dict[str, Any]) -> tuple[list[str], list[list[Any]], list[str]]:
    header = ["m", "d", "z", "r_m", "message_bits", "rate_exact", "rate", "asymptote", "gap"]
    rows = []
    for d in cfg["d"]:
        if d < 0:
            raise ConfigError("d must be non-negative")
        for m in cfg["m"]:
            if m < 1:
                raise ConfigError("m must be at least 1")
            spec = SubcodeSpec(d=d, m=m, R=cfg["rate"])
            rate = subcode_rate(m, cfg["rate"], d)
            rows.append([m, d, spec.z, spec.r_m, spec.message_bits, str(rate.exact), rate.value, rate.asymptote, rate.gap])
    return header, rows, []


def cmd_bounds(cfg: dict[str, Any]) -> tuple[list[str], list[list[Any]], list[str]]:
    d = cfg["d"][0]
    step = cfg["grid_step"]
    c0 = noiseless_capacity(RLLConstraint(d))
    # with m given, append the finite-m chain diagnostics at that block length
    m = cfg["m"][0] if cfg.get("m") else None
    if m is not None and m < 4:
        raise ConfigError("bounds diagnostics need m >= 4")
    header = ["R", "achievable", "upper_bound", "trivial", "coset_baseline"]
    if m is not None:
        header += ["m", "finite_m_bound", "log2_beta", "log2_theta", "beta_below_theta"]
    rows = []
    for i in range(1, int(round(1.0 / step))):
        R = round(i * step, 10)
        if not 0.0 < R < 1.0:
            continue
        ub = rll_rate_upper_bound(R) if d == 1 else R
        row = [R, achievable_rate(R, d), ub, R, coset_baseline(c0, R)]
        if m is not None:
            ev = upper_bound_chain(m, R, cfg["delta"])
            row += [m, ev.rate_bound, ev.log2_beta, ev.log2_theta, int(ev.beta_below_theta)]
        rows.append(row)
    comments = [
        f"d = {d}; for the BEC read R = 1 - epsilon",
        f"upper bound crossover R* = {_num(r_star())}",
        f"coset baseline uses noiseless capacity C0 = {_num(c0)}",
    ]
    return header, rows, comments


def cmd_simulate(cfg: dict[str, Any]) -> tuple[list[str], list[list[Any]], list[str]]:
    chans = _channels(cfg)
    timing = cfg["timing"]
    header = ["m", "d", "channel", "param", "r_m", "message_bits", "trials", "pb", "std_error"]
    if timing:
        header.append("wall_time")
    rows = []
    for d in cfg["d"]:
        for m in cfg["m"]:
            spec = SubcodeSpec(d=d, m=m, R=cfg["rate"])
            for ch in chans:
                if not isinstance(ch, BEC) and spec.parent.dim > EXHAUSTIVE_GUARD:
                    raise GuardError(
                        f"{ch.name} decoding of RM({m},{spec.r_m}) needs exhaustive enumeration "
                        f"of 2^{spec.parent.dim} codewords (limit 2^{EXHAUSTIVE_GUARD})"
                    )
                t0 = time.perf_counter()
                dec = subcode_decoder(spec, ch)
                res = estimate_pb(spec.encode, spec.message_bits, ch, dec, cfg["trials"], cfg["seed"])
                row = [m, d, ch.name, ch.parameter, spec.r_m, spec.message_bits, res.trials, res.pb, res.std_error]
                if timing:
                    row.append(time.perf_counter() - t0)
                rows.append(row)
    return header, rows, []


def _require_code(cfg: dict[str, Any]) -> RMCode:
    if cfg.get("m") is None or cfg.get("r") is None:
        raise ConfigError("both m and r are required")
    m = cfg["m"][0]
    try:
        return RMCode(m, cfg["r"])
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def cmd_oracle(cfg: dict[str, Any]) -> tuple[list[str], list[list[Any]], list[str]]:
    code = _require_code(cfg)
    sub = largest_rll_subcode_bruteforce(code, RLLConstraint(1))
    filt = plotkin_filter_count(code)
    n = code.n
    constrained_rate = math.log2(sub.count) / n
    header = [
        "m", "r", "n", "dim", "code_size", "rll_subcode_size", "plotkin_filter_size",
        "log2_code_size", "log2_rll_subcode_size", "log2_plotkin_filter_size",
        "code_rate", "rll_subcode_rate", "upper_bound_at_code_rate",
    ]
    ub = rll_rate_upper_bound(code.rate) if 0 < code.rate < 1 else code.rate
    row = [
        code.m, code.r, n, code.dim, 1 << code.dim, sub.count, filt,
        float(code.dim), math.log2(sub.count), math.log2(filt),
        code.rate, constrained_rate, ub,
    ]
    return header, [row], []


def cmd_weights(cfg: dict[str, Any]) -> tuple[list[str], list[list[Any]], list[str]]:
    code = _require_code(cfg)
    wd = weight_distribution(code)
    return ["w", "count"], [[w, a] for w, a in sorted(wd.counts.items())], [f"RM({code.m},{code.r}) n={code.n} dim={code.dim}"]


def cmd_channel_cap(cfg: dict[str, Any]) -> tuple[list[str], list[list[Any]], list[str]]:
    header = ["channel", "param", "d", "capacity", "noiseless_capacity", "achievable", "coset_baseline"]
    rows = []
    for ch in _channels(cfg):
        C = ch.capacity()
        for d in cfg["d"]:
            c0 = noiseless_capacity(RLLConstraint(d))
            rows.append([ch.name, ch.parameter, d, C, c0, achievable_rate(C, d) if d else C, coset_baseline(c0, C)])
    return header, rows, []


_HANDLERS = {
    "rates": cmd_rates,
    "bounds": cmd_bounds,
    "simulate": cmd_simulate,
    "oracle": cmd_oracle,
    "weights": cmd_weights,
    "channel-cap": cmd_channel_cap,
}


def run(command: str, cfg: dict[str, Any]) -> str:
    """Execute ``command`` and return the rendered output text."""
    header, rows, comments = _HANDLERS[command](cfg)
    if cfg["format"] == "json":
        return _emit_json(command, cfg, header, rows)
    return _emit_csv(header, rows, comments)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rmrll", description="RLL subcodes of Reed-Muller codes: rates, bounds, simulation.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, keys in _COMMANDS.items():
        p = sub.add_parser(name)
        p.add_argument("--config", metavar="PATH")
        for key in keys:
            flag = {"rate": "--rate", "grid_step": "--grid-step"}.get(key, f"--{key.replace('_', '-')}")
            p.add_argument(flag, dest=key, default=None, metavar="R" if key == "rate" else key.upper())
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    flags = {k: v for k, v in vars(args).items() if k not in ("command", "config")}
    try:
        file_values = read_config_file(args.config) if args.config else {}
        cfg = resolve_config(args.command, file_values, flags)
        text = run(args.command, cfg)
        if cfg.get("out"):
            Path(cfg["out"]).write_text(text)
    except (ConfigError, OSError) as exc:
        print(f"rmrll: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except GuardError as exc:
        print(f"rmrll: refused: {exc}", file=sys.stderr)
        return EXIT_GUARD
    if not cfg.get("out"):
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
