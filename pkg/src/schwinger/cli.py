"""Command-line surface: sweeps, figure presets, point evaluation, checks.

The mode is chosen by which flag is present:

  --verify LEVEL            run the self-check suite (quick | full)
  --preset NAME             emit every curve of a published-figure preset
  --sweep axis:a:b:n[:log]  one parameter sweep over E0 | m | k_perp | k_z | tau
  (none of the above)       evaluate the single point given by the flags

Output is CSV (default) or JSON.  CSV files carry the full parameter set as
leading ``# key=value`` comment lines, use LF line endings and 17-significant-
digit floats, and survive a parse/re-emit cycle byte-identically.  Identical
invocations produce identical bytes; sweeps record per-point failures in the
``error`` column instead of aborting.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 numerical
error (saturation, cancellation, oracle non-convergence).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from dataclasses import dataclass

from .bogoliubov import moduli
from .entanglement import entropy
from .fields import FieldProfile, ModeParams, Statistics
from .oracle import OracleError
from .sweeps import AXES, PRESET_NAMES, SweepSpec, figure_preset, run_sweep
from .verify import run_checks

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_NUMERICAL = 3

_SWEEP_COLUMNS = ("axis_value", "beta2", "alpha2", "entropy_bits", "c0_sq",
                  "mean_pairs", "error")
_POINT_COLUMNS = ("beta2", "alpha2", "log_beta2", "log_alpha2",
                  "entropy_bits", "c0_sq", "mean_pairs")


class UsageError(ValueError):
    """Bad flag combination or malformed value; exits with status 2."""


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def _fmt(v) -> str:
    if isinstance(v, str):
        return v
    return format(v, ".17g")


def emit_csv(comments: list[tuple[str, str]], header: tuple[str, ...],
             rows: list[tuple]) -> str:
    buf = io.StringIO()
    for key, value in comments:
        buf.write(f"# {key}={value}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(v) for v in row])
    return buf.getvalue()


@dataclass
class ParsedTable:
    """A CSV file split into comments, header, and raw string cells."""

    comments: list[tuple[str, str]]
    header: list[str]
    cells: list[list[str]]

    def column(self, name: str) -> list[str]:
        idx = self.header.index(name)
        return [row[idx] for row in self.cells]


def parse_csv(text: str) -> ParsedTable:
    """Split an emitted file back into its parts.

    Cells stay strings so that re-emitting reproduces the input bytes;
    numeric columns are float(...)-able by construction.
    """
    comments: list[tuple[str, str]] = []
    body: list[str] = []
    for line in text.splitlines():
        if line.startswith("# "):
            key, sep, value = line[2:].partition("=")
            if not sep:
                raise ValueError(f"malformed comment line: {line!r}")
            comments.append((key, value))
        else:
            body.append(line)
    reader = csv.reader(body)
    table = [row for row in reader if row]
    if not table:
        raise ValueError("no header row found")
    return ParsedTable(comments=comments, header=table[0], cells=table[1:])


def reemit_csv(table: ParsedTable) -> str:
    return emit_csv(table.comments, tuple(table.header),
                    [tuple(row) for row in table.cells])


def _json_cell(v):
    if isinstance(v, float) and not math.isfinite(v):
        return None
    return v


def emit_json(header: tuple[str, ...], rows: list[tuple]) -> str:
    objs = [{k: _json_cell(v) for k, v in zip(header, row)} for row in rows]
    return json.dumps(objs, indent=2) + "\n"


def _write_output(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


# ---------------------------------------------------------------------------
# flag plumbing
# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="schwinger",
        description="Pair-production mode occupations and entanglement "
                    "entropy for constant and Sauter-pulse electric fields.",
        epilog="Modes: --verify | --preset | --sweep | point evaluation "
               "(default). Flags override --config file values.")
    p.add_argument("--stat", choices=["boson", "fermion"],
                   help="statistics of the mode")
    p.add_argument("--field", choices=["constant", "sauter"],
                   help="field profile (inferred as sauter when sweeping tau)")
    p.add_argument("--m", type=float, help="mass (default 1.0)")
    p.add_argument("--q", type=float, help="charge (default 1.0)")
    p.add_argument("--kperp", type=float,
                   help="transverse momentum (default 0.0)")
    p.add_argument("--kz", type=float,
                   help="longitudinal momentum (default 0.0)")
    p.add_argument("--E0", type=float, help="peak field strength")
    p.add_argument("--tau", type=float, help="Sauter pulse width")
    p.add_argument("--sweep", metavar="AXIS:START:STOP:STEPS[:log]",
                   help=f"sweep one axis ({', '.join(AXES)})")
    p.add_argument("--preset", metavar="NAME",
                   help=f"figure preset, one of {', '.join(PRESET_NAMES)}; "
                        "writes one file per curve into --out (a directory)")
    p.add_argument("--verify", choices=["quick", "full"],
                   help="run the self-check suite and exit 0/1")
    p.add_argument("--convention", choices=["consistent", "paper"],
                   help="fermion constant-field exponent convention "
                        "(default consistent)")
    p.add_argument("--format", choices=["csv", "json"], dest="fmt",
                   help="output format (default csv)")
    p.add_argument("--out", metavar="PATH",
                   help="output file (default stdout); for --preset, the "
                        "output directory (default .)")
    p.add_argument("--config", metavar="PATH",
                   help="plain key=value file supplying any of the above "
                        "keys; explicit flags win")
    return p


_CONFIG_KEYS = {
    "stat": str, "field": str, "m": float, "q": float, "kperp": float,
    "kz": float, "E0": float, "tau": float, "sweep": str, "preset": str,
    "verify": str, "convention": str, "format": str, "out": str,
}
_CHOICES = {
    "stat": ("boson", "fermion"),
    "field": ("constant", "sauter"),
    "verify": ("quick", "full"),
    "convention": ("consistent", "paper"),
    "format": ("csv", "json"),
}


def _apply_config(args: argparse.Namespace, path: str) -> None:
    """Fill unset flags from a key=value file; '#' starts a comment."""
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise UsageError(f"cannot read config file: {exc}") from exc
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not sep or not key:
            raise UsageError(f"{path}:{lineno}: expected key=value, "
                             f"got {raw!r}")
        if key not in _CONFIG_KEYS:
            raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
        if key in _CHOICES and value not in _CHOICES[key]:
            raise UsageError(f"{path}:{lineno}: {key} must be one of "
                             f"{'|'.join(_CHOICES[key])}, got {value!r}")
        dest = "fmt" if key == "format" else key
        if getattr(args, dest) is None:
            try:
                setattr(args, dest, _CONFIG_KEYS[key](value))
            except ValueError as exc:
                raise UsageError(f"{path}:{lineno}: bad value for "
                                 f"{key}: {value!r}") from exc


def _parse_sweep_flag(text: str) -> tuple[str, float, float, int, str]:
    parts = text.split(":")
    if len(parts) == 5 and parts[4] == "log":
        scale = "log"
        parts = parts[:4]
    elif len(parts) == 4:
        scale = "linear"
    else:
        raise UsageError(f"--sweep expects AXIS:START:STOP:STEPS[:log], "
                         f"got {text!r}")
    axis = parts[0]
    if axis not in AXES:
        raise UsageError(f"unknown sweep axis {axis!r}; choose from "
                         f"{', '.join(AXES)}")
    try:
        start, stop, steps = float(parts[1]), float(parts[2]), int(parts[3])
    except ValueError as exc:
        raise UsageError(f"bad --sweep numbers in {text!r}: {exc}") from exc
    return axis, start, stop, steps, scale


def _require(args: argparse.Namespace, name: str, flag: str) -> object:
    value = getattr(args, name)
    if value is None:
        raise UsageError(f"missing {flag} (required for this mode)")
    return value


def _fill_param_defaults(args: argparse.Namespace) -> None:
    if args.m is None:
        args.m = 1.0
    if args.q is None:
        args.q = 1.0
    if args.kperp is None:
        args.kperp = 0.0
    if args.kz is None:
        args.kz = 0.0
    if args.convention is None:
        args.convention = "consistent"
    if args.fmt is None:
        args.fmt = "csv"


# ---------------------------------------------------------------------------
# modes
# ---------------------------------------------------------------------------

def _sweep_comments(spec: SweepSpec) -> list[tuple[str, str]]:
    out = [("mode", "sweep"), ("stat", spec.stat.value),
           ("field", spec.field_kind), ("convention", spec.convention),
           ("axis", spec.axis), ("scale", spec.scale),
           ("start", _fmt(spec.start)), ("stop", _fmt(spec.stop)),
           ("steps", str(spec.steps))]
    for key in sorted(spec.fixed):
        out.append((key, _fmt(spec.fixed[key])))
    if spec.label:
        out.append(("label", spec.label))
    if spec.comment:
        out.append(("comment", spec.comment))
    return out


def _render_sweep(spec: SweepSpec, fmt: str) -> str:
    rows = [(r.axis_value, r.beta2, r.alpha2, r.entropy_bits, r.c0_sq,
             r.mean_pairs, r.error) for r in run_sweep(spec)]
    if fmt == "json":
        return emit_json(_SWEEP_COLUMNS, rows)
    return emit_csv(_sweep_comments(spec), _SWEEP_COLUMNS, rows)


def _run_sweep_mode(args: argparse.Namespace) -> int:
    axis, start, stop, steps, scale = _parse_sweep_flag(args.sweep)
    if args.field is None:
        args.field = "sauter" if axis == "tau" else None
    field_kind = _require(args, "field", "--field")
    stat = Statistics(_require(args, "stat", "--stat"))
    fixed = {}
    for key, flag in (("m", "--m"), ("q", "--q"), ("k_perp", "--kperp"),
                      ("k_z", "--kz"), ("E0", "--E0"), ("tau", "--tau")):
        if key == axis:
            continue
        if key == "tau" and field_kind != "sauter":
            continue
        attr = {"k_perp": "kperp", "k_z": "kz"}.get(key, key)
        value = getattr(args, attr)
        if value is None:
            raise UsageError(f"missing {flag} (fixed parameter for this sweep)")
        fixed[key] = float(value)
    try:
        spec = SweepSpec(axis=axis, start=start, stop=stop, steps=steps,
                         stat=stat, field_kind=field_kind, fixed=fixed,
                         scale=scale, convention=args.convention)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    _write_output(_render_sweep(spec, args.fmt), args.out)
    return EXIT_OK


def _run_preset_mode(args: argparse.Namespace) -> int:
    try:
        specs = figure_preset(args.preset)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    out_dir = args.out or "."
    os.makedirs(out_dir, exist_ok=True)
    ext = "json" if args.fmt == "json" else "csv"
    for spec in specs:
        path = os.path.join(out_dir, f"{args.preset}_{spec.label}.{ext}")
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(_render_sweep(spec, args.fmt))
        print(path)
    return EXIT_OK


def _run_point_mode(args: argparse.Namespace) -> int:
    stat = Statistics(_require(args, "stat", "--stat"))
    field_kind = _require(args, "field", "--field")
    e0 = _require(args, "E0", "--E0")
    if field_kind == "sauter":
        field = FieldProfile.sauter(e0, _require(args, "tau", "--tau"))
    else:
        field = FieldProfile.constant(e0)
    params = ModeParams(m=args.m, q=args.q, k_perp=args.kperp, k_z=args.kz)
    mod = moduli(params, field, stat, convention=args.convention)
    rep = entropy(mod)
    row = (rep.beta2, rep.alpha2, mod.log_beta2, mod.log_alpha2,
           rep.S_bits, rep.c0_sq, rep.mean_pairs)
    if args.fmt == "json":
        text = emit_json(_POINT_COLUMNS, [row])
    else:
        comments = [("mode", "point"), ("stat", stat.value),
                    ("field", field_kind), ("convention", args.convention),
                    ("m", _fmt(args.m)), ("q", _fmt(args.q)),
                    ("kperp", _fmt(args.kperp)), ("kz", _fmt(args.kz)),
                    ("E0", _fmt(float(e0)))]
        if field.is_sauter:
            comments.append(("tau", _fmt(field.tau)))
        text = emit_csv(comments, _POINT_COLUMNS, [row])
    _write_output(text, args.out)
    return EXIT_OK


def _run_verify_mode(args: argparse.Namespace) -> int:
    results = run_checks(args.verify)
    n_pass = sum(r.passed for r in results)
    if args.fmt == "json":
        objs = [{"name": r.name, "passed": r.passed, "detail": r.detail}
                for r in results]
        text = json.dumps(objs, indent=2) + "\n"
    else:
        lines = [f"{'PASS' if r.passed else 'FAIL'} {r.name}: {r.detail}"
                 for r in results]
        lines.append(f"{n_pass}/{len(results)} checks passed "
                     f"(level={args.verify})")
        text = "\n".join(lines) + "\n"
    _write_output(text, args.out)
    return EXIT_OK if n_pass == len(results) else EXIT_VERIFY_FAILED


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.config is not None:
            _apply_config(args, args.config)
        _fill_param_defaults(args)
        modes = [name for name, on in (("--verify", args.verify),
                                       ("--preset", args.preset),
                                       ("--sweep", args.sweep)) if on]
        if len(modes) > 1:
            raise UsageError(f"flags {' and '.join(modes)} are mutually "
                             "exclusive")
        if args.verify:
            return _run_verify_mode(args)
        if args.preset:
            return _run_preset_mode(args)
        if args.sweep:
            return _run_sweep_mode(args)
        if args.E0 is None and args.stat is None:
            parser.print_usage(sys.stderr)
            print("error: nothing to do: give point parameters, --sweep, "
                  "--preset, or --verify", file=sys.stderr)
            return EXIT_USAGE
        return _run_point_mode(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OracleError as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except ArithmeticError as exc:
        # saturation, cancellation, gamma poles
        print(f"numerical error: {type(exc).__name__}: {exc}",
              file=sys.stderr)
        return EXIT_NUMERICAL
    except ValueError as exc:
        # bad parameter values (degenerate modes, field validation)
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
