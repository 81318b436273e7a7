"""Command-line front end.

Subcommands::

    verify     --dim n [--form FILE] [--w W]
    spectrum   --kappa K --ell-max L --nmax NMAX --size N [--cone upper|lower] [--beta B]
    monodromy  --lambda RE[,IM] | --scan A:B:STEP [--kappa K]
    classify   --lambda X
    eval       --dim n EXPR [--grade] [--restrictable]

Exit codes: 0 all checks pass, 1 a mathematical check failed, 2 usage or
configuration error.  ``--config FILE`` reads flat ``key = value`` lines
(keys are the long flag names, dashes or underscores); flags given on the
command line win.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

from . import __version__

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    """Bad flags, bad config or an input outside the supported domain."""


# ---------------------------------------------------------------------------
# config

# key -> (subcommands using it, parser, default)
_OPTIONS = {
    "dim": (("verify", "eval"), int, 4),
    "form": (("verify", "eval"), str, None),
    "w": (("verify",), str, None),
    "seed": (("verify",), int, 0),
    "kappa": (("spectrum", "monodromy"), float, 1.0),
    "ell_max": (("spectrum",), int, None),
    "nmax": (("spectrum",), int, 3),
    "size": (("spectrum",), int, 200),
    "beta": (("spectrum",), float, None),
    "cone": (("spectrum",), str, "upper"),
    "lambda": (("monodromy", "classify"), str, None),
    "scan": (("monodromy",), str, None),
    "format": (("verify", "spectrum", "monodromy", "classify", "eval"), str, None),
    "output": (("verify", "spectrum", "monodromy", "classify", "eval"), str, None),
}


def read_config(path: str) -> Dict[str, str]:
    """Flat ``key = value`` file; ``#`` starts a comment."""
    out = {}
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc.strerror}")
    for num, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{num}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in _OPTIONS:
            raise UsageError(f"{path}:{num}: unknown key {key!r}")
        out[key] = value
    return out


def resolve(args: argparse.Namespace) -> Dict[str, object]:
    """Merge defaults, config file and flags into the run configuration."""
    file_cfg = read_config(args.config) if args.config else {}
    cfg = {}
    for key, (cmds, conv, default) in _OPTIONS.items():
        if args.command not in cmds:
            continue
        flag = getattr(args, key, None)
        if flag is not None:
            cfg[key] = flag
        elif key in file_cfg:
            try:
                cfg[key] = conv(file_cfg[key])
            except ValueError:
                raise UsageError(f"config value for {key!r} is not a valid {conv.__name__}: {file_cfg[key]!r}")
        else:
            cfg[key] = default
    return cfg


# ---------------------------------------------------------------------------
# output


def _clean(x):
    """Recursively fix floats to 15 significant digits; non-finite become strings."""
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, float):
        if not math.isfinite(x):
            return str(x)
        return float(f"{x:.15g}")
    if isinstance(x, complex):
        return {"re": _clean(x.real), "im": _clean(x.imag)}
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {str(k): _clean(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_clean(v) for v in x]
    if hasattr(x, "item"):  # numpy scalar
        return _clean(x.item())
    return str(x)


def json_report(command: str, config: dict, checks: List[dict], tables: dict) -> str:
    doc = {
        "meta": {"version": __version__, "command": command, "config": config},
        "checks": [{k: c[k] for k in ("id", "paper_anchor", "status", "detail")} for c in checks],
        "tables": tables,
    }
    return json.dumps(_clean(doc), indent=2, sort_keys=False) + "\n"


def _fmt(x) -> str:
    if isinstance(x, float):
        return f"{x:.15g}"
    return str(x)


def csv_text(header: Sequence[str], rows: List[dict]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([_fmt(r[h]) for h in header])
    return buf.getvalue()


def checks_text(checks: List[dict]) -> str:
    return "".join(f"{c['status']:<5} {c['id']}: {c['detail']}\n" if c["detail"] else f"{c['status']:<5} {c['id']}\n"
                   for c in checks)


def _status(checks: List[dict]) -> int:
    return EXIT_FAIL if any(c["status"] == "FAIL" for c in checks) else EXIT_OK


def _check(ident, anchor, ok, detail=""):
    return {"id": ident, "paper_anchor": anchor, "status": "PASS" if ok else "FAIL", "detail": detail}


# ---------------------------------------------------------------------------
# parsing helpers


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"not a rational number: {text!r}")


def read_form(path: str):
    """Symmetric matrix from a text file: one row per line, entries separated
    by whitespace or commas, rationals allowed."""
    from .weyl import QuadraticForm

    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read form {path}: {exc.strerror}")
    rows = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].replace(",", " ").split()
        if line:
            rows.append([_rational(x) for x in line])
    try:
        return QuadraticForm(rows)
    except ValueError as exc:
        raise UsageError(f"invalid form in {path}: {exc}")


def parse_lambda(text: str) -> complex:
    parts = text.split(",")
    if len(parts) > 2:
        raise UsageError(f"lambda must be RE or RE,IM, got {text!r}")
    try:
        vals = [float(p) for p in parts]
    except ValueError:
        raise UsageError(f"lambda must be numeric, got {text!r}")
    return complex(vals[0], vals[1] if len(vals) == 2 else 0.0)


def parse_scan(text: str):
    parts = text.split(":")
    if len(parts) != 3:
        raise UsageError(f"scan must be A:B:STEP, got {text!r}")
    try:
        a, b, step = (float(p) for p in parts)
    except ValueError:
        raise UsageError(f"scan bounds must be numeric, got {text!r}")
    if step <= 0 or b < a:
        raise UsageError("scan needs A <= B and STEP > 0")
    if b >= 0:
        raise UsageError("scan range must lie in lambda < 0")
    return a, b, step


# ---------------------------------------------------------------------------
# subcommands; each returns (checks, tables, text)


def cmd_verify(cfg):
    from .verify import run_symbolic_suite
    from .weyl import QuadraticForm

    form = read_form(cfg["form"]) if cfg["form"] else None
    if form is None:
        if cfg["dim"] < 3:
            raise UsageError("--dim must be at least 3")
        form = QuadraticForm.standard(cfg["dim"])
    w = [_rational(x) for x in cfg["w"].split(",")] if cfg["w"] else None
    if w is not None:
        if len(w) != form.n:
            raise UsageError(f"--w has {len(w)} entries, the form has dimension {form.n}")
        from .cone import PLQS

        try:
            PLQS(form.matrix, w)
        except ValueError as exc:
            raise UsageError(f"--w does not make a pointed Lorentzian space: {exc}")
    rows = run_symbolic_suite(form, w=w, seed=cfg["seed"])
    checks = [r for r in rows if r["status"] != "INFO"]
    info = [r for r in rows if r["status"] == "INFO"]
    text = checks_text(checks) + "".join(f"{r['id']}: {r['detail']}\n" for r in info)
    return checks, {}, text


_CSV_HEADER = ["n", "ell", "lambda", "expected", "rel_err", "residual", "N", "beta"]


def cmd_spectrum(cfg):
    from .spectral import SpectralError, default_tolerance, degeneracy_table, lower_cone_bound_states

    kappa, nmax, size = cfg["kappa"], cfg["nmax"], cfg["size"]
    if not kappa > 0:
        raise UsageError("--kappa must be positive")
    if nmax < 1 or size < 2:
        raise UsageError("--nmax must be >= 1 and --size >= 2")
    if cfg["cone"] not in ("upper", "lower"):
        raise UsageError("--cone must be upper or lower")
    beta = kappa if cfg["beta"] is None else cfg["beta"]
    if not beta > 0:
        raise UsageError("--beta must be positive")
    ell_max = nmax - 1 if cfg["ell_max"] is None else cfg["ell_max"]
    if ell_max < 0:
        raise UsageError("--ell-max must be >= 0")

    if cfg["cone"] == "lower":
        rows, checks = [], []
        for ell in range(ell_max + 1):
            neg, pos = lower_cone_bound_states(kappa, ell, size, beta)
            rows.append({"ell": ell, "N": size, "beta": beta, "negatives": len(neg), "min_positive": pos})
            checks.append(_check(f"lower_cone ell={ell}", "no bound states on the lower cone", not neg,
                                 f"{len(neg)} eigenvalues below -1e-10; min positive {pos:.6g}"))
        header = ["ell", "N", "beta", "negatives", "min_positive"]
        return checks, {"lower_cone": rows}, csv_text(header, rows)

    try:
        rep = degeneracy_table(kappa, nmax, size=size, beta=beta, ell_max=max(ell_max, nmax))
    except SpectralError as exc:
        return [_check("pencil", "the pencil matrices are symmetric", False, str(exc))], {}, str(exc) + "\n"
    checks = []
    for n in range(1, nmax + 1):
        found = sorted(r["ell"] for r in rep.rows if r["n"] == n)
        want = list(range(min(n, ell_max + 1)))
        # only l <= ell_max is requested; degeneracy counts every l < n
        checks.append(_check(f"level n={n}", "bound state -kappa^2/(4 n^2) for every l < n",
                             all((n, l) not in rep.missing for l in want),
                             f"tolerance {default_tolerance(n):g}; found l = {found}"))
        checks.append(_check(f"degeneracy n={n}", "sum over l < n of (2l+1) equals n^2",
                             rep.degeneracy[n] == n * n, f"total degeneracy {rep.degeneracy[n]}"))
        absent = [l for (m, l), ok in rep.absent.items() if m == n]
        checks.append(_check(f"absent n={n}", "the level does not occur for l >= n",
                             all(rep.absent[(n, l)] for l in absent), f"checked l = {absent}"))
    rows = [r for r in rep.csv_rows() if r["ell"] <= ell_max]
    deg = [{"n": n, "degeneracy": d, "expected": n * n} for n, d in sorted(rep.degeneracy.items())]
    text = csv_text(_CSV_HEADER, rows) + "\n" + csv_text(["n", "degeneracy", "expected"], deg)
    return checks, {"levels": rows, "degeneracy": deg}, text


def cmd_monodromy(cfg):
    from .sl2_pencil import DomainError, candidate_spectrum, monodromy, monodromy_closed_form, scan

    if (cfg["lambda"] is None) == (cfg["scan"] is None):
        raise UsageError("give exactly one of --lambda or --scan")
    if cfg["lambda"] is not None:
        lam = parse_lambda(cfg["lambda"])
        try:
            res = monodromy(lam)
            ref = monodromy_closed_form(lam)
        except DomainError as exc:
            raise UsageError(str(exc))
        rel = abs(res.integral - ref) / abs(ref)
        checks = [_check("integral", "I(lambda) = 2 pi / sqrt(-lambda)", rel < 1e-10, f"relative error {rel:.3g}")]
        if lam.imag == 0:
            checks.append(_check("unimodular", "|M| = 1 for real lambda < 0", abs(abs(res.M) - 1) < 1e-12,
                                 f"|M| = {abs(res.M):.15g}"))
        else:
            checks.append(_check("abs_M", "|M| = exp(Im(lambda) int sin^2/|c|^2)",
                                 abs(abs(res.M) - res.abs_M) < 1e-9 * max(1.0, res.abs_M),
                                 f"|M| = {abs(res.M):.15g}"))
        table = {"lambda": lam, "integral": res.integral, "closed_form": ref, "M": res.M, "abs_M": res.abs_M,
                 "panels": res.panels}
        text = (f"lambda = {lam.real:.15g}{lam.imag:+.15g}i\n"
                f"I = {res.integral.real:.15g}{res.integral.imag:+.15g}i\n"
                f"M = {res.M.real:.15g}{res.M.imag:+.15g}i\n|M| = {abs(res.M):.15g}\n") + checks_text(checks)
        return checks, {"monodromy": table}, text

    a, b, step = parse_scan(cfg["scan"])
    kappa = cfg["kappa"]
    if not kappa > 0:
        raise UsageError("--kappa must be positive")
    res = scan(a, b, step, kappa=kappa)
    on_grid = [c for c in candidate_spectrum(kappa, 10_000) if a - 1e-12 <= c <= b + 1e-12
               and abs((c - a) / step - round((c - a) / step)) < 1e-9]
    missed = [c for c in on_grid if not any(abs(h - c) < 1e-9 for h in res.hits)]
    checks = [
        _check("no_stray", "M = 1 only near -kappa^2/m^2", res.ok, f"stray hits {res.stray}"),
        _check("candidates_hit", "M = 1 at every -kappa^2/m^2 on the grid", not missed,
               f"hits {res.hits}" + (f"; missed {missed}" if missed else "")),
    ]
    text = "".join(f"hit {h:.15g}\n" for h in res.hits) + checks_text(checks)
    return checks, {"scan": {"grid_points": len(res.grid), "hits": res.hits, "stray": res.stray}}, text


def cmd_classify(cfg):
    from .sl2_pencil import classify_and_conjugate

    if cfg["lambda"] is None:
        raise UsageError("--lambda is required")
    lam = parse_lambda(cfg["lambda"])
    if lam.imag:
        raise UsageError("classify needs a real lambda")
    try:
        cls, a = classify_and_conjugate(lam.real)
    except ArithmeticError as exc:
        return [_check("conjugator", "A X A^-1 equals the normal form", False, str(exc))], {}, str(exc) + "\n"
    checks = [_check("conjugator", "A X A^-1 equals the normal form with det A = 1", True, str(cls))]
    table = {"class": cls.tag, "nu": cls.nu, "conjugator": a.tolist()}
    return checks, {"classification": table}, str(cls) + "\n"


def cmd_eval(cfg, expr: str, grade: bool, restrictable: bool):
    from .dsl import ParseError, format_expr, parse_operator
    from .weyl import QuadraticForm, bigrade, preserves_ideal

    form = read_form(cfg["form"]) if cfg["form"] else None
    n = form.n if form is not None else cfg["dim"]
    if n < 1:
        raise UsageError("--dim must be >= 1")
    try:
        e = parse_operator(expr, n)
    except ParseError as exc:
        raise UsageError(f"{exc}\n  {expr}\n  {' ' * exc.position}^")
    table = {"expr": format_expr(e)}
    lines = [table["expr"]]
    if grade:
        pieces = [{"k": k, "l": l, "piece": format_expr(p)} for (k, l), p in bigrade(e)]
        table["bigrade"] = pieces
        lines += [f"({p['k']},{p['l']}): {p['piece']}" for p in pieces]
    if restrictable:
        if form is None:
            if n < 3:
                raise UsageError("--restrictable needs dimension >= 3")
            form = QuadraticForm.standard(n)
        ok = preserves_ideal(e, form.polynomial())
        table["restrictable"] = ok
        lines.append(f"restrictable: {'yes' if ok else 'no'}")
    return [], {"eval": table}, "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# argument parser


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="conequant", description="Differential operators on the null cone: checks and spectra.")
    p.add_argument("--version", action="version", version=f"conequant {__version__}")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    def common(sp):
        sp.add_argument("--config", help="flat key = value file; flags override it")
        sp.add_argument("--format", choices=("text", "json", "csv"), help="output format")
        sp.add_argument("--output", "-o", help="write to this file instead of stdout")

    sp = sub.add_parser("verify", help="symbolic Lie-structure and radial checks")
    common(sp)
    sp.add_argument("--dim", type=int, help="dimension of the standard Lorentzian form (default 4)")
    sp.add_argument("--form", help="file with a symmetric form matrix")
    sp.add_argument("--w", help="distinguished covector, comma separated (default: last coordinate)")
    sp.add_argument("--seed", type=int, help="seed for sampled checks")

    sp = sub.add_parser("spectrum", help="bound states and degeneracies from the Laguerre pencil")
    common(sp)
    sp.add_argument("--kappa", type=float)
    sp.add_argument("--ell-max", dest="ell_max", type=int, help="largest l reported (default nmax - 1)")
    sp.add_argument("--nmax", type=int)
    sp.add_argument("--size", type=int, help="basis size N")
    sp.add_argument("--cone", choices=("upper", "lower"))
    sp.add_argument("--beta", type=float, help="basis scale (default kappa)")

    sp = sub.add_parser("monodromy", help="monodromy integral at a point or on a grid")
    common(sp)
    sp.add_argument("--lambda", dest="lambda", help="RE or RE,IM")
    sp.add_argument("--scan", help="A:B:STEP over negative lambda")
    sp.add_argument("--kappa", type=float)

    sp = sub.add_parser("classify", help="conjugacy class of lambda E + F")
    common(sp)
    sp.add_argument("--lambda", dest="lambda")

    sp = sub.add_parser("eval", help="parse, normal-order and print an operator")
    common(sp)
    sp.add_argument("expr")
    sp.add_argument("--dim", type=int)
    sp.add_argument("--form", help="file with a symmetric form matrix (for --restrictable)")
    sp.add_argument("--grade", action="store_true", help="split into bigraded pieces")
    sp.add_argument("--restrictable", action="store_true", help="does it preserve the ideal (Q)?")
    return p


_NEGATIVE_OK = ("--lambda", "--scan", "--w")


def _join_negative_values(argv: Sequence[str]) -> List[str]:
    """``--scan -1:-0.1:0.01`` would look like a flag to argparse; glue it as
    ``--scan=-1:-0.1:0.01``."""
    out: List[str] = []
    it = iter(argv)
    for tok in it:
        if tok in _NEGATIVE_OK:
            nxt = next(it, None)
            if nxt is not None and nxt.startswith("-") and nxt[1:2] and (nxt[1].isdigit() or nxt[1] == "."):
                out.append(f"{tok}={nxt}")
                continue
            out.append(tok)
            if nxt is not None:
                out.append(nxt)
            continue
        out.append(tok)
    return out


_DEFAULT_FORMAT = {"verify": "text", "spectrum": "csv", "monodromy": "text", "classify": "text", "eval": "text"}


def run_command(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    """Run the CLI and return the exit code."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        try:
            args = parser.parse_args(_join_negative_values(sys.argv[1:] if argv is None else argv))
        except SystemExit as exc:  # --help / --version
            return int(exc.code or 0)
        if args.command is None:
            raise UsageError("a subcommand is required: verify, spectrum, monodromy, classify, eval")
        cfg = resolve(args)
        fmt = cfg["format"] or _DEFAULT_FORMAT[args.command]
        if fmt not in ("text", "json", "csv"):
            raise UsageError(f"unknown format {fmt!r}")
        if args.command == "eval":
            checks, tables, text = cmd_eval(cfg, args.expr, args.grade, args.restrictable)
        else:
            checks, tables, text = globals()[f"cmd_{args.command}"](cfg)
    except UsageError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_USAGE

    if fmt == "json":
        public = {k: v for k, v in cfg.items() if k not in ("format", "output")}
        out = json_report(args.command, public, checks, tables)
    elif fmt == "csv" and args.command != "spectrum":
        out = csv_text(["id", "status", "detail"], checks)
    else:
        out = text
    if cfg["output"]:
        try:
            with open(cfg["output"], "w", encoding="utf-8") as fh:
                fh.write(out)
        except OSError as exc:
            print(f"error: cannot write {cfg['output']}: {exc.strerror}", file=stderr)
            return EXIT_USAGE
    else:
        stdout.write(out)
    code = _status(checks)
    if code == EXIT_FAIL:
        for c in checks:
            if c["status"] == "FAIL":
                print(f"FAILED {c['id']}: {c['paper_anchor']}", file=stderr)
    return code


def main() -> None:
    sys.exit(run_command())


if __name__ == "__main__":
    main()
