"""``paragrade`` command line.

Exit codes: 0 success, 1 a check ran and failed, 2 usage or input error.
An optional ``--config`` file of ``key = value`` lines supplies option
defaults; flags given on the command line win.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Sequence

from . import __version__
from .formats import dumps, load_operator
from .grading import DimensionError, GradedStructureKind, commutation_table, sectors
from .oscillator import FixtureError

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
DEFAULT_SEED = 0


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# config layering


def read_config(path: str | Path) -> dict[str, str]:
    """Parse ``key = value`` lines; ``#`` starts a comment."""
    out: dict[str, str] = {}
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc.strerror}") from None
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{n}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        out[key.replace("_", "-")] = value
    return out


def _config_tokens(sub: argparse.ArgumentParser, config: dict[str, str]) -> list[str]:
    """Turn config entries the subcommand understands into argv tokens."""
    known = {}
    for action in sub._actions:
        for opt in action.option_strings:
            if opt.startswith("--"):
                known[opt[2:]] = action
    tokens = []
    for key, value in config.items():
        action = known.get(key)
        if action is None:
            continue
        if action.nargs == 0:
            if value.lower() in ("1", "true", "yes", "on"):
                tokens.append("--" + key)
        elif action.nargs in ("+", "*"):
            tokens += ["--" + key, *value.split()]
        else:
            tokens += ["--" + key, value]
    return tokens


# ---------------------------------------------------------------------------
# output helpers


def _emit(text: str, out) -> None:
    out.write(text if text.endswith("\n") else text + "\n")


def _csv(rows: list[list], header: list[str]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _kind(name: str) -> GradedStructureKind:
    try:
        return GradedStructureKind.parse(name)
    except (ValueError, KeyError) as exc:
        raise UsageError(str(exc)) from None


# ---------------------------------------------------------------------------
# subcommands


def cmd_tables(args, out) -> int:
    kind = _kind(args.kind)
    table = commutation_table(kind)
    names = [str(s) for s in sectors(kind)]
    if args.format == "json":
        _emit(dumps({"kind": kind.value, "sectors": names, "table": table}), out)
    elif args.format == "csv":
        _emit(_csv([[n, *row] for n, row in zip(names, table)], ["sector", *names]), out)
    else:
        width = max(len(n) for n in names) + 1
        lines = [" " * width + " ".join(n.rjust(width) for n in names)]
        for n, row in zip(names, table):
            lines.append(n.ljust(width) + " ".join(str(b).rjust(width) for b in row))
        _emit("\n".join(lines), out)
    return EXIT_OK


def cmd_jacobi(args, out) -> int:
    from .graded_algebra import check_jacobi

    kind = _kind(args.kind)
    try:
        ops = [load_operator(p) for p in args.ops]
    except OSError as exc:
        raise UsageError(f"cannot read operator file: {exc}") from None
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    try:
        rep = check_jacobi(kind, *ops, tol=args.tol)
    except DimensionError as exc:
        raise UsageError(str(exc)) from None
    _emit(dumps({"kind": kind.value, **rep.as_dict()}), out)
    return EXIT_OK if rep.passed else EXIT_FAIL


DEFAULT_GENERATORS = {
    1: {"B": "0", "F": "1"},
    2: {"H": "00", "Q1": "10", "Q2": "01", "Z": "11"},
}


def _alphabet(kind: GradedStructureKind, gens: Sequence[str] | None):
    from .hopf import Alphabet

    if not gens:
        return Alphabet.of(kind, DEFAULT_GENERATORS[kind.arity])
    spec = {}
    for g in gens:
        if "=" not in g:
            raise UsageError(f"generator spec {g!r} must look like name=grading")
        name, grading = g.split("=", 1)
        spec[name.strip()] = grading.strip()
    try:
        return Alphabet.of(kind, spec)
    except (ValueError, DimensionError) as exc:
        raise UsageError(str(exc)) from None


def _word_json(w) -> dict:
    from .hopf import _coeff_json

    return {
        "arity": 1,
        "terms": [{"coeff": _coeff_json(c), "word": list(word)} for word, c in w.sorted_terms()],
    }


def cmd_hopf(args, out) -> int:
    from . import hopf

    kind = _kind(args.kind)
    alph = _alphabet(kind, args.gen)
    payload: dict = {"kind": kind.value, "generators": {k: str(v) for k, v in alph.gradings.items()}}
    status = EXIT_OK
    if args.expand is not None:
        try:
            w = hopf.parse_word_expression(args.expand, alph)
        except (KeyError, ValueError) as exc:
            raise UsageError(str(exc).strip("'\"")) from None
        payload["input"] = _word_json(w)
        if args.op == "coproduct":
            payload["result"] = hopf.n_fold_coproduct(w, args.n).to_json()
        elif args.op == "antipode":
            payload["result"] = _word_json(hopf.antipode(w))
        else:
            c = hopf.counit(w)
            payload["result"] = hopf._coeff_json(c)
    if args.check_axioms:
        fails = hopf.axiom_failures(alph, args.max_len)
        words = sum(1 for _ in hopf.all_words(alph, args.max_len))
        payload["axioms"] = {
            "max_len": args.max_len,
            "words": words,
            "failures": {k: [list(w) for w in v] for k, v in fails.items()},
            "passed": not any(fails.values()),
        }
        if any(fails.values()):
            status = EXIT_FAIL
    if args.expand is None and not args.check_axioms:
        raise UsageError("nothing to do: give --expand and/or --check-axioms")
    _emit(dumps(payload), out)
    return status


def _grid(text: str) -> list[float]:
    try:
        vals = [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"grid must be comma-separated numbers, got {text!r}") from None
    if not vals:
        raise UsageError("empty grid")
    return vals


def cmd_classify(args, out) -> int:
    from . import minimal_classify as mc

    grid = _grid(args.grid)
    res = mc.enumerate_lie_classes(grid) if args.which == "lie" else mc.enumerate_super_classes(grid)
    data = res.as_dict()
    if args.format == "json":
        _emit(dumps(data), out)
    else:
        lines = [f"{res.which}: {res.count} classes ({len(res.families())} zero-pattern families), "
                 f"reference count {res.reference_count}, {res.valid_points} valid grid points"]
        for c in data["classes"]:
            rep = " ".join(f"{k}={v}" for k, v in c["representative"].items())
            free = ",".join(c["free_parameters"]) or "-"
            lines.append(f"  orbit {c['orbit_size']:4d}  free {free:12s}  {rep}")
        _emit("\n".join(lines), out)
    return EXIT_OK


def _assignments(label: str):
    from . import oscillator as osc

    if label == "all":
        return osc.enumerate_assignments()
    try:
        return [osc.get_assignment(label)]
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None


def cmd_spectrum(args, out) -> int:
    from . import oscillator as osc

    if args.nmax < 1:
        raise UsageError("--nmax must be >= 1")
    model = osc.build_model(args.nmax)
    assigns = _assignments(args.assignment)
    if args.fock_levels is not None and not 1 <= args.fock_levels <= model.fock_dim:
        raise UsageError(f"--fock-levels must lie in [1, {model.fock_dim}]")

    def one(a):
        return osc.spectrum(osc.two_particle_space(a, model), model, fock_levels=args.fock_levels)

    with ThreadPoolExecutor(max_workers=max(1, args.workers)) as pool:
        reports = list(pool.map(one, assigns))  # map keeps input order
    if args.format == "csv":
        rows = [[r.assignment, lv["energy"], lv["multiplicity"]]
                for r in reports for lv in r.as_dict()["levels"]]
        _emit(_csv(rows, ["assignment", "energy", "multiplicity"]), out)
    else:
        payload = {"nmax": args.nmax, "reports": [r.as_dict() for r in reports]}
        _emit(dumps(payload), out)
    return EXIT_OK if all(r.additive for r in reports) else EXIT_FAIL


def cmd_states(args, out) -> int:
    from . import oscillator as osc

    if args.assignment == "all":
        raise UsageError("states needs a single assignment label")
    (a,) = _assignments(args.assignment)
    sp = osc.two_particle_space(a)
    if args.format == "json":
        _emit(dumps(sp.as_dict()), out)
        return EXIT_OK
    lines = [f"{a.label} ({a.kind.value}): {sp.dim} two-particle internal states"]
    for lab, vec in zip(sp.labels, sp.exact_basis):
        parts = [f"{x}*v{i + 1}" for i, x in enumerate(vec) if x]
        eps = f"  eps={sp.epsilon[lab]:+d}" if lab in sp.epsilon else ""
        lines.append(f"  {lab:7s} = " + " + ".join(parts) + eps)
    _emit("\n".join(lines), out)
    return EXIT_OK


def _load_space(ref: str):
    from . import oscillator as osc

    p = Path(ref)
    if p.suffix == ".json" or p.exists():
        try:
            return osc.TwoParticleSpace.from_dict(json.loads(p.read_text()))
        except OSError as exc:
            raise UsageError(f"cannot read space file {ref}: {exc.strerror}") from None
        except (ValueError, KeyError, TypeError) as exc:
            raise UsageError(f"bad space file {ref}: {exc}") from None
    try:
        return osc.two_particle_space(osc.get_assignment(ref))
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None


def cmd_detect(args, out) -> int:
    from .observables import detect

    sample = _load_space(args.sample)
    reference = _load_space(args.reference) if args.reference else None
    try:
        res = detect(sample, reference)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    data = res.as_dict()
    if args.format == "json":
        _emit(dumps(data), out)
    else:
        vals = ", ".join(f"{k}={v}" for k, v in data["w_eigenvalues"].items())
        _emit(f"{data['verdict']} (epsilon={data['epsilon']}) from {vals}", out)
    return EXIT_OK


def cmd_selftest(args, out) -> int:
    from .acceptance import format_line, run_all

    results = run_all(seed=args.seed, repeats=args.repeats)
    ok = all(r.status in ("PASS", "REPORT") for r in results)
    if args.format == "json":
        _emit(dumps({"seed": args.seed, "passed": ok, "criteria": [r.as_dict() for r in results]}), out)
    else:
        lines = [f"paragrade {__version__} acceptance suite (seed {args.seed})"]
        lines += [format_line(r) for r in results]
        counts = {s: sum(r.status == s for r in results) for s in ("PASS", "REPORT", "FAIL")}
        lines.append(f"summary: {counts['PASS']} pass, {counts['REPORT']} report-only, {counts['FAIL']} fail")
        _emit("\n".join(lines), out)
    return EXIT_OK if ok else EXIT_FAIL


# ---------------------------------------------------------------------------
# parser


def build_parser() -> tuple[argparse.ArgumentParser, dict[str, argparse.ArgumentParser]]:
    p = argparse.ArgumentParser(prog="paragrade", description=__doc__.split("\n")[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("--config", help="key = value file supplying option defaults")
    p.add_argument("--fixtures", help="fixture directory (overrides PARAGRADE_FIXTURES)")
    sub = p.add_subparsers(dest="command", metavar="command")
    subs: dict[str, argparse.ArgumentParser] = {}

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_, description=help_)
        sp.set_defaults(func=fn)
        subs[name] = sp
        return sp

    kinds = [k.value for k in GradedStructureKind]

    s = add("tables", cmd_tables, "print a commutation table")
    s.add_argument("--kind", required=True, choices=kinds)
    s.add_argument("--format", choices=["ascii", "json", "csv"], default="ascii")

    s = add("jacobi", cmd_jacobi, "graded Jacobi check on three matrix files")
    s.add_argument("--kind", required=True, choices=kinds)
    s.add_argument("--ops", nargs=3, required=True, metavar="FILE")
    s.add_argument("--tol", type=float, default=1e-12)

    s = add("hopf", cmd_hopf, "expand coproducts/antipodes of words, check Hopf identities")
    s.add_argument("--kind", default="z2z2-super", choices=kinds)
    s.add_argument("--gen", nargs="+", metavar="NAME=GRADING",
                   help="generators (default H=00 Q1=10 Q2=01 Z=11, or B=0 F=1 for z2)")
    s.add_argument("--expand", metavar="EXPR", help='word expression, e.g. "Q1*Q2 - 2*H"')
    s.add_argument("--op", choices=["coproduct", "antipode", "counit"], default="coproduct")
    s.add_argument("--n", type=int, default=1, help="coproduct iterations (n+1 tensor factors)")
    s.add_argument("--check-axioms", action="store_true")
    s.add_argument("--max-len", type=int, default=3)

    s = add("classify", cmd_classify, "enumerate minimal algebra classes on a grid")
    s.add_argument("--which", choices=["lie", "super"], required=True)
    s.add_argument("--grid", default="-1,0,1")
    s.add_argument("--format", choices=["ascii", "json"], default="json")

    s = add("spectrum", cmd_spectrum, "two-particle energy levels per assignment")
    s.add_argument("--assignment", default="all")
    s.add_argument("--nmax", type=int, default=8)
    s.add_argument("--fock-levels", type=int, default=None,
                   help="single-particle Fock levels kept (default nmax-1; 1 = internal only)")
    s.add_argument("--format", choices=["json", "csv"], default="json")
    s.add_argument("--workers", type=int, default=1)

    s = add("states", cmd_states, "print a two-particle state basis")
    s.add_argument("--assignment", required=True)
    s.add_argument("--format", choices=["ascii", "json"], default="ascii")

    s = add("detect", cmd_detect, "boson/paraboson verdict from the X_* observable")
    s.add_argument("--sample", required=True, help="space JSON file or assignment label")
    s.add_argument("--reference", help="calibration space (file or label)")
    s.add_argument("--format", choices=["json", "ascii"], default="json")

    s = add("selftest", cmd_selftest, "run the acceptance suite")
    s.add_argument("--seed", type=int, default=DEFAULT_SEED)
    s.add_argument("--repeats", type=int, default=3)
    s.add_argument("--format", choices=["ascii", "json"], default="ascii")
    return p, subs


_VALUE_OPTIONS = ("--grid",)


def _join_negative_values(argv: list[str]) -> list[str]:
    # "--grid -1,0,1" would otherwise read "-1,0,1" as an option
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if tok in _VALUE_OPTIONS and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    argv = _join_negative_values(list(sys.argv[1:] if argv is None else argv))
    parser, subs = build_parser()
    # global options only: the full parse must wait until config defaults are in
    pre_parser = argparse.ArgumentParser(add_help=False)
    pre_parser.add_argument("--config")
    pre_parser.add_argument("--fixtures")
    pre, rest = pre_parser.parse_known_args(argv)
    command = next((t for t in rest if t in subs), None)
    try:
        if pre.config and command is not None:
            config = read_config(pre.config)
            i = argv.index(command)
            argv = argv[: i + 1] + _config_tokens(subs[command], config) + argv[i + 1:]
        try:
            args = parser.parse_args(argv)
        except SystemExit as exc:
            return int(exc.code or 0)
        if args.command is None:
            parser.print_usage(err)
            return EXIT_USAGE
        if args.fixtures:
            os.environ["PARAGRADE_FIXTURES"] = args.fixtures
        return args.func(args, out)
    except UsageError as exc:
        err.write(f"paragrade: error: {exc}\n")
        return EXIT_USAGE
    except FixtureError as exc:
        err.write(f"paragrade: error: {exc}\n")
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
