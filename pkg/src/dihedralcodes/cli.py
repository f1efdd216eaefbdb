"""Command-line front end: ``dihedral-codes <subcommand> ...``.

Exit codes: 0 success, 2 invalid input, 3 verification failure,
4 minimum-distance budget exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from . import codes
from .codes import CodeDescriptor, DualityClass
from .cyclotomic import FactorProfile, profile_for
from .errors import BudgetExceeded, DihedralCodeError, InvalidInput, NotCoprime
from .field import GF, gf
from .idempotents import crosscheck_idempotent, idempotents
from .matrices import DEFAULT_BUDGET, generator_matrix, min_distance
from .verify import run_sweep, tally_self_dual

EXIT_OK, EXIT_INVALID, EXIT_VERIFY, EXIT_BUDGET = 0, 2, 3, 4


@dataclass(frozen=True)
class RunConfig:
    q: str | None = None
    n: int | None = None
    classes: tuple[DualityClass, ...] = (DualityClass.ALL,)
    limit: int | None = None
    sample: int | None = None
    seed: int = 0
    format: str = "text"
    budget: int = DEFAULT_BUDGET

    def field(self) -> GF:
        if self.q is None:
            raise InvalidInput("--q is required")
        return gf(self.q)

    def profile(self) -> FactorProfile:
        if self.n is None:
            raise InvalidInput("--n is required")
        F = self.field()
        if self.n < 1:
            raise InvalidInput(f"n must be positive, got {self.n}")
        if math.gcd(self.n, F.q) != 1:
            raise NotCoprime(f"gcd({self.n}, {F.q}) != 1")
        return profile_for(F, self.n)

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunConfig":
        classes = tuple(DualityClass.parse(c) for c in getattr(args, "cls", None) or ["all"])
        return cls(
            q=getattr(args, "q", None),
            n=getattr(args, "n", None),
            classes=classes,
            limit=getattr(args, "limit", None),
            sample=getattr(args, "sample", None),
            seed=getattr(args, "seed", 0),
            format=getattr(args, "format", "text"),
            budget=getattr(args, "budget", DEFAULT_BUDGET),
        )


# -- output helpers ----------------------------------------------------------


def _dumps(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


def emit_records(records: Sequence[dict], fmt: str, out, columns: Sequence[str] | None = None) -> None:
    """Line-delimited JSON, CSV, or an aligned text table."""
    columns = list(columns or (records[0].keys() if records else []))
    if fmt == "json":
        for rec in records:
            out.write(_dumps(rec) + "\n")
        return
    cell = lambda v: _dumps(v) if isinstance(v, (list, dict)) else ("" if v is None else str(v))
    if fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(columns)
        for rec in records:
            w.writerow([cell(rec.get(c)) for c in columns])
        return
    rows = [[str(c) for c in columns]] + [[cell(rec.get(c)) for c in columns] for rec in records]
    widths = [max(len(r[k]) for r in rows) for k in range(len(columns))]
    for k, r in enumerate(rows):
        out.write("  ".join(v.rjust(w) for v, w in zip(r, widths)).rstrip() + "\n")
        if k == 0:
            out.write("  ".join("-" * w for w in widths) + "\n")


def read_descriptors(source: str, stdin) -> Iterator[CodeDescriptor]:
    text = stdin.read() if source == "-" else open(source, encoding="utf-8").read()
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            data = json.loads(line)
        except json.JSONDecodeError as exc:
            raise InvalidInput(f"line {lineno}: {exc}") from exc
        yield CodeDescriptor.from_json(data)


# -- subcommands -------------------------------------------------------------


def cmd_factor(cfg: RunConfig, args, out) -> int:
    prof = cfg.profile()
    recs = []
    for i, f in enumerate(prof.factors):
        rec = {"i": i, "degree": prof.degrees[i], "partner": prof.partner(i)}
        rec["factor"] = f.to_json() if cfg.format == "json" else str(f)
        recs.append(rec)
    emit_records(recs, cfg.format, out, ["i", "degree", "partner", "factor"])
    return EXIT_OK


def cmd_profile(cfg: RunConfig, args, out) -> int:
    prof = cfg.profile()
    data = prof.to_json()
    if cfg.format == "json":
        out.write(_dumps(data) + "\n")
        return EXIT_OK
    rec = {"q": prof.q, "n": prof.n, "r": prof.r, "t": prof.t, "I0": list(prof.i0),
           "degrees": list(prof.degrees), "pairs": [list(p) for p in prof.pairs]}
    emit_records([rec], cfg.format, out)
    return EXIT_OK


def cmd_idempotents(cfg: RunConfig, args, out) -> int:
    prof = cfg.profile()
    recs = []
    for i, e in enumerate(idempotents(prof)):
        recs.append({
            "i": i,
            "factor": prof.factors[i].to_json() if cfg.format == "json" else str(prof.factors[i]),
            "eps": e.to_json() if cfg.format == "json" else str(e),
            "crosscheck": crosscheck_idempotent(prof, i),
        })
    emit_records(recs, cfg.format, out, ["i", "factor", "eps", "crosscheck"])
    return EXIT_OK


def cmd_count(cfg: RunConfig, args, out) -> int:
    prof = cfg.profile()
    classes = cfg.classes if args.cls else tuple(DualityClass)
    recs = [{"q": prof.q, "n": prof.n, "class": c.value, "count": codes.count(prof, c)} for c in classes]
    emit_records(recs, cfg.format, out)
    return EXIT_OK


def _selected(cfg: RunConfig) -> Iterator[tuple[int | None, CodeDescriptor]]:
    from .verify import select

    prof = cfg.profile()
    for cls in cfg.classes:
        if cfg.sample is None:
            yield from ((k, d) for k, d in enumerate(select(prof, cls, cfg.limit)))
        else:
            yield from ((None, d) for d in select(prof, cls, None, cfg.sample, cfg.seed))


def cmd_enumerate(cfg: RunConfig, args, out) -> int:
    for k, desc in _selected(cfg):
        if cfg.format == "json":
            out.write(_dumps(desc.to_json()) + "\n")
        elif cfg.format == "csv":
            out.write(",".join(["" if k is None else str(k), str(codes.dim(desc)), str(desc)]) + "\n")
        else:
            prefix = "" if k is None else f"{k:>6}  "
            out.write(f"{prefix}dim={codes.dim(desc):<3} {desc}\n")
    return EXIT_OK


def _matrix_out(M, fmt: str, out, extra: dict | None = None) -> None:
    if fmt == "json":
        rec = {"rows": M.rows, "cols": M.cols, "matrix": M.tolist()}
        rec.update(extra or {})
        out.write(_dumps(rec) + "\n")
    elif fmt == "csv":
        out.write(M.to_csv() + ("\n" if M.rows else ""))
    else:
        for key, val in (extra or {}).items():
            out.write(f"# {key}: {val}\n")
        out.write(f"# {M.rows} x {M.cols}\n")
        if M.rows:
            out.write(M.to_text() + "\n")


def cmd_build(cfg: RunConfig, args, out) -> int:
    for desc in read_descriptors(args.descriptor, args.stdin):
        M = generator_matrix(desc, keep_zero_rows=args.keep_zero_rows)
        extra = {"dim": codes.dim(desc)}
        if args.distance:
            extra["min_distance"] = min_distance(M, cfg.budget)
        _matrix_out(M, cfg.format, out, extra)
    return EXIT_OK


def _map_descriptors(fn, cfg: RunConfig, args, out) -> int:
    for desc in read_descriptors(args.descriptor, args.stdin):
        res = fn(desc)
        if cfg.format == "json":
            out.write(_dumps(res.to_json()) + "\n")
        else:
            out.write(f"dim={codes.dim(res)} {res}\n")
    return EXIT_OK


def cmd_dual(cfg: RunConfig, args, out) -> int:
    return _map_descriptors(codes.dual, cfg, args, out)


def cmd_hull(cfg: RunConfig, args, out) -> int:
    return _map_descriptors(codes.hull, cfg, args, out)


def cmd_classify(cfg: RunConfig, args, out) -> int:
    recs = []
    for desc in read_descriptors(args.descriptor, args.stdin):
        found = codes.classify(desc)
        recs.append({
            "q": desc.q,
            "n": desc.n,
            "dim": codes.dim(desc),
            "classes": [c.value for c in DualityClass if c in found],
        })
    emit_records(recs, cfg.format, out)
    return EXIT_OK


def cmd_verify(cfg: RunConfig, args, out) -> int:
    prof = cfg.profile()
    classes = cfg.classes if args.cls else tuple(DualityClass)
    status = EXIT_OK
    recs = []
    for cls in classes:
        rep = run_sweep(prof, cls, cfg.limit, cfg.sample, cfg.seed)
        rec = rep.to_json()
        if not rep.ok:
            status = EXIT_VERIFY
        recs.append(rec)
    if args.self_dual_tally and prof.q % 2 == 0:
        tally = tally_self_dual(prof)
        if not tally.consistent:
            status = EXIT_VERIFY
    else:
        tally = None
    if cfg.format == "json":
        for rec in recs:
            out.write(_dumps(rec) + "\n")
        if tally is not None:
            out.write(_dumps({"self_dual_tally": tally.to_json()}) + "\n")
    else:
        cols = ["q", "n", "class", "formula", "checked", "full_sweep", "count_match", "status"]
        emit_records(recs, cfg.format, out, cols)
        if tally is not None:
            out.write(
                f"self-dual tally: formula={tally.formula} enumerated={tally.enumerated} "
                f"gram_verified={tally.gram_verified} consistent={tally.consistent}\n"
            )
        for rec in recs:
            for f in rec["failures"]:
                out.write(f"FAIL {rec['class']} {','.join(f['checks'])} {_dumps(f['descriptor'])}\n")
    return status


def _int_range(text: str) -> list[int]:
    """'4..20', '5,7,9' or '3'."""
    out: list[int] = []
    try:
        for part in text.split(","):
            if ".." in part:
                lo, hi = part.split("..", 1)
                out.extend(range(int(lo), int(hi) + 1))
            else:
                out.append(int(part))
    except ValueError:
        raise InvalidInput(f"cannot parse integer range {text!r}") from None
    return out


def table_rows(kind: str, qs: Iterable[str], ns: Iterable[int]) -> list[dict]:
    """Rows of the counts table (all / LCD per q) or the self-dual table."""
    fields = [gf(q) for q in qs]
    rows = []
    for n in ns:
        rec: dict = {"n": n}
        for F in fields:
            if math.gcd(n, F.q) != 1:
                rec["warning"] = f"skipped: gcd({n}, {F.q}) != 1"
                for key in _table_keys(kind, F.q):
                    rec[key] = None
                continue
            prof = profile_for(F, n)
            if kind == "counts":
                rec[f"N(q={F.q})"] = codes.count(prof, DualityClass.ALL)
                rec[f"N_LCD(q={F.q})"] = codes.count(prof, DualityClass.LCD)
            else:
                rec[f"N_SD(q={F.q})"] = codes.count(prof, DualityClass.SD)
        rows.append(rec)
    return rows


def _table_keys(kind: str, q: int) -> list[str]:
    return [f"N(q={q})", f"N_LCD(q={q})"] if kind == "counts" else [f"N_SD(q={q})"]


def cmd_table(cfg: RunConfig, args, out) -> int:
    if args.kind == "counts":
        qs = args.qs.split(",") if args.qs else ["3", "9"]
        ns = _int_range(args.ns or "4..20")
    else:
        qs = [str(2**m) for m in _int_range(args.ms or "1..4")] if not args.qs else args.qs.split(",")
        ns = _int_range(args.ns or "5,7,9,11,13,15,17")
    rows = table_rows(args.kind, qs, ns)
    columns = ["n"] + [k for q in qs for k in _table_keys(args.kind, gf(q).q)]
    if any("warning" in r for r in rows):
        columns.append("warning")
    emit_records(rows, cfg.format, out, columns)
    return EXIT_OK


# -- parser ------------------------------------------------------------------


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dihedral-codes",
        description="Construct, count and verify left dihedral codes over finite fields.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help: str, *, qn=True, cls=False, desc=False):
        p = sub.add_parser(name, help=help)
        p.add_argument("--format", choices=("text", "json", "csv"), default="text")
        if qn:
            p.add_argument("-q", "--q", required=True, help="field order, e.g. 9 or 3^2")
            p.add_argument("-n", "--n", type=int, required=True, help="dihedral group parameter n")
        if cls:
            p.add_argument("--class", dest="cls", action="append",
                           help="all, lcd, so or sd (repeatable)")
        if desc:
            p.add_argument("descriptor", nargs="?", default="-",
                           help="file of line-delimited descriptor JSON ('-' for stdin)")
        return p

    add("factor", "irreducible factors of x^n - 1 in canonical order")
    add("profile", "factor profile summary (r, t, degrees, pairs)")
    add("idempotents", "primitive idempotents with closed-form cross-check")
    add("count", "closed-form code counts", cls=True)
    p = add("enumerate", "stream descriptors in canonical order", cls=True)
    p.add_argument("--limit", type=_positive)
    p.add_argument("--sample", type=_positive)
    p.add_argument("--seed", type=int, default=0)
    p = add("build", "generator matrix for each descriptor", qn=False, desc=True)
    p.add_argument("--keep-zero-rows", action="store_true",
                   help="emit one all-zero row per zero outer code")
    p.add_argument("--distance", action="store_true", help="also compute the minimum distance")
    p.add_argument("--budget", type=_positive, default=DEFAULT_BUDGET)
    add("dual", "descriptor of the Euclidean dual", qn=False, desc=True)
    add("hull", "descriptor of the Euclidean hull", qn=False, desc=True)
    add("classify", "duality classes of each descriptor", qn=False, desc=True)
    p = add("verify", "check descriptors against the matrix oracle", cls=True)
    p.add_argument("--limit", type=_positive)
    p.add_argument("--sample", type=_positive)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--self-dual-tally", action="store_true",
                   help="also count self-dual codes by formula, enumeration and Gram check")
    p = add("table", "count tables over ranges of n", qn=False)
    p.add_argument("kind", choices=("counts", "selfdual"))
    p.add_argument("--qs", help="comma-separated field orders")
    p.add_argument("--ms", help="exponents m for q = 2^m (selfdual table)")
    p.add_argument("--ns", help="n values, e.g. 4..20 or 5,7,9")
    return parser


COMMANDS = {
    "factor": cmd_factor,
    "profile": cmd_profile,
    "idempotents": cmd_idempotents,
    "count": cmd_count,
    "enumerate": cmd_enumerate,
    "build": cmd_build,
    "dual": cmd_dual,
    "hull": cmd_hull,
    "classify": cmd_classify,
    "verify": cmd_verify,
    "table": cmd_table,
}


def main(argv: Sequence[str] | None = None, stdout=None, stdin=None) -> int:
    out = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code else EXIT_OK
    args.stdin = stdin or sys.stdin
    try:
        cfg = RunConfig.from_args(args)
        if cfg.q is not None:
            cfg.profile()  # validate q and gcd(n, q) before any output
        return COMMANDS[args.command](cfg, args, out)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (DihedralCodeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


def run(argv: Sequence[str], stdin_text: str = "") -> tuple[int, str]:
    """Run the CLI in-process and capture stdout; handy for tests."""
    buf = io.StringIO()
    code = main(argv, stdout=buf, stdin=io.StringIO(stdin_text))
    return code, buf.getvalue()


if __name__ == "__main__":
    sys.exit(main())
