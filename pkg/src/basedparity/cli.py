"""Command-line front end: ``basedparity {compute,verify,fuzz}``."""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator, TextIO

from .diagram import GaussCodeError, knot_invariant_bundle
from .fuzz import run_fuzz
from .matrix import BasedMatrix, BasedMatrixError, Ring, load_matrix
from .parity import gaussian_parity, matrix_invariant_bundle, reduced_parity, verify_parity_axioms

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT = 0, 1, 2
U64 = 1 << 64


class InputError(Exception):
    pass


@dataclass(frozen=True)
class JobSpec:
    command: str
    kind: str              # "code" | "matrix" | "table"
    source: str | None     # the code itself or a path
    ring: Ring | None
    format: str
    seed: int
    moves: int
    count: int
    max_size: int
    jobs: int = 1
    timing: bool = False


# ---------------------------------------------------------------- records


def _code_record(name: str, code: str, ring: Ring, timing: bool) -> dict:
    t0 = time.perf_counter()
    try:
        rep = knot_invariant_bundle(code, ring)
    except GaussCodeError as exc:
        return {"name": name, "input": {"code": code}, "error": str(exc)}
    rec = {"name": name, "input": {"code": code}, **rep.to_dict()}
    rec["text"] = rep.to_text()
    if timing:
        rec["seconds"] = round(time.perf_counter() - t0, 6)
    return rec


def _matrix_record(name: str, T: BasedMatrix, timing: bool) -> dict:
    t0 = time.perf_counter()
    rep = matrix_invariant_bundle(T)
    rec = {"name": name, "input": {"matrix": name}, "ring": T.ring.value, **rep.to_dict()}
    rec["text"] = rep.to_text()
    if timing:
        rec["seconds"] = round(time.perf_counter() - t0, 6)
    return rec


def _read_matrix(path: str, ring: Ring | None) -> BasedMatrix:
    try:
        T = load_matrix(Path(path).read_text())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: not JSON ({exc.msg}, line {exc.lineno})") from None
    except BasedMatrixError as exc:
        raise InputError(f"{path}: {exc}") from None
    if ring is not None and ring is not T.ring:
        raise InputError(f"{path}: matrix is over {T.ring.value} but --ring {ring.value} was given")
    return T


def read_table(path: str) -> list[tuple[int, str | None, str | None, str | None]]:
    """Rows ``(line, name, code, error)``; blank and ``#`` lines are skipped."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    rows = []
    for n, line in enumerate(text.splitlines(), 1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 2 or not parts[0].strip() or not parts[1].strip():
            rows.append((n, parts[0].strip() or None, None, "expected 'name<TAB>code'"))
        else:
            rows.append((n, parts[0].strip(), parts[1].strip(), None))
    return rows


def _table_job(args: tuple[int, str | None, str | None, str | None, Ring, bool]) -> dict:
    n, name, code, err, ring, timing = args
    if err is not None:
        return {"name": name, "line": n, "error": err}
    rec = _code_record(name, code, ring, timing)
    if "error" in rec:
        rec["line"] = n
    return rec


def compute_records(job: JobSpec) -> Iterator[dict]:
    ring = job.ring or Ring.Z
    if job.kind == "code":
        yield _code_record("code", job.source, ring, job.timing)
    elif job.kind == "matrix":
        T = _read_matrix(job.source, job.ring)
        yield _matrix_record(Path(job.source).stem, T, job.timing)
    else:
        work = [row + (ring, job.timing) for row in read_table(job.source)]
        if job.jobs > 1:
            # map() keeps input order, so the output does not depend on scheduling
            with ProcessPoolExecutor(job.jobs) as pool:
                yield from pool.map(_table_job, work)
        else:
            yield from map(_table_job, work)


def _emit(rec: dict, fmt: str, out: TextIO) -> None:
    if fmt == "structured":
        doc = {k: v for k, v in rec.items() if k != "text"}
        out.write(json.dumps(doc, sort_keys=True) + "\n")
        return
    where = f" (line {rec['line']})" if "line" in rec else ""
    out.write(f"== {rec.get('name') or '?'}{where} ==\n")
    out.write(f"error: {rec['error']}\n" if "error" in rec else rec["text"] + "\n")
    if "seconds" in rec:
        out.write(f"time: {rec['seconds']}s\n")
    out.write("\n")


def cmd_compute(job: JobSpec, out: TextIO) -> int:
    status = EXIT_OK
    for rec in compute_records(job):
        if "error" in rec:
            status = EXIT_INPUT
        _emit(rec, job.format, out)
    return status


# ---------------------------------------------------------------- verify


def cmd_verify(job: JobSpec, out: TextIO) -> int:
    if job.kind == "matrix":
        T = _read_matrix(job.source, job.ring)
        name = Path(job.source).stem
    elif job.kind == "code":
        try:
            T = knot_invariant_bundle(job.source, job.ring or Ring.Z).matrix
        except GaussCodeError as exc:
            raise InputError(str(exc)) from None
        name = "code"
    else:
        raise InputError("verify takes --matrix or --code")
    found = {}
    for kind, compute in (("gaussian", gaussian_parity), ("reduced", reduced_parity)):
        found[kind] = verify_parity_axioms(T, compute(T), moves=job.moves, seed=job.seed)
    if job.format == "structured":
        doc = {"name": name, "moves": job.moves, "seed": job.seed,
               "violations": {k: [{"axiom": v.axiom, "witnesses": list(v.witnesses),
                                   "detail": v.detail} for v in vs] for k, vs in found.items()}}
        out.write(json.dumps(doc, sort_keys=True) + "\n")
    else:
        for kind, vs in found.items():
            out.write(f"{name}: {kind} parity: "
                      f"{'ok' if not vs else f'{len(vs)} violation(s)'}\n")
            for v in vs:
                out.write(f"  {v}\n")
    return EXIT_VIOLATION if any(found.values()) else EXIT_OK


# ---------------------------------------------------------------- fuzz


def cmd_fuzz(job: JobSpec, out: TextIO) -> int:
    rep = run_fuzz(job.seed, job.count, job.max_size, job.moves, job.ring or Ring.Z2)
    if job.format == "structured":
        out.write(json.dumps(rep.to_dict(), sort_keys=True) + "\n")
    else:
        out.write(rep.to_text() + "\n")
    return EXIT_OK if rep.ok else EXIT_VIOLATION


COMMANDS = {"compute": cmd_compute, "verify": cmd_verify, "fuzz": cmd_fuzz}
DEFAULTS = {"compute": (0, 32), "verify": (0, 32), "fuzz": (1, 20)}   # seed, moves


def _seed(text: str) -> int:
    v = int(text, 0)
    if not 0 <= v < U64:
        raise argparse.ArgumentTypeError("seed must fit in an unsigned 64-bit integer")
    return v


def _count(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return v


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="basedparity",
                                 description="Based matrices and reduced stable parities of virtual knots.")
    sub = ap.add_subparsers(dest="command", required=True)
    for name, help_ in (("compute", "compute invariants of a code, matrix file or code table"),
                        ("verify", "check the parity axioms on a based matrix"),
                        ("fuzz", "randomized check of the invariance theorems")):
        p = sub.add_parser(name, help=help_)
        if name != "fuzz":
            src = p.add_mutually_exclusive_group(required=True)
            src.add_argument("--code", help="signed Gauss code, e.g. O1+O2+U1+U2+")
            src.add_argument("--matrix", metavar="PATH", help="based matrix in JSON")
        if name == "compute":
            src.add_argument("--table", metavar="PATH", help="tab-separated lines: name, code")
            p.add_argument("--jobs", type=int, default=1, help="worker processes for --table")
            p.add_argument("--timing", action="store_true",
                           help="add wall-clock seconds to each record (output is then not reproducible)")
        p.add_argument("--ring", choices=["z", "z2"], help="coefficient ring")
        p.add_argument("--format", choices=["report", "structured"], default="report")
        if name == "compute":
            continue
        p.add_argument("--seed", type=_seed, help="unsigned 64-bit seed for random moves")
        p.add_argument("--moves", type=_count, help="random moves per check")
        if name == "fuzz":
            p.add_argument("--count", type=_count, default=200, help="number of random matrices")
            p.add_argument("--max-size", type=_count, default=6,
                           help="largest starting size, basepoint excluded")
    return ap


def job_from_args(ns: argparse.Namespace) -> JobSpec:
    kind, source = None, None
    for k in ("code", "matrix", "table"):
        if getattr(ns, k, None) is not None:
            kind, source = k, getattr(ns, k)
    seed, moves = DEFAULTS[ns.command]
    return JobSpec(ns.command, kind, source, Ring.parse(ns.ring) if ns.ring else None, ns.format,
                   _given(ns, "seed", seed), _given(ns, "moves", moves),
                   getattr(ns, "count", 200), getattr(ns, "max_size", 6),
                   getattr(ns, "jobs", 1), getattr(ns, "timing", False))


def _given(ns: argparse.Namespace, name: str, default: int) -> int:
    v = getattr(ns, name, None)
    return default if v is None else v


def main(argv: list[str] | None = None, out: TextIO | None = None) -> int:
    out = out if out is not None else sys.stdout
    try:
        ns = build_parser().parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    job = job_from_args(ns)
    try:
        return COMMANDS[job.command](job, out)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
