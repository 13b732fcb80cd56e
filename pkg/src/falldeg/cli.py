"""Experiment harness and command line interface.

Subcommands: semaev, descent, firstfall, groebner, table, crossover.
Every experiment is reproducible from (m, n, n', seed): the seed drives the
curve draw, the choice of c as the x-coordinate of a random point, and the
factor-basis draw.  Exit codes: 0 success, 2 parameter error, 3 budget
exhaustion.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import math
import random
import sys
import time
from dataclasses import dataclass, field as dc_field
from typing import Callable, List, Optional, Sequence, Tuple

from .descent import DescentSystem, descend, make_basis
from .ecurve import random_curve, random_point
from .fieldalg import FieldSpec
from .firstfall import (FirstFallReport, first_fall, top_parts, verify_witness,
                        witness_P0)
from .groebner import Budget, dff_empirical, dreg_empirical, groebner_log
from .semaev import semaev_poly

MAX_N = 48


class ParameterError(ValueError):
    pass


def _derive_rng(m: int, n: int, nprime: int, seed: int) -> random.Random:
    material = f"falldeg:{m}:{n}:{nprime}:{seed}".encode()
    return random.Random(int.from_bytes(hashlib.sha256(material).digest()[:8], "big"))


def build_instance(m: int, n: int, nprime: int, seed: int,
                   basis_kind: str = "random",
                   reduction_poly: Optional[int] = None,
                   c_override: Optional[int] = None) -> DescentSystem:
    """Deterministic pipeline instance: curve, c, basis, descent."""
    if not 2 <= m <= 5:
        raise ParameterError(f"m = {m} outside 2..5")
    if not m <= nprime <= n:
        raise ParameterError(f"n' = {nprime} outside m..n")
    if n > MAX_N:
        raise ParameterError(f"n = {n} exceeds {MAX_N}")
    spec = FieldSpec(n, reduction_poly)
    rng = _derive_rng(m, n, nprime, seed)
    curve = random_curve(spec, rng)
    c = spec.element(c_override) if c_override is not None else random_point(curve, rng).x
    basis = make_basis(basis_kind, nprime, spec, rng)
    s = semaev_poly(m + 1, curve.a6)
    return descend(s, basis, c, curve)


@dataclass
class ExperimentRecord:
    m: int
    n: int
    nprime: int
    seed: int
    basis_kind: str
    c_hex: str
    bound: int                      # m(m-1) + 1
    dff_macaulay: Optional[int]
    dim_drop: bool
    witness_ok: Optional[bool]      # None when the witness hypotheses fail
    dff_groebner: Optional[int] = None
    dreg_groebner: Optional[int] = None
    groebner_exhausted: Optional[bool] = None
    timings: dict = dc_field(default_factory=dict)

    def to_dict(self, include_timings: bool = True) -> dict:
        out = {
            "m": self.m, "n": self.n, "nprime": self.nprime, "seed": self.seed,
            "basis_kind": self.basis_kind, "c": self.c_hex, "bound": self.bound,
            "dff_macaulay": self.dff_macaulay, "dim_drop": self.dim_drop,
            "witness_ok": self.witness_ok, "dff_groebner": self.dff_groebner,
            "dreg_groebner": self.dreg_groebner,
            "groebner_exhausted": self.groebner_exhausted,
        }
        if include_timings:
            out["timings"] = self.timings
        return out

    def canonical_json(self) -> str:
        """Seed-reproducible part of the record (timings excluded)."""
        return json.dumps(self.to_dict(include_timings=False), sort_keys=True)


def run_experiment(m: int, n: int, nprime: int, seed: int,
                   basis_kind: str = "random",
                   with_groebner: bool = False,
                   budget: Optional[Budget] = None,
                   j_max: Optional[int] = None) -> ExperimentRecord:
    """Full pipeline with deterministic seeding; asserts the degree bound."""
    timings = {}
    t0 = time.perf_counter()
    system = build_instance(m, n, nprime, seed, basis_kind)
    timings["build_s"] = round(time.perf_counter() - t0, 3)

    t0 = time.perf_counter()
    graded = top_parts(system)
    report = first_fall(graded, j_max)
    timings["first_fall_s"] = round(time.perf_counter() - t0, 3)

    witness_ok: Optional[bool] = None
    if m >= 3 and nprime >= m:
        t0 = time.perf_counter()
        p0 = witness_P0(system.params)
        witness_ok = verify_witness(graded, p0, system.params).ok
        timings["witness_s"] = round(time.perf_counter() - t0, 3)

    record = ExperimentRecord(
        m=m, n=n, nprime=nprime, seed=seed, basis_kind=basis_kind,
        c_hex=f"0x{system.params.c.mask:x}", bound=m * (m - 1) + 1,
        dff_macaulay=report.dff, dim_drop=report.dim_drop,
        witness_ok=witness_ok, timings=timings,
    )

    if with_groebner:
        t0 = time.perf_counter()
        res = groebner_log(system, budget=budget)
        timings["groebner_s"] = round(time.perf_counter() - t0, 3)
        record.groebner_exhausted = res.budget_exhausted
        if res.log:
            record.dff_groebner = dff_empirical(res.log)
            record.dreg_groebner = dreg_empirical(res.log)

    if nprime >= m and record.dff_macaulay is not None:
        assert record.dff_macaulay <= record.bound, \
            f"first fall {record.dff_macaulay} above bound {record.bound}"
    return record


def reproduce_table(rows: Sequence[Tuple[int, int, int]],
                    repetitions: int = 10,
                    with_groebner: bool = False,
                    budget: Optional[Budget] = None,
                    progress: Optional[Callable[[str], None]] = None) -> str:
    """CSV over (m, n, n') rows; the first-fall column must be constant
    across the repetitions of a row."""
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["m", "n", "nprime", "bound", "D_ff", "D_reg", "repetitions"])
    for m, n, nprime in rows:
        dffs = []
        dregs = []
        for seed in range(repetitions):
            rec = run_experiment(m, n, nprime, seed, with_groebner=with_groebner,
                                 budget=budget)
            dffs.append(rec.dff_macaulay)
            if rec.dreg_groebner is not None and not rec.groebner_exhausted:
                dregs.append(rec.dreg_groebner)
            if progress:
                progress(f"m={m} n={n} n'={nprime} seed={seed} D_ff={rec.dff_macaulay}")
        if len(set(dffs)) != 1:
            raise AssertionError(f"D_ff not constant across seeds: {dffs}")
        dreg_cell = "-"
        if dregs and len(dregs) == repetitions:
            dreg_cell = max(dregs) if len(set(dregs)) == 1 else "/".join(map(str, sorted(set(dregs))))
        writer.writerow([m, n, nprime, m * (m - 1) + 1, dffs[0], dreg_cell, repetitions])
    return buf.getvalue()


DESK_TABLE_ROWS: List[Tuple[int, int, int]] = (
    [(3, n, 5) for n in (13, 14, 15)]
    + [(3, n, 6) for n in (16, 17, 18)]
    + [(4, n, 4) for n in (13, 14, 15, 16)]
    + [(2, n, (n + 1) // 2) for n in range(34, 41)]
)


# ----------------------------------------------------------------------
# Complexity crossover
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class BoundParams:
    omega: float
    kind: str  # "old" or "new"

    def __post_init__(self):
        if not 2.0 < self.omega <= 3.0:
            raise ParameterError(f"omega = {self.omega} outside (2, 3]")
        if self.kind not in ("old", "new"):
            raise ParameterError(f"bound kind {self.kind!r}")

    def degree(self, n: int) -> float:
        if self.kind == "old":
            return n ** (2 / 3) + 1
        return n ** (2 / 3) - n ** (1 / 3) + 1


def crossover_scan(c: float, degree_fn: Callable[[int], float],
                   n_cap: int = 1 << 40) -> int:
    """Smallest n with c*log2(n)*D(n) < n/2.

    Doubling scan for a satisfying n, then bisection back to the boundary;
    the exponent gap makes the predicate monotone past the crossing.
    """
    def good(n: int) -> bool:
        return c * math.log2(n) * degree_fn(n) < n / 2

    hi = 2
    while not good(hi):
        hi *= 2
        if hi > n_cap:
            raise ParameterError("no crossover below cap")
    lo = hi // 2
    while lo + 1 < hi:
        mid = (lo + hi) // 2
        if good(mid):
            hi = mid
        else:
            lo = mid
    return hi


def crossover(params: BoundParams) -> int:
    return crossover_scan(2 * params.omega / 3, params.degree)


# ----------------------------------------------------------------------
# CLI plumbing
# ----------------------------------------------------------------------

def _write_out(text: str, out: Optional[str]):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _cmd_semaev(args) -> int:
    spec = FieldSpec(args.n, args.red)
    a6_mask = args.a6 if args.a6 is not None else 1
    s = semaev_poly(args.m + 1, spec.element(a6_mask))
    _write_out(s.poly.to_text(), args.out)
    return 0


def _cmd_descent(args) -> int:
    system = build_instance(args.m, args.n, args.nprime, args.seed,
                            basis_kind=args.basis, reduction_poly=args.red,
                            c_override=args.c)
    _write_out(system.to_text(), args.out)
    return 0


def _cmd_firstfall(args) -> int:
    if args.infile:
        with open(args.infile) as fh:
            system = DescentSystem.from_text(fh.read())
    else:
        system = build_instance(args.m, args.n, args.nprime, args.seed,
                                basis_kind=args.basis)
    report = first_fall(top_parts(system), args.j_max)
    _write_out(report.to_json(), args.out)
    return 0


def _cmd_groebner(args) -> int:
    with open(args.infile) as fh:
        system = DescentSystem.from_text(fh.read())
    budget = Budget(max_seconds=args.budget_sec, max_mem_mib=args.budget_mem)
    res = groebner_log(system, max_degree=args.max_deg, budget=budget)
    payload = {
        "steps": res.log_dicts(),
        "dff": dff_empirical(res.log) if res.log else None,
        "dreg": dreg_empirical(res.log) if res.log else None,
        "basis_size": len(res.basis),
        "budget_exhausted": res.budget_exhausted,
    }
    text = json.dumps(payload, sort_keys=True)
    if args.log:
        with open(args.log, "w") as fh:
            fh.write(json.dumps(res.log_dicts(), sort_keys=True))
    _write_out(text, args.out)
    return 3 if res.budget_exhausted else 0


def _parse_rows(text: str) -> List[Tuple[int, int, int]]:
    rows = []
    for part in text.split(";"):
        part = part.strip()
        if not part:
            continue
        bits = [int(x) for x in part.split(",")]
        if len(bits) != 3:
            raise ParameterError(f"bad row {part!r}: want m,n,nprime")
        rows.append((bits[0], bits[1], bits[2]))
    return rows


def _cmd_table(args) -> int:
    rows = _parse_rows(args.rows) if args.rows else DESK_TABLE_ROWS
    progress = (lambda msg: print(msg, file=sys.stderr)) if args.verbose else None
    csv_text = reproduce_table(rows, repetitions=args.reps,
                               with_groebner=args.groebner,
                               budget=Budget(max_seconds=args.budget_sec,
                                             max_mem_mib=args.budget_mem),
                               progress=progress)
    if args.format == "json":
        reader = csv.DictReader(io.StringIO(csv_text))
        _write_out(json.dumps(list(reader), sort_keys=True), args.out)
    else:
        _write_out(csv_text, args.out)
    return 0


def _cmd_crossover(args) -> int:
    old = crossover(BoundParams(args.omega, "old"))
    new = crossover(BoundParams(args.omega, "new"))
    payload = {"omega": args.omega, "crossover_old": old, "crossover_new": new,
               "improvement": old - new}
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf)
        w.writerow(payload.keys())
        w.writerow(payload.values())
        _write_out(buf.getvalue(), args.out)
    else:
        _write_out(json.dumps(payload, sort_keys=True), args.out)
    return 0


def _cmd_run(args) -> int:
    budget = Budget(max_seconds=args.budget_sec, max_mem_mib=args.budget_mem)
    rec = run_experiment(args.m, args.n, args.nprime, args.seed,
                         basis_kind=args.basis, with_groebner=args.groebner,
                         budget=budget)
    _write_out(json.dumps(rec.to_dict(include_timings=not args.no_timings),
                          sort_keys=True), args.out)
    return 3 if rec.groebner_exhausted else 0


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="falldeg",
        description="Summation-polynomial Weil descent and first fall degrees",
    )
    sub = top.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--out", default=None)
        p.add_argument("--format", choices=["json", "csv"], default="json")

    p = sub.add_parser("semaev", help="build a summation polynomial")
    p.add_argument("action", choices=["build"])
    p.add_argument("--m", type=int, required=True,
                   help="builds the (m+1)-ary summation polynomial")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--a6", type=lambda s: int(s, 16), default=None,
                   help="curve constant as hex mask (default 0x1)")
    p.add_argument("--red", type=lambda s: int(s, 16), default=None,
                   help="reduction polynomial override (hex)")
    add_common(p)
    p.set_defaults(fn=_cmd_semaev)

    p = sub.add_parser("descent", help="build and serialize a descent system")
    for flag, typ in (("--m", int), ("--n", int), ("--nprime", int)):
        p.add_argument(flag, type=typ, required=True)
    p.add_argument("--basis", choices=["random", "canonical"], default="random")
    p.add_argument("--c", type=lambda s: int(s, 16), default=None,
                   help="override c (hex); default x-coord of a random point")
    p.add_argument("--red", type=lambda s: int(s, 16), default=None)
    add_common(p)
    p.set_defaults(fn=_cmd_descent)

    p = sub.add_parser("firstfall", help="Macaulay-rank first fall degree")
    p.add_argument("--in", dest="infile", default=None,
                   help="descent file; otherwise build from --m/--n/--nprime")
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--nprime", type=int, default=None)
    p.add_argument("--basis", choices=["random", "canonical"], default="random")
    p.add_argument("--j-max", type=int, default=None)
    add_common(p)
    p.set_defaults(fn=_cmd_firstfall)

    p = sub.add_parser("groebner", help="degree-logging Groebner run")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--max-deg", type=int, default=None)
    p.add_argument("--budget-mem", type=float, default=2048.0, help="MiB")
    p.add_argument("--budget-sec", type=float, default=3600.0)
    p.add_argument("--log", default=None, help="write the step log JSON here")
    add_common(p)
    p.set_defaults(fn=_cmd_groebner)

    p = sub.add_parser("table", help="desk-scale reproduction of the data table")
    p.add_argument("--rows", default=None,
                   help='semicolon list "m,n,nprime;..." (default: desk rows)')
    p.add_argument("--reps", type=int, default=10)
    p.add_argument("--groebner", action="store_true")
    p.add_argument("--budget-mem", type=float, default=2048.0)
    p.add_argument("--budget-sec", type=float, default=3600.0)
    p.add_argument("--verbose", action="store_true")
    add_common(p)
    p.set_defaults(fn=_cmd_table)

    p = sub.add_parser("crossover", help="complexity-bound crossover points")
    p.add_argument("--omega", type=float, default=math.log2(7))
    add_common(p)
    p.set_defaults(fn=_cmd_crossover)

    p = sub.add_parser("run", help="single end-to-end experiment record")
    for flag in ("--m", "--n", "--nprime"):
        p.add_argument(flag, type=int, required=True)
    p.add_argument("--basis", choices=["random", "canonical"], default="random")
    p.add_argument("--groebner", action="store_true")
    p.add_argument("--budget-mem", type=float, default=2048.0)
    p.add_argument("--budget-sec", type=float, default=3600.0)
    p.add_argument("--no-timings", action="store_true")
    add_common(p)
    p.set_defaults(fn=_cmd_run)

    return top


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.fn(args)
    except (ParameterError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
