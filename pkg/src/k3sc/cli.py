"""Command-line front end.

Exit status: 0 yes/pass, 1 no/failing clause, 2 invalid input, 3 property counterexample.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Dict, List, Optional, Sequence

from .criteria import SeriesChoice, check_element, make_context, nef_image
from .crossval import SUITES, run_suite
from .decision import decide_context, oracle_context
from .errors import K3SCError, NotInLattice
from .lattice import contains, norm
from .moduli import delta_set, delta_union, mu_classes
from .mukai import derive_invariants, n_of_v, split_gamma

EXIT_YES, EXIT_NO, EXIT_INVALID, EXIT_COUNTEREXAMPLE = 0, 1, 2, 3
INT64 = 2 ** 63


def jint(v: int):
    """Integers outside the signed 64-bit range are written as decimal strings."""
    return v if -INT64 <= v < INT64 else str(v)


def jdump(obj: Dict) -> str:
    def conv(v):
        if isinstance(v, bool) or v is None or isinstance(v, str):
            return v
        if isinstance(v, int):
            return jint(v)
        if isinstance(v, (list, tuple)):
            return [conv(x) for x in v]
        if isinstance(v, dict):
            return {k: conv(x) for k, x in v.items()}
        return v
    return json.dumps(conv(obj), separators=(",", ":"))


def threads() -> int:
    try:
        return max(1, int(os.environ.get("K3SC_THREADS", "1")))
    except ValueError:
        return 1


def pmap(fn: Callable, items: List) -> List:
    """Ordered map, parallel over processes when K3SC_THREADS > 1."""
    n = threads()
    if n == 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=n) as ex:
        return list(ex.map(fn, items))


def table(rows: List[Sequence], header: Sequence[str]) -> str:
    cells = [list(map(str, header))] + [list(map(str, r)) for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    return "\n".join("  ".join(c.rjust(w) for c, w in zip(r, widths)).rstrip() for r in cells)


def report_lines(report) -> List[str]:
    return [f"  [{'pass' if c.passed else 'FAIL'}] {c.clause_id}: {c.description}" for c in report.clauses]


# --------------------------------------------------------------------------
# invariants


def cmd_invariants(args) -> int:
    inv = derive_invariants((args.r, args.s, args.d))
    rows = [("r", inv.r), ("s", inv.s), ("d", inv.d), ("c", inv.c), ("a", inv.a), ("b", inv.b),
            ("d_a", inv.d_a), ("d_b", inv.d_b), ("a1", inv.a1), ("b1", inv.b1), ("m(a,b)", inv.m_ab)]
    if args.gamma is not None:
        sp = split_gamma(inv, args.gamma)
        rows += [("gamma", sp.gamma), ("gamma_a", sp.gamma_a), ("gamma_b", sp.gamma_b), ("gamma_2", sp.gamma_2),
                 ("n_X", sp.n_x), ("n_Y", sp.n_y), ("n(v)", n_of_v(inv, args.d, args.gamma))]
    if args.format == "jsonl":
        args.emit(jdump(dict(rows)))
    else:
        args.emit(table(rows, ("invariant", "value")))
    return EXIT_YES


# --------------------------------------------------------------------------
# decide


def _decide_record(inst: Dict) -> Dict:
    keys = ("r", "s", "d", "gamma", "delta", "mu")
    try:
        vals = [int(inst[k]) for k in keys]
        ctx = make_context(*vals)
        v = decide_context(ctx)
    except (K3SCError, ValueError, KeyError, TypeError) as exc:
        return {"input": inst, "error": str(exc)}
    rec = dict(zip(keys, vals))
    rec["verdict"] = "YES" if v.yes else "NO"
    if v.yes:
        rec.update(series=v.choice.series, eps=v.choice.eps, p1=v.p1, q1=v.q1,
                   h1=list(v.element), image=list(v.image),
                   clauses=[[c.clause_id, c.passed] for c in v.series_report.clauses + v.element_report.clauses])
    rec["branches"] = [[ch.series, ch.eps, ok] for ch, ok in v.branches]
    bound = inst.get("oracle_bound")
    if bound is not None:
        o = oracle_context(ctx, int(bound))
        rec["oracle"] = {"bound": int(bound), "verdict": "YES" if o.yes else "NO",
                         "agree": o.yes == v.yes, "x": o.x, "y": o.y, "series": o.series}
    return rec


def _render_decide(rec: Dict) -> str:
    if "error" in rec:
        return f"invalid input {rec['input']}: {rec['error']}"
    out = [f"(r,s,d)=({rec['r']},{rec['s']},{rec['d']}) gamma={rec['gamma']} delta={rec['delta']} mu={rec['mu']}: "
           f"{rec['verdict']}"]
    if rec["verdict"] == "YES":
        out.append(f"  series {rec['series']}, eps={rec['eps']:+d}, (p1,q1)=({rec['p1']},{rec['q1']})")
        out.append(f"  witness element h1 = {tuple(rec['h1'])} (numerators of (xP + yf)/n)")
        out.append(f"  nef image h'     = {tuple(rec['image'])}")
        out += [f"  [{'pass' if ok else 'FAIL'}] {cid}" for cid, ok in rec["clauses"]]
    if "oracle" in rec:
        o = rec["oracle"]
        out.append(f"  oracle (|y| <= {o['bound']}): {o['verdict']}; agreement: {'yes' if o['agree'] else 'NO'}")
    return "\n".join(out)


def _read_batch(path: str) -> List[Dict]:
    with open(path) as fh:
        return [json.loads(line) for line in fh if line.strip()]


def cmd_decide(args) -> int:
    if args.batch:
        items = _read_batch(args.batch)
    else:
        missing = [k for k in ("r", "s", "gamma", "delta", "mu") if getattr(args, k) is None]
        if missing:
            raise ValueError(f"missing --{', --'.join(missing)}")
        items = [{"r": args.r, "s": args.s, "d": args.d, "gamma": args.gamma, "delta": args.delta, "mu": args.mu}]
    if args.oracle_bound is not None:
        for it in items:
            it.setdefault("oracle_bound", args.oracle_bound)
    records = pmap(_decide_record, items)
    for rec in records:
        args.emit(jdump(rec) if args.format == "jsonl" else _render_decide(rec))
    if any("error" in r for r in records):
        return EXIT_INVALID
    return EXIT_YES if all(r["verdict"] == "YES" for r in records) else EXIT_NO


# --------------------------------------------------------------------------
# enumerate


def _enumerate_one(inst: Dict) -> List[Dict]:
    r, s, d, g, dmax = (int(inst[k]) for k in ("r", "s", "d", "gamma", "delta_max"))
    series = [inst["series"]] if inst.get("series") else ["A", "B"]
    eps = [int(inst["eps"])] if inst.get("eps") is not None else [1, -1]
    if inst.get("mu") is None and len(series) == 2 and len(eps) == 2:
        labels = delta_union(r, s, d, g, dmax)
    else:
        mus = [int(inst["mu"])] if inst.get("mu") is not None else mu_classes(r, s, d, g)
        labels = [lab for mu in mus for se in series for e in eps for lab in delta_set(r, s, d, g, mu, se, e, dmax)]
        labels.sort(key=lambda lab: lab.sort_key())
    return [{"mu": lab.mu_class, "delta": lab.delta, "series": lab.series, "eps": lab.eps,
             "p1": lab.witness[0], "q1": lab.witness[1]} for lab in labels]


def _enumerate_safe(inst: Dict):
    try:
        return _enumerate_one(inst)
    except (K3SCError, ValueError, KeyError, TypeError) as exc:
        return {"input": inst, "error": str(exc)}


def cmd_enumerate(args) -> int:
    if args.batch:
        items = _read_batch(args.batch)
    else:
        if args.gamma is None or args.delta_max is None:
            raise ValueError("enumerate needs --gamma and --delta-max")
        items = [{"r": args.r, "s": args.s, "d": args.d, "gamma": args.gamma, "delta_max": args.delta_max,
                  "mu": args.mu, "series": args.series, "eps": args.eps}]
    results = pmap(_enumerate_safe, items)
    status = EXIT_YES
    for res in results:
        if isinstance(res, dict):
            sys.stderr.write(f"invalid input {res['input']}: {res['error']}\n")
            status = EXIT_INVALID
            continue
        if args.format == "jsonl":
            for rec in res:
                args.emit(jdump(rec))
        elif res:
            args.emit(table([[r["mu"], r["delta"], r["series"], f"{r['eps']:+d}", r["p1"], r["q1"]] for r in res],
                            ("mu", "delta", "series", "eps", "p1", "q1")))
    return status


# --------------------------------------------------------------------------
# check-element


def cmd_check_element(args) -> int:
    ctx = make_context(args.r, args.s, args.d, args.gamma, args.delta, args.mu)
    lat = ctx.lattice
    h = (args.x, args.y)
    if not contains(lat, h):
        raise NotInLattice(f"({args.x}, {args.y}) is not in the lattice: x != mu*y mod {lat.n}")
    choice = SeriesChoice(args.series, args.eps)
    rep = check_element(ctx, choice, h)
    rec = {"x": args.x, "y": args.y, "square": norm(lat, h), "series": args.series, "eps": args.eps,
           "passed": rep.passed, "clauses": [[c.clause_id, c.passed] for c in rep.clauses]}
    if "p1" in rep.info:
        rec.update(p1=rep.info["p1"], q1=rep.info["q1"])
    if rep.passed:
        rec["image"] = list(nef_image(ctx, choice, h))
    if args.format == "jsonl":
        args.emit(jdump(rec))
    else:
        lines = [f"element ({args.x}, {args.y}) in lattice n={lat.n} gamma={lat.gamma} delta={lat.delta} mu={lat.mu}",
                 f"  square {rec['square']}; series {args.series}, eps={args.eps:+d}"]
        if "p1" in rec:
            lines.append(f"  (p1, q1) = ({rec['p1']}, {rec['q1']})")
        lines += report_lines(rep)
        lines.append(f"  verdict: {'pass' if rep.passed else 'fail'}")
        if rep.passed:
            lines.append(f"  nef image h' = {tuple(rec['image'])}")
        args.emit("\n".join(lines))
    return EXIT_YES if rep.passed else EXIT_NO


# --------------------------------------------------------------------------
# crossval


def cmd_crossval(args) -> int:
    res = run_suite(args.suite, args.seed, args.scale)
    if args.format == "jsonl":
        args.emit(jdump({"suite": res.suite, "checked": res.checked, "counterexamples": res.counterexamples,
                         "first": res.first, "stats": res.stats}))
    else:
        args.emit(f"suite {res.suite} (scale {args.scale}, seed {args.seed}): checked {res.checked}, "
                  f"counterexamples {res.counterexamples}, {res.seconds:.1f}s")
        for k, v in sorted(res.stats.items()):
            args.emit(f"  {k}: {v}")
        if res.first is not None:
            args.emit(f"  first counterexample: {json.dumps(res.first, default=str)}")
    return EXIT_YES if res.ok else EXIT_COUNTEREXAMPLE


# --------------------------------------------------------------------------


def _series(v: str) -> str:
    v = v.upper()
    if v not in ("A", "B"):
        raise argparse.ArgumentTypeError("series must be A or B")
    return v


def _eps(v: str) -> int:
    e = int(v)
    if e not in (1, -1):
        raise argparse.ArgumentTypeError("eps must be 1 or -1")
    return e


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="k3sc", description="Exact tests for Y = X where Y is a moduli space of sheaves on a K3 surface X.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, need_rsd=True):
        p.add_argument("--r", type=int, required=need_rsd)
        p.add_argument("--s", type=int, required=need_rsd)
        p.add_argument("--d", type=int, default=1)
        p.add_argument("--format", choices=("table", "jsonl"), default="table")
        p.add_argument("--out", metavar="FILE", help="write output to FILE instead of stdout")

    p = sub.add_parser("invariants", help="derive the invariants of (r, s, d) and optionally gamma")
    common(p)
    p.add_argument("--gamma", type=int)
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("decide", help="decide Y = X for rank two lattice data")
    common(p, need_rsd=False)
    for k in ("gamma", "delta", "mu"):
        p.add_argument(f"--{k}", type=int)
    p.add_argument("--oracle-bound", type=int, help="also run the brute-force oracle with |y| <= B")
    p.add_argument("--batch", metavar="FILE", help="JSON lines with keys r, s, d, gamma, delta, mu")
    p.set_defaults(func=cmd_decide)

    p = sub.add_parser("enumerate", help="list divisorial conditions (mu, delta) up to delta-max")
    common(p, need_rsd=False)
    p.add_argument("--gamma", type=int)
    p.add_argument("--delta-max", type=int)
    p.add_argument("--mu", type=int)
    p.add_argument("--series", type=_series)
    p.add_argument("--eps", type=_eps)
    p.add_argument("--batch", metavar="FILE", help="JSON lines with keys r, s, d, gamma, delta_max")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("check-element", help="check a candidate witness element")
    common(p)
    for k in ("gamma", "delta", "mu", "x", "y"):
        p.add_argument(f"--{k}", type=int, required=True)
    p.add_argument("--series", type=_series, required=True)
    p.add_argument("--eps", type=_eps, required=True)
    p.set_defaults(func=cmd_check_element)

    p = sub.add_parser("crossval", help="run a cross-validation sweep")
    p.add_argument("--suite", choices=SUITES, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--scale", choices=("small", "full"), default="small")
    p.add_argument("--format", choices=("table", "jsonl"), default="table")
    p.add_argument("--out", metavar="FILE")
    p.set_defaults(func=cmd_crossval)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    lines: List[str] = []
    args.emit = lines.append
    try:
        code = args.func(args)
    except (K3SCError, ValueError, OSError) as exc:
        code = EXIT_INVALID
        sys.stderr.write(f"error: {exc}\n")
    text = "".join(line + "\n" for line in lines)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
