"""Command-line front end.

Exit codes: 0 success, 2 usage or parse error, 3 resource bound exceeded
(including ``--timeout``), 4 bad witness input.  JSON reports contain no
timing or other run-dependent data unless ``--timing`` is given, so identical
invocations produce byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import math
import signal
import sys
import time
from contextlib import contextmanager

from . import __version__, numtheory
from .catalog import GroupSpecError, build, dicyclic, dihedral, formula_family, parse_group_spec, spec_order
from .config import Config
from .errors import BoundExceededError, FrattiniError, WitnessInputError
from .invariants import (
    INFINITY, WitnessFamily, frobenius_invariants, iota_dicyclic_formula, iota_dihedral_formula,
    iota_exact, iota_hat_dihedral_formula, iota_hat_exact, iota_nilpotent_formula,
    symmetric_upper_bound, verify_witness_family,
)
from .lattice import frattini, is_nilpotent, maximal_subgroups
from .perm import PermGroup, perm_from_cycles

EXIT_OK, EXIT_USAGE, EXIT_BOUND, EXIT_WITNESS = 0, 2, 3, 4
TABLE_INDEX_BOUND = 10**6


class UsageError(FrattiniError):
    pass


class TimeoutExpired(FrattiniError):
    pass


def _value(v):
    return "infinity" if v == INFINITY else v


def _group_json(G: PermGroup) -> dict:
    return {"order": G.order(), "generators": [str(g) for g in G.generators]}


def _family_json(fam: WitnessFamily) -> dict:
    out = {"size": len(fam.members), "members": [_group_json(M) for M in fam.members]}
    if fam.labels:
        for m, label in zip(out["members"], fam.labels):
            m["type"] = label
    out["checks"] = fam.checks()
    out["all_checks_pass"] = fam.all_checks_pass
    return out


def _config(args) -> Config:
    cfg = Config.from_env().replace(
        lattice_bound=args.lattice_bound, seed=args.seed, index_bound=args.index_bound)
    if args.allow_degenerate:
        cfg = cfg.replace(allow_degenerate=True)
    return cfg


def _require_lattice(spec, cfg: Config) -> None:
    order = spec_order(spec)
    if order > cfg.lattice_bound:
        raise BoundExceededError(
            "group order", order, cfg.lattice_bound,
            "use `verify` with an explicit witness family for groups this large")


def _require_nontrivial(G: PermGroup) -> None:
    if G.order() == 1:
        raise UsageError("the trivial group has no maximal subgroups")


# commands


def _formula(kind: str, spec, cfg: Config) -> dict:
    fam = formula_family(spec)
    if fam is not None:
        name, n = fam
        if name == "dihedral":
            v = iota_dihedral_formula(n) if kind == "iota" else iota_hat_dihedral_formula(n)
            return {"value": v, "formula": f"dihedral n={n}"}
        if name == "frobenius":
            iota, hat = frobenius_invariants(n)
            return {"value": _value(iota if kind == "iota" else hat), "formula": f"frobenius p={n}"}
        if name == "dicyclic" and kind == "iota":
            return {"value": iota_dicyclic_formula(n), "formula": f"dicyclic n={n}"}
        if name == "symmetric" and kind == "iota":
            return {"value": None, "upper_bound": symmetric_upper_bound(n),
                    "formula": f"symmetric upper bound n={n}"}
    _require_lattice(spec, cfg)
    G = build(spec, cfg)
    _require_nontrivial(G)
    if is_nilpotent(G, cfg):
        # ι and ι̂ agree on nilpotent groups
        return {"value": iota_nilpotent_formula(G, cfg), "formula": "nilpotent: sum of Sylow ranks"}
    raise UsageError(f"no closed form applies to {spec}")


def cmd_invariant(args, cfg: Config, kind: str) -> tuple[dict, str]:
    spec = parse_group_spec(args.group)
    if args.formula:
        res = _formula(kind, spec, cfg)
        body = {"kind": kind, "method": "formula", **res}
        shown = f"= {_value(res['value'])}" if res["value"] is not None else f"<= {res['upper_bound']}"
        return body, f"{kind}({spec}) {shown}  [{res['formula']}]"
    _require_lattice(spec, cfg)
    G = build(spec, cfg)
    _require_nontrivial(G)
    res = iota_exact(G, cfg) if kind == "iota" else iota_hat_exact(G, cfg)
    body = {"kind": kind, "method": "exact", "value": _value(res.value),
            "witness": _family_json(res.witness) if res.witness else None,
            "certificate": res.certificate.as_dict()}
    lines = [f"{kind}({spec}) = {_value(res.value)}"]
    if res.witness:
        for M in res.witness.members:
            lines.append(f"  order {M.order():>6}: " + ", ".join(map(str, M.generators)))
    cert = res.certificate
    lines.append(f"  searched {cert.maximal_count} maximal subgroups in {cert.class_count} classes; "
                 f"sizes ruled out: {cert.exhausted_sizes or 'none'}")
    return body, "\n".join(lines)


def cmd_maximals(args, cfg: Config) -> tuple[dict, str]:
    spec = parse_group_spec(args.group)
    _require_lattice(spec, cfg)
    G = build(spec, cfg)
    _require_nontrivial(G)
    mset = maximal_subgroups(G, cfg)
    phi = frattini(G, cfg)
    classes = [{
        "order": c.order, "index": c.index, "class_size": c.class_size,
        "normal": c.class_size == 1,
        "representative": [str(g) for g in c.representative.generators],
    } for c in mset.classes]
    body = {"group_order": G.order(), "prime_divisors": numtheory.prime_divisors(G.order()),
            "maximal_count": mset.total_count, "class_count": len(classes),
            "classes": classes, "frattini_order": phi.order()}
    lines = [f"{spec}: order {G.order()}, {mset.total_count} maximal subgroups in "
             f"{len(classes)} classes, |Φ| = {phi.order()}, |π(G)| = {len(body['prime_divisors'])}"]
    for c in classes:
        lines.append(f"  order {c['order']:>6}  index {c['index']:>6}  class size {c['class_size']:>5}  "
                     + ", ".join(c["representative"]))
    return body, "\n".join(lines)


def cmd_frattini(args, cfg: Config) -> tuple[dict, str]:
    spec = parse_group_spec(args.group)
    _require_lattice(spec, cfg)
    G = build(spec, cfg)
    _require_nontrivial(G)
    phi = frattini(G, cfg)
    body = {"group_order": G.order(), "frattini": _group_json(phi)}
    gens = ", ".join(map(str, phi.generators)) or "identity only"
    return body, f"Φ({spec}) has order {phi.order()}: {gens}"


def _parse_generators(gens: list, degree: int, where: str) -> list:
    out = []
    for cycles in gens:
        try:
            out.append(perm_from_cycles(cycles, degree))
        except (TypeError, ValueError) as exc:
            raise WitnessInputError(f"{where}: bad generator {cycles}: {exc}") from None
    return out


def _read_witness_file(path: str) -> dict:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise WitnessInputError(f"cannot read witness file {path}: {exc}") from None
    if not isinstance(data, dict) or not isinstance(data.get("subgroups"), list):
        raise WitnessInputError("witness file needs an object with a 'subgroups' list")
    if not isinstance(data.get("degree"), int) or data["degree"] < 1:
        raise WitnessInputError("witness file needs a positive integer 'degree'")
    return data


def _witness_parent(spec, data: dict, cfg: Config) -> PermGroup:
    """The ambient group: built from ``spec``, or the file's own ``parent`` generators."""
    degree = data["degree"]
    if "parent" not in data:
        G = build(spec, cfg)
        if G.degree != degree:
            raise WitnessInputError(f"witness degree {degree} does not match group degree {G.degree}")
        return G
    G = PermGroup(_parse_generators(data["parent"], degree, "parent"), degree)
    if G.order() != spec_order(spec):
        raise WitnessInputError(
            f"parent generators give a group of order {G.order()}, but {spec} has order {spec_order(spec)}")
    return G


def cmd_verify(args, cfg: Config) -> tuple[dict, str]:
    spec = parse_group_spec(args.group)
    data = _read_witness_file(args.witness)
    G = _witness_parent(spec, data, cfg)
    lists = [_parse_generators(sub, data["degree"], f"subgroup {i}")
             for i, sub in enumerate(data["subgroups"], 1)]
    fam = verify_witness_family(G, lists, args.inconjugate, cfg)
    body = {"group_order": G.order(), "family": _family_json(fam),
            "upper_bound": fam.upper_bound}
    c = fam.checks()
    lines = [f"{spec}: {len(fam.members)} proposed maximal subgroups"]
    lines += [f"  {k}: {v}" for k, v in c.items()]
    if fam.upper_bound is not None:
        lines.append(f"  certified: iota({spec}) <= {fam.upper_bound}")
    else:
        lines.append("  not a valid witness family")
    return body, "\n".join(lines)


def _table_sn(lo: int, hi: int, cfg: Config) -> tuple[list[dict], list[str]]:
    from .catalog import symmetric
    from .symmetric import symmetric_table_bound
    rows, lines = [], ["   n  floor((n+8)/4)  iota(S_n)  certificate"]
    for n in range(lo, hi + 1):
        bound = (n + 8) // 4
        row = {"n": n, "bound": bound}
        if math.factorial(n) <= cfg.lattice_bound:
            if n == 1:
                raise UsageError("S1 is trivial")
            res = iota_exact(symmetric(n), cfg)
            row.update(iota=res.value, exact=True, display=str(res.value), certificate="exact search")
        else:
            search_cfg = cfg.replace(index_bound=max(cfg.index_bound, TABLE_INDEX_BOUND))
            tb = symmetric_table_bound(n, search_cfg)
            # S_n is not a cyclic p-group, so no single maximal subgroup is Φ = 1
            exact = tb.value == 2
            row.update(iota=tb.value, exact=exact, lower_bound=2, upper_bound=tb.value,
                       display=str(tb.value) if exact else f"≤ {tb.value}",
                       certificate="witness search" + (" + lower bound 2" if exact else ""),
                       witness=_family_json(tb.family))
        rows.append(row)
        line = f"{n:>4}  {bound:>14}  {row['display']:>9}  {row['certificate']}"
        if "witness" in row:
            line += " (" + ", ".join(m["type"] for m in row["witness"]["members"]) + ")"
        lines.append(line)
    return rows, lines


def _table_family(name: str, lo: int, hi: int, cfg: Config) -> tuple[list[dict], list[str]]:
    rows, lines = [], ["   n  formula  iota  iota_hat  status"]
    for n in range(lo, hi + 1):
        if name == "dihedral":
            G = dihedral(2 * n, cfg)
            f, fh = iota_dihedral_formula(n), iota_hat_dihedral_formula(n)
        else:
            G = dicyclic(4 * n, cfg)
            f, fh = iota_dicyclic_formula(n), None
        iota = iota_exact(G, cfg).value
        hat = iota_hat_exact(G, cfg).value
        ok = iota == f and (fh is None or hat == fh)
        rows.append({"n": n, "formula": f, "iota": iota, "iota_hat": _value(hat),
                     "hat_formula": fh, "status": "ok" if ok else "MISMATCH"})
        lines.append(f"{n:>4}  {f:>7}  {iota:>4}  {str(_value(hat)):>8}  {'ok' if ok else 'MISMATCH'}")
    return rows, lines


_TABLE_DEFAULTS = {"sn": (2, 7), "dihedral": (3, 30), "dicyclic": (2, 12)}


def cmd_table(args, cfg: Config) -> tuple[dict, str]:
    lo_default, hi_default = _TABLE_DEFAULTS[args.family]
    lo = args.min if args.min is not None else lo_default
    hi = args.max if args.max is not None else hi_default
    if lo < lo_default or hi < lo:
        raise UsageError(f"bad range {lo}..{hi} for table {args.family}")
    if args.family == "sn":
        if hi > cfg.symmetric_cap:
            raise BoundExceededError("n", hi, cfg.symmetric_cap)
        rows, lines = _table_sn(lo, hi, cfg)
    else:
        rows, lines = _table_family(args.family, lo, hi, cfg)
    return {"family": args.family, "range": [lo, hi], "rows": rows}, "\n".join(lines)


# plumbing


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--json", action="store_true", help="print a JSON report")
    p.add_argument("--lattice-bound", type=int, metavar="N",
                   help="largest group order whose subgroup lattice is built (default 5040)")
    p.add_argument("--index-bound", type=int, metavar="N",
                   help="largest subgroup index for maximality tests (default 10000)")
    p.add_argument("--seed", type=int, metavar="N", help="seed for randomized witness searches")
    p.add_argument("--allow-degenerate", action="store_true", help="accept D2, D4, Q4 and F3")
    p.add_argument("--timeout", type=float, metavar="SECONDS", help="give up after this long (exit 3)")
    p.add_argument("--timing", action="store_true", help="include wall-clock time in the report")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="frattini",
        description="Intersection numbers of finite groups (maximal subgroups meeting in the Frattini subgroup).",
        epilog="Group names: S7, A5, Z12, D12 (dihedral of ORDER 12), Q8 (dicyclic of order 8), "
               "F7 (order 42), E2^3; join with x, e.g. A5xA5.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    for name, helptext in (("iota", "least number of maximal subgroups meeting in Φ(G)"),
                           ("iota-hat", "the same with pairwise non-conjugate subgroups")):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("group")
        p.add_argument("--formula", action="store_true", help="use a closed form where one applies")
        _add_common(p)

    p = sub.add_parser("maximals", help="conjugacy classes of maximal subgroups")
    p.add_argument("group")
    _add_common(p)

    p = sub.add_parser("frattini", help="the Frattini subgroup")
    p.add_argument("group")
    _add_common(p)

    p = sub.add_parser("verify", help="check a witness family from a JSON file")
    p.add_argument("group")
    p.add_argument("witness", help="JSON file: {degree, subgroups: [[cycles, ...], ...]}")
    p.add_argument("--inconjugate", action="store_true", help="also check pairwise non-conjugacy")
    _add_common(p)

    p = sub.add_parser("table", help="reproduce a table of intersection numbers")
    p.add_argument("family", choices=sorted(_TABLE_DEFAULTS))
    p.add_argument("--min", type=int)
    p.add_argument("--max", type=int)
    _add_common(p)
    return parser


@contextmanager
def _deadline(seconds: float | None):
    if not seconds:
        yield
        return

    def expire(signum, frame):
        raise TimeoutExpired(f"timed out after {seconds} s")

    old = signal.signal(signal.SIGALRM, expire)
    signal.setitimer(signal.ITIMER_REAL, seconds)
    try:
        yield
    finally:
        signal.setitimer(signal.ITIMER_REAL, 0)
        signal.signal(signal.SIGALRM, old)


_COMMANDS = {
    "iota": lambda a, c: cmd_invariant(a, c, "iota"),
    "iota-hat": lambda a, c: cmd_invariant(a, c, "iota_hat"),
    "maximals": cmd_maximals,
    "frattini": cmd_frattini,
    "verify": cmd_verify,
    "table": cmd_table,
}


def _echo(args) -> dict:
    skip = {"json", "timing", "timeout"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = _config(args)
    except ValueError as exc:
        print(f"error: bad environment setting: {exc}", file=err)
        return EXIT_USAGE
    start = time.perf_counter()
    try:
        with _deadline(args.timeout):
            body, text = _COMMANDS[args.command](args, cfg)
    except (GroupSpecError, UsageError) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_USAGE
    except (BoundExceededError, TimeoutExpired, MemoryError) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_BOUND
    except WitnessInputError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_WITNESS
    elapsed = time.perf_counter() - start
    if args.json:
        report = {"command": args.command, "arguments": _echo(args),
                  "group": str(parse_group_spec(args.group)) if hasattr(args, "group") else None,
                  "result": body, "config": cfg.as_dict()}
        if args.timing:
            report["timing"] = {"seconds": round(elapsed, 3)}
        print(json.dumps(report, indent=2, ensure_ascii=False), file=out)
    else:
        print(text, file=out)
        if args.timing:
            print(f"({elapsed:.2f} s)", file=out)
    return EXIT_OK


def main() -> None:
    sys.exit(run())
