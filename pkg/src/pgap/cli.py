"""Command-line entry point: ``pgap <command> ...``.

Results go to stdout as JSON lines (or TSV rows with ``--output tsv``); a run
manifest and diagnostics go to stderr so stdout is byte-reproducible.
Exit status: 0 when everything asserted verified, 1 on a failed
verification, 2 on usage or domain errors.
"""
import argparse
import json
import math
import os
import sys
import time
from fractions import Fraction

from . import __version__
from .certify import (
    check_classical_inequalities,
    golden_reports,
    verify_final_bound,
    verify_red_count_chain,
    verify_tower_bound,
)
from .errors import DomainError, InfeasibleSystemError, InsufficientTableError
from .interval import DEFAULT_PRECISION, format_decimal
from .sieve import SieveConfig, primes_up_to
from . import gapscan, powertuple, sqfree

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2
MAX_JSON_DIGITS = 15
FACTOR_ELIDE_DIGITS = 10**4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _significant_digits(text):
    mantissa = text.lower().split("e")[0].lstrip("-").replace(".", "")
    return len(mantissa.lstrip("0").rstrip("0")) if mantissa.strip("0") else 1


def jsonable(obj):
    """Make ``obj`` JSON-safe; numbers with more than 15 significant digits become strings."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return str(obj) if abs(obj) >= 10**MAX_JSON_DIGITS else obj
    if isinstance(obj, float):
        if not math.isfinite(obj):
            return str(obj)
        text = repr(obj)
        return text if _significant_digits(text) > MAX_JSON_DIGITS else obj
    if isinstance(obj, Fraction):
        return format_decimal(obj, 20)
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if hasattr(obj, "item"):  # numpy scalar
        return jsonable(obj.item())
    raise TypeError(f"cannot serialise {type(obj).__name__}")


class Emitter:
    def __init__(self, fmt, stream):
        self.fmt = fmt
        self.stream = stream

    def record(self, obj):
        if self.fmt == "json":
            self.stream.write(json.dumps(jsonable(obj)) + "\n")
        else:
            self.rows([list(jsonable(obj).items())], pairs=True)

    def rows(self, rows, pairs=False):
        for row in rows:
            cells = [f"{k}={v}" for k, v in row] if pairs else row
            self.stream.write("\t".join(str(jsonable(c)) for c in cells) + "\n")


def _env_int(name):
    raw = os.environ.get(name)
    if raw is None:
        return None
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{name} must be an integer, got {raw!r}")


def _table(args, needed):
    """Prime table reaching ``needed``; an explicit --limit must cover it."""
    limit = args.limit
    if limit is not None and limit < needed:
        raise InsufficientTableError(f"--limit {limit} is below the {needed} this command needs")
    cfg = SieveConfig(cache_path=args.cache)
    return primes_up_to(max(limit or 0, needed, 2), cfg)


def _interval_json(iv, digits=20):
    return {"lo": format_decimal(iv.lo, digits, "down"), "hi": format_decimal(iv.hi, digits, "up")}


# --- certify ---------------------------------------------------------------

def cmd_certify(args, out):
    prec = args.precision_bits
    reports = []
    chosen = args.golden or args.chain or args.final or args.tower or args.classical
    if args.all or not chosen:
        args.golden = args.chain = args.final = True
    if args.golden:
        reports += golden_reports(prec)
    if args.chain:
        reports += verify_red_count_chain(prec)
    if args.final:
        reports += verify_final_bound(prec)
    if args.tower:
        lo, hi = args.tower
        if lo > hi:
            raise UsageError("--tower needs M_LO <= M_HI")
        reports += [verify_tower_bound(m, prec) for m in range(lo, hi + 1)]
    if args.classical:
        x_max, k_max = args.classical
        reports += check_classical_inequalities(x_max, k_max)
    for rep in reports:
        out.record(rep.to_json())
    return all(rep.verified for rep in reports)


# --- sieve -----------------------------------------------------------------

def cmd_sieve(args, out):
    t = _table(args, args.x)
    ps = t.upto(args.x)
    if args.output == "tsv":
        out.rows([[int(p)] for p in ps])
        return True
    rec = {"x": args.x, "pi_x": int(ps.size), "largest_prime": int(ps[-1]) if ps.size else None}
    if args.nth is not None:
        if not 1 <= args.nth <= ps.size:
            raise DomainError(f"--nth must lie in [1, {ps.size}]")
        rec["nth"] = {"n": args.nth, "p_n": int(ps[args.nth - 1])}
    out.record(rec)
    return True


# --- gaps ------------------------------------------------------------------

def _dump_colors(out, report):
    out.rows([[p, c] for p, c in report.rows()])


def cmd_gaps(args, out):
    if args.gaps_cmd == "gk":
        t = _table(args, args.x)
        out.record({"x": args.x, "k": args.k, "g_k": gapscan.g_k(t, args.x, args.k)})
        return True
    if args.gaps_cmd == "color1":
        if args.k < 2:
            raise DomainError("--k must be at least 2")
        r, _ = gapscan.red_green_parameters(args.x, args.k)
        t = _table(args, args.x + math.ceil(r))
        if args.output == "tsv":
            _dump_colors(out, gapscan.color_two(t, args.x, r))
            return True
        rep = gapscan.red_green_report(t, args.x, args.k)
        out.record(rep)
        # the red count ceiling is unconditional; the run length is only reported
        return rep["red_within_ceiling"]
    if args.gaps_cmd == "color6":
        tp, r = args.t, args.r
        if tp is None and r is not None:
            raise UsageError("--r needs --t")
        if tp is None:
            tp, r = gapscan.green_run_parameters(args.x)
        elif r is None:
            r = tp ** (1 / 3) * math.log(args.x) ** (2 / 3) / 3.323 ** (1 / 3)
        if tp < 2:
            out.record({"x": args.x, "t": tp, "r": r, "found": False,
                        "note": "t < 2: formula out of desk range"})
            return True
        t = _table(args, args.x + math.ceil(r * r))
        rep = gapscan.color_three(t, args.x, tp, r)
        if args.output == "tsv":
            _dump_colors(out, rep)
            return True
        wit = gapscan.green_run_search(t, args.x, tp, r)
        rec = rep.to_json()
        y_ok = gapscan.yellow_bound_check(rep)
        rec.update({
            "yellow_bound_holds": y_ok,
            "green_run": {"found": wit.found, "primes": wit.primes, "pairwise_ok": wit.pairwise_ok,
                          "note": wit.note},
        })
        out.record(rec)
        return y_ok and wit.pairwise_ok
    if args.gaps_cmd == "pairs":
        t = _table(args, args.max)
        pairs = gapscan.square_diff_pairs(t, args.min, args.max)
        if args.output == "tsv":
            out.rows([[q, p] for q, p in pairs])
        else:
            out.record({"M": args.min, "N": args.max, "count": len(pairs), "pairs": pairs})
        return True
    raise UsageError("gaps needs a subcommand: gk, color1, color6, pairs")


# --- sdf -------------------------------------------------------------------

def _residues_for(m, budget):
    """Ruzsa's set for 65, otherwise the best clique-search witness."""
    if m == 65:
        return sqfree.ruzsa_65()
    return sqfree.max_sdf_residues(m, budget=budget)[1]


def cmd_sdf(args, out):
    if args.sdf_cmd == "rm":
        mode = "exact" if args.exact else "witness"
        size, witness, optimal = sqfree.max_sdf_residues(
            args.modulus, mode=mode, budget=args.budget, target=args.target
        )
        out.record({"modulus": args.modulus, "mode": mode, "size": size,
                    "residues": witness.sorted(), "optimal": optimal,
                    "sdf": sqfree.is_sdf_residue_set(witness)})
        return sqfree.is_sdf_residue_set(witness)
    if args.sdf_cmd == "digit-set":
        R = _residues_for(args.modulus, args.budget)
        spec = sqfree.DigitTupleSpec(args.modulus, args.digits, tuple(args.shifts))
        S = sqfree.build_digit_set(spec, R)
        ok = sqfree.is_square_difference_free(S.elements)
        if args.output == "tsv":
            out.rows([[s] for s in S.elements])
        else:
            out.record({"modulus": args.modulus, "digits": args.digits, "shifts": list(spec.shifts),
                        "residues": R.sorted(), "size": len(S), "sdf": ok,
                        "elements": list(S.elements)})
        return ok
    if args.sdf_cmd == "primes":
        m = args.modulus
        R = _residues_for(m, args.budget)
        t = _table(args, args.x)
        chosen, bound, meets = sqfree.sdf_prime_witness(args.x, m, R, t)
        spec = chosen.provenance
        ok = sqfree.is_square_difference_free(chosen.elements)
        out.record({
            "x": args.x, "modulus": m, "residues": R.sorted(),
            "shifts": list(spec.shifts) if isinstance(spec, sqfree.DigitTupleSpec) else [],
            "count": len(chosen), "bound": _interval_json(bound, 12), "meets_bound": meets,
            "sdf": ok, "primes": list(chosen.elements),
        })
        return ok
    raise UsageError("sdf needs a subcommand: rm, digit-set, primes")


# --- powertuple ------------------------------------------------------------

def _factor_json(vec):
    factors = vec.factors
    digits = sum(len(str(e)) for e in factors.values())
    if digits > FACTOR_ELIDE_DIGITS:
        return {"elided": True, "primes": len(factors), "sha256": vec.digest()}
    return {str(p): e for p, e in factors.items()}


def cmd_powertuple(args, out):
    if args.k50:
        assignment = powertuple.k50_targets()
    else:
        if args.k is None:
            raise UsageError("powertuple needs --k or --k50")
        assignment = powertuple.default_targets(args.k)
    K = assignment.k
    result = powertuple.solve_exponents(K, assignment, args.precision_bits)
    verified = powertuple.verify_power_tuple(result, assignment, args.materialize_digits)
    admissible, witness = powertuple.admissible_check(powertuple.tuple_offsets(result, K))
    rec = {
        "k": K,
        "targets": {str(i): assignment.targets[i] for i in sorted(assignment.targets)},
        "W_factors": _factor_json(result.W),
        "a_factors": _factor_json(result.a),
        "a_sha256": result.a.digest(),
        "log10_a": _interval_json(result.log10_a),
        "verified": verified,
        "admissible": admissible,
    }
    if witness is not None:
        rec["covering_prime"] = witness
    if args.k50:
        rec["log10_a_below_1.8339e76"] = result.log10_a.hi <= Fraction("1.8339e76")
    out.record(rec)
    return verified and admissible and rec.get("log10_a_below_1.8339e76", True)


# --- parser ----------------------------------------------------------------

def _common(parser, suppress):
    default = argparse.SUPPRESS if suppress else None
    parser.add_argument("--precision-bits", type=int,
                        default=default, help="working precision (env PGAP_PRECISION, default 192)")
    parser.add_argument("--limit", type=int, default=default,
                        help="prime table size (env PGAP_LIMIT; default: what the command needs)")
    parser.add_argument("--threads", type=int, default=default,
                        help="worker cap (scans here are single-threaded; accepted for compatibility)")
    parser.add_argument("--output", choices=("json", "tsv"), default=default)
    parser.add_argument("--cache", default=default, help="sieve cache file")


def build_parser():
    p = _Parser(prog="pgap", description="Prime gap and square-difference toolkit.")
    _common(p, suppress=False)
    p.add_argument("--version", action="version", version=f"pgap {__version__}")
    shared = _Parser(add_help=False)
    _common(shared, suppress=True)
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    c = sub.add_parser("certify", parents=[shared], help="certified constants and inequalities")
    c.add_argument("--all", action="store_true", help="golden values, constant chain and final bound")
    c.add_argument("--golden", action="store_true")
    c.add_argument("--chain", action="store_true")
    c.add_argument("--final", action="store_true")
    c.add_argument("--tower", nargs=2, type=int, metavar=("M_LO", "M_HI"))
    c.add_argument("--classical", nargs=2, type=int, metavar=("X_MAX", "K_MAX"))

    s = sub.add_parser("sieve", parents=[shared], help="primes up to x")
    s.add_argument("--x", type=int, required=True)
    s.add_argument("--nth", type=int)

    g = sub.add_parser("gaps", parents=[shared], help="gap scans and colourings")
    gs = g.add_subparsers(dest="gaps_cmd", parser_class=_Parser)
    gk = gs.add_parser("gk", parents=[shared])
    gk.add_argument("--x", type=int, required=True)
    gk.add_argument("--k", type=int, required=True)
    c1 = gs.add_parser("color1", parents=[shared])
    c1.add_argument("--x", type=int, required=True)
    c1.add_argument("--k", type=int, required=True)
    c6 = gs.add_parser("color6", parents=[shared])
    c6.add_argument("--x", type=int, required=True)
    c6.add_argument("--t", type=int)
    c6.add_argument("--r", type=float)
    pr = gs.add_parser("pairs", parents=[shared])
    pr.add_argument("--min", type=int, default=0)
    pr.add_argument("--max", type=int, required=True)

    d = sub.add_parser("sdf", parents=[shared], help="square-difference-free sets")
    ds = d.add_subparsers(dest="sdf_cmd", parser_class=_Parser)
    rm = ds.add_parser("rm", parents=[shared])
    rm.add_argument("--modulus", type=int, required=True)
    rm.add_argument("--exact", action="store_true")
    rm.add_argument("--target", type=int)
    dg = ds.add_parser("digit-set", parents=[shared])
    dg.add_argument("--modulus", type=int, required=True)
    dg.add_argument("--digits", type=int, required=True)
    dg.add_argument("--shifts", type=int, nargs="+", required=True)
    dp = ds.add_parser("primes", parents=[shared])
    dp.add_argument("--x", type=int, required=True)
    dp.add_argument("--modulus", type=int, required=True)
    for q in (rm, dg, dp):
        q.add_argument("--budget", type=int, default=sqfree.DEFAULT_CLIQUE_BUDGET)

    pt = sub.add_parser("powertuple", parents=[shared], help="perfect-power tuple construction")
    pt.add_argument("--k", type=int)
    pt.add_argument("--k50", action="store_true", help="k = 50 with the square/cube assignment")
    pt.add_argument("--materialize-digits", type=int, default=powertuple.DEFAULT_MATERIALIZE_DIGITS)
    return p


COMMANDS = {
    "certify": cmd_certify,
    "sieve": cmd_sieve,
    "gaps": cmd_gaps,
    "sdf": cmd_sdf,
    "powertuple": cmd_powertuple,
}


def _resolve_globals(args):
    if args.precision_bits is None:
        args.precision_bits = _env_int("PGAP_PRECISION") or DEFAULT_PRECISION
    if args.limit is None:
        args.limit = _env_int("PGAP_LIMIT")
    if args.output is None:
        args.output = "json"
    if args.precision_bits < 32:
        raise UsageError("--precision-bits must be at least 32")


def _parameters(args):
    return {k: v for k, v in sorted(vars(args).items()) if k not in ("cache",)}


def main(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    start = time.perf_counter()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            parser.print_usage(stderr)
            raise UsageError("a command is required")
        _resolve_globals(args)
        ok = COMMANDS[args.command](args, Emitter(args.output, stdout))
    except UsageError as exc:
        print(f"pgap: error: {exc}", file=stderr)
        return EXIT_USAGE
    except (DomainError, InsufficientTableError, InfeasibleSystemError) as exc:
        print(f"pgap: error: {exc}", file=stderr)
        return EXIT_USAGE
    manifest = {
        "command": args.command,
        "parameters": jsonable(_parameters(args)),
        "tool_version": __version__,
        "precision_bits": args.precision_bits,
        "elapsed_ms": int((time.perf_counter() - start) * 1000),
    }
    print(json.dumps({"manifest": manifest}), file=stderr)
    return EXIT_OK if ok else EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
