"""
Command line front end.

Every invocation writes exactly one envelope to stdout::

    {"command": ..., "inputs": {...}, "result": {...} | null,
     "status": "ok" | "error", "error": {"code": ..., "message": ...} | null}

Exit codes: 0 ok, 1 bad input, 2 resource cap hit, 3 internal invariant failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from fractions import Fraction

from . import engine
from .errors import CycloError, DomainError, InvariantViolation
from .series import cyclotomic_exact, cyclotomic_trunc

log = logging.getLogger("cyclodensity")

# options whose values may start with "-" (negative integers)
_VALUE_OPTS = ("--seq", "--checkpoints")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise DomainError(message)


def parse_ints(text: str, what: str = "sequence") -> list[int]:
    text = text.strip()
    if not text:
        return []
    try:
        return [int(tok) for tok in text.split(",")]
    except ValueError:
        raise DomainError(f"bad {what} {text!r}: expected comma-separated integers") from None


def _ratio_decimal(fr: Fraction, places: int = 6) -> str:
    scale = 10**places
    q = (2 * fr.numerator * scale + fr.denominator) // (2 * fr.denominator)
    return f"{q // scale}.{q % scale:0{places}d}"


def _fraction(fr: Fraction) -> str:
    return f"{fr.numerator}/{fr.denominator}"


def _cmd_exponents(args):
    k = engine.solve_exponents(args.seq)
    prof = engine.support_profile(k)
    return {
        "exponents": list(k),
        "support": list(prof.support),
        "modulus": prof.modulus,
        "density": _fraction(prof.density),
    }


def _cmd_density(args):
    prof = engine.support_profile(engine.solve_exponents(args.seq))
    return {"modulus": prof.modulus, "density": _fraction(prof.density)}


def _cmd_member(args):
    if args.brute:
        res = engine.brute_member(args.n, args.seq, max_divisors=args.max_divisors)
    else:
        res = engine.is_member(args.n, args.seq, max_states=args.max_states)
    return {
        "member": res.member,
        "reason": res.reason,
        "certificate": None if res.certificate is None else list(res.certificate),
        "method": "brute" if args.brute else "feasibility",
    }


def _cmd_witness(args):
    cert = engine.find_witness(args.seq)
    verdict = engine.verify_witness(cert, args.seq, exact=args.exact_check)
    if not verdict:
        raise InvariantViolation(f"constructed witness failed verification: {verdict.reason}")
    return {
        "n": cert.n,
        "modulus": cert.modulus,
        "groups": [
            {"index": g.index, "exponent": g.exponent, "labels": list(g.labels)}
            for g in cert.groups
        ],
        "cyclotomic_indices": list(cert.cyclotomic_indices),
        "verified": verdict.ok,
        "verdict": verdict.reason,
        "exact_checked": verdict.exact_checked,
    }


def _cmd_count(args):
    checkpoints = args.checkpoints if args.checkpoints else [args.limit]
    table = engine.count_members(args.seq, args.limit, checkpoints, max_states=args.max_states)
    for row in table.rows:
        if row.count > row.bound:
            raise InvariantViolation(f"N({row.x}) = {row.count} exceeds floor(x/l) = {row.bound}")
    return {
        "modulus": table.modulus,
        "rows": [
            {
                "x": row.x,
                "N": row.count,
                "floor_x_over_l": row.bound,
                "ratio": _fraction(row.ratio),
                "ratio_decimal": _ratio_decimal(row.ratio),
            }
            for row in table.rows
        ],
    }


def _cmd_cyclotomic(args):
    if args.trunc is None:
        coeffs = list(cyclotomic_exact(args.n).coeffs)
    else:
        if args.trunc < 0:
            raise DomainError("--trunc must be >= 0")
        coeffs = list(cyclotomic_trunc(args.n, args.trunc).coeffs)
    return {"coefficients": coeffs}


def _cmd_selftest(args):
    from .selftest import run_checks

    results = run_checks()
    failed = [name for name, ok in results if not ok]
    payload = {
        "checks": [{"name": name, "passed": ok} for name, ok in results],
        "passed": len(results) - len(failed),
        "failed": len(failed),
    }
    if failed:
        raise InvariantViolation("selftest failed: " + ", ".join(failed), payload)
    return payload


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=["text", "json", "csv"], default="text")
    common.add_argument("--max-divisors", type=int, default=engine.DEFAULT_BRUTE_DIVISORS,
                        help="divisor cap for the brute-force oracle")
    common.add_argument("--max-states", type=int, default=engine.DEFAULT_MAX_STATES,
                        help="state cap for the feasibility search")
    common.add_argument("-v", "--verbose", action="store_true", help="debug log on stderr")

    parser = _Parser(prog="cyclodensity", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def seq_arg(p):
        p.add_argument("--seq", required=True, type=parse_ints,
                       help="comma-separated n_1,...,n_r (empty for r = 0)")

    p = sub.add_parser("exponents", parents=[common], help="exponent vector, support, modulus")
    seq_arg(p)
    p.set_defaults(func=_cmd_exponents)

    p = sub.add_parser("density", parents=[common], help="modulus l and density 1/l")
    seq_arg(p)
    p.set_defaults(func=_cmd_density)

    p = sub.add_parser("member", parents=[common], help="decide membership of one n")
    p.add_argument("--n", required=True, type=int)
    seq_arg(p)
    p.add_argument("--brute", action="store_true", help="enumerate all divisor subsets")
    p.set_defaults(func=_cmd_member)

    p = sub.add_parser("witness", parents=[common], help="explicit member with certificate")
    seq_arg(p)
    p.add_argument("--exact-check", action="store_true",
                   help="also check exact divisibility of x^n - 1")
    p.set_defaults(func=_cmd_witness)

    p = sub.add_parser("count", parents=[common], help="counting table N(x)")
    seq_arg(p)
    p.add_argument("--limit", required=True, type=int)
    p.add_argument("--checkpoints", type=lambda s: parse_ints(s, "checkpoint list"), default=None)
    p.set_defaults(func=_cmd_count)

    p = sub.add_parser("cyclotomic", parents=[common], help="cyclotomic polynomial coefficients")
    p.add_argument("--n", required=True, type=int)
    p.add_argument("--trunc", type=int, default=None, metavar="R")
    p.set_defaults(func=_cmd_cyclotomic)

    p = sub.add_parser("selftest", parents=[common], help="run the built-in invariant battery")
    p.set_defaults(func=_cmd_selftest)
    return parser


def _normalize_argv(argv: list[str]) -> list[str]:
    out = []
    it = iter(argv)
    for tok in it:
        if tok in _VALUE_OPTS:
            out.append(f"{tok}={next(it, '')}")
        else:
            out.append(tok)
    return out


def _inputs(args) -> dict:
    skip = {"func", "command", "format", "verbose"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def _render_text(env: dict) -> str:
    lines = [f"command: {env['command']}", f"status: {env['status']}"]
    for key, val in env["inputs"].items():
        lines.append(f"input.{key}: {_plain(val)}")
    if env["error"] is not None:
        lines.append(f"error: {env['error']['code']}: {env['error']['message']}")
    result = env["result"] or {}
    if env["command"] == "count" and "rows" in result:
        lines.append(f"modulus: {result['modulus']}")
        lines.append("x N floor(x/l) N*l/x")
        for row in result["rows"]:
            lines.append(
                f"{row['x']} {row['N']} {row['floor_x_over_l']} "
                f"{row['ratio']} = {row['ratio_decimal']}"
            )
        return "\n".join(lines) + "\n"
    for key, val in result.items():
        if isinstance(val, list) and val and isinstance(val[0], dict):
            for i, item in enumerate(val):
                lines.append(f"{key}[{i}]: " + " ".join(f"{k}={_plain(v)}" for k, v in item.items()))
        else:
            lines.append(f"{key}: {_plain(val)}")
    return "\n".join(lines) + "\n"


def _plain(val) -> str:
    if val is None:
        return "-"
    if isinstance(val, bool):
        return "true" if val else "false"
    if isinstance(val, list):
        return ",".join(_plain(v) for v in val) if val else "(empty)"
    return str(val)


def _render_csv(env: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    result = env["result"]
    if env["command"] == "count" and env["status"] == "ok":
        w.writerow(["x", "N", "floor_x_over_l", "ratio_num", "ratio_den"])
        for row in result["rows"]:
            num, den = row["ratio"].split("/")
            w.writerow([row["x"], row["N"], row["floor_x_over_l"], num, den])
        return buf.getvalue()
    w.writerow(["key", "value"])
    w.writerow(["command", env["command"]])
    w.writerow(["status", env["status"]])
    if env["error"] is not None:
        w.writerow(["error.code", env["error"]["code"]])
        w.writerow(["error.message", env["error"]["message"]])
    for key, val in (result or {}).items():
        w.writerow([key, json.dumps(val, separators=(",", ":"))
                    if isinstance(val, (list, dict)) else _plain(val)])
    return buf.getvalue()


def render(env: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(env, indent=2) + "\n"
    if fmt == "csv":
        return _render_csv(env)
    return _render_text(env)


def _guess_format(argv: list[str]) -> str:
    for i, tok in enumerate(argv):
        if tok.startswith("--format="):
            val = tok.split("=", 1)[1]
        elif tok == "--format" and i + 1 < len(argv):
            val = argv[i + 1]
        else:
            continue
        if val in ("text", "json", "csv"):
            return val
    return "text"


def run(argv: list[str] | None = None, stdout=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    stdout = stdout or sys.stdout
    argv = _normalize_argv(argv)
    env = {"command": None, "inputs": {}, "result": None, "status": "ok", "error": None}
    fmt = _guess_format(argv)
    code = 0
    try:
        args = build_parser().parse_args(argv)
        fmt = args.format
        env["command"] = args.command
        env["inputs"] = _inputs(args)
        if args.verbose:
            logging.basicConfig(level=logging.DEBUG, stream=sys.stderr)
        env["result"] = args.func(args)
    except CycloError as exc:
        env["status"] = "error"
        env["error"] = {"code": exc.code, "message": str(exc.args[0]) if exc.args else ""}
        if len(exc.args) > 1 and isinstance(exc.args[1], dict):
            env["result"] = exc.args[1]
        code = exc.exit_code
        log.debug("command failed", exc_info=True)
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    if env["command"] is None:
        env["command"] = next((t for t in argv if not t.startswith("-")), "")
    stdout.write(render(env, fmt))
    return code


def main() -> None:
    sys.exit(run())
