"""Command-line front end.

Targets are written as expressions so that enormous inputs stay symbolic:
factorials and primorials are factored by formula and powers by factoring
only the base, so the target's own factorization is never recomputed from
its decimal expansion. Grammar, star-separated atoms:

    INT            plain integer, factored by trial division / rho
    INT!           factorial
    INT#           primorial (product of all primes <= INT)
    INT^INT        power; a composite base is fine here
    a '*' b '*' c  product of atoms

A product consisting solely of INT and INT^INT atoms is read as an explicit
factorization and every base must then be prime; mixed products evaluate
each atom independently and multiply.

Exit codes: 0 on success (including empty pre-images), 1 on usage or parse
errors, 2 when a resource limit (divisor cap, sieve budget, factoring
effort) is hit.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from .arith import FactoredInteger, ONE, factorize, is_prime, primes_up_to
from .engine import InverseReport, invert
from .errors import ResourceLimitError
from .functions import MultiplicativeFunction, phi, sigma
from .lattice import DEFAULT_DIVISOR_CAP
from .semiring import COUNT, MAX, MIN, SET, SUM, SUMPOW, Aggregator, make_aggregator

__all__ = ["ParseError", "InputExpression", "parse_input", "run", "main"]


class ParseError(ValueError):
    """Input expression rejected; position is a 0-based character offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


@dataclass(frozen=True)
class InputExpression:
    """Parsed target expression.

    kind is one of literal, factorial, primorial, power, factored, product.
    parts holds the kind-specific payload; for product it is a tuple of
    single-atom InputExpressions.
    """

    text: str
    kind: str
    parts: tuple

    def evaluate(self) -> FactoredInteger:
        """The target as a FactoredInteger, composed symbolically."""
        if self.kind == "literal":
            (v,) = self.parts
            if v < 1:
                raise ValueError("target must be >= 1")
            return factorize(v)
        if self.kind == "factorial":
            (m,) = self.parts
            return FactoredInteger.from_pairs(_factorial_factors(m))
        if self.kind == "primorial":
            (m,) = self.parts
            return FactoredInteger.from_pairs((p, 1) for p in primes_up_to(m))
        if self.kind == "power":
            base, exp = self.parts
            if base < 1:
                raise ValueError("power base must be >= 1")
            return factorize(base) ** exp
        if self.kind == "factored":
            return FactoredInteger.from_pairs(self.parts)
        if self.kind == "product":
            acc = ONE
            for part in self.parts:
                acc = acc * part.evaluate()
            return acc
        raise AssertionError(f"unknown expression kind {self.kind}")


def _factorial_factors(m: int) -> list[tuple[int, int]]:
    # Exponent of p in m! is sum of floor(m / p**i) over i >= 1.
    pairs = []
    for p in primes_up_to(m):
        e = 0
        q = m // p
        while q:
            e += q
            q //= p
        pairs.append((p, e))
    return pairs


def _tokenize(text: str):
    tokens = []  # (kind, payload, position)
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(("int", int(text[i:j]), i))
            i = j
        elif ch in "!#^*":
            tokens.append((ch, None, i))
            i += 1
        else:
            raise ParseError(f"unexpected character {ch!r}", i)
    return tokens


def parse_input(text: str) -> InputExpression:
    """Parse a target expression; see the module docstring for the grammar."""
    tokens = _tokenize(text)
    if not tokens:
        raise ParseError("empty expression", 0)
    atoms = []  # (kind, payload, position)
    i = 0
    while True:
        if i >= len(tokens) or tokens[i][0] != "int":
            pos = tokens[i][2] if i < len(tokens) else len(text)
            raise ParseError("expected an integer", pos)
        _, value, pos = tokens[i]
        i += 1
        if i < len(tokens) and tokens[i][0] in ("!", "#", "^"):
            op = tokens[i][0]
            i += 1
            if op == "!":
                atoms.append(("factorial", (value,), pos))
            elif op == "#":
                atoms.append(("primorial", (value,), pos))
            else:
                if i >= len(tokens) or tokens[i][0] != "int":
                    epos = tokens[i][2] if i < len(tokens) else len(text)
                    raise ParseError("expected an exponent after '^'", epos)
                atoms.append(("power", (value, tokens[i][1]), pos))
                i += 1
        else:
            atoms.append(("literal", (value,), pos))
        if i >= len(tokens):
            break
        if tokens[i][0] != "*":
            raise ParseError("expected '*' between atoms", tokens[i][2])
        i += 1

    if len(atoms) == 1:
        kind, parts, _ = atoms[0]
        return InputExpression(text, kind, parts)

    if all(kind in ("literal", "power") for kind, _, _ in atoms):
        # Explicit factorization: prime bases required.
        pairs = []
        for kind, parts, pos in atoms:
            base, exp = parts if kind == "power" else (parts[0], 1)
            if not is_prime(base):
                raise ParseError(
                    f"{base} is not prime; a multi-atom product of plain integers "
                    "and powers is read as an explicit factorization", pos
                )
            if exp < 1:
                raise ParseError("exponents in a factorization must be >= 1", pos)
            pairs.append((base, exp))
        return InputExpression(text, "factored", tuple(pairs))

    subs = tuple(InputExpression(text, kind, parts) for kind, parts, _ in atoms)
    return InputExpression(text, "product", subs)


# ---------------------------------------------------------------- commands


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on bad usage by default; this tool reserves 2 for
    # resource limits, so remap usage errors to 1.
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="invmf", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, with_aggregate=True):
        p.add_argument("--function", choices=("phi", "sigma"), required=True)
        p.add_argument("--k", type=int, default=1,
                       help="power for sigma_k (sigma only, default 1)")
        if with_aggregate:
            p.add_argument("--aggregate", default="set",
                           help="set|count|sum|sumpow:Q|min|max (default set)")
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--divisor-cap", type=int, default=DEFAULT_DIVISOR_CAP,
                       help="abort if the target has more divisors than this")

    p_inv = sub.add_parser("invert", help="aggregate the pre-image of one target")
    add_common(p_inv)
    p_inv.add_argument("--n", required=True, metavar="EXPR",
                       help="target, e.g. 5040, '15!', '7#', '10^6', '2^4*3^2*5*7'")
    p_inv.add_argument("--all-divisors", action="store_true",
                       help="also report the aggregate at every divisor of the target")
    p_inv.add_argument("--stats", action="store_true",
                       help="print op counts and timing to stderr")

    p_tab = sub.add_parser("table", help="aggregate pre-images for a family of targets")
    p_tab.add_argument("--family", choices=("factorial", "power10", "primorial"),
                       required=True)
    p_tab.add_argument("--from", dest="lo", type=int, required=True, metavar="A")
    p_tab.add_argument("--to", dest="hi", type=int, required=True, metavar="B")
    add_common(p_tab, with_aggregate=False)
    p_tab.add_argument("--aggregate", default="count,min,max",
                       help="comma-separated list (default count,min,max)")

    p_orc = sub.add_parser("oracle", help="brute-force pre-images below a bound")
    p_orc.add_argument("--function", choices=("phi", "sigma"), required=True)
    p_orc.add_argument("--k", type=int, default=1)
    p_orc.add_argument("--n", type=int, required=True)
    p_orc.add_argument("--bound", type=int, required=True)
    p_orc.add_argument("--format", choices=("text", "json"), default="text")
    return parser


def _pick_function(args) -> MultiplicativeFunction:
    if args.function == "phi":
        if args.k != 1:
            raise ValueError("--k applies to sigma only")
        return phi()
    if args.k < 1:
        raise ValueError("--k must be >= 1")
    return sigma(args.k)


def _pick_aggregator(name: str) -> Aggregator:
    name = name.strip()
    if name.startswith(f"{SUMPOW}:"):
        return make_aggregator(SUMPOW, int(name.split(":", 1)[1]))
    if name in (SET, COUNT, SUM, MIN, MAX):
        return make_aggregator(name)
    raise ValueError(f"unknown aggregate {name!r}")


def _encode_result(report: InverseReport, coeff) -> object:
    # JSON form: numbers as decimal strings so results never lose precision.
    kind = report.aggregate.split(":")[0]
    if kind == SET:
        return [str(v) for v in (coeff or ())]
    if kind in (COUNT, SUM, SUMPOW):
        return str(coeff if coeff is not None else 0)
    return None if coeff is None else str(coeff)


def _format_result_text(report: InverseReport, coeff) -> str:
    kind = report.aggregate.split(":")[0]
    if kind == SET:
        return "[" + ", ".join(str(v) for v in coeff) + "]" if coeff else "EMPTY"
    if kind in (COUNT, SUM, SUMPOW):
        return str(coeff if coeff is not None else 0)
    return str(coeff) if coeff is not None else "EMPTY"


def _report_json(report: InverseReport, all_divisors: bool) -> dict:
    obj = {"n": str(report.n.value), "function": report.function}
    if report.function == "sigma":
        obj["k"] = str(report.k)
    obj["aggregate"] = report.aggregate
    obj["result"] = _encode_result(report, report.coefficient)
    if all_divisors:
        obj["divisors"] = {
            str(d): _encode_result(report, c)
            for d, c in (report.divisor_coefficients or {}).items()
        }
    obj["count_ops"] = {"mul": report.ops.mul_count, "add": report.ops.add_count}
    obj["elapsed_ms"] = round(report.elapsed * 1000, 3)
    return obj


def _cmd_invert(args) -> int:
    func = _pick_function(args)
    agg = _pick_aggregator(args.aggregate)
    n = parse_input(args.n).evaluate()
    report = invert(n, func, agg, all_divisors=args.all_divisors,
                    divisor_cap=args.divisor_cap)
    if args.format == "json":
        print(json.dumps(_report_json(report, args.all_divisors)))
    else:
        print(_format_result_text(report, report.coefficient))
        if args.all_divisors:
            for d, c in (report.divisor_coefficients or {}).items():
                print(f"{d}: {_format_result_text(report, c)}")
    if args.stats:
        print(
            f"ops: {report.ops.mul_count} mul, {report.ops.add_count} add; "
            f"series: {report.num_series}; divisors: {report.tau}; "
            f"elapsed: {report.elapsed * 1000:.3f} ms",
            file=sys.stderr,
        )
    return 0


def _family_target(family: str, m: int) -> FactoredInteger:
    if family == "factorial":
        return FactoredInteger.from_pairs(_factorial_factors(m))
    if family == "power10":
        return FactoredInteger.from_pairs([(2, m), (5, m)]) if m else ONE
    # primorial rows count primes: row m is the product of the first m primes
    primes: list[int] = []
    limit = 32
    while len(primes) < m:
        limit *= 2
        primes = primes_up_to(limit)
    return FactoredInteger.from_pairs((p, 1) for p in primes[:m])


def _cmd_table(args) -> int:
    func = _pick_function(args)
    names = [s.strip() for s in args.aggregate.split(",") if s.strip()]
    if not names:
        raise ValueError("no aggregates given")
    aggs = [(name, _pick_aggregator(name)) for name in names]
    if args.lo < 0 or args.hi < args.lo:
        raise ValueError("need 0 <= A <= B for --from A --to B")
    rows = []
    for m in range(args.lo, args.hi + 1):
        n = _family_target(args.family, m)
        row: dict[str, object] = {"m": m, "n": n}
        for name, agg in aggs:
            row[name] = invert(n, func, agg, divisor_cap=args.divisor_cap)
        rows.append(row)
    if args.format == "json":
        out = {"family": args.family, "function": args.function}
        if args.function == "sigma":
            out["k"] = str(args.k)
        out["aggregates"] = names
        out["rows"] = [
            {
                "m": row["m"],
                "n": str(row["n"].value),
                **{
                    name: _encode_result(row[name], row[name].coefficient)
                    for name in names
                },
            }
            for row in rows
        ]
        print(json.dumps(out))
    else:
        header = ["m", "n"] + names
        cells = [
            [str(row["m"]), str(row["n"].value)]
            + [_format_result_text(row[nm], row[nm].coefficient) for nm in names]
            for row in rows
        ]
        widths = [max(len(h), *(len(c[i]) for c in cells)) if cells else len(h)
                  for i, h in enumerate(header)]
        print("  ".join(h.ljust(w) for h, w in zip(header, widths)))
        for c in cells:
            print("  ".join(v.ljust(w) for v, w in zip(c, widths)))
    return 0


def _cmd_oracle(args) -> int:
    from . import oracle  # numpy import deferred to the one command needing it

    func = _pick_function(args)
    if args.n < 1 or args.bound < 1:
        raise ValueError("--n and --bound must be >= 1")
    values = oracle.oracle_preimages(func, args.n, args.bound)
    if args.format == "json":
        obj = {"function": args.function}
        if args.function == "sigma":
            obj["k"] = str(args.k)
        obj.update({"n": str(args.n), "bound": str(args.bound),
                    "result": [str(v) for v in values]})
        print(json.dumps(obj))
    else:
        print("[" + ", ".join(map(str, values)) + "]" if values else "EMPTY")
    return 0


_COMMANDS = {"invert": _cmd_invert, "table": _cmd_table, "oracle": _cmd_oracle}


def run(argv: list[str] | None = None) -> int:
    """Parse argv and execute; returns the process exit code."""
    argv = list(sys.argv[1:]) if argv is None else list(argv)
    if argv and argv[0] not in _COMMANDS and argv[0] not in ("-h", "--help"):
        argv.insert(0, "invert")  # invert is the default subcommand
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except (ParseError, ValueError) as exc:
        print(f"invmf: error: {exc}", file=sys.stderr)
        return 1
    except ResourceLimitError as exc:
        print(f"invmf: resource limit: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
