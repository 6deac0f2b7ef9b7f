"""Command-line surface: enumeration dumps, symbolic tables, numeric
conversion, and a self-verification harness.

Four verbs:

* ``enumerate`` -- canonical listings of the combinatorial families, with a
  trailing count line (text) or a JSON payload;
* ``table``     -- the symbolic transform tables, optionally cross-checked
  across all three inverse routes;
* ``convert``   -- exact rational sequence conversion in either direction;
* ``verify``    -- the invariant suite, one named check per line.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 internal
disagreement between the inverse routes.  Output is deterministic
byte-for-byte for a fixed invocation.  Enumeration sizes are capped
(noncrossing kinds 10, tree kinds 8); the ``NCKIT_MAX_N`` environment
variable overrides both caps and ``--unsafe-no-cap`` removes them.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import cumulants as cm
from .ncpart import (
    arcs,
    coarsest,
    enumerate_interval,
    enumerate_nc,
    enumerate_set_partitions,
    is_noncrossing,
    kreweras,
    kreweras_inv,
    leq,
    zeta,
    zeta_arc_form,
    zeta_c,
    zeta_c_closed,
)
from .poly import DELTA, Polynomial, cumulant, delta, moment
from .series import standard_series
from .trees import (
    enumerate_arrangements,
    enumerate_prime,
    enumerate_schroder,
    eta,
    partition_of,
    phi,
    phi_inv,
    tree_to_json,
    weight_arrangement,
    weight_tree,
)

PARTITION_CAP = 10
TREE_CAP = 8
_PARTITION_KINDS = ("nc", "interval")
_TREE_KINDS = ("schroder", "prime", "arrangement")
_ENUM_KINDS = _PARTITION_KINDS + _TREE_KINDS

FAULT_TREE_WEIGHT = "tree-weight"


class _UsageError(Exception):
    """Bad input discovered after argument parsing; maps to exit code 2."""


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nckit",
        description="Moment/cumulant transforms over weighted noncrossing partitions.",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    p_enum = sub.add_parser(
        "enumerate", help="list a combinatorial family in canonical order"
    )
    p_enum.add_argument("kind", choices=_ENUM_KINDS)
    p_enum.add_argument("--n", type=_positive_int, required=True)
    p_enum.add_argument("--format", choices=("text", "json"), default="text")
    p_enum.add_argument(
        "--unsafe-no-cap",
        action="store_true",
        help="disable the size cap (output grows like Catalan numbers)",
    )
    p_enum.set_defaults(handler=_cmd_enumerate)

    p_table = sub.add_parser("table", help="print a symbolic transform table")
    p_table.add_argument("kind", choices=("delta", "free", "boolean"))
    p_table.add_argument(
        "--direction", choices=("moments", "cumulants"), required=True
    )
    p_table.add_argument("--n", type=_positive_int, required=True)
    p_table.add_argument(
        "--method",
        choices=cm.CUMULANT_METHODS + ("all",),
        default=cm.METHOD_MOBIUS,
        help="inverse route; ignored for --direction moments",
    )
    p_table.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p_table.add_argument(
        "--inject-fault", choices=(FAULT_TREE_WEIGHT,), help=argparse.SUPPRESS
    )
    p_table.set_defaults(handler=_cmd_table)

    p_conv = sub.add_parser("convert", help="convert a rational sequence exactly")
    p_conv.add_argument("--moments", help="comma-separated rationals (input)")
    p_conv.add_argument("--cumulants", help="comma-separated rationals (input)")
    p_conv.add_argument("--deltas", required=True, help="comma-separated rationals")
    p_conv.add_argument(
        "--direction", choices=("moments", "cumulants"), required=True
    )
    p_conv.set_defaults(handler=_cmd_convert)

    p_verify = sub.add_parser("verify", help="run the invariant suite")
    p_verify.add_argument("--max-n", type=_positive_int, default=6)
    p_verify.add_argument(
        "--inject-fault", choices=(FAULT_TREE_WEIGHT,), help=argparse.SUPPRESS
    )
    p_verify.set_defaults(handler=_cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    return args.handler(args)


def run() -> None:
    sys.exit(main())


def _usage_error(message: str) -> int:
    print(f"nckit: error: {message}", file=sys.stderr)
    return 2


def _compact(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


# -- enumerate ---------------------------------------------------------------

def _resolve_cap(kind: str, no_cap: bool) -> int | None:
    if no_cap:
        return None
    env = os.environ.get("NCKIT_MAX_N")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise _UsageError(f"NCKIT_MAX_N is not an integer: {env!r}") from None
    return PARTITION_CAP if kind in _PARTITION_KINDS else TREE_CAP


def _cmd_enumerate(args) -> int:
    try:
        cap = _resolve_cap(args.kind, args.unsafe_no_cap)
    except _UsageError as exc:
        return _usage_error(str(exc))
    if cap is not None and args.n > cap:
        return _usage_error(
            f"n={args.n} exceeds the cap {cap} for {args.kind!r}"
            " (raise NCKIT_MAX_N or pass --unsafe-no-cap)"
        )
    n = args.n
    if args.kind in _PARTITION_KINDS:
        family = enumerate_nc(n) if args.kind == "nc" else enumerate_interval(n)
        lines = [p.render() for p in family]
        items = lines
    elif args.kind == "arrangement":
        family = enumerate_arrangements(n)
        lines = [
            partition_of(a).render()
            + " "
            + " ".join(_compact(tree_to_json(shape)) for _, shape in a.components)
            for a in family
        ]
        items = [a.to_json_list() for a in family]
    else:
        family = (
            enumerate_schroder(n) if args.kind == "schroder" else enumerate_prime(n)
        )
        items = [tree_to_json(t) for t in family]
        lines = [_compact(obj) for obj in items]
    if args.format == "json":
        payload = {
            "kind": args.kind,
            "n": n,
            "count": len(lines),
            "items": items,
        }
        print(json.dumps(payload, indent=2))
    else:
        for line in lines:
            print(line)
        print(f"count: {len(lines)}")
    return 0


# -- table -------------------------------------------------------------------

def _corrupt_trees_table(table: cm.TransformTable) -> cm.TransformTable:
    """Simulated implementation bug for fault-injection tests: perturb the
    tree-route entries so that cross-checks must notice."""
    entries = list(table.entries)
    bump = Polynomial.from_variable(delta(1))
    for k in range(2, table.n + 1):
        entries[k - 1] = entries[k - 1] + bump * (
            Polynomial.from_variable(moment(1)) ** k
        )
    return cm.TransformTable(
        table.n, table.direction, table.method, entries, table.flavor
    )


def _cumulant_table(n: int, method: str, fault: str | None) -> cm.TransformTable:
    table = cm.cumulants_from_moments(n, method)
    if fault == FAULT_TREE_WEIGHT and method == cm.METHOD_TREES:
        table = _corrupt_trees_table(table)
    return table


def _cmd_table(args) -> int:
    n = args.n
    flavor = args.kind
    agreement = None
    if args.direction == "moments":
        table = cm.moments_from_cumulants(n)
    elif args.method == "all":
        tables = {m: _cumulant_table(n, m, args.inject_fault) for m in cm.CUMULANT_METHODS}
        agreement = {
            f"{a}/{b}": tables[a].entries == tables[b].entries
            for a, b in (
                (cm.METHOD_MOBIUS, cm.METHOD_TREES),
                (cm.METHOD_MOBIUS, cm.METHOD_LAGRANGE),
                (cm.METHOD_TREES, cm.METHOD_LAGRANGE),
            )
        }
        table = tables[cm.METHOD_MOBIUS]
    else:
        table = _cumulant_table(n, args.method, args.inject_fault)
    table = cm.specialize_table(table, flavor)

    if args.format == "json":
        payload = table.to_json_dict()
        if agreement is not None:
            payload = {"table": payload, "agreement": agreement}
        print(json.dumps(payload, indent=2))
    elif args.format == "csv":
        sys.stdout.write(table.to_csv())
        if agreement is not None:
            for pair, ok in agreement.items():
                if not ok:
                    print(f"agreement {pair}: MISMATCH", file=sys.stderr)
    else:
        print(table.render_text())
        if agreement is not None:
            for pair, ok in agreement.items():
                print(f"agreement {pair}: {'ok' if ok else 'MISMATCH'}")
    if agreement is not None and not all(agreement.values()):
        return 3
    return 0


# -- convert -----------------------------------------------------------------

def _parse_rationals(text: str, flag: str) -> list[Fraction]:
    values = []
    for token in text.split(","):
        token = token.strip()
        try:
            values.append(Fraction(token))
        except (ValueError, ZeroDivisionError):
            raise _UsageError(f"{flag}: not an exact rational: {token!r}") from None
    return values


def _cmd_convert(args) -> int:
    wanted = "--moments" if args.direction == "cumulants" else "--cumulants"
    given = args.moments if args.direction == "cumulants" else args.cumulants
    other = args.cumulants if args.direction == "cumulants" else args.moments
    if given is None:
        return _usage_error(
            f"--direction {args.direction} needs the input sequence via {wanted}"
        )
    if other is not None:
        return _usage_error(
            f"--direction {args.direction} takes only {wanted}, not both sequences"
        )
    try:
        values = _parse_rationals(given, wanted)
        deltas = _parse_rationals(args.deltas, "--deltas")
    except _UsageError as exc:
        return _usage_error(str(exc))
    try:
        result = cm.numeric_convert(values, deltas, args.direction)
    except cm.LengthMismatch as exc:
        return _usage_error(str(exc))
    print(",".join(str(x) for x in result))
    return 0


# -- verify ------------------------------------------------------------------

def _check_counting(max_n: int, fault) -> tuple[int, str]:
    cases = 0
    for n in range(1, min(max_n, 8) + 1):
        brute = sum(
            1 for p in enumerate_set_partitions(n) if is_noncrossing(p)
        )
        if len(enumerate_nc(n)) != brute:
            return cases, f"noncrossing count at n={n}"
        cases += 1
    for n in range(1, min(max_n, 6) + 1):
        if len(enumerate_interval(n)) != 2 ** (n - 1):
            return cases, f"interval count at n={n}"
        if len(enumerate_arrangements(n)) != len(enumerate_prime(n)):
            return cases, f"arrangement/prime count at n={n}"
        cases += 2
    return cases, ""


def _check_zeta_forms(max_n: int, fault) -> tuple[int, str]:
    cases = 0
    for n in range(1, min(max_n, 5) + 1):
        parts = enumerate_nc(n)
        for p in parts:
            for q in parts:
                if zeta(p, q) != zeta_arc_form(p, q):
                    return cases, f"zeta forms disagree at n={n}"
                if zeta_c(p, q) != zeta_c_closed(p, q):
                    return cases, f"dual zeta forms disagree at n={n}"
                cases += 2
    return cases, ""


def _check_structural_maps(max_n: int, fault) -> tuple[int, str]:
    cases = 0
    for n in range(1, min(max_n, 6) + 1):
        for t in enumerate_prime(n):
            a = phi(t)
            if phi_inv(a) != t:
                return cases, f"tree/arrangement round trip at n={n}"
            if kreweras(partition_of(a)) != eta(t):
                return cases, f"complement identity at n={n}"
            if weight_arrangement(a) != weight_tree(t):
                return cases, f"weight transport at n={n}"
            cases += 3
        for p in enumerate_nc(n):
            if len(arcs(p)) + p.block_count != n:
                return cases, f"arc/block count at n={n}"
            cases += 1
    return cases, ""


def _check_triple_agreement(max_n: int, fault) -> tuple[int, str]:
    cases = 0
    for n in range(1, max_n + 1):
        tables = {m: _cumulant_table(n, m, fault) for m in cm.CUMULANT_METHODS}
        reference = tables[cm.METHOD_MOBIUS]
        for m in cm.CUMULANT_METHODS[1:]:
            if tables[m].entries != reference.entries:
                return cases, f"{cm.CUMULANT_METHODS[0]} vs {m} at n={n}"
            cases += 1
    return cases, ""


def _check_round_trip(max_n: int, fault) -> tuple[int, str]:
    cases = 0
    for n in range(1, max_n + 1):
        mtab = cm.moments_from_cumulants(n)
        ctab = cm.cumulants_from_moments_mobius(n)
        minto = {moment(k): mtab.entry(k) for k in range(1, n + 1)}
        cinto = {cumulant(k): ctab.entry(k) for k in range(1, n + 1)}
        for k in range(1, n + 1):
            if ctab.entry(k).substitute(minto) != Polynomial.from_variable(
                cumulant(k)
            ):
                return cases, f"cumulant entry {k} at n={n}"
            if mtab.entry(k).substitute(cinto) != Polynomial.from_variable(
                moment(k)
            ):
                return cases, f"moment entry {k} at n={n}"
            cases += 2
    return cases, ""


def _check_specializations(max_n: int, fault) -> tuple[int, str]:
    free_series = standard_series("F", max_n)
    bool_series = standard_series("B", max_n)
    free_table = cm.free_cumulants(max_n)
    bool_table = cm.boolean_cumulants(max_n)
    cases = 0
    for k in range(1, max_n + 1):
        if free_table.entry(k) != free_series.coeff(k - 1):
            return cases, f"free entry {k}"
        if bool_table.entry(k) != bool_series.coeff(k - 1):
            return cases, f"boolean entry {k}"
        cases += 2
    return cases, ""


def _check_cancellation(max_n: int, fault) -> tuple[int, str]:
    cases = 0
    for n in range(1, min(max_n, 5) + 1):
        for rho in enumerate_nc(n):
            expected = 1 if rho == coarsest(n) else 0
            if cm.w_rho(rho) != expected:
                return cases, f"accumulated column value at {rho.render()}"
            cases += 1
            if rho == coarsest(n):
                continue
            dual = kreweras_inv(rho)
            for a in enumerate_arrangements(n):
                if not leq(partition_of(a), dual):
                    continue
                b = cm.psi(a, rho)
                if b == a or cm.psi(b, rho) != a:
                    return cases, f"pairing fails at {rho.render()}"
                cases += 1
    return cases, ""


def _check_sign_pattern(max_n: int, fault) -> tuple[int, str]:
    cases = 0
    table = cm.cumulants_from_moments_mobius(max_n)
    for k in range(1, max_n + 1):
        for mono, coeff_poly in table.entry(k).split_by_family(DELTA).items():
            blocks = sum(exp for _, exp in mono)
            sign = (-1) ** (blocks - 1)
            for _, coeff in coeff_poly.items():
                value = sign * coeff
                if value <= 0 or value.denominator != 1:
                    return cases, f"sign pattern breaks in entry {k}"
            cases += 1
    return cases, ""


_CHECKS = (
    ("counting", _check_counting),
    ("zeta forms", _check_zeta_forms),
    ("structural maps", _check_structural_maps),
    ("triple agreement", _check_triple_agreement),
    ("round trip", _check_round_trip),
    ("specializations", _check_specializations),
    ("cancellation", _check_cancellation),
    ("sign pattern", _check_sign_pattern),
)


def _cmd_verify(args) -> int:
    for name, check in _CHECKS:
        cases, failure = check(args.max_n, args.inject_fault)
        if failure:
            print(f"FAIL {name}: {failure}")
            return 1
        print(f"ok {name}: {cases} cases")
    print(f"all checks passed (max n = {args.max_n})")
    return 0
