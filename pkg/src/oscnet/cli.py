"""Command-line front end.

Data goes to stdout; errors go to stderr as one ``level=... code=... msg=...``
line. Exit codes: 0 ok, 2 input/schema error, 3 physical-validity error,
4 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import sys

from .diag import mode_frequencies, simultaneous_diagonalize
from .emit import emit
from .entangle import critical_temperature, entanglement_report, pair_covariance
from .errors import InputError, OscnetError
from .network import ThermalEnvironment, parse_network
from .sweep import COMPARE_FIELDS, SWEEP_FIELDS, compare_chains, sweep, temperature_grid

COV_FIELDS = ("i", "j", "beta", "A", "E", "C", "G", "H", "J")
REPORT_FIELDS = COV_FIELDS + ("L", "E_N", "nu_min", "entangled")


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _sites(text: str) -> tuple[int, int]:
    try:
        i, j = (int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 'i,j', got {text!r}") from None
    return i, j


def _kinds(text: str) -> list[str]:
    kinds = [k.strip() for k in text.split(",") if k.strip()]
    for k in kinds:
        if k not in ("circular", "linear"):
            raise argparse.ArgumentTypeError(f"unknown kind {k!r}")
    return kinds


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="oscnet", description="Two-site entanglement in thermal oscillator networks.")
    sub = p.add_subparsers(dest="command", required=True)

    def with_net(name, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("network", help="JSON network document, '-' for stdin")
        return sp

    with_net("modes", "normal-mode basis and phonon frequencies")

    for name, help_, fmt in (
        ("cov", "two-site covariance entries", "jsonl"),
        ("entangle", "PPT verdict and logarithmic negativity", "jsonl"),
    ):
        sp = with_net(name, help_)
        sp.add_argument("--beta", type=float, required=True, help="inverse temperature ('inf' for ground state)")
        sp.add_argument("--sites", type=_sites, required=True, help="1-based pair, e.g. 1,2")
        sp.add_argument("--format", choices=("csv", "jsonl"), default=fmt)

    sp = with_net("sweep", "L and E_N over a temperature grid")
    sp.add_argument("--sites", type=_sites, required=True)
    sp.add_argument("--tmin", type=float, required=True)
    sp.add_argument("--tmax", type=float, required=True)
    sp.add_argument("--steps", type=int, required=True)
    sp.add_argument("--log", action="store_true", help="log-spaced grid")
    sp.add_argument("--format", choices=("csv", "jsonl"), default="csv")

    sp = with_net("tcrit", "critical temperature of a pair")
    sp.add_argument("--sites", type=_sites, required=True)
    sp.add_argument("--tlo", type=float, default=1e-3)
    sp.add_argument("--thi", type=float, default=10.0)

    sp = sub.add_parser("compare", help="circular vs linear negativity at fixed separation")
    sp.add_argument("--kind", type=_kinds, default=["circular", "linear"])
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--separation", type=int, required=True)
    sp.add_argument("--beta", type=float, required=True)
    sp.add_argument("--mass", type=float, default=1.0)
    sp.add_argument("--onsite", type=float, default=1.0)
    sp.add_argument("--coupling", type=float, default=1.0)
    sp.add_argument("--format", choices=("csv", "jsonl"), default="csv")
    return p


def _load(path: str):
    if path == "-":
        return parse_network(sys.stdin.read())
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read network file ({exc.strerror})", path) from None
    return parse_network(text)


def _cov_record(pc, beta) -> dict:
    return {"i": pc.site_i, "j": pc.site_j, "beta": beta,
            "A": pc.a, "E": pc.e, "C": pc.c, "G": pc.g, "H": pc.h, "J": pc.j}


def _modes_document(basis) -> dict:
    return {
        "mu": basis.mu,
        "lambdas": basis.lambdas.tolist(),
        "omega": mode_frequencies(basis).tolist(),
        "r_diag": basis.r_diag.tolist(),
        "s": basis.s.tolist(),
        "a": basis.a.tolist(),
        "a_inv": basis.a_inv.tolist(),
    }


def _execute(args) -> str:
    if args.command == "compare":
        env = ThermalEnvironment(args.beta)
        rows = compare_chains(args.kind, args.n, args.separation, env, args.mass, args.onsite, args.coupling)
        return emit(rows, args.format, COMPARE_FIELDS)

    basis = simultaneous_diagonalize(_load(args.network))
    if args.command == "modes":
        return json.dumps(_modes_document(basis)) + "\n"
    i, j = args.sites
    if args.command == "cov":
        env = ThermalEnvironment(args.beta)
        return emit([_cov_record(pair_covariance(basis, env, i, j), env.beta)], args.format, COV_FIELDS)
    if args.command == "entangle":
        env = ThermalEnvironment(args.beta)
        return emit([entanglement_report(basis, env, i, j)], args.format, REPORT_FIELDS)
    if args.command == "sweep":
        grid = temperature_grid(args.tmin, args.tmax, args.steps, args.log)
        return emit(sweep(basis, i, j, grid), args.format, SWEEP_FIELDS)
    if args.command == "tcrit":
        tc = critical_temperature(basis, i, j, args.tlo, args.thi)
        return ("none" if tc is None else format(tc, ".17g")) + "\n"
    raise AssertionError(args.command)


def _diagnostic(code: str, msg: str) -> None:
    print(f"level=error code={code} msg={json.dumps(msg)}", file=sys.stderr)


def run(argv=None, stdout=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    try:
        args = build_parser().parse_args(argv)
        out = _execute(args)
    except _UsageError as exc:
        _diagnostic("usage", str(exc))
        return 2
    except OscnetError as exc:
        _diagnostic(exc.code, str(exc))
        return exc.exit_code
    stdout.write(out)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
