"""Command-line interface.

    graphdeco decorate     --input base.json --decoration dec.json
    graphdeco gamma        --decoration dec.json
    graphdeco spectrum     (--preset zd:<d> | --input base.json) --decoration dec.json
    graphdeco sample-gamma --decoration dec.json --range a b --step h
    graphdeco verify       --seed n --cases k [--input base.json --decoration dec.json]

Exit codes: 0 success, 1 verification failure, 2 input error.
"""
from __future__ import annotations

import argparse
import logging
import math
import sys
from pathlib import Path

from .errors import InputError, PoleError
from .formats import dump_json, gamma_to_dict, load_graph_with_operator
from .gamma_map import cyclic_spectrum, gamma_from_spectrum
from .graph_model import decorate
from .operator_core import eigendecompose, krylov_cyclic_decomposition
from .oracle import Instance, run_campaign
from .spectrum_set import SpectrumSet, assemble_decorated_spectrum, preset_spectrum
from .tolerances import DEFAULT, Tolerances

log = logging.getLogger("graphdeco")

EXIT_OK, EXIT_FAILED, EXIT_INPUT = 0, 1, 2


def _tolerances(args) -> Tolerances:
    return DEFAULT.with_overrides(eig=args.tol_eig, match=args.tol_match)


def _emit(text: str, output) -> None:
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def _need(args, *names):
    for name in names:
        if getattr(args, name) is None:
            raise InputError(f"--{name.replace('_', '-')} is required for '{args.command}'")


def _decoration_gamma(args, tol):
    dec, A = load_graph_with_operator(args.decoration, rooted=True)
    decomp = krylov_cyclic_decomposition(A, dec.root, tol)
    threshold = tol.breakdown * A.frobenius_norm
    near = [b for b in (decomp.final_beta, *decomp.beta) if 1e-3 * threshold < b < 1e3 * threshold]
    if near:
        log.warning("cyclicity of the root is borderline: Lanczos beta = %.3e against threshold %.3e",
                    min(near), threshold)
    gamma = gamma_from_spectrum(cyclic_spectrum(decomp, tol), -float(A.entries[dec.root, dec.root]), tol)
    return dec, A, gamma, decomp.remainder_eigenvalues


def run_decorate(args, tol) -> int:
    _need(args, "input", "decoration")
    base, _ = load_graph_with_operator(args.input)
    dec, _ = load_graph_with_operator(args.decoration, rooted=True)
    d = decorate(base, dec)
    out = {
        **d.product.to_dict(),
        "base_n": base.n,
        "decoration_n": dec.graph.n,
        "decoration_root": dec.root,
    }
    _emit(dump_json(out), args.output)
    return EXIT_OK


def run_gamma(args, tol) -> int:
    _need(args, "decoration")
    _, _, gamma, remainder = _decoration_gamma(args, tol)
    _emit(dump_json(gamma_to_dict(gamma, remainder)), args.output)
    return EXIT_OK


def run_spectrum(args, tol) -> int:
    _need(args, "decoration")
    if (args.preset is None) == (args.input is None):
        raise InputError("'spectrum' needs exactly one of --preset or --input")
    _, _, gamma, remainder = _decoration_gamma(args, tol)
    if args.preset is not None:
        base, size = preset_spectrum(args.preset)
    else:
        g, H_o = load_graph_with_operator(args.input)
        base = SpectrumSet.from_values(eigendecompose(H_o, tol).values, tol.merge)
        size = g.n
    result = assemble_decorated_spectrum(gamma, remainder, base, size, tol)
    _emit(dump_json(result.to_dict()), args.output)
    return EXIT_OK


def _fmt(x: float) -> str:
    return "NaN" if math.isnan(x) else repr(float(x))


def run_sample_gamma(args, tol) -> int:
    _need(args, "decoration", "range", "step")
    a, b = args.range
    h = args.step
    if not h > 0:
        raise InputError("--step must be positive")
    if not b >= a:
        raise InputError("empty range: need a <= b")
    _, _, gamma, _ = _decoration_gamma(args, tol)
    count = int(math.floor((b - a) / h + 1e-9)) + 1
    rows = ["E,gamma,dgamma"]
    prev = None
    for i in range(count):
        E = a + i * h
        if prev is not None:
            # break the curve where it jumps across a pole between samples
            for p in gamma.poles:
                guard = gamma.pole_tol * (1 + abs(p))
                if prev + guard < p < E - guard:
                    rows.append(f"{_fmt(p)},NaN,NaN")
        try:
            rows.append(f"{_fmt(E)},{_fmt(gamma.evaluate(E))},{_fmt(gamma.derivative(E))}")
        except PoleError:
            rows.append(f"{_fmt(E)},NaN,NaN")
        prev = E
    _emit("\n".join(rows) + "\n", args.output)
    return EXIT_OK


def run_verify(args, tol) -> int:
    seed = 0 if args.seed is None else args.seed
    cases = 1 if args.cases is None else args.cases
    if cases < 0:
        raise InputError("--cases must be non-negative")
    instances = None
    if args.input is not None or args.decoration is not None:
        _need(args, "input", "decoration")
        base, H_o = load_graph_with_operator(args.input)
        dec, A = load_graph_with_operator(args.decoration, rooted=True)
        instances = [Instance(base, H_o, dec, A, tol, label=f"{args.input} decorated by {args.decoration}")] if cases else []
    report = run_campaign(seed, cases, tol, instances=instances)
    _emit(dump_json(report), args.output)
    return EXIT_OK if report["summary"]["failed"] == 0 else EXIT_FAILED


COMMANDS = {
    "decorate": run_decorate,
    "gamma": run_gamma,
    "spectrum": run_spectrum,
    "sample-gamma": run_sample_gamma,
    "verify": run_verify,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="graphdeco", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--input", help="base graph JSON (optionally with 'operator')")
        p.add_argument("--decoration", help="rooted decoration graph JSON")
        p.add_argument("--preset", help="infinite base spectrum, e.g. zd:2")
        p.add_argument("--range", nargs=2, type=float, metavar=("A", "B"))
        p.add_argument("--step", type=float)
        p.add_argument("--seed", type=int)
        p.add_argument("--cases", type=int)
        p.add_argument("--output", help="output path (default: stdout)")
        p.add_argument("--tol-eig", type=float)
        p.add_argument("--tol-match", type=float)
    return parser


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(name)s: %(levelname)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        tol = _tolerances(args)
        return COMMANDS[args.command](args, tol)
    except (InputError, PoleError) as exc:
        print(f"graphdeco {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
