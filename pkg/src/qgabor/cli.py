"""Command-line interface.

Exit codes: 0 all checks passed, 1 an asserted check failed, 2 usage or
precondition error, 3 I/O or file-format error.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys

import numpy as np

from . import io
from .annihilation import benedicks_probe
from .exceptions import CodecError, PreconditionError
from .gqft import gqft_forward, gqft_inverse
from .grid import GridGeometry, Mode, from_rgb_image, make_window, random_signal
from .masks import RegionMask
from .qft import dqft, idqft
from .suites import BENEDICKS_L, SUITES, SuiteConfig, default_benedicks_setup, run_verify_suite, write_reports

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3

log = logging.getLogger("qgabor")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _geometry(args, default_n=8) -> GridGeometry:
    n1 = args.n1 or args.n or default_n
    n2 = args.n2 or args.n or n1
    mode = Mode(args.mode or "discrete")
    if mode is Mode.DISCRETE:
        return GridGeometry(n1, n2, mode)
    L1 = args.L1 or 4.0
    return GridGeometry(n1, n2, mode, L1, args.L2 or L1)


def _parse_window(spec: str, geometry: GridGeometry):
    """A QSIG path, or ``kind[:param]`` with kind gaussian|box|delta."""
    if os.path.exists(spec):
        w = io.read_qsig(spec)
        if w.geometry != geometry:
            raise PreconditionError("window file geometry differs from the signal's")
        return w
    kind, _, param = spec.partition(":")
    if kind == "gaussian":
        return make_window(geometry, "gaussian", sigma=float(param or 1.0), normalize=True)
    if kind == "box":
        return make_window(geometry, "box", half_width=float(param or 1.0), normalize=True)
    if kind == "delta":
        return make_window(geometry, "delta", normalize=True)
    raise PreconditionError(f"window {spec!r} is neither a file nor gaussian|box|delta")


def _parse_mask(text):
    if text is None:
        return None
    if os.path.exists(text):
        with open(text) as fh:
            text = fh.read()
    try:
        spec = json.loads(text)
    except json.JSONDecodeError as exc:
        raise PreconditionError(f"mask is not valid JSON (line {exc.lineno}, col {exc.colno})")
    if not isinstance(spec, dict):
        raise PreconditionError("mask JSON must be an object")
    return spec


def _parse_slice(text: str) -> dict:
    fixed = {}
    for part in filter(None, text.split(",")):
        key, _, value = part.partition("=")
        fixed[key.strip()] = int(value)
    return fixed


def _require_out(args):
    if not args.out:
        raise UsageError("--out is required")
    return args.out


# -- subcommands ---------------------------------------------------------------


def cmd_gen(args) -> int:
    if args.kind == "from-image":
        if not args.input:
            raise UsageError("gen from-image needs --input IMAGE.ppm")
        pixels = io.read_netpbm(args.input)
        g = _geometry(args, default_n=pixels.shape[0])
        g = GridGeometry(pixels.shape[0], pixels.shape[1], g.mode, g.L1, g.L2)
        signal = from_rgb_image(pixels, g)
    else:
        g = _geometry(args)
        if args.kind == "random":
            signal = random_signal(g, np.random.default_rng(args.seed))
        elif args.kind == "gaussian":
            signal = make_window(g, "gaussian", sigma=args.sigma, normalize=args.normalize)
        elif args.kind == "box":
            signal = make_window(g, "box", half_width=args.half_width, normalize=args.normalize)
        else:
            signal = make_window(g, "delta", normalize=args.normalize)
    io.write_qsig(_require_out(args), signal)
    return EXIT_OK


def cmd_qft(args) -> int:
    out = _require_out(args)
    io.write_qsig(out, dqft(io.read_qsig(args.input)))
    return EXIT_OK


def cmd_iqft(args) -> int:
    out = _require_out(args)
    io.write_qsig(out, idqft(io.read_qsig(args.input, spectrum=True)))
    return EXIT_OK


def cmd_gqft(args) -> int:
    out = _require_out(args)
    f = io.read_qsig(args.input)
    io.write_qgab(out, gqft_forward(f, _parse_window(args.window, f.geometry)))
    return EXIT_OK


def cmd_igqft(args) -> int:
    out = _require_out(args)
    G = io.read_qgab(args.input)
    io.write_qsig(out, gqft_inverse(G, _parse_window(args.window, G.geometry)))
    return EXIT_OK


def cmd_spectrogram(args) -> int:
    out = _require_out(args)
    G = io.read_qgab(args.input)
    try:
        image = io.render_spectrogram_slice(G, _parse_slice(args.slice or ""))
    except ValueError as exc:
        raise PreconditionError(str(exc)) from None
    with open(out, "wb") as fh:
        fh.write(io.encode_pgm(image))
    return EXIT_OK


def cmd_verify(args) -> int:
    suites = []
    for item in args.suite or []:
        suites.extend(s for s in item.split(",") if s)
    cfg = SuiteConfig(
        suites=suites,
        n1=args.n1 or args.n,
        n2=args.n2 or args.n,
        mode=args.mode,
        L1=args.L1,
        L2=args.L2,
        trials=args.trials,
        seed=args.seed,
        mask=_parse_mask(args.mask),
        out=args.out,
    )
    reports, code = run_verify_suite(cfg)
    for r in reports:
        if not r.passed or args.verbose:
            log.info(r.summary())
    failed = sum(r.failed for r in reports)
    print(f"{len(reports)} checks, {failed} failed", file=sys.stderr)
    return code


def cmd_probe_benedicks(args) -> int:
    args.mode = args.mode or "quadrature"
    args.L1 = args.L1 or BENEDICKS_L
    g = _geometry(args)
    if g.mode is not Mode.QUADRATURE:
        raise PreconditionError("probe-benedicks needs --mode quadrature")
    window, S, R, r = default_benedicks_setup(g)
    if args.window:
        window = _parse_window(args.window, g)
    if args.r is not None:
        r = args.r
    spec = _parse_mask(args.mask)
    if spec is not None:
        if spec.get("kind") != "product":
            raise PreconditionError("probe-benedicks needs a product mask: {'kind': 'product', 'S': ..., 'R': ...}")
        S = RegionMask.from_spec({**spec["S"], "domain": "freq2d"}, g)
        R = float(spec["R"])
    report = benedicks_probe(window, S, R, r, trials=args.trials or 10, seed=args.seed)
    print(report.summary(), file=sys.stderr)
    if args.out:
        write_reports([report], args.out)
    return EXIT_OK if report.passed else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    geo = argparse.ArgumentParser(add_help=False)
    geo.add_argument("--n", type=int, help="grid size for both axes")
    geo.add_argument("--n1", type=int)
    geo.add_argument("--n2", type=int)
    geo.add_argument("--mode", choices=[m.value for m in Mode])
    geo.add_argument("--L1", type=float, help="box side length (quadrature mode)")
    geo.add_argument("--L2", type=float)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="output path")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("-v", "--verbose", action="store_true")

    parser = _Parser(prog="qgabor", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("gen", parents=[geo, common], help="generate a QSIG signal")
    p.add_argument("kind", choices=["gaussian", "delta", "box", "random", "from-image"])
    p.add_argument("--sigma", type=float, default=1.0)
    p.add_argument("--half-width", type=float, default=1.0)
    p.add_argument("--normalize", action="store_true")
    p.add_argument("--input", help="PPM/PGM image for from-image")
    p.set_defaults(func=cmd_gen)

    for name, func, helptext in (
        ("qft", cmd_qft, "forward QFT of a QSIG signal"),
        ("iqft", cmd_iqft, "inverse QFT of a QSIG spectrum"),
    ):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("input")
        p.set_defaults(func=func)

    for name, func, helptext in (
        ("gqft", cmd_gqft, "Gabor QFT of a QSIG signal, written as QGAB"),
        ("igqft", cmd_igqft, "reconstruct a QSIG signal from a QGAB field"),
    ):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("input")
        p.add_argument("--window", default="gaussian", help="QSIG path or gaussian[:sigma]|box[:hw]|delta")
        p.set_defaults(func=func)

    p = sub.add_parser("verify", parents=[geo, common], help="run verification suites")
    p.add_argument("--suite", action="append", help=f"one or more of {', '.join(SUITES)}")
    p.add_argument("--trials", type=int)
    p.add_argument("--mask", help="mask JSON (inline or file)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("probe-benedicks", parents=[geo, common], help="probe S x B_R annihilation")
    p.add_argument("--window", help="QSIG path or gaussian[:sigma]|box[:hw]|delta")
    p.add_argument("--mask", help="product mask JSON")
    p.add_argument("--r", type=float, help="support radius of the window")
    p.add_argument("--trials", type=int)
    p.set_defaults(func=cmd_probe_benedicks)

    p = sub.add_parser("spectrogram", parents=[common], help="PGM image of a 2D slice of |G|")
    p.add_argument("input")
    p.add_argument("--slice", required=True, help="two fixed indices, e.g. b1=0,b2=0")
    p.set_defaults(func=cmd_spectrogram)
    return parser


def main(argv=None) -> int:
    logging.basicConfig(level=logging.INFO, format="%(message)s", stream=sys.stderr)
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PreconditionError as exc:
        print(f"precondition error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, CodecError) as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
