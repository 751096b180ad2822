"""Command-line front end: ``dualmark {keygen,embed,extract,attack,evaluate}``."""

import argparse
import sys

from . import attacks
from .chaoscipher import DEFAULT_WARMUP, ChaosKey
from .evaluation import SUITES, safe_ncc, evaluate, fmt, write_report
from .imageio import read_pgm, write_pgm
from .metrics import UndefinedCorrelationError, psnr
from .sideinfo import read_sideinfo, write_sideinfo
from .watermark import EmbedParams, seal, unseal


class CommandError(Exception):
    pass


class UsageError(Exception):
    pass


def _load_key(path):
    try:
        return ChaosKey.load(path)
    except OSError as exc:
        raise CommandError(f"cannot read key file: {exc}") from None


def _read_image(path, label):
    try:
        return read_pgm(path)
    except OSError as exc:
        raise CommandError(f"cannot read {label} image: {exc}") from None


def _params(args):
    return EmbedParams(
        alpha=args.alpha,
        beta=args.beta,
        primary_wavelet=args.primary_wavelet,
        primary_levels=args.primary_levels,
        host_wavelet=args.host_wavelet,
        host_levels=args.host_levels,
    )


def _check_size_chain(host, primary, secondary, params):
    p_band = [n >> params.primary_levels for n in primary.shape]
    if secondary.shape[0] > p_band[0] or secondary.shape[1] > p_band[1]:
        raise CommandError(
            f"secondary watermark is {secondary.shape[0]}x{secondary.shape[1]} but the primary "
            f"subbands are only {p_band[0]}x{p_band[1]}"
        )
    h_band = [n >> params.host_levels for n in host.shape]
    if primary.shape[0] > 2 * h_band[0] or primary.shape[1] > 2 * h_band[1]:
        raise CommandError(
            f"primary watermark is {primary.shape[0]}x{primary.shape[1]} but the host's level-"
            f"{params.host_levels} subbands are only {h_band[0]}x{h_band[1]}"
        )


def cmd_keygen(args):
    if args.b is None and args.x0 is None:
        key = ChaosKey.random(args.warmup)
    else:
        if args.b is None or args.x0 is None:
            raise CommandError("--b and --x0 must be given together")
        key = ChaosKey(args.b, args.x0, args.warmup)
    key.save(args.out)


def cmd_embed(args):
    host = _read_image(args.host, "host")
    primary = _read_image(args.primary, "primary")
    secondary = _read_image(args.secondary, "secondary")
    params = _params(args)
    _check_size_chain(host, primary, secondary, params)
    result = seal(host, primary, secondary, _load_key(args.key), params)
    write_pgm(result.watermarked_host, args.out)
    write_sideinfo(result.side_info, args.sideinfo)
    print(f"psnr_db={fmt(psnr(host, result.watermarked_host))}")


def cmd_extract(args):
    try:
        info = read_sideinfo(args.sideinfo)
    except OSError as exc:
        raise CommandError(f"cannot read side information: {exc}") from None
    watermarked = _read_image(args.watermarked, "watermarked")
    host = _read_image(args.host, "host")
    primary = _read_image(args.primary, "primary")
    rec_primary, rec_secondary = unseal(watermarked, host, primary, _load_key(args.key), info)
    write_pgm(rec_primary, args.out_primary)
    write_pgm(rec_secondary, args.out_secondary)
    print(f"ncc_primary={fmt(safe_ncc(primary, rec_primary))}")
    if args.secondary:
        print(f"ncc_secondary={fmt(safe_ncc(_read_image(args.secondary, 'secondary'), rec_secondary))}")
    else:
        print("note: pass --secondary to report ncc_secondary", file=sys.stderr)


def cmd_attack(args):
    try:
        spec = attacks.parse(args.spec)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    write_pgm(attacks.apply(_read_image(args.input, "input"), spec), args.out)


def cmd_evaluate(args):
    host = _read_image(args.host, "host")
    primary = _read_image(args.primary, "primary")
    secondary = _read_image(args.secondary, "secondary")
    params = _params(args)
    _check_size_chain(host, primary, secondary, params)
    rows = evaluate(host, primary, secondary, _load_key(args.key), params, SUITES[args.suite])
    write_report(rows, args.report)
    for r in rows:
        print(f"{r.attack},{fmt(r.ncc_primary)},{fmt(r.ncc_secondary)},{fmt(r.psnr_db)}")


def _add_params(p):
    defaults = EmbedParams()
    p.add_argument("--alpha", type=float, default=defaults.alpha)
    p.add_argument("--beta", type=float, default=defaults.beta)
    p.add_argument("--primary-wavelet", default=defaults.primary_wavelet.value, choices=["haar", "db4"])
    p.add_argument("--primary-levels", type=int, default=defaults.primary_levels)
    p.add_argument("--host-wavelet", default=defaults.host_wavelet.value, choices=["haar", "db4"])
    p.add_argument("--host-levels", type=int, default=defaults.host_levels)


def build_parser():
    parser = argparse.ArgumentParser(prog="dualmark", description="Dual DWT-SVD watermarking with chaotic encryption.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("keygen", help="write a chaos key file")
    p.add_argument("--out", required=True)
    p.add_argument("--b", type=float)
    p.add_argument("--x0", type=float)
    p.add_argument("--warmup", type=int, default=DEFAULT_WARMUP)
    p.set_defaults(func=cmd_keygen)

    p = sub.add_parser("embed", help="embed both watermarks into a host image")
    for name in ("host", "primary", "secondary", "key", "out", "sideinfo"):
        p.add_argument(f"--{name}", required=True)
    _add_params(p)
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("extract", help="recover both watermarks")
    for name in ("watermarked", "host", "primary", "key", "sideinfo", "out-primary", "out-secondary"):
        p.add_argument(f"--{name}", required=True)
    p.add_argument("--secondary", help="original secondary, to report ncc_secondary")
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("attack", help="apply one attack to an image")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--spec", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_attack)

    p = sub.add_parser("evaluate", help="run the robustness suite and write a CSV report")
    for name in ("host", "primary", "secondary", "key", "report"):
        p.add_argument(f"--{name}", required=True)
    p.add_argument("--suite", default="default", choices=sorted(SUITES))
    _add_params(p)
    p.set_defaults(func=cmd_evaluate)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except UsageError as exc:
        parser.error(str(exc))
    except (CommandError, ValueError, UndefinedCorrelationError) as exc:
        print(f"dualmark {args.command}: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
