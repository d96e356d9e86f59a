"""Command-line front end: build field specs, run evaluations and probes,
emit CSV/JSON/SVG artifacts.

All floating-point output is formatted with 17 significant digits so that
repeated runs with identical arguments produce byte-identical files.  Exit
codes: 0 success, 2 usage or validation failure, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from . import continuation, spectra
from .continuation import DecompositionConfig, mellin_barnes_check, phi_continued
from .errors import FFGoldError, NumericalError, ValidationError
from .ff_models import (
    FunctionFieldSpec,
    PrimePower,
    WeierstrassCurve,
    make_custom_field,
    make_elliptic_field,
    make_rational_field,
    point_counts,
)
from .goldbach import FieldPair, goldbach_G, goldbach_G_bruteforce, phi_direct


def fmt(x: float) -> str:
    return "%.17g" % float(x)


def _write_text(path, text: str):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, newline="\n")


def _csv(header, rows) -> str:
    lines = [",".join(header)]
    lines += [",".join(row) for row in rows]
    return "\n".join(lines) + "\n"


def _thread_count() -> int:
    env = os.environ.get("FFGOLD_THREADS")
    if env:
        n = int(env)
        if n < 1:
            raise ValidationError("FFGOLD_THREADS must be >= 1")
        return n
    return os.cpu_count() or 1


# -- field spec plumbing ------------------------------------------------------

def build_spec(args) -> FunctionFieldSpec:
    q = PrimePower.from_q(args.q)
    if args.rational:
        return make_rational_field(q)
    if args.elliptic:
        if not args.curve:
            raise ValidationError("--elliptic requires --curve")
        return make_elliptic_field(q, WeierstrassCurve.parse(args.curve))
    if args.custom:
        if not args.L:
            raise ValidationError("--custom requires --L")
        return make_custom_field(q, [int(c) for c in args.L.split(",")])
    raise ValidationError("choose one of --rational, --elliptic, --custom")


def load_field(text: str) -> FunctionFieldSpec:
    """A field argument: a spec JSON path, or inline shorthand
    rational:q | elliptic:q:curve | custom:q:c0,c1,...  .
    """
    if os.path.exists(text):
        return FunctionFieldSpec.from_json(Path(text).read_text())
    parts = text.split(":", 2)
    kind = parts[0]
    if kind == "rational" and len(parts) == 2:
        return make_rational_field(PrimePower.from_q(int(parts[1])))
    if kind == "elliptic" and len(parts) == 3:
        return make_elliptic_field(PrimePower.from_q(int(parts[1])),
                                   WeierstrassCurve.parse(parts[2]))
    if kind == "custom" and len(parts) == 3:
        return make_custom_field(PrimePower.from_q(int(parts[1])),
                                 [int(c) for c in parts[2].split(",")])
    raise ValidationError(f"cannot interpret field argument {text!r}")


def load_pair(args, depth: int = 64) -> FieldPair:
    return FieldPair.create(load_field(args.k1), load_field(args.k2), depth=depth)


def decomposition_config(args) -> DecompositionConfig:
    kwargs = {}
    if args.N is not None:
        kwargs["N"] = args.N
    if args.alpha is not None:
        kwargs["alpha"] = args.alpha
    if args.M_b is not None:
        kwargs["M_b"] = args.M_b
    if args.M_c is not None:
        kwargs["M_c"] = args.M_c
    if args.M_a is not None:
        kwargs["M_a"] = args.M_a
    if args.T is not None:
        kwargs["T"] = args.T
    if args.quad_points is not None:
        kwargs["quad_points"] = args.quad_points
    return DecompositionConfig(**kwargs)


# -- commands -----------------------------------------------------------------

def cmd_spec(args) -> int:
    spec = build_spec(args)
    if args.out:
        Path(args.out).write_text(spec.to_json() + "\n", newline="\n")
    else:
        print(spec.to_json())
    print(f"L_coeffs = {list(spec.L_coeffs)}")
    print(f"genus = {spec.genus}")
    print("k,N_k")
    for k, nk in enumerate(point_counts(spec, 8).N, start=1):
        print(f"{k},{nk}")
    return 0


def cmd_gold(args) -> int:
    if args.n_max < 2:
        raise ValidationError("n-max must be >= 2")
    K1, K2 = load_field(args.k1), load_field(args.k2)
    depth = max(2, math.ceil(math.log(args.n_max) / math.log(min(K1.q.q, K2.q.q))) + 1)
    pair = FieldPair.create(K1, K2, depth=depth)
    rows = []
    for n in range(2, args.n_max + 1):
        gv = goldbach_G(pair, n)
        if gv.reps or args.dense:
            rows.append((str(n), str(len(gv.reps)), fmt(gv.value)))
    _write_text(args.out, _csv(("n", "reps", "value"), rows))
    return 0


def _grid(args):
    pts = []
    re = args.re_start
    while re <= args.re_stop + 1e-12:
        im = args.im_start
        while im <= args.im_stop + 1e-12:
            pts.append(complex(re, im))
            im += args.im_step
        re += args.re_step
    return pts


def _eval_point(mode, pair, s, config, target_tail):
    """One grid point; per-point numerical trouble becomes a flagged row."""
    try:
        if mode == "direct":
            r = phi_direct(pair, s, target_tail=target_tail)
            return (fmt(s.real), fmt(s.imag), fmt(r.value.real), fmt(r.value.imag),
                    fmt(r.tail_bound), "ok")
        if mode == "continued":
            r = phi_continued(pair, s, config)
            lq2 = pair.K2.q.log_q
            return (fmt(s.real), fmt(s.imag), fmt(r.value.real), fmt(r.value.imag),
                    fmt(r.tail_bound), str(config.N),
                    str(config.window_b(s.imag, lq2)), str(config.window_c(s.imag, lq2)),
                    str(config.M_a), fmt(config.height(s.imag)), "ok")
        d = phi_direct(pair, s, target_tail=target_tail)
        c = phi_continued(pair, s, config)
        return (fmt(s.real), fmt(s.imag), fmt(d.value.real), fmt(d.value.imag),
                fmt(c.value.real), fmt(c.value.imag), fmt(abs(d.value - c.value)),
                fmt(d.tail_bound), fmt(c.tail_bound), "ok")
    except FFGoldError as exc:
        width = {"direct": 6, "continued": 11, "check": 10}[mode]
        return (fmt(s.real), fmt(s.imag)) + ("",) * (width - 3) \
            + (type(exc).__name__,)


def cmd_eval(args) -> int:
    modes = [m for m in ("direct", "continued", "check") if getattr(args, m)]
    if len(modes) != 1:
        raise ValidationError("choose exactly one of --direct, --continued, --check")
    mode = modes[0]
    pair = load_pair(args)
    config = decomposition_config(args)
    pts = _grid(args)
    if not pts:
        raise ValidationError("empty s-grid")

    headers = {
        "direct": ("re_s", "im_s", "re_value", "im_value", "tail_bound", "status"),
        "continued": ("re_s", "im_s", "re_value", "im_value", "tail_bound",
                      "N", "M_b", "M_c", "M_a", "T", "status"),
        "check": ("re_s", "im_s", "re_direct", "im_direct", "re_continued",
                  "im_continued", "abs_diff", "tail_direct", "tail_continued",
                  "status"),
    }
    with ThreadPoolExecutor(max_workers=_thread_count()) as pool:
        rows = list(pool.map(
            lambda s: _eval_point(mode, pair, s, config, args.target_tail), pts))
    _write_text(args.out, _csv(headers[mode], rows))
    return 0


_FAMILY_COLORS = {
    "b+b": "#d62728", "a+b": "#1f77b4", "c+b": "#2ca02c", "b-n": "#9467bd",
    "a": "#8c564b", "b": "#e377c2", "c": "#7f7f7f", "d": "#bcbd22",
}


def _poles_svg(records, pair, region) -> str:
    re_min, re_max, im_min, im_max = region
    W, H, M = 640, 480, 50

    def X(re):
        return M + (re - re_min) / max(re_max - re_min, 1e-12) * (W - 2 * M)

    def Y(im):
        return H - M - (im - im_min) / max(im_max - im_min, 1e-12) * (H - 2 * M)

    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}">',
             f'<rect width="{W}" height="{H}" fill="white"/>',
             f'<line x1="{M}" y1="{H - M}" x2="{W - M}" y2="{H - M}" stroke="black"/>',
             f'<line x1="{M}" y1="{M}" x2="{M}" y2="{H - M}" stroke="black"/>',
             f'<text x="{W // 2}" y="{H - 10}" font-size="14">Re s</text>',
             f'<text x="12" y="{H // 2}" font-size="14" '
             f'transform="rotate(-90 12 {H // 2})">Im s</text>']
    for t in range(5):
        re = re_min + t * (re_max - re_min) / 4
        im = im_min + t * (im_max - im_min) / 4
        parts.append(f'<text x="{X(re):.1f}" y="{H - M + 18}" font-size="10" '
                     f'text-anchor="middle">{re:.3g}</text>')
        parts.append(f'<text x="{M - 6}" y="{Y(im):.1f}" font-size="10" '
                     f'text-anchor="end">{im:.3g}</text>')
    if not pair.same_characteristic and re_min <= 2.0 <= re_max:
        parts.append(f'<line x1="{X(2.0):.2f}" y1="{M}" x2="{X(2.0):.2f}" '
                     f'y2="{H - M}" stroke="#d62728" stroke-dasharray="4 3"/>')
        parts.append(f'<text x="{X(2.0) + 4:.1f}" y="{M + 12}" font-size="11" '
                     f'fill="#d62728">Re s = 2</text>')
    for rec in records:
        color = _FAMILY_COLORS.get(rec.family, "black")
        parts.append(f'<circle cx="{X(rec.location.real):.2f}" '
                     f'cy="{Y(rec.location.imag):.2f}" r="2.5" fill="{color}"/>')
    for i, (fam, color) in enumerate(sorted(_FAMILY_COLORS.items())):
        parts.append(f'<circle cx="{W - M + 8}" cy="{M + 14 * i}" r="3" fill="{color}"/>')
        parts.append(f'<text x="{W - M + 14}" y="{M + 14 * i + 4}" '
                     f'font-size="10">{fam}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def cmd_poles(args) -> int:
    pair = load_pair(args)
    families = tuple(args.families.split(",")) if args.families else spectra.DEFAULT_FAMILIES
    region = tuple(args.region) if args.region else None
    records = spectra.enumerate_poles(pair, families, args.index_bound, region)
    records.sort(key=lambda r: (r.location.real, r.location.imag, r.family, r.indices))
    obj = [{"family": r.family, "indices": list(r.indices),
            "re": float(r.location.real), "im": float(r.location.imag),
            "order": r.order} for r in records]
    _write_text(args.out, json.dumps(obj, indent=1) + "\n")
    if args.svg:
        if region is None:
            res = [r.location.real for r in records] or [0.0]
            ims = [r.location.imag for r in records] or [0.0]
            region = (min(res) - 0.5, max(res) + 0.5, min(ims) - 0.5, max(ims) + 0.5)
        Path(args.svg).write_text(_poles_svg(records, pair, region), newline="\n")
    return 0


def _report_csv(report) -> str:
    rows = [tuple(fmt(v) for v in row) for row in report.rows]
    text = _csv(("parameter", "observed", "predicted", "bound"), rows)
    text += f"# verdict: {'pass' if report.verdict else 'fail'}\n"
    for note in report.notes:
        text += f"# {note}\n"
    return text


def cmd_density(args) -> int:
    q1, q2 = PrimePower.from_q(args.q1), PrimePower.from_q(args.q2)
    report = spectra.density_gap(q1, q2, args.B)
    gel = spectra.gelfond_probe(q1, q2, args.B)
    _write_text(args.out, _report_csv(report) + _report_csv(gel))
    return 0 if (report.verdict and gel.verdict) else 3


def cmd_boundary(args) -> int:
    pair = load_pair(args, depth=8)
    etas = [float(e) for e in args.etas.split(",")]
    config = decomposition_config(args)
    report = spectra.boundary_probe(pair, args.b1, args.b2, etas, config)
    text = _csv(("eta", "abs_sigma1", "eta_times_abs_dominant", "abs_remainder"),
                [tuple(fmt(v) for v in row) for row in report.rows])
    text += f"# verdict: {'pass' if report.verdict else 'fail'}\n"
    for note in report.notes:
        text += f"# {note}\n"
    _write_text(args.out, text)
    return 0 if report.verdict else 3


def cmd_selftest(args) -> int:
    failures = 0

    def check(label, ok):
        nonlocal failures
        print(f"{'PASS' if ok else 'FAIL'} {label}")
        if not ok:
            failures += 1

    for lam in (0.1, 1.0, 3.0):
        for s in (1.0, 2.5, 1 + 2j):
            got = mellin_barnes_check(lam, s)
            want = (1 + lam) ** (-s)
            check(f"mellin-barnes lam={lam} s={s}", abs(got - want) < 1e-10)

    for q in (2, 3):
        spec = make_rational_field(PrimePower.from_q(q))
        pair = FieldPair.create(spec, spec, depth=8)
        ok = all(abs(goldbach_G(pair, n).value - goldbach_G_bruteforce(pair, n)) <=
                 1e-12 * max(1.0, goldbach_G(pair, n).value) for n in range(2, 61))
        check(f"goldbach oracle q={q}", ok)

    r2 = make_rational_field(PrimePower.from_q(2))
    r3 = make_rational_field(PrimePower.from_q(3))
    pair23 = FieldPair.create(r2, r3, depth=64)
    for s in (2.5, 2.5 + 1j):
        d = phi_direct(pair23, s)
        c = phi_continued(pair23, s)
        tol = d.tail_bound + c.tail_bound + 1e-8
        check(f"continuation identity s={s}", abs(d.value - c.value) <= tol)

    if failures:
        raise NumericalError(f"{failures} selftest check(s) failed")
    return 0


# -- argument parsing ---------------------------------------------------------

def _add_field_args(p):
    p.add_argument("--k1", required=True,
                   help="first field: spec JSON path or rational:q | "
                        "elliptic:q:curve | custom:q:c0,c1,...")
    p.add_argument("--k2", required=True, help="second field (same forms)")


def _add_config_args(p):
    p.add_argument("--N", type=int, default=None, help="contour shift depth")
    p.add_argument("--alpha", type=float, default=None, help="contour abscissa")
    p.add_argument("--M-b", dest="M_b", type=int, default=None)
    p.add_argument("--M-c", dest="M_c", type=int, default=None)
    p.add_argument("--M-a", dest="M_a", type=int, default=None)
    p.add_argument("--T", type=float, default=None, help="quadrature height")
    p.add_argument("--quad-points", dest="quad_points", type=int, default=None)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="ffgold",
        description="Function-field Goldbach series: counting, direct and "
                    "continued evaluation, pole atlas, boundary probes.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spec", help="construct and print a field spec")
    kind = p.add_mutually_exclusive_group(required=True)
    kind.add_argument("--rational", action="store_true")
    kind.add_argument("--elliptic", action="store_true")
    kind.add_argument("--custom", action="store_true")
    p.add_argument("-q", type=int, required=True, help="field cardinality (prime power)")
    p.add_argument("--curve", help='Weierstrass equation, e.g. "y2+y=x3"')
    p.add_argument("--L", help="comma-separated L-polynomial coefficients")
    p.add_argument("--out", help="write spec JSON to this path")
    p.set_defaults(func=cmd_spec)

    p = sub.add_parser("gold", help="Goldbach counting values G(n) as CSV")
    _add_field_args(p)
    p.add_argument("--n-max", dest="n_max", type=int, required=True)
    p.add_argument("--dense", action="store_true", help="include zero rows")
    p.add_argument("--out", help="output CSV path (default stdout)")
    p.set_defaults(func=cmd_gold)

    p = sub.add_parser("eval", help="evaluate the Dirichlet series on an s-grid")
    _add_field_args(p)
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--direct", action="store_true")
    mode.add_argument("--continued", action="store_true")
    mode.add_argument("--check", action="store_true")
    p.add_argument("--re-start", dest="re_start", type=float, required=True)
    p.add_argument("--re-stop", dest="re_stop", type=float, required=True)
    p.add_argument("--re-step", dest="re_step", type=float, default=0.1)
    p.add_argument("--im-start", dest="im_start", type=float, default=0.0)
    p.add_argument("--im-stop", dest="im_stop", type=float, default=0.0)
    p.add_argument("--im-step", dest="im_step", type=float, default=1.0)
    p.add_argument("--target-tail", dest="target_tail", type=float, default=1e-10)
    _add_config_args(p)
    p.add_argument("--out", help="output CSV path (default stdout)")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("poles", help="pole atlas as JSON (optional SVG scatter)")
    _add_field_args(p)
    p.add_argument("--families", help="comma-separated family tags")
    p.add_argument("--index-bound", dest="index_bound", type=int, default=10)
    p.add_argument("--region", type=float, nargs=4,
                   metavar=("RE_MIN", "RE_MAX", "IM_MIN", "IM_MAX"))
    p.add_argument("--out", help="output JSON path (default stdout)")
    p.add_argument("--svg", help="also write an SVG scatter to this path")
    p.set_defaults(func=cmd_poles)

    p = sub.add_parser("density", help="gap statistics of the Re s = 2 ordinates")
    p.add_argument("--q1", type=int, required=True)
    p.add_argument("--q2", type=int, required=True)
    p.add_argument("-B", type=int, default=1000)
    p.add_argument("--out", help="output CSV path (default stdout)")
    p.set_defaults(func=cmd_density)

    p = sub.add_parser("boundary", help="blow-up probe of the Re = 1 residue series")
    _add_field_args(p)
    p.add_argument("--b1", type=int, default=0)
    p.add_argument("--b2", type=int, default=0)
    p.add_argument("--etas", default="1e-1,1e-2,1e-3,1e-4,1e-5")
    _add_config_args(p)
    p.add_argument("--out", help="output CSV path (default stdout)")
    p.set_defaults(func=cmd_boundary)

    p = sub.add_parser("selftest", help="quadrature and counting-oracle checks")
    p.set_defaults(func=cmd_selftest)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    raise SystemExit(main())
