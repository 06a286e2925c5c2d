"""Command-line front end: ``expand``, ``check``, ``certify`` and ``eval``.

Exit codes: 0 success or CERTIFIED, 1 identity failure or FAILED verdict,
2 usage error, 3 CERTIFIED_WITH_DISCREPANCY.
"""

from __future__ import annotations

import argparse
import re
import sys
from typing import Sequence

from . import certify as cert
from .identities import SUITES, run_suite
from .numerics import DomainError, ToleranceNotMet, eval_qseries, eval_series, eval_vector
from .qcore import NormalizedSeries, series_to_json
from .specials import Family, SeriesId, ag_exponent, ag_sum, build_series, normalized_vector, RR_EXPONENTS

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_DISCREPANCY = 0, 1, 2, 3

_NUM = r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
_FULL = re.compile(rf"([+-]?{_NUM})([+-])({_NUM})?i")
_IMAG = re.compile(rf"([+-]?)({_NUM})?i")
_REAL = re.compile(rf"[+-]?{_NUM}")


class UsageError(Exception):
    pass


def parse_complex(text: str) -> complex:
    """Parse ``"x+yi"``, ``"x-yi"``, ``"yi"`` or ``"x"`` with decimal reals."""
    s = text.replace(" ", "")
    if m := _FULL.fullmatch(s):
        im = float(m.group(3) or 1.0)
        return complex(float(m.group(1)), -im if m.group(2) == "-" else im)
    if m := _IMAG.fullmatch(s):
        im = float(m.group(2) or 1.0)
        return complex(0.0, -im if m.group(1) == "-" else im)
    if _REAL.fullmatch(s):
        return complex(float(s), 0.0)
    raise UsageError(f"--tau: cannot parse complex literal {text!r}")


def _resolve_series(args) -> SeriesId:
    if not args.series:
        raise UsageError("--series is required")
    text = args.series.strip()
    if text in ("A", "B", "P", "Q"):
        if args.m is None:
            raise UsageError(f"--series {text} needs --m")
        text = f"{text}_{args.m}"
    elif text in ("AG", "AGprod"):
        if args.k is None or args.i is None:
            raise UsageError(f"--series {text} needs --k and --i")
        text = f"{text}:{args.k},{args.i}"
    try:
        return SeriesId.parse(text)
    except ValueError as exc:
        raise UsageError(f"--series: {exc}") from None


def _build(args, sid: SeriesId):
    if args.L is not None:
        if sid.family is not Family.AG_SUM:
            raise UsageError("--L applies only to AG sums")
        return ag_sum(sid.params[0], sid.params[1], args.order, args.L)
    return build_series(sid, args.order)


def _emit(text: str, args) -> None:
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        print(text)


def _fmt_q(x) -> str:
    return f"{x.numerator}" if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _cmd_expand(args) -> int:
    sid = _resolve_series(args)
    s = _build(args, sid)
    if args.format == "json":
        payload = {"series": str(sid), **series_to_json(s)}
        _emit(cert.dumps(payload), args)
    else:
        _emit(str(s), args)
    return EXIT_OK


def _cmd_check(args) -> int:
    if not args.suite:
        raise UsageError("--suite is required")
    if args.suite not in SUITES:
        raise UsageError(f"--suite: unknown suite {args.suite!r}; known: {', '.join(SUITES)}")
    params = {}
    if args.m is not None:
        params["m_max"] = args.m
    if args.k is not None:
        params["k_min"] = params["k_max"] = args.k
    order = args.order if args.order_given else None
    report = run_suite(args.suite, params, order)
    if args.format == "json":
        _emit(cert.dumps(report.to_json()), args)
    else:
        lines = []
        for r in report.reports:
            if r.passed:
                lines.append(f"PASS {r.identity_id}")
            else:
                mm = r.first_mismatch
                lines.append(f"FAIL {r.identity_id}: q^{mm.exponent} lhs={_fmt_q(mm.lhs)} rhs={_fmt_q(mm.rhs)}")
        n_fail = len(report.failures())
        lines.append(f"{report.suite_id} through q^{report.order}: {len(report.reports) - n_fail} passed, {n_fail} failed")
        _emit("\n".join(lines), args)
    return EXIT_OK if report.all_passed else EXIT_FAIL


def _cmd_certify(args) -> int:
    if not args.family:
        raise UsageError("--family is required")
    fam = args.family.upper()
    if fam not in ("RR", "AG"):
        raise UsageError(f"--family: expected rr or ag, got {args.family!r}")
    k = args.k if args.k is not None else 2
    try:
        c = cert.certify_family(fam, k, order=args.order, tol=args.tol)
    except ValueError as exc:
        raise UsageError(f"--k: {exc}") from None
    if args.format == "json" or args.out:
        body = c.dumps()
        if args.out:
            _emit(body, args)
        else:
            print(body)
    if args.format == "text":
        lines = [
            f"family {c.family} k={c.k} order={c.order} tol={c.tol:g}",
            f"exact suite {c.exact_suite}: {'passed' if c.exact_suite_passed else 'FAILED'}",
            f"residual_max {c.residual_max:.3e}  constancy_dev {c.constancy_dev:.3e}",
            f"dev_S2 {c.dev_S2:.3e}  dev_ST3 {c.dev_ST3:.3e}",
            "exponents " + ", ".join(f"{x:.12f}" for x in c.exponents_solved)
            + "  exact " + ", ".join(_fmt_q(a) for a in c.exponents_exact),
            f"closed_form_deviation {c.closed_form_deviation:.3e}",
            *[f"note: {n}" for n in c.notes],
            f"verdict {c.verdict}",
        ]
        target = sys.stderr if args.out else sys.stdout
        print("\n".join(lines), file=target)
    return {cert.CERTIFIED: EXIT_OK, cert.FAILED: EXIT_FAIL}.get(c.verdict, EXIT_DISCREPANCY)


def _normalizer(sid: SeriesId):
    if sid.family is Family.RR_G:
        return RR_EXPONENTS[0]
    if sid.family is Family.RR_H:
        return RR_EXPONENTS[1]
    if sid.family in (Family.AG_SUM, Family.AG_PRODUCT):
        return ag_exponent(*sid.params)
    return None


def _cmd_eval(args) -> int:
    if args.tau is None:
        raise UsageError("--tau is required")
    tau = parse_complex(args.tau)
    tol = args.tol
    try:
        if args.family:
            fam = args.family.upper()
            if fam not in ("RR", "AG"):
                raise UsageError(f"--family: expected rr or ag, got {args.family!r}")
            v = normalized_vector(fam, args.k if args.k is not None else 2, args.order)
            vals = eval_vector(v, tau, tol)
            rows = [(lab, a, complex(z)) for lab, a, z in zip(v.labels, v.alphas, vals)]
            tails = None
        else:
            sid = _resolve_series(args)
            s = _build(args, sid)
            alpha = _normalizer(sid)
            if alpha is not None:
                res = eval_series(NormalizedSeries(alpha, s), tau, tol)
            else:
                res = eval_qseries(s, tau, tol)
            rows = [(str(sid), alpha, res.value)]
            tails = (res.tail_bound, res.terms_used)
    except (DomainError, ToleranceNotMet) as exc:
        raise UsageError(f"--tau: {exc}") from None
    if args.format == "json":
        payload = {"tau": [tau.real, tau.imag], "values": [
            {"label": lab, "alpha": None if a is None else [str(a.numerator), str(a.denominator)],
             "value": [z.real, z.imag]} for lab, a, z in rows]}
        if tails:
            payload["tail_bound"], payload["terms_used"] = tails
        _emit(cert.dumps(payload), args)
    else:
        lines = []
        for lab, a, z in rows:
            pref = "" if a is None else f"q^({_fmt_q(a)}) * "
            lines.append(f"{pref}{lab}({tau.real:g}{tau.imag:+g}i) = {z.real:.15g} {z.imag:+.15g}i")
        if tails:
            lines.append(f"tail bound {tails[0]:.2e} after {tails[1]} terms")
        _emit("\n".join(lines), args)
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="qmodular", description="Exact q-series identities and numerical modularity certificates.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    specs = {
        "expand": "print the q-expansion of a named series",
        "check": "run an exact identity suite",
        "certify": "certify vector-valued modularity of the RR or AG family",
        "eval": "evaluate a series or family vector at a point of the upper half-plane",
    }
    for name, help_ in specs.items():
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--series")
        sp.add_argument("--suite")
        sp.add_argument("--family")
        sp.add_argument("--k", type=int)
        sp.add_argument("--i", type=int)
        sp.add_argument("--m", type=int)
        sp.add_argument("--L", type=int)
        sp.add_argument("--order", type=int)
        sp.add_argument("--tau")
        sp.add_argument("--tol", type=float, default=1e-9)
        sp.add_argument("--format", choices=("text", "json"), default="text")
        sp.add_argument("--out")
    return p


COMMANDS = {"expand": _cmd_expand, "check": _cmd_check, "certify": _cmd_certify, "eval": _cmd_eval}


def run(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(list(argv) if argv is not None else None)
        args.order_given = args.order is not None
        if args.order is None:
            args.order = 200
        if args.order < 0:
            raise UsageError("--order must be nonnegative")
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"qmodular: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
