"""Command-line entry point.

Exit codes: 0 ok, 1 an acceptance criterion failed, 2 usage or input error.
Input errors are reported on stderr as a JSON object {code, message, location}.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from fractions import Fraction

from . import DEFAULT_SEED, resolve_seed
from .cones import parse_cone
from .degrees import alpha_n, cylinder_gaps, cylinder_spectrum, degree_of, gamma_star
from .surd import format_exact


class InputError(Exception):
    def __init__(self, code: str, message: str, location: str | None = None):
        super().__init__(message)
        self.code = code
        self.message = message
        self.location = location

    def to_json(self) -> dict:
        return {"code": self.code, "message": self.message, "location": self.location}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError("usage", message, self.prog)


def fmt(x) -> str:
    if isinstance(x, float):
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return format(x, ".17g")
    return format_exact(x)


def _write_csv(header, rows) -> None:
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow(r)


def _dump(obj) -> None:
    print(json.dumps(obj, indent=2, sort_keys=False))


def _cone(text: str, flag: str = "--cone"):
    try:
        return parse_cone(text)
    except ValueError as e:
        raise InputError("bad-cone", str(e), flag) from e


def _rational(text: str, flag: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as e:
        raise InputError("bad-number", f"not a rational number: {text!r}", flag) from e


def _load_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as e:
        raise InputError("io", str(e), path) from e
    except json.JSONDecodeError as e:
        raise InputError("bad-json", e.msg, f"{path}:{e.lineno}:{e.colno}") from e


# ---------------------------------------------------------------- commands


def cmd_spectrum(args) -> int:
    cone = _cone(args.cone)
    mu_max = _rational(args.max_mu, "--max-mu") if args.max_mu is not None else Fraction(cone.n0 - 1)
    rows = []
    for ev in cone.link_spectrum(mu_max):
        rows.append((ev.mu, ev.multiplicity, degree_of(ev.mu, cone.n0).gamma, ev.modes))
    if args.format == "json":
        _dump({"cone": cone.to_json(), "eigenvalues": [
            {"mu": fmt(mu), "multiplicity": m, "gamma": fmt(g), "modes": [list(x) for x in modes]}
            for mu, m, g, modes in rows]})
    else:
        _write_csv(["mu", "multiplicity", "gamma", "modes"],
                   [(fmt(mu), m, fmt(g), " ".join(f"{a}:{b}" for a, b in modes)) for mu, m, g, modes in rows])
    return 0


def cmd_degrees(args) -> int:
    cone = _cone(args.cone)
    gmax = _rational(args.max, "--max")
    base = gamma_star(cone, gmax)
    if args.k == 0:
        rows = [(fmt(d.gamma), fmt(d.mu), m, format(d.value, ".17g")) for d, m in base.degrees]
        _write_csv(["gamma", "mu", "multiplicity", "value"], rows)
    else:
        cyl = cylinder_spectrum(base, args.k, (base.threshold, gmax))
        rows = [(fmt(c.value), format(float(c), ".17g"), " ".join(f"{fmt(g.gamma)}+{j}" for g, j in c.sources))
                for c in cyl.degrees]
        _write_csv(["gamma", "value", "sources"], rows)
    return 0


def cmd_gaps(args) -> int:
    cone = _cone(args.cone)
    g = cylinder_gaps(cone, args.k)
    lo, hi = g.as_floats()
    _write_csv(["cone", "k", "delta_below", "delta_above", "delta_below_value", "delta_above_value"],
               [(f"{cone.p},{cone.q}", args.k, fmt(g.delta_below), fmt(g.delta_above), fmt(lo), fmt(hi))])
    return 0


def cmd_alpha_table(args) -> int:
    if args.n_max < 7:
        raise InputError("bad-range", "--n-max must be at least 7", "--n-max")
    _write_csv(["n", "alpha", "value"], [(n, fmt(alpha_n(n)), fmt(float(alpha_n(n)))) for n in range(7, args.n_max + 1)])
    return 0


def cmd_beta_basis(args) -> int:
    from .polys import beta_harmonic_basis

    beta = _rational(args.beta, "--beta")
    if beta <= 0 or args.k < 0 or args.degree < 0:
        raise InputError("bad-range", "need beta > 0, k >= 0, degree >= 0", "--beta")
    basis = beta_harmonic_basis(beta, args.k, args.degree)
    if args.format == "json":
        _dump([p.to_json() for p in basis])
    else:
        rows = []
        for i, p in enumerate(basis):
            for (j, a), c in p.sorted_terms():
                rows.append((i, j, " ".join(map(str, a)), fmt(c)))
        _write_csv(["element", "j", "alpha", "c"], rows)
    return 0


def _load_field(path: str):
    from .jacobi import SpectralJacobiField

    data = _load_json(path)
    try:
        return SpectralJacobiField.from_json(data)
    except (KeyError, TypeError, ValueError, AssertionError) as e:
        raise InputError("bad-field", str(e), path) from e


def _rho_grid(text: str) -> list[float]:
    try:
        lo, hi, steps = text.split(":")
        lo, hi, steps = float(lo), float(hi), int(steps)
    except ValueError as e:
        raise InputError("bad-grid", "expected lo:hi:steps", "--rho-grid") from e
    if not (0 < lo <= hi) or steps < 1 or (steps == 1 and lo != hi):
        raise InputError("bad-grid", "need 0 < lo <= hi and steps >= 1", "--rho-grid")
    if steps == 1:
        return [lo]
    r = (hi / lo) ** (1 / (steps - 1))
    return [lo * r**i for i in range(steps)]


def cmd_decay(args) -> int:
    from .jacobi import decay_order_limit, decay_profile

    u = _load_field(args.field)
    kappa = float(args.kappa)
    if kappa < 0:
        raise InputError("bad-number", "kappa must be nonnegative", "--kappa")
    try:
        prof = decay_profile(u, _rho_grid(args.rho_grid), kappa)
        limit = decay_order_limit(u, kappa)
    except ValueError as e:
        raise InputError("bad-field", str(e), args.field) from e
    _dump({
        "kappa": fmt(kappa),
        "d0": None if prof.d0 is None else fmt(prof.d0),
        "limit": fmt(limit),
        "samples": [{"rho": fmt(r), "G": fmt(g)} for r, g in prof.samples],
    })
    return 0


def cmd_splitting(args) -> int:
    from .splitting import v_u

    u = _load_field(args.field)
    try:
        locus = v_u(u)
    except (ValueError, AssertionError) as e:
        raise InputError("precondition", str(e), args.field) from e
    _dump(locus.to_json())
    return 0


def _parse_nonqd(items, n: int):
    from .dim_bounds import INF, POSITIVE_UNKNOWN

    out = {}
    for item in items or []:
        try:
            key, val = item.split("=", 1)
            ks = range(n - 6) if key.strip() == "all" else [int(key)]
        except ValueError as e:
            raise InputError("bad-nonqd", f"expected k=V, got {item!r}", "--nonqd") from e
        if any(not 0 <= k <= n - 7 for k in ks):
            raise InputError("bad-nonqd", f"k must lie in [0, {n - 7}]", "--nonqd")
        v = val.strip().lower()
        if v == "inf":
            g = INF
        elif v == "positive":
            g = POSITIVE_UNKNOWN
        else:
            g = _rational(val, "--nonqd")
            if g <= 0:
                raise InputError("bad-nonqd", "non-quadratic gaps must be positive", "--nonqd")
        for k in ks:
            out[k] = g
    return out


def cmd_dim_bounds(args) -> int:
    from .dim_bounds import (
        dim_dom,
        dim_img,
        dom_below_zero,
        epsilon_n,
        format_gap,
        gap_assignment,
        img_below_one,
    )

    if args.n < 7:
        raise InputError("bad-range", "--n must be at least 7", "--n")
    gaps = gap_assignment(args.n, nonqd=_parse_nonqd(args.nonqd, args.n))
    img, dom = dim_img(args.n, gaps), dim_dom(args.n, gaps)
    v_img, v_dom = img_below_one(args.n, gaps), dom_below_zero(args.n, gaps)
    verdict = v_img if v_img == v_dom else "undetermined"
    eps = epsilon_n(args.n, gaps) if args.n >= 11 and gaps.numeric() else None
    rows = [(k, format_gap(gaps.qd[k]), format_gap(gaps.nonqd[k])) for k in range(args.n - 6)]
    if args.format == "json":
        _dump({
            "n": args.n,
            "gaps": [{"k": k, "qd": q, "nonqd": v} for k, q, v in rows],
            "dimImg": str(img) if not isinstance(img, float) else fmt(img),
            "dimDom": str(dom) if not isinstance(dom, float) else fmt(dom),
            "imgBelowOne": v_img,
            "domBelowZero": v_dom,
            "epsilon": None if eps is None else fmt(eps),
            "smoothGeneric": verdict,
        })
    else:
        print(f"n = {args.n}")
        print("k  qd_gap  nonqd_gap")
        for k, q, v in rows:
            print(f"{k}  {q}  {v}")
        print(f"dim_img in {img}" if not isinstance(img, float) else f"dim_img = {fmt(img)}")
        print(f"dim_dom in {dom}" if not isinstance(dom, float) else f"dim_dom = {fmt(dom)}")
        if eps is not None:
            print(f"epsilon = {fmt(eps)}")
        print(f"smooth-generic: {verdict}")
    return 0


def cmd_covering(args) -> int:
    from .covering import SyntheticFoliationSet, synth_experiment

    cfg = _load_json(args.config)
    if not isinstance(cfg, dict) or "ratios" not in cfg or "offsets" not in cfg:
        raise InputError("bad-config", "config needs 'ratios' and 'offsets'", args.config)
    try:
        s = SyntheticFoliationSet.from_json(cfg)
        rep = synth_experiment(
            s, args.depth,
            C1=float(cfg.get("C1", 1.01)),
            xi=float(cfg.get("xi", 0.1)),
            seed=resolve_seed(args.seed),
            tree_levels=int(cfg.get("treeLevels", 6)),
        )
    except (KeyError, TypeError, ValueError) as e:
        raise InputError("bad-config", str(e), args.config) from e
    out = rep.to_json()
    out["boxCountWithinBound"] = rep.box_count_dim <= rep.bound_dim + 0.1
    _dump({k: (fmt(v) if isinstance(v, float) else v) for k, v in out.items()})
    return 0


def cmd_reproduce(args) -> int:
    from .acceptance import iter_results

    only = set(args.only) if args.only else None
    results = []
    for r in iter_results(only, seed=args.seed):
        print(r.line(), flush=True)
        results.append(r)
    failed = [r.cid for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} criteria passed")
    return 1 if failed else 0


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="conespec", description=__doc__.splitlines()[0])
    p.add_argument("--seed", type=int, default=None,
                   help=f"random seed (default $CONESPEC_SEED or {DEFAULT_SEED})")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("spectrum", help="link spectrum of a quadratic cone")
    s.add_argument("--cone", required=True, help="P,Q")
    s.add_argument("--max-mu", default=None, help="largest eigenvalue (default n0 - 1)")
    s.add_argument("--format", choices=["csv", "json"], default="csv")
    s.set_defaults(func=cmd_spectrum)

    s = sub.add_parser("degrees", help="homogeneity degrees of finite-energy Jacobi fields")
    s.add_argument("--cone", required=True)
    s.add_argument("--k", type=int, default=0)
    s.add_argument("--max", default="3")
    s.set_defaults(func=cmd_degrees)

    s = sub.add_parser("gaps", help="spectral gaps around degree 1")
    s.add_argument("--cone", required=True)
    s.add_argument("--k", type=int, required=True)
    s.set_defaults(func=cmd_gaps)

    s = sub.add_parser("alpha-table", help="alpha_n for n = 7..N")
    s.add_argument("--n-max", type=int, required=True)
    s.set_defaults(func=cmd_alpha_table)

    s = sub.add_parser("beta-basis", help="basis of beta-harmonic polynomials")
    s.add_argument("--beta", required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--degree", type=int, required=True)
    s.add_argument("--format", choices=["json", "csv"], default="json")
    s.set_defaults(func=cmd_beta_basis)

    s = sub.add_parser("decay", help="decay order profile of a field")
    s.add_argument("--field", required=True)
    s.add_argument("--kappa", default="0")
    s.add_argument("--rho-grid", default="9.5367431640625e-07:0.5:20")
    s.set_defaults(func=cmd_decay)

    s = sub.add_parser("splitting", help="splitting subspace V_u of a degree-1 field")
    s.add_argument("--field", required=True)
    s.set_defaults(func=cmd_splitting)

    s = sub.add_parser("dim-bounds", help="dimension bounds and the smooth-generic verdict")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--nonqd", action="append", metavar="k=V",
                   help="non-quadratic gap for k (or all): a rational, 'inf' or 'positive'")
    s.add_argument("--format", choices=["table", "json"], default="table")
    s.set_defaults(func=cmd_dim_bounds)

    s = sub.add_parser("covering", help="synthetic covering experiment")
    s.add_argument("--config", required=True)
    s.add_argument("--depth", type=int, default=12)
    s.set_defaults(func=cmd_covering)

    s = sub.add_parser("reproduce", help="run the acceptance criteria")
    s.add_argument("--only", nargs="*", metavar="AC#")
    s.set_defaults(func=cmd_reproduce)
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except InputError as e:
        print(json.dumps(e.to_json()), file=sys.stderr)
        return 2


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
