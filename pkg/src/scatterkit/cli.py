"""Command-line front end.

    scatterkit scatter --b 2 --c 2 --order 8
    scatterkit lambda --k 4 --format csv
    scatterkit tau --b 1 --c 5 --i 6 --j 3
    scatterkit verify --conjecture C13 --jmax 3
    scatterkit tilings --p1 3 --p2s-all --dims 4,3 --output fig.svg

Exit codes: 0 success, 1 a verification row failed, 2 bad flags,
3 order exceeded or parameters outside the resource guards.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .exact import PolyBCG, fraction_str, partitions_of
from .gradings import TightSpec, choose_dims, enumerate_tight, lambda_table, tight_sign
from .scatter import OrderExceeded, cluster_diagram, extract_tau, gps_diagram
from .tiling import gallery, render, tilings
from .wallcoeffs import (SlopeContext, VerifyConfig, central_series, chi_extract, export_csv,
                         rho_k, tau_series, tau_splits, triple_agreement, value_json,
                         verify_conjectures)
from .weyl import tight_cg, weyl_map

SCHEMA = 1
SYMBOLIC = "symbolic"

# resource guards, lifted by --force
LAMBDA_K_CAP = 5
ORDER_CAP = 40
SYMBOLIC_ORDER_CAP = 10
TAU_DEGREE_CAP = 40


class Infeasible(Exception):
    """Parameters outside the guarded range or with no meaningful answer."""


@dataclass
class RunConfig:
    command: str
    b: int | str | None = None
    c: int | str | None = None
    d: int = 1
    e: int = 1
    i: int | None = None
    j: int | None = None
    k: int | None = None
    order: int | None = None
    fmt: str = "text"
    output: str | None = None
    force: bool = False
    jobs: int = 1
    extra: dict = field(default_factory=dict)

    @property
    def symbolic(self) -> bool:
        return self.b == SYMBOLIC or self.c == SYMBOLIC


def _bc_value(text: str):
    if text == SYMBOLIC:
        return SYMBOLIC
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer or '{SYMBOLIC}', got {text!r}")
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _nonneg(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if v < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return v


def _int_list(text: str) -> tuple[int, ...]:
    try:
        vals = tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not vals or any(v < 1 for v in vals):
        raise argparse.ArgumentTypeError("entries must be positive")
    return vals


def _dims(text: str) -> tuple[int, int]:
    vals = _int_list(text)
    if len(vals) != 2:
        raise argparse.ArgumentTypeError("expected d1,d2")
    return vals


def _default_jobs() -> int:
    raw = os.environ.get("SCATTERKIT_JOBS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", dest="fmt", default=None)
    common.add_argument("--output", "-o", default=None, help="write to a file instead of stdout")
    common.add_argument("--force", action="store_true", help="lift resource guards")
    common.add_argument("--jobs", type=_positive, default=None,
                        help="worker processes (default: $SCATTERKIT_JOBS or 1)")

    p = argparse.ArgumentParser(prog="scatterkit", description=__doc__.split("\n\n")[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("scatter", parents=[common], help="complete a scattering diagram")
    s.add_argument("--b", type=_bc_value, required=True)
    s.add_argument("--c", type=_bc_value, required=True)
    s.add_argument("--order", type=_positive, required=True)
    s.add_argument("--circle", action="store_true",
                   help="D°_(c,b) = D((1+x1)^c, (1+x2)^b) instead of D(1+x1^b, 1+x2^c)")
    s.add_argument("--coeff", type=_int_list, default=None, help="print one coefficient a1,a2")

    s = sub.add_parser("lambda", parents=[common], help="table of lambda(P1, P2)")
    s.add_argument("--k", type=_positive, required=True)
    s.add_argument("--d", type=_positive, default=1)
    s.add_argument("--e", type=_positive, default=1)

    s = sub.add_parser("tau", parents=[common], help="tau(i, j) of D_(b,c)")
    s.add_argument("--b", type=_bc_value, required=True)
    s.add_argument("--c", type=_bc_value, required=True)
    s.add_argument("--i", type=_positive, required=True)
    s.add_argument("--j", type=_positive, required=True)
    s.add_argument("--method", choices=["pipeline", "scatter", "counting", "all"], default="pipeline")

    s = sub.add_parser("rho", parents=[common], help="rho_k on the slope (d, e) of D°_(c,b)")
    s.add_argument("--b", type=_bc_value, required=True)
    s.add_argument("--c", type=_bc_value, required=True)
    s.add_argument("--d", type=_positive, default=1)
    s.add_argument("--e", type=_positive, default=1)
    s.add_argument("--k", type=_positive, required=True)

    s = sub.add_parser("chi", parents=[common], help="chi_(d,e)(1..K) from the functional equation")
    s.add_argument("--b", type=_positive, required=True)
    s.add_argument("--c", type=_positive, required=True)
    s.add_argument("--d", type=_positive, default=1)
    s.add_argument("--e", type=_positive, default=1)
    s.add_argument("--order", type=_positive, required=True)

    s = sub.add_parser("central", parents=[common], help="central-slope series S_(1,1)(t)")
    s.add_argument("--b", type=_positive, required=True)
    s.add_argument("--c", type=_positive, required=True)
    s.add_argument("--g", type=_positive, default=None, help="default gcd(b, c)")
    s.add_argument("--order", type=_nonneg, required=True)

    s = sub.add_parser("verify", parents=[common], help="conjecture report")
    s.add_argument("--conjecture", action="append", default=None,
                   help="restrict to these (repeatable), e.g. C13")
    s.add_argument("--kmax", type=_positive, default=3)
    s.add_argument("--jmax", type=_positive, default=3, help="range for C13")

    s = sub.add_parser("tilings", parents=[common], help="SVG gallery of tight gradings")
    s.add_argument("--p1", type=_int_list, required=True, help="vertical weights, e.g. 2,1")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--p2", type=_int_list, help="horizontal weights")
    g.add_argument("--p2s-all", action="store_true", help="every partition of --q")
    s.add_argument("--q", type=_positive, default=None, help="size for --p2s-all (default |P1|)")
    s.add_argument("--dims", type=_dims, default=None)
    s.add_argument("--columns", type=_positive, default=3)

    s = sub.add_parser("weyl", parents=[common], help="Weyl bijection table")
    s.add_argument("--b", type=_positive, required=True)
    s.add_argument("--c", type=_positive, required=True)
    s.add_argument("--i", type=_positive, required=True)
    s.add_argument("--j", type=_positive, required=True)
    s.add_argument("--dims", type=_dims, default=None)
    return p


FORMATS = {
    "scatter": ("json", {"json"}),
    "lambda": ("text", {"text", "json", "csv"}),
    "tau": ("text", {"text", "json"}),
    "rho": ("text", {"text", "json"}),
    "chi": ("text", {"text", "json", "csv"}),
    "central": ("text", {"text", "json", "csv"}),
    "verify": ("text", {"text", "json"}),
    "tilings": ("svg", {"svg", "ascii"}),
    "weyl": ("text", {"text", "json"}),
}


def make_config(ns: argparse.Namespace, parser: argparse.ArgumentParser) -> RunConfig:
    default, allowed = FORMATS[ns.command]
    fmt = ns.fmt or default
    if fmt not in allowed:
        parser.error(f"{ns.command} supports --format {sorted(allowed)}, not {fmt!r}")
    cfg = RunConfig(command=ns.command, fmt=fmt, output=ns.output, force=ns.force,
                    jobs=ns.jobs or _default_jobs())
    for name in ("b", "c", "d", "e", "i", "j", "k", "order"):
        if hasattr(ns, name):
            setattr(cfg, name, getattr(ns, name))
    cfg.extra = {k: v for k, v in vars(ns).items()
                 if k not in {"command", "fmt", "output", "force", "jobs", "b", "c", "d", "e",
                              "i", "j", "k", "order"}}
    if cfg.symbolic and cfg.b != cfg.c:
        parser.error("use --b symbolic together with --c symbolic")
    if ns.command == "scatter" and cfg.symbolic and not ns.circle:
        parser.error("symbolic b, c need --circle (D°_(c,b) has binomial initial functions)")
    if ns.command in ("rho", "chi") and gcd(cfg.d, cfg.e) != 1:
        parser.error("--d and --e must be coprime")
    return cfg


# commands

def _dump(obj) -> str:
    return json.dumps({"schema": SCHEMA, **obj}, indent=1, sort_keys=False)


def cmd_scatter(cfg: RunConfig) -> str:
    cap = SYMBOLIC_ORDER_CAP if cfg.symbolic else ORDER_CAP
    if cfg.order > cap and not cfg.force:
        raise Infeasible(f"--order {cfg.order} exceeds the guard {cap}; pass --force")
    if cfg.extra["circle"]:
        b = "b" if cfg.symbolic else cfg.b
        c = "c" if cfg.symbolic else cfg.c
        diag = gps_diagram(c, b, cfg.order)
        name = f"D°_({c},{b})"
    else:
        diag = cluster_diagram(cfg.b, cfg.c, cfg.order)
        name = f"D_({cfg.b},{cfg.c})"
    out = {"diagram": name, "order": cfg.order, "rays": diag.to_json()}
    if cfg.extra.get("coeff"):
        a = cfg.extra["coeff"]
        if len(a) != 2:
            raise argparse.ArgumentTypeError("--coeff expects a1,a2")
        out["coefficient"] = {"at": list(a), "value": value_json(diag.coefficient(*a))}
    return _dump(out)


def _label(P) -> str:
    return "(" + ",".join(map(str, P)) + ")"


def cmd_lambda(cfg: RunConfig) -> str:
    if cfg.k > LAMBDA_K_CAP and not cfg.force:
        raise Infeasible(f"k = {cfg.k} exceeds the guard {LAMBDA_K_CAP}; pass --force")
    rows = partitions_of(cfg.k * cfg.d)
    cols = partitions_of(cfg.k * cfg.e)
    table = lambda_table(cfg.k, cfg.d, cfg.e)
    grid = [[table[(r, c)] for c in cols] for r in rows]
    if cfg.fmt == "json":
        return _dump({"k": cfg.k, "d": cfg.d, "e": cfg.e, "rows": [_label(r) for r in rows],
                      "cols": [_label(c) for c in cols], "table": grid})
    if cfg.fmt == "csv":
        lines = ["P1\\P2," + ",".join(f'"{_label(c)}"' for c in cols)]
        for r, vals in zip(rows, grid):
            lines.append(f'"{_label(r)}",' + ",".join(map(str, vals)))
        return "\n".join(lines)
    w = max(len(_label(x)) for x in rows + cols) + 1
    lines = [" " * w + "".join(f"{_label(c):>{w}}" for c in cols)]
    for r, vals in zip(rows, grid):
        lines.append(f"{_label(r):<{w}}" + "".join(f"{v:>{w}}" for v in vals))
    return "\n".join(lines)


def cmd_tau(cfg: RunConfig) -> str:
    i, j = cfg.i, cfg.j
    k = gcd(i, j)
    d, e = i // k, j // k
    if cfg.symbolic:
        if k > 3 and not cfg.force:
            raise Infeasible("symbolic tau beyond gcd(i,j) = 3 is guarded; pass --force")
        ctx = SlopeContext(d, e)
        tau = tau_series(ctx, k)[k - 1]
        split = tau_splits(ctx, k)[k - 1]
        if cfg.fmt == "json":
            return _dump({"i": i, "j": j, "tau": tau.to_json(),
                          "split": {str(n): split[n].to_json() for n in range(1, k + 1)}})
        lines = [f"tau({i},{j}) = {tau}"]
        lines += [f"tau({i},{j};{n}) = {split[n]}" for n in range(1, k + 1)]
        return "\n".join(lines)
    b, c = cfg.b, cfg.c
    if i * b + j * c > TAU_DEGREE_CAP and not cfg.force:
        raise Infeasible(f"ib + jc = {i * b + j * c} exceeds the guard {TAU_DEGREE_CAP}; pass --force")
    values = {}
    if cfg.extra["method"] in ("pipeline", "all"):
        values["pipeline"] = tau_series(SlopeContext(d, e, b, c), k)[k - 1]
    if cfg.extra["method"] in ("scatter", "all"):
        diag = cluster_diagram(b, c, i * b + j * c)
        values["scatter"] = Fraction(extract_tau(diag, b, c, i, j))
    if cfg.extra["method"] in ("counting", "all"):
        from .gradings import tau_by_counting
        values["counting"] = Fraction(tau_by_counting(b, c, i, j))
    agree = len(set(values.values())) == 1
    value = next(iter(values.values()))
    ctx = SlopeContext(d, e, b, c)
    split = tau_splits(SlopeContext(d, e), k)[k - 1] if k <= 3 or cfg.force else None
    if cfg.fmt == "json":
        out = {"b": b, "c": c, "i": i, "j": j, "g": ctx.g,
               "values": {m: fraction_str(v) for m, v in values.items()}, "agree": agree}
        if split is not None:
            out["split"] = {str(n): fraction_str(split[n].evaluate(b, c)) for n in range(1, k + 1)}
        return _dump(out)
    lines = [_num(value)]
    if len(values) > 1:
        lines += [f"{m}: {_num(v)}" for m, v in values.items()]
        lines.append("agree" if agree else "DISAGREE")
    if split is not None:
        lines += [f"tau({i},{j};{n}) = {_num(Fraction(split[n].evaluate(b, c)))}  (g = {ctx.g})"
                  for n in range(1, k + 1)]
    return "\n".join(lines)


def _num(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def cmd_rho(cfg: RunConfig) -> str:
    if cfg.symbolic:
        ctx = SlopeContext(cfg.d, cfg.e)
    else:
        ctx = SlopeContext(cfg.d, cfg.e, cfg.b, cfg.c)
    if cfg.k * (cfg.d + cfg.e) > 12 and not cfg.force:
        raise Infeasible("k(d+e) > 12 is guarded; pass --force")
    val = rho_k(ctx, cfg.k)
    if cfg.fmt == "json":
        return _dump({"d": cfg.d, "e": cfg.e, "k": cfg.k, "rho": value_json(val)})
    return str(val) if isinstance(val, PolyBCG) else _num(val)


def cmd_chi(cfg: RunConfig) -> str:
    if cfg.order * (cfg.d + cfg.e) > ORDER_CAP and not cfg.force:
        raise Infeasible("order (d+e) exceeds the guard; pass --force")
    chis = chi_extract(SlopeContext(cfg.d, cfg.e, cfg.b, cfg.c), cfg.order)
    return _sequence(cfg, "chi", chis, start=1)


def cmd_central(cfg: RunConfig) -> str:
    g = cfg.extra.get("g") or gcd(cfg.b, cfg.c)
    if cfg.order > 4 * ORDER_CAP and not cfg.force:
        raise Infeasible("order exceeds the guard; pass --force")
    S = central_series(cfg.b, cfg.c, g, cfg.order)
    return _sequence(cfg, "tau", list(S.coeffs), start=0)


def _sequence(cfg: RunConfig, name: str, vals, start: int) -> str:
    if cfg.fmt == "json":
        return _dump({name: [{"k": k, "value": fraction_str(v)} for k, v in enumerate(vals, start)]})
    if cfg.fmt == "csv":
        return export_csv([{"k": k, name: v} for k, v in enumerate(vals, start)], ["k", name])
    return "\n".join(f"{name}({k}) = {_num(v)}" for k, v in enumerate(vals, start))


def cmd_verify(cfg: RunConfig) -> tuple[str, int]:
    conj = cfg.extra["conjecture"]
    vc = VerifyConfig(kmax=cfg.extra["kmax"], c13_jmax=cfg.extra["jmax"],
                      conjectures=tuple(conj) if conj else None, jobs=cfg.jobs)
    if (vc.kmax > 3 or vc.c13_jmax > 6) and not cfg.force:
        raise Infeasible("verify beyond kmax 3 or jmax 6 is guarded; pass --force")
    report = verify_conjectures(vc)
    text = report.to_json() if cfg.fmt == "json" else report.table()
    return text, 0 if report.gated_ok else 1


def _tight_for(P1, P2, dims):
    p, q = sum(P1), sum(P2)
    if dims is None:
        return enumerate_tight(TightSpec.for_partitions(P1, P2))
    eps = tight_sign(_path(dims), p, q)
    if eps is None:
        return []
    return enumerate_tight(TightSpec.for_partitions(P1, P2, eps, dims))


def _path(dims):
    from .dyck import build_max_dyck
    return build_max_dyck(*dims)


def cmd_tilings(cfg: RunConfig) -> str:
    P1 = tuple(sorted(cfg.extra["p1"], reverse=True))
    if cfg.extra["p2s_all"]:
        q = cfg.extra["q"] or sum(P1)
        P2s = partitions_of(q)
    else:
        P2s = [tuple(sorted(cfg.extra["p2"], reverse=True))]
    dims = cfg.extra["dims"]
    if dims is None and not cfg.extra["p2s_all"]:
        dims = choose_dims(sum(P1), sum(P2s[0]), -1)
    results, labels = [], []
    for P2 in P2s:
        for omega in _tight_for(P1, P2, dims):
            ts = tilings(omega)
            if not ts:
                raise Infeasible(f"no frame for {omega.describe()}")
            results.append(ts[0])
            labels.append(f"P2={_label(P2)} {omega.describe()}")
    if not results:
        raise Infeasible("no tight gradings for these parameters")
    if cfg.fmt == "ascii":
        return "\n\n".join(f"{lab}\n{render(t, 'ascii')}" for lab, t in zip(labels, results))
    return gallery(results, columns=cfg.extra["columns"], labels=labels)


def cmd_weyl(cfg: RunConfig) -> str:
    b, c, i, j = cfg.b, cfg.c, cfg.i, cfg.j
    if c * j - i < 1:
        raise Infeasible("needs c*j - i >= 1")
    if i * b + j * c > 14 and not cfg.force:
        raise Infeasible("ib + jc > 14 is guarded; pass --force")
    d1, d2 = cfg.extra["dims"] or choose_dims(b * i, c * j, 1)
    if b * i * d2 - c * j * d1 != gcd(b * i, c * j):
        raise Infeasible(f"dims ({d1},{d2}) are not on the positive side for (bi, cj)")
    src = tight_cg(b, c, i, j, d1, d2)
    tdims = (b * d2 - d1, d2)
    tgt = tight_cg(b, c, c * j - i, j, *tdims)
    tid = {g.weights: n for n, g in enumerate(tgt)}
    pairs = [(n, tid.get(weyl_map(g, b, c).weights)) for n, g in enumerate(src)]
    images = [m for _, m in pairs]
    ok = None not in images and sorted(images) == list(range(len(tgt)))
    if cfg.fmt == "json":
        return _dump({"source_dims": [d1, d2], "target_dims": list(tdims),
                      "source": [g.describe() for g in src], "target": [g.describe() for g in tgt],
                      "map": [[s, t] for s, t in pairs], "bijection": ok})
    lines = [f"source P({d1},{d2}) i={i} j={j}: {len(src)} tight gradings",
             f"target P({tdims[0]},{tdims[1]}) i={c * j - i} j={j}: {len(tgt)} tight gradings"]
    for s, t in pairs:
        lines.append(f"{s:>3} -> {t if t is not None else '?':>3}   {src[s].describe()}  ->  "
                     f"{tgt[t].describe() if t is not None else 'outside target'}")
    lines.append("bijection" if ok else "NOT a bijection")
    return "\n".join(lines)


COMMANDS = {
    "scatter": cmd_scatter, "lambda": cmd_lambda, "tau": cmd_tau, "rho": cmd_rho,
    "chi": cmd_chi, "central": cmd_central, "verify": cmd_verify, "tilings": cmd_tilings,
    "weyl": cmd_weyl,
}


def run(cfg: RunConfig) -> tuple[str, int]:
    res = COMMANDS[cfg.command](cfg)
    if isinstance(res, tuple):
        return res
    return res, 0


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    cfg = make_config(ns, parser)
    try:
        text, code = run(cfg)
    except argparse.ArgumentTypeError as exc:
        parser.error(str(exc))
    except OrderExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except Infeasible as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    if cfg.output:
        with open(cfg.output, "w") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
