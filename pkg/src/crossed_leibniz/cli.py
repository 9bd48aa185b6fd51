"""Command-line front end.

Exit status: 0 when the check passes or the computation succeeds, 1 when
a check fails, 2 on malformed input or a breached size cap.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from crossed_leibniz import algebra as alg
from crossed_leibniz import io
from crossed_leibniz.cochains import MAX_ARITY, DgLaContext
from crossed_leibniz.cohomology import MAX_DEGREE, DegreeCapError, cohomology
from crossed_leibniz.crossed import (
    CrossedHom,
    check_crossed_hom,
    check_graph_embedding,
    check_hat_iso,
    mc_residual,
    twisted_mc_residual,
)
from crossed_leibniz.deformation import (
    check_formal_deformation,
    check_linear_deformation,
    extend_deformation,
    nijenhuis_check,
    obstruction,
    rigidity_witness,
    trivial_deformation_from_nijenhuis,
)
from crossed_leibniz.linalg import format_scalar

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class Workspace:
    """Objects loaded from the command line, with validation cached per object."""

    def __init__(self, args):
        self.args = args
        self._ctx = None
        self._valid = {}

    @property
    def ctx(self) -> alg.LeibnizGRepresentation:
        if self._ctx is None:
            if not getattr(self.args, "ctx", None):
                raise io.InputError("--ctx is required")
            self._ctx = io.context_from_json(io.load_json(self.args.ctx), "ctx", self.args.max_dim)
        return self._ctx

    def validation(self, key, fn, obj):
        if key not in self._valid:
            self._valid[key] = fn(obj)
        return self._valid[key]

    def context_report(self) -> alg.Report:
        return self.validation("ctx", alg.validate_leibniz_g_representation, self.ctx)

    def context_ok(self) -> bool:
        r = self.ctx
        return (self.validation("g", alg.validate_leibniz, r.g).ok
                and self.validation("h", alg.validate_leibniz, r.h).ok
                and self.context_report().ok)

    def map(self, path):
        return io.map_from_json(io.load_json(path), self.ctx, path)

    def crossed(self, path) -> CrossedHom:
        M = self.map(path)
        rep = check_crossed_hom(self.ctx, M)
        if not rep.ok:
            raise CheckFailed({"error": "map is not a crossed homomorphism",
                               "first_failure": encode_failure(rep.failures[0], self, "crossed")})
        return CrossedHom(self.ctx, M, check=False)

    def dgla(self, H: CrossedHom) -> DgLaContext:
        return DgLaContext(self.ctx, H.matrix, max(MAX_ARITY, self.args.max_degree + 1))

    def labels_g(self):
        return self.ctx.g.basis

    def labels_h(self):
        return self.ctx.h.basis


class CheckFailed(Exception):
    def __init__(self, payload):
        super().__init__(payload.get("error", "check failed"))
        self.payload = payload


def _vec(v):
    return [format_scalar(x) for x in v]


def encode_failure(f: alg.Failure, ws: Optional[Workspace] = None, space: Optional[str] = None) -> dict:
    out = {"check": f.check, "indices": [i + 1 for i in f.indices]}
    if ws is not None and space is not None:
        labels = {"g": ws.labels_g(), "h": ws.labels_h(),
                  "crossed": ws.labels_g(), "sum": ws.labels_g() + ws.labels_h()}[space]
        try:
            out["basis"] = [labels[i] for i in f.indices]
        except IndexError:
            pass
    out["lhs"] = _vec(f.lhs)
    out["rhs"] = _vec(f.rhs)
    return out


def encode_report(rep: alg.Report, ws=None, space=None) -> dict:
    out = {"ok": rep.ok, "failures": [encode_failure(f, ws, space) for f in rep.failures]}
    if rep.failures:
        out["first_failure"] = out["failures"][0]
    return out


def _require_context(ws: Workspace):
    if not ws.context_ok():
        raise CheckFailed({"error": "context is not a valid Leibniz g-representation",
                           "context": encode_report(ws.context_report())})


# -- subcommands -----------------------------------------------------------

def cmd_validate(ws: Workspace):
    args = ws.args
    if args.algebra:
        a = io.algebra_from_json(io.load_json(args.algebra), args.algebra)
        rep = alg.validate_leibniz(a)
        return rep.ok, {"object": "algebra", **encode_report(rep, space=None)}
    r = ws.ctx
    parts = {
        "g": alg.validate_leibniz(r.g),
        "h": alg.validate_leibniz(r.h),
        "leibniz_g_representation": ws.context_report(),
    }
    out = {"object": "context", "ok": all(p.ok for p in parts.values())}
    for k, p in parts.items():
        out[k] = encode_report(p)
    return out["ok"], out


def cmd_crossed_check(ws: Workspace):
    _require_context(ws)
    M = ws.map(ws.args.map)
    rep = check_crossed_hom(ws.ctx, M)
    audits = {
        "mc_residual_zero": mc_residual(ws.ctx, M).is_zero(),
        "hat_iso": check_hat_iso(M, ws.ctx).ok,
        "graph_embedding": check_graph_embedding(M, ws.ctx).ok,
    }
    audits["agree"] = all(v == rep.ok for v in audits.values())
    out = encode_report(rep, ws, "crossed")
    out["audits"] = audits
    return rep.ok, out


def cmd_mc_residual(ws: Workspace):
    _require_context(ws)
    M = ws.map(ws.args.map)
    if ws.args.base:
        H = ws.crossed(ws.args.base)
        res = twisted_mc_residual(H, M)
        crossed_ok = check_crossed_hom(ws.ctx, H.matrix + M).ok
    else:
        res = mc_residual(ws.ctx, M)
        crossed_ok = check_crossed_hom(ws.ctx, M).ok
    zero = res.is_zero()
    return zero, {"zero": zero, "crossed": crossed_ok, "agree": zero == crossed_ok,
                  "residual": io.cochain_to_json(res, ws.labels_h())}


def cmd_semidirect(ws: Workspace):
    _require_context(ws)
    if ws.args.map:
        H = ws.crossed(ws.args.map)
        a = alg.twisted_semidirect_product(ws.ctx, H.matrix)
    else:
        a = alg.semidirect_product(ws.ctx)
    return True, io.algebra_to_json(a)


def cmd_cohomology(ws: Workspace):
    _require_context(ws)
    H = ws.crossed(ws.args.map)
    rep = cohomology(ws.dgla(H), ws.args.degree, max_degree=ws.args.max_degree)
    return True, rep.to_json(lambda c: io.cochain_to_json(c, ws.labels_h()))


def _formal(ws: Workspace):
    return io.formal_map_from_json(io.load_json(ws.args.deformation), ws.ctx, ws.args.deformation)


def cmd_check_linear(ws: Workspace):
    _require_context(ws)
    H = ws.crossed(ws.args.map)
    rep = check_linear_deformation(H, ws.map(ws.args.h1))
    out = encode_report(rep, ws, "crossed")
    out["cocycle"] = rep.details["cocycle"]
    return rep.ok, out


def cmd_check_formal(ws: Workspace):
    _require_context(ws)
    Ht = _formal(ws)
    rep = check_formal_deformation(Ht)
    return rep.ok, {"order": Ht.order, **encode_report(rep, ws, "crossed")}


def cmd_obstruction(ws: Workspace):
    _require_context(ws)
    Ht = _formal(ws)
    if not check_formal_deformation(Ht).ok:
        raise CheckFailed({"error": f"not a deformation of order {Ht.order}"})
    ob = obstruction(Ht, ws.args.max_order)
    return ob.vanishes, {
        "order": Ht.order,
        "is_cocycle": ob.is_cocycle,
        "vanishes": ob.vanishes,
        "obstruction": io.cochain_to_json(ob.cocycle, ws.labels_h()),
        "preimage": None if ob.preimage is None else io.map_to_json(ob.preimage.as_matrix()),
    }


def cmd_extend(ws: Workspace):
    _require_context(ws)
    Ht = _formal(ws)
    if not check_formal_deformation(Ht).ok:
        raise CheckFailed({"error": f"not a deformation of order {Ht.order}"})
    ext = extend_deformation(Ht, ws.args.max_order)
    if ext is None:
        return False, {"extensible": False, "order": Ht.order}
    return True, {"extensible": True, **io.formal_map_to_json(ext)}


def _parse_x(ws: Workspace, text):
    try:
        parts = [p for p in text.replace(" ", "").split(",") if p]
    except AttributeError:
        raise io.InputError("--x must be a comma-separated list of scalars")
    return io.vector_from_json(parts, ws.ctx.g.dim, "--x")


def cmd_nijenhuis(ws: Workspace):
    _require_context(ws)
    H = ws.crossed(ws.args.map)
    x = _parse_x(ws, ws.args.x)
    w = nijenhuis_check(H, x)
    out = {"ok": w.ok, "x": _vec(x),
           "checks": {k: encode_report(r) for k, r in w.checks.items()}}
    if w.ok:
        out["H1"] = io.map_to_json(trivial_deformation_from_nijenhuis(H, x))
    return w.ok, out


def cmd_rigidity(ws: Workspace):
    _require_context(ws)
    H = ws.crossed(ws.args.map)
    data = io.load_json(ws.args.family)
    family = data.get("family") if isinstance(data, dict) else data
    if not isinstance(family, list):
        raise io.InputError(f"{ws.args.family}: expected a list under 'family'")
    xs = [io.vector_from_json(v, ws.ctx.g.dim, f"family[{i}]") for i, v in enumerate(family)]
    try:
        rep = rigidity_witness(H, xs)
    except ValueError as exc:
        raise CheckFailed({"error": str(exc)}) from exc
    return rep.ok, {"certified": rep.ok, "dimZ1": rep.details["dim_Z1"],
                    "span_rank": rep.details["span_rank"],
                    "uncovered": [{"cocycle": _vec(f.lhs)} for f in rep.failures]}


# -- plumbing --------------------------------------------------------------

def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--pretty", action="store_true", help="human-readable output")
    p.add_argument("--max-dim", type=int, default=alg.MAX_TOTAL_DIM,
                   help="cap on dim(g) + dim(h)")
    p.add_argument("--max-degree", type=int, default=MAX_DEGREE, help="cap on cohomological degree")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="crossed-leibniz", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="validate an algebra or a context")
    grp = p.add_mutually_exclusive_group(required=True)
    grp.add_argument("--algebra")
    grp.add_argument("--ctx")
    p.set_defaults(func=cmd_validate)

    def group(name, help_):
        g = sub.add_parser(name, help=help_)
        return g.add_subparsers(dest="action", required=True)

    crossed = group("crossed", "crossed homomorphism checks")
    p = crossed.add_parser("check", parents=[common])
    p.add_argument("--ctx", required=True)
    p.add_argument("--map", required=True)
    p.set_defaults(func=cmd_crossed_check)

    mc = group("mc", "Maurer-Cartan residuals")
    p = mc.add_parser("residual", parents=[common])
    p.add_argument("--ctx", required=True)
    p.add_argument("--map", required=True)
    p.add_argument("--base", help="crossed homomorphism to twist by")
    p.set_defaults(func=cmd_mc_residual)

    p = sub.add_parser("semidirect", parents=[common], help="semidirect product algebra")
    p.add_argument("--ctx", required=True)
    p.add_argument("--map", help="twist by this crossed homomorphism")
    p.set_defaults(func=cmd_semidirect)

    p = sub.add_parser("cohomology", parents=[common], help="cohomology of a crossed homomorphism")
    p.add_argument("--ctx", required=True)
    p.add_argument("--map", required=True)
    p.add_argument("--degree", type=int, required=True)
    p.set_defaults(func=cmd_cohomology)

    deform = group("deform", "deformations")
    for name, func, extra in (
        ("check-linear", cmd_check_linear, ("--map", "--h1")),
        ("check-formal", cmd_check_formal, ("--deformation",)),
        ("obstruction", cmd_obstruction, ("--deformation",)),
        ("extend", cmd_extend, ("--deformation",)),
    ):
        p = deform.add_parser(name, parents=[common])
        p.add_argument("--ctx", required=True)
        for flag in extra:
            p.add_argument(flag, required=True)
        p.add_argument("--max-order", type=int, default=6)
        p.set_defaults(func=func)

    nij = group("nijenhuis", "Nijenhuis elements")
    p = nij.add_parser("check", parents=[common])
    p.add_argument("--ctx", required=True)
    p.add_argument("--map", required=True)
    p.add_argument("--x", required=True, help="coordinates of x, comma separated (write --x=-1,2 for a leading minus)")
    p.set_defaults(func=cmd_nijenhuis)

    rig = group("rigidity", "rigidity certificates")
    p = rig.add_parser("certify", parents=[common])
    p.add_argument("--ctx", required=True)
    p.add_argument("--map", required=True)
    p.add_argument("--family", required=True, help='JSON file {"family": [[...], ...]}')
    p.set_defaults(func=cmd_rigidity)
    return parser


def render_pretty(obj, indent=0) -> str:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.append(render_pretty(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {json.dumps(v)}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)):
                lines.append(f"{pad}-")
                lines.append(render_pretty(v, indent + 1))
            else:
                lines.append(f"{pad}- {v}")
    else:
        lines.append(f"{pad}{obj}")
    return "\n".join(lines)


def _emit(obj, pretty, stream):
    text = render_pretty(obj) if pretty else json.dumps(obj, indent=2)
    stream.write(text + "\n")


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    ws = Workspace(args)
    try:
        ok, payload = args.func(ws)
    except CheckFailed as exc:
        _emit({"ok": False, **exc.payload}, args.pretty, stdout)
        return EXIT_FAIL
    except io.InputError as exc:
        stderr.write(f"input error: {exc}\n")
        return EXIT_INPUT
    except (alg.DimensionCapError, DegreeCapError) as exc:
        stderr.write(f"cap exceeded: {exc}\n")
        return EXIT_INPUT
    except ValueError as exc:
        stderr.write(f"invalid input: {exc}\n")
        return EXIT_INPUT
    _emit(payload, args.pretty, stdout)
    return EXIT_OK if ok else EXIT_FAIL


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
