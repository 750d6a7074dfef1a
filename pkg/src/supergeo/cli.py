"""Command-line front end: ``supergeo <command> [options]``.

Every command runs one exact verification and prints a report.  Exit
status is 0 when the verification passes, 1 when it produces a
counterexample, and 2 on usage or parse errors.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
import time

from . import dmodule, dskew, g11m, picompose, piproj
from .errors import (
    ContextMismatch,
    ExprSyntaxError,
    NegativePowerOfNonUnit,
    NotAUnit,
    NotInvariant,
    NotUnitEntry,
    UnknownVariable,
)
from .expr import parse
from .sampling import random_even_conjugator, random_scalar
from .scalar import Scalar
from .superpoly import SuperPolynomial, VarTable, invert_unit, substitute
from .supermatrix import SuperMatrix, berezinian, inverse, matmul

__all__ = ["main", "run", "Report", "UsageError"]


class UsageError(Exception):
    """Bad flags or unparsable input; maps to exit status 2."""


class Report:
    """Outcome of one command.  ``verdict`` is pass iff there are no witnesses."""

    def __init__(self, command, inputs, witnesses, certificate, elapsed=0.0):
        self.command = command
        self.inputs = inputs
        self.witnesses = witnesses
        self.certificate = certificate
        self.elapsed = elapsed

    @property
    def verdict(self) -> str:
        return "fail" if self.witnesses else "pass"

    def to_json(self) -> dict:
        # timing is left out so that identical runs serialize identically
        return {
            "command": self.command,
            "inputs": _jsonable(self.inputs),
            "verdict": self.verdict,
            "witnesses": _jsonable(self.witnesses),
            "certificate": _jsonable(self.certificate),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2, ensure_ascii=True)

    def to_text(self) -> str:
        lines = [f"{self.command}: {self.verdict.upper()}"]
        for key in sorted(self.inputs):
            lines.append(f"  input {key} = {_text(self.inputs[key])}")
        for w in self.witnesses:
            lines.append(f"  counterexample: {_text(w)}")
        for key in sorted(self.certificate):
            lines.append(f"  {key}: {_text(self.certificate[key])}")
        lines.append(f"  time: {self.elapsed:.3f}s")
        return "\n".join(lines)


def _jsonable(x):
    if isinstance(x, Scalar):
        return x.to_json()
    if isinstance(x, SuperPolynomial):
        return str(x)
    if isinstance(x, SuperMatrix):
        return x.to_strings()
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def _text(x) -> str:
    x = _jsonable(x)
    if isinstance(x, dict) and set(x) == {"re", "im"}:
        return str(Scalar.from_json(x))
    if isinstance(x, str):
        return x
    return json.dumps(x, sort_keys=True)


# ----- commands --------------------------------------------------------------

EXPECTED_PSI = {
    "1(x)1": [[1, 0], [0, 1]],
    "theta(x)1": [[0, -1], [1, 0]],
    "1(x)theta": [[0, 1], [1, 0]],
    "theta(x)theta": [[-1, 0], [0, 1]],
}


def cmd_azumaya(args) -> Report:
    rep = dskew.azumaya_check()
    witnesses = []
    for label, image in zip(rep.labels, rep.images):
        expected = SuperMatrix(rep.ring, EXPECTED_PSI[label], (1, 1), (1, 1))
        if image != expected:
            witnesses.append({"psi": label, "got": image, "expected": expected})
    for pair in rep.homomorphism_failures:
        witnesses.append({"not multiplicative on": list(pair)})
    for name, target in dskew._elementary(rep.ring):
        if rep.reconstruct(name) != target:
            witnesses.append({"elementary": name})
    certificate = {
        "psi": dict(zip(rep.labels, rep.images)),
        "coefficients": {
            name: dict(zip(rep.labels, coeffs)) for name, coeffs in rep.coefficients.items()
        },
    }
    return Report("azumaya-check", {}, witnesses, certificate)


def _canonical_ring():
    return VarTable([("a", True)], ["alpha"])


def cmd_canonicalize(args) -> Report:
    ring = _canonical_ring()
    a = _parse(args.expr, ring) if args.expr else ring.var("a")
    try:
        if a.odd_part():
            raise NotAUnit("odd")
        invert_unit(a)
    except NotAUnit as exc:
        raise UsageError(f"a must be an even unit, got {a}") from exc
    alpha = ring.var("alpha")
    witnesses = []
    try:
        phi = dmodule.right_d_matrix(ring, a, alpha)
        cert = dmodule.canonicalize(dmodule.PhiModule(phi))
    except NotUnitEntry as exc:
        return Report("canonicalize", {"a": a, "alpha": alpha}, [{"not a unit": str(exc)}], {})
    if not cert.verified:
        witnesses.append({"symbolic": cert.conjugated})
    rng = random.Random(args.seed)
    numeric = VarTable((), ["xi0", "xi1"])
    x0, x1 = numeric.vars("xi0", "xi1")
    for k in range(100):
        an = numeric.const(random_scalar(rng, nonzero=True)) + x0 * x1 * random_scalar(rng)
        alphan = x0 * random_scalar(rng) + x1 * random_scalar(rng)
        c = dmodule.canonicalize(dmodule.PhiModule(dmodule.right_d_matrix(numeric, an, alphan)))
        if not c.verified:
            witnesses.append({"instance": k, "a": an, "alpha": alphan})
    certificate = {
        "B": cert.B,
        "B_inverse": cert.B_inv,
        "conjugated": cert.conjugated,
        "random_instances": 100,
    }
    return Report(
        "canonicalize", {"a": a, "alpha": alpha, "seed": args.seed}, witnesses, certificate
    )


def group_failures(n: int = 1) -> list:
    ring = VarTable([("t1", True), ("t2", True), ("t3", True)], ["tau1", "tau2", "tau3"])
    g, h, k = (g11m.generic_point(ring, f"t{j}", f"tau{j}") for j in (1, 2, 3))
    e = g11m.GroupElement.identity(ring)
    out = []
    checks = [
        ("associativity", g11m.gmul(g11m.gmul(g, h), k), g11m.gmul(g, g11m.gmul(h, k))),
        ("left identity", g11m.gmul(e, g), g),
        ("right identity", g11m.gmul(g, e), g),
        ("right inverse", g11m.gmul(g, g11m.ginv(g)), e),
        ("left inverse", g11m.gmul(g11m.ginv(g), g), e),
        ("inverse involution", g11m.ginv(g11m.ginv(g)), g),
    ]
    for name, lhs, rhs in checks:
        if lhs != rhs:
            out.append({"check": name, "lhs": [lhs.t, lhs.tau], "rhs": [rhs.t, rhs.tau]})
    if g11m.embed_sl11(g11m.gmul(g, h)) != matmul(g11m.embed_sl11(g), g11m.embed_sl11(h)):
        out.append({"check": "SL(1|1) homomorphism"})
    for name, x in (("g", g), ("gh", g11m.gmul(g, h))):
        ber = berezinian(g11m.embed_sl11(x))
        if ber != ring.one():
            out.append({"check": f"Berezinian of {name}", "value": ber})
    if g11m.to_dstar(g11m.gmul(g, h)) != dskew.dmul(g11m.to_dstar(g), g11m.to_dstar(h)):
        out.append({"check": "D* homomorphism"})
    if dskew.dinvert(g11m.to_dstar(g)) != g11m.to_dstar(g11m.ginv(g)):
        out.append({"check": "D* inverse"})
    act_ring = VarTable(
        [(f"z{j}", False) for j in range(n + 1)] + [("t1", True), ("t2", True)],
        [f"zeta{j}" for j in range(n + 1)] + ["tau1", "tau2"],
    )
    g, h = (g11m.generic_point(act_ring, f"t{j}", f"tau{j}") for j in (1, 2))
    sg, sh = g11m.action_substitution(g, n), g11m.action_substitution(h, n)
    shg = g11m.action_substitution(g11m.gmul(h, g), n)
    for name in list(sg):
        x = act_ring.var(name)
        lhs = substitute(substitute(x, sg), sh)
        rhs = substitute(x, shg)
        if lhs != rhs:
            out.append({"check": "right action", "variable": name, "difference": lhs - rhs})
    return out


def cmd_group(args) -> Report:
    n = 1 if args.n is None else args.n
    return Report("group-check", {"n": n}, group_failures(n), {"generic_points": 3})


def _cell(args, default_n=1):
    n = default_n if args.n is None else args.n
    i = 0 if args.i is None else args.i
    if n < 0 or not 0 <= i <= n:
        raise UsageError(f"need 0 <= i <= n (got n={n}, i={i})")
    if n > 9:
        raise UsageError("indices above 9 are not supported on the command line")
    return piproj.CellContext(n, i)


def _parse(src, ring):
    try:
        return parse(src, ring)
    except (ExprSyntaxError, UnknownVariable, NegativePowerOfNonUnit) as exc:
        raise UsageError(f"cannot parse {src!r}: {exc}") from exc


def _cell_expr(ctx, src):
    s = _parse(src, ctx.ring)
    try:
        piproj._check_ring(ctx, s)
    except ContextMismatch as exc:
        raise UsageError(str(exc)) from exc
    return s


def cmd_invariant(args) -> Report:
    ctx = _cell(args)
    inputs = {"n": ctx.n, "i": ctx.i}
    if args.expr is not None:
        s = _cell_expr(ctx, args.expr)
        inputs["expr"] = s
        defect = piproj.invariance_defect(ctx, s)
        witnesses = [{"expr": s, "defect": defect}] if defect else []
        return Report("invariant-check", inputs, witnesses, {"invariant": not defect})
    gens = piproj.generators(ctx)
    certificate = {
        "w": {str(j): gens.w[j] for j in ctx.others},
        "eta": {str(j): gens.eta[j] for j in ctx.others},
    }
    return Report("invariant-check", inputs, [], certificate)


def cmd_decompose(args) -> Report:
    ctx = _cell(args)
    if args.expr is None:
        raise UsageError("decompose needs --expr")
    s = _cell_expr(ctx, args.expr)
    inputs = {"n": ctx.n, "i": ctx.i, "expr": s}
    try:
        P = piproj.decompose(ctx, s)
    except NotInvariant as exc:
        return Report("decompose", inputs, [{"expr": s, "defect": exc.defect}], {})
    return Report("decompose", inputs, [], {"cell_polynomial": P})


def cmd_identities(args) -> Report:
    n = 2 if args.n is None else args.n
    if n < 1:
        raise UsageError("identities need n >= 1")
    rep = piproj.cocycle_identities(n)
    witnesses = [
        {"identity": k, "indices": list(idx), "difference": d} for k, idx, d in rep.failures
    ]
    blocks = {}
    for k in (1, 2, 3, 4):
        bad = sum(1 for f in rep.failures if f[0] == k)
        blocks[str(k)] = {"checked": rep.checked[k], "failed": bad}
    return Report("identities", {"n": n}, witnesses, {"identities": blocks})


def cmd_bundle(args) -> Report:
    n = 1 if args.n is None else args.n
    cells = [args.i] if args.i is not None else list(range(n + 1))
    _cell(argparse.Namespace(n=n, i=cells[0]))
    witnesses, checked = [], []
    for i in cells:
        rep = piproj.bundle_maps(n, i)
        checked.append(i)
        for check, name, diff in rep.failures:
            witnesses.append({"cell": i, "check": check, "generator": name, "difference": diff})
    return Report("bundle-check", {"n": n, "cells": cells}, witnesses, {"checked_cells": checked})


def cmd_opi(args) -> Report:
    n = 1 if args.n is None else args.n
    cells = [args.i] if args.i is not None else list(range(n + 1))
    _cell(argparse.Namespace(n=n, i=cells[0]))
    witnesses = []
    for i in cells:
        rep = piproj.opi_basis(n, i)
        for kind, j in rep.failures + piproj.quotient_failures(n, i):
            witnesses.append({"cell": i, "relation": kind, "j": j})
    return Report("opi-relations", {"n": n, "cells": cells}, witnesses, {"sections": 2 * (n + 1)})


def cmd_global_sections(args) -> Report:
    n = 1 if args.n is None else args.n
    bound = 4 if args.degree_bound is None else args.degree_bound
    if n < 0 or bound < 0:
        raise UsageError("n and --degree-bound must be non-negative")
    basis = piproj.invariant_functions(n, bound, args.laurent)
    witnesses = [] if [str(b) for b in basis] == ["1"] else [{"basis": basis}]
    inputs = {"n": n, "degree_bound": bound, "laurent": bool(args.laurent)}
    return Report("global-sections", inputs, witnesses, {"basis": basis})


def composition_run(seed: int, count: int = 50) -> list:
    witnesses = []
    base = VarTable()
    S = dmodule.PhiModule(dmodule.swap_matrix(base))
    for msg in picompose.composition_failures(S, S):
        witnesses.append({"case": "canonical", "failure": msg})
    left = dmodule.phi_from_theta_action(dmodule.Chirality.LEFT_D, base)
    T = picompose.BimoduleTensor(left, dmodule.swap_matrix(base))
    if not picompose.supercommutant(T).matches_closed_form():
        witnesses.append({"case": "canonical", "failure": "supercommutant differs from u, v"})
    rng = random.Random(seed)
    rings = [(VarTable(), (), ()), (VarTable(["z0"], ["zeta0"]), ["z0"], ["zeta0"])]
    for k in range(count):
        ring, ev, od = rings[k % 2]
        sw = dmodule.swap_matrix(ring)
        mods = []
        for _ in range(2):
            B = random_even_conjugator(rng, ring, ev, od)
            mods.append(dmodule.PhiModule(matmul(matmul(B, sw), inverse(B))))
        for msg in picompose.composition_failures(*mods):
            witnesses.append(
                {"case": k, "phi": mods[0].phi, "phi_prime": mods[1].phi, "failure": msg}
            )
    return witnesses


def cmd_compose(args) -> Report:
    witnesses = composition_run(args.seed)
    base = VarTable()
    S = dmodule.PhiModule(dmodule.swap_matrix(base))
    plain = picompose.boxtimes(S, S)
    opposite = picompose.boxtimes(S, S, dskew.Side.OPPOSITE)
    certificate = {
        "plain": plain.span(),
        "opposite": opposite.span(),
        "random_conjugations": 50,
    }
    return Report("compose", {"seed": args.seed}, witnesses, certificate)


def cmd_morita(args) -> Report:
    witnesses, ranks = [], {}
    for p, q in ((1, 0), (0, 1), (1, 1)):
        got = picompose.morita_rank(p, q)
        ranks[f"{p}|{q}"] = f"{got[0]}|{got[1]}"
        if got != (p, q):
            witnesses.append({"V": f"{p}|{q}", "commutant": f"{got[0]}|{got[1]}"})
    return Report("morita-check", {}, witnesses, {"ranks": ranks})


COMMANDS = {
    "azumaya-check": (cmd_azumaya, "span End(D) by the images of D (x) D^op"),
    "canonicalize": (cmd_canonicalize, "bring a right D-structure to the swap matrix"),
    "group-check": (cmd_group, "group axioms, SL(1|1) embedding, right action"),
    "invariant-check": (cmd_invariant, "test invariance of an expression on a cell"),
    "decompose": (cmd_decompose, "write an invariant as a polynomial in w, eta"),
    "identities": (cmd_identities, "transition-function identities for O_Pi(1)"),
    "bundle-check": (cmd_bundle, "principal bundle trivialization of a cell"),
    "opi-relations": (cmd_opi, "basis-section relations and transition matrices"),
    "global-sections": (cmd_global_sections, "invariant functions up to a degree bound"),
    "compose": (cmd_compose, "plain/opposite products and eigenspaces"),
    "morita-check": (cmd_morita, "(D (x) V)^D has the rank of V"),
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    env_seed = os.environ.get("SUPERGEO_SEED")
    parser = _Parser(prog="supergeo", description="Exact verifications for D-modules, G_m^{1|1} and Pi-projective space.")
    sub = parser.add_subparsers(dest="command", metavar="command", parser_class=_Parser)
    sub.required = True
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--n", type=int, default=None)
        p.add_argument("--i", type=int, default=None)
        p.add_argument("--expr", default=None)
        p.add_argument("--degree-bound", type=int, default=None)
        p.add_argument("--laurent", action="store_true")
        p.add_argument("--json", action="store_true")
        p.add_argument("--seed", type=int, default=None)
    parser.set_defaults(env_seed=env_seed)
    return parser


def run(argv=None):
    """Run one command.

    Returns ``(exit_code, report, output)`` where ``output`` is the rendered
    report, or the error message when ``report`` is None.
    """
    try:
        args = build_parser().parse_args(argv)
        if args.seed is None:
            try:
                args.seed = int(args.env_seed) if args.env_seed else 0
            except ValueError as exc:
                raise UsageError(
                    f"SUPERGEO_SEED must be an integer, got {args.env_seed!r}"
                ) from exc
        handler = COMMANDS[args.command][0]
        start = time.perf_counter()
        report = handler(args)
        report.elapsed = time.perf_counter() - start
    except UsageError as exc:
        return 2, None, str(exc)
    output = report.dumps() if args.json else report.to_text()
    return (0 if report.verdict == "pass" else 1), report, output


def main(argv=None) -> int:
    code, report, output = run(argv)
    if report is None:
        print(f"supergeo: error: {output}", file=sys.stderr)
    else:
        print(output)
    return code


if __name__ == "__main__":
    sys.exit(main())
