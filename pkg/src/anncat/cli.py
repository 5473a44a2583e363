"""Batch front end.

Exit status: 0 computed and all checks passed; 1 computed with violations;
2 input or validation error; 3 size guard exceeded.  All machine-readable
output is byte-deterministic for identical inputs and seed.
"""
from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import guards, serialization as ser
from .bimodules import Bimodule
from .category import CategoricalRing, verify_coherence
from .cochains import Cochain2, Cochain3
from .cohomology import cohomology_group, z1_group, classify_structures
from .extension import (RegularHomTheta, Bimultiplication, enumerate_bimultiplications,
                        bicenter, is_regular_hom, obstruction, build_extension,
                        ExtensionError)
from .functors import (RingFunctor, check_hom_pair, is_ann_functor, exists_ann_functor,
                       enumerate_regular_functors, aut_functor, FunctorError)
from .relations import is_cocycle3
from .rings import RingAxiomError
from .serialization import FormatError


class CliError(Exception):
    def __init__(self, message, status=2):
        super().__init__(message)
        self.status = status


def _load(path, what):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise CliError(f"{what}: file not found: {path}")
    except json.JSONDecodeError as exc:
        raise CliError(f"{what}: invalid JSON at line {exc.lineno}: {exc.msg}")


def _ring(path, what="ring"):
    try:
        return ser.ring_from_dict(_load(path, what))
    except (FormatError, RingAxiomError) as exc:
        raise CliError(f"{what}: {exc}")


def _module(path, ring):
    try:
        return ser.bimodule_from_dict(_load(path, "module"), ring)
    except (FormatError, ValueError) as exc:
        raise CliError(f"module: {exc}")


def _cochain(path, module, normalized=True):
    try:
        return ser.cochain_from_dict(_load(path, "cochain"), module, normalized=normalized)
    except FormatError as exc:
        raise CliError(f"cochain: {exc}")


def _emit(args, rep: dict, text_lines):
    if args.format == "json":
        sys.stdout.write(ser.dumps(rep))
    else:
        for line in text_lines:
            print(line)
    return rep["status"]


def _group_str(g) -> str:
    return str(g)


# -- commands -------------------------------------------------------------------

def cmd_ring_validate(args):
    try:
        data = _load(args.ring, "ring")
        ser.ring_from_dict(data)
    except CliError:
        raise
    except (FormatError, RingAxiomError) as exc:
        rep = ser.report("ring-validate", 1, "INVALID",
                         [{"axiom": getattr(exc, "axiom", "format"),
                           "tuple": list(getattr(exc, "witness", ())), "residual": None}])
        return _emit(args, rep, [f"INVALID: {exc}"])
    rep = ser.report("ring-validate", 0, "VALID")
    return _emit(args, rep, ["VALID"])


def cmd_cohomology(args):
    ring = _ring(args.ring)
    module = _module(args.module, ring)
    level = args.level
    if level == 1:
        H = z1_group(module, args.size_guard)
        label = "Z1"
    else:
        H = cohomology_group(level, module, args.size_guard)
        label = f"H{level}"
    desc = _group_str(H.group)
    rep = ser.report("cohomology", 0,
                     {"level": level, "invariant_factors": list(H.group.invariant_factors),
                      "order": H.order})
    return _emit(args, rep, [f"{label} = {desc}"])


def cmd_cocycle_check(args):
    ring = _ring(args.ring)
    module = _module(args.module, ring)
    f = _cochain(args.cochain, module)
    if not isinstance(f, Cochain3):
        raise CliError("cocycle-check expects a level-3 cochain")
    report = is_cocycle3(f)
    if report.ok:
        rep = ser.report("cocycle-check", 0, "PASS (17 relations + regularity)")
        return _emit(args, rep, ["PASS (17 relations + regularity)"])
    viol = [{"relation": v.relation, "tuple": list(v.args), "residual": list(v.residual)}
            for v in report.violations]
    rep = ser.report("cocycle-check", 1, "FAIL", viol)
    return _emit(args, rep, [f"FAIL: {len(viol)} violation(s)", str(report)])


def cmd_coherence_verify(args):
    ring = _ring(args.ring)
    module = _module(args.module, ring)
    f = _cochain(args.cochain, module, normalized=False)
    if not isinstance(f, Cochain3):
        raise CliError("coherence-verify expects a level-3 structure table bundle")
    cat = CategoricalRing(module, f)
    report = verify_coherence(cat)
    if report.ok:
        rep = ser.report("coherence-verify", 0, "PASS")
        return _emit(args, rep, ["PASS (all axiom diagrams commute)"])
    viol = [{"diagram": v.diagram, "tuple": list(v.args), "residual": list(v.residual)}
            for v in report.violations]
    rep = ser.report("coherence-verify", 1, "FAIL", viol)
    return _emit(args, rep, [f"FAIL: {len(viol)} diagram violation(s)", str(report)])


def cmd_classify(args):
    ring = _ring(args.ring)
    module = _module(args.module, ring)
    H, cats = classify_structures(module, args.size_guard)
    reps = [ser.cochain_to_dict(c.structure) for c in cats]
    rep = ser.report("classify", 0,
                     {"h3_invariant_factors": list(H.group.invariant_factors),
                      "classes": len(cats), "representatives": reps})
    lines = [f"H3 = {_group_str(H.group)}", f"classes: {len(cats)}"]
    return _emit(args, rep, lines)


def _functor_inputs(args):
    sring = _ring(args.source_ring, "source ring")
    smod = _module(args.source_module, sring)
    tring = _ring(args.target_ring, "target ring")
    tmod = _module(args.target_module, tring)
    sc = (_cochain(args.source_cochain, smod) if args.source_cochain
          else Cochain3.zero(smod))
    tc = (_cochain(args.target_cochain, tmod) if args.target_cochain
          else Cochain3.zero(tmod))
    source = CategoricalRing.of_cocycle(sc)
    target = CategoricalRing.of_cocycle(tc)
    data = _load(args.functor, "functor")
    if "f0" not in data or "f1" not in data:
        raise CliError("functor file must contain f0 and f1 tables")
    f0 = np.array(data["f0"], dtype=np.int64)
    try:
        f1 = np.array([tmod.from_tuple(t) for t in data["f1"]], dtype=np.int64)
    except (KeyError, TypeError):
        raise CliError("functor file: f1 must list target module elements as tuples")
    return source, target, f0, f1, data


def cmd_functor_exists(args):
    source, target, f0, f1, _ = _functor_inputs(args)
    try:
        F, obstr = exists_ann_functor(source, target, f0, f1, args.size_guard)
    except FunctorError as exc:
        raise CliError(str(exc))
    if F is not None:
        rep = ser.report("functor-exists", 0,
                         {"exists": True, "labels": ser.cochain_to_dict(F.labels)})
        return _emit(args, rep, ["EXISTS", "compatibility labels: lexicographically least"])
    H, cls = obstr
    rep = ser.report("functor-exists", 1,
                     {"exists": False,
                      "obstruction_class": list(cls),
                      "h3_invariant_factors": list(H.group.invariant_factors)})
    return _emit(args, rep, [f"ABSENT: obstruction class {list(cls)} in H3 = {_group_str(H.group)}"])


def cmd_functor_enumerate(args):
    source, target, f0, f1, _ = _functor_inputs(args)
    try:
        H2, functors = enumerate_regular_functors(source, target, f0, f1, args.size_guard)
    except FunctorError as exc:
        raise CliError(str(exc))
    rep = ser.report("functor-enumerate", 0,
                     {"classes": len(functors),
                      "h2_invariant_factors": list(H2.group.invariant_factors),
                      "representatives": [ser.cochain_to_dict(F.labels) for F in functors]})
    return _emit(args, rep, [f"H2 = {_group_str(H2.group)}", f"classes: {len(functors)}"])


def cmd_functor_aut(args):
    source, target, f0, f1, data = _functor_inputs(args)
    pb = check_hom_pair(source, target, f0, f1)
    if "labels" in data:
        labels = ser.cochain_from_dict(data["labels"], pb)
    else:
        labels = Cochain2.zero(pb)
    F = RingFunctor(source, target, f0, f1, labels)
    rep_valid = is_ann_functor(F)
    if not rep_valid.ok:
        viol = [{"diagram": v.diagram, "tuple": list(v.args), "residual": list(v.residual)}
                for v in rep_valid.violations]
        rep = ser.report("functor-aut", 1, "NOT A FUNCTOR", viol)
        return _emit(args, rep, ["input is not a valid functor"])
    A = aut_functor(F, args.size_guard)
    rep = ser.report("functor-aut", 0,
                     {"order": A.order, "invariant_factors": list(A.group.invariant_factors)})
    return _emit(args, rep, [f"Aut = {_group_str(A.group)} (order {A.order})"])


def cmd_ext_bimult(args):
    A = _ring(args.ring)
    bm = enumerate_bimultiplications(A, args.size_guard)
    P, _ = bm.outer_ring()
    C, table = bicenter(A)
    rep = ser.report("ext-bimult", 0,
                     {"bimultiplications": bm.order,
                      "inner": len(set(bm.inner_index)),
                      "outer_order": P.order,
                      "bicenter_invariant_factors": list(C.invariant_factors),
                      "elements": [{"left": list(b.left), "right": list(b.right)}
                                   for b in bm.elements]})
    lines = [f"bimultiplications: {bm.order}",
             f"inner: {len(set(bm.inner_index))}",
             f"outer ring order: {P.order}",
             f"bicenter: {_group_str(C)}"]
    return _emit(args, rep, lines)


def _theta(args, A, R):
    data = _load(args.theta, "theta")
    if "lift" not in data:
        raise CliError("theta file must contain a lift table")
    bm = enumerate_bimultiplications(A, args.size_guard)
    lift = []
    for entry in data["lift"]:
        b = Bimultiplication(tuple(int(v) for v in entry["left"]),
                             tuple(int(v) for v in entry["right"]))
        if b not in bm.index:
            raise CliError(f"theta: lift entry is not a bimultiplication: {entry}")
        lift.append(bm.index[b])
    if len(lift) != R.order:
        raise CliError("theta: lift length must match the coefficient ring order")
    return RegularHomTheta(A, R, bm, lift)


def cmd_ext_obstruction(args):
    A = _ring(args.ring)
    R = _ring(args.base_ring, "base ring")
    theta = _theta(args, A, R)
    viol = is_regular_hom(theta)
    if viol:
        rep = ser.report("ext-obstruction", 1, "NOT REGULAR",
                         [{"condition": v.condition, "tuple": list(v.witness),
                           "residual": None} for v in viol])
        return _emit(args, rep, ["theta is not a regular homomorphism"]
                     + [f"  {v}" for v in viol[:5]])
    try:
        obs = obstruction(theta, literal=args.literal)
    except ExtensionError as exc:
        rep = ser.report("ext-obstruction", 1, "DEFECT UNSOLVABLE",
                         [{"condition": str(exc), "tuple": [], "residual": None}])
        return _emit(args, rep, [f"defect tables unsolvable: {exc}"])
    from .relations import is_ann_structure
    check = is_ann_structure(obs.family)
    result = {"vanishes": obs.vanishes(),
              "f": np.asarray(obs.f).tolist(), "g": np.asarray(obs.g).tolist(),
              "bicenter_invariant_factors": list(obs.module.group.invariant_factors),
              "family": ser.cochain_to_dict(obs.family),
              "structure_check": "PASS" if check.ok else "FAIL"}
    status = 0 if check.ok else 1
    viol = [{"relation": v.relation, "tuple": list(v.args), "residual": list(v.residual)}
            for v in check.violations]
    rep = ser.report("ext-obstruction", status, result, viol)
    lines = [f"obstruction vanishes: {obs.vanishes()}",
             f"structure relations: {'PASS' if check.ok else 'FAIL'}"]
    return _emit(args, rep, lines)


def cmd_ext_build(args):
    A = _ring(args.ring)
    R = _ring(args.base_ring, "base ring")
    theta = _theta(args, A, R)
    fg = _load(args.fg, "fg")
    if "f" not in fg or "g" not in fg:
        raise CliError("fg file must contain f and g tables")
    try:
        ext = build_extension(theta, np.array(fg["f"], dtype=np.int64),
                              np.array(fg["g"], dtype=np.int64))
    except ExtensionError as exc:
        rep = ser.report("ext-build", 1, "OBSTRUCTED",
                         [{"condition": str(exc), "tuple": [], "residual": None}])
        return _emit(args, rep, [f"cannot build extension: {exc}"])
    rep = ser.report("ext-build", 0,
                     {"ring": ser.ring_to_dict(ext.ring),
                      "inject": ext.inject, "project": ext.project})
    lines = [f"extension ring of order {ext.ring.order} built",
             f"unit index: {ext.ring.unit}"]
    return _emit(args, rep, lines)


# -- parser ---------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="anncat",
                                description="exact low-dimensional ring cohomology "
                                            "and categorical-ring coherence")
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.add_argument("--seed", type=int, default=0,
                   help="seed recorded for sampled property suites")
    p.add_argument("--size-guard", type=int, default=None,
                   help=f"override the basis size guard (env {guards.ENV_VAR})")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, *specs):
        sp = sub.add_parser(name)
        for flags, kw in specs:
            sp.add_argument(flags, **kw)
        sp.set_defaults(fn=fn)
        return sp

    ring = ("--ring", {"required": True})
    module = ("--module", {"required": True})
    add("ring-validate", cmd_ring_validate, ring)
    add("cohomology", cmd_cohomology, ring, module,
        ("--level", {"type": int, "choices": (1, 2, 3), "default": 3}))
    add("cocycle-check", cmd_cocycle_check, ring, module, ("--cochain", {"required": True}))
    add("coherence-verify", cmd_coherence_verify, ring, module,
        ("--cochain", {"required": True}))
    add("classify", cmd_classify, ring, module)
    ftor = [("--source-ring", {"required": True}), ("--source-module", {"required": True}),
            ("--source-cochain", {"default": None}), ("--target-ring", {"required": True}),
            ("--target-module", {"required": True}), ("--target-cochain", {"default": None}),
            ("--functor", {"required": True})]
    add("functor-exists", cmd_functor_exists, *ftor)
    add("functor-enumerate", cmd_functor_enumerate, *ftor)
    add("functor-aut", cmd_functor_aut, *ftor)
    add("ext-bimult", cmd_ext_bimult, ring)
    add("ext-obstruction", cmd_ext_obstruction, ring,
        ("--base-ring", {"required": True}), ("--theta", {"required": True}),
        ("--literal", {"action": "store_true"}))
    add("ext-build", cmd_ext_build, ring,
        ("--base-ring", {"required": True}), ("--theta", {"required": True}),
        ("--fg", {"required": True}))
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except CliError as exc:
        rep = ser.report(args.command, exc.status, str(exc))
        if args.format == "json":
            sys.stdout.write(ser.dumps(rep))
        else:
            print(f"error: {exc}", file=sys.stderr)
        return exc.status
    except guards.SizeGuardError as exc:
        rep = ser.report(args.command, 3, str(exc))
        if args.format == "json":
            sys.stdout.write(ser.dumps(rep))
        else:
            print(f"size guard: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
