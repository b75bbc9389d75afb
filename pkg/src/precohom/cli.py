"""Command-line interface.

Exit codes: 0 success, 1 check or validation failure, 2 input error,
3 unsupported request.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import sys
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .algebra import InvalidStructure, ShapeMismatch, WrongKind, regular_bimodule
from .cohomology import ComplexHandle, NotASubcomplex, cohomology_report, les_consistency
from .complexes.hochschild import ClosureFailure
from .embeddings import (EmbeddingContext, InsufficientTruncation, UnsupportedDegree,
                         MAX_PRELIE_DEGREE, chain_map_residual, domain_space, embedded_complex,
                         psi_rank)
from .freeperm import free_perm_truncated
from .io import FileFormatError, load_algebra
from .reproduce import (DiscrepancyLog, reproduce_dend_h2, reproduce_lie, reproduce_prelie,
                        reproduce_tensor_constraints)
from .rng import SplitMix64, random_cochain
from .tensor import tensor_assoc_bimodule, tensor_associative, tensor_lie, tensor_lie_module
from .validate import validate_bimodule, validate_presentation

OK, FAILED, BAD_INPUT, UNSUPPORTED = 0, 1, 2, 3

COMPLEX_FOR = {"dendriform": "dendriform", "prelie": "prelie", "lie": "ce",
               "associative": "hochschild", "perm": "perm"}

MAX_SHOWN = 10
LES_MAX_COCHAINS = 100_000  # dense elimination beyond this is impractically slow


class InputError(Exception):
    pass


class Unsupported(Exception):
    pass


@dataclass
class RunReport:
    command: list
    inputs: dict = field(default_factory=dict)  # path -> sha256
    seed: int | None = None
    results: list = field(default_factory=list)
    discrepancies: list = field(default_factory=list)
    status: int = OK

    def emit(self, line: str = ""):
        print(line)

    def as_dict(self) -> dict:
        return {"command": self.command, "inputs": self.inputs, "seed": self.seed,
                "results": self.results, "discrepancies": self.discrepancies, "status": self.status}


def fixture_path(name: str) -> Path:
    return Path(str(resources.files("precohom") / "fixtures" / name))


def _load(path: str, report: RunReport):
    p = Path(path)
    if not p.exists() and fixture_path(p.name).exists() and len(p.parts) <= 2:
        p = fixture_path(p.name)  # bare "fixtures/x.json" names resolve to the bundled copies
    try:
        report.inputs[str(path)] = hashlib.sha256(p.read_bytes()).hexdigest()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return load_algebra(p)
    except FileFormatError as exc:
        raise InputError(str(exc)) from None


def _perm_factor(spec: str, report: RunReport):
    if spec.startswith("free:"):
        try:
            g, d = (int(x) for x in spec[5:].split(","))
        except ValueError:
            raise InputError(f"expected free:g,d, got {spec!r}") from None
        if g < 1 or d < 1:
            raise InputError("free:g,d needs g >= 1 and d >= 1")
        return free_perm_truncated(g, d)
    f = _load(spec, report)
    if f.algebra.kind != "perm":
        raise InputError(f"{spec} is a {f.algebra.kind} presentation, not perm")
    return _validated(f.algebra)


def _validated(p):
    try:
        return p.mark_validated()
    except InvalidStructure as exc:
        raise CheckFailed(f"{p.kind} axioms fail", exc.report) from None


class CheckFailed(Exception):
    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


def parse_degrees(text: str) -> list:
    try:
        if ".." in text:
            a, b = text.split("..")
            lo, hi = int(a), int(b)
        else:
            lo = hi = int(text)
    except ValueError:
        raise InputError(f"bad degree range {text!r}; use n or a..b") from None
    if lo < 0 or hi < lo:
        raise InputError(f"bad degree range {text!r}")
    return list(range(lo, hi + 1))


# ---- commands ------------------------------------------------------------------

def _violation_lines(rep, names=None) -> list:
    lines = [v.describe(names) for v in list(rep)[:MAX_SHOWN]]
    if len(rep) > MAX_SHOWN:
        lines.append(f"... {len(rep) - MAX_SHOWN} more")
    return lines


def cmd_validate(args, report: RunReport) -> int:
    f = _load(args.file, report)
    rep = validate_presentation(f.algebra)
    result = {"file": args.file, "kind": f.algebra.kind, "violations": len(rep)}
    report.emit(f"{args.file}: {f.algebra.kind}, dimension {f.algebra.dim}")
    for line in _violation_lines(rep, f.algebra.basis_names):
        report.emit("  " + line)
    status = FAILED if rep else OK
    if f.module is not None:
        if rep:
            report.emit("  module not checked: the algebra itself fails")
        else:
            mrep = validate_bimodule(f.module)
            result["module_violations"] = len(mrep)
            for line in _violation_lines(mrep):
                report.emit("  module " + line)
            status = FAILED if mrep else status
    report.emit("valid" if status == OK else "invalid")
    report.results.append(result)
    return status


def _coefficients(f, spec: str, report: RunReport):
    if spec == "self":
        return f.coefficients
    other = _load(spec, report)
    if other.module is None:
        raise InputError(f"{spec} has no module block")
    if other.algebra.kind != f.algebra.kind or other.algebra.tables != f.algebra.tables:
        raise InputError(f"the module in {spec} is over a different algebra")
    m = other.module
    return type(m)(f.algebra, m.module_dim, m.module_names, m.actions)


def cmd_cohomology(args, report: RunReport) -> int:
    f = _load(args.file, report)
    degrees = parse_degrees(args.degree)
    kind = args.complex or COMPLEX_FOR[f.algebra.kind]
    if args.subspace == "ansatz" and kind != "prelie":
        raise InputError("--subspace ansatz applies to pre-Lie algebras only")
    algebra = _validated(f.algebra)
    module = _coefficients(f, args.coefficients, report)
    module = type(module)(algebra, module.module_dim, module.module_names, module.actions)
    try:
        c = ComplexHandle(kind, algebra, module, subspace=args.subspace)
    except InvalidStructure as exc:
        raise CheckFailed(str(exc), exc.report) from None
    except WrongKind as exc:
        raise InputError(str(exc)) from None
    r = cohomology_report(c, degrees)
    report.emit(f"{kind} cohomology of {args.file} ({args.subspace} cochains)")
    for line in r.lines():
        report.emit("  " + line)
    report.results.append({"file": args.file, "complex": kind, "subspace": args.subspace,
                           "degrees": [d.as_dict() for d in r.degrees.values()]})
    return OK


def cmd_tensor(args, report: RunReport) -> int:
    perm = _perm_factor(args.perm, report)
    A = perm.presentation if hasattr(perm, "presentation") else perm
    f = _load(args.with_, report)
    B = f.algebra
    if B.kind == "dendriform":
        T, expect = tensor_associative(A, B), "associative"
    elif B.kind == "prelie":
        T, expect = tensor_lie(A, B), "lie"
    else:
        raise InputError(f"--with needs a dendriform or prelie algebra, got {B.kind}")
    report.emit(f"tensor product: dimension {T.dim}, checked as {expect}")
    result = {"perm": args.perm, "with": args.with_, "dimension": T.dim, "kind": expect}
    status = OK
    if args.check:
        rep = validate_presentation(T)
        result["violations"] = len(rep)
        for line in _violation_lines(rep, T.basis_names):
            report.emit("  " + line)
        if rep:
            status = FAILED
        elif f.module is not None:
            if not validate_presentation(B).ok:
                raise InputError("module check needs a valid right factor")
            Am = regular_bimodule(A)
            M = (tensor_assoc_bimodule if B.kind == "dendriform" else tensor_lie_module)(A, Am, B, f.module)
            mrep = validate_bimodule(M)
            result["module_violations"] = len(mrep)
            for line in _violation_lines(mrep):
                report.emit("  module " + line)
            status = FAILED if mrep else OK
        report.emit("pass" if status == OK else "fail")
    report.results.append(result)
    return status


def cmd_embed(args, report: RunReport) -> int:
    perm = _perm_factor(args.perm, report)
    f = _load(args.with_, report)
    if f.algebra.kind not in ("dendriform", "prelie"):
        raise InputError(f"--with needs a dendriform or prelie algebra, got {f.algebra.kind}")
    B = _validated(f.algebra)
    N = f.coefficients
    N = type(N)(B, N.module_dim, N.module_names, N.actions)
    ctx = EmbeddingContext.build(perm, B, N)
    n = args.degree
    report.seed = args.seed
    top = n + 1 if args.check == "chain-map" else n
    if ctx.kind == "prelie" and top > MAX_PRELIE_DEGREE:
        raise Unsupported(f"pre-Lie embedding is only available up to degree {MAX_PRELIE_DEGREE} "
                          f"(requested {top})")
    if n < 1:
        raise InputError("--degree must be at least 1")
    result = {"perm": args.perm, "with": args.with_, "degree": n, "check": args.check}
    try:
        if args.check == "chain-map":
            rng = SplitMix64(args.seed)
            sp = domain_space(ctx, n)
            bad = 0
            for trial in range(args.trials):
                res = chain_map_residual(random_cochain(sp, rng), ctx)
                if not res.is_zero():
                    bad += 1
                    t, v = res.first()
                    report.emit(f"  trial {trial}: residual {v} at tensor tuple {[u + 1 for u in t]}")
            result.update(trials=args.trials, failures=bad)
            report.emit(f"chain map, degree {n}: {args.trials - bad}/{args.trials} trials with zero residual")
            status = FAILED if bad else OK
        elif args.check == "injectivity":
            r, inj = psi_rank(ctx, n=n)
            dim = domain_space(ctx, n).dim
            result.update(rank=r, domain_dim=dim, injective=inj)
            report.emit(f"rank {r} of {dim}: injective={'true' if inj else 'false'}")
            status = OK
        else:
            size = ctx.total_complex().cochain_dim(n + 1)
            if size > LES_MAX_COCHAINS:
                raise Unsupported(f"the tensor complex has {size} cochains in degree {n + 1}; "
                                  f"the exact LES check is limited to {LES_MAX_COCHAINS}")
            les = les_consistency(embedded_complex(ctx), ctx.total_complex(), range(1, n + 1))
            for line in les.lines():
                report.emit("  " + line)
            result.update(feasible=les.feasible, h_sub=les.h_sub, h_total=les.h_total,
                          h_quotient=les.h_quotient)
            status = OK if les.feasible else FAILED
    except (UnsupportedDegree, InsufficientTruncation) as exc:
        raise Unsupported(str(exc)) from None
    report.results.append(result)
    return status


def cmd_reproduce(args, report: RunReport) -> int:
    name = args.paper_example
    runs = []
    if name == "2.7":
        for n in (2, 3, 4):
            f = _load(f"fixtures/dend_example_n{n}.json", report)
            runs.append(reproduce_dend_h2(_validated(f.algebra), f.expected))
    elif name == "5.7":
        for n in (2, 3):
            f = _load(f"fixtures/dend_example_n{n}.json", report)
            runs.append(reproduce_tensor_constraints(_validated(f.algebra)))
    elif name == "5.4":
        f = _load("fixtures/prelie_example.json", report)
        runs.append(reproduce_prelie(_validated(f.algebra), f.expected))
    else:
        f = _load("fixtures/lie_2dim.json", report)
        runs.append(reproduce_lie(_validated(f.algebra), f.expected))
    for r in runs:
        for line in r.lines():
            report.emit(line)
        report.results.append(r.as_dict())
        report.discrepancies += [{"topic": r.name, "text": d} for d in r.discrepancies]
    return OK if all(r.ok for r in runs) else FAILED


# ---- entry point ---------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write a JSON run report here")
    common.add_argument("--log", help="append discrepancy entries to this file")

    parser = argparse.ArgumentParser(prog="precohom", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="check the axioms of an algebra file")
    p.add_argument("file")
    p.set_defaults(run=cmd_validate)

    p = sub.add_parser("cohomology", parents=[common], help="cohomology dimensions")
    p.add_argument("file")
    p.add_argument("--degree", default="1..3", help="n or a..b")
    p.add_argument("--coefficients", default="self", help="'self' or a file with a module block")
    p.add_argument("--subspace", choices=("full", "ansatz"), default="full")
    p.add_argument("--complex", choices=("hochschild", "perm", "dendriform", "prelie", "ce"),
                   help="override the complex chosen from the algebra kind")
    p.set_defaults(run=cmd_cohomology)

    p = sub.add_parser("tensor", parents=[common], help="tensor product with a Perm algebra")
    p.add_argument("--perm", required=True, help="perm algebra file or free:g,d")
    p.add_argument("--with", dest="with_", required=True, help="dendriform or pre-Lie algebra file")
    p.add_argument("--check", action="store_true", help="validate the tensor product")
    p.set_defaults(run=cmd_tensor)

    p = sub.add_parser("embed", parents=[common], help="check the cochain map into the tensor complex")
    p.add_argument("--perm", required=True, help="perm algebra file or free:g,d")
    p.add_argument("--with", dest="with_", required=True)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--check", choices=("chain-map", "injectivity", "les"), default="chain-map")
    p.set_defaults(run=cmd_embed)

    p = sub.add_parser("reproduce", parents=[common], help="rerun a worked example")
    p.add_argument("--paper-example", "--example", dest="paper_example", required=True,
                   choices=("2.7", "5.4", "5.7", "lie"))
    p.set_defaults(run=cmd_reproduce)
    return parser


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return BAD_INPUT if exc.code else OK
    report = RunReport(["precohom"] + argv)
    try:
        status = args.run(args, report)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        status = BAD_INPUT
    except Unsupported as exc:
        print(f"unsupported: {exc}", file=sys.stderr)
        status = UNSUPPORTED
    except CheckFailed as exc:
        print(f"failed: {exc}", file=sys.stderr)
        if exc.report is not None:
            for line in _violation_lines(exc.report):
                print("  " + line, file=sys.stderr)
        status = FAILED
    except (ClosureFailure, NotASubcomplex) as exc:
        print(f"failed: {exc}", file=sys.stderr)
        status = FAILED
    except (ShapeMismatch, WrongKind) as exc:
        print(f"error: {exc}", file=sys.stderr)
        status = BAD_INPUT
    report.status = status
    if getattr(args, "log", None) and report.discrepancies:
        log = DiscrepancyLog()
        for d in report.discrepancies:
            log.add(d["topic"], d["text"])
        log.write(args.log)
    if getattr(args, "out", None):
        Path(args.out).write_text(json.dumps(report.as_dict(), indent=2, default=str) + "\n")
    return status


def run():
    sys.exit(main())


if __name__ == "__main__":
    run()
