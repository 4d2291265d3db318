"""Command-line front end: ``spiralblock COMMAND [options]``.

Exit codes: 0 success, 1 invariant or audit failure, 2 usage or parse error.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from .arrangement import enumerate_faces
from .audits import run_audit
from .blockspace import (
    BlockSpace,
    PositivityError,
    SearchExhausted,
    canonical_signed_basis,
    lattice_generators,
    positive_basis,
)
from .datum import BlockDatum, DatumError, load_datum, principal_datum, validate
from .exactalg import RatFunc
from .factorize import (
    FactorizationError,
    LabelingError,
    OrbitLabeling,
    build_m,
    factorize_m,
    odd_vanishing_report,
    parity_audit,
)
from .pairing import a_phi, build_gram, h_value
from .rootsys import build_root_system

COMMANDS = ("validate", "chambers", "gram", "rank", "basis", "factorize", "audit", "report")


class UsageError(Exception):
    pass


class AuditFailure(Exception):
    def __init__(self, message: str, document: dict | None = None):
        super().__init__(message)
        self.document = document


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="spiralblock", description="Exact block combinatorics for Z/m-graded Lie algebras.")
    p.add_argument("command", choices=COMMANDS)
    src = p.add_argument_group("datum source")
    src.add_argument("--datum", metavar="FILE", help="datum JSON file")
    src.add_argument("--principal", metavar="TYPE", help="Cartan label, e.g. A2")
    src.add_argument("--degrees", metavar="LIST", help="comma-separated simple-root degrees")
    src.add_argument("--m", type=int, help="grading modulus")
    src.add_argument("--eta", type=int, help="nonzero integer eta")
    src.add_argument("--weyl", choices=("centralizer", "stabilizer"), default="centralizer",
                     help="rule for W in generated data (default: centralizer)")
    p.add_argument("--eta-alt", type=int, help="second eta for the invariance check")
    p.add_argument("--labeling", metavar="FILE", help="orbit labeling JSON")
    p.add_argument("--matrix", metavar="FILE", help="factorize a matrix M given directly")
    p.add_argument("--strict", action="store_true", help="treat parity-audit failures as errors")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--series-order", type=int, default=40)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", metavar="PATH", help="write the JSON document here")
    return p


def _datum(args) -> BlockDatum:
    if args.datum and args.principal:
        raise UsageError("give either --datum or --principal, not both")
    if args.datum:
        return load_datum(args.datum)
    if args.principal:
        if args.degrees is None or args.m is None or args.eta is None:
            raise UsageError("--principal needs --degrees, --m and --eta")
        try:
            degrees = [int(x) for x in args.degrees.split(",") if x.strip()]
            rs = build_root_system(args.principal)
            return principal_datum(rs, degrees, args.m, args.eta, weyl=args.weyl)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
    raise UsageError("no datum given: use --datum FILE or --principal TYPE")


def _load_matrix(path: str) -> list[list[RatFunc]]:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
        rows = data["M"] if isinstance(data, dict) else data
        return [[RatFunc.of(x) if isinstance(x, int) else RatFunc.from_json(x) for x in row] for row in rows]
    except (OSError, json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"matrix parse error: {exc}") from exc


def _chambers_doc(space: BlockSpace) -> list[dict]:
    d = space.datum
    out = []
    for c in space.chambers:
        item = c.to_json()
        item["h"] = h_value(d, c.representative)
        item["faces"] = []
        for f in enumerate_faces(d, c, space.seed):
            face = f.to_json()
            face["aPhi"] = RatFunc.of(a_phi(d, f)).to_json()
            item["faces"].append(face)
        out.append(item)
    return out


def _basis_doc(space: BlockSpace, series_order: int) -> dict:
    sb = canonical_signed_basis(space)
    doc = sb.to_json(series_order)
    doc["method"] = sb.method
    doc["generators"] = [
        {"tag": g.tag, "chamber": g.chamber, "aPhi": RatFunc.of(g.a).to_json()} for g, _ in lattice_generators(space)
    ]
    pb = positive_basis(sb)
    doc["positiveBasis"] = [b.to_json() for b in pb.elements]
    doc["expansions"] = {tag: [f.to_json() for f in coeffs] for tag, coeffs in pb.expansions.items()}
    doc["gramOnBasis"] = [[space.pair(b, c).to_json() for c in pb.elements] for b in pb.elements]
    return doc


def _factorize_doc(args, space: BlockSpace | None) -> tuple[dict, bool]:
    if not args.labeling:
        raise UsageError("factorize needs --labeling")
    labeling = OrbitLabeling.load(args.labeling)
    if args.matrix:
        m = _load_matrix(args.matrix)
    else:
        assert space is not None
        pb = positive_basis(canonical_signed_basis(space))
        gram = [[space.pair(b, c) for c in pb.elements] for b in pb.elements]
        m = build_m(gram, labeling)
    f = factorize_m(m, labeling)
    if not _reconstructs(f, m):
        raise AuditFailure("reconstruction S T S' != M")
    doc = f.to_json()
    doc["oddVanishing"] = odd_vanishing_report(f)
    audit = parity_audit(f)
    doc["auditFailures"] = list(audit.failures)
    return doc, audit.ok


def _reconstructs(f, m) -> bool:
    rec = f.reconstruct()
    order = f.ordering
    return all(rec[a][b] == m[i][j] for a, i in enumerate(order) for b, j in enumerate(order))


def _kappas(args, size: int) -> list[int] | None:
    if not args.labeling:
        return None
    return OrbitLabeling.load(args.labeling).kappa_of(size)


def _emit(doc: dict, args, text: str | None = None) -> None:
    payload = json.dumps(doc, indent=2) + "\n"
    if args.out:
        Path(args.out).write_text(payload, encoding="utf-8")
        if text is not None:
            print(text)
    elif text is None:
        print(payload, end="")
    else:
        print(text)


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _dispatch(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DatumError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1 if exc.violations else 2
    except LabelingError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (FactorizationError, SearchExhausted, PositivityError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except AuditFailure as exc:
        if exc.document is not None:
            _emit(exc.document, args)
        print(f"audit failed: {exc}", file=sys.stderr)
        return 1


def _dispatch(args) -> int:
    cmd = args.command
    if cmd == "factorize" and args.matrix:
        doc, ok = _factorize_doc(args, None)
        _emit(doc, args)
        if args.strict and not ok:
            print("audit failed: parity audit", file=sys.stderr)
            return 1
        return 0

    d = _datum(args)
    if cmd == "validate":
        problems = validate(d)
        doc = {"valid": not problems, "violations": problems}
        _emit(doc, args, "valid" if not problems else "\n".join(problems))
        return 0 if not problems else 1

    gram = build_gram(d, seed=args.seed, jobs=args.jobs)
    space = BlockSpace(d, gram, seed=args.seed)
    if cmd == "chambers":
        _emit({"chambers": _chambers_doc(space)}, args)
        return 0
    if cmd == "gram":
        _emit(gram.to_json(), args)
        return 0
    if cmd == "rank":
        _emit({"rank": space.quotient_dim}, args, str(space.quotient_dim))
        return 0
    if cmd == "basis":
        _emit(_basis_doc(space, args.series_order), args)
        return 0
    if cmd == "factorize":
        doc, ok = _factorize_doc(args, space)
        _emit(doc, args)
        if args.strict and not ok:
            print("audit failed: parity audit", file=sys.stderr)
            return 1
        return 0
    if cmd == "audit":
        report = run_audit(
            d, seed=args.seed, eta_alt=args.eta_alt, kappas=_kappas(args, space.quotient_dim),
            series_order=args.series_order, jobs=args.jobs,
        )
        text = "\n".join(c.line() for c in report.checks)
        _emit(report.to_json(), args, text)
        return 0 if report.ok else 1
    # report
    doc: dict = {"datum": d.to_json(), "violations": validate(d)}
    doc["chambers"] = _chambers_doc(space)
    doc["gram"] = gram.to_json()["entries"]
    doc["rank"] = space.quotient_dim
    doc["radicalDim"] = len(space.radical_basis)
    doc["basis"] = _basis_doc(space, args.series_order)
    ok = True
    if args.labeling:
        fdoc, fok = _factorize_doc(args, space)
        doc["factorization"] = fdoc
        ok = ok and (fok or not args.strict)
    report = run_audit(
        d, seed=args.seed, eta_alt=args.eta_alt, kappas=_kappas(args, space.quotient_dim),
        series_order=args.series_order, jobs=args.jobs,
    )
    doc["audit"] = report.to_json()
    _emit(doc, args)
    return 0 if ok and report.ok else 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
