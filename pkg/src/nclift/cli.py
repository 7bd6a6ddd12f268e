"""Command-line entry points tying the pipelines together.

Three console scripts are installed: ``fk3`` (classification and per-pair
verification over GF(2)), ``jordan`` (the characteristic-zero example), and
``fulcrum`` (the raw completion engine on a presentation file).  All JSON
artifacts carry ``"schema": 1`` and are byte-stable across runs.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .ncpoly import Alphabet, F2, QQ, parse_poly, prime_field
from .rackgroup import s3_quotient
from .rewrite import ReductionSystem, complete
from . import classify as classify_mod
from . import fk3 as fk3_mod
from . import jordan as jordan_mod

DEGREE_CAP_ENV = "FULCRUM_DEGREE_CAP"


@dataclass
class RunConfig:
    command: str
    group_mode: str = "gx"
    out_path: str | None = None
    out_format: str = "json"
    certify: bool = False
    galois: bool = False
    jobs: int = 1
    max_len: int = 6
    lam_bits: str = ""
    mu_bits: str = ""
    presentation: str = ""
    degree_cap: int | None = None


def _degree_cap(default: int = 8) -> int:
    env = os.environ.get(DEGREE_CAP_ENV)
    return int(env) if env else default


def _dump_json(doc: dict, path: str | None) -> None:
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _certify_worker(args) -> tuple:
    lam_bits, mu_bits, galois = args
    cert = fk3_mod.certify(lam_bits, mu_bits, group_mode="s3", galois=galois,
                           degree_cap=_degree_cap())
    return (lam_bits, mu_bits), cert.to_json()


# ---------------------------------------------------------------------------
# fk3
# ---------------------------------------------------------------------------

def _fk3_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fk3",
                                     description="Classify and verify the GF(2) deformations")
    sub = parser.add_subparsers(dest="command", required=True)

    p_cls = sub.add_parser("classify", help="enumerate pairs and isomorphism classes")
    p_cls.add_argument("--group", choices=["gx", "s3"], default="gx")
    p_cls.add_argument("--out", default=None)
    p_cls.add_argument("--format", choices=["json", "csv", "md"], default="json")
    p_cls.add_argument("--certify", action="store_true",
                       help="run dimension and Galois certificates per class representative")
    p_cls.add_argument("--jobs", type=int, default=1)

    p_ver = sub.add_parser("verify", help="verify one (lambda, mu) pair")
    p_ver.add_argument("--lambda", dest="lam", required=True, metavar="BITS")
    p_ver.add_argument("--mu", required=True, metavar="BITS")
    p_ver.add_argument("--group", choices=["s3"], default="s3")
    p_ver.add_argument("--galois", action="store_true")
    p_ver.add_argument("--json", dest="json_out", default=None)

    sub.add_parser("nichols-dim", help="irreducible-word count of the quadratic ideal")
    return parser


def _fk3_classify(cfg: RunConfig) -> int:
    pairs = classify_mod.enumerate_pairs(cfg.group_mode)
    classes = classify_mod.partition_classes(pairs)
    certificates: dict = {}
    if cfg.certify:
        reps = []
        for cls in classes:
            rep = next(p for p in cls
                       if fk3_mod.validate_lambda(
                           fk3_mod.matrix_from_bits(p.lam_bits), "s3").ok)
            reps.append((rep.lam_bits, rep.mu_bits, True))
        if cfg.jobs > 1:
            with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
                for key, doc in pool.map(_certify_worker, reps):
                    certificates[key] = doc
        else:
            for args in reps:
                key, doc = _certify_worker(args)
                certificates[key] = doc
    table = classify_mod.emit_table(classes, cfg.out_format, cfg.group_mode, certificates)
    if cfg.out_path:
        with open(cfg.out_path, "w") as fh:
            fh.write(table)
    else:
        sys.stdout.write(table)
    n_pairs = sum(len(c) for c in classes)
    print(f"pairs: {n_pairs}  classes: {len(classes)}", file=sys.stderr)
    if cfg.group_mode == "gx" and (n_pairs, len(classes)) != (32, 10):
        return 1
    if cfg.certify and any(not doc.get("valid") for doc in certificates.values()):
        return 1
    return 0


def _fk3_verify(cfg: RunConfig) -> int:
    cert = fk3_mod.certify(cfg.lam_bits, cfg.mu_bits, group_mode="s3",
                           galois=cfg.galois, degree_cap=_degree_cap())
    doc = cert.to_json()
    # the finite group backing the run, for reproducibility
    doc["group_table"] = s3_quotient().to_json()
    _dump_json(doc, cfg.out_path)
    return 0 if cert.valid else 1


def fk3_main(argv=None) -> int:
    args = _fk3_parser().parse_args(argv)
    if args.command == "classify":
        cfg = RunConfig("classify", group_mode=args.group, out_path=args.out,
                        out_format=args.format, certify=args.certify,
                        galois=True, jobs=args.jobs)
        return _fk3_classify(cfg)
    if args.command == "verify":
        cfg = RunConfig("verify", lam_bits=args.lam, mu_bits=args.mu,
                        galois=args.galois, out_path=args.json_out)
        try:
            return _fk3_verify(cfg)
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 1
    if args.command == "nichols-dim":
        dim = fk3_mod.nichols_dimension()
        print(dim)
        return 0 if dim == 12 else 1
    raise AssertionError(args.command)


# ---------------------------------------------------------------------------
# jordan
# ---------------------------------------------------------------------------

def _jordan_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="jordan",
                                     description="Verify the characteristic-zero example")
    sub = parser.add_subparsers(dest="command", required=True)
    p_ver = sub.add_parser("verify", help="confluence, word counts and coactions")
    p_ver.add_argument("--max-len", type=int, default=6)
    p_ver.add_argument("--json", dest="json_out", default=None)
    return parser


def jordan_main(argv=None) -> int:
    args = _jordan_parser().parse_args(argv)
    max_len = args.max_len
    reports = [jordan_mod.verify_pbw(jordan_mod.build_jordan(fl, max_len))
               for fl in jordan_mod.FLAVORS]
    coactions = jordan_mod.jordan_coactions(max_len)
    doc = {
        "schema": 1,
        "max_len": max_len,
        "flavors": {
            rep.flavor: {
                "status": rep.status,
                "new_rules": rep.new_rule_count,
                "per_length": rep.per_length,
                "expected": rep.expected,
                "total": rep.total,
                "ok": rep.ok,
            }
            for rep in reports
        },
        "coactions": {
            "checked": coactions.checked,
            "failures": coactions.failures,
            "ok": coactions.ok,
        },
    }
    _dump_json(doc, args.json_out)
    total = reports[0].total
    print(f"irreducible words up to length {max_len}: {total}", file=sys.stderr)
    ok = all(rep.ok for rep in reports) and coactions.ok
    return 0 if ok else 1


# ---------------------------------------------------------------------------
# fulcrum
# ---------------------------------------------------------------------------

def _fulcrum_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fulcrum",
                                     description="Raw completion engine on a presentation file")
    sub = parser.add_subparsers(dest="command", required=True)
    p_c = sub.add_parser("complete", help="complete a presentation file")
    p_c.add_argument("presentation", help="JSON presentation path")
    p_c.add_argument("--json", dest="json_out", default=None)
    p_c.add_argument("--max-len", type=int, default=None,
                     help="also report irreducible-word counts up to this length")
    return parser


def _load_field(name: str):
    if name in ("f2", "F2"):
        return F2
    if name in ("rational", "qq", "QQ"):
        return QQ
    if name.startswith("fp:"):
        return prime_field(int(name.split(":", 1)[1]))
    raise ValueError(f"unknown field {name!r}")


def load_presentation(path: str, degree_cap_override: int | None = None) -> ReductionSystem:
    """Read the presentation file format:
    {"alphabet": [{"id": "x0", "sort": "module"}, ...],
     "relations": ["x0 x1 + x2 x0 + x1 x2", ...],
     "degree_cap": 8, "field": "f2", "order": "deglex"}.
    """
    with open(path) as fh:
        doc = json.load(fh)
    alphabet = Alphabet([(g["id"], g["sort"]) for g in doc["alphabet"]])
    field = _load_field(doc.get("field", "f2"))
    cap = degree_cap_override or doc.get("degree_cap", _degree_cap())
    order = doc.get("order", "deglex")
    relations = [parse_poly(text, alphabet, field) for text in doc["relations"]]
    return ReductionSystem(alphabet, field, relations, degree_cap=cap, order=order)


def fulcrum_main(argv=None) -> int:
    args = _fulcrum_parser().parse_args(argv)
    try:
        sys_ = load_presentation(args.presentation)
    except (OSError, KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    report = complete(sys_)
    doc = report.to_json()
    if args.max_len is not None and report.status == "CONFLUENT":
        from .rewrite import count_irreducible
        counts = count_irreducible(report.system, args.max_len)
        doc["irreducible"] = {
            "per_length": counts.per_length,
            "total": counts.total,
            "finite": counts.finite,
        }
    _dump_json(doc, args.json_out)
    return 0 if report.status == "CONFLUENT" else 1


def run(config: RunConfig) -> int:
    """Programmatic dispatcher mirroring the console scripts."""
    if config.command == "classify":
        return _fk3_classify(config)
    if config.command == "verify":
        return _fk3_verify(config)
    if config.command == "nichols-dim":
        return fk3_main(["nichols-dim"])
    if config.command == "jordan-verify":
        args = ["verify", "--max-len", str(config.max_len)]
        if config.out_path:
            args += ["--json", config.out_path]
        return jordan_main(args)
    if config.command == "complete":
        args = ["complete", config.presentation]
        if config.out_path:
            args += ["--json", config.out_path]
        return fulcrum_main(args)
    raise ValueError(f"unknown command {config.command!r}")


def main(argv=None) -> int:
    """Dispatch on the program name so one module backs all three scripts."""
    prog = os.path.basename(sys.argv[0])
    if prog.startswith("fk3"):
        return fk3_main(argv)
    if prog.startswith("jordan"):
        return jordan_main(argv)
    return fulcrum_main(argv)


if __name__ == "__main__":
    sys.exit(main())
