#!/usr/bin/env python3
"""Full classification run with per-class certificates.

Writes table.json / table.csv / table.md plus one certificate file per
isomorphism-class representative into the output directory.

Usage: python scripts/run_classification.py [outdir] [--jobs N]
"""

import argparse
import json
import pathlib
import sys
import time

from nclift import classify, fk3
from nclift.fulcrum import validate_lambda


def main() -> int:
    parser = argparse.ArgumentParser()
    parser.add_argument("outdir", nargs="?", default="classification_out")
    parser.add_argument("--jobs", type=int, default=1)
    parser.add_argument("--skip-galois", action="store_true")
    args = parser.parse_args()

    out = pathlib.Path(args.outdir)
    out.mkdir(parents=True, exist_ok=True)

    t0 = time.time()
    pairs = classify.enumerate_pairs("gx")
    classes = classify.partition_classes(pairs)
    print(f"{len(pairs)} pairs in {len(classes)} classes "
          f"(sizes {[len(c) for c in classes]}) after {time.time()-t0:.1f}s")

    certs = {}
    for cls in classes:
        rep = next(p for p in cls
                   if validate_lambda(fk3.matrix_from_bits(p.lam_bits), "s3").ok)
        t1 = time.time()
        cert = fk3.certify(rep.lam_bits, rep.mu_bits, galois=not args.skip_galois)
        certs[rep.key] = cert.to_json()
        name = f"cert_class{rep.class_id:02d}_{rep.lam_bits}_{rep.mu_bits}.json"
        (out / name).write_text(json.dumps(cert.to_json(), indent=2, sort_keys=True) + "\n")
        gal = cert.galois
        ranks = f" ranks ({gal.rank_right}, {gal.rank_left})" if gal else ""
        print(f"class {rep.class_id}: ({rep.lam_bits}, {rep.mu_bits}) "
              f"dims ({cert.dim_lifting}, {cert.dim_cleft}){ranks} "
              f"[{time.time()-t1:.2f}s]")

    for fmt, suffix in (("json", "json"), ("csv", "csv"), ("md", "md")):
        (out / f"table.{suffix}").write_text(
            classify.emit_table(classes, fmt, "gx", certs))
    print(f"artifacts in {out}/ after {time.time()-t0:.1f}s total")
    bad = [k for k, doc in certs.items() if not doc.get("valid")]
    if bad:
        print(f"INVALID certificates: {bad}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
