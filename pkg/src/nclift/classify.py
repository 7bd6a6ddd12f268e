"""Exhaustive enumeration of valid parameter pairs over GF(2), the
isomorphism relation between the resulting deformations, and table emission.

A pair is a 3x3 lambda matrix satisfying the cocycle constraints together
with a 3x3 mu matrix satisfying the orbit and joint constraints.  Two pairs
give isomorphic deformations exactly when a rack automorphism and three
shift scalars transform one into the other; the search is a 48-candidate
brute force per ordered pair and the partition is a union-find over the
symmetric closure of the witness relation.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass

from .rackgroup import RackAutomorphism, dihedral_rack, rack_automorphisms
from .fulcrum import GX_MODE, S3_MODE, validate_lambda
from .fk3 import matrix_from_bits, validate_mu

_RACK = dihedral_rack()
_AUTOS = tuple(rack_automorphisms(_RACK))


@dataclass
class PairRecord:
    lam_bits: str
    mu_bits: str
    mode: str
    class_id: int | None = None

    @property
    def key(self) -> tuple:
        return (self.lam_bits, self.mu_bits)


@dataclass(frozen=True)
class IsoWitness:
    """A rack automorphism and shift scalars carrying one pair to another.

    Over GF(2) the overall scale is forced to 1, so a witness is the
    permutation plus the triple (shift_0, shift_1, shift_2)."""

    auto: RackAutomorphism
    shifts: tuple


def _all_bits():
    return (format(n, "09b") for n in range(512))


def enumerate_pairs(mode: str = GX_MODE) -> list[PairRecord]:
    """Brute force over all 512 x 512 candidate matrices, deterministically
    ordered by (lambda bits, mu bits)."""
    if mode not in (GX_MODE, S3_MODE):
        raise ValueError(f"unknown mode {mode!r}")
    out: list[PairRecord] = []
    for lam_bits in _all_bits():
        check = validate_lambda(matrix_from_bits(lam_bits), mode)
        if not check.ok:
            continue
        for mu_bits in _all_bits():
            if validate_mu(matrix_from_bits(mu_bits), check.matrix).ok:
                out.append(PairRecord(lam_bits, mu_bits, mode))
    return out


def _entries(bits: str) -> list:
    return matrix_from_bits(bits)


def iso_related(p: PairRecord, q: PairRecord) -> IsoWitness | None:
    """First witness (automorphism, shifts) mapping p to q, or None.

    The three conditions, with phi the automorphism, s the shifts and the
    scale pinned to 1 over GF(2):
      q.lambda[phi(i),phi(j)] = p.lambda[i,j] + s[i|>j] + s[j]
      q.mu[phi(i),phi(j)]     = p.mu[i,j] + s[i]s[j] + s[i|>j]s[i] + s[j]s[i|>j]
      0 = s[i] q.lambda[phi(i),phi(j)] + s[i|>j] q.lambda[phi(i|>j),phi(i)]
            + s[j] q.lambda[phi(j),phi(i|>j)]
    """
    if p.mode != q.mode:
        raise ValueError("pairs from different modes")
    lp, mp = _entries(p.lam_bits), _entries(p.mu_bits)
    lq, mq = _entries(q.lam_bits), _entries(q.mu_bits)
    r = _RACK
    for auto in _AUTOS:
        for s0 in (0, 1):
            for s1 in (0, 1):
                for s2 in (0, 1):
                    s = (s0, s1, s2)
                    ok = True
                    for i in range(3):
                        for j in range(3):
                            ij = r.act(i, j)
                            if lq[auto(i)][auto(j)] != (lp[i][j] + s[ij] + s[j]) % 2:
                                ok = False
                                break
                            mu_shift = (s[i] * s[j] + s[ij] * s[i] + s[j] * s[ij]) % 2
                            if mq[auto(i)][auto(j)] != (mp[i][j] + mu_shift) % 2:
                                ok = False
                                break
                            third = (
                                s[i] * lq[auto(i)][auto(j)]
                                + s[ij] * lq[auto(ij)][auto(i)]
                                + s[j] * lq[auto(j)][auto(ij)]
                            ) % 2
                            if third != 0:
                                ok = False
                                break
                        if not ok:
                            break
                    if ok:
                        return IsoWitness(auto, s)
    return None


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, x: int, y: int) -> None:
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[max(rx, ry)] = min(rx, ry)


def partition_classes(pairs: list[PairRecord]) -> list[list[PairRecord]]:
    """Union-find over the symmetric closure of the witness relation.

    Classes come back sorted by descending size, ties broken by the smallest
    (lambda, mu) key; class ids are assigned in that order.  The result does
    not depend on the input order of ``pairs``.
    """
    items = sorted(pairs, key=lambda p: p.key)
    n = len(items)
    uf = _UnionFind(n)
    for a in range(n):
        for b in range(a + 1, n):
            # defensively take the symmetric closure rather than assuming
            # witnesses invert
            if iso_related(items[a], items[b]) or iso_related(items[b], items[a]):
                uf.union(a, b)
    groups: dict = {}
    for idx in range(n):
        groups.setdefault(uf.find(idx), []).append(items[idx])
    classes = sorted(groups.values(), key=lambda c: (-len(c), c[0].key))
    for cid, cls in enumerate(classes):
        for rec in cls:
            rec.class_id = cid
    return classes


# ---------------------------------------------------------------------------
# table emission
# ---------------------------------------------------------------------------

JSON_FORMAT, CSV_FORMAT, MARKDOWN_FORMAT = "json", "csv", "md"


def _row(rec: PairRecord, certificates: dict | None) -> dict:
    row = {
        "lambda": rec.lam_bits,
        "mu": rec.mu_bits,
        "class": rec.class_id,
        "dim": None,
        "galois_r": None,
        "galois_l": None,
    }
    cert = (certificates or {}).get(rec.key)
    if cert is not None:
        row["dim"] = cert.get("dim_lifting")
        gal = cert.get("galois")
        if gal:
            row["galois_r"] = gal.get("rank_right")
            row["galois_l"] = gal.get("rank_left")
    return row


def emit_table(classes: list[list[PairRecord]], fmt: str = JSON_FORMAT,
               mode: str = GX_MODE, certificates: dict | None = None) -> str:
    """Render the classification, one row per pair, grouped by class."""
    rows = [_row(rec, certificates) for cls in classes for rec in cls]
    if fmt == JSON_FORMAT:
        doc = {
            "schema": 1,
            "group": mode,
            "pair_count": len(rows),
            "class_count": len(classes),
            "class_sizes": sorted((len(c) for c in classes), reverse=True),
            "pairs": rows,
        }
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if fmt == CSV_FORMAT:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["lambda", "mu", "class", "dim", "galois_r", "galois_l"])
        for row in rows:
            writer.writerow([row["lambda"], row["mu"], row["class"],
                             row["dim"] if row["dim"] is not None else "",
                             row["galois_r"] if row["galois_r"] is not None else "",
                             row["galois_l"] if row["galois_l"] is not None else ""])
        return buf.getvalue()
    if fmt == MARKDOWN_FORMAT:
        lines = ["| lambda | mu | class | dim | galois_r | galois_l |",
                 "| --- | --- | --- | --- | --- | --- |"]
        for row in rows:
            lines.append("| {} | {} | {} | {} | {} | {} |".format(
                row["lambda"], row["mu"], row["class"],
                row["dim"] if row["dim"] is not None else "",
                row["galois_r"] if row["galois_r"] is not None else "",
                row["galois_l"] if row["galois_l"] is not None else ""))
        return "\n".join(lines) + "\n"
    raise ValueError(f"unsupported format {fmt!r}")


def read_table(text: str) -> dict:
    """Round-trip reader for the JSON table."""
    doc = json.loads(text)
    if doc.get("schema") != 1:
        raise ValueError("unknown table schema")
    return doc
