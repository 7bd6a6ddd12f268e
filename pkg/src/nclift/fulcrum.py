"""Builders and validators for the pointed smash-product algebras.

Three flavors of presentation are generated from a rack, a finite quotient
group and a 3x3 cocycle matrix: the deformed product T_lambda where group
letters commute past module letters with a correction supported on group
terms, its primed companion T'_lambda whose correction is a plain scalar, and
the undeformed bosonization.  The module also hosts the comultiplication as an
algebra map into the tensor square, the skew-primitivity test, and the two
coactions connecting the three flavors.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .ncpoly import Alphabet, F2, Field, NcPoly, TensorPoly, Word
from .rackgroup import GroupTable, RackData, conjugation_action, dihedral_rack, s3_quotient
from .rewrite import CONFLUENT, CompletionReport, ReductionSystem, complete, reduce_tensor

T_LAMBDA = "t_lambda"
T_PRIME_LAMBDA = "t_prime_lambda"
BOSONIZATION = "bosonization"
FLAVORS = (T_LAMBDA, T_PRIME_LAMBDA, BOSONIZATION)

GX_MODE = "gx"
S3_MODE = "s3"


@dataclass(frozen=True)
class PointedYDData:
    """A rack realized as a conjugacy class of a finite group.

    The degree of the generator x_i is the distinguished element g_i, and the
    module action of a group element on indices is conjugation.
    """

    rack: RackData
    group: GroupTable

    def __post_init__(self):
        for i in range(self.rack.size):
            for g in range(self.group.order):
                # degree compatibility: deg(g . x_i) = g g_i g^{-1}
                j = conjugation_action(g, i, self.group)
                conj = self.group.mul(self.group.mul(g, self.group.distinguished[i]),
                                      self.group.inv(g))
                if self.group.distinguished[j] != conj:
                    raise ValueError("Yetter-Drinfeld compatibility fails")

    def degree(self, i: int) -> int:
        return self.group.distinguished[i]

    def act(self, g: int, i: int) -> int:
        return conjugation_action(g, i, self.group)


def standard_yd_data() -> PointedYDData:
    return PointedYDData(dihedral_rack(), s3_quotient())


# ---------------------------------------------------------------------------
# cocycle matrices
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LambdaMatrix:
    """A 3x3 matrix of scalars lambda_{i,j} = lambda(g_i, x_j) satisfying the
    cocycle compatibility with the rack relations."""

    entries: tuple
    field: Field
    mode: str

    def __getitem__(self, ij) -> object:
        i, j = ij
        return self.entries[i][j]

    def is_zero(self) -> bool:
        z = self.field.zero
        return all(c == z for row in self.entries for c in row)


@dataclass
class LambdaCheck:
    ok: bool
    matrix: LambdaMatrix | None
    violations: list


def _as_entries(m: Sequence[Sequence], field: Field) -> tuple:
    rows = tuple(tuple(field.from_int(c) if isinstance(c, int) else c for c in row)
                 for row in m)
    if len(rows) != 3 or any(len(r) != 3 for r in rows):
        raise ValueError("expected a 3x3 matrix")
    return rows


def validate_lambda(m: Sequence[Sequence], mode: str = GX_MODE,
                    field: Field = F2, rack: RackData | None = None) -> LambdaCheck:
    """Accept m iff lambda_{i,j|>k} + lambda_{j,k} = lambda_{i|>j,i|>k} + lambda_{i,k}
    for all index triples; in S3 mode additionally lambda_{i,j} = lambda_{i,i|>j}."""
    r = rack if rack is not None else dihedral_rack()
    e = _as_entries(m, field)
    f = field
    violations = []
    for i in range(3):
        for j in range(3):
            for k in range(3):
                lhs = f.add(e[i][r.act(j, k)], e[j][k])
                rhs = f.add(e[r.act(i, j)][r.act(i, k)], e[i][k])
                if lhs != rhs:
                    violations.append((i, j, k))
    if mode == S3_MODE:
        for i in range(3):
            for j in range(3):
                if e[i][j] != e[i][r.act(i, j)]:
                    violations.append(("s3", i, j))
    elif mode != GX_MODE:
        raise ValueError(f"unknown mode {mode!r}")
    if violations:
        return LambdaCheck(False, None, violations)
    return LambdaCheck(True, LambdaMatrix(e, field, mode), [])


def satisfies_s3_condition(lam: LambdaMatrix, rack: RackData | None = None) -> bool:
    r = rack if rack is not None else dihedral_rack()
    return all(lam[i, j] == lam[i, r.act(i, j)] for i in range(3) for j in range(3))


def extend_lambda(lam: LambdaMatrix, word: Iterable[int], j: int,
                  rack: RackData | None = None):
    """lambda(g, x_j) for g given as a word in the rack generators.

    Folds the cocycle law lambda(gh, x) = lambda(g, h . x) + lambda(h, x);
    the value is independent of the chosen word for a fixed group element
    whenever the matrix is valid.
    """
    r = rack if rack is not None else dihedral_rack()
    f = lam.field
    total = f.zero
    target = j
    for i in reversed(tuple(word)):
        total = f.add(total, lam[i, target])
        target = r.act(i, target)
    return total


# ---------------------------------------------------------------------------
# presentations
# ---------------------------------------------------------------------------

def fulcrum_alphabet(group: GroupTable, module_prefix: str = "x") -> Alphabet:
    """Module letters first, then one letter per group element, identity first."""
    module_ids = [f"{module_prefix}{i}" for i in range(group.rack.size)]
    group_ids = [group.name(e) for e in range(group.order)]
    return Alphabet.from_parts(module_ids, group_ids)


class FulcrumPresentation:
    """One flavor of deformed smash product, as a reduction system.

    Rules: identity-letter elimination, the full group multiplication table,
    and one commutation rule per (non-identity group element, module letter).
    """

    def __init__(self, flavor: str, yd: PointedYDData, lam: LambdaMatrix,
                 degree_cap: int = 8, module_prefix: str | None = None):
        if flavor not in FLAVORS:
            raise ValueError(f"unknown flavor {flavor!r}")
        self.flavor = flavor
        self.yd = yd
        self.lam = lam
        self.field = lam.field
        prefix = module_prefix or ("y" if flavor == T_PRIME_LAMBDA else "x")
        self.alphabet = fulcrum_alphabet(yd.group, prefix)
        self.degree_cap = degree_cap
        self.relations = self._build_relations()
        self._completed: CompletionReport | None = None

    # ordinals: module letters 0..n-1, then group element e -> n + e
    def module_ordinal(self, i: int) -> int:
        return i

    def group_ordinal(self, e: int) -> int:
        return self.yd.group.rack.size + e

    def group_word(self, e: int) -> Word:
        """The (possibly empty) word for a group element letter."""
        if e == self.yd.group.identity:
            return ()
        return (self.group_ordinal(e),)

    def _poly(self, items) -> NcPoly:
        return NcPoly.from_terms(self.alphabet, self.field, items)

    def _build_relations(self) -> list[NcPoly]:
        yd, f = self.yd, self.field
        G = yd.group
        one = f.one
        rels: list[NcPoly] = []
        # identity letter collapses to the empty word
        rels.append(self._poly([((self.group_ordinal(G.identity),), one), ((), f.neg(one))]))
        nonid = [e for e in range(G.order) if e != G.identity]
        for g in nonid:
            for h in nonid:
                rels.append(self._poly([
                    ((self.group_ordinal(g), self.group_ordinal(h)), one),
                    (self.group_word(G.mul(g, h)), f.neg(one)),
                ]))
        for g in nonid:
            for i in range(yd.rack.size):
                gi = yd.act(g, i)
                lam_val = extend_lambda(self.lam, G.words[g], i, yd.rack)
                items = [((self.group_ordinal(g), self.module_ordinal(i)), one),
                         ((self.module_ordinal(gi), self.group_ordinal(g)), f.neg(one))]
                if self.flavor == T_LAMBDA and lam_val != f.zero:
                    # g x_i = x_{g.i} g + lambda(g, x_i) (1 - g_{g.i}) g
                    items.append(((self.group_ordinal(g),), f.neg(lam_val)))
                    u = G.mul(yd.degree(gi), g)
                    items.append((self.group_word(u), lam_val))
                elif self.flavor == T_PRIME_LAMBDA and lam_val != f.zero:
                    # g y_i = y_{g.i} g + lambda(g, x_i) g
                    items.append(((self.group_ordinal(g),), f.neg(lam_val)))
                rels.append(self._poly(items))
        return rels

    def system(self) -> ReductionSystem:
        """A fresh, uncompleted reduction system for the presentation."""
        return ReductionSystem(self.alphabet, self.field, self.relations,
                               degree_cap=self.degree_cap)

    def complete(self) -> CompletionReport:
        if self._completed is None:
            self._completed = complete(self.system())
        return self._completed


def build_presentation(yd: PointedYDData, lam: LambdaMatrix, flavor: str,
                       degree_cap: int = 8) -> FulcrumPresentation:
    return FulcrumPresentation(flavor, yd, lam, degree_cap)


# ---------------------------------------------------------------------------
# comultiplication and skew-primitivity
# ---------------------------------------------------------------------------

def apply_algebra_map(p: NcPoly, images: dict, left: Alphabet, right: Alphabet,
                      left_sys: ReductionSystem | None = None,
                      right_sys: ReductionSystem | None = None) -> TensorPoly:
    """Extend letter images multiplicatively to a polynomial.

    ``images`` maps each ordinal of ``p.alphabet`` to a TensorPoly over
    (left, right).  Factors are reduced after every letter when systems are
    supplied, which keeps intermediate supports small and lands the result in
    normal form.
    """
    f = p.field
    out = TensorPoly.zero(left, right, f)
    for word, coeff in p.terms.items():
        acc = TensorPoly(left, right, f, {((), ()): f.one})
        for letter in word:
            acc = acc * images[letter]
            if left_sys is not None:
                acc = reduce_tensor(acc, left_sys, right_sys)
        out = out + acc.scale(coeff)
    if left_sys is not None:
        out = reduce_tensor(out, left_sys, right_sys)
    return out


def comultiplication_images(pres: FulcrumPresentation) -> dict:
    """Delta on generators: x_i -> x_i (x) 1 + g_i (x) x_i, g -> g (x) g."""
    a, f = pres.alphabet, pres.field
    imgs: dict = {}
    for i in range(pres.yd.rack.size):
        xi = (pres.module_ordinal(i),)
        gi = (pres.group_ordinal(pres.yd.degree(i)),)
        imgs[pres.module_ordinal(i)] = TensorPoly(a, a, f, {(xi, ()): f.one, (gi, xi): f.one})
    for e in range(pres.yd.group.order):
        ge = (pres.group_ordinal(e),)
        imgs[pres.group_ordinal(e)] = TensorPoly(a, a, f, {(ge, ge): f.one})
    return imgs


def check_skew_primitive(pres: FulcrumPresentation, rel: NcPoly, grp: int) -> bool:
    """Test Delta(rel) = rel (x) 1 + g (x) rel after tensor-factor reduction."""
    if not (0 <= grp < pres.yd.group.order):
        raise ValueError(f"group element {grp} out of range")
    report = pres.complete()
    if report.status != CONFLUENT:
        raise ValueError(f"presentation did not complete: {report.status}")
    sys_ = report.system
    image = apply_algebra_map(rel, comultiplication_images(pres),
                              pres.alphabet, pres.alphabet, sys_, sys_)
    nf_rel = sys_.normal_form(rel)
    expected = TensorPoly.of(nf_rel, NcPoly.one(pres.alphabet, pres.field))
    gword = NcPoly.term(pres.alphabet, pres.field, pres.group_word(grp))
    expected = expected + reduce_tensor(TensorPoly.of(gword, nf_rel), sys_, sys_)
    return image == expected


# ---------------------------------------------------------------------------
# coactions
# ---------------------------------------------------------------------------

@dataclass
class CoactionMaps:
    """The right and left comodule-algebra structures on the primed flavor.

    rho_r lands in T'_lambda (x) bosonization, rho_l in T_lambda (x)
    T'_lambda; both are verified to send every defining relation of the
    primed presentation to zero.
    """

    prime: FulcrumPresentation
    lifting: FulcrumPresentation
    bos: FulcrumPresentation
    rho_r_images: dict
    rho_l_images: dict

    def apply_r(self, p: NcPoly) -> TensorPoly:
        return apply_algebra_map(p, self.rho_r_images, self.prime.alphabet,
                                 self.bos.alphabet, self.prime.complete().system,
                                 self.bos.complete().system)

    def apply_l(self, p: NcPoly) -> TensorPoly:
        return apply_algebra_map(p, self.rho_l_images, self.lifting.alphabet,
                                 self.prime.alphabet, self.lifting.complete().system,
                                 self.prime.complete().system)


def coaction_images(source: FulcrumPresentation, left: FulcrumPresentation,
                    right: FulcrumPresentation) -> dict:
    """Letter images shared by both coactions: module letter i maps to
    (module i) (x) 1 + (degree letter) (x) (module i), group letters to the
    diagonal.  Which coaction this realizes (y -> y (x) 1 + g (x) x versus
    y -> x (x) 1 + g (x) y) is carried entirely by the target pair
    (left, right), since all three flavors share one ordinal layout."""
    f = source.field
    imgs: dict = {}
    for i in range(source.yd.rack.size):
        mi = (i,)
        gi_left = (left.group_ordinal(source.yd.degree(i)),)
        imgs[i] = TensorPoly(left.alphabet, right.alphabet, f,
                             {(mi, ()): f.one, (gi_left, mi): f.one})
    for e in range(source.yd.group.order):
        ge = (source.group_ordinal(e),)
        imgs[source.group_ordinal(e)] = TensorPoly(left.alphabet, right.alphabet, f,
                                                   {(ge, ge): f.one})
    return imgs


def coaction_maps(yd: PointedYDData, lam: LambdaMatrix,
                  degree_cap: int = 8) -> CoactionMaps:
    """Build and verify the two coactions of the primed flavor.

    Raises ValueError naming the offending rule if either map fails to be an
    algebra map; for a valid lambda this cannot happen.
    """
    prime = FulcrumPresentation(T_PRIME_LAMBDA, yd, lam, degree_cap)
    lifting = FulcrumPresentation(T_LAMBDA, yd, lam, degree_cap)
    bos = FulcrumPresentation(BOSONIZATION, yd, lam, degree_cap)
    maps = CoactionMaps(
        prime, lifting, bos,
        rho_r_images=coaction_images(prime, prime, bos),
        rho_l_images=coaction_images(prime, lifting, prime),
    )
    for rel in prime.relations:
        if maps.apply_r(rel):
            raise ValueError(f"rho_r is not an algebra map on rule: {rel}")
        rel_l = NcPoly(lifting.alphabet, lifting.field, rel.terms)
        if maps.apply_l(rel_l):
            raise ValueError(f"rho_l is not an algebra map on rule: {rel}")
    return maps
