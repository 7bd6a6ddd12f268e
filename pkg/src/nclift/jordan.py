"""The characteristic-zero example over the infinite cyclic group.

Two module generators x1, x2 and two group letters g, G (the inverse) over
the rationals, with three flavors: the plain bosonization of the Jordan
plane, the deformed quotient whose commutation correction lands in the group
algebra, and its primed companion with scalar corrections.  The inverse-letter
commutation rules are derived by solving the action equation rather than
entered by hand, confluence is certified with zero new rules (the PBW
property), and the two coactions are checked to annihilate every defining
relation.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .ncpoly import Alphabet, NcPoly, QQ, TensorPoly
from .rewrite import (
    CONFLUENT,
    CompletionReport,
    ReductionSystem,
    complete,
    count_irreducible,
)
from .fulcrum import apply_algebra_map

BOSONIZATION = "bosonization"
U_JORDAN = "u_jordan"
U_PRIME = "u_prime"
FLAVORS = (BOSONIZATION, U_JORDAN, U_PRIME)

# ordinals in every flavor's alphabet
X1, X2, POS, NEG = 0, 1, 2, 3


def jordan_alphabet(flavor: str) -> Alphabet:
    prefix = "y" if flavor == U_PRIME else "x"
    return Alphabet.from_parts([f"{prefix}1", f"{prefix}2"], ["g", "G"])


def _action_data(flavor: str):
    """Module matrix and group-algebra parts of the generator action.

    ``matrix[i][j]`` is the coefficient of x_{j+1} in g . x_{i+1}; ``hpart[i]``
    is the group-algebra component as {word: coefficient} over the letters
    g, G.  The adjoint action of the abelian group on its group algebra is
    trivial, which is what makes the inverse action solvable below.
    """
    one = Fraction(1)
    matrix = ((one, Fraction(0)), (one, one))
    if flavor == BOSONIZATION:
        hpart = ({}, {})
    elif flavor == U_JORDAN:
        hpart = ({(): one, (POS,): -one}, {})
    elif flavor == U_PRIME:
        hpart = ({(): one}, {})
    else:
        raise ValueError(f"unknown flavor {flavor!r}")
    return matrix, hpart


def _inverse_action(matrix, hpart):
    """Solve g . (G . x) = x for the inverse-letter action.

    With B the inverse of the 2x2 module matrix, the group-algebra part of
    G . x_i is forced to -(B h)_i."""
    (a, b), (c, d) = matrix
    det = a * d - b * c
    inv = ((d / det, -b / det), (-c / det, a / det))
    kpart = []
    for i in range(2):
        acc: dict = {}
        for j in range(2):
            for w, coeff in hpart[j].items():
                val = acc.get(w, Fraction(0)) - inv[i][j] * coeff
                if val:
                    acc[w] = val
                else:
                    acc.pop(w, None)
        kpart.append(acc)
    return inv, tuple(kpart)


@dataclass
class JordanPresentation:
    flavor: str
    alphabet: Alphabet
    system: ReductionSystem
    relations: list
    max_len: int
    _completed: CompletionReport | None = dc_field(default=None, repr=False)

    def complete(self) -> CompletionReport:
        if self._completed is None:
            self._completed = complete(self.system)
        return self._completed


def build_jordan(flavor: str, max_len: int = 8) -> JordanPresentation:
    """Assemble one flavor as a reduction system over the rationals.

    The module-degree-refined order is required here: the deformed
    commutation tails carry the group word g g, which plain deglex would rank
    above the lead g x1."""
    alpha = jordan_alphabet(flavor)
    matrix, hpart = _action_data(flavor)
    inv, kpart = _inverse_action(matrix, hpart)
    one = Fraction(1)
    half = Fraction(1, 2)

    def poly(items):
        return NcPoly.from_terms(alpha, QQ, items)

    rels = [
        poly([((POS, NEG), one), ((), -one)]),
        poly([((NEG, POS), one), ((), -one)]),
    ]
    for letter, mat, hp in ((POS, matrix, hpart), (NEG, inv, kpart)):
        for i in range(2):
            items = [((letter, i), one)]
            for j in range(2):
                if mat[i][j]:
                    items.append(((j, letter), -mat[i][j]))
            for w, coeff in hp[i].items():
                items.append((w + (letter,), -coeff))
            rels.append(poly(items))
    quad = [((X1, X2), one), ((X2, X1), -one), ((X1, X1), -half)]
    if flavor in (U_JORDAN, U_PRIME):
        quad += [((X2,), one), ((X1,), half)]
    rels.append(poly(quad))

    system = ReductionSystem(alpha, QQ, rels, degree_cap=max(max_len, 4), order="xdeglex")
    return JordanPresentation(flavor, alpha, system, rels, max_len)


def pbw_expected_count(length: int) -> int:
    """Count of words x1^a x2^b h with a + b + |h| = length, h a power of one
    group letter.  Summing weight 1 for the empty group part and 2 otherwise
    over a + b = length - m gives (length+1) + length(length+1) = (length+1)^2.
    """
    return (length + 1) + 2 * (length * (length + 1) // 2)


@dataclass
class PbwReport:
    flavor: str
    status: str
    new_rule_count: int
    per_length: list
    expected: list
    total: int
    ok: bool


def verify_pbw(pres: JordanPresentation) -> PbwReport:
    """Complete the presentation and compare irreducible-word counts per
    length with the closed formula; zero new rules is part of the contract."""
    report = pres.complete()
    counts = count_irreducible(report.system, pres.max_len) \
        if report.status == CONFLUENT else None
    per_length = counts.per_length if counts else []
    expected = [pbw_expected_count(l) for l in range(pres.max_len + 1)]
    ok = (report.status == CONFLUENT and not report.new_rules
          and per_length == expected)
    return PbwReport(pres.flavor, report.status, len(report.new_rules),
                     per_length, expected, sum(per_length), ok)


def half_integer_coefficients(pres: JordanPresentation) -> bool:
    """Every coefficient in every completed rule has denominator dividing 2."""
    report = pres.complete()
    for rule in report.system.rules():
        for coeff in rule.tail.terms.values():
            if Fraction(coeff).denominator not in (1, 2):
                return False
    return True


# ---------------------------------------------------------------------------
# coactions
# ---------------------------------------------------------------------------

@dataclass
class JordanCoactionReport:
    max_len: int
    checked: int
    failures: list

    @property
    def ok(self) -> bool:
        return not self.failures


def _coaction_letter_images(left: Alphabet, right: Alphabet) -> dict:
    """y_i -> (module i) (x) 1 + g (x) (module i); g, G diagonal.

    The same ordinal picture serves both coactions; the target pair decides
    whether the first factor is read in the deformed or primed algebra."""
    f = QQ
    one = Fraction(1)
    imgs = {
        X1: TensorPoly(left, right, f, {((X1,), ()): one, ((POS,), (X1,)): one}),
        X2: TensorPoly(left, right, f, {((X2,), ()): one, ((POS,), (X2,)): one}),
        POS: TensorPoly(left, right, f, {((POS,), (POS,)): one}),
        NEG: TensorPoly(left, right, f, {((NEG,), (NEG,)): one}),
    }
    return imgs


def jordan_coactions(max_len: int = 6) -> JordanCoactionReport:
    """Check that both coactions annihilate every defining relation of the
    primed flavor, in the reduced tensor targets."""
    prime = build_jordan(U_PRIME, max_len)
    deformed = build_jordan(U_JORDAN, max_len)
    bos = build_jordan(BOSONIZATION, max_len)
    for pres in (prime, deformed, bos):
        if pres.complete().status != CONFLUENT:
            raise RuntimeError(f"{pres.flavor} did not complete")
    right_imgs = _coaction_letter_images(prime.alphabet, bos.alphabet)
    left_imgs = _coaction_letter_images(deformed.alphabet, prime.alphabet)
    failures = []
    checked = 0
    for rel in prime.relations:
        checked += 1
        img_r = apply_algebra_map(rel, right_imgs, prime.alphabet, bos.alphabet,
                                  prime.complete().system, bos.complete().system)
        if img_r:
            failures.append(("rho_r", str(rel)))
        img_l = apply_algebra_map(rel, left_imgs, deformed.alphabet, prime.alphabet,
                                  deformed.complete().system, prime.complete().system)
        if img_l:
            failures.append(("rho_l", str(rel)))
    return JordanCoactionReport(max_len, checked, failures)
