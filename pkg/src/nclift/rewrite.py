"""Reduction systems, normal forms, ambiguity analysis and bounded completion.

The engine implements word rewriting in a free algebra: a rule replaces its
leading word by a strictly smaller polynomial, smaller in the monomial order
the system was built with.  Completion repeatedly resolves overlap ambiguities
and orients the differences as new rules until the system is locally
confluent, the algebra collapses to zero, or a lead would exceed the degree
cap.  Irreducible-word enumeration and a GF(2) rank kernel round out the
module; every basis and dimension claim downstream rests on these.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Callable, Iterable, Sequence

from .ncpoly import (
    Alphabet,
    Field,
    NcPoly,
    TensorPoly,
    Word,
    deglex_key,
    xdeglex_key,
)

CONFLUENT = "CONFLUENT"
COLLAPSED_TO_ZERO = "COLLAPSED_TO_ZERO"
CAP_EXCEEDED = "CAP_EXCEEDED"

#: Hard ceiling on single-call rewrite steps; order-compatible rules cannot
#: hit it, but the engine guards against ill-formed input anyway.
STEP_BUDGET = 2_000_000


class CapExceededError(RuntimeError):
    """A completion or reduction exceeded its configured bound."""


@dataclass(frozen=True)
class RewriteRule:
    """An oriented rule lead -> tail with every tail word below the lead."""

    lead: Word
    tail: NcPoly

    def as_poly(self) -> NcPoly:
        """The relation polynomial lead - tail."""
        one = self.tail.field.one
        return NcPoly.term(self.tail.alphabet, self.tail.field, self.lead, one) - self.tail

    def __str__(self) -> str:
        return f"{self.tail.alphabet.word_str(self.lead)} -> {self.tail}"


@dataclass(frozen=True)
class Ambiguity:
    """Overlap (lead1 = AB, lead2 = BC, B nonempty) or inclusion of leads."""

    lead1: Word
    lead2: Word
    a: Word
    b: Word
    c: Word
    kind: str = "overlap"

    @property
    def word(self) -> Word:
        return self.a + self.b + self.c

    def key(self):
        return (self.lead1, self.lead2, self.a, self.b, self.c, self.kind)


class ReductionSystem:
    """Oriented rewrite rules over a fixed alphabet and monomial order.

    ``order`` is ``"deglex"`` (length, then left-to-right ordinal) or
    ``"xdeglex"`` (module-letter count first, then deglex); the latter is
    required when tails may carry group-only words as long as the lead.
    Rules are kept inter-reduced.  A system under construction or completion
    is owned by one thread; ``freeze()`` marks it immutable, after which it
    may be shared (the memo table only caches, it never changes results).
    """

    def __init__(self, alphabet: Alphabet, field: Field,
                 relations: Iterable[NcPoly] = (), degree_cap: int = 8,
                 order: str = "deglex"):
        if degree_cap < 1:
            raise ValueError("degree_cap must be positive")
        if order not in ("deglex", "xdeglex"):
            raise ValueError(f"unknown order {order!r}")
        self.alphabet = alphabet
        self.field = field
        self.degree_cap = degree_cap
        self.order = order
        if order == "deglex":
            self._key: Callable[[Word], tuple] = deglex_key
        else:
            self._key = lambda w: xdeglex_key(w, alphabet)
        self.collapsed = False
        self._rules: dict = {}          # lead -> tail coefficient dict
        self._by_first: dict = {}       # first letter -> [leads]
        self._by_last: dict = {}        # last letter  -> [leads]
        self._memo: dict = {}
        self._frozen = False
        self._steps = 0
        for rel in relations:
            self._insert(dict(rel.terms))
        self._interreduce()

    # -- bookkeeping ---------------------------------------------------------

    def copy(self) -> "ReductionSystem":
        dup = ReductionSystem(self.alphabet, self.field, (), self.degree_cap, self.order)
        dup.collapsed = self.collapsed
        for lead, tail in self._rules.items():
            dup._install(lead, dict(tail))
        return dup

    def freeze(self) -> "ReductionSystem":
        self._frozen = True
        return self

    @property
    def frozen(self) -> bool:
        return self._frozen

    def rules(self) -> list[RewriteRule]:
        out = []
        for lead in sorted(self._rules, key=self._key):
            out.append(RewriteRule(lead, NcPoly(self.alphabet, self.field, self._rules[lead])))
        return out

    def rule_count(self) -> int:
        return len(self._rules)

    def _install(self, lead: Word, tail: dict) -> None:
        if self._frozen:
            raise RuntimeError("cannot modify a frozen system")
        self._rules[lead] = tail
        self._by_first.setdefault(lead[0], []).append(lead)
        self._by_last.setdefault(lead[-1], []).append(lead)
        self._memo.clear()

    def _remove(self, lead: Word) -> None:
        del self._rules[lead]
        self._by_first[lead[0]].remove(lead)
        self._by_last[lead[-1]].remove(lead)
        self._memo.clear()

    def _orient(self, terms: dict) -> tuple[Word, dict]:
        """Split a nonzero polynomial into (lead, tail) with monic lead."""
        lead = max(terms, key=self._key)
        f = self.field
        c = terms[lead]
        cinv = f.inv(c)
        tail = {w: f.neg(f.mul(cinv, cv)) for w, cv in terms.items() if w != lead}
        return lead, tail

    def _insert(self, terms: dict) -> bool:
        """Reduce a relation against the current rules and adopt it.

        Returns True when the rule set changed.  Sets ``collapsed`` when a
        nonzero constant is derived.
        """
        terms = self._nf_terms(terms)
        if not terms:
            return False
        lead, tail = self._orient(terms)
        if not lead:
            self.collapsed = True
            self._rules.clear()
            self._by_first.clear()
            self._by_last.clear()
            self._memo.clear()
            return True
        self._install(lead, tail)
        return True

    def _interreduce(self) -> None:
        """Re-reduce every rule against the others until stable."""
        changed = True
        while changed and not self.collapsed:
            changed = False
            for lead in sorted(self._rules, key=self._key):
                if lead not in self._rules:
                    continue
                tail = self._rules[lead]
                self._remove(lead)
                f = self.field
                # relation polynomial is lead - tail
                poly = {w: f.neg(c) for w, c in tail.items()}
                poly[lead] = f.one
                before = (lead, tail)
                self._insert(poly)
                if self.collapsed:
                    return
                after = self._rules.get(lead)
                if after != before[1] or lead not in self._rules:
                    changed = True

    # -- reduction -----------------------------------------------------------

    def _find_redex(self, word: Word):
        """Leftmost position and lead of the first rule occurrence, if any."""
        n = len(word)
        for i in range(n):
            leads = self._by_first.get(word[i])
            if not leads:
                continue
            for lead in leads:
                ll = len(lead)
                if i + ll <= n and word[i:i + ll] == lead:
                    return i, lead
        return None

    def _nf_word(self, word: Word) -> dict:
        """Normal form of a single word, as a coefficient dict (memoized)."""
        if self.collapsed:
            return {}
        memo = self._memo
        hit = memo.get(word)
        if hit is not None:
            return hit
        redex = self._find_redex(word)
        if redex is None:
            result = {word: self.field.one}
            memo[word] = result
            return result
        self._steps += 1
        if self._steps > STEP_BUDGET:
            raise CapExceededError("rewrite step budget exhausted")
        i, lead = redex
        pre, suf = word[:i], word[i + len(lead):]
        f = self.field
        z = f.zero
        acc: dict = {}
        for tw, tc in self._rules[lead].items():
            for sw, sc in self._nf_word(pre + tw + suf).items():
                s = f.add(acc.get(sw, z), f.mul(tc, sc))
                if s == z:
                    acc.pop(sw, None)
                else:
                    acc[sw] = s
        memo[word] = acc
        return acc

    def _nf_terms(self, terms: dict) -> dict:
        f = self.field
        z = f.zero
        acc: dict = {}
        for w, c in terms.items():
            for sw, sc in self._nf_word(w).items():
                s = f.add(acc.get(sw, z), f.mul(c, sc))
                if s == z:
                    acc.pop(sw, None)
                else:
                    acc[sw] = s
        return acc

    def normal_form(self, p: NcPoly) -> NcPoly:
        """Linear, idempotent reduction to a form free of rule leads."""
        if p.alphabet != self.alphabet or p.field is not self.field:
            raise ValueError("polynomial over a different alphabet or field")
        self._steps = 0
        return NcPoly(self.alphabet, self.field, self._nf_terms(p.terms))

    def nf_word(self, word: Word) -> dict:
        """Normal form of a single word (shared-cache fast path)."""
        self.alphabet.check_word(word)
        self._steps = 0
        return self._nf_word(tuple(word))

    def is_irreducible(self, word: Word) -> bool:
        return self._find_redex(word) is None


def normal_form(p: NcPoly, sys: ReductionSystem) -> NcPoly:
    return sys.normal_form(p)


# ---------------------------------------------------------------------------
# ambiguities and completion
# ---------------------------------------------------------------------------

def find_ambiguities(sys: ReductionSystem) -> list[Ambiguity]:
    """All overlap and inclusion ambiguities among the current rules.

    Overlaps pair lead1 = A+B with lead2 = B+C for nonempty B; inclusions
    (one lead inside another) cannot occur in an inter-reduced system but are
    reported for raw input.  Ambiguity words are bounded by 2*degree_cap - 1
    automatically since rule leads never exceed the cap; filtering any
    tighter would let completion overlook critical overlaps near the cap and
    report confluence it never checked.
    """
    leads = sorted(sys._rules, key=sys._key)
    bound = 2 * sys.degree_cap
    out: list[Ambiguity] = []
    for l1 in leads:
        for l2 in leads:
            m = min(len(l1), len(l2))
            for k in range(1, m):
                if l1[len(l1) - k:] == l2[:k]:
                    amb = Ambiguity(l1, l2, l1[:len(l1) - k], l2[:k], l2[k:])
                    if len(amb.word) <= bound:
                        out.append(amb)
            if l1 != l2 and len(l2) < len(l1):
                for i in range(len(l1) - len(l2) + 1):
                    if l1[i:i + len(l2)] == l2:
                        out.append(Ambiguity(l1, l2, l1[:i], l2, l1[i + len(l2):],
                                             kind="inclusion"))
    out.sort(key=lambda a: (sys._key(a.word), a.lead1, a.lead2, a.kind))
    return out


@dataclass
class CompletionReport:
    status: str
    system: ReductionSystem
    new_rules: list[RewriteRule] = dc_field(default_factory=list)
    ambiguities_checked: int = 0

    def to_json(self) -> dict:
        return {
            "schema": 1,
            "status": self.status,
            "ambiguities_checked": self.ambiguities_checked,
            "rule_count": self.system.rule_count(),
            "rules": [{"lead": self.system.alphabet.word_str(r.lead), "tail": str(r.tail)}
                      for r in self.system.rules()],
            "new_rules": [{"lead": self.system.alphabet.word_str(r.lead), "tail": str(r.tail)}
                          for r in self.new_rules],
        }


def _resolve(sys: ReductionSystem, amb: Ambiguity) -> dict:
    """Difference of the two one-step resolutions of an ambiguity, reduced."""
    f = sys.field
    z = f.zero
    acc: dict = {}

    def accumulate(terms: dict, sign) -> None:
        for w, c in terms.items():
            for sw, sc in sys._nf_word(w).items():
                s = f.add(acc.get(sw, z), f.mul(f.mul(sign, c), sc))
                if s == z:
                    acc.pop(sw, None)
                else:
                    acc[sw] = s

    if amb.kind == "overlap":
        # lead1 applied at the left of ABC versus lead2 at the right
        left = {tw + amb.c: tc for tw, tc in sys._rules[amb.lead1].items()}
        right = {amb.a + tw: tc for tw, tc in sys._rules[amb.lead2].items()}
    else:
        # lead1 = A lead2 C as a whole versus lead2 inside it
        left = dict(sys._rules[amb.lead1])
        right = {}
        for tw, tc in sys._rules[amb.lead2].items():
            w = amb.a + tw + amb.c
            right[w] = f.add(right.get(w, z), tc)
    sys._steps = 0
    accumulate(left, f.one)
    accumulate(right, f.neg(f.one))
    return acc


def complete(sys: ReductionSystem) -> CompletionReport:
    """Bounded Diamond-Lemma completion.

    Ambiguities are processed smallest overlap word first; a nonzero
    difference is oriented into a new rule and the system is immediately
    inter-reduced.  Whenever the rule set changes, every ambiguity of the new
    system is (re)checked, so a CONFLUENT verdict always rests on a full pass
    over the final rules.
    """
    work = sys.copy()
    new_rules: list[RewriteRule] = []
    checked: set = set()
    checked_count = 0
    if work.collapsed:
        return CompletionReport(COLLAPSED_TO_ZERO, work, new_rules, 0)

    while True:
        pending = [a for a in find_ambiguities(work) if a.key() not in checked]
        if not pending:
            status = CONFLUENT
            break
        restart = False
        for amb in pending:
            checked.add(amb.key())
            checked_count += 1
            diff = _resolve(work, amb)
            if not diff:
                continue
            lead = max(diff, key=work._key)
            if not lead:
                return CompletionReport(COLLAPSED_TO_ZERO, work, new_rules, checked_count)
            if len(lead) > work.degree_cap:
                return CompletionReport(CAP_EXCEEDED, work, new_rules, checked_count)
            lead, tail = work._orient(diff)
            work._install(lead, tail)
            new_rules.append(RewriteRule(lead, NcPoly(work.alphabet, work.field, tail)))
            work._interreduce()
            if work.collapsed:
                return CompletionReport(COLLAPSED_TO_ZERO, work, new_rules, checked_count)
            checked.clear()
            restart = True
            break
        if restart:
            continue
        status = CONFLUENT
        break

    work.freeze()
    return CompletionReport(status, work, new_rules, checked_count)


def verify_confluent(sys: ReductionSystem) -> bool:
    """Independent post-check: every ambiguity's two resolutions agree."""
    return all(not _resolve(sys, amb) for amb in find_ambiguities(sys))


# ---------------------------------------------------------------------------
# irreducible words
# ---------------------------------------------------------------------------

@dataclass
class IrreducibleCounts:
    per_length: list[int]
    total: int
    finite: bool


def irreducible_words_by_length(sys: ReductionSystem, max_len: int) -> list[list[Word]]:
    """Words containing no rule lead as a subword, grouped by length.

    Stops early once a length yields nothing (every longer word then contains
    a lead too, since prefixes of irreducible words are irreducible).
    """
    if sys.collapsed:
        return [[]]
    by_last = sys._by_last
    levels: list[list[Word]] = [[()]]
    size = len(sys.alphabet)
    for _ in range(max_len):
        nxt: list[Word] = []
        for w in levels[-1]:
            for letter in range(size):
                cand = w + (letter,)
                n = len(cand)
                ok = True
                for lead in by_last.get(letter, ()):
                    if len(lead) <= n and cand[n - len(lead):] == lead:
                        ok = False
                        break
                if ok:
                    nxt.append(cand)
        if not nxt:
            break
        levels.append(nxt)
    return levels


def irreducible_words(sys: ReductionSystem, max_len: int) -> list[Word]:
    out: list[Word] = []
    for level in irreducible_words_by_length(sys, max_len):
        out.extend(level)
    return out


def count_irreducible(sys: ReductionSystem, max_len: int) -> IrreducibleCounts:
    levels = irreducible_words_by_length(sys, max_len)
    per_length = [len(level) for level in levels]
    finite = len(per_length) <= max_len  # the generation died out before the cap
    per_length += [0] * (max_len + 1 - len(per_length))
    return IrreducibleCounts(per_length, sum(per_length), finite)


# ---------------------------------------------------------------------------
# tensor reduction
# ---------------------------------------------------------------------------

def reduce_tensor(t: TensorPoly, left_sys: ReductionSystem,
                  right_sys: ReductionSystem) -> TensorPoly:
    """Reduce both tensor factors independently, never across the symbol."""
    if t.left != left_sys.alphabet or t.right != right_sys.alphabet:
        raise ValueError("tensor alphabets do not match the reduction systems")
    f = t.field
    z = f.zero
    acc: dict = {}
    for (wl, wr), c in t.terms.items():
        for nl, cl in left_sys.nf_word(wl).items():
            for nr, cr in right_sys.nf_word(wr).items():
                k = (nl, nr)
                s = f.add(acc.get(k, z), f.mul(c, f.mul(cl, cr)))
                if s == z:
                    acc.pop(k, None)
                else:
                    acc[k] = s
    return TensorPoly(t.left, t.right, f, acc)


# ---------------------------------------------------------------------------
# GF(2) rank
# ---------------------------------------------------------------------------

def rank_f2(rows: Sequence[int], width: int | None = None) -> int:
    """Rank over GF(2) of rows given as int bitsets.

    When ``width`` is supplied every row must fit in it; a wider row is a
    width mismatch.  Elimination keeps one pivot row per leading bit, so the
    cost is one big-int XOR per (row, pivot) pair actually hit.
    """
    if width is not None:
        for i, row in enumerate(rows):
            if row < 0 or row.bit_length() > width:
                raise ValueError(f"row {i} exceeds width {width}")
    pivots: dict = {}
    rank = 0
    for row in rows:
        while row:
            p = row.bit_length() - 1
            other = pivots.get(p)
            if other is None:
                pivots[p] = row
                rank += 1
                break
            row ^= other
    return rank
