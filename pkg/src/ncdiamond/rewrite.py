"""Oriented rewriting for finitely presented associative algebras.

A rewrite system replaces fixed words by polynomials that are strictly
smaller under deglex, so reduction terminates; in truncated mode a rule may
instead raise the degree, and a global degree cap plus a step budget keep
reduction finite.  On top of single steps the module provides normal forms,
the overlap/inclusion ambiguity enumeration with per-ambiguity resolution
traces, critical-pair completion, enumeration of the words avoiding every
left-hand side, and the randomized polynomial-identity and witness checks
that run on normal forms.
"""

from __future__ import annotations

from dataclasses import dataclass

from .fields import FieldError, Scalar
from .ncpoly import EMPTY_WORD, FreeAlgebra, NcPoly, Word
from .seeding import rng_for

DEFAULT_STEP_BUDGET = 1_000_000


class StepBudgetExceeded(RuntimeError):
    """Reduction used more elementary rewrites than the configured budget.

    With degree-nonincreasing rules this signals a pathologically large
    input; in truncated mode it usually means the rule set loops.
    """


class QuotientCollapseError(ValueError):
    """A critical pair normalized to a nonzero scalar: the presented
    quotient collapses to the zero ring, so no completion exists."""


@dataclass(frozen=True)
class RewriteRule:
    """One oriented rule lhs -> rhs.  The lhs is a nonempty word; every word
    of the rhs is deglex-smaller than the lhs (or strictly longer, in
    truncated mode)."""

    lhs: Word
    rhs: NcPoly

    def __str__(self) -> str:
        return f"{self.rhs.alg.word_str(self.lhs)} -> {self.rhs}"


@dataclass(frozen=True)
class RewriteSystem:
    """An ordered list of rules over one free algebra.

    ``trunc`` switches on truncated mode: reduction discards every word of
    degree greater than the cap, and degree-increasing rules are accepted.
    """

    alg: FreeAlgebra
    rules: tuple[RewriteRule, ...]
    trunc: int | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "rules", tuple(self.rules))
        if self.trunc is not None and (not isinstance(self.trunc, int) or self.trunc < 1):
            raise ValueError(f"truncation cap must be a positive integer, got {self.trunc!r}")
        seen: set[Word] = set()
        for rule in self.rules:
            if not isinstance(rule, RewriteRule):
                raise TypeError(f"not a rewrite rule: {rule!r}")
            if not rule.lhs:
                raise ValueError("rule left-hand sides must be nonempty words")
            self.alg.check_word(rule.lhs)
            if rule.rhs.alg != self.alg:
                raise FieldError("rule right-hand side lives in a different algebra")
            if rule.lhs in seen:
                raise ValueError(
                    f"two rules share the left-hand side {self.alg.word_str(rule.lhs)}"
                )
            seen.add(rule.lhs)
            for w, _ in rule.rhs.terms:
                if self.alg.deglex_cmp(w, rule.lhs) < 0:
                    continue
                if self.trunc is not None and len(w) > len(rule.lhs):
                    continue
                raise ValueError(
                    f"rule {self.alg.word_str(rule.lhs)} -> {rule.rhs} is not "
                    "deglex-decreasing (degree-increasing right-hand sides need "
                    "truncated mode)"
                )

    def with_rule(self, rule: RewriteRule) -> "RewriteSystem":
        return RewriteSystem(self.alg, self.rules + (rule,), self.trunc)


def _check_poly(p: NcPoly, sys: RewriteSystem) -> None:
    if p.alg != sys.alg:
        raise FieldError("polynomial and rewrite system live in different algebras")


def _leftmost_match(word: Word, rules: tuple[RewriteRule, ...]) -> tuple[int, int] | None:
    """(position, rule index) of the leftmost rewritable occurrence, ties
    going to the lowest rule index; None when the word is in normal form."""
    best: tuple[int, int] | None = None
    for idx, rule in enumerate(rules):
        pos = word.find(rule.lhs)
        if pos >= 0 and (best is None or pos < best[0]):
            best = (pos, idx)
    return best


def reduce_once(p: NcPoly, sys: RewriteSystem) -> tuple[NcPoly, bool]:
    """Apply one rewrite using the fixed strategy: take the deglex-greatest
    term whose word contains some lhs, rewrite its leftmost occurrence with
    the lowest-index matching rule.  Returns (result, True), or (p, False)
    if p is already in normal form."""
    _check_poly(p, sys)
    f = sys.alg.field
    for w, c in p.terms:  # stored descending, so greatest first
        hit = _leftmost_match(w, sys.rules)
        if hit is None:
            continue
        pos, idx = hit
        rule = sys.rules[idx]
        pre, post = w[:pos], w[pos + len(rule.lhs):]
        d = {u: a for u, a in p.terms if u != w}
        for u, a in rule.rhs.terms:
            nu = pre + u + post
            if sys.trunc is not None and len(nu) > sys.trunc:
                continue
            v = f.add(d.get(nu, 0), f.mul(c, a))
            if v == 0:
                d.pop(nu, None)
            else:
                d[nu] = v
        return NcPoly(sys.alg, d), True
    return p, False


def normal_form(p: NcPoly, sys: RewriteSystem, max_steps: int = DEFAULT_STEP_BUDGET) -> NcPoly:
    """Fully reduce p, counting each elementary rewrite against max_steps.

    Internally each word is reduced at its leftmost occurrence with the
    lowest-index rule, words being processed from a worklist; because the
    per-word replacement is deterministic, the fixed point agrees with
    iterating :func:`reduce_once` regardless of the processing order.
    """
    _check_poly(p, sys)
    f = sys.alg.field
    rules = sys.rules
    cap = sys.trunc
    acc: dict[Word, Scalar] = {}
    work: list[tuple[Word, Scalar]] = list(p.terms)
    steps = 0
    while work:
        w, c = work.pop()
        hit = _leftmost_match(w, rules)
        if hit is None:
            v = f.add(acc.get(w, 0), c)
            if v == 0:
                acc.pop(w, None)
            else:
                acc[w] = v
            continue
        steps += 1
        if steps > max_steps:
            raise StepBudgetExceeded(
                f"no normal form within {max_steps} rewrites; the rule set is "
                "suspect (likely a truncated-mode loop)"
            )
        pos, idx = hit
        rule = rules[idx]
        pre, post = w[:pos], w[pos + len(rule.lhs):]
        for u, a in rule.rhs.terms:
            nu = pre + u + post
            if cap is not None and len(nu) > cap:
                continue
            work.append((nu, f.mul(c, a)))
    return NcPoly(sys.alg, acc)


def reduction_trace(
    p: NcPoly, sys: RewriteSystem, max_steps: int = DEFAULT_STEP_BUDGET
) -> tuple[NcPoly, ...]:
    """The literal reduce_once iteration [p, p1, ..., normal form]."""
    trace = [p]
    steps = 0
    cur = p
    while True:
        cur, changed = reduce_once(cur, sys)
        if not changed:
            return tuple(trace)
        trace.append(cur)
        steps += 1
        if steps > max_steps:
            raise StepBudgetExceeded(f"no normal form within {max_steps} rewrites")


# -- ambiguities and confluence --------------------------------------------------


@dataclass(frozen=True)
class Ambiguity:
    """A word with two competing reductions.

    overlap:   word = lhs_a + tail, where a proper nonempty suffix of lhs_a
               equals a proper nonempty prefix of lhs_b; lhs_b starts at
               ``offset``.
    inclusion: word = lhs_a with lhs_b a proper factor at ``offset``.
    """

    kind: str
    rule_a: int
    rule_b: int
    word: Word
    offset: int


def find_ambiguities(sys: RewriteSystem) -> tuple[Ambiguity, ...]:
    """Enumerate every overlap and inclusion ambiguity, self-pairs included,
    ordered by (rule_a, rule_b, offset)."""
    out: list[Ambiguity] = []
    for a, ra in enumerate(sys.rules):
        u = ra.lhs
        for b, rb in enumerate(sys.rules):
            v = rb.lhs
            found: list[Ambiguity] = []
            for k in range(1, min(len(u), len(v))):
                if u[len(u) - k:] == v[:k]:
                    found.append(Ambiguity("overlap", a, b, u + v[k:], len(u) - k))
            if a != b and len(v) < len(u):
                start = 0
                while True:
                    j = u.find(v, start)
                    if j < 0:
                        break
                    found.append(Ambiguity("inclusion", a, b, u, j))
                    start = j + 1
            found.sort(key=lambda amb: amb.offset)
            out.extend(found)
    return tuple(out)


def _splice(sys: RewriteSystem, word: Word, pos: int, rule: RewriteRule) -> NcPoly:
    """Replace the occurrence of rule.lhs at pos inside word by rule.rhs."""
    pre, post = word[:pos], word[pos + len(rule.lhs):]
    d: dict[Word, Scalar] = {}
    f = sys.alg.field
    for u, a in rule.rhs.terms:
        nu = pre + u + post
        if sys.trunc is not None and len(nu) > sys.trunc:
            continue
        v = f.add(d.get(nu, 0), a)
        if v == 0:
            d.pop(nu, None)
        else:
            d[nu] = v
    return NcPoly(sys.alg, d)


def ambiguity_reducts(sys: RewriteSystem, amb: Ambiguity) -> tuple[NcPoly, NcPoly]:
    """The two one-step reducts of the ambiguity word: rule_a applied at
    position 0, rule_b applied at the stored offset."""
    ra, rb = sys.rules[amb.rule_a], sys.rules[amb.rule_b]
    return _splice(sys, amb.word, 0, ra), _splice(sys, amb.word, amb.offset, rb)


@dataclass(frozen=True)
class AmbiguityCheck:
    ambiguity: Ambiguity
    resolvable: bool
    trace_a: tuple[NcPoly, ...]
    trace_b: tuple[NcPoly, ...]

    @property
    def normal_form_a(self) -> NcPoly:
        return self.trace_a[-1]

    @property
    def normal_form_b(self) -> NcPoly:
        return self.trace_b[-1]


@dataclass(frozen=True)
class ConfluenceReport:
    checks: tuple[AmbiguityCheck, ...]
    overall: bool


def check_confluence(sys: RewriteSystem, max_steps: int = DEFAULT_STEP_BUDGET) -> ConfluenceReport:
    """Reduce both sides of every ambiguity and compare normal forms.

    Each check records the full reduction trace of each one-step reduct, so
    a report is also a human-readable resolution certificate.
    """
    checks = []
    for amb in find_ambiguities(sys):
        red_a, red_b = ambiguity_reducts(sys, amb)
        trace_a = reduction_trace(red_a, sys, max_steps)
        trace_b = reduction_trace(red_b, sys, max_steps)
        checks.append(
            AmbiguityCheck(amb, trace_a[-1] == trace_b[-1], trace_a, trace_b)
        )
    return ConfluenceReport(tuple(checks), all(c.resolvable for c in checks))


@dataclass(frozen=True)
class CompletionResult:
    completed: bool
    system: RewriteSystem
    added: tuple[RewriteRule, ...]


def complete(
    sys: RewriteSystem, max_new_rules: int = 64, max_degree: int = 64
) -> CompletionResult:
    """Knuth-Bendix style completion by critical pairs.

    Repeatedly picks the first unresolved ambiguity, fully normalizes the
    difference of its two reducts, and orients it with the deglex-greatest
    word as the new left-hand side (over a field the leading coefficient is
    always invertible).  Old rules are kept as-is; only the new rule's
    right-hand side is born fully reduced.  Stops with completed=False when
    a budget is hit, and raises :class:`QuotientCollapseError` if a critical
    pair normalizes to a nonzero scalar.
    """
    if sys.trunc is not None:
        raise ValueError("completion runs in default (degree-nonincreasing) mode only")
    added: list[RewriteRule] = []
    cur = sys
    while True:
        report = check_confluence(cur)
        if report.overall:
            return CompletionResult(True, cur, tuple(added))
        chk = next(c for c in report.checks if not c.resolvable)
        diff = chk.normal_form_a - chk.normal_form_b
        w, c = diff.leading_term()
        if w == EMPTY_WORD:
            raise QuotientCollapseError(
                f"critical pair at {cur.alg.word_str(chk.ambiguity.word)} normalizes "
                f"to the nonzero scalar {cur.alg.field.scalar_str(c)}: the quotient "
                "collapses to the zero ring"
            )
        if len(added) >= max_new_rules or len(w) > max_degree:
            return CompletionResult(False, cur, tuple(added))
        rhs = cur.alg.monomial(w) - diff.scale(cur.alg.field.inv(c))
        rule = RewriteRule(w, rhs)
        added.append(rule)
        cur = cur.with_rule(rule)


# -- normal words ------------------------------------------------------------------


def _normal_words_by_degree(sys: RewriteSystem, max_degree: int) -> list[list[Word]]:
    """levels[d] = the degree-d words avoiding every lhs, in deglex order."""
    order = sorted(range(len(sys.alg.gens)), key=lambda i: sys.alg.letter_rank[i])
    letters = [chr(i) for i in order]
    lhss = [r.lhs for r in sys.rules]
    levels: list[list[Word]] = [[EMPTY_WORD]]
    for _ in range(max_degree):
        nxt = []
        for w in levels[-1]:
            for ch in letters:
                u = w + ch
                # only a suffix ending at the new letter can be a fresh factor
                if not any(u.endswith(l) for l in lhss):
                    nxt.append(u)
        levels.append(nxt)
    return levels


def enumerate_normal_words(sys: RewriteSystem, degree: int) -> tuple[Word, ...]:
    """All words of the given degree containing no rule's lhs, deglex order."""
    if not isinstance(degree, int) or degree < 0:
        raise ValueError(f"degree must be a nonnegative integer, got {degree!r}")
    return tuple(_normal_words_by_degree(sys, degree)[degree])


def random_poly(sys: RewriteSystem, max_deg: int, rng, max_terms: int = 4) -> NcPoly:
    """A random linear combination of normal words: 1..max_terms terms, each
    with degree uniform in [0, max_deg] (resampled past empty degrees; the
    empty word is always normal), a uniform normal word of that degree, and
    a uniform nonzero coefficient.  Colliding words merge, so the result may
    have fewer terms or even be zero."""
    levels = _normal_words_by_degree(sys, max_deg)
    f = sys.alg.field
    acc: dict[Word, Scalar] = {}
    for _ in range(rng.randint(1, max_terms)):
        d = rng.randint(0, max_deg)
        while not levels[d]:
            d = rng.randint(0, max_deg)
        w = rng.choice(levels[d])
        c = f.random_nonzero(rng)
        v = f.add(acc.get(w, 0), c)
        if v == 0:
            acc.pop(w, None)
        else:
            acc[w] = v
    return NcPoly(sys.alg, acc)


# -- the triple-commutator identity --------------------------------------------------


@dataclass(frozen=True)
class IdentityCounterexample:
    trial: int
    substitution: tuple[NcPoly, ...]
    value: NcPoly


@dataclass(frozen=True)
class IdentityReport:
    holds: bool
    trials: int
    counterexample: IdentityCounterexample | None


def triple_commutator_nf(
    sys: RewriteSystem,
    substitution: tuple[NcPoly, ...],
    max_steps: int = DEFAULT_STEP_BUDGET,
) -> NcPoly:
    """Normal form of [X1,Y1][X2,Y2][X3,Y3] for (X1,Y1,X2,Y2,X3,Y3).

    Factors are normalized as they are multiplied in; on a confluent system
    this equals reducing the expanded product, at a fraction of the cost.
    """
    if len(substitution) != 6:
        raise ValueError("the substitution names six polynomials X1,Y1,X2,Y2,X3,Y3")
    acc = sys.alg.one()
    for i in range(3):
        x, y = substitution[2 * i], substitution[2 * i + 1]
        comm = normal_form(x * y - y * x, sys, max_steps)
        acc = normal_form(acc * comm, sys, max_steps)
    return acc


def verify_identity_comm3(
    sys: RewriteSystem, trials: int, max_deg: int, seed: int
) -> IdentityReport:
    """Check the identity [X1,Y1][X2,Y2][X3,Y3] = 0 on random substitutions.

    Draws per-trial RNGs from the seed, samples six random normal-word
    polynomials of degree <= max_deg each, and reduces the product.  Stops
    at the first counterexample.
    """
    for t in range(trials):
        rng = rng_for(seed, "comm3", t)
        subs = tuple(random_poly(sys, max_deg, rng) for _ in range(6))
        value = triple_commutator_nf(sys, subs)
        if value:
            return IdentityReport(False, trials, IdentityCounterexample(t, subs, value))
    return IdentityReport(True, trials, None)


# -- the factorization witness ---------------------------------------------------------


@dataclass(frozen=True)
class LemmaWitness:
    """Five elements x, y, z, a, b meant to satisfy x = y*x*a, z = x*b,
    y*z = 0 with x and z nonzero in the quotient."""

    x: NcPoly
    y: NcPoly
    z: NcPoly
    a: NcPoly
    b: NcPoly

    def items(self) -> tuple[tuple[str, NcPoly], ...]:
        return (("x", self.x), ("y", self.y), ("z", self.z), ("a", self.a), ("b", self.b))


@dataclass(frozen=True)
class WitnessReport:
    """The four normal-form checks behind the factorization witness."""

    residual_x: NcPoly        # nf(x - y*x*a)
    residual_z: NcPoly        # nf(z - x*b)
    annihilation: NcPoly      # nf(y*z)
    nf_x: NcPoly
    nf_z: NcPoly
    recovers_x: bool          # x = y*x*a in the quotient
    z_in_ideal: bool          # z = x*b in the quotient
    y_kills_z: bool           # y*z = 0 in the quotient
    nonzero: bool             # x and z survive reduction
    verdict: bool


def verify_lemma_witness(
    sys: RewriteSystem, w: LemmaWitness, max_steps: int = DEFAULT_STEP_BUDGET
) -> WitnessReport:
    nf = lambda q: normal_form(q, sys, max_steps)
    residual_x = nf(w.x - w.y * w.x * w.a)
    residual_z = nf(w.z - w.x * w.b)
    annihilation = nf(w.y * w.z)
    nf_x = nf(w.x)
    nf_z = nf(w.z)
    recovers_x = residual_x.is_zero()
    z_in_ideal = residual_z.is_zero()
    y_kills_z = annihilation.is_zero()
    nonzero = bool(nf_x) and bool(nf_z)
    return WitnessReport(
        residual_x,
        residual_z,
        annihilation,
        nf_x,
        nf_z,
        recovers_x,
        z_in_ideal,
        y_kills_z,
        nonzero,
        recovers_x and z_in_ideal and y_kills_z and nonzero,
    )
