"""Directed rewriting to normal form, compiled from a presentation's relations.

Each commutator relation [g_j, g_i] = rhs (j after i in the generator order)
becomes the rule  g_j g_i -> g_i g_j + rhs;  extra leading-word identities
(determinants) become one directed rule each.  Termination: every replacement
word is either degree-lex smaller at the same h order or carries strictly more
h, and h orders are capped, so the multiset measure (remaining h budget,
degree-lex) strictly decreases.  Fuel is a backstop only.

Confluence is not proved; check_consistency validates it empirically via
critical-pair diamonds, bracketing independence, and strategy independence.
"""
from __future__ import annotations

import random
from dataclasses import dataclass

from .algebra import AlgebraElement, TensorElement, Word
from .errors import FuelExhausted, MalformedRelation
from .report import Check, Report
from .scalars import TruncatedScalar


@dataclass(frozen=True)
class RewriteRule:
    pattern: Word
    replacement: AlgebraElement


def _inversions(word: Word) -> int:
    return sum(
        1 for i in range(len(word)) for j in range(i + 1, len(word)) if word[i] > word[j]
    )


def _deglex_key(word: Word) -> tuple[int, Word]:
    return (len(word), word)


def _check_termination_certificate(pattern: Word, replacement: AlgebraElement) -> None:
    """Replacement words at the pattern's h order must shrink in
    (inversion count, degree-lex); extra h order is the other escape hatch."""
    p_measure = (_inversions(pattern), _deglex_key(pattern))
    for word, coeff in replacement.terms.items():
        if coeff.min_h_order() >= 1:
            continue
        if (_inversions(word), _deglex_key(word)) >= p_measure:
            raise MalformedRelation(
                f"replacement word does not decrease the termination measure: "
                f"{pattern} -> {word} at h order 0"
            )


class RuleSet:
    """Immutable compiled rules plus a normal-form memo (a cache, not state)."""

    def __init__(self, presentation, rules: dict[Word, AlgebraElement], fuel: int = 10**6):
        self.presentation = presentation
        self.alphabet = presentation.alphabet
        self.order = presentation.order
        self.eps_bound = presentation.eps_bound
        self.rules = dict(rules)
        self.fuel = fuel
        self.max_pattern = max((len(p) for p in rules), default=0)
        self._memo: dict[Word, dict[Word, TruncatedScalar]] = {}

    # -- redex search --------------------------------------------------------

    def _redex_at(self, word: Word, pos: int) -> Word | None:
        for plen in range(self.max_pattern, 0, -1):
            if pos + plen <= len(word) and word[pos : pos + plen] in self.rules:
                return word[pos : pos + plen]
        return None

    def _leftmost_redex(self, word: Word) -> tuple[int, Word] | None:
        for pos in range(len(word)):
            pattern = self._redex_at(word, pos)
            if pattern is not None:
                return pos, pattern
        return None

    def _all_redexes(self, word: Word) -> list[tuple[int, Word]]:
        found = []
        for pos in range(len(word)):
            pattern = self._redex_at(word, pos)
            if pattern is not None:
                found.append((pos, pattern))
        return found

    # -- word reduction ------------------------------------------------------

    def _reduce_word(
        self, top: Word, fuel: list[int], rng: random.Random | None = None
    ) -> dict[Word, TruncatedScalar]:
        """Full normal form of a bare word (unit coefficient assumed)."""
        use_memo = rng is None
        if use_memo and top in self._memo:
            return self._memo[top]
        one = TruncatedScalar.one(self.order, self.eps_bound)
        acc: dict[Word, TruncatedScalar] = {}
        stack: list[tuple[Word, TruncatedScalar]] = [(top, one)]
        while stack:
            word, coeff = stack.pop()
            if coeff.is_zero():
                continue
            if use_memo and word != top:
                done = self._memo.get(word)
                if done is not None:
                    for w, c in done.items():
                        prod = coeff * c
                        if prod.is_zero():
                            continue
                        old = acc.get(w)
                        acc[w] = prod if old is None else old + prod
                    continue
            if rng is None:
                redex = self._leftmost_redex(word)
            else:
                options = self._all_redexes(word)
                redex = rng.choice(options) if options else None
            if redex is None:
                old = acc.get(word)
                acc[word] = coeff if old is None else old + coeff
                continue
            if fuel[0] <= 0:
                raise FuelExhausted(f"rewrite budget exhausted while reducing {word}")
            fuel[0] -= 1
            pos, pattern = redex
            replacement = self.rules[pattern]
            head, tail = word[:pos], word[pos + len(pattern):]
            for rword, rcoeff in replacement.terms.items():
                prod = coeff * rcoeff
                if prod.is_zero():
                    continue
                new_word = head + rword + tail
                if len(new_word) > self.alphabet.degree_cap:
                    from .errors import DegreeCapExceeded

                    raise DegreeCapExceeded(
                        f"rewriting grew a word to length {len(new_word)}"
                        f" past cap {self.alphabet.degree_cap}"
                    )
                stack.append((new_word, prod))
        acc = {w: c for w, c in acc.items() if not c.is_zero()}
        if use_memo:
            self._memo[top] = acc
        return acc

    # -- public API ----------------------------------------------------------

    def normal_form(self, x, rng: random.Random | None = None):
        """Reduce an AlgebraElement or TensorElement to normal form.

        Passing ``rng`` picks redexes at random instead of leftmost; the result
        must not depend on it (cross-checked by check_consistency).
        """
        fuel = [self.fuel]
        if isinstance(x, AlgebraElement):
            return self._nf_element(x, fuel, rng)
        if isinstance(x, TensorElement):
            return self._nf_tensor(x, fuel, rng)
        raise TypeError(f"cannot normal-form {type(x).__name__}")

    def _nf_element(self, x: AlgebraElement, fuel, rng) -> AlgebraElement:
        terms: dict[Word, TruncatedScalar] = {}
        for word, coeff in x.terms.items():
            for w, c in self._reduce_word(word, fuel, rng).items():
                prod = coeff * c
                if prod.is_zero():
                    continue
                old = terms.get(w)
                terms[w] = prod if old is None else old + prod
        return AlgebraElement(x.alphabet, x.order, x.eps_bound, terms, x.effective_order)

    def _nf_tensor(self, x: TensorElement, fuel, rng) -> TensorElement:
        terms: dict[tuple[Word, ...], TruncatedScalar] = {}
        for slots, coeff in x.terms.items():
            partial: list[tuple[tuple[Word, ...], TruncatedScalar]] = [((), coeff)]
            for word in slots:
                reduced = self._reduce_word(word, fuel, rng)
                grown = []
                for done, acc_coeff in partial:
                    for w, c in reduced.items():
                        prod = acc_coeff * c
                        if prod.is_zero():
                            continue
                        grown.append((done + (w,), prod))
                partial = grown
            for full_slots, c in partial:
                old = terms.get(full_slots)
                terms[full_slots] = c if old is None else old + c
        return TensorElement(
            x.alphabet, x.nslots, x.order, x.eps_bound, terms, x.effective_order
        )

    def is_normal(self, word: Word) -> bool:
        return self._leftmost_redex(word) is None


def compile_rules(presentation, include_extras: bool = True, fuel: int = 10**6) -> RuleSet:
    """Orient relations into rewrite rules.

    Extra leading-word rules claim their patterns first; a commutator whose
    inverted pair coincides with such a pattern compiles to no rule of its own
    (its content is still checked by the verifier and the diamonds).
    """
    alphabet = presentation.alphabet
    rules: dict[Word, AlgebraElement] = {}
    if include_extras:
        for extra in presentation.extra_rules:
            pattern = tuple(alphabet.index(n) for n in extra.pattern)
            if pattern in rules:
                raise MalformedRelation(f"duplicate extra rule for pattern {extra.pattern}")
            _check_termination_certificate(pattern, extra.replacement)
            rules[pattern] = extra.replacement
    reserved = set(rules)
    for rel in presentation.relations:
        i, j = alphabet.index(rel.left), alphabet.index(rel.right)
        if i == j:
            raise MalformedRelation(f"relation [{rel.left},{rel.right}] repeats a generator")
        # [x, y] = xy - yx = rhs
        if i > j:
            pattern = (i, j)
            sorted_word = (j, i)
            correction = rel.rhs
        else:
            pattern = (j, i)
            sorted_word = (i, j)
            correction = -rel.rhs
        if pattern in reserved:
            continue
        if pattern in rules:
            raise MalformedRelation(
                f"two relations orient to the same pattern {pattern}"
            )
        replacement = AlgebraElement(
            alphabet, presentation.order, presentation.eps_bound,
            {sorted_word: TruncatedScalar.one(presentation.order, presentation.eps_bound)},
        ) + correction
        _check_termination_certificate(pattern, replacement)
        rules[pattern] = replacement
    return RuleSet(presentation, rules, fuel)


# -- empirical confluence ------------------------------------------------------


def _overlap_words(rules: dict[Word, AlgebraElement]) -> list[tuple[Word, int, Word, int, Word]]:
    """All critical-pair words w where two patterns overlap inside w.

    Returns (word, pos1, pattern1, pos2, pattern2) with pos1 < pos2.
    """
    out = []
    patterns = sorted(rules)
    for p1 in patterns:
        for p2 in patterns:
            for k in range(1, min(len(p1), len(p2))):
                if p1[len(p1) - k:] == p2[:k]:
                    word = p1 + p2[k:]
                    out.append((word, 0, p1, len(p1) - k, p2))
    return out


def _apply_once(rs: RuleSet, word: Word, pos: int, pattern: Word) -> AlgebraElement:
    one = TruncatedScalar.one(rs.order, rs.eps_bound)
    replacement = rs.rules[pattern]
    head, tail = word[:pos], word[pos + len(pattern):]
    terms: dict[Word, TruncatedScalar] = {}
    for rword, rcoeff in replacement.terms.items():
        if rcoeff.is_zero():
            continue
        terms[head + rword + tail] = rcoeff * one
    return AlgebraElement(rs.alphabet, rs.order, rs.eps_bound, terms)


def _random_word(rng: random.Random, alphabet, max_len: int) -> Word:
    length = rng.randint(2, max_len)
    return tuple(rng.randrange(len(alphabet.names)) for _ in range(length))


def check_consistency(presentation, samples: int = 1000, seed: int = 0,
                      fuel: int = 10**6) -> Report:
    """Empirical confluence evidence for one presentation's rule set.

    Diamonds: every two-rule overlap word reduces to the same normal form both
    ways.  Bracketing: nf(w) equals nf(nf(w[:k]) * nf(w[k:])) for sampled words
    and every split.  Strategy: leftmost and randomized redex choice agree.
    """
    rs = compile_rules(presentation, fuel=fuel)
    report = Report(f"consistency.{presentation.name}")
    rng = random.Random(seed)

    diamonds = _overlap_words(rs.rules)
    diamond_witness = ""
    diamond_fail = None
    for word, pos1, p1, pos2, p2 in diamonds:
        left = rs.normal_form(_apply_once(rs, word, pos1, p1))
        right = rs.normal_form(_apply_once(rs, word, pos2, p2))
        if left != right:
            diamond_fail = word
            diamond_witness = (
                f"word {presentation.alphabet.word_text(word)}: "
                f"{left.render()}  !=  {right.render()}"
            )
            break
    report.add(Check(
        id=f"consistency.diamonds.{presentation.name}",
        status="fail" if diamond_fail else "pass",
        witness=diamond_witness,
        order=presentation.order,
        notes=(f"overlap words checked: {len(diamonds)}",),
    ))

    max_len = min(6, presentation.alphabet.degree_cap)
    bracket_witness = ""
    bracket_failures = 0
    strategy_witness = ""
    strategy_failures = 0
    for _ in range(samples):
        word = _random_word(rng, presentation.alphabet, max_len)
        element = AlgebraElement(
            presentation.alphabet, presentation.order, presentation.eps_bound,
            {word: TruncatedScalar.one(presentation.order, presentation.eps_bound)},
        )
        whole = rs.normal_form(element)
        for k in range(1, len(word)):
            head = AlgebraElement(
                presentation.alphabet, presentation.order, presentation.eps_bound,
                {word[:k]: TruncatedScalar.one(presentation.order, presentation.eps_bound)},
            )
            tail = AlgebraElement(
                presentation.alphabet, presentation.order, presentation.eps_bound,
                {word[k:]: TruncatedScalar.one(presentation.order, presentation.eps_bound)},
            )
            split = rs.normal_form(rs.normal_form(head) * rs.normal_form(tail))
            if split != whole:
                bracket_failures += 1
                if not bracket_witness:
                    bracket_witness = (
                        f"word {presentation.alphabet.word_text(word)} split at {k}: "
                        f"{split.render()}  !=  {whole.render()}"
                    )
                break
        shuffled = rs.normal_form(element, rng=rng)
        if shuffled != whole:
            strategy_failures += 1
            if not strategy_witness:
                strategy_witness = (
                    f"word {presentation.alphabet.word_text(word)}: randomized strategy gave "
                    f"{shuffled.render()}  !=  {whole.render()}"
                )
    report.add(Check(
        id=f"consistency.bracketing.{presentation.name}",
        status="fail" if bracket_failures else "pass",
        witness=bracket_witness,
        order=presentation.order,
        notes=(f"samples: {samples}, failures: {bracket_failures}",),
    ))
    report.add(Check(
        id=f"consistency.strategy.{presentation.name}",
        status="fail" if strategy_failures else "pass",
        witness=strategy_witness,
        order=presentation.order,
        notes=(f"samples: {samples}, failures: {strategy_failures}",),
    ))
    return report
