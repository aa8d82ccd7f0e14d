"""Free algebra layer: words over an ordered alphabet, linear combinations,
tensor powers, and analytic series evaluated as exact truncated polynomials.

Elements are immutable; every operation returns a fresh value.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DegreeCapExceeded, NonNilpotentArgument, NotInvertible, SlotMismatch
from .scalars import TruncatedScalar

Word = tuple[int, ...]


@dataclass(frozen=True)
class GeneratorId:
    """A generator symbol: position in the alphabet fixes normal-ordering precedence."""

    presentation_key: str
    index: int
    name: str


class Alphabet:
    """Ordered generator list shared by all elements of one presentation.

    Lower index = leftmost in normal words.  ``degree_cap`` bounds word length;
    exceeding it raises, never silently truncates.
    """

    __slots__ = ("key", "names", "degree_cap", "_index")

    def __init__(self, key: str, names: tuple[str, ...], degree_cap: int = 12):
        if len(set(names)) != len(names):
            raise ValueError("duplicate generator names")
        self.key = key
        self.names = tuple(names)
        self.degree_cap = degree_cap
        self._index = {n: i for i, n in enumerate(names)}

    def index(self, name: str) -> int:
        return self._index[name]

    def __contains__(self, name: str) -> bool:
        return name in self._index

    def generator_ids(self) -> tuple[GeneratorId, ...]:
        return tuple(GeneratorId(self.key, i, n) for i, n in enumerate(self.names))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Alphabet):
            return NotImplemented
        return self.key == other.key and self.names == other.names

    def __hash__(self) -> int:
        return hash((self.key, self.names))

    def __repr__(self) -> str:
        return f"Alphabet({self.key!r}, {self.names})"

    def word_text(self, word: Word) -> str:
        """Render a word with runs collapsed to powers: (0,0,1) -> 'a^2*b'."""
        if not word:
            return "1"
        parts: list[str] = []
        run_letter, run_len = word[0], 1
        for letter in word[1:]:
            if letter == run_letter:
                run_len += 1
            else:
                parts.append(self._run_text(run_letter, run_len))
                run_letter, run_len = letter, 1
        parts.append(self._run_text(run_letter, run_len))
        return "*".join(parts)

    def _run_text(self, letter: int, count: int) -> str:
        name = self.names[letter]
        return name if count == 1 else f"{name}^{count}"


def _check_same_algebra(a, b) -> None:
    if a.alphabet != b.alphabet:
        raise ValueError(f"elements over different alphabets: {a.alphabet.key} vs {b.alphabet.key}")
    if a.order != b.order or a.eps_bound != b.eps_bound:
        # scalar layer raises MixedTruncation with detail
        TruncatedScalar.zero(a.order, a.eps_bound)._compat(TruncatedScalar.zero(b.order, b.eps_bound))


class AlgebraElement:
    """Finite linear combination of words with TruncatedScalar coefficients."""

    __slots__ = ("alphabet", "order", "eps_bound", "terms", "effective_order")

    def __init__(
        self,
        alphabet: Alphabet,
        order: int,
        eps_bound: int,
        terms: dict[Word, TruncatedScalar] | None = None,
        effective_order: int | None = None,
    ):
        clean: dict[Word, TruncatedScalar] = {}
        eff = order if effective_order is None else effective_order
        for word, coeff in (terms or {}).items():
            if len(word) > alphabet.degree_cap:
                raise DegreeCapExceeded(
                    f"word of length {len(word)} exceeds degree cap {alphabet.degree_cap}"
                )
            if coeff.is_zero():
                continue
            eff = min(eff, coeff.effective_order)
            clean[word] = coeff
        self.alphabet = alphabet
        self.order = order
        self.eps_bound = eps_bound
        self.terms = clean
        self.effective_order = eff

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, alphabet: Alphabet, order: int, eps_bound: int = 0) -> AlgebraElement:
        return cls(alphabet, order, eps_bound, {})

    @classmethod
    def unit(cls, alphabet: Alphabet, order: int, eps_bound: int = 0) -> AlgebraElement:
        return cls(alphabet, order, eps_bound, {(): TruncatedScalar.one(order, eps_bound)})

    @classmethod
    def generator(cls, alphabet: Alphabet, name: str, order: int, eps_bound: int = 0) -> AlgebraElement:
        return cls(
            alphabet, order, eps_bound,
            {(alphabet.index(name),): TruncatedScalar.one(order, eps_bound)},
        )

    @classmethod
    def from_scalar(cls, alphabet: Alphabet, scalar: TruncatedScalar) -> AlgebraElement:
        return cls(alphabet, scalar.order, scalar.eps_bound, {(): scalar})

    def _make(self, terms, effective_order=None) -> AlgebraElement:
        return AlgebraElement(
            self.alphabet, self.order, self.eps_bound, terms,
            self.effective_order if effective_order is None else effective_order,
        )

    def one_like(self) -> AlgebraElement:
        return AlgebraElement.unit(self.alphabet, self.order, self.eps_bound)

    def zero_like(self) -> AlgebraElement:
        return AlgebraElement.zero(self.alphabet, self.order, self.eps_bound)

    # -- linear structure ----------------------------------------------------

    def __add__(self, other: AlgebraElement) -> AlgebraElement:
        _check_same_algebra(self, other)
        terms = dict(self.terms)
        for word, coeff in other.terms.items():
            acc = terms.get(word)
            terms[word] = coeff if acc is None else acc + coeff
        return self._make(terms, min(self.effective_order, other.effective_order))

    def __sub__(self, other: AlgebraElement) -> AlgebraElement:
        return self + (-other)

    def __neg__(self) -> AlgebraElement:
        return self._make({w: -c for w, c in self.terms.items()})

    def scale(self, q) -> AlgebraElement:
        """Multiply by a plain rational."""
        q = Fraction(q)
        return self._make({w: c.scale(q) for w, c in self.terms.items()})

    def scale_scalar(self, s: TruncatedScalar) -> AlgebraElement:
        return self._make(
            {w: c * s for w, c in self.terms.items()},
            min(self.effective_order, s.effective_order),
        )

    def __mul__(self, other: AlgebraElement) -> AlgebraElement:
        _check_same_algebra(self, other)
        cap = self.alphabet.degree_cap
        terms: dict[Word, TruncatedScalar] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                coeff = c1 * c2
                if coeff.is_zero():
                    continue
                word = w1 + w2
                if len(word) > cap:
                    raise DegreeCapExceeded(
                        f"product word of length {len(word)} exceeds degree cap {cap}"
                    )
                acc = terms.get(word)
                terms[word] = coeff if acc is None else acc + coeff
        return self._make(terms, min(self.effective_order, other.effective_order))

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return (
            self.alphabet == other.alphabet
            and self.order == other.order
            and self.eps_bound == other.eps_bound
            and self.terms == other.terms
        )

    def __hash__(self) -> int:
        return hash((self.alphabet, self.order, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def min_h_order(self) -> int:
        if not self.terms:
            return self.order + 1
        return min(c.min_h_order() for c in self.terms.values())

    # -- coefficient-wise operations -----------------------------------------

    def exact_divide_h(self, k: int) -> AlgebraElement:
        return self._make(
            {w: c.exact_divide_h(k) for w, c in self.terms.items()},
            self.effective_order - k,
        )

    def limit_epsilon(self) -> AlgebraElement:
        return self._make({w: c.limit_epsilon() for w, c in self.terms.items()})

    def substitute_h(self, mode: str) -> AlgebraElement:
        return self._make({w: c.substitute_h(mode) for w, c in self.terms.items()})

    def with_eps_bound(self, eps_bound: int) -> AlgebraElement:
        return AlgebraElement(
            self.alphabet, self.order, eps_bound,
            {w: c.with_eps_bound(eps_bound) for w, c in self.terms.items()},
            self.effective_order,
        )

    def map_words(self, images: dict[int, AlgebraElement]) -> AlgebraElement:
        """Substitute each letter by an element (into the codomain of ``images``).

        The images decide the target algebra; words expand noncommutatively.
        """
        sample = next(iter(images.values()))
        out = AlgebraElement.zero(sample.alphabet, sample.order, sample.eps_bound)
        for word, coeff in self.terms.items():
            piece = AlgebraElement.unit(sample.alphabet, sample.order, sample.eps_bound)
            for letter in word:
                piece = piece * images[letter]
            out = out + piece.scale_scalar(coeff.with_eps_bound(sample.eps_bound))
        return out

    # -- rendering -----------------------------------------------------------

    def render(self) -> str:
        """Canonical text: terms sorted by (word length, letter indices)."""
        if not self.terms:
            return "0"
        out = []
        for word in sorted(self.terms, key=lambda w: (len(w), w)):
            text, negative = _term_text(self.alphabet.word_text(word), self.terms[word])
            if not out:
                out.append(f"-{text}" if negative else text)
            else:
                out.append(f"- {text}" if negative else f"+ {text}")
        return " ".join(out)

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"AlgebraElement({self.render()!r})"


def _term_text(word_text: str, coeff: TruncatedScalar) -> tuple[str, bool]:
    """Render coeff*word; returns (text, sign_pulled_out)."""
    if word_text == "1":
        rendered = coeff.render()
        if rendered.startswith("-") and len(coeff.terms) == 1:
            return rendered[1:], True
        return rendered, False
    if len(coeff.terms) == 1:
        ((hp, ep), q) = next(iter(coeff.terms.items()))
        mono = TruncatedScalar._monomial_text(hp, ep, q)
        negative = q < 0
        if mono == "1":
            return word_text, negative
        return f"{mono}*{word_text}", negative
    return f"({coeff.render()})*{word_text}", False


class TensorElement:
    """Element of the n-fold tensor power (n = 2 or 3), words tagged by slot."""

    __slots__ = ("alphabet", "nslots", "order", "eps_bound", "terms", "effective_order")

    def __init__(
        self,
        alphabet: Alphabet,
        nslots: int,
        order: int,
        eps_bound: int,
        terms: dict[tuple[Word, ...], TruncatedScalar] | None = None,
        effective_order: int | None = None,
    ):
        if nslots < 2 or nslots > 3:
            raise SlotMismatch(f"tensor slot count must be 2 or 3, got {nslots}")
        clean: dict[tuple[Word, ...], TruncatedScalar] = {}
        eff = order if effective_order is None else effective_order
        for slots, coeff in (terms or {}).items():
            if len(slots) != nslots:
                raise SlotMismatch(f"term with {len(slots)} slots in a {nslots}-slot tensor")
            for word in slots:
                if len(word) > alphabet.degree_cap:
                    raise DegreeCapExceeded(
                        f"slot word of length {len(word)} exceeds degree cap {alphabet.degree_cap}"
                    )
            if coeff.is_zero():
                continue
            eff = min(eff, coeff.effective_order)
            clean[slots] = coeff
        self.alphabet = alphabet
        self.nslots = nslots
        self.order = order
        self.eps_bound = eps_bound
        self.terms = clean
        self.effective_order = eff

    # -- constructors ------------------------------------------------------

    @classmethod
    def unit(cls, alphabet: Alphabet, nslots: int, order: int, eps_bound: int = 0) -> TensorElement:
        return cls(
            alphabet, nslots, order, eps_bound,
            {((),) * nslots: TruncatedScalar.one(order, eps_bound)},
        )

    @classmethod
    def zero(cls, alphabet: Alphabet, nslots: int, order: int, eps_bound: int = 0) -> TensorElement:
        return cls(alphabet, nslots, order, eps_bound, {})

    @classmethod
    def embed(cls, x: AlgebraElement, slot: int, nslots: int) -> TensorElement:
        """Place x in slot ``slot`` (0-based) with units elsewhere."""
        terms = {}
        for word, coeff in x.terms.items():
            slots = tuple(word if i == slot else () for i in range(nslots))
            terms[slots] = coeff
        return cls(x.alphabet, nslots, x.order, x.eps_bound, terms, x.effective_order)

    @classmethod
    def tensor(cls, *factors: AlgebraElement) -> TensorElement:
        """x (x) y [(x) z]: slotwise placement of plain elements."""
        first = factors[0]
        terms: dict[tuple[Word, ...], TruncatedScalar] = {
            (): TruncatedScalar.one(first.order, first.eps_bound)  # type: ignore[dict-item]
        }
        for factor in factors:
            _check_same_algebra(first, factor)
            new: dict = {}
            for slots, coeff in terms.items():
                for word, c in factor.terms.items():
                    key = slots + (word,)
                    prod = coeff * c
                    if prod.is_zero():
                        continue
                    acc = new.get(key)
                    new[key] = prod if acc is None else acc + prod
            terms = new
        return cls(first.alphabet, len(factors), first.order, first.eps_bound, terms)

    def _make(self, terms, effective_order=None) -> TensorElement:
        return TensorElement(
            self.alphabet, self.nslots, self.order, self.eps_bound, terms,
            self.effective_order if effective_order is None else effective_order,
        )

    def one_like(self) -> TensorElement:
        return TensorElement.unit(self.alphabet, self.nslots, self.order, self.eps_bound)

    def zero_like(self) -> TensorElement:
        return TensorElement.zero(self.alphabet, self.nslots, self.order, self.eps_bound)

    def _compat(self, other: TensorElement) -> None:
        if self.nslots != other.nslots:
            raise SlotMismatch(f"slot counts differ: {self.nslots} vs {other.nslots}")
        _check_same_algebra(self, other)

    # -- operations ----------------------------------------------------------

    def __add__(self, other: TensorElement) -> TensorElement:
        self._compat(other)
        terms = dict(self.terms)
        for slots, coeff in other.terms.items():
            acc = terms.get(slots)
            terms[slots] = coeff if acc is None else acc + coeff
        return self._make(terms, min(self.effective_order, other.effective_order))

    def __sub__(self, other: TensorElement) -> TensorElement:
        return self + (-other)

    def __neg__(self) -> TensorElement:
        return self._make({s: -c for s, c in self.terms.items()})

    def __mul__(self, other: TensorElement) -> TensorElement:
        """Slotwise concatenation: (x (x) y) * (u (x) v) = xu (x) yv."""
        self._compat(other)
        cap = self.alphabet.degree_cap
        terms: dict[tuple[Word, ...], TruncatedScalar] = {}
        for s1, c1 in self.terms.items():
            for s2, c2 in other.terms.items():
                coeff = c1 * c2
                if coeff.is_zero():
                    continue
                slots = tuple(a + b for a, b in zip(s1, s2))
                for word in slots:
                    if len(word) > cap:
                        raise DegreeCapExceeded(
                            f"slot word of length {len(word)} exceeds degree cap {cap}"
                        )
                acc = terms.get(slots)
                terms[slots] = coeff if acc is None else acc + coeff
        return self._make(terms, min(self.effective_order, other.effective_order))

    def scale(self, q) -> TensorElement:
        q = Fraction(q)
        return self._make({s: c.scale(q) for s, c in self.terms.items()})

    def scale_scalar(self, s: TruncatedScalar) -> TensorElement:
        return self._make(
            {slots: c * s for slots, c in self.terms.items()},
            min(self.effective_order, s.effective_order),
        )

    def permute(self, perm: tuple[int, ...]) -> TensorElement:
        """Reindex slots: new slot i holds old slot perm[i]."""
        if sorted(perm) != list(range(self.nslots)):
            raise SlotMismatch(f"{perm} is not a permutation of {self.nslots} slots")
        return self._make(
            {tuple(slots[p] for p in perm): c for slots, c in self.terms.items()}
        )

    def swap(self) -> TensorElement:
        """The 2-slot flip used for R_21 and the opposite coproduct."""
        return self.permute((1, 0))

    def embed_slots(self, nslots: int, positions: tuple[int, ...]) -> TensorElement:
        """Spread this tensor's slots into ``positions`` of a wider tensor."""
        if len(positions) != self.nslots:
            raise SlotMismatch("positions must name every existing slot")
        terms = {}
        for slots, coeff in self.terms.items():
            new = [()] * nslots
            for word, pos in zip(slots, positions):
                new[pos] = word
            terms[tuple(new)] = coeff
        return TensorElement(
            self.alphabet, nslots, self.order, self.eps_bound, terms, self.effective_order
        )

    def slot_apply(self, slot: int, fn) -> TensorElement:
        """Apply word -> AlgebraElement ``fn`` to one slot, keeping the rest."""
        out = self.zero_like()
        for slots, coeff in self.terms.items():
            image = fn(slots[slot])
            for word, c in image.terms.items():
                new = list(slots)
                new[slot] = word
                piece = TensorElement(
                    self.alphabet, self.nslots, self.order, self.eps_bound,
                    {tuple(new): coeff * c},
                )
                out = out + piece
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, TensorElement):
            return NotImplemented
        return (
            self.alphabet == other.alphabet
            and self.nslots == other.nslots
            and self.order == other.order
            and self.eps_bound == other.eps_bound
            and self.terms == other.terms
        )

    def __hash__(self) -> int:
        return hash((self.alphabet, self.nslots, self.order, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def min_h_order(self) -> int:
        if not self.terms:
            return self.order + 1
        return min(c.min_h_order() for c in self.terms.values())

    def limit_epsilon(self) -> TensorElement:
        return self._make({s: c.limit_epsilon() for s, c in self.terms.items()})

    def substitute_h(self, mode: str) -> TensorElement:
        return self._make({s: c.substitute_h(mode) for s, c in self.terms.items()})

    def with_eps_bound(self, eps_bound: int) -> TensorElement:
        return TensorElement(
            self.alphabet, self.nslots, self.order, eps_bound,
            {s: c.with_eps_bound(eps_bound) for s, c in self.terms.items()},
            self.effective_order,
        )

    def exact_divide_h(self, k: int) -> TensorElement:
        return self._make(
            {s: c.exact_divide_h(k) for s, c in self.terms.items()},
            self.effective_order - k,
        )

    def render(self) -> str:
        if not self.terms:
            return "0"
        out = []
        key = lambda slots: (sum(len(w) for w in slots), slots)
        for slots in sorted(self.terms, key=key):
            word_text = "@".join(self.alphabet.word_text(w) for w in slots)
            text, negative = _term_text(word_text, self.terms[slots])
            if not out:
                out.append(f"-{text}" if negative else text)
            else:
                out.append(f"- {text}" if negative else f"+ {text}")
        return " ".join(out)

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"TensorElement({self.render()!r}, slots={self.nslots})"


# -- analytic series ---------------------------------------------------------


def _series_coefficient(name: str, k: int) -> Fraction:
    if name == "exp":
        return Fraction(1, math.factorial(k))
    if name == "sinh":
        return Fraction(1, math.factorial(k)) if k % 2 == 1 else Fraction(0)
    if name == "cosh":
        return Fraction(1, math.factorial(k)) if k % 2 == 0 else Fraction(0)
    if name == "sinhc":
        # sinh(x)/x as an exact series: sum x^(2m) / (2m+1)!
        return Fraction(1, math.factorial(k + 1)) if k % 2 == 0 else Fraction(0)
    raise ValueError(f"unknown series {name!r}")


SERIES_NAMES = ("exp", "sinh", "cosh", "sinhc")


def apply_series(name: str, x):
    """Evaluate exp/sinh/cosh/sinhc on an element whose every term carries h.

    The positive h order makes x**k vanish beyond the truncation order, so the
    series is a finite polynomial.
    """
    if name not in SERIES_NAMES:
        raise ValueError(f"unknown series {name!r}")
    if x.min_h_order() < 1:
        raise NonNilpotentArgument(
            f"{name} argument must have h order >= 1 (got {x.min_h_order()})"
        )
    acc = x.one_like().scale(_series_coefficient(name, 0))
    power = x.one_like()
    for k in range(1, x.order + 1):
        power = power * x
        if power.is_zero():
            break
        coeff = _series_coefficient(name, k)
        if coeff:
            acc = acc + power.scale(coeff)
    return acc


def series_inverse(x):
    """Multiplicative inverse of 1 + r with r of positive h order (geometric series)."""
    one = x.one_like()
    r = x - one
    if r.is_zero():
        return one
    unit_key = next(iter(one.terms))
    unit_coeff = x.terms.get(unit_key)
    if unit_coeff is None or not unit_coeff.is_one() or r.min_h_order() < 1:
        raise NotInvertible("series inverse needs the form 1 + (terms of h order >= 1)")
    acc = one
    power = one
    sign = 1
    for _ in range(x.order):
        power = power * r
        if power.is_zero():
            break
        sign = -sign
        acc = acc + power.scale(sign)
    return acc
