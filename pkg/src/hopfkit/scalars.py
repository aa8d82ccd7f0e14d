"""Ground ring: exact rational polynomials in h modulo h**(N+1), bounded Laurent in eps.

Every coefficient in the toolkit lives here.  Values are immutable and all
operations are pure, so scalars can be shared freely between concurrent
verification tasks.
"""
from __future__ import annotations

from fractions import Fraction

from .errors import EpsOverflow, MixedTruncation, NotDivisible, SingularLimit

Rational = Fraction

# term key: (h_power, eps_power)
_Key = tuple[int, int]


class TruncatedScalar:
    """Finite map (h_power, eps_power) -> Rational with 0 <= h_power <= order
    and |eps_power| <= eps_bound.

    ``effective_order`` records how many h orders of the value are trusted;
    exact division by h lowers it.  It is metadata: equality and rendering
    ignore it.
    """

    __slots__ = ("order", "eps_bound", "terms", "effective_order", "_hash")

    def __init__(
        self,
        order: int,
        eps_bound: int,
        terms: dict[_Key, Fraction] | None = None,
        effective_order: int | None = None,
    ):
        if order < 0 or eps_bound < 0:
            raise ValueError("order and eps_bound must be non-negative")
        clean: dict[_Key, Fraction] = {}
        for (hp, ep), coeff in (terms or {}).items():
            if hp < 0:
                raise ValueError(f"negative h power {hp}")
            if hp > order:
                continue  # truncation
            if abs(ep) > eps_bound:
                raise EpsOverflow(f"eps power {ep} outside bound {eps_bound}")
            q = Fraction(coeff)
            if q:
                clean[(hp, ep)] = q
        self.order = order
        self.eps_bound = eps_bound
        self.terms = clean
        self.effective_order = order if effective_order is None else effective_order
        self._hash: int | None = None

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, order: int, eps_bound: int = 0) -> TruncatedScalar:
        return cls(order, eps_bound, {})

    @classmethod
    def one(cls, order: int, eps_bound: int = 0) -> TruncatedScalar:
        return cls(order, eps_bound, {(0, 0): Fraction(1)})

    @classmethod
    def rational(cls, q, order: int, eps_bound: int = 0) -> TruncatedScalar:
        return cls(order, eps_bound, {(0, 0): Fraction(q)})

    @classmethod
    def monomial(cls, q, h_power: int, eps_power: int, order: int, eps_bound: int = 0) -> TruncatedScalar:
        return cls(order, eps_bound, {(h_power, eps_power): Fraction(q)})

    @classmethod
    def h_power(cls, k: int, order: int, eps_bound: int = 0) -> TruncatedScalar:
        return cls.monomial(1, k, 0, order, eps_bound)

    @classmethod
    def eps_power(cls, k: int, order: int, eps_bound: int = 0) -> TruncatedScalar:
        return cls.monomial(1, 0, k, order, eps_bound)

    # -- structure ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        return self.terms == {(0, 0): Fraction(1)}

    def min_h_order(self) -> int:
        """Smallest h power with a nonzero coefficient; order + 1 for zero."""
        if not self.terms:
            return self.order + 1
        return min(hp for hp, _ in self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get((0, 0), Fraction(0))

    def _compat(self, other: TruncatedScalar) -> None:
        if self.order != other.order or self.eps_bound != other.eps_bound:
            raise MixedTruncation(
                f"operands truncated differently: (N={self.order}, L={self.eps_bound})"
                f" vs (N={other.order}, L={other.eps_bound})"
            )

    # -- ring operations ---------------------------------------------------

    def __add__(self, other: TruncatedScalar) -> TruncatedScalar:
        self._compat(other)
        terms = dict(self.terms)
        for key, coeff in other.terms.items():
            terms[key] = terms.get(key, Fraction(0)) + coeff
        return TruncatedScalar(
            self.order, self.eps_bound, terms, min(self.effective_order, other.effective_order)
        )

    def __sub__(self, other: TruncatedScalar) -> TruncatedScalar:
        return self + (-other)

    def __neg__(self) -> TruncatedScalar:
        return TruncatedScalar(
            self.order, self.eps_bound, {k: -v for k, v in self.terms.items()}, self.effective_order
        )

    def __mul__(self, other: TruncatedScalar) -> TruncatedScalar:
        self._compat(other)
        terms: dict[_Key, Fraction] = {}
        for (h1, e1), c1 in self.terms.items():
            for (h2, e2), c2 in other.terms.items():
                hp = h1 + h2
                if hp > self.order:
                    continue  # truncated away before the eps bound can complain
                ep = e1 + e2
                if abs(ep) > self.eps_bound:
                    raise EpsOverflow(
                        f"product eps power {ep} exceeds bound {self.eps_bound}"
                    )
                key = (hp, ep)
                terms[key] = terms.get(key, Fraction(0)) + c1 * c2
        return TruncatedScalar(
            self.order, self.eps_bound, terms, min(self.effective_order, other.effective_order)
        )

    def scale(self, q) -> TruncatedScalar:
        q = Fraction(q)
        return TruncatedScalar(
            self.order, self.eps_bound, {k: q * v for k, v in self.terms.items()}, self.effective_order
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedScalar):
            return NotImplemented
        return (
            self.order == other.order
            and self.eps_bound == other.eps_bound
            and self.terms == other.terms
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.order, self.eps_bound, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"TruncatedScalar({self.render()!r}, N={self.order}, L={self.eps_bound})"

    # -- derived operations ------------------------------------------------

    def exact_divide_h(self, k: int) -> TruncatedScalar:
        """Divide by h**k; every term must carry at least h**k.

        The reliable truncation of the result drops to effective_order - k.
        """
        if k <= 0:
            raise ValueError("k must be positive")
        terms = {}
        for (hp, ep), coeff in self.terms.items():
            if hp < k:
                raise NotDivisible(f"term with h power {hp} cannot be divided by h^{k}")
            terms[(hp - k, ep)] = coeff
        return TruncatedScalar(self.order, self.eps_bound, terms, self.effective_order - k)

    def limit_epsilon(self) -> TruncatedScalar:
        """eps -> 0: keep eps^0 terms; a surviving negative power is an error."""
        terms = {}
        for (hp, ep), coeff in self.terms.items():
            if ep < 0:
                raise SingularLimit(
                    f"term {self._monomial_text(hp, ep, coeff)} diverges as eps -> 0"
                )
            if ep == 0:
                terms[(hp, 0)] = coeff
        return TruncatedScalar(self.order, self.eps_bound, terms, self.effective_order)

    def substitute_h(self, mode: str) -> TruncatedScalar:
        """mode 'zero': keep only h^0 terms; mode 'negate': h -> -h."""
        if mode == "zero":
            terms = {k: v for k, v in self.terms.items() if k[0] == 0}
        elif mode == "negate":
            terms = {k: (-v if k[0] % 2 else v) for k, v in self.terms.items()}
        else:
            raise ValueError(f"unknown substitute_h mode {mode!r}")
        return TruncatedScalar(self.order, self.eps_bound, terms, self.effective_order)

    def with_eps_bound(self, eps_bound: int) -> TruncatedScalar:
        """Re-ground the scalar in a ring with a different eps bound."""
        return TruncatedScalar(self.order, eps_bound, dict(self.terms), self.effective_order)

    # -- rendering ---------------------------------------------------------

    @staticmethod
    def _monomial_text(hp: int, ep: int, coeff: Fraction) -> str:
        parts = []
        c = abs(coeff)
        if c != 1 or (hp == 0 and ep == 0):
            parts.append(str(c) if c.denominator == 1 else f"({c})")
        if hp == 1:
            parts.append("h")
        elif hp > 1:
            parts.append(f"h^{hp}")
        if ep == 1:
            parts.append("e")
        elif ep != 0:
            parts.append(f"e^{ep}")
        return "*".join(parts)

    def render(self) -> str:
        """Canonical text, terms sorted by (h_power, eps_power)."""
        if not self.terms:
            return "0"
        out = []
        for (hp, ep) in sorted(self.terms):
            coeff = self.terms[(hp, ep)]
            text = self._monomial_text(hp, ep, coeff)
            if not out:
                out.append(f"-{text}" if coeff < 0 else text)
            else:
                out.append(f"- {text}" if coeff < 0 else f"+ {text}")
        return " ".join(out)

    def __str__(self) -> str:
        return self.render()


# Functional aliases matching the operation names used in reports and docs.


def exact_divide_h(x: TruncatedScalar, k: int) -> TruncatedScalar:
    return x.exact_divide_h(k)


def limit_epsilon(x: TruncatedScalar) -> TruncatedScalar:
    return x.limit_epsilon()


def substitute_h(x: TruncatedScalar, mode: str) -> TruncatedScalar:
    return x.substitute_h(mode)
