"""Built-in finitely presented algebras with their Hopf data, the classical
(h -> 0) limit, and a line-oriented file format for user-defined presentations.

Built-ins:

  fun-slh2   coordinate algebra of the Jordanian quantum group SL_h(2)
  uh-sl2     Ohn's h-deformed enveloping algebra U_h(sl(2))
  fun-ph11   coordinate algebra of the h-deformed Poincare group P_h(1+1)
  uh-p11     h-deformed Poincare enveloping algebra U_h(p(1+1))
  heis3      3-dim h-deformed Heisenberg algebra
  osc4       4-dim h-deformed oscillator algebra (its Hopf data is expected
             to fail verification; the {A, N} subalgebra passes)
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import Alphabet, AlgebraElement, GeneratorId, TensorElement, apply_series
from .errors import UnknownName, ValidationError
from .report import default_order
from .rewrite import RuleSet, compile_rules
from .scalars import TruncatedScalar


@dataclass(frozen=True)
class Relation:
    """[left, right] = rhs, with rhs a free-algebra element."""

    left: str
    right: str
    rhs: AlgebraElement


@dataclass(frozen=True)
class ExtraRule:
    """Leading-word identity: the word ``pattern`` rewrites to ``replacement``."""

    pattern: tuple[str, ...]
    replacement: AlgebraElement


@dataclass(frozen=True)
class HopfData:
    coproduct: dict[str, TensorElement]
    counit: dict[str, TruncatedScalar]
    antipode: dict[str, AlgebraElement]

    def __eq__(self, other):
        if not isinstance(other, HopfData):
            return NotImplemented
        return (
            self.coproduct == other.coproduct
            and self.counit == other.counit
            and self.antipode == other.antipode
        )


@dataclass(frozen=True)
class Automorphism:
    """Generator relabelling (with optional signs) plus an h mode (keep|negate)."""

    name: str
    genmap: dict[str, str]
    h_mode: str = "keep"


@dataclass(eq=False)
class Presentation:
    name: str
    alphabet: Alphabet
    order: int
    eps_bound: int
    relations: tuple[Relation, ...]
    extra_rules: tuple[ExtraRule, ...] = ()
    hopf: HopfData | None = None
    central: frozenset[str] = frozenset()
    determinant: AlgebraElement | None = None
    annotations: tuple[str, ...] = ()
    automorphisms: tuple[Automorphism, ...] = ()
    _caches: dict = field(default_factory=dict, repr=False)

    # -- element factories ---------------------------------------------------

    def generator(self, name: str) -> AlgebraElement:
        return AlgebraElement.generator(self.alphabet, name, self.order, self.eps_bound)

    def unit(self) -> AlgebraElement:
        return AlgebraElement.unit(self.alphabet, self.order, self.eps_bound)

    def zero(self) -> AlgebraElement:
        return AlgebraElement.zero(self.alphabet, self.order, self.eps_bound)

    def scalar_one(self) -> TruncatedScalar:
        return TruncatedScalar.one(self.order, self.eps_bound)

    def scalar_zero(self) -> TruncatedScalar:
        return TruncatedScalar.zero(self.order, self.eps_bound)

    def generators(self) -> tuple[GeneratorId, ...]:
        return self.alphabet.generator_ids()

    # -- structure -----------------------------------------------------------

    def ruleset(self, fuel: int = 10**6) -> RuleSet:
        key = ("ruleset", True, fuel)
        if key not in self._caches:
            self._caches[key] = compile_rules(self, include_extras=True, fuel=fuel)
        return self._caches[key]

    def ruleset_without_extras(self, fuel: int = 10**6) -> RuleSet:
        key = ("ruleset", False, fuel)
        if key not in self._caches:
            self._caches[key] = compile_rules(self, include_extras=False, fuel=fuel)
        return self._caches[key]

    def relation_rhs(self, x: str, y: str) -> AlgebraElement | None:
        """rhs of [x, y] if that pair (in either order) is a stored relation."""
        for rel in self.relations:
            if (rel.left, rel.right) == (x, y):
                return rel.rhs
            if (rel.left, rel.right) == (y, x):
                return -rel.rhs
        return None

    def __eq__(self, other) -> bool:
        if not isinstance(other, Presentation):
            return NotImplemented
        return (
            self.name == other.name
            and self.alphabet == other.alphabet
            and self.order == other.order
            and self.eps_bound == other.eps_bound
            and self.relations == other.relations
            and self.extra_rules == other.extra_rules
            and self.hopf == other.hopf
            and self.central == other.central
        )

    def __repr__(self) -> str:
        return f"Presentation({self.name!r}, gens={self.alphabet.names})"


# -- built-in constructors -----------------------------------------------------


class _Builder:
    """Shared shorthand for transcribing relation and Hopf formulas."""

    def __init__(self, name: str, names: tuple[str, ...], order: int, degree_cap: int,
                 eps_bound: int):
        self.ab = Alphabet(name, names, degree_cap)
        self.n = order
        self.l = eps_bound
        self.one = AlgebraElement.unit(self.ab, order, eps_bound)
        self.h = TruncatedScalar.h_power(1, order, eps_bound)
        self.sc_one = TruncatedScalar.one(order, eps_bound)
        self.sc_zero = TruncatedScalar.zero(order, eps_bound)

    def g(self, name: str) -> AlgebraElement:
        return AlgebraElement.generator(self.ab, name, self.n, self.l)

    def hx(self, x: AlgebraElement) -> AlgebraElement:
        return x.scale_scalar(self.h)

    def zero(self) -> AlgebraElement:
        return AlgebraElement.zero(self.ab, self.n, self.l)

    def exp(self, x: AlgebraElement) -> AlgebraElement:
        return apply_series("exp", x)

    def sinh(self, x: AlgebraElement) -> AlgebraElement:
        return apply_series("sinh", x)

    def cosh(self, x: AlgebraElement) -> AlgebraElement:
        return apply_series("cosh", x)

    def sinh_over_h(self, gen: AlgebraElement) -> AlgebraElement:
        """sinh(h*gen)/h as an exact series (no precision loss)."""
        return gen * apply_series("sinhc", self.hx(gen))

    def t(self, *factors: AlgebraElement) -> TensorElement:
        return TensorElement.tensor(*factors)


def _fun_slh2(order: int, degree_cap: int, eps_bound: int) -> Presentation:
    b = _Builder("fun-slh2", ("a", "b", "c", "d"), order, degree_cap, eps_bound)
    a, bb, c, d = b.g("a"), b.g("b"), b.g("c"), b.g("d")
    relations = (
        Relation("c", "a", b.hx(c * c)),
        Relation("b", "a", b.hx(b.one) - b.hx(a * a)),
        Relation("a", "d", b.hx(a * c) - b.hx(d * c)),
        Relation("c", "d", b.hx(c * c)),
        Relation("b", "d", b.hx(b.one) - b.hx(d * d)),
        Relation("c", "b", b.hx(a * c) + b.hx(c * d)),
    )
    determinant = a * d - bb * c - b.hx(a * c)
    extras = (ExtraRule(("b", "c"), a * d - b.hx(a * c) - b.one),)
    hopf = HopfData(
        coproduct={
            "a": b.t(a, a) + b.t(bb, c),
            "b": b.t(a, bb) + b.t(bb, d),
            "c": b.t(c, a) + b.t(d, c),
            "d": b.t(c, bb) + b.t(d, d),
        },
        counit={"a": b.sc_one, "b": b.sc_zero, "c": b.sc_zero, "d": b.sc_one},
        antipode={
            "a": d - b.hx(c),
            "b": -bb + b.hx(a) - b.hx(d) + b.hx(b.hx(c)),
            "c": -c,
            "d": a + b.hx(c),
        },
    )
    return Presentation(
        name="fun-slh2", alphabet=b.ab, order=order, eps_bound=eps_bound,
        relations=relations, extra_rules=extras, hopf=hopf, determinant=determinant,
    )


def _uh_sl2(order: int, degree_cap: int, eps_bound: int) -> Presentation:
    b = _Builder("uh-sl2", ("Jp", "J3", "Jm"), order, degree_cap, eps_bound)
    jp, j3, jm = b.g("Jp"), b.g("J3"), b.g("Jm")
    cosh = b.cosh(b.hx(jp))
    e_pos = b.exp(b.hx(jp))
    e_neg = b.exp(-b.hx(jp))
    relations = (
        Relation("J3", "Jp", b.sinh_over_h(jp).scale(2)),
        Relation("J3", "Jm", -(jm * cosh + cosh * jm)),
        Relation("Jp", "Jm", j3),
    )
    hopf = HopfData(
        coproduct={
            "Jp": b.t(jp, b.one) + b.t(b.one, jp),
            "Jm": b.t(jm, e_pos) + b.t(e_neg, jm),
            "J3": b.t(j3, e_pos) + b.t(e_neg, j3),
        },
        counit={"Jp": b.sc_zero, "J3": b.sc_zero, "Jm": b.sc_zero},
        antipode={
            "Jp": -jp,
            "Jm": -(e_pos * jm * e_neg),
            "J3": -(e_pos * j3 * e_neg),
        },
    )
    return Presentation(
        name="uh-sl2", alphabet=b.ab, order=order, eps_bound=eps_bound,
        relations=relations, hopf=hopf,
    )


def _fun_ph11(order: int, degree_cap: int, eps_bound: int) -> Presentation:
    # alpha and delta are mutually inverse; keeping them adjacent in the
    # generator order lets the two determinant rules reach every word that
    # contains both, which is what makes the rule set confluent.
    b = _Builder("fun-ph11", ("alpha", "delta", "beta", "gamma"), order, degree_cap, eps_bound)
    al, de, be, ga = b.g("alpha"), b.g("delta"), b.g("beta"), b.g("gamma")
    relations = (
        Relation("gamma", "alpha", b.zero()),
        Relation("beta", "alpha", b.hx(b.one) - b.hx(al * al)),
        Relation("alpha", "delta", b.zero()),
        Relation("beta", "delta", b.hx(b.one) - b.hx(de * de)),
        Relation("gamma", "delta", b.zero()),
        Relation("gamma", "beta", b.hx(al * ga) + b.hx(ga * de)),
    )
    extras = (
        ExtraRule(("alpha", "delta"), b.one),
        ExtraRule(("delta", "alpha"), b.one),
    )
    hopf = HopfData(
        coproduct={
            "alpha": b.t(al, al),
            "beta": b.t(al, be) + b.t(be, de),
            "gamma": b.t(ga, al) + b.t(de, ga),
            "delta": b.t(de, de),
        },
        counit={"alpha": b.sc_one, "beta": b.sc_zero, "gamma": b.sc_zero, "delta": b.sc_one},
        antipode={
            "alpha": de,
            "beta": -be + b.hx(al) - b.hx(de),
            "gamma": -ga,
            "delta": al,
        },
    )
    return Presentation(
        name="fun-ph11", alphabet=b.ab, order=order, eps_bound=eps_bound,
        relations=relations, extra_rules=extras, hopf=hopf, determinant=al * de,
    )


def _uh_p11(order: int, degree_cap: int, eps_bound: int) -> Presentation:
    b = _Builder("uh-p11", ("Pp", "K", "Pm"), order, degree_cap, eps_bound)
    pp, k, pm = b.g("Pp"), b.g("K"), b.g("Pm")
    cosh = b.cosh(b.hx(pp))
    e_pos = b.exp(b.hx(pp))
    e_neg = b.exp(-b.hx(pp))
    relations = (
        Relation("K", "Pp", b.sinh_over_h(pp)),
        Relation("K", "Pm", -(pm * cosh)),
        Relation("Pp", "Pm", b.zero()),
    )
    hopf = HopfData(
        coproduct={
            "Pp": b.t(pp, b.one) + b.t(b.one, pp),
            "Pm": b.t(pm, e_pos) + b.t(e_neg, pm),
            "K": b.t(k, e_pos) + b.t(e_neg, k),
        },
        counit={"Pp": b.sc_zero, "K": b.sc_zero, "Pm": b.sc_zero},
        antipode={
            "Pp": -pp,
            "Pm": -pm,
            "K": -k + b.sinh(b.hx(pp)),
        },
    )
    return Presentation(
        name="uh-p11", alphabet=b.ab, order=order, eps_bound=eps_bound,
        relations=relations, hopf=hopf,
        annotations=(
            "coproduct(Pm): left tensor factor taken as Pm; the customary printed "
            "form carries a J-minus misprint here, and the contraction from uh-sl2 "
            "independently yields Pm",
        ),
        automorphisms=(
            Automorphism(
                name="lightcone-flip",
                genmap={"K": "K", "Pp": "-Pp", "Pm": "-Pm"},
                h_mode="negate",
            ),
        ),
    )


def _heis3(order: int, degree_cap: int, eps_bound: int) -> Presentation:
    b = _Builder("heis3", ("A", "H", "Ap"), order, degree_cap, eps_bound)
    a, hh, ap = b.g("A"), b.g("H"), b.g("Ap")
    e_pos = b.exp(b.hx(a))
    e_neg = b.exp(-b.hx(a))
    relations = (
        Relation("H", "A", b.zero()),
        Relation("H", "Ap", b.zero()),
        Relation("A", "Ap", hh),
    )
    hopf = HopfData(
        coproduct={
            "A": b.t(a, b.one) + b.t(b.one, a),
            "Ap": b.t(ap, e_pos) + b.t(e_neg, ap),
            "H": b.t(hh, e_pos) + b.t(e_neg, hh),
        },
        counit={"A": b.sc_zero, "H": b.sc_zero, "Ap": b.sc_zero},
        antipode={
            "A": -a,
            "Ap": -(e_pos * ap * e_neg),
            "H": -hh,
        },
    )
    return Presentation(
        name="heis3", alphabet=b.ab, order=order, eps_bound=eps_bound,
        relations=relations, hopf=hopf, central=frozenset({"H"}),
    )


def _osc4(order: int, degree_cap: int, eps_bound: int) -> Presentation:
    b = _Builder("osc4", ("A", "N", "H", "Ap"), order, degree_cap, eps_bound)
    a, nn, hh, ap = b.g("A"), b.g("N"), b.g("H"), b.g("Ap")
    cosh = b.cosh(b.hx(a))
    e_pos = b.exp(b.hx(a))
    e_neg = b.exp(-b.hx(a))
    relations = (
        Relation("A", "Ap", hh),
        Relation("N", "A", -b.sinh_over_h(a)),
        Relation("N", "Ap", (ap * cosh + cosh * ap).scale("1/2")),
        Relation("H", "A", b.zero()),
        Relation("H", "N", b.zero()),
        Relation("H", "Ap", b.zero()),
    )
    hopf = HopfData(
        coproduct={
            "A": b.t(a, b.one) + b.t(b.one, a),
            "Ap": b.t(ap, e_pos) + b.t(e_neg, ap),
            "H": b.t(hh, e_pos) + b.t(e_neg, hh),
            "N": b.t(nn, e_pos) + b.t(e_neg, nn),
        },
        counit={"A": b.sc_zero, "N": b.sc_zero, "H": b.sc_zero, "Ap": b.sc_zero},
        antipode={
            "A": -a,
            "Ap": -(e_pos * ap * e_neg),
            "H": -hh,
            "N": -(e_pos * nn * e_neg),
        },
    )
    return Presentation(
        name="osc4", alphabet=b.ab, order=order, eps_bound=eps_bound,
        relations=relations, hopf=hopf, central=frozenset({"H"}),
    )


def extended_uh_sl2(order: int | None = None, degree_cap: int = 12,
                    eps_bound: int = 0) -> Presentation:
    """uh-sl2 with one adjoined central generator Kc (the u(1) factor).

    Kc carries the same twisted coproduct shape as J3; a plain primitive
    coproduct would make the oscillator contraction singular.
    """
    order = default_order() if order is None else order
    b = _Builder("uh-sl2+u1", ("Jp", "J3", "Jm", "Kc"), order, degree_cap, eps_bound)
    jp, j3, jm, kc = b.g("Jp"), b.g("J3"), b.g("Jm"), b.g("Kc")
    cosh = b.cosh(b.hx(jp))
    e_pos = b.exp(b.hx(jp))
    e_neg = b.exp(-b.hx(jp))
    relations = (
        Relation("J3", "Jp", b.sinh_over_h(jp).scale(2)),
        Relation("J3", "Jm", -(jm * cosh + cosh * jm)),
        Relation("Jp", "Jm", j3),
        Relation("Kc", "Jp", b.zero()),
        Relation("Kc", "J3", b.zero()),
        Relation("Kc", "Jm", b.zero()),
    )
    hopf = HopfData(
        coproduct={
            "Jp": b.t(jp, b.one) + b.t(b.one, jp),
            "Jm": b.t(jm, e_pos) + b.t(e_neg, jm),
            "J3": b.t(j3, e_pos) + b.t(e_neg, j3),
            "Kc": b.t(kc, e_pos) + b.t(e_neg, kc),
        },
        counit={"Jp": b.sc_zero, "J3": b.sc_zero, "Jm": b.sc_zero, "Kc": b.sc_zero},
        antipode={
            "Jp": -jp,
            "Jm": -(e_pos * jm * e_neg),
            "J3": -(e_pos * j3 * e_neg),
            "Kc": -kc,
        },
    )
    return Presentation(
        name="uh-sl2+u1", alphabet=b.ab, order=order, eps_bound=eps_bound,
        relations=relations, hopf=hopf, central=frozenset({"Kc"}),
    )


_BUILTINS = {
    "fun-slh2": _fun_slh2,
    "uh-sl2": _uh_sl2,
    "fun-ph11": _fun_ph11,
    "uh-p11": _uh_p11,
    "heis3": _heis3,
    "osc4": _osc4,
}

BUILTIN_NAMES = tuple(_BUILTINS)


def builtin(name: str, order: int | None = None, degree_cap: int = 12,
            eps_bound: int = 0) -> Presentation:
    """Construct a built-in presentation at the given truncation order."""
    factory = _BUILTINS.get(name)
    if factory is None:
        raise UnknownName(f"no built-in presentation {name!r}; known: {', '.join(BUILTIN_NAMES)}")
    return factory(default_order() if order is None else order, degree_cap, eps_bound)


def classical_limit(p: Presentation) -> Presentation:
    """h -> 0 of every relation rhs and every Hopf expression."""
    relations = tuple(
        Relation(r.left, r.right, r.rhs.substitute_h("zero")) for r in p.relations
    )
    extras = tuple(
        ExtraRule(e.pattern, e.replacement.substitute_h("zero")) for e in p.extra_rules
    )
    hopf = None
    if p.hopf is not None:
        hopf = HopfData(
            coproduct={g: t.substitute_h("zero") for g, t in p.hopf.coproduct.items()},
            counit={g: s.substitute_h("zero") for g, s in p.hopf.counit.items()},
            antipode={g: x.substitute_h("zero") for g, x in p.hopf.antipode.items()},
        )
    det = None if p.determinant is None else p.determinant.substitute_h("zero")
    return Presentation(
        name=f"{p.name}@h0", alphabet=p.alphabet, order=p.order, eps_bound=p.eps_bound,
        relations=relations, extra_rules=extras, hopf=hopf, central=p.central,
        determinant=det,
    )


# -- file format ----------------------------------------------------------------


def save_presentation(p: Presentation) -> str:
    """Serialize to the line-oriented presentation grammar (round-trips with load)."""
    lines = [f"algebra {p.name}"]
    lines.append("params h eps" if p.eps_bound > 0 else "params h")
    lines.append("gens " + " < ".join(p.alphabet.names))
    for rel in p.relations:
        lines.append(f"rel [{rel.left},{rel.right}] = {rel.rhs.render()}")
    for extra in p.extra_rules:
        lines.append(f"extra {'*'.join(extra.pattern)} = {extra.replacement.render()}")
    if p.hopf is not None:
        for g in p.alphabet.names:
            lines.append(f"coproduct {g} = {p.hopf.coproduct[g].render()}")
        for g in p.alphabet.names:
            lines.append(f"counit {g} = {p.hopf.counit[g].render()}")
        for g in p.alphabet.names:
            lines.append(f"antipode {g} = {p.hopf.antipode[g].render()}")
    if p.central:
        lines.append("central " + " ".join(sorted(p.central)))
    return "\n".join(lines) + "\n"


def load_presentation(source: str, order: int | None = None, degree_cap: int = 12,
                      eps_bound: int | None = None) -> Presentation:
    """Parse the presentation grammar; see save_presentation for the layout."""
    from .errors import ParseError
    from .exprs import parse_expression_text

    order = default_order() if order is None else order
    name = None
    has_eps = False
    gen_names: tuple[str, ...] | None = None
    raw_rels: list[tuple[str, str, str, int]] = []
    raw_extras: list[tuple[str, str, int]] = []
    raw_cop: dict[str, tuple[str, int]] = {}
    raw_cou: dict[str, tuple[str, int]] = {}
    raw_ant: dict[str, tuple[str, int]] = {}
    central: set[str] = set()

    for lineno, raw in enumerate(source.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        keyword, _, rest = line.partition(" ")
        rest = rest.strip()
        if keyword == "algebra":
            name = rest
        elif keyword == "params":
            parts = rest.split()
            if not parts or parts[0] != "h":
                raise ParseError("params line must start with 'h'", line=lineno)
            has_eps = "eps" in parts[1:]
        elif keyword == "gens":
            gen_names = tuple(g.strip() for g in rest.split("<"))
            if any(not g for g in gen_names):
                raise ParseError("empty generator name in gens line", line=lineno)
        elif keyword == "rel":
            head, _, rhs = rest.partition("=")
            head = head.strip()
            if not (head.startswith("[") and head.endswith("]")):
                raise ParseError("rel line needs the form rel [x,y] = expr", line=lineno)
            left, _, right = head[1:-1].partition(",")
            raw_rels.append((left.strip(), right.strip(), rhs.strip(), lineno))
        elif keyword == "extra":
            head, _, rhs = rest.partition("=")
            raw_extras.append((head.strip(), rhs.strip(), lineno))
        elif keyword in ("coproduct", "counit", "antipode"):
            head, _, rhs = rest.partition("=")
            target = {"coproduct": raw_cop, "counit": raw_cou, "antipode": raw_ant}[keyword]
            target[head.strip()] = (rhs.strip(), lineno)
        elif keyword == "central":
            central.update(rest.split())
        else:
            raise ParseError(f"unknown keyword {keyword!r}", line=lineno)

    if name is None:
        raise ValidationError("missing 'algebra' line")
    if gen_names is None:
        raise ValidationError("missing 'gens' line")
    if eps_bound is None:
        eps_bound = 2 if has_eps else 0

    alphabet = Alphabet(name, gen_names, degree_cap)

    def parse_line(text: str, lineno: int, what: str):
        try:
            return parse_expression_text(text, alphabet, order, eps_bound,
                                         allow_eps=has_eps)
        except ParseError as exc:
            raise ParseError(f"{what}: {exc}", line=lineno) from exc
        except Exception as exc:
            raise ValidationError(f"{what} (line {lineno}): {exc}") from exc

    relations = []
    for left, right, rhs_text, lineno in raw_rels:
        for g in (left, right):
            if g not in alphabet:
                raise ValidationError(
                    f"relation [{left},{right}] (line {lineno}) uses undeclared generator {g!r}"
                )
        rhs = parse_line(rhs_text, lineno, f"relation [{left},{right}]")
        if isinstance(rhs, TensorElement):
            raise ValidationError(f"relation [{left},{right}] (line {lineno}) is a tensor")
        relations.append(Relation(left, right, rhs))

    extras = []
    for head, rhs_text, lineno in raw_extras:
        pattern_el = parse_line(head, lineno, f"extra {head}")
        if (
            isinstance(pattern_el, TensorElement)
            or len(pattern_el.terms) != 1
            or not next(iter(pattern_el.terms.values())).is_one()
        ):
            raise ValidationError(f"extra pattern {head!r} (line {lineno}) must be a bare word")
        word = next(iter(pattern_el.terms))
        replacement = parse_line(rhs_text, lineno, f"extra {head}")
        extras.append(ExtraRule(tuple(alphabet.names[i] for i in word), replacement))

    hopf = None
    if raw_cop or raw_cou or raw_ant:
        missing = [
            g for g in gen_names
            if g not in raw_cop or g not in raw_cou or g not in raw_ant
        ]
        if missing:
            raise ValidationError(
                f"hopf data must cover every generator; missing: {', '.join(missing)}"
            )
        coproduct = {}
        counit = {}
        antipode = {}
        for g in gen_names:
            text, lineno = raw_cop[g]
            cop = parse_line(text, lineno, f"coproduct {g}")
            if isinstance(cop, AlgebraElement):
                raise ValidationError(f"coproduct {g} (line {lineno}) must be a 2-slot tensor")
            coproduct[g] = cop
            text, lineno = raw_cou[g]
            cou = parse_line(text, lineno, f"counit {g}")
            if isinstance(cou, TensorElement) or any(w for w in cou.terms):
                raise ValidationError(f"counit {g} (line {lineno}) must be a scalar")
            counit[g] = cou.terms.get((), TruncatedScalar.zero(order, eps_bound))
            text, lineno = raw_ant[g]
            ant = parse_line(text, lineno, f"antipode {g}")
            if isinstance(ant, TensorElement):
                raise ValidationError(f"antipode {g} (line {lineno}) must not be a tensor")
            antipode[g] = ant
        hopf = HopfData(coproduct=coproduct, counit=counit, antipode=antipode)

    unknown_central = central - set(gen_names)
    if unknown_central:
        raise ValidationError(f"central names not declared: {', '.join(sorted(unknown_central))}")

    return Presentation(
        name=name, alphabet=alphabet, order=order, eps_bound=eps_bound,
        relations=tuple(relations), extra_rules=tuple(extras), hopf=hopf,
        central=frozenset(central),
    )
