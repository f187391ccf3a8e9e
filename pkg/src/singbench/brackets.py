"""Bracket algebra over labeled projective points in 3-space.

A bracket ``[abcd]`` stands for the 4x4 determinant of the homogeneous
coordinate columns of four points, so it is antisymmetric in its entries and
vanishes when a label repeats.  Polynomials in brackets are kept in a
canonical form: labels sorted inside each bracket (sign absorbed into the
coefficient) and brackets sorted inside each monomial, so equal content
compares equal structurally.

A monomial list may intentionally carry two monomials with the same bracket
multiset (see :meth:`BracketPolynomial.combined`); every algebraic operation
returns a fully combined polynomial, and equality always compares combined
forms.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Iterator, Mapping, Sequence

Label = str
Bracket = tuple[Label, Label, Label, Label]
# A monomial is a product of brackets, stored sorted.
MonomialKey = tuple[Bracket, ...]

# Points per bracket; also the step bound for extensors.
PROJECTIVE_DIM = 4


class InvalidInputError(ValueError):
    """An operation was called outside its documented domain."""


def sort_with_parity(labels: Iterable[Label]) -> tuple[int, tuple[Label, ...]]:
    """Sort labels ascending, returning (permutation sign, sorted tuple)."""
    items = list(labels)
    sign = 1
    for i in range(1, len(items)):
        j = i
        while j > 0 and items[j - 1] > items[j]:
            items[j - 1], items[j] = items[j], items[j - 1]
            sign = -sign
            j -= 1
    return sign, tuple(items)


def normalize_bracket(points: Sequence[Label]) -> tuple[int, Bracket | None]:
    """Canonicalize a bracket.

    Returns ``(sign, bracket)`` with the labels sorted ascending and the
    antisymmetry sign pulled out, or ``(0, None)`` when a label repeats (the
    bracket is identically zero).
    """
    pts = tuple(points)
    if len(pts) != PROJECTIVE_DIM:
        raise InvalidInputError(
            f"a bracket takes exactly {PROJECTIVE_DIM} labels, got {len(pts)}"
        )
    if any(not p for p in pts):
        raise InvalidInputError("bracket labels must be non-empty strings")
    sign, ordered = sort_with_parity(pts)
    for a, b in zip(ordered, ordered[1:]):
        if a == b:
            return 0, None
    return sign, ordered  # type: ignore[return-value]


def _normalize_monomial(coeff: int, brackets: Iterable[Sequence[Label]]) -> tuple[int, MonomialKey]:
    """Canonicalize one product of brackets; coefficient 0 when any bracket dies."""
    canon = []
    for raw in brackets:
        sign, br = normalize_bracket(raw)
        if sign == 0:
            return 0, ()
        coeff *= sign
        canon.append(br)
    canon.sort()
    return coeff, tuple(canon)


class BracketPolynomial:
    """Integer-coefficient polynomial in brackets.

    Monomials are stored sorted; the empty product is the scalar unit, so
    constants embed as ``{(): c}``.  Use :meth:`combined` to merge monomials
    that share a bracket multiset; arithmetic does this automatically.
    """

    __slots__ = ("_monos",)

    def __init__(self, monomials: Iterable[tuple[int, MonomialKey]] = (), *, combine: bool = True):
        monos = [(c, k) for c, k in monomials if c]
        monos.sort(key=lambda ck: (ck[1], ck[0]))
        if combine:
            merged: dict[MonomialKey, int] = {}
            for c, k in monos:
                merged[k] = merged.get(k, 0) + c
            monos = sorted(
                ((c, k) for k, c in merged.items() if c), key=lambda ck: (ck[1], ck[0])
            )
        self._monos = tuple(monos)

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls) -> "BracketPolynomial":
        return cls()

    @classmethod
    def unit(cls, coeff: int = 1) -> "BracketPolynomial":
        """The scalar ``coeff`` (empty bracket product)."""
        return cls([(coeff, ())])

    @classmethod
    def single(cls, coeff: int, brackets: Iterable[Sequence[Label]]) -> "BracketPolynomial":
        """One monomial ``coeff * [..][..]..``; brackets get canonicalized."""
        c, key = _normalize_monomial(coeff, brackets)
        return cls([(c, key)])

    @classmethod
    def from_monomials(
        cls, pairs: Iterable[tuple[int, Iterable[Sequence[Label]]]], *, combine: bool = True
    ) -> "BracketPolynomial":
        monos = [_normalize_monomial(c, brs) for c, brs in pairs]
        return cls(monos, combine=combine)

    # -- inspection -----------------------------------------------------

    def monomials(self) -> tuple[tuple[int, MonomialKey], ...]:
        """Stored monomials as (coefficient, sorted bracket tuple), sorted."""
        return self._monos

    @property
    def monomial_count(self) -> int:
        return len(self._monos)

    def is_zero(self) -> bool:
        """True when the combined canonical form has no monomials."""
        return not self.combined()._monos

    def labels(self) -> set[Label]:
        out: set[Label] = set()
        for _, key in self._monos:
            for br in key:
                out.update(br)
        return out

    def brackets(self) -> set[Bracket]:
        return {br for _, key in self._monos for br in key}

    def combined(self) -> "BracketPolynomial":
        """Merge monomials sharing a bracket multiset (canonical form)."""
        merged: dict[MonomialKey, int] = {}
        for c, k in self._monos:
            merged[k] = merged.get(k, 0) + c
        if all(c for c in merged.values()) and len(merged) == len(self._monos):
            return self
        return BracketPolynomial(((c, k) for k, c in merged.items() if c), combine=False)

    # -- algebra ----------------------------------------------------------

    def __add__(self, other: "BracketPolynomial | int") -> "BracketPolynomial":
        if isinstance(other, int):
            other = BracketPolynomial.unit(other) if other else BracketPolynomial.zero()
        if not isinstance(other, BracketPolynomial):
            return NotImplemented
        return BracketPolynomial(itertools.chain(self._monos, other._monos))

    __radd__ = __add__

    def __neg__(self) -> "BracketPolynomial":
        return BracketPolynomial(((-c, k) for c, k in self._monos), combine=False)

    def __sub__(self, other: "BracketPolynomial | int") -> "BracketPolynomial":
        if isinstance(other, int):
            other = BracketPolynomial.unit(other) if other else BracketPolynomial.zero()
        if not isinstance(other, BracketPolynomial):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other: "BracketPolynomial | int") -> "BracketPolynomial":
        if isinstance(other, int):
            return BracketPolynomial(((c * other, k) for c, k in self._monos))
        if not isinstance(other, BracketPolynomial):
            return NotImplemented
        out = []
        for ca, ka in self._monos:
            for cb, kb in other._monos:
                out.append((ca * cb, tuple(sorted(ka + kb))))
        return BracketPolynomial(out)

    __rmul__ = __mul__

    def substitute(self, mapping: Mapping[Label, Label]) -> "BracketPolynomial":
        """Relabel points; brackets renormalize and like monomials combine."""
        out = []
        for coeff, key in self._monos:
            c, k = _normalize_monomial(
                coeff, [tuple(mapping.get(p, p) for p in br) for br in key]
            )
            out.append((c, k))
        return BracketPolynomial(out)

    # -- comparison / display ---------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = BracketPolynomial.unit(other) if other else BracketPolynomial.zero()
        if not isinstance(other, BracketPolynomial):
            return NotImplemented
        return self.combined()._monos == other.combined()._monos

    def __hash__(self) -> int:
        return hash(self.combined()._monos)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def equals_up_to_sign(self, other: "BracketPolynomial") -> bool:
        """True when self == other or self == -other (one global sign)."""
        return self == other or self == -other

    def __str__(self) -> str:
        if not self._monos:
            return "0"
        tight = all(len(p) == 1 for p in self.labels())
        parts = []
        for i, (coeff, key) in enumerate(self._monos):
            sign = "-" if coeff < 0 else ("+" if i else "")
            mag = abs(coeff)
            if key:
                body = "".join("[" + ("" if tight else " ").join(br) + "]" for br in key)
                head = "" if mag == 1 else str(mag)
            else:
                body = str(mag)
                head = ""
            parts.append(f"{sign} {head}{body}".strip() if i else f"{sign}{head}{body}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"BracketPolynomial({str(self)})"


def poly_add(p: BracketPolynomial, q: BracketPolynomial) -> BracketPolynomial:
    """Sum of two bracket polynomials in combined canonical form."""
    return p + q


def substitute_labels(p: BracketPolynomial, mapping: Mapping[Label, Label]) -> BracketPolynomial:
    return p.substitute(mapping)


def swap_interchange_test(p: BracketPolynomial, x: Label, y: Label) -> bool:
    """Whether ``p + p(x <-> y) == 0``, i.e. x and y are interchangeable.

    Purely syntactic: the sum must cancel termwise in canonical form.
    """
    if x == y:
        raise InvalidInputError("swap test needs two distinct labels")
    swapped = p.substitute({x: y, y: x})
    return (p + swapped).is_zero()


class Extensor:
    """Formal sum of decomposable step-k extensors with polynomial weights.

    Terms are keyed by sorted label tuples of length ``step``; each weight is
    a :class:`BracketPolynomial`.
    """

    __slots__ = ("_step", "_terms")

    def __init__(self, step: int, terms: Mapping[tuple[Label, ...], BracketPolynomial] | None = None):
        if not 1 <= step <= PROJECTIVE_DIM:
            raise InvalidInputError(f"extensor step must be in 1..{PROJECTIVE_DIM}, got {step}")
        self._step = step
        clean: dict[tuple[Label, ...], BracketPolynomial] = {}
        for labels, coeff in (terms or {}).items():
            if len(labels) != step:
                raise InvalidInputError("term width disagrees with extensor step")
            if not coeff.is_zero():
                clean[labels] = coeff
        self._terms = clean

    @classmethod
    def from_labels(cls, labels: Sequence[Label], coeff: "BracketPolynomial | int" = 1) -> "Extensor":
        """Join of distinct points, canonicalized; zero if a label repeats."""
        sign, ordered = sort_with_parity(labels)
        if isinstance(coeff, int):
            coeff = BracketPolynomial.unit(coeff)
        step = len(ordered)
        if any(a == b for a, b in zip(ordered, ordered[1:])):
            return cls(step)
        return cls(step, {ordered: coeff * sign})

    @classmethod
    def point(cls, label: Label) -> "Extensor":
        return cls.from_labels([label])

    @property
    def step(self) -> int:
        return self._step

    def is_zero(self) -> bool:
        return not self._terms

    def terms(self) -> list[tuple[tuple[Label, ...], BracketPolynomial]]:
        return sorted(self._terms.items())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Extensor):
            return NotImplemented
        return self._step == other._step and self.terms() == other.terms()

    def __neg__(self) -> "Extensor":
        return Extensor(self._step, {k: -v for k, v in self._terms.items()})

    def __repr__(self) -> str:
        body = " + ".join(f"({coeff!s})·{''.join(k)}" for k, coeff in self.terms()) or "0"
        return f"Extensor<{self._step}>({body})"


def join(a: Extensor, b: Extensor) -> Extensor:
    """Exterior product; vanishing terms (shared labels) drop out."""
    step = a.step + b.step
    if step > PROJECTIVE_DIM:
        raise InvalidInputError(f"join step {step} exceeds {PROJECTIVE_DIM}")
    acc: dict[tuple[Label, ...], BracketPolynomial] = {}
    for la, ca in a.terms():
        for lb, cb in b.terms():
            sign, ordered = sort_with_parity(la + lb)
            if any(x == y for x, y in zip(ordered, ordered[1:])):
                continue
            coeff = ca * cb * sign
            acc[ordered] = acc.get(ordered, BracketPolynomial.zero()) + coeff
    return Extensor(step, acc)


def meet(a: Extensor, b: Extensor) -> "Extensor | BracketPolynomial":
    """Shuffle-sum meet of two extensors.

    For steps k and h with ``k + h >= 4``, every way of picking ``4 - h``
    labels from a term of ``a`` contributes the bracket of those labels with
    the term of ``b``, signed by the shuffle parity, times the remaining
    labels.  A step-0 result is returned as a plain polynomial.
    """
    k, h = a.step, b.step
    if k + h < PROJECTIVE_DIM:
        raise InvalidInputError(f"meet undefined for steps {k}+{h} < {PROJECTIVE_DIM}")
    take = PROJECTIVE_DIM - h
    out_step = k + h - PROJECTIVE_DIM
    scalar = BracketPolynomial.zero()
    acc: dict[tuple[Label, ...], BracketPolynomial] = {}
    for la, ca in a.terms():
        for lb, cb in b.terms():
            for idx in itertools.combinations(range(k), take):
                # parity of the (take, k-take) shuffle
                sign = -1 if sum(idx) % 2 != sum(range(take)) % 2 else 1
                bsign, br = normalize_bracket(tuple(la[i] for i in idx) + lb)
                if bsign == 0:
                    continue
                coeff = ca * cb * (sign * bsign) * BracketPolynomial.single(1, [br])
                rest = tuple(la[i] for i in range(k) if i not in idx)
                if out_step == 0:
                    scalar = scalar + coeff
                else:
                    acc[rest] = acc.get(rest, BracketPolynomial.zero()) + coeff
    if out_step == 0:
        return scalar
    return Extensor(out_step, acc)


def meet_all(first: Extensor, *rest: Extensor) -> "Extensor | BracketPolynomial":
    """Left fold of :func:`meet` over several extensors."""
    out: Extensor | BracketPolynomial = first
    for e in rest:
        if not isinstance(out, Extensor):
            raise InvalidInputError("meet chain already reached a scalar")
        out = meet(out, e)
    return out
