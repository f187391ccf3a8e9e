"""Superbracket of six lines: the coordinate-free Jacobian determinant.

The superbracket of six lines, each given by an ordered pair of points,
expands into 24 products of three point brackets over the 12 endpoint slots.
Instantiating the template with a structure's leg endpoints and dropping
monomials with repeated labels inside a bracket reproduces the reduced forms
a symbolic run would print.

Expansion keeps one monomial per surviving template term (each canonicalized
on its own).  Two survivors may share a bracket multiset with opposite signs;
they are reported as distinct monomials, matching how reduced forms are
written and counted, while all downstream algebra uses the combined form.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Sequence

from .brackets import (
    BracketPolynomial,
    InvalidInputError,
    Label,
    MonomialKey,
    sort_with_parity,
)

Leg = tuple[Label, Label]
LegOrder = tuple[Leg, Leg, Leg, Leg, Leg, Leg]

LEG_COUNT = 6

# A reduced form with more monomials than this is worth a reordering search.
AUTO_REDUCE_THRESHOLD = 4

# The 24-term expansion over endpoint slots a..l, where legs 1..6 occupy
# slot pairs (a,b), (c,d), (e,f), (g,h), (i,j), (k,l).
SUPERBRACKET_TEMPLATE: tuple[tuple[int, tuple[str, str, str]], ...] = (
    (-1, ("abcd", "efgi", "hjkl")),
    (+1, ("abcd", "efhi", "gjkl")),
    (+1, ("abcd", "efgj", "hikl")),
    (-1, ("abcd", "efhj", "gikl")),
    (+1, ("abce", "dfgh", "ijkl")),
    (-1, ("abde", "cfgh", "ijkl")),
    (-1, ("abcf", "degh", "ijkl")),
    (+1, ("abdf", "cegh", "ijkl")),
    (-1, ("abce", "dghi", "fjkl")),
    (+1, ("abde", "cghi", "fjkl")),
    (+1, ("abcf", "dghi", "ejkl")),
    (+1, ("abce", "dghj", "fikl")),
    (-1, ("abdf", "cghi", "ejkl")),
    (-1, ("abde", "cghj", "fikl")),
    (-1, ("abcf", "dghj", "eikl")),
    (+1, ("abdf", "cghj", "eikl")),
    (+1, ("abcg", "defi", "hjkl")),
    (-1, ("abdg", "cefi", "hjkl")),
    (-1, ("abch", "defi", "gjkl")),
    (-1, ("abcg", "defj", "hikl")),
    (+1, ("abdh", "cefi", "gjkl")),
    (+1, ("abdg", "cefj", "hikl")),
    (+1, ("abch", "defj", "gikl")),
    (-1, ("abdh", "cefj", "gikl")),
)

_SLOTS = "abcdefghijkl"
_COMPILED = tuple(
    (sign, tuple(tuple(_SLOTS.index(ch) for ch in br) for br in brs))
    for sign, brs in SUPERBRACKET_TEMPLATE
)


def _check_legs(legs: Iterable[Sequence[Label]]) -> LegOrder:
    out = tuple(tuple(leg) for leg in legs)
    if len(out) != LEG_COUNT:
        raise InvalidInputError(f"a superbracket takes {LEG_COUNT} legs, got {len(out)}")
    for leg in out:
        if len(leg) != 2:
            raise InvalidInputError(f"a leg is a pair of point labels, got {leg!r}")
    return out  # type: ignore[return-value]


def expand_superbracket(legs: Iterable[Sequence[Label]]) -> BracketPolynomial:
    """Instantiate the 24-term template with the given leg order.

    Each monomial is canonicalized (bracket labels sorted, signs absorbed,
    brackets sorted); monomials whose brackets repeat a label vanish.
    Surviving template terms are kept distinct rather than merged.
    """
    order = _check_legs(legs)
    assignment = tuple(itertools.chain.from_iterable(order))
    monos: list[tuple[int, MonomialKey]] = []
    for sign, brackets in _COMPILED:
        coeff = sign
        key = []
        for br in brackets:
            bsign, ordered = sort_with_parity(assignment[i] for i in br)
            if any(x == y for x, y in zip(ordered, ordered[1:])):
                coeff = 0
                break
            coeff *= bsign
            key.append(ordered)
        if coeff:
            key.sort()
            monos.append((coeff, tuple(key)))
    return BracketPolynomial(monos, combine=False)


def monomial_count(p: BracketPolynomial) -> int:
    """Number of monomials as stored (survivors for a raw expansion)."""
    return p.monomial_count


def suggest_auto_reduce(p: BracketPolynomial) -> bool:
    """Whether a reordering search is worth running on this form."""
    return monomial_count(p) > AUTO_REDUCE_THRESHOLD


def shortest_form_search(
    legs: Iterable[Sequence[Label]],
) -> tuple[LegOrder, BracketPolynomial]:
    """Expand all 720 leg orders and keep the first one of minimal length.

    Permutations are visited in lexicographic index order, so the result is
    deterministic for a fixed input order.
    """
    order = _check_legs(legs)
    best: tuple[LegOrder, BracketPolynomial] | None = None
    for perm in itertools.permutations(range(LEG_COUNT)):
        candidate = tuple(order[i] for i in perm)
        p = expand_superbracket(candidate)
        if best is None or monomial_count(p) < monomial_count(best[1]):
            best = (candidate, p)  # type: ignore[assignment]
    assert best is not None
    return best
