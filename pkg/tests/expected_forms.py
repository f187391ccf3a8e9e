"""Frozen reference forms the symbolic layer must reproduce.

These are oracles: transcribed independently of the implementation and kept
in the exact spelling they are conventionally written in (bracket entries in
slot order, not sorted).  Tests canonicalize them on their own before
comparing.
"""

from __future__ import annotations

from singbench.brackets import BracketPolynomial

# Twelve endpoint slots a..l; legs are the pairs (a,b), (c,d), (e,f), (g,h),
# (i,j), (k,l).  The generic superbracket is this signed sum of 24 products
# of three brackets.
GENERIC_24_TERMS: tuple[tuple[int, tuple[str, str, str]], ...] = (
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

# Reduced form for the octahedral leg order (ab, af, cb, cd, ed, ef).
OCTAHEDRAL_2_TERMS: tuple[tuple[int, tuple[str, str, str]], ...] = (
    (+1, ("abfc", "acde", "bdef")),
    (+1, ("abfd", "acbe", "cdef")),
)
OCTAHEDRAL_LEGS = (("a", "b"), ("a", "f"), ("c", "b"), ("c", "d"), ("e", "d"), ("e", "f"))

# Same legs in the altered order (ab, cd, af, cb, ed, ef): four surviving
# terms (two of them cancel under full canonical merging).
ALTERED_4_TERMS: tuple[tuple[int, tuple[str, str, str]], ...] = (
    (-1, ("abcd", "afce", "bdef")),
    (+1, ("abcd", "afbe", "cdef")),
    (+1, ("abcf", "dcbe", "adef")),
    (-1, ("abdc", "cafe", "bdef")),
)
ALTERED_LEGS = (("a", "b"), ("c", "d"), ("a", "f"), ("c", "b"), ("e", "d"), ("e", "f"))

# Three bundles of concurrent lines: a single surviving product of three
# tetrahedron brackets.
CONCURRENT_LEGS = (
    ("S1", "A1"),
    ("B1", "S1"),
    ("C1", "S1"),
    ("S3", "A3"),
    ("S3", "B3"),
    ("S2", "A2"),
)
CONCURRENT_TERM = (("S1", "A1", "B1", "C1"), ("S1", "S3", "A3", "B3"), ("S1", "S3", "S2", "A2"))


def as_polynomial(terms, combine: bool = True) -> BracketPolynomial:
    """Canonicalize a transcribed term list into a polynomial."""
    return BracketPolynomial.from_monomials(
        ((coeff, [tuple(br) for br in brackets]) for coeff, brackets in terms),
        combine=combine,
    )
