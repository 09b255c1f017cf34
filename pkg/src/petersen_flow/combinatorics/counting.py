"""
Closed-form counting: Bell, Stirling and singleton-free numbers, marked-partition
dimensions and eigenvalue multiplicities of the transfer blocks.
"""

from functools import cache
from math import comb, factorial

from sympy.functions.combinatorial.numbers import bell as _sympy_bell
from sympy.functions.combinatorial.numbers import stirling as _sympy_stirling


@cache
def bell(n: int) -> int:
    """B_n, the number of set partitions of n points."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return int(_sympy_bell(n))


@cache
def stirling2(n: int, l: int) -> int:
    """Stirling subset number {n brace l}."""
    if n < 0 or l < 0:
        raise ValueError("arguments must be non-negative")
    if l > n:
        return 0
    return int(_sympy_stirling(n, l, kind=2))


@cache
def no_singleton_count(n: int) -> int:
    """S_n, set partitions of n points without singletons."""
    total = sum(comb(n, q) * (-1) ** q * bell(q) for q in range(n + 1))
    return (-1) ** n * total


@cache
def dim_marked(k: int, l: int) -> int:
    """|A_k^{(l)}|: partitions of k points with l marked, distinguishable blocks."""
    return factorial(l) * sum(comb(k, p) * stirling2(p, l) * bell(k - p) for p in range(k + 1))


@cache
def dim_marked_nosingleton(k: int, l: int) -> int:
    """|Ã_k^{(l)}|: as dim_marked, with no unmarked singleton."""
    return factorial(l) * sum(
        comb(k, p) * stirling2(p, l) * no_singleton_count(k - p) for p in range(k + 1)
    )


def orbit_count(k: int, l: int) -> int:
    """Number of S_l orbits of reduced states over the k+1 points of a width-(k+1) strip."""
    return dim_marked_nosingleton(k + 1, l) // factorial(l)


@cache
def young_count(l: int) -> int:
    """Y_l = Σ_λ dim λ, the number of standard Young tableaux with l cells."""
    return sum(
        factorial(2 * p) // (factorial(p) * 2**p) * comb(l, 2 * p) for p in range(l // 2 + 1)
    )


def n_trivial(k: int, l: int) -> int:
    """Ñ_{k,1}(l): trivial-eigenvalue multiplicity per irrep in the l-link sector."""
    if l == 0:
        return 0
    return dim_marked_nosingleton(k, l - 1) // factorial(l - 1)


def n_nontrivial(k: int, l: int) -> int:
    """Ñ_{k,0}(l): non-trivial eigenvalues in the l-link sector, summed over irreps."""
    if l < 0 or l > k + 1:
        raise ValueError(f"sector l={l} outside 0..{k + 1}")
    if l == 0:
        return no_singleton_count(k + 1)
    if l == k + 1:
        return 0
    if l == k:
        return k
    return young_count(l) * (orbit_count(k, l) - n_trivial(k, l))


def total_nontrivial(k: int) -> int:
    """D̃_k: distinct eigenvalues, counting the trivial one once."""
    return 1 + sum(n_nontrivial(k, l) for l in range(k + 2))


def marked_total(k: int) -> int:
    """B_k^{(0)} = Σ_l |A_k^{(l)}| / l!."""
    return sum(dim_marked(k, l) // factorial(l) for l in range(k + 1))


def marked_total_closed(k: int) -> int:
    """B_k^{(0)} via Σ_r 2^r {k brace r}."""
    return sum(2**r * stirling2(k, r) for r in range(k + 1))


def marked_total_nosingleton(k: int) -> int:
    """B̃_k^{(0)} = Σ_l |Ã_k^{(l)}| / l!."""
    return sum(dim_marked_nosingleton(k, l) // factorial(l) for l in range(k + 1))


def marked_total_nosingleton_closed(k: int) -> int:
    """B̃_k^{(0)} via Σ_r C(k, r) B_r^{(0)} (-1)^{k-r}."""
    return sum(comb(k, r) * marked_total_closed(r) * (-1) ** (k - r) for r in range(k + 1))
