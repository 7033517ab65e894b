"""Partitions, multipartitions, multicharges, and the grouping combinatorics.

A partition is a weakly decreasing tuple of positive integers; a level-l
multipartition is an l-tuple of partitions.  A multicharge is an l-tuple of
integers.  Groupings (compositions of the level) slice a multipartition into
consecutive runs of components; the induced size vector and the dominance
comparison between slices drive the factorization checks elsewhere in the
package.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Sequence

Partition = tuple[int, ...]
MultiPartition = tuple[Partition, ...]
MultiCharge = tuple[int, ...]


def as_partition(parts: Iterable[int]) -> Partition:
    """Normalize to a partition tuple, dropping trailing zeros.

    Raises ValueError when the entries are negative or increase.
    """
    seq = [int(p) for p in parts]
    while seq and seq[-1] == 0:
        seq.pop()
    for i, p in enumerate(seq):
        if p <= 0:
            raise ValueError("partition entries must be positive: %r" % (seq,))
        if i and seq[i - 1] < p:
            raise ValueError("partition entries must weakly decrease: %r" % (seq,))
    return tuple(seq)


def as_multipartition(comps: Iterable[Iterable[int]]) -> MultiPartition:
    return tuple(as_partition(c) for c in comps)


def as_multicharge(charge: Iterable[int]) -> MultiCharge:
    s = tuple(int(c) for c in charge)
    if not s:
        raise ValueError("multicharge must have at least one component")
    return s


def mp_size(mp: MultiPartition) -> int:
    """Total number of boxes over all components."""
    return sum(sum(comp) for comp in mp)


def mp_level(mp: MultiPartition) -> int:
    return len(mp)


def conjugate(p: Partition) -> Partition:
    """Transpose of the Young diagram."""
    if not p:
        return ()
    return tuple(sum(1 for row in p if row > i) for i in range(p[0]))


def dagger(mp: MultiPartition) -> MultiPartition:
    """Componentwise conjugate in reversed component order; an involution."""
    return tuple(conjugate(comp) for comp in reversed(mp))


@lru_cache(maxsize=None)
def enumerate_partitions(n: int) -> tuple[Partition, ...]:
    """All partitions of n, descending lexicographic, so (n,) first."""
    if n < 0:
        raise ValueError("size must be nonnegative")
    if n == 0:
        return ((),)
    out: list[Partition] = []

    def build(remaining: int, cap: int, prefix: tuple[int, ...]):
        if remaining == 0:
            out.append(prefix)
            return
        for part in range(min(cap, remaining), 0, -1):
            build(remaining - part, part, prefix + (part,))

    build(n, n, ())
    return tuple(out)


@lru_cache(maxsize=None)
def enumerate_block(l: int, n: int) -> tuple[MultiPartition, ...]:
    """All level-l multipartitions of total size n, in a fixed total order.

    The order is descending lexicographic on the tuple of component
    partitions (tuples compared entrywise), hence deterministic: for l = 1,
    n = 2 the order is (2), (1,1); for l = 2, n = 1 it is ((1),()) then
    ((),(1)).
    """
    if l < 1:
        raise ValueError("level must be at least 1")
    out: list[MultiPartition] = []

    def build(comp_idx: int, remaining: int, prefix: MultiPartition):
        if comp_idx == l - 1:
            for p in enumerate_partitions(remaining):
                out.append(prefix + (p,))
            return
        for here in range(remaining, -1, -1):
            for p in enumerate_partitions(here):
                build(comp_idx + 1, remaining - here, prefix + (p,))

    build(0, n, ())
    out.sort(reverse=True)
    return tuple(out)


def check_grouping(p: Sequence[int], level: int) -> tuple[int, ...]:
    """Validate a grouping: positive parts summing to the level."""
    g = tuple(int(x) for x in p)
    if not g or any(x < 1 for x in g) or sum(g) != level:
        raise ValueError("grouping %r does not decompose level %d" % (g, level))
    return g


def split(mp: MultiPartition, p: Sequence[int]) -> tuple[MultiPartition, ...]:
    """Slice the components into consecutive runs of lengths p."""
    g = check_grouping(p, len(mp))
    out = []
    pos = 0
    for size in g:
        out.append(mp[pos:pos + size])
        pos += size
    return tuple(out)


def split_charge(charge: MultiCharge, p: Sequence[int]) -> tuple[MultiCharge, ...]:
    """Slice a multicharge the same way split slices a multipartition."""
    g = check_grouping(p, len(charge))
    out = []
    pos = 0
    for size in g:
        out.append(charge[pos:pos + size])
        pos += size
    return tuple(out)


def join(parts: Sequence[MultiPartition]) -> MultiPartition:
    """Concatenate slices back into one multipartition."""
    out: MultiPartition = ()
    for part in parts:
        out = out + tuple(part)
    return out


def alpha_p(mp: MultiPartition, p: Sequence[int]) -> tuple[int, ...]:
    """Vector of slice sizes (N_1, ..., N_g) for the grouping p."""
    return tuple(mp_size(piece) for piece in split(mp, p))


def beta_greater(la: MultiPartition, mu: MultiPartition, p: Sequence[int]) -> bool:
    """Strict dominance between two-slice profiles.

    Defined for groupings with exactly two parts: true when the totals agree
    and the first slice of la is strictly larger than the first slice of mu.
    """
    g = check_grouping(p, len(la))
    if len(g) != 2:
        raise ValueError("the slice comparison needs a two-part grouping, got %r" % (g,))
    if len(mu) != len(la):
        raise ValueError("levels differ")
    a_la = alpha_p(la, g)
    a_mu = alpha_p(mu, g)
    return sum(a_la) == sum(a_mu) and a_la[0] > a_mu[0]


def is_M_dominant(size: int, charge: MultiCharge, M: int) -> bool:
    """Charge-gap condition: s_i - s_{i+1} > M + size for every adjacent pair.

    Vacuously true at level 1.  The inequality is strict.
    """
    return all(charge[i] - charge[i + 1] > M + size for i in range(len(charge) - 1))


# -- wire format ---------------------------------------------------------------


def mp_to_json(mp: MultiPartition) -> list[list[int]]:
    return [list(comp) for comp in mp]


def mp_from_json(data: Sequence[Sequence[int]]) -> MultiPartition:
    return as_multipartition(data)


def mp_to_text(mp: MultiPartition) -> str:
    """Compact display form: components dot-joined, rows dash-joined."""
    comps = []
    for comp in mp:
        comps.append("-".join(str(r) for r in comp) if comp else "0")
    return ".".join(comps)
