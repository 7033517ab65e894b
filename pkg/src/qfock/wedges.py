"""Semi-infinite wedge words and their bijection with charged multipartitions.

A basis wedge is a strictly decreasing integer sequence (k_1 > k_2 > ...)
that eventually agrees with the vacuum tail k_i = s - i + 1.  We store only
the window: the first r entries.  Each integer index k factors uniquely as

    k = a + n*(b - 1) - n*l*m      with a in 1..n, b in 1..l, m in Z,

which identifies the plain index k with the letter u^(b) indexed by the
level-b coordinate kappa = a - n*m.  Under this identification a wedge word
of total charge s corresponds to one charged multipartition (lambda, s_1..s_l)
with s_1 + ... + s_l = s: component b of the word, read in decreasing
coordinate order, is kappa_i = s_b - i + 1 + lambda^(b)_i.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import ceil, floor
from typing import Sequence

from .multipartitions import (
    MultiCharge,
    MultiPartition,
    as_multicharge,
    as_multipartition,
    mp_size,
)


def decompose(k: int, n: int, l: int) -> tuple[int, int, int]:
    """Factor a plain index as (a, b, m) with k = a + n(b-1) - nlm."""
    a = ((k - 1) % n) + 1
    t = (k - a) // n
    b = (t % l) + 1
    m = (b - 1 - t) // l
    assert k == a + n * (b - 1) - n * l * m
    return a, b, m


def compose(a: int, b: int, m: int, n: int, l: int) -> int:
    """Inverse of decompose."""
    if not (1 <= a <= n and 1 <= b <= l):
        raise ValueError("need 1 <= a <= n and 1 <= b <= l, got a=%r b=%r" % (a, b))
    return a + n * (b - 1) - n * l * m


def coord_of(k: int, n: int, l: int) -> tuple[int, int]:
    """Plain index -> (level-b coordinate kappa, component b)."""
    a, b, m = decompose(k, n, l)
    return a - n * m, b


def plain_of(kappa: int, b: int, n: int, l: int) -> int:
    """(coordinate, component) -> plain index; inverse of coord_of."""
    a = ((kappa - 1) % n) + 1
    m = (a - kappa) // n
    return a + n * (b - 1) - n * l * m


def index_less(k2: int, k1: int, n: int, l: int) -> bool:
    """Strict order on wedge letters; equals plain integer comparison."""
    return k2 < k1


def index_less_triple(k2: int, k1: int, n: int, l: int) -> bool:
    """The same order computed from the (a, b, m) factorizations.

    Letter k1 dominates when its m is smaller, with ties broken by larger b
    then larger a.  Kept alongside index_less so tests can assert the two
    agree everywhere.
    """
    a1, b1, m1 = decompose(k1, n, l)
    a2, b2, m2 = decompose(k2, n, l)
    return (-m1, b1, a1) > (-m2, b2, a2)


@dataclass(frozen=True)
class WedgeWord:
    """Window of a semi-infinite wedge: explicit prefix plus vacuum tail.

    prefix holds the first r plain indices; the implicit tail continues with
    s - r, s - r - 1, ...  A word is ordered when the prefix is strictly
    decreasing (the prefix/tail junction is validated at construction).
    """

    prefix: tuple[int, ...]
    s: int
    n: int
    l: int

    def __post_init__(self):
        if self.prefix and self.prefix[-1] <= self.s - self.r:
            raise ValueError(
                "prefix end %d collides with the vacuum tail of charge %d"
                % (self.prefix[-1], self.s)
            )

    @property
    def r(self) -> int:
        return len(self.prefix)

    def is_ordered(self) -> bool:
        p = self.prefix
        return all(p[i] > p[i + 1] for i in range(len(p) - 1))

    def to_json(self) -> dict:
        return {"prefix": list(self.prefix), "s": self.s, "r": self.r}

    @staticmethod
    def from_json(data: dict, n: int, l: int) -> "WedgeWord":
        prefix = tuple(int(x) for x in data["prefix"])
        if "r" in data and int(data["r"]) != len(prefix):
            raise ValueError("stated window %r does not match prefix length" % (data["r"],))
        return WedgeWord(prefix, int(data["s"]), n, l)


def charge_spread(charge: MultiCharge) -> int:
    return max(charge) - min(charge)


def default_window(size: int, charge: MultiCharge, n: int) -> int:
    """Window policy: smallest multiple of n*l at least size + l*spread + n*l.

    Large enough that every partition of the given size fits the window for
    the given multicharge; stability under enlarging r by n*l is re-checked
    wherever a window is consumed.
    """
    l = len(charge)
    need = size + l * charge_spread(charge) + n * l
    return n * l * ceil(need / (n * l))


def _tail_top_coord(T: int, b: int, n: int, l: int) -> int:
    """Largest coordinate kappa with plain_of(kappa, b) <= T."""
    best = None
    for a in range(1, n + 1):
        j = floor((T - a - n * (b - 1)) / (n * l))
        kappa = a + n * j
        if best is None or kappa > best:
            best = kappa
    return best


def to_wedge(mp: MultiPartition, charge: MultiCharge, n: int, r: int | None = None) -> WedgeWord:
    """Ordered wedge word of the charged multipartition, in window r.

    Raises ValueError when the window is too small to contain every nonzero
    row of the multipartition.
    """
    mp = as_multipartition(mp)
    charge = as_multicharge(charge)
    l = len(charge)
    if len(mp) != l:
        raise ValueError("level mismatch: %d components, %d charges" % (len(mp), l))
    if r is None:
        r = default_window(mp_size(mp), charge, n)
    s = sum(charge)
    T = s - r
    entries: list[int] = []
    for b in range(1, l + 1):
        s_b = charge[b - 1]
        comp = mp[b - 1]
        top = _tail_top_coord(T, b, n, l)
        count = 0
        i = 1
        while True:
            kappa = s_b - i + 1 + (comp[i - 1] if i <= len(comp) else 0)
            if kappa <= top:
                break
            entries.append(plain_of(kappa, b, n, l))
            count += 1
            i += 1
        if len(comp) > count:
            raise ValueError(
                "window r=%d too small for component %d of %r with charge %r"
                % (r, b, mp, charge)
            )
    entries.sort(reverse=True)
    if len(entries) != r:
        raise ValueError(
            "window r=%d does not close onto the vacuum tail (got %d entries)"
            % (r, len(entries))
        )
    word = WedgeWord(tuple(entries), s, n, l)
    assert word.is_ordered()
    return word


def from_wedge(word: WedgeWord) -> tuple[MultiPartition, MultiCharge]:
    """Charged multipartition of an ordered wedge word; inverse of to_wedge."""
    if not word.is_ordered():
        raise ValueError("word is not ordered: %r" % (word.prefix,))
    n, l, s = word.n, word.l, word.s
    T = s - word.r
    by_comp: dict[int, list[int]] = {b: [] for b in range(1, l + 1)}
    for k in word.prefix:
        kappa, b = coord_of(k, n, l)
        by_comp[b].append(kappa)
    comps = []
    charges = []
    for b in range(1, l + 1):
        coords = by_comp[b]
        assert coords == sorted(coords, reverse=True)
        top = _tail_top_coord(T, b, n, l)
        s_b = top + len(coords)
        rows = [kappa - s_b + i - 1 for i, kappa in enumerate(coords, start=1)]
        comps.append(as_partition_rows(rows, word, b))
        charges.append(s_b)
    if sum(charges) != s:
        raise AssertionError(
            "component charges %r do not add up to %d for %r" % (charges, s, word.prefix)
        )
    return tuple(tuple(c) for c in comps), tuple(charges)


def as_partition_rows(rows: Sequence[int], word: WedgeWord, b: int) -> tuple[int, ...]:
    """Strip trailing zeros and validate weak decrease of recovered rows."""
    seq = list(rows)
    while seq and seq[-1] == 0:
        seq.pop()
    for i, v in enumerate(seq):
        ok = v > 0 and (i == 0 or seq[i - 1] >= v)
        if not ok:
            raise AssertionError(
                "component %d of word %r does not decode to a partition: %r"
                % (b, word.prefix, rows)
            )
    return tuple(seq)


def block_sorted_word(mp: MultiPartition, charge: MultiCharge, n: int,
                      r: int | None = None) -> WedgeWord:
    """Prefix regrouped by component: all b=1 letters first, then b=2, ...

    Within each component the letters keep their decreasing order.  The
    result is generally not ordered; normalizing it recovers the ordered
    word times a power of q counted by c_statistic.
    """
    ordered = to_wedge(mp, charge, n, r)
    l = ordered.l
    buckets: dict[int, list[int]] = {b: [] for b in range(1, l + 1)}
    for k in ordered.prefix:
        _, b = coord_of(k, ordered.n, l)
        buckets[b].append(k)
    grouped = tuple(k for b in range(1, l + 1) for k in buckets[b])
    return WedgeWord(grouped, ordered.s, ordered.n, l)


def c_statistic(mp: MultiPartition, charge: MultiCharge, n: int, r: int | None = None) -> int:
    """Number of prefix pairs i < j with b_i > b_j and a_i = a_j.

    Counted on the ordered prefix; this is the q-exponent relating the
    block-sorted word to the ordered word after normalization.
    """
    ordered = to_wedge(mp, charge, n, r)
    letters = [decompose(k, ordered.n, ordered.l) for k in ordered.prefix]
    count = 0
    for i in range(len(letters)):
        for j in range(i + 1, len(letters)):
            ai, bi, _ = letters[i]
            aj, bj, _ = letters[j]
            if bi > bj and ai == aj:
                count += 1
    return count
