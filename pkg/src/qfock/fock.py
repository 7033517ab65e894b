"""Level-l q-deformed Fock spaces and the bar involution.

A Fock space is indexed by a multicharge s = (s_1, ..., s_l); its standard
basis vectors |lambda, s> are charged multipartitions, realized as ordered
semi-infinite wedge words.  The bar involution fixes the vacuum, sends q to
q^-1, and acts on a basis wedge by reversing the first r letters (r large),
normalizing the reversed word, and multiplying by a scalar of the form
+/- q^a determined by the letter multiset:

    alpha = (-1)^(p1 + p2) * q^(p2 - p3)

where, over unordered letter pairs of the window, p1 counts pairs with
equal component and equal residue, p2 pairs with equal component and
different residue, and p3 pairs with different component and equal
residue.  This is exactly the inverse of the scalar picked up by sorting
the reversed window with the straightening rules along the swap-only path,
so the coefficient of |lambda, s> in bar|lambda, s> is exactly 1.

Every result is computed twice, in windows r and r + n*l, and the two
expansions must agree exactly; a mismatch raises.  Each term of the result
is checked to carry the same multicharge and the same total size as the
input.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Mapping

from .laurent import ONE, LaurentPoly
from .multipartitions import (
    MultiCharge,
    MultiPartition,
    as_multicharge,
    as_multipartition,
    mp_from_json,
    mp_size,
    mp_to_json,
)
from .straightening import normal_form
from .wedges import WedgeWord, decompose, default_window, from_wedge, to_wedge


@dataclass(frozen=True)
class Block:
    """Ambient data of a Fock-space degree: rank, multicharge, total size."""

    n: int
    charge: MultiCharge
    size: int

    @property
    def level(self) -> int:
        return len(self.charge)


class FockVector:
    """Finite q-linear combination of standard basis vectors of one block."""

    __slots__ = ("block", "terms")

    def __init__(self, block: Block, terms: Mapping[MultiPartition, LaurentPoly] | None = None):
        self.block = block
        clean: dict[MultiPartition, LaurentPoly] = {}
        if terms:
            for mp, poly in terms.items():
                if poly:
                    if mp_size(mp) != block.size:
                        raise ValueError(
                            "term %r has size %d, block has size %d"
                            % (mp, mp_size(mp), block.size)
                        )
                    clean[mp] = poly
        self.terms = clean

    @staticmethod
    def basis(mp: MultiPartition, charge: MultiCharge, n: int) -> "FockVector":
        mp = as_multipartition(mp)
        charge = as_multicharge(charge)
        block = Block(n, charge, mp_size(mp))
        return FockVector(block, {mp: ONE})

    def coefficient(self, mp: MultiPartition) -> LaurentPoly:
        return self.terms.get(as_multipartition(mp), LaurentPoly.zero())

    def support(self) -> tuple[MultiPartition, ...]:
        return tuple(sorted(self.terms, reverse=True))

    def is_zero(self) -> bool:
        return not self.terms

    def __iter__(self) -> Iterator[tuple[MultiPartition, LaurentPoly]]:
        return iter(sorted(self.terms.items(), reverse=True))

    def _check_same_block(self, other: "FockVector"):
        if self.block != other.block:
            raise ValueError("blocks differ: %r vs %r" % (self.block, other.block))

    def __add__(self, other: "FockVector") -> "FockVector":
        self._check_same_block(other)
        out = dict(self.terms)
        for mp, poly in other.terms.items():
            acc = out.get(mp)
            val = poly if acc is None else acc + poly
            if val:
                out[mp] = val
            else:
                out.pop(mp, None)
        res = FockVector(self.block)
        res.terms = out
        return res

    def __sub__(self, other: "FockVector") -> "FockVector":
        return self + other.scale(LaurentPoly({0: -1}))

    def scale(self, poly: LaurentPoly) -> "FockVector":
        res = FockVector(self.block)
        if poly:
            res.terms = {mp: poly * c for mp, c in self.terms.items()}
        return res

    def bar_coefficients(self) -> "FockVector":
        """Apply q -> q^-1 to every coefficient (not the full bar map)."""
        res = FockVector(self.block)
        res.terms = {mp: c.bar() for mp, c in self.terms.items()}
        return res

    def __eq__(self, other) -> bool:
        if not isinstance(other, FockVector):
            return NotImplemented
        return self.block == other.block and self.terms == other.terms

    def __repr__(self) -> str:
        inner = " + ".join("(%s)|%r>" % (c, list(mp)) for mp, c in self)
        return inner if inner else "0"

    def to_json(self) -> dict:
        return {
            "charge": list(self.block.charge),
            "n": self.block.n,
            "terms": [
                {"mp": mp_to_json(mp), "poly": poly.to_json()} for mp, poly in self
            ],
        }

    @staticmethod
    def from_json(data: dict) -> "FockVector":
        charge = as_multicharge(data["charge"])
        n = int(data["n"])
        terms = {
            mp_from_json(t["mp"]): LaurentPoly.from_json(t["poly"])
            for t in data["terms"]
        }
        if not terms:
            raise ValueError("cannot infer block size of an empty vector")
        size = mp_size(next(iter(terms)))
        return FockVector(Block(n, charge, size), terms)


def reversal_scalar(prefix: tuple[int, ...], n: int, l: int) -> LaurentPoly:
    """The +/- q^a factor attached to reversing a window of letters."""
    letters = [decompose(k, n, l) for k in prefix]
    p1 = p2 = p3 = 0
    for i in range(len(letters)):
        ai, bi, _ = letters[i]
        for j in range(i + 1, len(letters)):
            aj, bj, _ = letters[j]
            if bi == bj:
                if ai == aj:
                    p1 += 1
                else:
                    p2 += 1
            elif ai == aj:
                p3 += 1
    sign = -1 if (p1 + p2) % 2 else 1
    return LaurentPoly({p2 - p3: sign})


def bar_basis_at_window(mp: MultiPartition, charge: MultiCharge, n: int, r: int) -> FockVector:
    """Bar image of one standard basis vector computed in a fixed window.

    No stability check; bar_basis wraps this with the double-window
    comparison.  Raises when a term of the expansion leaves the multicharge
    or changes total size.
    """
    mp = as_multipartition(mp)
    charge = as_multicharge(charge)
    l = len(charge)
    word = to_wedge(mp, charge, n, r)
    alpha = reversal_scalar(word.prefix, n, l)
    expansion = normal_form(tuple(reversed(word.prefix)), n, l, strategy="insert")
    block = Block(n, charge, mp_size(mp))
    terms: dict[MultiPartition, LaurentPoly] = {}
    for ordered, poly in expansion.items():
        out_mp, out_charge = from_wedge(WedgeWord(ordered, word.s, n, l))
        if out_charge != charge:
            raise AssertionError(
                "bar term %r leaves the multicharge: %r vs %r"
                % (out_mp, out_charge, charge)
            )
        if mp_size(out_mp) != block.size:
            raise AssertionError(
                "bar term %r changes size: %d vs %d"
                % (out_mp, mp_size(out_mp), block.size)
            )
        coeff = alpha * poly
        if coeff:
            terms[out_mp] = terms.get(out_mp, LaurentPoly.zero()) + coeff
    vec = FockVector(block, {mp_: c for mp_, c in terms.items() if c})
    diag = vec.coefficient(mp)
    if not diag.is_one():
        raise AssertionError(
            "bar|%r> has diagonal coefficient %s, expected 1" % (mp, diag)
        )
    return vec


_bar_cache: dict = {}


def bar_basis(mp: MultiPartition, charge: MultiCharge, n: int,
              window_r: int | None = None) -> FockVector:
    """Bar image of |mp, charge>, window-stability checked.

    The expansion is computed in window r and again in r + n*l; the two
    must agree exactly.  Results for the default window are cached.
    """
    mp = as_multipartition(mp)
    charge = as_multicharge(charge)
    l = len(charge)
    key = (n, charge, mp)
    if window_r is None:
        hit = _bar_cache.get(key)
        if hit is not None:
            return hit
        r = default_window(mp_size(mp), charge, n)
    else:
        r = window_r
    vec = bar_basis_at_window(mp, charge, n, r)
    again = bar_basis_at_window(mp, charge, n, r + n * l)
    if vec != again:
        raise AssertionError(
            "bar expansion of %r with charge %r changed between windows %d and %d"
            % (mp, charge, r, r + n * l)
        )
    if window_r is None:
        _bar_cache[key] = vec
    return vec


def bar(vec: FockVector, window_r: int | None = None) -> FockVector:
    """Semilinear extension of the bar involution to any vector."""
    block = vec.block
    out = FockVector(block)
    for mp, poly in vec.terms.items():
        out = out + bar_basis(mp, block.charge, block.n, window_r).scale(poly.bar())
    return out


def congruent_mod_lattice(vec: FockVector, mp: MultiPartition, sign: str) -> bool:
    """Is vec congruent to |mp> modulo q (sign +) or q^-1 (sign -) times
    the standard lattice?  Concretely: the coefficient of mp minus 1, and
    every other coefficient, must have exponents all >= 1 (sign +) or all
    <= -1 (sign -)."""
    if sign not in ("+", "-"):
        raise ValueError("sign must be '+' or '-', got %r" % (sign,))
    mp = as_multipartition(mp)
    pred = (lambda e: e >= 1) if sign == "+" else (lambda e: e <= -1)
    for other, poly in vec.terms.items():
        probe = poly - ONE if other == mp else poly
        if not probe.supported_on(pred):
            return False
    return True


def check_block_preservation(n: int, charge: MultiCharge, size: int) -> tuple[int, int]:
    """Recompute bar expansions of a whole block, counting raw violations.

    Returns (terms_checked, violations): a violation is a term whose
    decoded multicharge or total size differs from the input's.  The walk
    reimplements the term decoding so the count does not rely on the
    assertions inside bar_basis.
    """
    from .multipartitions import enumerate_block

    charge = as_multicharge(charge)
    l = len(charge)
    checked = violations = 0
    for mp in enumerate_block(l, size):
        r = default_window(size, charge, n)
        word = to_wedge(mp, charge, n, r)
        expansion = normal_form(tuple(reversed(word.prefix)), n, l, strategy="insert")
        for ordered, _poly in expansion.items():
            out_mp, out_charge = from_wedge(WedgeWord(ordered, word.s, n, l))
            checked += 1
            if out_charge != charge or mp_size(out_mp) != size:
                violations += 1
    return checked, violations


def clear_bar_cache() -> None:
    _bar_cache.clear()
