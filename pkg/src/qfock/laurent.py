"""Exact sparse Laurent polynomials over the rationals.

This is the coefficient ring for every expansion in the package: a
polynomial in q and q^-1 with arbitrary-precision rational coefficients,
stored as a sparse exponent-to-coefficient mapping.  No floating point is
used anywhere.  The module also provides the bar map q -> q^-1, the two
closed-form coefficient families used by the straightening rewrite rules,
and the splitting of a bar-antiinvariant element needed by the canonical
basis recursion.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Union

Scalar = Union[int, Fraction]


class LaurentPoly:
    """An element of Q[q, q^-1], immutable and hashable.

    Internally a dict mapping integer exponents to nonzero Fractions.
    Equality is equality of the term mappings.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, Scalar] | None = None):
        clean: dict[int, Fraction] = {}
        if terms:
            for exp, coeff in terms.items():
                c = Fraction(coeff)
                if c != 0:
                    clean[int(exp)] = c
        self._terms = clean
        self._hash: int | None = None

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero() -> "LaurentPoly":
        return LaurentPoly()

    @staticmethod
    def one() -> "LaurentPoly":
        return LaurentPoly({0: 1})

    @staticmethod
    def term(coeff: Scalar, exp: int = 0) -> "LaurentPoly":
        return LaurentPoly({exp: coeff})

    @staticmethod
    def q_power(exp: int) -> "LaurentPoly":
        return LaurentPoly({exp: 1})

    # -- inspection --------------------------------------------------------

    def items(self):
        """Terms as (exponent, coefficient) pairs in ascending exponent order."""
        return sorted(self._terms.items())

    def coefficient(self, exp: int) -> Fraction:
        return self._terms.get(exp, Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_one(self) -> bool:
        return self._terms == {0: Fraction(1)}

    def min_exponent(self) -> int:
        """Valuation; raises on the zero polynomial."""
        return min(self._terms)

    def max_exponent(self) -> int:
        """Degree in q; raises on the zero polynomial."""
        return max(self._terms)

    def supported_on(self, predicate) -> bool:
        """True when every exponent satisfies the predicate."""
        return all(predicate(e) for e in self._terms)

    def constant_term(self) -> Fraction:
        return self.coefficient(0)

    def is_integral(self) -> bool:
        """True when every coefficient is an integer."""
        return all(c.denominator == 1 for c in self._terms.values())

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        out = dict(self._terms)
        for exp, coeff in other._terms.items():
            acc = out.get(exp, Fraction(0)) + coeff
            if acc:
                out[exp] = acc
            else:
                out.pop(exp, None)
        res = LaurentPoly.__new__(LaurentPoly)
        res._terms = out
        res._hash = None
        return res

    def __neg__(self) -> "LaurentPoly":
        res = LaurentPoly.__new__(LaurentPoly)
        res._terms = {e: -c for e, c in self._terms.items()}
        res._hash = None
        return res

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: Union["LaurentPoly", Scalar]) -> "LaurentPoly":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        out: dict[int, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = e1 + e2
                acc = out.get(e, Fraction(0)) + c1 * c2
                if acc:
                    out[e] = acc
                else:
                    out.pop(e, None)
        res = LaurentPoly.__new__(LaurentPoly)
        res._terms = out
        res._hash = None
        return res

    __rmul__ = __mul__

    def scale(self, c: Scalar) -> "LaurentPoly":
        c = Fraction(c)
        if c == 0:
            return LaurentPoly()
        res = LaurentPoly.__new__(LaurentPoly)
        res._terms = {e: v * c for e, v in self._terms.items()}
        res._hash = None
        return res

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            raise ValueError("negative powers are not supported")
        acc = LaurentPoly.one()
        for _ in range(n):
            acc = acc * self
        return acc

    def bar(self) -> "LaurentPoly":
        """The involution q -> q^-1: negate every exponent."""
        res = LaurentPoly.__new__(LaurentPoly)
        res._terms = {-e: c for e, c in self._terms.items()}
        res._hash = None
        return res

    # -- comparison / hashing ------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- rendering -----------------------------------------------------------

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        chunks = []
        for exp, coeff in self.items():
            if exp == 0:
                body = str(coeff if coeff > 0 else -coeff)
            else:
                mag = coeff if coeff > 0 else -coeff
                head = "" if mag == 1 else str(mag) + "*"
                body = head + ("q" if exp == 1 else "q^%d" % exp)
            if not chunks:
                chunks.append(body if coeff > 0 else "-" + body)
            else:
                chunks.append(("+ " if coeff > 0 else "- ") + body)
        return " ".join(chunks)

    def __repr__(self) -> str:
        return "LaurentPoly(%r)" % (dict(self.items()),)

    def latex(self) -> str:
        if not self._terms:
            return "0"
        chunks = []
        for exp, coeff in self.items():
            mag = coeff if coeff > 0 else -coeff
            if mag.denominator == 1:
                mag_s = str(mag.numerator)
            else:
                mag_s = r"\frac{%d}{%d}" % (mag.numerator, mag.denominator)
            if exp == 0:
                body = mag_s
            else:
                head = "" if mag == 1 else mag_s
                body = head + ("q" if exp == 1 else "q^{%d}" % exp)
            if not chunks:
                chunks.append(body if coeff > 0 else "-" + body)
            else:
                chunks.append(("+" if coeff > 0 else "-") + body)
        return " ".join(chunks)

    # -- wire format -----------------------------------------------------------

    def to_json(self) -> dict[str, str]:
        """Exponent-string to coefficient-string mapping, ascending exponents."""
        return {str(e): str(c) for e, c in self.items()}

    @staticmethod
    def from_json(data: Mapping[str, str]) -> "LaurentPoly":
        return LaurentPoly({int(e): Fraction(c) for e, c in data.items()})


ZERO = LaurentPoly.zero()
ONE = LaurentPoly.one()


def lp_mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Exact product in Q[q, q^-1]."""
    return a * b


def lp_bar(a: LaurentPoly) -> LaurentPoly:
    """The involution q -> q^-1 applied to a polynomial."""
    return a.bar()


def r_coefficient(kind: str, m: int) -> LaurentPoly:
    """Closed form of the two coefficient families in the rewrite sums.

    odd-sum(m)  = (q^(2m+1) + q^-(2m+1)) / (q + q^-1) = sum_{j=0..2m}  (-1)^j q^(2m-2j)
    even-sum(m) = (q^(2m)   - q^-(2m))   / (q + q^-1) = sum_{j=0..2m-1}(-1)^j q^(2m-1-2j)

    Both quotients are exact Laurent polynomials with integer coefficients;
    they are generated directly from the alternating-sum form, and the
    divisibility is re-verified by multiplying back.
    """
    if m < 0:
        raise ValueError("m must be nonnegative, got %r" % (m,))
    if kind == "odd-sum":
        out = LaurentPoly({2 * m - 2 * j: (-1) ** j for j in range(2 * m + 1)})
        check = LaurentPoly({2 * m + 1: 1, -(2 * m + 1): 1})
    elif kind == "even-sum":
        out = LaurentPoly({2 * m - 1 - 2 * j: (-1) ** j for j in range(2 * m)})
        check = LaurentPoly({2 * m: 1}) - LaurentPoly({-2 * m: 1})
    else:
        raise ValueError("kind must be 'odd-sum' or 'even-sum', got %r" % (kind,))
    assert out * LaurentPoly({1: 1, -1: 1}) == check
    return out


def antiinvariant_split(c: LaurentPoly, sign: str) -> LaurentPoly:
    """Solve p - bar(p) = c with p supported on one side of the origin.

    The input must satisfy bar(c) = -c, so c = sum_{e>0} c_e (q^e - q^-e).
    For sign '+' the unique solution supported on strictly positive
    exponents is returned; for sign '-' the unique solution supported on
    strictly negative exponents.  Both choices satisfy p - bar(p) = c.
    """
    if sign not in ("+", "-"):
        raise ValueError("sign must be '+' or '-', got %r" % (sign,))
    if c.bar() != -c:
        raise ValueError("input is not bar-antiinvariant: %s" % (c,))
    if sign == "+":
        p = LaurentPoly({e: v for e, v in c.items() if e > 0})
    else:
        p = LaurentPoly({e: v for e, v in c.items() if e < 0})
    assert p - p.bar() == c
    return p


def lp_sum(polys: Iterable[LaurentPoly]) -> LaurentPoly:
    acc = LaurentPoly.zero()
    for p in polys:
        acc = acc + p
    return acc
