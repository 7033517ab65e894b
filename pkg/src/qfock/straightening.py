"""Quantum straightening: rewriting wedge words into the ordered basis.

An adjacent pair of letters written in the wrong order (first index <=
second index) rewrites to a linear combination of ordered pairs.  Write
the pair as coordinates (k2, b2) then (k1, b1) -- so b1 belongs to the
larger, second letter -- and let gamma = (k1 - k2) mod n and eps = 1 if
b1 < b2 else 0.  A term "[kept, s]" below stands for the pair with
coordinates (k1 - s, b1), (k2 + s, b2); "[swapped, s]" puts b2 on the
first coordinate and b1 on the second.  The four rules are:

    R1  gamma = 0, same b:       -1 * [kept, 0]
    R2  gamma != 0, same b:      -q^-1 [kept, 0]
         + (q^-2 - 1) sum_{m>=0} q^-2m      [kept, gamma + nm]
         - (q^-2 - 1) sum_{m>=1} q^(-2m+1)  [kept, nm]
    R3  gamma = 0, different b:   q [kept, 0]
         + (q^2 - 1) sum_{m>=eps} q^2(m-eps) [swapped, nm]
         + (q^2 - 1) sum_{m>=1}   q^(2m-1)   [kept, nm]
    R4  gamma != 0, different b:  1 [kept, 0]
         + (q - q^-1) sum_{m>=0}   odd-sum(m)        [kept, gamma + nm]
         + (q - q^-1) sum_{m>=eps} odd-sum(m-eps)    [swapped, nm]
         + (q - q^-1) sum_{m>=eps} even-sum(m-eps+1) [swapped, gamma + nm]
         + (q - q^-1) sum_{m>=1}   even-sum(m)       [kept, nm]

R2 is a geometric ladder with ratio -q^-1 alternating between the two
shift patterns; R3 is the analogous ladder with ratio q in the component
direction; R4 combines both ladders, which is where the odd-sum/even-sum
diagonal coefficients come from.  This system is exactly confluent: it
is the unique assignment of tail anchors and lower bounds (given the swap
coefficients and ladder shapes) under which words with repeated letters
vanish, normal forms are strategy-independent, and commuting one letter
across a consecutive same-component run yields a single q-power -- all of
which the test suite checks.

Every tail is truncated at the first index pair that is no longer strictly
ordered; the produced pairs move monotonically toward each other, so the
truncation is exact.  A pair of equal letters rewrites to zero.  Repeated
rewriting of any disordered pair terminates and yields the normal form: an
exact linear combination of ordered words with the same index sum.
"""

from __future__ import annotations

from typing import Callable

from .laurent import LaurentPoly, r_coefficient
from .wedges import coord_of, plain_of

Expansion = dict[tuple[int, ...], LaurentPoly]

_MINUS_ONE = LaurentPoly({0: -1})
_Q = LaurentPoly({1: 1})
_MINUS_QINV = LaurentPoly({-1: -1})
_ONE = LaurentPoly({0: 1})
_QQINV = LaurentPoly({1: 1, -1: -1})          # q - q^-1
_QINV2_MINUS_1 = LaurentPoly({-2: 1, 0: -1})  # q^-2 - 1
_Q2_MINUS_1 = LaurentPoly({2: 1, 0: -1})      # q^2 - 1

_pair_memo: dict = {}
_nf_memo: dict = {}


def _tail_terms(out, k1, k2, b_hi, b_lo, n, l, m0, shift, coeff_of_m):
    """Append tail terms (plain pairs with coefficients) until disordered.

    Produces, for m = m0, m0+1, ...: the pair with coordinates
    (k1 - shift - n*m, component b_hi) and (k2 + shift + n*m, component
    b_lo).  The first plain index strictly decreases and the second
    strictly increases with m, so the first failure of strict order is
    final.  Zero coefficients are skipped without stopping the scan.
    """
    m = m0
    while True:
        hi = plain_of(k1 - shift - n * m, b_hi, n, l)
        lo = plain_of(k2 + shift + n * m, b_lo, n, l)
        if hi <= lo:
            break
        coeff = coeff_of_m(m)
        if coeff:
            out.append(((hi, lo), coeff))
        m += 1


def straighten_pair(p2: int, p1: int, n: int, l: int) -> list[tuple[tuple[int, int], LaurentPoly]]:
    """Expansion of the disordered adjacent pair (p2 then p1), p2 <= p1.

    Arguments are plain indices in word order: the letter p2 comes first.
    Returns [((x, y), coeff), ...] with every (x, y) strictly ordered
    (x > y) and x + y = p1 + p2.  An equal pair returns the empty list
    (the word vanishes).  Raises ValueError when the input is already
    strictly ordered.
    """
    if p2 > p1:
        raise ValueError("pair (%d, %d) is already ordered; nothing to rewrite" % (p2, p1))
    if p2 == p1:
        return []
    key = (n, l, p2, p1)
    cached = _pair_memo.get(key)
    if cached is not None:
        return cached

    k2, b2 = coord_of(p2, n, l)
    k1, b1 = coord_of(p1, n, l)
    gamma = (k1 - k2) % n
    out: list[tuple[tuple[int, int], LaurentPoly]] = []

    if gamma == 0 and b1 == b2:
        out.append(((p1, p2), _MINUS_ONE))
    elif gamma != 0 and b1 == b2:
        out.append(((p1, p2), _MINUS_QINV))
        _tail_terms(out, k1, k2, b1, b2, n, l, 0, gamma,
                    lambda m: _QINV2_MINUS_1 * LaurentPoly({-2 * m: 1}))
        _tail_terms(out, k1, k2, b1, b2, n, l, 1, 0,
                    lambda m: _QINV2_MINUS_1 * LaurentPoly({-2 * m + 1: -1}))
    elif gamma == 0 and b1 != b2:
        eps = 1 if b1 < b2 else 0
        out.append(((p1, p2), _Q))
        _tail_terms(out, k1, k2, b2, b1, n, l, eps, 0,
                    lambda m: _Q2_MINUS_1 * LaurentPoly({2 * (m - eps): 1}))
        _tail_terms(out, k1, k2, b1, b2, n, l, 1, 0,
                    lambda m: _Q2_MINUS_1 * LaurentPoly({2 * m - 1: 1}))
    else:
        eps = 1 if b1 < b2 else 0
        out.append(((p1, p2), _ONE))
        _tail_terms(out, k1, k2, b1, b2, n, l, 0, gamma,
                    lambda m: _QQINV * r_coefficient("odd-sum", m))
        _tail_terms(out, k1, k2, b2, b1, n, l, eps, 0,
                    lambda m: _QQINV * r_coefficient("odd-sum", m - eps))
        _tail_terms(out, k1, k2, b2, b1, n, l, eps, gamma,
                    lambda m: _QQINV * r_coefficient("even-sum", m - eps + 1))
        _tail_terms(out, k1, k2, b1, b2, n, l, 1, 0,
                    lambda m: _QQINV * r_coefficient("even-sum", m))

    for (hi, lo), _ in out:
        assert hi > lo and hi + lo == p1 + p2
    _pair_memo[key] = out
    return out


def rule_name(p2: int, p1: int, n: int, l: int) -> str:
    """Which of R1..R4 rewrites the disordered pair (p2 then p1)."""
    k2, b2 = coord_of(p2, n, l)
    k1, b1 = coord_of(p1, n, l)
    gamma = (k1 - k2) % n
    if b1 == b2:
        return "R1" if gamma == 0 else "R2"
    return "R3" if gamma == 0 else "R4"


def _first_disordered(word: tuple[int, ...], strategy: str) -> int | None:
    rng = range(len(word) - 1)
    if strategy == "rightmost":
        rng = reversed(rng)
    for i in rng:
        if word[i] <= word[i + 1]:
            return i
    return None


class _Inserter:
    """Memoized prepend of one letter onto ordered words.

    _insert(u, w) expands u followed by the ordered word w over ordered
    words.  When the junction pair is disordered it is rewritten once and
    the produced letters are re-inserted recursively; only ordered words
    are ever materialized, which keeps the state space small even for the
    long reversed windows coming from the bar involution.
    """

    __slots__ = ("n", "l", "memo", "trace", "budget", "steps")

    def __init__(self, n, l, memo, trace, budget):
        self.n = n
        self.l = l
        self.memo = memo
        self.trace = trace
        self.budget = budget
        self.steps = 0

    def insert(self, u: int, w: tuple[int, ...]) -> Expansion:
        key = (u, w)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        if not w or u > w[0]:
            out: Expansion = {(u,) + w: _ONE}
            self.memo[key] = out
            return out
        self.steps += 1
        if self.steps > self.budget:
            raise RuntimeError("step budget %d exceeded" % self.budget)
        pair_terms = straighten_pair(u, w[0], self.n, self.l)
        if self.trace is not None:
            self.trace({"rule": rule_name(u, w[0], self.n, self.l),
                        "pair": [u, w[0]], "terms": len(pair_terms)})
        out = {}
        rest = w[1:]
        for (x, y), coeff in pair_terms:
            for w2, p in self.insert(y, rest).items():
                cp = coeff * p
                for w3, p2 in self.insert(x, w2).items():
                    cur = out.get(w3)
                    val = cp * p2 if cur is None else cur + cp * p2
                    if val:
                        out[w3] = val
                    elif cur is not None:
                        del out[w3]
        self.memo[key] = out
        return out


def _normal_form_insert(word, n, l, trace, step_budget, memo) -> Expansion:
    ins = _Inserter(n, l, memo, trace, step_budget)
    expansion: Expansion = {(): _ONE}
    for u in reversed(word):
        nxt: Expansion = {}
        for w, p in expansion.items():
            for w2, p2 in ins.insert(u, w).items():
                cur = nxt.get(w2)
                val = p * p2 if cur is None else cur + p * p2
                if val:
                    nxt[w2] = val
                elif cur is not None:
                    del nxt[w2]
        expansion = nxt
    return expansion


def normal_form(word: tuple[int, ...], n: int, l: int, *,
                strategy: str = "leftmost",
                trace: Callable[[dict], None] | None = None,
                step_budget: int = 10_000_000,
                _memo: dict | None = None) -> Expansion:
    """Expand a finite wedge word over the ordered basis words.

    Returns a mapping from ordered word tuples to Laurent coefficients.
    The rewriting replaces one disordered adjacent pair at a time
    (leftmost first by default) and is memoized per distinct word.  When a
    trace callback is given, every rewrite step emits one record and the
    shared memo is bypassed so the trace is complete.

    The "insert" strategy folds the word letter by letter from the right
    into an already-normalized expansion, so only ordered words are
    memoized.  All strategies agree on the result (the rewriting is
    confluent); "insert" is much faster on long nearly-reversed words and
    is what the bar involution uses internally.
    """
    if strategy not in ("leftmost", "rightmost", "insert"):
        raise ValueError("unknown strategy %r" % (strategy,))
    word = tuple(word)
    if trace is not None and _memo is None:
        _memo = {}
    memo = _memo if _memo is not None else _nf_memo.setdefault((n, l, strategy), {})
    if strategy == "insert":
        return dict(_normal_form_insert(word, n, l, trace, step_budget, memo))

    steps = 0
    pending: dict[tuple[int, ...], tuple[tuple, tuple]] = {}
    stack = [word]
    while stack:
        steps += 1
        if steps > step_budget:
            raise RuntimeError(
                "step budget %d exceeded while normalizing %r" % (step_budget, word)
            )
        w = stack[-1]
        if w in memo:
            stack.pop()
            continue
        got = pending.get(w)
        if got is None:
            i = _first_disordered(w, strategy)
            if i is None:
                memo[w] = {w: _ONE}
                stack.pop()
                continue
            pair_terms = straighten_pair(w[i], w[i + 1], n, l)
            children = tuple(w[:i] + pq + w[i + 2:] for pq, _ in pair_terms)
            coeffs = tuple(c for _, c in pair_terms)
            if trace is not None:
                trace({"rule": rule_name(w[i], w[i + 1], n, l),
                       "pair": [w[i], w[i + 1]], "terms": len(pair_terms)})
            got = pending[w] = (children, coeffs)
        children, coeffs = got
        missing = [c for c in children if c not in memo]
        if missing:
            stack.extend(missing)
            continue
        acc: Expansion = {}
        for child, coeff in zip(children, coeffs):
            for ow, p in memo[child].items():
                cur = acc.get(ow)
                val = coeff * p if cur is None else cur + coeff * p
                if val:
                    acc[ow] = val
                elif cur is not None:
                    del acc[ow]
        memo[w] = acc
        pending.pop(w, None)
        stack.pop()
    return dict(memo[word])


def expansion_index_sums(exp: Expansion) -> set[int]:
    """Distinct letter sums over the words of an expansion."""
    return {sum(w) for w in exp}


def clear_caches() -> None:
    """Drop the pair and normal-form memos (mainly for benchmarks/tests)."""
    _pair_memo.clear()
    _nf_memo.clear()
