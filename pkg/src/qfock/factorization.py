"""Splitting a Fock space along a grouping of its components.

A grouping p = (l_1, ..., l_g) of the level slices a charged
multipartition into consecutive runs; the tensor embedding identifies the
product of the slice Fock spaces with the big one by concatenating labels
bilinearly.  Three verifiable statements about dominant multicharges are
checked here, each by computing both sides independently:

  * product: the transition polynomial between two multipartitions with
    equal slice-size vectors factors as the product of the slice
    transition polynomials;
  * barsplit: the bar image of a standard basis vector differs from the
    tensor product of the slice bar images only by terms whose first
    slice is strictly smaller;
  * tensor: the canonical basis expands over the embedded products of
    slice canonical bases with unit leading coefficient, coefficients
    polynomial in q (sign +) or q^-1 (sign -), supported on smaller
    first slices.

Each verifier returns a VerificationReport with per-size counts; any
violation is recorded verbatim.  Sizes whose multicharge fails the
dominance gap are skipped and reported (or compared anyway in exploratory
mode, as observations).
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field

from .laurent import ONE, LaurentPoly
from .fock import Block, FockVector, bar_basis
from .canonical import canonical_matrix, delta, topological_order
from .multipartitions import (
    MultiCharge,
    MultiPartition,
    alpha_p,
    as_multicharge,
    as_multipartition,
    beta_greater,
    check_grouping,
    enumerate_block,
    is_M_dominant,
    mp_size,
    mp_to_text,
    split,
    split_charge,
)


def tensor_embed(v1: FockVector, v2: FockVector) -> FockVector:
    """Bilinear concatenation of labels; charges concatenate too."""
    if v1.block.n != v2.block.n:
        raise ValueError("rank mismatch: %d vs %d" % (v1.block.n, v2.block.n))
    block = Block(v1.block.n, v1.block.charge + v2.block.charge,
                  v1.block.size + v2.block.size)
    terms: dict[MultiPartition, LaurentPoly] = {}
    for mp1, c1 in v1.terms.items():
        for mp2, c2 in v2.terms.items():
            terms[mp1 + mp2] = c1 * c2
    return FockVector(block, terms)


def tensor_embed_all(vecs: list[FockVector]) -> FockVector:
    out = vecs[0]
    for v in vecs[1:]:
        out = tensor_embed(out, v)
    return out


def factored_delta(la: MultiPartition, mu: MultiPartition, p, n: int,
                   charge: MultiCharge, sign: str) -> LaurentPoly:
    """Product of slice transition polynomials along the grouping p.

    Raises ValueError when the slice-size vectors of la and mu differ,
    since the factorization is only defined on matched pairs.
    """
    la = as_multipartition(la)
    mu = as_multipartition(mu)
    charge = as_multicharge(charge)
    g = check_grouping(p, len(charge))
    if alpha_p(la, g) != alpha_p(mu, g):
        raise ValueError(
            "slice sizes differ: %r vs %r" % (alpha_p(la, g), alpha_p(mu, g))
        )
    out = ONE
    for la_i, mu_i, charge_i in zip(split(la, g), split(mu, g), split_charge(charge, g)):
        out = out * delta(la_i, mu_i, n, charge_i, sign)
        if not out:
            return out
    return out


@dataclass
class VerificationReport:
    """Outcome of one verifier run: per-size counts plus raw violations."""

    kind: str
    params: dict
    rows: list[dict] = field(default_factory=list)
    violations: list[dict] = field(default_factory=list)
    skipped: list[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def counts(self) -> dict:
        checked = sum(row["checked"] for row in self.rows)
        return {
            "checked": checked,
            "violations": len(self.violations),
            "skipped": len(self.skipped),
            "passed": self.passed,
        }

    def to_json_dict(self) -> dict:
        return {
            "kind": self.kind,
            "params": self.params,
            "rows": self.rows,
            "violations": self.violations,
            "skipped": self.skipped,
            "summary": self.counts(),
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        cols = sorted({k for row in self.rows for k in row})
        writer.writerow(cols)
        for row in self.rows:
            writer.writerow([row.get(c, "") for c in cols])
        return buf.getvalue()

    def to_table(self) -> str:
        lines = ["%s verification: %s" % (self.kind, "PASS" if self.passed else "FAIL")]
        lines.append("params: %r" % (self.params,))
        for row in self.rows:
            lines.append("  " + ", ".join("%s=%s" % kv for kv in sorted(row.items())))
        for skip in self.skipped:
            lines.append("  skipped: %r" % (skip,))
        for bad in self.violations:
            lines.append("  VIOLATION: %r" % (bad,))
        summary = self.counts()
        lines.append(
            "total checked=%d violations=%d skipped=%d"
            % (summary["checked"], summary["violations"], summary["skipped"])
        )
        return "\n".join(lines)


def _dominance_gate(report: VerificationReport, charge, size, M, exploratory) -> bool:
    """True when this size should be compared; records a skip otherwise."""
    if is_M_dominant(size, charge, M):
        return True
    if exploratory:
        report.rows.append(
            {"size": size, "note": "dominance gap fails; exploratory comparison",
             "checked": 0}
        )
        return True
    report.skipped.append(
        {"size": size, "reason": "multicharge %r is not %d-dominant" % (list(charge), M)}
    )
    return False


def _require_M(n: int, M: int, exploratory: bool):
    if M <= 2 * n and not exploratory:
        raise ValueError(
            "dominance bound M=%d must exceed 2n=%d (or pass exploratory)" % (M, 2 * n)
        )


def verify_product_formula(n: int, charge: MultiCharge, p, max_size: int, M: int,
                           signs=("+", "-"), exploratory: bool = False) -> VerificationReport:
    """Compare full transition polynomials with slice products, all sizes.

    For every size up to max_size and every ordered pair (la, mu) with
    equal slice-size vectors, the block transition polynomial must equal
    the product over slices.  Sizes failing the dominance gap are skipped
    unless exploratory.
    """
    charge = as_multicharge(charge)
    g = check_grouping(p, len(charge))
    _require_M(n, M, exploratory)
    report = VerificationReport(
        "product",
        {"n": n, "charge": list(charge), "p": list(g), "max_size": max_size,
         "M": M, "signs": list(signs), "exploratory": exploratory},
    )
    for size in range(max_size + 1):
        if not _dominance_gate(report, charge, size, M, exploratory):
            continue
        labels = enumerate_block(len(charge), size)
        for sign in signs:
            checked = passed = 0
            for la in labels:
                a_la = alpha_p(la, g)
                for mu in labels:
                    if alpha_p(mu, g) != a_la:
                        continue
                    full = delta(la, mu, n, charge, sign)
                    product = factored_delta(la, mu, g, n, charge, sign)
                    checked += 1
                    if full == product:
                        passed += 1
                    else:
                        report.violations.append({
                            "size": size, "sign": sign,
                            "la": mp_to_text(la), "mu": mp_to_text(mu),
                            "full": str(full), "product": str(product),
                        })
            report.rows.append(
                {"size": size, "sign": sign, "checked": checked, "passed": passed}
            )
    return report


def _slice_canonical_vectors(n, charge, g, size, sign):
    """Embedded products of slice canonical vectors for a whole block."""
    charges = split_charge(charge, g)
    labels = enumerate_block(len(charge), size)
    out: dict[MultiPartition, FockVector] = {}
    for mu in labels:
        pieces = []
        for mu_i, charge_i in zip(split(mu, g), charges):
            dm = canonical_matrix(n, charge_i, mp_size(mu_i), sign)
            pieces.append(FockVector(Block(n, charge_i, mp_size(mu_i)), dm.rows[mu_i]))
        out[mu] = tensor_embed_all(pieces)
    return labels, out


def verify_tensor_expansion(n: int, charge: MultiCharge, p, max_size: int, M: int,
                            sign: str, exploratory: bool = False) -> VerificationReport:
    """Expand each canonical vector over embedded slice canonical products.

    The change of basis is solved by back-substitution (the embedded
    products are unitriangular over the standard basis).  Checks per la:
    unit coefficient on la itself; every other contributing mu has a
    strictly smaller first slice; coefficients use only exponents >= 0
    (sign +) or <= 0 (sign -); and the expansion recomposes exactly.
    """
    charge = as_multicharge(charge)
    g = check_grouping(p, len(charge))
    if len(g) != 2:
        raise ValueError("the tensor expansion check needs a two-part grouping")
    _require_M(n, M, exploratory)
    report = VerificationReport(
        "tensor",
        {"n": n, "charge": list(charge), "p": list(g), "max_size": max_size,
         "M": M, "sign": sign, "exploratory": exploratory},
    )
    exp_ok = (lambda e: e >= 0) if sign == "+" else (lambda e: e <= 0)
    for size in range(max_size + 1):
        if not _dominance_gate(report, charge, size, M, exploratory):
            continue
        labels, embedded = _slice_canonical_vectors(n, charge, g, size, sign)
        pos = {mu: i for i, mu in enumerate(labels)}
        edges = [
            (nu, mu)
            for mu in labels
            for nu in embedded[mu].terms
            if nu != mu
        ]
        for mu in labels:
            if not embedded[mu].coefficient(mu).is_one():
                report.violations.append({
                    "size": size, "mu": mp_to_text(mu),
                    "issue": "embedded product is not unitriangular",
                })
        order = topological_order(labels, edges, pos.get)
        dm = canonical_matrix(n, charge, size, sign)
        checked = passed = 0
        for la in labels:
            target = dict(dm.rows[la])
            coeffs: dict[MultiPartition, LaurentPoly] = {}
            for nu in reversed(order):
                acc = target.get(nu, LaurentPoly.zero())
                for mu, b_mu in coeffs.items():
                    t = embedded[mu].coefficient(nu)
                    if t and mu != nu:
                        acc = acc - b_mu * t
                if acc:
                    coeffs[nu] = acc
            recomposed = FockVector(Block(n, charge, size))
            for mu, b_mu in coeffs.items():
                recomposed = recomposed + embedded[mu].scale(b_mu)
            problems = []
            if recomposed.terms != dm.rows[la]:
                problems.append("expansion does not recompose")
            if not coeffs.get(la, LaurentPoly.zero()).is_one():
                problems.append("leading coefficient is %s" % coeffs.get(la))
            for mu, b_mu in coeffs.items():
                if mu == la:
                    continue
                if not beta_greater(la, mu, g):
                    problems.append(
                        "coefficient at %s is outside the smaller-first-slice cone"
                        % mp_to_text(mu)
                    )
                if not b_mu.supported_on(exp_ok):
                    problems.append(
                        "coefficient at %s = %s has wrong-sign exponents"
                        % (mp_to_text(mu), b_mu)
                    )
            checked += 1
            if problems:
                report.violations.append(
                    {"size": size, "sign": sign, "la": mp_to_text(la),
                     "issues": problems}
                )
            else:
                passed += 1
        report.rows.append(
            {"size": size, "sign": sign, "checked": checked, "passed": passed}
        )
    return report


def verify_bar_splitting(n: int, charge: MultiCharge, p, max_size: int, M: int,
                         exploratory: bool = False) -> VerificationReport:
    """Compare bar images with tensored slice bar images, all sizes.

    For each la the difference bar|la> - embed(bar|slice 1> (x) bar|slice 2>)
    must be supported on multipartitions whose first slice is strictly
    smaller than la's.
    """
    charge = as_multicharge(charge)
    g = check_grouping(p, len(charge))
    if len(g) != 2:
        raise ValueError("the bar splitting check needs a two-part grouping")
    _require_M(n, M, exploratory)
    charges = split_charge(charge, g)
    report = VerificationReport(
        "barsplit",
        {"n": n, "charge": list(charge), "p": list(g), "max_size": max_size,
         "M": M, "exploratory": exploratory},
    )
    for size in range(max_size + 1):
        if not _dominance_gate(report, charge, size, M, exploratory):
            continue
        labels = enumerate_block(len(charge), size)
        checked = passed = 0
        for la in labels:
            big = bar_basis(la, charge, n)
            pieces = [
                bar_basis(la_i, charge_i, n)
                for la_i, charge_i in zip(split(la, g), charges)
            ]
            difference = big - tensor_embed_all(pieces)
            bad_support = [
                mu for mu in difference.terms if not beta_greater(la, mu, g)
            ]
            checked += 1
            if bad_support:
                report.violations.append({
                    "size": size, "la": mp_to_text(la),
                    "bad_support": [mp_to_text(mu) for mu in bad_support],
                })
            else:
                passed += 1
        report.rows.append({"size": size, "checked": checked, "passed": passed})
    return report
