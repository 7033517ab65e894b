"""Canonical bases and transition matrices of a Fock-space block.

For each total size N the standard basis vectors |mu, s> of that size span
a block.  The bar involution restricted to the block is unitriangular in a
suitable order; solving the standard recursion gives the two canonical
bases: G+(la) is bar-invariant and congruent to |la> modulo q times the
standard lattice, G-(la) likewise modulo q^-1.  The transition polynomials

    Delta(la, mu) = coefficient of |mu> in G(la)

form a unitriangular matrix with off-diagonal entries in q*Q[q] (sign +)
or q^-1*Q[q^-1] (sign -), and vanish between different sizes.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Sequence

from .laurent import ONE, LaurentPoly, antiinvariant_split
from .fock import Block, FockVector, bar_basis, congruent_mod_lattice
from .multipartitions import (
    MultiCharge,
    MultiPartition,
    as_multicharge,
    as_multipartition,
    enumerate_block,
    mp_from_json,
    mp_size,
    mp_to_json,
    mp_to_text,
)


def topological_order(nodes: Sequence[Hashable],
                      edges: Iterable[tuple[Hashable, Hashable]],
                      tie_key: Callable[[Hashable], object]) -> tuple:
    """Kahn's algorithm with a deterministic tie-break.

    edges contains (before, after) pairs.  Raises on a cycle.
    """
    preds: dict = {v: set() for v in nodes}
    succs: dict = {v: set() for v in nodes}
    for before, after in edges:
        if before != after:
            preds[after].add(before)
            succs[before].add(after)
    ready = sorted((v for v in nodes if not preds[v]), key=tie_key)
    out = []
    while ready:
        v = ready.pop(0)
        out.append(v)
        changed = False
        for w in succs[v]:
            preds[w].discard(v)
            if not preds[w]:
                ready.append(w)
                changed = True
        if changed:
            ready.sort(key=tie_key)
    if len(out) != len(preds):
        raise AssertionError("support digraph has a cycle")
    return tuple(out)


@dataclass(frozen=True)
class BarMatrix:
    """Bar images of every standard basis vector of one block.

    labels lists the block in enumeration order; columns maps each label
    la to the expansion of bar|la> in the standard basis.
    """

    n: int
    charge: MultiCharge
    size: int
    labels: tuple[MultiPartition, ...]
    columns: dict[MultiPartition, FockVector] = field(hash=False)

    def entry(self, mu: MultiPartition, la: MultiPartition) -> LaurentPoly:
        """Coefficient of |mu> in bar|la>."""
        return self.columns[la].coefficient(mu)


def bar_matrix(n: int, charge: MultiCharge, size: int) -> BarMatrix:
    """Compute the block's bar matrix and verify B * bar(B) = identity.

    The product check is the matrix form of the involution property
    bar(bar|la>) = |la> for every la in the block.
    """
    charge = as_multicharge(charge)
    labels = enumerate_block(len(charge), size)
    columns = {la: bar_basis(la, charge, n) for la in labels}
    for la in labels:
        for nu in labels:
            acc = LaurentPoly.zero()
            for mu in labels:
                b_mu_la = columns[la].coefficient(mu)
                if b_mu_la:
                    b_nu_mu = columns[mu].coefficient(nu)
                    if b_nu_mu:
                        acc = acc + b_nu_mu * b_mu_la.bar()
            expected = ONE if nu == la else LaurentPoly.zero()
            if acc != expected:
                raise AssertionError(
                    "B*bar(B) fails at (%r, %r): got %s" % (nu, la, acc)
                )
    return BarMatrix(n, charge, size, labels, columns)


def triangular_order(matrix: BarMatrix, tie_break: str = "enum") -> tuple[MultiPartition, ...]:
    """Linear order putting the bar matrix in unitriangular position.

    Every mu appearing in bar|la> with mu != la comes strictly before la.
    Ties are broken by block enumeration order (or its reverse, used to
    probe that the canonical basis does not depend on the choice).  A
    cycle in the support digraph raises.
    """
    if tie_break not in ("enum", "reversed"):
        raise ValueError("tie_break must be 'enum' or 'reversed'")
    pos = {la: i for i, la in enumerate(matrix.labels)}
    if tie_break == "reversed":
        pos = {la: -i for la, i in pos.items()}
    edges = [
        (mu, la)
        for la in matrix.labels
        for mu in matrix.columns[la].terms
        if mu != la
    ]
    return topological_order(matrix.labels, edges, pos.get)


@dataclass(frozen=True)
class DeltaMatrix:
    """Transition polynomials of one block for one sign.

    rows maps la to a sparse row {mu: Delta(la, mu)} including the unit
    diagonal.  labels lists the block in enumeration order.
    """

    n: int
    charge: MultiCharge
    size: int
    sign: str
    labels: tuple[MultiPartition, ...]
    rows: dict[MultiPartition, dict[MultiPartition, LaurentPoly]] = field(hash=False)

    @property
    def level(self) -> int:
        return len(self.charge)

    def entry(self, la: MultiPartition, mu: MultiPartition) -> LaurentPoly:
        return self.rows[la].get(mu, LaurentPoly.zero())

    # -- wire formats -----------------------------------------------------

    def to_json_dict(self) -> dict:
        index = {la: i for i, la in enumerate(self.labels)}
        return {
            "n": self.n,
            "l": self.level,
            "charge": list(self.charge),
            "size": self.size,
            "sign": self.sign,
            "rows": [
                {
                    "mp": mp_to_json(la),
                    "cols": [
                        {"mp": mp_to_json(mu), "poly": self.rows[la][mu].to_json()}
                        for mu in sorted(self.rows[la], key=index.get)
                    ],
                }
                for la in self.labels
            ],
        }

    @staticmethod
    def from_json_dict(data: dict) -> "DeltaMatrix":
        charge = as_multicharge(data["charge"])
        labels = enumerate_block(len(charge), int(data["size"]))
        rows: dict[MultiPartition, dict[MultiPartition, LaurentPoly]] = {}
        for row in data["rows"]:
            la = mp_from_json(row["mp"])
            rows[la] = {
                mp_from_json(col["mp"]): LaurentPoly.from_json(col["poly"])
                for col in row["cols"]
            }
        return DeltaMatrix(int(data["n"]), charge, int(data["size"]),
                           str(data["sign"]), labels, rows)

    def to_csv(self) -> str:
        """Delimited matrix: header row of column labels, one row per la."""
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["mp"] + [mp_to_text(mu) for mu in self.labels])
        for la in self.labels:
            writer.writerow(
                [mp_to_text(la)] + [str(self.entry(la, mu)) for mu in self.labels]
            )
        return buf.getvalue()

    def to_latex(self) -> str:
        cols = "l|" + "c" * len(self.labels)
        lines = [r"\begin{array}{%s}" % cols]
        header = " & ".join(
            [""] + [mp_to_text(mu).replace(".", r"{\cdot}") for mu in self.labels]
        )
        lines.append(header + r" \\ \hline")
        for la in self.labels:
            cells = [mp_to_text(la).replace(".", r"{\cdot}")]
            cells += [self.entry(la, mu).latex() for mu in self.labels]
            lines.append(" & ".join(cells) + r" \\")
        lines.append(r"\end{array}")
        return "\n".join(lines)


_canonical_cache: dict = {}


def canonical_matrix(n: int, charge: MultiCharge, size: int, sign: str,
                     tie_break: str = "enum") -> DeltaMatrix:
    """Solve the canonical basis recursion for one block and sign.

    For each la (in triangular order) the defect d = bar|la> - |la> is
    cleared from the top down: the coefficient c at the currently maximal
    mu is bar-antiinvariant, so adding split(c, sign) * G(mu) to the
    candidate removes c from the defect while keeping the congruence
    class.  The result is checked to be bar-invariant and congruent to
    |la> modulo the sign's half of the lattice.
    """
    if sign not in ("+", "-"):
        raise ValueError("sign must be '+' or '-', got %r" % (sign,))
    charge = as_multicharge(charge)
    key = (n, charge, size, sign, tie_break)
    hit = _canonical_cache.get(key)
    if hit is not None:
        return hit

    matrix = bar_matrix(n, charge, size)
    order = triangular_order(matrix, tie_break)
    rank = {la: i for i, la in enumerate(order)}

    g_rows: dict[MultiPartition, dict[MultiPartition, LaurentPoly]] = {}
    for la in order:
        g: dict[MultiPartition, LaurentPoly] = {la: ONE}
        defect = dict(matrix.columns[la].terms)
        diag = defect.pop(la, LaurentPoly.zero())
        if not diag.is_one():
            raise AssertionError("bar|%r> has diagonal %s" % (la, diag))
        while defect:
            mu = max(defect, key=rank.get)
            assert rank[mu] < rank[la]
            c = defect[mu]
            if c.bar() != -c:
                raise AssertionError(
                    "defect coefficient at %r is not antiinvariant: %s" % (mu, c)
                )
            p = antiinvariant_split(c, sign)
            for nu, coeff in g_rows[mu].items():
                acc = g.get(nu, LaurentPoly.zero()) + p * coeff
                if acc:
                    g[nu] = acc
                else:
                    g.pop(nu, None)
                d_acc = defect.get(nu, LaurentPoly.zero()) - c * coeff
                if d_acc:
                    defect[nu] = d_acc
                else:
                    defect.pop(nu, None)
            assert mu not in defect
        g_rows[la] = g

    block = Block(n, charge, size)
    for la in order:
        vec = FockVector(block, g_rows[la])
        barred = FockVector(block)
        for mu, coeff in g_rows[la].items():
            barred = barred + matrix.columns[mu].scale(coeff.bar())
        if barred != vec:
            raise AssertionError("canonical vector of %r is not bar-invariant" % (la,))
        if not congruent_mod_lattice(vec, la, sign):
            raise AssertionError(
                "canonical vector of %r breaks the lattice congruence" % (la,)
            )

    result = DeltaMatrix(n, charge, size, sign, matrix.labels, g_rows)
    _canonical_cache[key] = result
    return result


def canonical_vector(la: MultiPartition, charge: MultiCharge, n: int,
                     sign: str) -> FockVector:
    """One canonical basis vector G(la) as a FockVector."""
    la = as_multipartition(la)
    charge = as_multicharge(charge)
    dm = canonical_matrix(n, charge, mp_size(la), sign)
    return FockVector(Block(n, charge, mp_size(la)), dm.rows[la])


def delta(la: MultiPartition, mu: MultiPartition, n: int, charge: MultiCharge,
          sign: str) -> LaurentPoly:
    """Transition polynomial Delta(la, mu); zero across different sizes."""
    la = as_multipartition(la)
    mu = as_multipartition(mu)
    if mp_size(la) != mp_size(mu):
        return LaurentPoly.zero()
    dm = canonical_matrix(n, as_multicharge(charge), mp_size(la), sign)
    return dm.entry(la, mu)


def check_sign_conventions(dm: DeltaMatrix) -> list[str]:
    """Violations of unitriangularity and exponent-sign conventions."""
    bad: list[str] = []
    pred = (lambda e: e >= 1) if dm.sign == "+" else (lambda e: e <= -1)
    for la in dm.labels:
        row = dm.rows[la]
        if not row.get(la, LaurentPoly.zero()).is_one():
            bad.append("diagonal at %s is %s" % (mp_to_text(la), row.get(la)))
        for mu, poly in row.items():
            if mu == la:
                continue
            if not poly.supported_on(pred):
                bad.append(
                    "entry (%s, %s) = %s violates the sign-%s exponent convention"
                    % (mp_to_text(la), mp_to_text(mu), poly, dm.sign)
                )
    return bad


def clear_canonical_cache() -> None:
    _canonical_cache.clear()
