"""Command line interface.

Subcommands:

  delta       print a block's transition-polynomial matrix (json/csv/latex)
  canonical   print one canonical basis vector
  bar         print the bar image of one standard basis vector
  straighten  normalize a wedge-word prefix, optionally tracing rewrites
  verify      run one of the factorization verifiers (product, tensor,
              barsplit); with --report-dir also writes report.json,
              report.csv and report.png
  selftest    quick internal consistency run

Exit codes: 0 success, 1 verification violations, 2 usage errors,
3 internal assertion failures.  Matrices are cached on disk (JSON files
keyed by a content digest) under --cache-dir, default .fock-cache or the
FOCK_CACHE_DIR environment variable; --no-cache disables the cache.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import tempfile

from .laurent import LaurentPoly
from .canonical import DeltaMatrix, canonical_matrix, canonical_vector
from .factorization import (
    VerificationReport,
    verify_bar_splitting,
    verify_product_formula,
    verify_tensor_expansion,
)
from .fock import bar_basis
from .multipartitions import as_multicharge, as_multipartition
from .straightening import normal_form

SCHEMA_VERSION = 1
CACHE_ENV = "FOCK_CACHE_DIR"
DEFAULT_CACHE_DIR = ".fock-cache"


# -- disk cache -----------------------------------------------------------------


def _canonical_json(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


def cache_key(kind: str, params: dict) -> str:
    material = _canonical_json({"schema": SCHEMA_VERSION, "kind": kind, "params": params})
    return hashlib.sha256(material.encode()).hexdigest()


def cache_load(cache_dir: str, kind: str, params: dict):
    path = os.path.join(cache_dir, "%s-%s.json" % (kind, cache_key(kind, params)[:24]))
    try:
        with open(path, "r", encoding="utf-8") as fh:
            entry = json.load(fh)
    except (OSError, ValueError):
        return None
    if entry.get("schema") != SCHEMA_VERSION:
        return None
    payload = entry.get("payload")
    digest = hashlib.sha256(_canonical_json(payload).encode()).hexdigest()
    if entry.get("digest") != digest:
        return None
    return payload


def cache_store(cache_dir: str, kind: str, params: dict, payload: dict) -> None:
    os.makedirs(cache_dir, exist_ok=True)
    path = os.path.join(cache_dir, "%s-%s.json" % (kind, cache_key(kind, params)[:24]))
    entry = {
        "schema": SCHEMA_VERSION,
        "kind": kind,
        "params": params,
        "digest": hashlib.sha256(_canonical_json(payload).encode()).hexdigest(),
        "payload": payload,
    }
    fd, tmp = tempfile.mkstemp(dir=cache_dir, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            json.dump(entry, fh, indent=1)
        os.replace(tmp, path)
    finally:
        if os.path.exists(tmp):
            os.unlink(tmp)


# -- argument plumbing -----------------------------------------------------------


def _parse_charge(text: str) -> tuple[int, ...]:
    return as_multicharge(int(x) for x in text.split(","))


def _parse_grouping(text: str) -> tuple[int, ...]:
    return tuple(int(x) for x in text.split(","))


def _parse_mp(text: str):
    return as_multipartition(json.loads(text))


def _add_common(sub):
    sub.add_argument("--n", type=int, required=True, help="quantum affine rank n >= 2")
    sub.add_argument("--charge", type=_parse_charge, required=True,
                     help="multicharge, comma separated, e.g. 12,0")
    sub.add_argument("--l", type=int, default=None,
                     help="level; must match the multicharge length when given")


def _check_common(args):
    if args.n < 2:
        raise ValueError("rank n must be at least 2")
    if args.l is not None and args.l != len(args.charge):
        raise ValueError(
            "level %d does not match multicharge of length %d" % (args.l, len(args.charge))
        )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qfock",
        description="Exact canonical bases of higher-level q-deformed Fock spaces.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p_delta = subs.add_parser("delta", help="transition-polynomial matrix of a block")
    _add_common(p_delta)
    p_delta.add_argument("--size", type=int, required=True, help="total number of boxes")
    p_delta.add_argument("--sign", choices=["+", "-"], required=True)
    p_delta.add_argument("--format", choices=["json", "csv", "latex"], default="json")
    p_delta.add_argument("--cache-dir", default=None)
    p_delta.add_argument("--no-cache", action="store_true")

    p_canon = subs.add_parser("canonical", help="one canonical basis vector")
    _add_common(p_canon)
    p_canon.add_argument("--mp", type=_parse_mp, required=True,
                         help='multipartition as JSON, e.g. [[2,1],[1]]')
    p_canon.add_argument("--sign", choices=["+", "-"], required=True)

    p_bar = subs.add_parser("bar", help="bar image of a standard basis vector")
    _add_common(p_bar)
    p_bar.add_argument("--mp", type=_parse_mp, required=True)
    p_bar.add_argument("--window-r", type=int, default=None,
                       help="override the window policy (stability still checked)")

    p_str = subs.add_parser("straighten", help="normalize a wedge-word prefix")
    p_str.add_argument("--n", type=int, required=True)
    p_str.add_argument("--l", type=int, required=True)
    p_str.add_argument("--word", required=True,
                       help="prefix of plain indices, comma separated, e.g. 1,4")
    p_str.add_argument("--trace", action="store_true",
                       help="emit one JSON line per rewrite step on stderr")

    p_ver = subs.add_parser("verify", help="run a factorization verifier")
    p_ver.add_argument("check", choices=["product", "tensor", "barsplit"])
    _add_common(p_ver)
    p_ver.add_argument("--p", type=_parse_grouping, required=True,
                       help="grouping of the level, comma separated, e.g. 1,1")
    p_ver.add_argument("--size", type=int, required=True, help="largest size to check")
    p_ver.add_argument("--sign", choices=["+", "-"], default=None,
                       help="restrict to one sign (default: both where applicable)")
    p_ver.add_argument("--M", type=int, default=None,
                       help="dominance bound; default 2n+1")
    p_ver.add_argument("--exploratory", action="store_true",
                       help="compare even when the dominance gap fails")
    p_ver.add_argument("--report-dir", default=None,
                       help="write report.json, report.csv and report.png here")

    subs.add_parser("selftest", help="quick internal consistency run")
    return parser


# -- emitters --------------------------------------------------------------------


def _emit_json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _delta_payload(args) -> dict:
    dm = canonical_matrix(args.n, args.charge, args.size, args.sign)
    return dm.to_json_dict()


def cmd_delta(args) -> int:
    _check_common(args)
    params = {
        "n": args.n, "l": len(args.charge), "charge": list(args.charge),
        "size": args.size, "sign": args.sign,
    }
    payload = None
    cache_dir = args.cache_dir or os.environ.get(CACHE_ENV) or DEFAULT_CACHE_DIR
    if not args.no_cache:
        payload = cache_load(cache_dir, "delta", params)
    if payload is None:
        payload = _delta_payload(args)
        if not args.no_cache:
            cache_store(cache_dir, "delta", params, payload)
    if args.format == "json":
        sys.stdout.write(_emit_json(payload))
    else:
        dm = DeltaMatrix.from_json_dict(payload)
        sys.stdout.write(dm.to_csv() if args.format == "csv" else dm.to_latex() + "\n")
    return 0


def cmd_canonical(args) -> int:
    _check_common(args)
    vec = canonical_vector(args.mp, args.charge, args.n, args.sign)
    sys.stdout.write(_emit_json(vec.to_json()))
    return 0


def cmd_bar(args) -> int:
    _check_common(args)
    vec = bar_basis(args.mp, args.charge, args.n, window_r=args.window_r)
    sys.stdout.write(_emit_json(vec.to_json()))
    return 0


def cmd_straighten(args) -> int:
    if args.n < 2 or args.l < 1:
        raise ValueError("need n >= 2 and l >= 1")
    word = tuple(int(x) for x in args.word.split(","))
    trace = None
    if args.trace:
        def trace(step):
            sys.stderr.write(json.dumps(step) + "\n")
    expansion = normal_form(word, args.n, args.l, trace=trace)
    payload = {
        "n": args.n, "l": args.l, "word": list(word),
        "terms": [
            {"word": list(w), "poly": poly.to_json()}
            for w, poly in sorted(expansion.items(), reverse=True)
        ],
    }
    sys.stdout.write(_emit_json(payload))
    return 0


def render_report_figure(report: VerificationReport, path: str) -> None:
    """Bar chart of checked/passed counts per report row."""
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    rows = [row for row in report.rows if "checked" in row]
    labels = [
        "N=%s%s" % (row.get("size", "?"),
                    " %s" % row["sign"] if "sign" in row else "")
        for row in rows
    ]
    checked = [row.get("checked", 0) for row in rows]
    passed = [row.get("passed", 0) for row in rows]
    xs = range(len(rows))
    fig, ax = plt.subplots(figsize=(max(4.0, 0.9 * len(rows) + 2), 3.2))
    ax.bar([x - 0.18 for x in xs], checked, width=0.36, label="checked", color="#888888")
    ax.bar([x + 0.18 for x in xs], passed, width=0.36, label="passed", color="#2a9d2a")
    ax.set_xticks(list(xs))
    ax.set_xticklabels(labels, rotation=45, ha="right", fontsize=8)
    ax.set_ylabel("comparisons")
    ax.set_title("%s verification: %s (%d violations)"
                 % (report.kind, "PASS" if report.passed else "FAIL",
                    len(report.violations)))
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def cmd_verify(args) -> int:
    _check_common(args)
    M = args.M if args.M is not None else 2 * args.n + 1
    if args.check == "product":
        signs = (args.sign,) if args.sign else ("+", "-")
        report = verify_product_formula(
            args.n, args.charge, args.p, args.size, M,
            signs=signs, exploratory=args.exploratory,
        )
    elif args.check == "tensor":
        sign = args.sign or "+"
        report = verify_tensor_expansion(
            args.n, args.charge, args.p, args.size, M, sign,
            exploratory=args.exploratory,
        )
    else:
        report = verify_bar_splitting(
            args.n, args.charge, args.p, args.size, M,
            exploratory=args.exploratory,
        )
    sys.stdout.write(report.to_table() + "\n")
    if args.report_dir:
        os.makedirs(args.report_dir, exist_ok=True)
        with open(os.path.join(args.report_dir, "report.json"), "w", encoding="utf-8") as fh:
            fh.write(_emit_json(report.to_json_dict()))
        with open(os.path.join(args.report_dir, "report.csv"), "w", encoding="utf-8") as fh:
            fh.write(report.to_csv())
        render_report_figure(report, os.path.join(args.report_dir, "report.png"))
    return 0 if report.passed else 1


def cmd_selftest(args) -> int:
    from fractions import Fraction

    from .laurent import antiinvariant_split, r_coefficient
    from .multipartitions import enumerate_block
    from .wedges import decompose, from_wedge, to_wedge

    q = LaurentPoly({1: 1})
    qinv = LaurentPoly({-1: 1})
    assert (q + qinv) * (q - qinv) == LaurentPoly({2: 1, -2: -1})
    assert r_coefficient("odd-sum", 1) == LaurentPoly({2: 1, 0: -1, -2: 1})
    assert antiinvariant_split(LaurentPoly({1: 1, -1: -1}), "+") == q
    assert decompose(0, 2, 2) == (2, 2, 1)
    assert decompose(5, 2, 2) == (1, 1, -1)

    for mp in enumerate_block(2, 2):
        word = to_wedge(mp, (3, 0), 2)
        back, charge = from_wedge(word)
        assert back == mp and charge == (3, 0)

    ex = normal_form((1, 4), 2, 1)
    assert ex == {
        (4, 1): LaurentPoly({-1: -1}),
        (3, 2): LaurentPoly({-2: 1, 0: -1}),
    }

    vec = bar_basis(((2,),), (0,), 2)
    assert vec.coefficient(((2,),)).is_one()
    assert vec.coefficient(((1, 1),)) == LaurentPoly({1: 1, -1: -1})

    with tempfile.TemporaryDirectory() as tmp:
        params = {"n": 2, "l": 1, "charge": [0], "size": 2, "sign": "+"}
        dm = canonical_matrix(2, (0,), 2, "+")
        payload = dm.to_json_dict()
        cache_store(tmp, "delta", params, payload)
        again = cache_load(tmp, "delta", params)
        assert again == json.loads(json.dumps(payload))
        assert _emit_json(again) == _emit_json(payload)
        assert Fraction(next(iter(payload["rows"][0]["cols"][0]["poly"].values()))) == 1

    sys.stdout.write("selftest ok\n")
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "delta": cmd_delta,
        "canonical": cmd_canonical,
        "bar": cmd_bar,
        "straighten": cmd_straighten,
        "verify": cmd_verify,
        "selftest": cmd_selftest,
    }
    try:
        return handlers[args.command](args)
    except ValueError as exc:
        sys.stderr.write("error: %s\n" % exc)
        return 2
    except (AssertionError, RuntimeError) as exc:
        sys.stderr.write("internal check failed: %s\n" % exc)
        return 3


if __name__ == "__main__":
    sys.exit(main())
