"""Command-line surface: lattice file I/O, property reports, constructions.

Subcommands: check, kalmbach, rn, hs, product, keller, dot.  All read stdin
or ``--in FILE`` and write stdout or ``--out FILE``.  Exit codes: 0 = all
checks pass, 1 = some check reported false, 2 = structural error.
"""

from __future__ import annotations

import argparse
import random
import sys
from dataclasses import dataclass

from .errors import OmlkitError
from .hahn import GammaExp, tclass
from .kalmbach import kalmbach, katoms_check, kblocks_check, kcommute_check
from .keller import (
    anisotropy_check,
    basis_vector,
    form_self,
    ortho_complement,
    pi_map,
    random_nonzero_vector,
    random_subspace,
    type_of,
)
from .latfile import (
    LatticeDocument,
    build_lattice,
    document_from_lattice,
    emit_lattice,
    export_dot,
    parse_lattice,
)
from .ortho import (
    blocks,
    center,
    has_n_covering,
    horizontal_sum,
    is_directly_irreducible,
    is_orthomodular,
    product,
)
from .lattice import predicates
from .rn import rn_lattice, rn_report


@dataclass(frozen=True)
class Report:
    """An ordered list of (check-name, verdict, witness-or-empty) triples."""

    entries: tuple

    @property
    def all_pass(self):
        return all(v for _, v, _ in self.entries)

    def render(self):
        lines = []
        for name, verdict, witness in self.entries:
            tail = f"  ({', '.join(witness)})" if witness else ""
            lines.append(f"{name}: {'pass' if verdict else 'fail'}{tail}")
        return "\n".join(lines) + "\n"


_PREDICATE_ORDER = (
    ("modular", "is_modular"),
    ("semimodular", "is_semimodular"),
    ("dual_semimodular", "is_dual_semimodular"),
    ("covering", "has_covering"),
    ("atomic", "is_atomic"),
    ("atomistic", "is_atomistic"),
    ("weakly_atomic", "is_weakly_atomic"),
    ("strongly_atomic", "is_strongly_atomic"),
    ("distributive", "is_distributive"),
    ("complemented", "is_complemented"),
    ("relatively_complemented", "is_relatively_complemented"),
)


def run_checks(doc, with_kalmbach=False):
    """Run every checker over a document, in fixed order, as a Report.

    Order: lattice validation, predicates, ortho validation (when perp is
    present), orthomodularity, blocks/center/irreducibility, n-covering for
    n in {1, 2}, and the Kalmbach pipeline when requested.  Structural
    failures of the lattice itself propagate as exceptions (exit code 2);
    everything downstream is reported as pass/fail triples.
    """
    entries = []
    L, OL = build_lattice(doc)
    entries.append(("lattice", True, ()))
    preds = predicates(L)
    for label, attr in _PREDICATE_ORDER:
        verdict = getattr(preds, attr)
        witness = () if verdict else tuple(preds.witnesses.get(attr, ()))
        entries.append((label, verdict, witness))
    if OL is not None:
        entries.append(("ortholattice", True, ()))
        om_ok, om_w = is_orthomodular(OL)
        entries.append(("orthomodular", om_ok, tuple(om_w) if om_w else ()))
        if om_ok:
            blks = blocks(OL)
            entries.append(("blocks", True, (str(len(blks)),)))
            entries.append(("center", True, tuple(sorted(center(OL)))))
            entries.append(
                ("directly_irreducible", is_directly_irreducible(OL), ())
            )
        for n in (1, 2):
            ok, w = has_n_covering(OL, n)
            entries.append((f"covering_{n}", ok, tuple(w) if w else ()))
    if with_kalmbach:
        K = kalmbach(L)
        entries.append(("k_orthomodular", K.orthomodular,
                        tuple(K.orthomodular_witness or ())))
        entries.append(("katoms", katoms_check(K), ()))
        entries.append(("kblocks", kblocks_check(K), ()))
        entries.append(("kcommute", kcommute_check(K), ()))
    return Report(tuple(entries))


# -- keller report ---------------------------------------------------------


def _fmt_type(t):
    inner = ",".join(str(i) for i in sorted(t.indices))
    return f"T({inner})"


def keller_report(dim, seed=0, trials=1000):
    """Types of basis vectors, randomized law checks, and a pi-map table."""
    lines = [f"ambient dimension: {dim}"]
    for i in range(dim):
        lines.append(f"type(e{i}) = {_fmt_type(type_of(basis_vector(dim, i)))}")

    rng = random.Random(seed)
    checks = []

    fails = 0
    for _ in range(trials):
        f = random_nonzero_vector(rng, dim)
        nonzero, val = anisotropy_check(f)
        if not nonzero or val != form_self(f).valuation():
            fails += 1
    checks.append(("anisotropy_formula", fails))

    full = {tclass(GammaExp.delta(i)) for i in range(dim)}
    fails = 0
    for _ in range(trials):
        X = random_subspace(rng, dim)
        pX = pi_map(X, reshuffle_check=False)
        pC = pi_map(ortho_complement(X), reshuffle_check=False)
        if set(pX) | set(pC) != full or set(pX) & set(pC):
            fails += 1
    checks.append(("pi_complement_law", fails))

    for name, failures in checks:
        lines.append(
            f"{name}: {'pass' if failures == 0 else 'fail'}"
            f" ({trials} trials, {failures} failures)"
        )

    lines.append("pi-map table (sampled subspaces):")
    rng = random.Random(seed)
    for k in range(min(5, trials)):
        X = random_subspace(rng, dim)
        types = " ".join(sorted(_fmt_type(t) for t in pi_map(X)))
        lines.append(f"  sample {k}: dim {X.dim} -> {{{types}}}")
    ok = all(f == 0 for _, f in checks)
    return "\n".join(lines) + "\n", ok


# -- rn report ---------------------------------------------------------


def render_rn_report(report):
    """Deterministic text rendering of an rn_report dict."""
    lines = []
    for key, value in report.items():
        if key == "atom_claims":
            lines.append("atom_claims:")
            for entry in value:
                bits = " ".join(f"{k}={entry[k]}" for k in entry)
                lines.append(f"  {bits}")
        elif isinstance(value, dict):
            inner = " ".join(f"{k}={v}" for k, v in value.items())
            lines.append(f"{key}: {inner}")
        else:
            lines.append(f"{key}: {value}")
    return "\n".join(lines) + "\n"


# -- argument plumbing ---------------------------------------------------


def _read(path):
    if path is None:
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _write(path, text):
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _add_io(p, multi_in=False):
    if multi_in:
        p.add_argument("--in", dest="inputs", action="append", required=True,
                       metavar="FILE", help="input lattice file (repeatable)")
    else:
        p.add_argument("--in", dest="input", metavar="FILE",
                       help="input lattice file (default: stdin)")
    p.add_argument("--out", dest="output", metavar="FILE",
                   help="output file (default: stdout)")


def _parser():
    p = argparse.ArgumentParser(prog="omlkit")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="run all property checks on a lattice file")
    _add_io(c)
    c.add_argument("--kalmbach", action="store_true",
                   help="also run the Kalmbach pipeline checks")

    k = sub.add_parser("kalmbach", help="emit K(L) of the input lattice")
    _add_io(k)

    r = sub.add_parser("rn", help="ladder truncation lattices and reports")
    r.add_argument("--rows", type=int, required=True)
    r.add_argument("--kalmbach", action="store_true",
                   help="emit K of the truncation instead of the base")
    r.add_argument("--report", action="store_true",
                   help="emit the structure report (implies --kalmbach)")
    r.add_argument("--out", dest="output", metavar="FILE")

    h = sub.add_parser("hs", help="horizontal sum of ortholattice files")
    _add_io(h, multi_in=True)

    pr = sub.add_parser("product", help="product of ortholattice files")
    _add_io(pr, multi_in=True)

    ke = sub.add_parser("keller", help="Hermitian-space type/pi report")
    ke.add_argument("--dim", type=int, required=True)
    ke.add_argument("--seed", type=int, default=0)
    ke.add_argument("--trials", type=int, default=1000)
    ke.add_argument("--report", action="store_true")
    ke.add_argument("--out", dest="output", metavar="FILE")

    d = sub.add_parser("dot", help="export the Hasse diagram as DOT")
    _add_io(d)
    return p


def main(argv=None):
    args = _parser().parse_args(argv)
    try:
        return _dispatch(args)
    except OmlkitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def _dispatch(args):
    if args.command == "check":
        doc = parse_lattice(_read(args.input))
        report = run_checks(doc, with_kalmbach=args.kalmbach)
        _write(args.output, report.render())
        return 0 if report.all_pass else 1

    if args.command == "kalmbach":
        doc = parse_lattice(_read(args.input))
        L, _ = build_lattice(doc)
        _write(args.output, emit_lattice(document_from_lattice(kalmbach(L))))
        return 0

    if args.command == "rn":
        if args.report:
            _write(args.output, render_rn_report(rn_report(args.rows)))
            return 0
        base = rn_lattice(args.rows)
        obj = kalmbach(base) if args.kalmbach else base
        _write(args.output, emit_lattice(document_from_lattice(obj)))
        return 0

    if args.command in ("hs", "product"):
        oms = []
        for path in args.inputs:
            _, OL = build_lattice(parse_lattice(_read(path)))
            if OL is None:
                raise OmlkitError(f"{path}: document has no perp field")
            oms.append(OL)
        combined = horizontal_sum(oms) if args.command == "hs" else product(oms)
        _write(args.output, emit_lattice(document_from_lattice(combined)))
        return 0

    if args.command == "keller":
        text, ok = keller_report(args.dim, seed=args.seed, trials=args.trials)
        _write(args.output, text)
        return 0 if ok else 1

    if args.command == "dot":
        doc = parse_lattice(_read(args.input))
        _write(args.output, export_dot(doc))
        return 0

    raise AssertionError("unreachable")


if __name__ == "__main__":
    sys.exit(main())
