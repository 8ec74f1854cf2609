"""Command-line interface.

Exit codes: 0 success, 1 unphysical input, 2 usage or parse error,
3 verification failure.
"""

import argparse
import csv
import json
import math
import sys

import numpy as np

from . import campaigns
from .core import (
    PartitionError,
    UnphysicalStateError,
    check_physical,
    n_modes,
    random_mixed_cm,
    random_pure_cm,
    reduce,
    renyi2_entropy,
    tmss_cm,
    validate,
    von_neumann_entropy,
)
from .correlations import classical_correlations, discord, mutual_information, ssa_gap
from .entanglement import (
    DomainError,
    check_triangle,
    classify,
    e2_pure_bipartition,
    e2_two_mode,
    g_reduced,
    ppt_min_symplectic_eigenvalue,
    residual_d2,
    residual_e2,
    residual_e2_invariant,
    three_mode_pure_cm,
)

EXIT_OK, EXIT_UNPHYSICAL, EXIT_USAGE, EXIT_VERIFY = 0, 1, 2, 3
ORDERING = "q1p1"


class UsageError(Exception):
    pass


def _fmt(x):
    return f"{x:.12f}"


def _fmt_sig(x):
    return f"{x:.12g}"


def read_cm_document(path):
    """Reads a JSON covariance-matrix document; raises UsageError when malformed."""
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, ValueError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    if not isinstance(doc, dict) or "matrix" not in doc or "modes" not in doc:
        raise UsageError("document needs 'modes' and 'matrix' fields")
    if doc.get("ordering") != ORDERING:
        raise UsageError(f"unsupported quadrature ordering {doc.get('ordering')!r}; expected {ORDERING!r}")
    try:
        mat = np.array(doc["matrix"], dtype=float)
        modes = int(doc["modes"])
    except (TypeError, ValueError) as exc:
        raise UsageError(f"malformed matrix: {exc}") from exc
    if mat.ndim != 2 or mat.shape != (2 * modes, 2 * modes) or modes < 1:
        raise UsageError(f"matrix shape {mat.shape} inconsistent with modes={modes}")
    if not np.all(np.isfinite(mat)):
        raise UsageError("matrix has non-finite entries")
    return mat


def cm_document(cm, label=None):
    g = np.asarray(cm, dtype=float)
    doc = {"modes": g.shape[0] // 2, "ordering": ORDERING, "matrix": g.tolist()}
    if label is not None:
        doc["label"] = label
    return doc


def write_cm_document(cm, path, label=None):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(cm_document(cm, label), fh, indent=1)
        fh.write("\n")


def parse_partition_spec(spec):
    """'0,1;2' -> [[0, 1], [2]]; empty groups are allowed ('0;;1')."""
    try:
        return [[int(m) for m in grp.split(",") if m.strip()] for grp in spec.split(";")]
    except ValueError as exc:
        raise UsageError(f"bad partition spec {spec!r}") from exc


def cmd_validate(args):
    g = read_cm_document(args.path)
    rep = validate(g)
    print(f"symmetric: {str(rep.symmetric).lower()}")
    print(f"positive_definite: {str(rep.positive_definite).lower()}")
    print(f"physical: {str(rep.physical).lower()}, nu_min: {float(_fmt_sig(rep.nu_min))!r}")
    return EXIT_OK if rep.physical else EXIT_UNPHYSICAL


def _measure(g, measure, partition, direction):
    n = n_modes(g)
    default = [[0], list(range(1, n))] if n > 1 else [[0]]
    parts = partition if partition is not None else default
    if measure == "renyi2":
        return renyi2_entropy(g), None
    if measure == "vn":
        return von_neumann_entropy(g), None
    if measure == "mutual":
        return mutual_information(g, parts), None
    if measure == "ssa":
        if partition is None:
            raise UsageError("ssa needs --partition 'A;B;C'")
        return ssa_gap(g, parts), None
    if measure in ("classical", "discord"):
        if n == 2 and partition in (None, [[0], [1]]):
            rep = classical_correlations(g, direction) if measure == "classical" else discord(g, direction)
        elif measure == "classical":
            rep = classical_correlations(g, direction, partition=parts)
        else:
            raise UsageError("discord is available for two-mode states")
        return rep.value, rep
    if measure == "entanglement":
        if n == 2 and partition in (None, [[0], [1]]):
            rep = e2_two_mode(g)
            return rep.value, rep
        return e2_pure_bipartition(g, parts), None
    raise UsageError(f"unknown measure {measure!r}")


def cmd_measure(args):
    g = read_cm_document(args.path)
    check_physical(g)
    partition = parse_partition_spec(args.partition) if args.partition else None
    value, rep = _measure(g, args.measure, partition, args.direction)
    print(_fmt(value))
    if rep is not None:
        print(f"method: {rep.method}")
        print("witness: " + json.dumps(rep.witness, default=float))
    return EXIT_OK


def cmd_tripartite(args):
    try:
        inv = check_triangle((args.a1, args.a2, args.a3))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    cls = classify(inv)
    try:
        inv_value = _fmt(residual_e2_invariant(inv))
    except DomainError:
        inv_value = "n/a"
    foci = [args.focus] if args.focus is not None else [0, 1, 2]
    head = f"{'focus':>5}  {'E2(i:jk)':>14}  {'E2(i:j)':>14}  {'E2(i:k)':>14}  {'residual_E2':>14}  {'residual_D2':>14}"
    print(head)
    for i in foci:
        j, k = [m for m in range(3) if m != i]
        row = [
            math.log(inv[i]),
            0.5 * math.log(g_reduced(inv, (i, j))),
            0.5 * math.log(g_reduced(inv, (i, k))),
            residual_e2(inv, i),
            residual_d2(inv, i),
        ]
        print(f"{i:>5}  " + "  ".join(f"{_fmt(v):>14}" for v in row))
    print(f"fully_inseparable: {str(cls.fully_inseparable).lower()}")
    print(f"invariant_residual: {inv_value}")
    branches = ", ".join(f"{i}{j}:{b}" for (i, j), b in sorted(cls.branches.items()))
    print(f"g_branches: {branches}")
    return EXIT_OK


def cmd_random(args):
    rng = np.random.default_rng(args.seed)
    try:
        if args.pure:
            g = random_pure_cm(args.modes, args.squeeze_cap, rng)
        else:
            g = random_mixed_cm(args.modes, args.squeeze_cap, args.temp_cap, rng)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    label = f"random {'pure' if args.pure else 'mixed'} seed={args.seed}"
    if args.out:
        write_cm_document(g, args.out, label)
    else:
        json.dump(cm_document(g, label), sys.stdout, indent=1)
        sys.stdout.write("\n")
    return EXIT_OK


def cmd_verify(args):
    options = {}
    if args.modes is not None:
        options["modes"] = args.modes
    if args.samples is not None:
        options["samples"] = args.samples
    if args.trials < 1:
        raise UsageError("--trials must be >= 1")
    rep = campaigns.run_suite(args.suite, args.trials, args.seed, args.tol, **options)
    print(json.dumps(rep.as_dict()))
    if rep.failures:
        print(f"{rep.failures} counterexample candidate(s); reproduce with --seed {rep.worst_seed} --trials 1", file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


def _family_state(family, x, args):
    if family == "tmss":
        return tmss_cm(x)
    if family == "squeezed-thermal":
        return args.nu * tmss_cm(x)
    if family == "ghz":
        return three_mode_pure_cm((x, x, x))
    raise UsageError(f"unknown family {family!r}")


def _family_measure(family, name, x, g):
    two = g.shape == (4, 4)
    if name == "renyi2_A":
        return renyi2_entropy(reduce(g, [0]))
    if name == "renyi2":
        return renyi2_entropy(g)
    if name == "vn":
        return von_neumann_entropy(g)
    if family == "ghz":
        inv = (x, x, x)
        table = {
            "residual": lambda: residual_e2(inv, 0),
            "residual_d2": lambda: residual_d2(inv, 0),
            "entanglement": lambda: e2_two_mode(reduce(g, [0, 1])).value,
            "mutual": lambda: mutual_information(reduce(g, [0, 1])),
            "discord": lambda: discord(reduce(g, [0, 1])).value,
            "classical": lambda: classical_correlations(reduce(g, [0, 1])).value,
        }
    elif two:
        table = {
            "mutual": lambda: mutual_information(g),
            "classical": lambda: classical_correlations(g).value,
            "discord": lambda: discord(g).value,
            "entanglement": lambda: e2_two_mode(g).value,
            "ppt": lambda: ppt_min_symplectic_eigenvalue(g),
        }
    else:
        table = {}
    if name not in table:
        raise UsageError(f"measure {name!r} not available for family {family!r}")
    return table[name]()


def _param_grid(spec):
    try:
        start, stop, step = (float(v) for v in spec.split(":"))
    except ValueError as exc:
        raise UsageError(f"bad --param-range {spec!r}; use start:stop:step") from exc
    if step <= 0 or stop < start:
        raise UsageError("--param-range must be increasing with a positive step")
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    return [start + k * step for k in range(count)]


def cmd_sweep(args):
    if args.family not in ("tmss", "ghz", "squeezed-thermal"):
        raise UsageError(f"unknown family {args.family!r}")
    measures = [m.strip() for m in args.measures.split(",") if m.strip()]
    if not measures:
        raise UsageError("no measures given")
    rows = []
    for x in _param_grid(args.param_range):
        try:
            g = _family_state(args.family, x, args)
        except ValueError as exc:
            raise UsageError(f"parameter {x}: {exc}") from exc
        rows.append([_fmt_sig(x)] + [_fmt_sig(_family_measure(args.family, m, x, g)) for m in measures])
    out = open(args.out, "w", encoding="utf-8", newline="") if args.out else sys.stdout
    try:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["param"] + measures)
        writer.writerows(rows)
    finally:
        if args.out:
            out.close()
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def build_parser():
    p = _Parser(prog="gaussrenyi", description="Renyi-2 measures for Gaussian states.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    v = sub.add_parser("validate", help="check a covariance-matrix document")
    v.add_argument("path")
    v.set_defaults(func=cmd_validate)

    m = sub.add_parser("measure", help="evaluate a measure on a covariance-matrix document")
    m.add_argument("path")
    m.add_argument("--measure", required=True, choices=["renyi2", "vn", "mutual", "ssa", "classical", "discord", "entanglement"])
    m.add_argument("--partition", help="mode groups separated by ';', modes by ',' (e.g. '0;1')")
    m.add_argument("--direction", default="A|B", choices=["A|B", "B|A"])
    m.set_defaults(func=cmd_measure)

    t = sub.add_parser("tripartite", help="pure three-mode state from local invariants")
    t.add_argument("--a1", type=float, required=True)
    t.add_argument("--a2", type=float, required=True)
    t.add_argument("--a3", type=float, required=True)
    t.add_argument("--focus", type=int, choices=[0, 1, 2])
    t.set_defaults(func=cmd_tripartite)

    r = sub.add_parser("random", help="write a random covariance-matrix document")
    r.add_argument("--modes", type=int, required=True)
    r.add_argument("--pure", action="store_true")
    r.add_argument("--squeeze-cap", type=float, default=1.0)
    r.add_argument("--temp-cap", type=float, default=3.0)
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--out")
    r.set_defaults(func=cmd_random)

    c = sub.add_parser("verify", help="seeded verification campaign")
    c.add_argument("--suite", required=True, choices=sorted(campaigns.SUITES))
    c.add_argument("--trials", type=int, default=1000)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--tol", type=float)
    c.add_argument("--modes", type=int, choices=[3, 4], help="monogamy: number of modes")
    c.add_argument("--samples", type=int, help="mc-entropy: samples per trial")
    c.set_defaults(func=cmd_verify)

    s = sub.add_parser("sweep", help="tabulate measures along a state family")
    s.add_argument("--family", required=True)
    s.add_argument("--param-range", required=True, help="start:stop:step (inclusive)")
    s.add_argument("--measures", required=True, help="comma-separated measure names")
    s.add_argument("--nu", type=float, default=2.0, help="squeezed-thermal: thermal factor")
    s.add_argument("--out")
    s.set_defaults(func=cmd_sweep)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, PartitionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except UnphysicalStateError as exc:
        print(f"unphysical input: {exc}", file=sys.stderr)
        return EXIT_UNPHYSICAL


if __name__ == "__main__":
    sys.exit(main())
