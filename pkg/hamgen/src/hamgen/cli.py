"""Command line for generating and validating Hamiltonian coefficient files."""

import argparse
import json
import sys

import numpy as np

from .generate import SYSTEMS, MoleculeSpec, generate
from .validate import validate_directory


def _distances(args):
    if args.distances:
        return tuple(args.distances)
    return tuple(np.linspace(args.dmin, args.dmax, args.points))


def cmd_generate(args) -> int:
    spec = MoleculeSpec(args.system, _distances(args))
    report = generate(spec, args.outdir)
    print(f"{args.system}: wrote {len(report['files'])} files, "
          f"{len(report['failures'])} failures")
    for failure in report["failures"]:
        print(f"  d={failure['distance_angstrom']}: {failure['error']}",
              file=sys.stderr)
    return 0 if report["files"] else 1


def cmd_validate(args) -> int:
    report = validate_directory(args.directory)
    print(json.dumps(report, indent=1))
    return 0 if report["ok"] else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hamgen",
        description="STO-3G molecular Hamiltonians as Pauli coefficient files",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="emit coefficient files for a sweep")
    p.add_argument("--system", required=True, choices=SYSTEMS)
    p.add_argument("--dmin", type=float, default=0.3)
    p.add_argument("--dmax", type=float, default=2.1)
    p.add_argument("--points", type=int, default=10)
    p.add_argument("--distances", type=float, nargs="*", default=None,
                   help="explicit distances in Angstrom, overrides the range")
    p.add_argument("--outdir", required=True)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("validate", help="check every file in a directory")
    p.add_argument("directory")
    p.set_defaults(func=cmd_validate)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
