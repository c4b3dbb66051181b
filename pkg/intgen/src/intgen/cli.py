"""Command-line entry point: intgen --molecule LiH --grid 1.0:3.2:0.2 --out dir/."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from intgen.generate import ScanSpec, generate
from intgen.molecules import MOLECULES

__all__ = ["main", "parse_grid"]


def parse_grid(text: str) -> tuple[float, ...]:
    """Parse `start:stop:step` (inclusive endpoints) or a comma list."""
    text = text.strip()
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise ValueError(f"grid must be start:stop:step, got {text!r}")
        start, stop, step = (float(p) for p in parts)
        if step <= 0:
            raise ValueError("grid step must be positive")
        values = []
        v = start
        while v <= stop + 1e-9:
            values.append(round(v, 10))
            v += step
        return tuple(values)
    return tuple(float(p) for p in text.split(","))


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="intgen",
        description="Generate STO-3G FCIDUMP files over a bond-length scan, "
        "with HF and determinant-FCI reference energies.",
    )
    parser.add_argument("--molecule", required=True, choices=sorted(MOLECULES))
    parser.add_argument(
        "--grid",
        required=True,
        help="bond lengths in angstrom: 'start:stop:step' or 'r1,r2,...'",
    )
    parser.add_argument("--out", required=True, type=Path, help="output directory")
    parser.add_argument("--basis", default="sto-3g")
    parser.add_argument(
        "--no-fci",
        action="store_true",
        help="skip the determinant-FCI sidecar energies",
    )
    args = parser.parse_args(argv)

    try:
        grid = parse_grid(args.grid)
        spec = ScanSpec(
            molecule=args.molecule,
            bond_lengths=grid,
            output_dir=args.out,
            basis=args.basis,
            with_fci=not args.no_fci,
        )
    except ValueError as exc:
        parser.error(str(exc))

    results = generate(spec)
    failed = [p for p in results if not p.converged]
    for p in results:
        fci = f"{p.e_fci:.10f}" if p.e_fci is not None else "-"
        status = "ok" if p.converged else "SCF FAILED"
        print(f"R={p.r:7.4f}  E_HF={p.e_hf:.10f}  E_FCI={fci}  [{status}]")
    if failed:
        print(f"{len(failed)} point(s) failed SCF", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
