"""STO-3G FCIDUMP generator with HF and determinant-FCI reference energies."""

from intgen.generate import PointResult, ScanSpec, compute_point, generate

__version__ = "0.1.0"
