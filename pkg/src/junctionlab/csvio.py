"""Deterministic CSV/JSON emission.

Floats are written with repr (shortest round-trip form, '.' decimal), rows
end with '\n', and the header row is always present, so identical inputs
produce byte-identical files on any platform.
"""

from __future__ import annotations

import json
from pathlib import Path

from .observables import local_densities


def _fmt(value) -> str:
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_csv(path, header, rows) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(v) for v in row) + "\n")


def write_json(path, obj) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="\n") as fh:
        json.dump(obj, fh, indent=2, sort_keys=True)
        fh.write("\n")


CURVES_HEADER = ("phi_rad", "branch_id", "energy_ev", "overlap_score")


def curves_rows(result):
    for curve in result.curves:
        for p in curve.points:
            yield (float(p.phi), curve.branch_id, float(p.energy),
                   float(p.overlap))


def write_curves(path, result) -> None:
    write_csv(path, CURVES_HEADER, curves_rows(result))


DENSITIES_HEADER = ("phi_rad", "site", "rho", "tx", "ty", "tz")


def densities_rows(curve, sites=None):
    for p in curve.points:
        field = local_densities(p.state)
        ids = range(field.n_sites) if sites is None else sites
        for s in ids:
            yield (float(p.phi), int(s), float(field.rho[s]),
                   float(field.tx[s]), float(field.ty[s]), float(field.tz[s]))


def write_densities(path, curve, sites=None) -> None:
    write_csv(path, DENSITIES_HEADER, densities_rows(curve, sites))


BULK_HEADER = ("k", "E_minus", "E_plus")


def write_bulk(path, bands) -> None:
    rows = ((float(k), float(em), float(ep))
            for k, em, ep in zip(bands.k_grid, bands.e_minus, bands.e_plus))
    write_csv(path, BULK_HEADER, rows)


ANALYTIC_HEADER = ("phi_rad", "e_plus", "e_minus")


def write_analytic(path, phis, pairs) -> None:
    rows = ((float(phi), float(ep), float(em))
            for phi, (ep, em) in zip(phis, pairs))
    write_csv(path, ANALYTIC_HEADER, rows)


SPECTRUM_HEADER = ("index", "energy_ev", "in_gap")


def write_spectrum(path, values, in_gap_indices) -> None:
    marked = set(in_gap_indices)
    rows = ((int(i), float(e), int(i in marked)) for i, e in enumerate(values))
    write_csv(path, SPECTRUM_HEADER, rows)


MATRIX_HEADER = ("row", "col", "re", "im")


def write_matrix(path, matrix) -> None:
    def rows():
        for i in range(matrix.shape[0]):
            for j in range(matrix.shape[1]):
                v = matrix[i, j]
                if v != 0:
                    yield (i, j, float(v.real), float(v.imag))
    write_csv(path, MATRIX_HEADER, rows())
