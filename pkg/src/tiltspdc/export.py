"""Plot-ready data files: '#'-prefixed header lines, whitespace-delimited columns.

Number formatting is fixed so identical inputs give byte-identical files.
"""
from __future__ import annotations

import json
from pathlib import Path

import numpy as np

FMT = "%.12e"


def _header_lines(header):
    return [f"{k} = {v}" for k, v in header.items()]


def write_columns(path, columns, names, header):
    path = Path(path)
    lines = _header_lines(header) + ["columns: " + " ".join(names)]
    data = np.column_stack([np.asarray(c, dtype=float) for c in columns])
    np.savetxt(path, data, fmt=FMT, header="\n".join(lines), comments="# ")
    return path


def jsi_header(js, scenario_hash):
    ws, wi = js.grid.centers
    return {
        "n_points": js.grid.n_points,
        "span_rad_per_fs": repr(js.grid.span),
        "centers_rad_per_fs": f"{ws!r},{wi!r}",
        "scenario_hash": scenario_hash,
        "filter_signal": js.meta.get("filter_signal"),
        "filter_idler": js.meta.get("filter_idler"),
        "order": "omega_s-major (omega_i varies fastest)",
    }


def write_jsi(out_dir, js, scenario_hash, fmt="text"):
    """JSI grid export; text rows omega_s omega_i |psi|^2 re im, or .npy + JSON sidecar."""
    out_dir = Path(out_dir)
    header = jsi_header(js, scenario_hash)
    if fmt == "binary":
        np.save(out_dir / "jsi.npy", js.amplitude)
        (out_dir / "jsi.json").write_text(json.dumps(header, indent=2, sort_keys=True) + "\n")
        return out_dir / "jsi.npy"
    om = js.omega
    ws, wi = np.meshgrid(om, om, indexing="ij")
    psi = js.amplitude
    return write_columns(
        out_dir / "jsi.txt",
        [ws.ravel(), wi.ravel(), (np.abs(psi) ** 2).ravel(), psi.real.ravel(), psi.imag.ravel()],
        ["omega_s[rad/fs]", "omega_i[rad/fs]", "jsi", "re_psi", "im_psi"],
        header,
    )


def read_columns(path):
    header = {}
    for line in Path(path).read_text().splitlines():
        if not line.startswith("#"):
            break
        body = line[1:].strip()
        if " = " in body:
            k, v = body.split(" = ", 1)
            header[k] = v
    return header, np.loadtxt(path, comments="#", ndmin=2)
