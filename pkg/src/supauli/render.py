"""Text rendering with exact symbols for small rationals and ``i``."""

from fractions import Fraction

import numpy as np

MAX_DENOMINATOR = 256


def _real(x, tol):
    frac = Fraction(x).limit_denominator(MAX_DENOMINATOR)
    if abs(float(frac) - x) <= tol:
        return str(frac)
    return f"{x:.6g}"


def format_scalar(z, tol=1e-12):
    """``0``, ``1``, ``-i``, ``1/4``, ``1/2-1/2i``; decimals when not a small rational."""
    z = complex(z)
    re = 0.0 if abs(z.real) <= tol else z.real
    im = 0.0 if abs(z.imag) <= tol else z.imag
    if im == 0:
        return _real(re, tol)
    if im == 1:
        ims = "i"
    elif im == -1:
        ims = "-i"
    else:
        ims = _real(im, tol) + "i"
    if re == 0:
        return ims
    return _real(re, tol) + ("" if ims.startswith("-") else "+") + ims


def format_matrix(mat, tol=1e-12, row_labels=None, col_labels=None):
    mat = np.asarray(mat)
    cells = [[format_scalar(v, tol) for v in row] for row in mat]
    if col_labels is not None:
        cells.insert(0, list(col_labels))
    if row_labels is not None:
        labels = list(row_labels)
        if col_labels is not None:
            labels.insert(0, "")
        cells = [[lab] + row for lab, row in zip(labels, cells)]
    widths = [max(len(row[c]) for row in cells) for c in range(len(cells[0]))]
    return "\n".join(
        "  ".join(cell.rjust(w) for cell, w in zip(row, widths)).rstrip() for row in cells
    )


def matrix_to_json(mat):
    """Dense row-major ``[re, im]`` pairs."""
    mat = np.asarray(mat, dtype=complex)
    return {
        "n": int(mat.shape[0]),
        "matrix": [[[float(v.real), float(v.imag)] for v in row] for row in mat],
    }


def matrix_from_json(obj):
    """Inverse of :func:`matrix_to_json`; a bare list of rows is accepted too."""
    rows = obj["matrix"] if isinstance(obj, dict) else obj
    try:
        arr = np.array(rows, dtype=float)
    except (TypeError, ValueError) as exc:
        raise ValueError(f"malformed matrix JSON: {exc}") from None
    if arr.ndim != 3 or arr.shape[2] != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError(
            f"matrix JSON must be an n x n array of [re, im] pairs, got shape {arr.shape}"
        )
    return arr[..., 0] + 1j * arr[..., 1]
