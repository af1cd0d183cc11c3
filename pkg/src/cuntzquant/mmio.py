"""Matrix Market serialization of windowed operators.

Entries are evaluated to complex floats on the certified window; indices
outside the window are never written, so a reader sees exactly the block
the window semantics vouch for.
"""

from __future__ import annotations

import numpy as np
from scipy.io import mmwrite
from scipy.sparse import coo_matrix

from .matrices import CoeffMatrix


def to_sparse(mat: CoeffMatrix) -> coo_matrix:
    rows, cols, vals = [], [], []
    for i, j, _ in mat.entries_on_window():
        value = mat.entry_complex(i, j)
        if value:
            rows.append(i - 1)
            cols.append(j - 1)
            vals.append(value)
    w = mat.window
    return coo_matrix((np.array(vals, dtype=complex),
                       (np.array(rows, dtype=int), np.array(cols, dtype=int))),
                      shape=(w, w))


def write_matrix_market(mat: CoeffMatrix, path: str, comment: str = "") -> None:
    mmwrite(path, to_sparse(mat), comment=comment)
