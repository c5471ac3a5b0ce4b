import logging
from collections import defaultdict

import attr
import numpy as np
from sympy.polys.domains import ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import invariant_factors

from topology.chains import SparseMatrix

LOG = logging.getLogger(__name__)


@attr.s(frozen=True)
class SmithResult:
    rank = attr.ib()
    divisors = attr.ib(converter=tuple)

    @property
    def torsion(self):
        return tuple(d for d in self.divisors if d > 1)


def _row_dicts(matrix):
    if isinstance(matrix, SparseMatrix):
        return matrix.row_dicts()
    dense = np.asarray(matrix, dtype=object)
    if dense.size == 0:
        return {}
    return {
        i: {j: int(v) for j, v in enumerate(row) if v}
        for i, row in enumerate(dense)
        if any(row)
    }


def _find_unit(rows, cols):
    """A ±1 entry in the shortest row holding one, in its sparsest column."""
    best = None
    for r, row in rows.items():
        if best is not None and len(row) >= best[0]:
            continue
        units = [c for c, v in row.items() if v in (1, -1)]
        if units:
            c = min(units, key=lambda c: (len(cols[c]), c))
            best = (len(row), r, c)
    return None if best is None else best[1:]


def _eliminate_unit_pivots(rows):
    """
    Clear every unit pivot with row operations. Each pivot contributes an
    invariant factor 1; the pivot column then holds a single entry, so the
    column operations clearing the pivot row touch nothing else and the row
    and column can simply be dropped.
    """
    cols = defaultdict(set)
    for r, row in rows.items():
        for c in row:
            cols[c].add(r)
    units = 0
    while True:
        pivot = _find_unit(rows, cols)
        if pivot is None:
            break
        r, c = pivot
        pivot_row = rows.pop(r)
        for cc in pivot_row:
            cols[cc].discard(r)
        sign = pivot_row[c]
        for other in list(cols[c]):
            row = rows[other]
            factor = row[c] * sign
            for cc, v in pivot_row.items():
                value = row.get(cc, 0) - factor * v
                if value:
                    if cc not in row:
                        cols[cc].add(other)
                    row[cc] = value
                elif cc in row:
                    del row[cc]
                    cols[cc].discard(other)
            if not row:
                del rows[other]
        del cols[c]
        units += 1
    return units, rows


def smith_normal_form(matrix):
    """
    Rank and elementary divisors d_1 | d_2 | ... of an integer matrix. Unit
    pivots are eliminated sparsely over Python integers; whatever block is
    left goes to sympy's invariant factors over ZZ.
    """
    units, residual = _eliminate_unit_pivots(_row_dicts(matrix))
    factors = []
    if residual:
        columns = sorted({c for row in residual.values() for c in row})
        position = {c: k for k, c in enumerate(columns)}
        dense = []
        for row in residual.values():
            line = [ZZ(0)] * len(columns)
            for c, v in row.items():
                line[position[c]] = ZZ(v)
            dense.append(line)
        LOG.debug(
            "Smith normal form: {} unit pivots, residual block {}x{}".format(
                units, len(dense), len(columns)
            )
        )
        domain_matrix = DomainMatrix(dense, (len(dense), len(columns)), ZZ)
        factors = sorted(abs(int(f)) for f in invariant_factors(domain_matrix) if f)
    return SmithResult(rank=units + len(factors), divisors=[1] * units + factors)
