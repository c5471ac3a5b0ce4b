import attr
import numpy as np

from building.flags import Flag
from utils.errors import EmptyComplexError


def _as_dict(entries):
    return dict(entries)


@attr.s(frozen=True, repr=False)
class SparseMatrix:
    """Integer matrix stored as {(row, col): value} with zero entries omitted."""

    rows = attr.ib()
    cols = attr.ib()
    entries = attr.ib(converter=_as_dict)

    def __repr__(self):
        return "SparseMatrix({}x{}, {} nonzero)".format(self.rows, self.cols, len(self.entries))

    def to_numpy(self):
        dense = np.zeros((self.rows, self.cols), dtype=np.int64)
        for (i, j), v in self.entries.items():
            dense[i, j] = v
        return dense

    def row_dicts(self):
        result = {}
        for (i, j), v in self.entries.items():
            result.setdefault(i, {})[j] = v
        return result


@attr.s(frozen=True, repr=False)
class ChainComplexZ:
    """
    Augmented simplicial chains of a flag complex. `dims[d]` counts the
    d-simplices (flags with d + 1 members); `boundaries[d]` is the matrix of
    ∂_d : C_d -> C_{d-1}, where ∂_0 is the augmentation onto C_{-1} = Z.
    """

    dims = attr.ib(converter=tuple)
    boundaries = attr.ib(converter=tuple)
    simplices = attr.ib(converter=tuple, eq=False)

    def __repr__(self):
        return "ChainComplexZ(dims={})".format(list(self.dims))

    @property
    def top_degree(self):
        return len(self.dims) - 1

    def composition_vanishes(self):
        """∂_{d-1} ∘ ∂_d = 0 for every d."""
        for d in range(1, len(self.boundaries)):
            product = self.boundaries[d - 1].to_numpy() @ self.boundaries[d].to_numpy()
            if np.any(product):
                return False
        return True


def order_chain_complex(complex_):
    """
    Chains on the flags of a nonempty complex. A flag V_0 < ... < V_k is the
    ordered simplex (V_0, ..., V_k), which already agrees with the canonical
    subspace order, and its i-th face (drop V_i) carries the sign (-1)^i.
    """
    if complex_.is_empty:
        raise EmptyComplexError("empty complex: no chain complex to build")
    by_degree = {}
    for flag in complex_.ordered:
        by_degree.setdefault(len(flag) - 1, []).append(flag)
    top = max(by_degree)
    simplices = [by_degree.get(d, []) for d in range(top + 1)]
    index = [{flag: i for i, flag in enumerate(level)} for level in simplices]

    boundaries = [SparseMatrix(1, len(simplices[0]), {(0, j): 1 for j in range(len(simplices[0]))})]
    for d in range(1, top + 1):
        entries = {}
        for j, flag in enumerate(simplices[d]):
            members = flag.members
            for i in range(len(members)):
                face = members[:i] + members[i + 1:]
                row = index[d - 1][Flag(face)]
                entries[(row, j)] = -1 if i % 2 else 1
        boundaries.append(SparseMatrix(len(simplices[d - 1]), len(simplices[d]), entries))

    return ChainComplexZ(
        dims=[len(level) for level in simplices],
        boundaries=boundaries,
        simplices=[tuple(level) for level in simplices],
    )
