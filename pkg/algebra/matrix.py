import functools

import attr

from utils.errors import DimensionMismatchError, InputError, NotInvertibleError


def _freeze_entries(entries):
    return tuple(tuple(int(v) for v in row) for row in entries)


@attr.s(frozen=True, repr=False)
class Mat:
    """
    An n x n matrix over a FieldSpec, acting on column vectors. Equality and
    hashing go through `key`, a byte encoding that also names the field.
    """

    field = attr.ib(eq=False)
    entries = attr.ib(eq=False, converter=_freeze_entries)
    invertible = attr.ib(default=None, eq=False)
    key = attr.ib(init=False)

    def __attrs_post_init__(self):
        n = len(self.entries)
        if n == 0 or any(len(row) != n for row in self.entries):
            raise DimensionMismatchError("matrix must be square and nonempty")
        for row in self.entries:
            for v in row:
                if not 0 <= v < self.field.q:
                    raise InputError(
                        "element code {} out of range for F_{}".format(v, self.field.q)
                    )
        flat = [self.field.q, n] + [v for row in self.entries for v in row]
        object.__setattr__(self, "key", bytes(flat))

    def __repr__(self):
        return "Mat(q={}, {})".format(
            self.field.q, ";".join(",".join(str(v) for v in row) for row in self.entries)
        )

    @property
    def n(self):
        return len(self.entries)

    @functools.cached_property
    def is_invertible(self):
        if self.invertible is not None:
            return self.invertible
        from algebra.subspace import span

        return span(self.field, self.n, self.entries).dim == self.n

    @functools.cached_property
    def gf2_columns(self):
        """Columns as bit-packed words (bit n-1-i holds row i); only meaningful over F_2."""
        n = self.n
        columns = []
        for j in range(n):
            word = 0
            for i in range(n):
                if self.entries[i][j]:
                    word |= 1 << (n - 1 - i)
            columns.append(word)
        return tuple(columns)

    def as_lists(self):
        return [list(row) for row in self.entries]


def identity(field, n):
    return Mat(field, [[1 if i == j else 0 for j in range(n)] for i in range(n)], invertible=True)


def _check_compatible(a, b):
    if a.field != b.field or a.n != b.n:
        raise DimensionMismatchError(
            "incompatible matrices: F_{} n={} vs F_{} n={}".format(a.field.q, a.n, b.field.q, b.n)
        )


def mat_mul(a, b):
    _check_compatible(a, b)
    add, mul = a.field.add, a.field.mul
    n = a.n
    b_columns = list(zip(*b.entries))
    result = []
    for row in a.entries:
        out_row = []
        for column in b_columns:
            acc = 0
            for x, y in zip(row, column):
                if x and y:
                    acc = add[acc][mul[x][y]]
            out_row.append(acc)
        result.append(out_row)
    invertible = True if (a.invertible and b.invertible) else None
    return Mat(a.field, result, invertible=invertible)


def mat_inv(a):
    """Gauss-Jordan elimination on [a | I]."""
    field = a.field
    add, mul, inv, neg = field.add, field.mul, field.inv, field.neg
    n = a.n
    work = [list(row) + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(a.entries)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if work[r][col]), None)
        if pivot is None:
            raise NotInvertibleError("matrix is not invertible: {!r}".format(a))
        work[col], work[pivot] = work[pivot], work[col]
        scale = inv[work[col][col]]
        work[col] = [mul[scale][v] for v in work[col]]
        for r in range(n):
            factor = work[r][col]
            if r == col or not factor:
                continue
            minus = neg[factor]
            work[r] = [add[x][mul[minus][y]] for x, y in zip(work[r], work[col])]
    return Mat(field, [row[n:] for row in work], invertible=True)


def conjugate(g, h, g_inverse=None):
    """g h g^-1."""
    if g_inverse is None:
        g_inverse = mat_inv(g)
    return mat_mul(mat_mul(g, h), g_inverse)


def mat_sub(a, b):
    _check_compatible(a, b)
    sub = a.field.sub
    rows = zip(a.entries, b.entries)
    return Mat(a.field, [[sub(x, y) for x, y in zip(ra, rb)] for ra, rb in rows])


def is_unipotent(g):
    """(g - I)^n = 0."""
    nilpotent = mat_sub(g, identity(g.field, g.n))
    power = nilpotent
    for _ in range(g.n - 1):
        power = mat_mul(power, nilpotent)
    return all(v == 0 for row in power.entries for v in row)


def apply(g, vector):
    """g v for a column vector given as a tuple of codes."""
    add, mul = g.field.add, g.field.mul
    result = []
    for row in g.entries:
        acc = 0
        for x, y in zip(row, vector):
            if x and y:
                acc = add[acc][mul[x][y]]
        result.append(acc)
    return tuple(result)


def permutation_matrix(field, permutation):
    """Matrix sending e_j to e_{permutation[j]}."""
    n = len(permutation)
    entries = [[0] * n for _ in range(n)]
    for j, i in enumerate(permutation):
        entries[i][j] = 1
    return Mat(field, entries, invertible=True)


def diagonal(field, values):
    n = len(values)
    return Mat(field, [[values[i] if i == j else 0 for j in range(n)] for i in range(n)])


def elementary(field, n, i, j, value):
    """I + value * E_ij for i != j."""
    entries = [[1 if r == c else 0 for c in range(n)] for r in range(n)]
    entries[i][j] = value
    return Mat(field, entries, invertible=True)


def jordan_block(field, n, size):
    """Unipotent Jordan block of the given size in the top-left corner, identity elsewhere."""
    entries = [[1 if r == c else 0 for c in range(n)] for r in range(n)]
    for r in range(size - 1):
        entries[r][r + 1] = 1
    return Mat(field, entries, invertible=True)


def random_invertible(field, n, rng):
    while True:
        candidate = Mat(field, [[rng.randrange(field.q) for _ in range(n)] for _ in range(n)])
        if candidate.is_invertible:
            return Mat(field, candidate.entries, invertible=True)
