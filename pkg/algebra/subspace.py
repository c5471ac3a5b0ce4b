import functools
import itertools
import logging

import attr

from algebra.matrix import apply
from utils.errors import DimensionMismatchError, EnumerationTooLargeError, NotInvertibleError

LOG = logging.getLogger(__name__)


def _freeze_basis(basis):
    return tuple(tuple(int(v) for v in row) for row in basis)


@functools.total_ordering
@attr.s(frozen=True, repr=False, order=False)
class Subspace:
    """
    A subspace of F_q^n stored by its reduced row-echelon basis, pivot
    columns strictly increasing. The form is canonical, so equality of
    subspaces is equality of stored bases. Build these with `span`; the
    constructor trusts its input.

    Ordered by dimension, then lexicographically on the basis.
    """

    field = attr.ib()
    n = attr.ib()
    basis = attr.ib(converter=_freeze_basis)

    def __repr__(self):
        return "Subspace(q={}, n={}, {})".format(self.field.q, self.n, list(self.basis))

    def __lt__(self, other):
        return self.sort_key < other.sort_key

    @property
    def dim(self):
        return len(self.basis)

    @property
    def sort_key(self):
        return (self.dim, self.basis)

    @property
    def is_zero(self):
        return not self.basis

    @property
    def is_full(self):
        return self.dim == self.n

    @functools.cached_property
    def gf2_rows(self):
        return tuple(pack_gf2(row) for row in self.basis)

    @functools.cached_property
    def pivots(self):
        return tuple(next(j for j, v in enumerate(row) if v) for row in self.basis)


def pack_gf2(row):
    """
    Pack an F_2 vector into an int. Bit n-1-j holds coordinate j, so int
    order is lexicographic.
    """
    word = 0
    for v in row:
        word = (word << 1) | (v & 1)
    return word


def unpack_gf2(word, n):
    return tuple((word >> (n - 1 - j)) & 1 for j in range(n))


def _rref_gf2(words):
    """Reduced echelon form of bit-packed rows; returns the rows sorted leftmost pivot first."""
    basis = {}
    for word in words:
        for lead, row in basis.items():
            if word >> lead & 1:
                word ^= row
        if not word:
            continue
        lead = word.bit_length() - 1
        for other_lead, row in list(basis.items()):
            if row >> lead & 1:
                basis[other_lead] = row ^ word
        basis[lead] = word
    return [basis[lead] for lead in sorted(basis, reverse=True)]


def _rref_table(field, rows, n):
    add, mul, inv, neg = field.add, field.mul, field.inv, field.neg
    work = [list(row) for row in rows if any(row)]
    result = []
    for col in range(n):
        pivot = next((i for i, row in enumerate(work) if row[col]), None)
        if pivot is None:
            continue
        row = work.pop(pivot)
        scale = inv[row[col]]
        row = [mul[scale][v] for v in row]
        for others in (work, result):
            for i, other in enumerate(others):
                factor = other[col]
                if factor:
                    minus = neg[factor]
                    others[i] = [add[x][mul[minus][y]] for x, y in zip(other, row)]
        work = [r for r in work if any(r)]
        result.append(row)
        if not work:
            break
    return result


def span(field, n, rows):
    """Canonical representative of the row span of `rows`."""
    rows = [tuple(row) for row in rows]
    for row in rows:
        if len(row) != n:
            raise DimensionMismatchError(
                "vector of length {} in an ambient space of dimension {}".format(len(row), n)
            )
    if field.q == 2:
        basis = [unpack_gf2(word, n) for word in _rref_gf2(pack_gf2(row) for row in rows)]
    else:
        basis = _rref_table(field, rows, n)
    return Subspace(field, n, basis)


def zero_subspace(field, n):
    return Subspace(field, n, ())


def full_space(field, n):
    return Subspace(field, n, [[1 if i == j else 0 for j in range(n)] for i in range(n)])


def coordinate_subspace(field, n, indices):
    """Span of the standard basis vectors e_i, i in `indices` (0-based)."""
    return span(field, n, [[1 if j == i else 0 for j in range(n)] for i in indices])


def _check_same_ambient(u, w):
    if u.field != w.field or u.n != w.n:
        raise DimensionMismatchError(
            "subspaces live in different ambient spaces: F_{}^{} vs F_{}^{}".format(
                u.field.q, u.n, w.field.q, w.n
            )
        )


def subspace_sum(u, w):
    _check_same_ambient(u, w)
    if u.is_zero:
        return w
    if w.is_zero:
        return u
    return span(u.field, u.n, u.basis + w.basis)


def intersect(u, w):
    """
    Zassenhaus: echelonize [u | u] over [w | 0]; the rows whose left half
    vanishes span u ∩ w in their right half.
    """
    _check_same_ambient(u, w)
    if u.is_zero or w.is_zero:
        return zero_subspace(u.field, u.n)
    if u == w:
        return u
    n = u.n
    stacked = [row + row for row in u.basis] + [row + (0,) * n for row in w.basis]
    if u.field.q == 2:
        reduced = [unpack_gf2(word, 2 * n) for word in _rref_gf2(pack_gf2(row) for row in stacked)]
    else:
        reduced = _rref_table(u.field, stacked, 2 * n)
    meet = [row[n:] for row in reduced if not any(row[:n])]
    return span(u.field, n, meet)


def contains_vector(w, vector):
    if w.field.q == 2:
        word = pack_gf2(vector)
        for row, lead in zip(w.gf2_rows, w.pivots):
            if word >> (w.n - 1 - lead) & 1:
                word ^= row
        return word == 0
    return span(w.field, w.n, w.basis + (tuple(vector),)).dim == w.dim


def is_subspace_of(u, w):
    _check_same_ambient(u, w)
    return u.dim <= w.dim and all(contains_vector(w, row) for row in u.basis)


def is_complement(u, w):
    """u ⊕ w = V."""
    return u.dim + w.dim == u.n and intersect(u, w).is_zero


def _image_gf2(g, w):
    columns = g.gf2_columns
    n = w.n
    images = []
    for word in w.gf2_rows:
        out = 0
        for j in range(n):
            if word >> (n - 1 - j) & 1:
                out ^= columns[j]
        images.append(out)
    return Subspace(w.field, n, [unpack_gf2(word, n) for word in _rref_gf2(images)])


@functools.lru_cache(maxsize=1 << 18)
def image(g, w):
    """g·W = {g w : w in W} for invertible g acting on column vectors."""
    if g.field != w.field or g.n != w.n:
        raise DimensionMismatchError("matrix and subspace live over different ambient spaces")
    if not g.is_invertible:
        raise NotInvertibleError("image under a singular matrix: {!r}".format(g))
    if w.is_zero or w.is_full:
        return w
    if w.field.q == 2:
        return _image_gf2(g, w)
    return span(w.field, w.n, [apply(g, row) for row in w.basis])


def gaussian_binomial(n, k, q):
    """Number of k-dimensional subspaces of F_q^n."""
    if k < 0 or k > n:
        return 0
    numerator = 1
    denominator = 1
    for i in range(k):
        numerator *= q ** (n - i) - 1
        denominator *= q ** (i + 1) - 1
    return numerator // denominator


@functools.lru_cache(maxsize=64)
def enumerate_subspaces(field, n, cap):
    """
    Every subspace of F_q^n, generated directly in reduced echelon form
    (pivot set, then free entries) and returned in canonical order.
    """
    if field.q ** n > cap:
        raise EnumerationTooLargeError(
            "enumeration too large: q^n = {}^{} exceeds the cap {}".format(field.q, n, cap)
        )
    subspaces = []
    for k in range(n + 1):
        for pivots in itertools.combinations(range(n), k):
            free = [
                (i, j)
                for i, p in enumerate(pivots)
                for j in range(p + 1, n)
                if j not in pivots
            ]
            for values in itertools.product(range(field.q), repeat=len(free)):
                rows = [[0] * n for _ in range(k)]
                for i, p in enumerate(pivots):
                    rows[i][p] = 1
                for (i, j), v in zip(free, values):
                    rows[i][j] = v
                subspaces.append(Subspace(field, n, rows))
    subspaces.sort()
    LOG.debug("Enumerated {} subspaces of F_{}^{}".format(len(subspaces), field.q, n))
    return tuple(subspaces)
