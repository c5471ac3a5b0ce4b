import functools
import logging

import attr
import galois
import numpy as np

from utils.errors import UnsupportedFieldError

LOG = logging.getLogger(__name__)

# order -> (characteristic, extension degree)
SUPPORTED_ORDERS = {2: (2, 1), 3: (3, 1), 4: (2, 2), 5: (5, 1), 7: (7, 1), 8: (2, 3), 9: (3, 2)}

# Fixed so that element codes, and therefore canonical forms, never change.
IRREDUCIBLE_POLYNOMIALS = {4: "x^2 + x + 1", 8: "x^3 + x + 1", 9: "x^2 + 1"}


def _frozen(array):
    array = np.ascontiguousarray(array, dtype=np.int64)
    array.setflags(write=False)
    return array


@attr.s(frozen=True, repr=False)
class FieldSpec:
    """
    A small finite field F_q given by total operation tables over the element
    codes 0..q-1. Code 0 is the additive identity and code 1 the multiplicative
    identity. For q = p^e the code of a_0 + a_1 t + ... + a_{e-1} t^{e-1} is
    a_0 + a_1 p + ... + a_{e-1} p^{e-1}, where t is a root of the fixed
    irreducible polynomial.

    The numpy tables are what gets checked and exported; the nested tuples
    are the same data in the shape the row-reduction loops index fastest.
    """

    q = attr.ib()
    p = attr.ib(eq=False)
    e = attr.ib(eq=False)
    polynomial = attr.ib(eq=False)
    add_table = attr.ib(eq=False, converter=_frozen)
    mul_table = attr.ib(eq=False, converter=_frozen)
    inv_table = attr.ib(eq=False, converter=_frozen)
    neg_table = attr.ib(eq=False, converter=_frozen)

    add = attr.ib(init=False, eq=False)
    mul = attr.ib(init=False, eq=False)
    inv = attr.ib(init=False, eq=False)
    neg = attr.ib(init=False, eq=False)

    def __attrs_post_init__(self):
        object.__setattr__(self, "add", tuple(tuple(int(v) for v in row) for row in self.add_table))
        object.__setattr__(self, "mul", tuple(tuple(int(v) for v in row) for row in self.mul_table))
        object.__setattr__(self, "inv", tuple(int(v) for v in self.inv_table))
        object.__setattr__(self, "neg", tuple(int(v) for v in self.neg_table))

    def __repr__(self):
        return "FieldSpec(q={})".format(self.q)

    @property
    def elements(self):
        return range(self.q)

    def sub(self, a, b):
        return self.add[a][self.neg[b]]

    @functools.cached_property
    def primitive_element(self):
        """Smallest code whose powers run through every nonzero element."""
        for candidate in range(1, self.q):
            seen = set()
            x = 1
            for _ in range(self.q - 1):
                x = self.mul[x][candidate]
                seen.add(x)
            if len(seen) == self.q - 1:
                return candidate
        raise AssertionError("F_{} has no primitive element".format(self.q))

    @property
    def additive_basis(self):
        """Codes of 1, t, ..., t^(e-1); they generate (F_q, +) over F_p."""
        return tuple(self.p ** k for k in range(self.e))


@functools.lru_cache(maxsize=None)
def field_make(q):
    if q not in SUPPORTED_ORDERS:
        raise UnsupportedFieldError(
            "unsupported field: q={} (supported orders: {})".format(
                q, ", ".join(str(o) for o in sorted(SUPPORTED_ORDERS))
            )
        )
    p, e = SUPPORTED_ORDERS[q]
    if e == 1:
        gf = galois.GF(q)
        polynomial = "x"
    else:
        polynomial = IRREDUCIBLE_POLYNOMIALS[q]
        gf = galois.GF(q, irreducible_poly=polynomial)

    x = gf.elements
    add_table = (x[:, np.newaxis] + x[np.newaxis, :]).view(np.ndarray)
    mul_table = (x[:, np.newaxis] * x[np.newaxis, :]).view(np.ndarray)
    neg_table = (-x).view(np.ndarray)
    inv_table = np.zeros(q, dtype=np.int64)
    inv_table[1:] = (x[1:] ** -1).view(np.ndarray)

    field = FieldSpec(
        q=q,
        p=p,
        e=e,
        polynomial=polynomial,
        add_table=add_table,
        mul_table=mul_table,
        inv_table=inv_table,
        neg_table=neg_table,
    )
    LOG.debug("Built F_{} (p={}, e={}, polynomial {})".format(q, p, e, polynomial))
    return field


def check_field_axioms(field):
    """Exhaustive check of the field axioms on all pairs and triples of codes."""
    a = np.arange(field.q)
    add, mul = field.add_table, field.mul_table
    x, y, z = np.meshgrid(a, a, a, indexing="ij")

    checks = [
        np.array_equal(add, add.T),
        np.array_equal(mul, mul.T),
        np.array_equal(add[0], a),
        np.array_equal(mul[1], a),
        np.all(add[x, add[y, z]] == add[add[x, y], z]),
        np.all(mul[x, mul[y, z]] == mul[mul[x, y], z]),
        np.all(mul[x, add[y, z]] == add[mul[x, y], mul[x, z]]),
        np.all(add[a, field.neg_table] == 0),
        np.all(mul[a[1:], field.inv_table[1:]] == 1),
    ]
    return bool(all(checks))
