import functools
import itertools
import logging
from collections import deque

import attr

from algebra.matrix import (
    Mat,
    diagonal,
    elementary,
    identity,
    mat_inv,
    mat_mul,
    permutation_matrix,
)
from algebra.subspace import contains_vector, span, zero_subspace
from utils.config import DEFAULT_AMBIENT_CAP, DEFAULT_CLOSURE_CAP
from utils.errors import (
    AmbientTooLargeError,
    DimensionMismatchError,
    IncompleteClosureError,
    NotInvertibleError,
    PreconditionError,
)

LOG = logging.getLogger(__name__)


def _as_tuple(generators):
    return tuple(generators)


@attr.s(frozen=True)
class GroupSpec:
    field = attr.ib()
    n = attr.ib()
    generators = attr.ib(converter=_as_tuple)
    name = attr.ib(default="H")

    @generators.validator
    def _check_generators(self, attribute, generators):
        if not generators:
            raise PreconditionError("a group needs at least one generator")
        for index, g in enumerate(generators):
            if g.field != self.field or g.n != self.n:
                raise DimensionMismatchError(
                    "generator {} of {} is not an {}x{} matrix over F_{}".format(
                        index, self.name, self.n, self.n, self.field.q
                    )
                )
            if not g.is_invertible:
                raise NotInvertibleError(
                    "generator {} of {} is not invertible".format(index, self.name)
                )


@attr.s(frozen=True, repr=False)
class GroupClosure:
    """
    The elements of a finite matrix group, identity first. `complete` is
    False when the element cap cut the enumeration short, in which case
    `elements` is only a prefix of the group.
    """

    field = attr.ib()
    n = attr.ib()
    elements = attr.ib(converter=_as_tuple)
    complete = attr.ib(default=True)
    given_generators = attr.ib(default=None, eq=False)

    def __repr__(self):
        return "GroupClosure(q={}, n={}, order={}, complete={})".format(
            self.field.q, self.n, self.order, self.complete
        )

    @property
    def order(self):
        return len(self.elements)

    @functools.cached_property
    def keys(self):
        return frozenset(g.key for g in self.elements)

    def __contains__(self, g):
        return g.key in self.keys

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def issubset(self, other):
        return self.keys <= other.keys

    @functools.cached_property
    def generators(self):
        if self.given_generators:
            return tuple(self.given_generators)
        return generating_subset(self.field, self.n, self.elements)


def gl_order(q, n):
    order = 1
    for i in range(n):
        order *= q ** n - q ** i
    return order


def satisfies_lagrange(group):
    return gl_order(group.field.q, group.n) % group.order == 0


def _bfs(elements, seen, generators, cap):
    """Extend `elements` in place by right multiplication; False if the cap was hit."""
    queue = deque(elements)
    while queue:
        x = queue.popleft()
        for g in generators:
            y = mat_mul(x, g)
            if y.key in seen:
                continue
            if len(elements) >= cap:
                return False
            seen.add(y.key)
            elements.append(y)
            queue.append(y)
    return True


def closure(spec, cap=DEFAULT_CLOSURE_CAP):
    """Breadth-first product closure: identity, then discovery order under generator order."""
    if cap < 1:
        raise PreconditionError("closure cap must be at least 1")
    one = identity(spec.field, spec.n)
    elements = [one]
    seen = {one.key}
    complete = _bfs(elements, seen, spec.generators, cap)
    LOG.debug(
        "Closure of {}: {} elements{}".format(
            spec.name, len(elements), "" if complete else " (truncated at cap)"
        )
    )
    return GroupClosure(spec.field, spec.n, elements, complete, given_generators=spec.generators)


def generating_subset(field, n, elements):
    """
    Greedy generating set: walk the elements in order and keep each one that
    the kept elements do not already generate.
    """
    one = identity(field, n)
    group = [one]
    seen = {one.key}
    generators = []
    for g in elements:
        if g.key in seen:
            continue
        generators.append(g)
        _bfs(group, seen, generators, float("inf"))
    return tuple(generators) or (one,)


def closure_from_elements(field, n, elements, generators=None):
    """Wrap an element list already known to be a complete subgroup."""
    elements = list(elements)
    one = identity(field, n)
    if not elements or elements[0].key != one.key:
        elements = [one] + [g for g in elements if g.key != one.key]
    return GroupClosure(field, n, elements, True, given_generators=generators)


def standard_gl_generators(field, n):
    """diag(w,1,...,1), I + E_12, the transposition (1 2) and the n-cycle."""
    omega = field.primitive_element
    generators = []
    if field.q > 2:
        generators.append(diagonal(field, [omega] + [1] * (n - 1)))
    if n >= 2:
        generators.append(elementary(field, n, 0, 1, 1))
        generators.append(permutation_matrix(field, [1, 0] + list(range(2, n))))
    if n >= 3:
        generators.append(permutation_matrix(field, [(j + 1) % n for j in range(n)]))
    return tuple(Mat(field, g.entries, invertible=True) for g in generators) or (
        identity(field, n),
    )


@functools.lru_cache(maxsize=16)
def enumerate_gl(field, n, cap=DEFAULT_AMBIENT_CAP):
    """
    Every invertible n x n matrix, in row-major lexicographic order: each row
    ranges over the vectors outside the span of the rows above it, which is
    the scan of all q^(n^2) matrices with the singular ones filtered out.
    """
    if field.q ** (n * n) > cap:
        raise AmbientTooLargeError(
            "ambient group too large: {}^{} matrices exceed the scan cap {}".format(
                field.q, n * n, cap
            )
        )
    vectors = list(itertools.product(range(field.q), repeat=n))
    elements = []

    def extend(rows, current):
        if len(rows) == n:
            elements.append(Mat(field, rows, invertible=True))
            return
        for v in vectors:
            if not contains_vector(current, v):
                extend(rows + [v], span(field, n, current.basis + (v,)))

    extend([], zero_subspace(field, n))
    one = identity(field, n)
    elements.sort(key=lambda g: g.key != one.key)
    LOG.debug("GL_{}(F_{}) has {} elements".format(n, field.q, len(elements)))
    return GroupClosure(field, n, elements, True, given_generators=standard_gl_generators(field, n))


def is_normal_in(sub, over):
    """Every generator of `over` conjugates `sub` into itself."""
    if not (sub.complete and over.complete):
        raise IncompleteClosureError("normality needs complete closures")
    if not sub.issubset(over):
        raise PreconditionError("the subgroup is not contained in the overgroup")
    for g in over.generators:
        g_inverse = mat_inv(g)
        for x in sub.elements:
            if mat_mul(mat_mul(g, x), g_inverse) not in sub:
                return False
    return True
