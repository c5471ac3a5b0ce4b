import functools
import logging

import attr

from algebra.subspace import (
    enumerate_subspaces,
    full_space,
    image,
    intersect,
    is_complement,
    is_subspace_of,
    subspace_sum,
    zero_subspace,
)
from utils.config import DEFAULT_ENUMERATION_CAP
from utils.errors import NotInLatticeError, VerificationFailure

LOG = logging.getLogger(__name__)


def _sorted_tuple(nodes):
    return tuple(sorted(nodes))


@attr.s(frozen=True, repr=False)
class InvLattice:
    """
    The H-invariant subspaces of F_q^n, 0 and V included, in canonical order.
    Containment is read off the canonical forms.
    """

    field = attr.ib()
    n = attr.ib()
    nodes = attr.ib(converter=_sorted_tuple)
    group = attr.ib(eq=False, default=None)

    def __repr__(self):
        return "InvLattice(q={}, n={}, {} nodes)".format(self.field.q, self.n, len(self.nodes))

    @functools.cached_property
    def node_set(self):
        return frozenset(self.nodes)

    def __contains__(self, w):
        return w in self.node_set

    def __len__(self):
        return len(self.nodes)

    @property
    def bottom(self):
        return zero_subspace(self.field, self.n)

    @property
    def top(self):
        return full_space(self.field, self.n)


def is_invariant(w, generators):
    return all(image(g, w) == w for g in generators)


def invariant_lattice(spec, cap=DEFAULT_ENUMERATION_CAP):
    """The subspaces fixed setwise by every generator of `spec`."""
    nodes = [
        w for w in enumerate_subspaces(spec.field, spec.n, cap) if is_invariant(w, spec.generators)
    ]
    LOG.debug("Invariant lattice of {}: {} nodes".format(spec.name, len(nodes)))
    return InvLattice(spec.field, spec.n, nodes, group=spec)


def has_invariant_complement(w, lat):
    """First node W' (canonical order) with W ⊕ W' = V, or None."""
    if w not in lat:
        raise NotInLatticeError("{!r} is not a node of the lattice".format(w))
    for candidate in lat.nodes:
        if candidate.dim == lat.n - w.dim and is_complement(w, candidate):
            return candidate
    return None


def is_semisimple(lat):
    """Every invariant subspace has an invariant complement."""
    return all(has_invariant_complement(w, lat) is not None for w in lat.nodes)


def _strictly_below(u, w):
    return u.dim < w.dim and is_subspace_of(u, w)


def _join(field, n, nodes):
    result = zero_subspace(field, n)
    for w in nodes:
        result = subspace_sum(result, w)
    return result


def _meet(field, n, nodes):
    result = full_space(field, n)
    for w in nodes:
        result = intersect(result, w)
    return result


def socle_series(lat):
    """
    0 = S_0 < S_1 < ... < S_r = V with S_{i+1} the join of the nodes that
    cover S_i inside the lattice.
    """
    series = [lat.bottom]
    while not series[-1].is_full:
        current = series[-1]
        above = [w for w in lat.nodes if _strictly_below(current, w)]
        covers = [w for w in above if not any(_strictly_below(u, w) for u in above)]
        series.append(_join(lat.field, lat.n, covers))
    return series


def radical_series(lat):
    """
    V = R_0 > R_1 > ... > R_s = 0 with R_{i+1} the meet of the nodes that
    R_i covers inside the lattice.
    """
    series = [lat.top]
    while not series[-1].is_zero:
        current = series[-1]
        below = [w for w in lat.nodes if _strictly_below(w, current)]
        covered = [w for w in below if not any(_strictly_below(w, u) for u in below)]
        series.append(_meet(lat.field, lat.n, covered))
    return series


def loewy_series(lat):
    """Socle and radical series together; their lengths always agree."""
    socle = socle_series(lat)
    radical = radical_series(lat)
    if len(socle) != len(radical):
        raise VerificationFailure(
            "socle and radical series have different lengths",
            verdicts={"socle_length": len(socle) - 1, "radical_length": len(radical) - 1},
        )
    return socle, radical


def invariant_lattice_of_closure(group, cap=DEFAULT_ENUMERATION_CAP, name="closure"):
    """Invariant lattice of an enumerated group, tested against every element."""
    nodes = [
        w for w in enumerate_subspaces(group.field, group.n, cap) if is_invariant(w, group.elements)
    ]
    LOG.debug(
        "Invariant lattice of {} ({} elements): {} nodes".format(name, group.order, len(nodes))
    )
    return InvLattice(group.field, group.n, nodes, group=group)
