import itertools
import logging

import attr

from building.stabilizers import stabilizer_index
from theorems.common import ambient_for, resolve_config
from utils.errors import EnumerationTooLargeError, IncompleteClosureError

LOG = logging.getLogger(__name__)


@attr.s(frozen=True)
class ConvexityVerdict:
    """`witnesses` are the flags whose common stabilizer fixes `violation`, a flag outside Y."""

    holds = attr.ib()
    arity = attr.ib(default=2)
    witnesses = attr.ib(default=None)
    violation = attr.ib(default=None)

    def __bool__(self):
        return bool(self.holds)


def convex_hull(f, g, ambient, config=None):
    """Smallest convex subcomplex containing f and g: X^{P ∩ P'}."""
    config = resolve_config(config)
    index = stabilizer_index(ambient)
    mask = index.pointwise_mask(f.members) & index.pointwise_mask(g.members)
    return index.fixed_complex(mask, config.enumeration_cap)


def check_intersection_condition(complex_, ambient, arity, config=None):
    """
    For every `arity`-tuple of flags of Y, each flag fixed by their common
    pointwise stabilizer lies in Y. Stabilizers shrink as flags grow, so
    tuples of inclusion-maximal flags decide the condition; tuples with
    repetition cover every smaller arity.
    """
    config = resolve_config(config)
    if not ambient.complete:
        raise IncompleteClosureError("the intersection condition needs a complete ambient group")
    if complex_.is_empty:
        return ConvexityVerdict(True, arity)
    index = stabilizer_index(ambient)
    if len(complex_) == len(index.building(config.enumeration_cap)):
        return ConvexityVerdict(True, arity)

    maximal = complex_.maximal_flags
    tuples = list(itertools.combinations_with_replacement(maximal, arity))
    if len(tuples) > config.convexity_pair_cap:
        raise EnumerationTooLargeError(
            "{} flag tuples exceed the convexity cap {}".format(
                len(tuples), config.convexity_pair_cap
            )
        )
    parabolics = {flag: index.pointwise_mask(flag.members) for flag in maximal}
    seen = set()
    for chosen in tuples:
        common = index.full
        for flag in chosen:
            common &= parabolics[flag]
        if common in seen:
            continue
        seen.add(common)
        for flag in index.fixed_complex(common, config.enumeration_cap).ordered:
            if flag not in complex_:
                LOG.debug("Intersection condition fails: {!r} outside Y".format(flag))
                return ConvexityVerdict(False, arity, witnesses=chosen, violation=flag)
    return ConvexityVerdict(True, arity)


def check_convex(complex_, ambient=None, config=None):
    """Convexity as the closure condition on pairs of flags."""
    if ambient is None:
        ambient = ambient_for(complex_.field, complex_.n, config)
    return check_intersection_condition(complex_, ambient, 2, config)
