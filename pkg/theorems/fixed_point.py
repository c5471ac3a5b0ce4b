import logging

import attr

from building.stabilizers import stabilizer_index
from theorems.common import ambient_for, resolve_config
from utils.errors import IncompleteClosureError

LOG = logging.getLogger(__name__)


@attr.s(frozen=True)
class FixedPointVerdict:
    is_fixed_point_form = attr.ib()
    H = attr.ib()
    counterexample = attr.ib(default=None)


def check_fixed_point_form(complex_, ambient=None, config=None):
    """
    Y is some X^H exactly when it is X^H for H the intersection of the
    parabolics of its simplices; otherwise report the first flag of X^H
    missing from Y.
    """
    config = resolve_config(config)
    ambient = ambient_for(complex_.field, complex_.n, config, ambient)
    if not ambient.complete:
        raise IncompleteClosureError("the fixed-point test needs a complete ambient group")
    index = stabilizer_index(ambient)
    mask = index.pointwise_mask(complex_.members)
    h = index.group(mask)
    recovered = index.fixed_complex(mask, config.enumeration_cap)
    missing = next((f for f in recovered.ordered if f not in complex_), None)
    LOG.debug(
        "Fixed-point form: |H|={} recovered {} of {} simplices".format(
            h.order, len(recovered), len(complex_)
        )
    )
    return FixedPointVerdict(missing is None and recovered == complex_, h, missing)
