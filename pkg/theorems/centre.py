import logging

import attr

from building.flags import fixes_flag
from building.stabilizers import stabilizer_index, stabilizer_setwise, stabilizes_setwise
from grouplat.closure import closure, is_normal_in
from theorems.common import ambient_for, fixed_complex, resolve_config
from theorems.reducibility import is_contractible
from utils.errors import PreconditionError, VerificationFailure

LOG = logging.getLogger(__name__)


@attr.s(frozen=True)
class CentreReport:
    H = attr.ib()
    Y = attr.ib(repr=False)
    M = attr.ib()
    K = attr.ib()
    XK = attr.ib(repr=False)
    centre = attr.ib()
    checks = attr.ib()


def find_centre(spec, config=None, ambient=None):
    """
    Follow the proof: M is the intersection of the parabolics of Y = X^H,
    so X^M = X^H; K = N_G(Y) normalizes M; X^K is nonempty and inside Y,
    and any of its simplices is fixed by K. Every step is checked.
    """
    config = resolve_config(config)
    _, y = fixed_complex(spec, config)
    if not is_contractible(y):
        raise PreconditionError("X^H is not contractible: Y is X-cr; no centre needed")
    ambient = ambient_for(spec.field, spec.n, config, ambient)

    index = stabilizer_index(ambient)
    m_mask = index.pointwise_mask(y.members)
    m = index.group(m_mask)
    k = stabilizer_setwise(y, ambient)
    h = closure(spec, config.closure_cap)
    x_m = index.fixed_complex(m_mask, config.enumeration_cap)
    x_k = index.fixed_complex(index.mask_of(k), config.enumeration_cap)

    checks = {
        "h_in_m": h.complete and h.issubset(m),
        "x_m_equals_y": x_m == y,
        "m_in_k": m.issubset(k),
        "m_normal_in_k": m.issubset(k) and is_normal_in(m, k),
        "x_k_nonempty": not x_k.is_empty,
        "x_k_in_y": x_k.issubset(y),
    }
    centre = x_k.maximal_flags[0] if not x_k.is_empty else None
    checks["centre_fixed_by_k"] = centre is not None and all(
        fixes_flag(g, centre) for g in k.elements
    )
    LOG.debug("Centre of {}: |M|={} |K|={} checks {}".format(spec.name, m.order, k.order, checks))
    if not all(checks.values()):
        raise VerificationFailure("centre construction failed for {}".format(spec.name), checks)
    return CentreReport(H=spec, Y=y, M=m, K=k, XK=x_k, centre=centre, checks=checks)


@attr.s(frozen=True)
class NormalOvergroupVerdict:
    k_in_normalizer = attr.ib()
    fixes_centre = attr.ib()
    centre = attr.ib()

    @property
    def holds(self):
        return self.k_in_normalizer and self.fixes_centre


def check_normal_overgroup(spec, over, config=None, ambient=None):
    """
    H normal in K with X^H contractible: K permutes X^H, so it lies in
    N_G(X^H) and fixes the centre found for X^H.
    """
    config = resolve_config(config)
    h = closure(spec, config.closure_cap)
    k = closure(over, config.closure_cap)
    if not h.issubset(k) or not is_normal_in(h, k):
        raise PreconditionError("{} is not normal in {}".format(spec.name, over.name))
    report = find_centre(spec, config, ambient)
    return NormalOvergroupVerdict(
        k_in_normalizer=all(stabilizes_setwise(g, report.Y) for g in over.generators),
        fixes_centre=all(fixes_flag(g, report.centre) for g in over.generators),
        centre=report.centre,
    )
