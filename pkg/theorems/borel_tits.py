import logging

import attr

from algebra.matrix import is_unipotent, mat_inv, mat_mul
from building.stabilizers import stabilizer_setwise
from grouplat.closure import closure, closure_from_elements
from theorems.common import ambient_for, fixed_complex, fixed_complex_of_closure, resolve_config
from theorems.reducibility import contractibility_verdict, is_g_cr
from utils.errors import PreconditionError, VerificationFailure

LOG = logging.getLogger(__name__)


@attr.s(frozen=True)
class BorelTitsReport:
    U = attr.ib()
    normalizer = attr.ib()
    complex_normalizer = attr.ib()
    fixed_flag = attr.ib()
    checks = attr.ib()


def normalizer(group, ambient):
    """{g : g U g^-1 = U}; for a finite group, mapping generators into U suffices."""
    kept = []
    for g in ambient.elements:
        g_inverse = mat_inv(g)
        if all(mat_mul(mat_mul(g, u), g_inverse) in group for u in group.generators):
            kept.append(g)
    return closure_from_elements(ambient.field, ambient.n, kept)


def borel_tits_demo(spec, config=None, ambient=None):
    """
    A nontrivial unipotent U is not G-cr, so X^U is contractible and the
    normalizer N_G(U), which lies in N_G(X^U), fixes a flag: it sits in a
    proper parabolic subgroup.
    """
    config = resolve_config(config)
    u = closure(spec, config.closure_cap)
    if u.order <= 1:
        raise PreconditionError("{} is trivial".format(spec.name))
    if not all(is_unipotent(g) for g in u.elements):
        raise PreconditionError("{} contains a non-unipotent element".format(spec.name))
    ambient = ambient_for(spec.field, spec.n, config, ambient)

    _, y = fixed_complex(spec, config)
    n_u = normalizer(u, ambient)
    n_y = stabilizer_setwise(y, ambient)
    fixed = fixed_complex_of_closure(n_u, config, name="N_G(U)")
    flag = fixed.maximal_flags[0] if not fixed.is_empty else None
    checks = {
        "u_not_g_cr": not is_g_cr(spec, config),
        "x_u_contractible": contractibility_verdict(y).contractible,
        "normalizer_in_complex_normalizer": n_u.issubset(n_y),
        "normalizer_fixes_flag": flag is not None,
    }
    LOG.debug("Borel-Tits for {}: |N_G(U)|={} checks {}".format(spec.name, n_u.order, checks))
    if not all(checks.values()):
        raise VerificationFailure(
            "Borel-Tits demonstration failed for {}".format(spec.name), checks
        )
    return BorelTitsReport(
        U=u, normalizer=n_u, complex_normalizer=n_y, fixed_flag=flag, checks=checks
    )
