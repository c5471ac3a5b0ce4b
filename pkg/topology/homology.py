import logging

import attr

from topology.chains import order_chain_complex
from topology.smith import smith_normal_form
from utils.errors import VerificationFailure

LOG = logging.getLogger(__name__)


@attr.s(frozen=True)
class HomologyReport:
    """Reduced integral homology in degrees 0..top of a nonempty complex."""

    reduced_betti = attr.ib(converter=tuple)
    torsion = attr.ib(converter=lambda t: tuple(tuple(d) for d in t))
    euler_characteristic = attr.ib()
    simplex_counts = attr.ib(converter=tuple)

    @property
    def is_acyclic(self):
        return not any(self.reduced_betti) and not any(self.torsion)

    @property
    def top_degree(self):
        return len(self.reduced_betti) - 1


def reduced_homology(complex_):
    """
    b~_d = c_d - rank ∂_d - rank ∂_{d+1} with ∂_0 the augmentation; the
    torsion in degree d is the non-unit elementary divisors of ∂_{d+1}.
    The Euler characteristic is cross-checked against the Betti numbers.
    """
    chain_complex = order_chain_complex(complex_)
    smith = [smith_normal_form(b) for b in chain_complex.boundaries]
    ranks = [s.rank for s in smith] + [0]
    dims = chain_complex.dims
    top = chain_complex.top_degree

    betti = [dims[d] - ranks[d] - ranks[d + 1] for d in range(top + 1)]
    torsion = [smith[d + 1].torsion if d + 1 <= top else () for d in range(top + 1)]
    euler = sum((-1) ** d * c for d, c in enumerate(dims))
    from_betti = sum((-1) ** d * b for d, b in enumerate(betti))
    if euler - 1 != from_betti:
        raise VerificationFailure(
            "Euler characteristic mismatch",
            verdicts={"from_simplices": euler, "from_betti": from_betti + 1},
        )
    LOG.debug("Reduced homology: betti {} torsion {}".format(betti, torsion))
    return HomologyReport(
        reduced_betti=betti,
        torsion=torsion,
        euler_characteristic=euler,
        simplex_counts=dims,
    )
