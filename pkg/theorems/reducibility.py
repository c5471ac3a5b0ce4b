import logging
from collections import defaultdict

import attr

from building.complex import fixed_point_subcomplex
from building.flags import are_opposite
from grouplat.lattice import is_semisimple
from theorems.common import fixed_complex
from topology.homology import reduced_homology
from utils.errors import OracleDisagreementError, VerificationFailure

LOG = logging.getLogger(__name__)


@attr.s(frozen=True)
class CrVerdict:
    """Exactly one of `witnesses` (flag -> chosen opposite) and `failure` is set."""

    is_x_cr = attr.ib()
    witnesses = attr.ib(default=None)
    failure = attr.ib(default=None)

    def __attrs_post_init__(self):
        if self.is_x_cr and (self.witnesses is None or self.failure is not None):
            raise VerificationFailure("an X-cr verdict carries witnesses and no failure")
        if not self.is_x_cr and (self.failure is None or self.witnesses is not None):
            raise VerificationFailure("a non-X-cr verdict carries a failure and no witnesses")


def _opposite_type(flag_type, n):
    return tuple(n - d for d in reversed(flag_type))


def x_cr(complex_):
    """
    Every simplex has an opposite inside the complex; the witness is the
    first opposite in canonical flag order. The empty complex is X-cr.
    """
    by_type = defaultdict(list)
    for flag in complex_.ordered:
        by_type[flag.type].append(flag)
    witnesses = {}
    for flag in complex_.ordered:
        candidates = by_type.get(_opposite_type(flag.type, complex_.n), ())
        opposite = next((g for g in candidates if are_opposite(flag, g)), None)
        if opposite is None:
            return CrVerdict(False, failure=flag)
        witnesses[flag] = opposite
    return CrVerdict(True, witnesses=witnesses)


@attr.s(frozen=True)
class ContractibilityVerdict:
    contractible = attr.ib()
    homology = attr.ib(default=None)


def contractibility_verdict(complex_, homology=None):
    """
    The decision comes from the opposition test; acyclic integral homology
    must agree with it. The empty complex is not contractible. A homology
    report already computed for this complex may be passed in.
    """
    if complex_.is_empty:
        return ContractibilityVerdict(False)
    decision = not x_cr(complex_).is_x_cr
    if homology is None:
        homology = reduced_homology(complex_)
    if decision != homology.is_acyclic:
        raise OracleDisagreementError(
            "opposition test and homology disagree on contractibility",
            verdicts={
                "contractible_by_opposition": decision,
                "acyclic": homology.is_acyclic,
                "reduced_betti": list(homology.reduced_betti),
            },
        )
    return ContractibilityVerdict(decision, homology)


def is_contractible(complex_):
    return contractibility_verdict(complex_).contractible


@attr.s(frozen=True)
class GcrVerdict:
    """The three independent G-cr tests and what they were computed from."""

    by_building = attr.ib()
    by_contractibility = attr.ib()
    by_semisimplicity = attr.ib()
    lattice = attr.ib(eq=False, repr=False)
    complex = attr.ib(eq=False, repr=False)
    contractibility = attr.ib(eq=False, repr=False)

    @property
    def agree(self):
        return self.by_building == self.by_contractibility == self.by_semisimplicity

    @property
    def is_g_cr(self):
        return self.by_building

    @property
    def is_g_ir(self):
        return self.complex.is_empty

    def as_dict(self):
        return {
            "building": self.by_building,
            "contractibility": self.by_contractibility,
            "semisimplicity": self.by_semisimplicity,
        }


def g_cr_verdicts(spec, config=None, lattice=None, homology=None):
    if lattice is None:
        lattice, complex_ = fixed_complex(spec, config)
    else:
        complex_ = fixed_point_subcomplex(lattice)
    by_building = complex_.is_empty or x_cr(complex_).is_x_cr
    contractibility = contractibility_verdict(complex_, homology)
    by_semisimplicity = is_semisimple(lattice)
    verdict = GcrVerdict(
        by_building=by_building,
        by_contractibility=not contractibility.contractible,
        by_semisimplicity=by_semisimplicity,
        lattice=lattice,
        complex=complex_,
        contractibility=contractibility,
    )
    LOG.debug("G-cr verdicts for {}: {}".format(spec.name, verdict.as_dict()))
    return verdict


def is_g_cr(spec, config=None):
    """Building test, contractibility test and semisimplicity test, which must coincide."""
    verdict = g_cr_verdicts(spec, config)
    if not verdict.agree:
        raise OracleDisagreementError(
            "G-cr tests disagree for {}".format(spec.name), verdicts=verdict.as_dict()
        )
    return verdict.is_g_cr
