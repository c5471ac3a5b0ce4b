import attr

from building.flags import Flag, fixes_flag
from grouplat.closure import closure, is_normal_in
from grouplat.lattice import invariant_lattice, is_semisimple, loewy_series
from theorems.common import resolve_config
from utils.errors import PreconditionError


@attr.s(frozen=True)
class LoewyReport:
    socle_flag = attr.ib()
    radical_flag = attr.ib()
    k_stable = attr.ib()
    socle_series = attr.ib(converter=tuple, repr=False)
    radical_series = attr.ib(converter=tuple, repr=False)


def _proper_flag(series):
    return Flag(sorted(w for w in series if not (w.is_zero or w.is_full)))


def loewy_centres(spec, over, config=None):
    """
    The socle and radical series of V as an H-module, without 0 and V, are
    flags; every group normalizing H fixes both.
    """
    config = resolve_config(config)
    lattice = invariant_lattice(spec, config.enumeration_cap)
    if is_semisimple(lattice):
        raise PreconditionError(
            "Loewy flags improper: V is a semisimple module for {}".format(spec.name)
        )
    h = closure(spec, config.closure_cap)
    k = closure(over, config.closure_cap)
    if not h.issubset(k) or not is_normal_in(h, k):
        raise PreconditionError("{} does not normalize {}".format(over.name, spec.name))

    socle, radical = loewy_series(lattice)
    socle_flag = _proper_flag(socle)
    radical_flag = _proper_flag(radical)
    k_stable = all(
        fixes_flag(g, socle_flag) and fixes_flag(g, radical_flag) for g in over.generators
    )
    return LoewyReport(socle_flag, radical_flag, k_stable, socle, radical)
