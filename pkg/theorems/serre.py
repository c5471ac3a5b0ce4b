import attr

from grouplat.closure import closure, is_normal_in
from theorems.common import resolve_config
from theorems.reducibility import is_g_cr
from utils.errors import PreconditionError


@attr.s(frozen=True)
class SerreVerdict:
    """A normal subgroup of a G-cr group is G-cr; `holds` is False on a violation."""

    h_g_cr = attr.ib()
    n_g_cr = attr.ib()

    @property
    def holds(self):
        return self.n_g_cr or not self.h_g_cr


def verify_serre_question(normal, over, config=None):
    config = resolve_config(config)
    n_closure = closure(normal, config.closure_cap)
    h_closure = closure(over, config.closure_cap)
    if not n_closure.issubset(h_closure):
        raise PreconditionError("{} is not contained in {}".format(normal.name, over.name))
    if not is_normal_in(n_closure, h_closure):
        raise PreconditionError("{} is not normal in {}".format(normal.name, over.name))
    return SerreVerdict(h_g_cr=is_g_cr(over, config), n_g_cr=is_g_cr(normal, config))
