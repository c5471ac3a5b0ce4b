from building.complex import fixed_point_subcomplex
from grouplat.closure import enumerate_gl
from grouplat.lattice import invariant_lattice, invariant_lattice_of_closure
from utils.config import Config


def resolve_config(config):
    return config if config is not None else Config()


def ambient_for(field, n, config=None, ambient=None):
    """The full GL_n(F_q) enumeration, reusing `ambient` when the caller has one."""
    if ambient is not None:
        return ambient
    config = resolve_config(config)
    return enumerate_gl(field, n, config.ambient_cap)


def fixed_complex(spec, config=None):
    """(invariant lattice, X^H) for a GroupSpec."""
    config = resolve_config(config)
    lattice = invariant_lattice(spec, config.enumeration_cap)
    return lattice, fixed_point_subcomplex(lattice)


def fixed_complex_of_closure(group, config=None, name="closure"):
    config = resolve_config(config)
    return fixed_point_subcomplex(invariant_lattice_of_closure(group, config.enumeration_cap, name))
