import functools
import itertools

import attr

from algebra.subspace import image, is_complement, is_subspace_of
from utils.errors import InvalidFlagError


def _as_tuple(members):
    return tuple(members)


@functools.total_ordering
@attr.s(frozen=True, repr=False, order=False)
class Flag:
    """
    A strictly increasing chain V_1 < ... < V_k of proper nonzero subspaces,
    k >= 1: a simplex of the building. Ordered by type, then members.
    """

    members = attr.ib(converter=_as_tuple)

    @members.validator
    def _check_chain(self, attribute, members):
        if not members:
            raise InvalidFlagError("a flag needs at least one member")
        for w in members:
            if w.is_zero or w.is_full:
                raise InvalidFlagError("flag members must be proper nonzero subspaces")
        for lower, upper in zip(members, members[1:]):
            if lower.dim >= upper.dim or not is_subspace_of(lower, upper):
                raise InvalidFlagError("flag members must form a strictly increasing chain")

    def __repr__(self):
        return "Flag(type={})".format(self.type)

    def __lt__(self, other):
        return self.sort_key < other.sort_key

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    @property
    def type(self):
        return tuple(w.dim for w in self.members)

    @property
    def field(self):
        return self.members[0].field

    @property
    def n(self):
        return self.members[0].n

    @property
    def sort_key(self):
        return (self.type, tuple(w.basis for w in self.members))

    def is_face_of(self, other):
        return set(self.members) <= set(other.members)


def faces(flag):
    """All 2^k - 1 nonempty subchains, in canonical order."""
    members = flag.members
    result = []
    for size in range(1, len(members) + 1):
        for chosen in itertools.combinations(members, size):
            result.append(Flag(chosen))
    return sorted(result)


def are_opposite(f, g):
    """Equal length k and V_i ⊕ W_{k+1-i} = V for every i."""
    if len(f) != len(g):
        return False
    return all(is_complement(v, w) for v, w in zip(f.members, reversed(g.members)))


def translate_flag(g, flag):
    return Flag(image(g, w) for w in flag.members)


def fixes_flag(g, flag):
    return all(image(g, w) == w for w in flag.members)
