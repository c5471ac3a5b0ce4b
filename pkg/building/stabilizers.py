import functools
import logging

from algebra.subspace import enumerate_subspaces, image
from building.complex import chains
from building.flags import translate_flag
from grouplat.closure import closure_from_elements
from utils.config import DEFAULT_ENUMERATION_CAP
from utils.errors import IncompleteClosureError

LOG = logging.getLogger(__name__)

INDEX_CACHE_SIZE = 4
_indexes = {}


def _require_complete(ambient):
    if not ambient.complete:
        raise IncompleteClosureError("stabilizers need a complete ambient enumeration")


def _bitmask(indices, size):
    bits = bytearray((size + 7) // 8)
    for i in indices:
        bits[i >> 3] |= 1 << (i & 7)
    return int.from_bytes(bits, "little")


class StabilizerIndex:
    """
    Bitsets over the elements of a complete ambient group: bit i of
    `sends(w)[u]` is set when the i-th element carries W onto U. Each subspace
    is imaged once; stabilizers of complexes, and the complexes those fix,
    are then intersections of bitsets.
    """

    def __init__(self, ambient):
        _require_complete(ambient)
        self.ambient = ambient
        self.full = (1 << ambient.order) - 1
        self._sends = {}
        self._subspaces = {}
        self._buildings = {}

    @functools.cached_property
    def positions(self):
        return {g.key: i for i, g in enumerate(self.ambient.elements)}

    def sends(self, w):
        table = self._sends.get(w)
        if table is None:
            targets = {}
            for i, g in enumerate(self.ambient.elements):
                targets.setdefault(image(g, w), []).append(i)
            table = {u: _bitmask(indices, self.ambient.order) for u, indices in targets.items()}
            self._sends[w] = table
        return table

    def fixing(self, w):
        if w.is_zero or w.is_full:
            return self.full
        return self.sends(w).get(w, 0)

    def pointwise_mask(self, subspaces):
        mask = self.full
        for w in subspaces:
            mask &= self.fixing(w)
        return mask

    def permuting_mask(self, subspaces):
        """Elements carrying the set of subspaces onto itself."""
        targets = frozenset(subspaces)
        mask = self.full
        for w in targets:
            table = self.sends(w)
            onto = 0
            for u in targets:
                onto |= table.get(u, 0)
            mask &= onto
        return mask

    def mask_of(self, group):
        return _bitmask((self.positions[g.key] for g in group.elements), self.ambient.order)

    def elements(self, mask):
        """The selected elements, in ambient order."""
        elements = self.ambient.elements
        kept = []
        while mask:
            low = mask & -mask
            kept.append(elements[low.bit_length() - 1])
            mask ^= low
        return kept

    def group(self, mask):
        return closure_from_elements(self.ambient.field, self.ambient.n, self.elements(mask))

    def subspaces(self, cap=DEFAULT_ENUMERATION_CAP):
        if cap not in self._subspaces:
            self._subspaces[cap] = enumerate_subspaces(self.ambient.field, self.ambient.n, cap)
        return self._subspaces[cap]

    def fixed_complex(self, mask, cap=DEFAULT_ENUMERATION_CAP):
        """X^S for the set S of selected elements: chains of the subspaces they all fix."""
        nodes = [w for w in self.subspaces(cap) if mask & self.fixing(w) == mask]
        return chains(self.ambient.field, self.ambient.n, nodes)

    def building(self, cap=DEFAULT_ENUMERATION_CAP):
        """The whole building, fixed by the identity alone."""
        if cap not in self._buildings:
            self._buildings[cap] = self.fixed_complex(1, cap)
        return self._buildings[cap]


def stabilizer_index(ambient):
    """The index of `ambient`, built on first use and shared by later calls."""
    index = _indexes.get(id(ambient))
    if index is None or index.ambient is not ambient:
        if len(_indexes) >= INDEX_CACHE_SIZE:
            _indexes.clear()
        index = StabilizerIndex(ambient)
        _indexes[id(ambient)] = index
        LOG.debug("Stabilizer index for GL_{}(F_{})".format(ambient.n, ambient.field.q))
    return index


def stabilizer_pointwise(complex_, ambient):
    """
    Elements fixing every flag of the complex, i.e. the intersection of the
    parabolics of its simplices. Testing the distinct members is enough.
    The empty complex gives the whole ambient group.
    """
    index = stabilizer_index(ambient)
    members = complex_.members
    group = index.group(index.pointwise_mask(members))
    LOG.debug(
        "Pointwise stabilizer of {} members: {} of {} elements".format(
            len(members), group.order, ambient.order
        )
    )
    return group


def stabilizes_setwise(g, complex_):
    member_set = set(complex_.members)
    if not all(image(g, w) in member_set for w in complex_.members):
        return False
    return all(translate_flag(g, f) in complex_.flags for f in complex_.flags)


def stabilizer_setwise(complex_, ambient):
    """Elements g with g·Y = Y: a permutation of the members that carries flags to flags."""
    index = stabilizer_index(ambient)
    members = complex_.members
    candidates = index.elements(index.permuting_mask(members))
    if len(chains(ambient.field, ambient.n, members)) == len(complex_):
        # every chain of members is a flag, and permuting members preserves chains
        kept = candidates
    else:
        flags = complex_.flags
        kept = [g for g in candidates if all(translate_flag(g, f) in flags for f in flags)]
    LOG.debug(
        "Setwise stabilizer of a {}-simplex complex: {} of {} elements".format(
            len(complex_), len(kept), ambient.order
        )
    )
    return closure_from_elements(ambient.field, ambient.n, kept)
