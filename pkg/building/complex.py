import functools
import itertools
import logging
from collections import Counter, defaultdict

import attr

from algebra.matrix import diagonal
from algebra.subspace import (
    coordinate_subspace,
    enumerate_subspaces,
    is_subspace_of,
    span,
    subspace_sum,
)
from building.flags import Flag, faces, translate_flag
from grouplat.closure import GroupSpec
from grouplat.lattice import invariant_lattice
from utils.config import DEFAULT_ENUMERATION_CAP
from utils.errors import DimensionMismatchError, InvalidFlagError, InvalidFrameError

LOG = logging.getLogger(__name__)


def _as_frozenset(flags):
    return frozenset(flags)


@attr.s(frozen=True, repr=False)
class SubComplex:
    """A face-closed set of flags of F_q^n; may be empty."""

    field = attr.ib()
    n = attr.ib()
    flags = attr.ib(converter=_as_frozenset)

    @flags.validator
    def _check_face_closed(self, attribute, flags):
        for flag in flags:
            if flag.n != self.n or flag.field != self.field:
                raise DimensionMismatchError("flag from a different ambient space")
            if len(flag) > 1:
                for face in faces(flag):
                    if face not in flags:
                        raise InvalidFlagError(
                            "not face-closed: {!r} is missing a face".format(flag)
                        )

    def __repr__(self):
        return "SubComplex(q={}, n={}, {} simplices)".format(self.field.q, self.n, len(self.flags))

    def __len__(self):
        return len(self.flags)

    def __iter__(self):
        return iter(self.ordered)

    def __contains__(self, flag):
        return flag in self.flags

    @property
    def is_empty(self):
        return not self.flags

    @functools.cached_property
    def ordered(self):
        return tuple(sorted(self.flags))

    @functools.cached_property
    def members(self):
        """The distinct subspaces occurring in some flag, i.e. the vertices."""
        return tuple(sorted({w for flag in self.flags for w in flag.members}))

    @property
    def vertices(self):
        return tuple(f for f in self.ordered if len(f) == 1)

    def counts_by_type(self):
        counts = Counter(flag.type for flag in self.flags)
        return dict(sorted(counts.items()))

    def counts_by_length(self):
        counts = Counter(len(flag) for flag in self.flags)
        return [counts.get(k, 0) for k in range(1, max(counts, default=0) + 1)]

    @functools.cached_property
    def maximal_flags(self):
        """Flags not properly contained in another flag of the complex."""
        longer = defaultdict(list)
        for flag in self.flags:
            longer[len(flag)].append(flag)
        result = []
        for flag in self.ordered:
            bigger = [g for k, gs in longer.items() if k > len(flag) for g in gs]
            if not any(flag.is_face_of(g) for g in bigger):
                result.append(flag)
        return tuple(result)

    @property
    def chambers(self):
        return tuple(f for f in self.ordered if len(f) == self.n - 1)

    def issubset(self, other):
        return self.flags <= other.flags


def empty_complex(field, n):
    return SubComplex(field, n, ())


def chains(field, n, nodes):
    """Every nonempty chain of proper nonzero subspaces drawn from `nodes`."""
    proper = sorted(w for w in set(nodes) if not (w.is_zero or w.is_full))
    above = {
        w: [u for u in proper if u.dim > w.dim and is_subspace_of(w, u)] for w in proper
    }
    result = []

    def extend(chain):
        result.append(Flag(chain))
        for u in above[chain[-1]]:
            extend(chain + [u])

    for w in proper:
        extend([w])
    return SubComplex(field, n, result)


def face_closure(field, n, flags):
    return SubComplex(field, n, {face for flag in flags for face in faces(flag)})


def is_subcomplex(flags):
    """The flag set contains every face of its members."""
    flags = set(flags)
    return all(face in flags for flag in flags for face in faces(flag))


def full_building(field, n, cap=DEFAULT_ENUMERATION_CAP):
    building = chains(field, n, enumerate_subspaces(field, n, cap))
    LOG.debug(
        "Building of GL_{}(F_{}): {} simplices".format(n, field.q, len(building))
    )
    return building


def fixed_point_subcomplex(lat):
    """Flags all of whose members are nodes of the lattice."""
    return chains(lat.field, lat.n, lat.nodes)


def translate(g, complex_):
    return SubComplex(complex_.field, complex_.n, (translate_flag(g, f) for f in complex_.flags))


def _as_line_tuple(lines):
    return tuple(lines)


@attr.s(frozen=True, repr=False)
class Frame:
    """n lines whose join is V, i.e. a decomposition of V into lines."""

    lines = attr.ib(converter=_as_line_tuple)

    @lines.validator
    def _check_frame(self, attribute, lines):
        if not lines:
            raise InvalidFrameError("a frame needs at least one line")
        n = lines[0].n
        if len(lines) != n or any(w.dim != 1 or w.n != n for w in lines):
            raise InvalidFrameError("a frame of F_q^{} consists of {} lines".format(n, n))
        join = lines[0]
        for w in lines[1:]:
            join = subspace_sum(join, w)
        if not join.is_full:
            raise InvalidFrameError("the frame lines do not span V")

    def __repr__(self):
        return "Frame({} lines)".format(len(self.lines))

    @property
    def field(self):
        return self.lines[0].field

    @property
    def n(self):
        return self.lines[0].n

    @classmethod
    def standard(cls, field, n):
        return cls(coordinate_subspace(field, n, [i]) for i in range(n))


def apartment_from_frame(frame):
    """Flags whose members are sums of frame lines: the Coxeter complex of S_n."""
    if not isinstance(frame, Frame):
        raise InvalidFrameError("expected a Frame")
    field, n = frame.field, frame.n
    subspaces = set()
    for size in range(1, n):
        for chosen in itertools.combinations(frame.lines, size):
            subspaces.add(span(field, n, [row for line in chosen for row in line.basis]))
    return chains(field, n, subspaces)


def torus_apartment(field, n, cap=DEFAULT_ENUMERATION_CAP):
    """X^T for the diagonal torus T; the standard apartment once q >= 3."""
    omega = field.primitive_element
    generators = [
        diagonal(field, [omega if i == j else 1 for j in range(n)]) for i in range(n)
    ]
    torus = GroupSpec(field, n, generators, name="diagonal torus")
    return fixed_point_subcomplex(invariant_lattice(torus, cap))


def panel_degrees(complex_):
    """
    For each panel (a chamber with one member removed) the number of chambers
    of the complex containing it, as a Counter degree -> number of panels.
    """
    containing = Counter()
    for chamber in complex_.chambers:
        members = chamber.members
        for i in range(len(members)):
            containing[members[:i] + members[i + 1:]] += 1
    return Counter(containing.values())


def is_thick(complex_):
    degrees = panel_degrees(complex_)
    return bool(degrees) and min(degrees) >= 3


def is_thin(complex_):
    degrees = panel_degrees(complex_)
    return bool(degrees) and set(degrees) == {2}
