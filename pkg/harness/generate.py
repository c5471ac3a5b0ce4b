import hashlib
import logging
import random

from algebra.matrix import (
    diagonal,
    elementary,
    identity,
    is_unipotent,
    jordan_block,
    permutation_matrix,
    random_invertible,
)
from enums.catalog_mode import CatalogMode
from grouplat.closure import GroupSpec, closure, enumerate_gl, is_normal_in, standard_gl_generators
from harness.catalog import Catalog, CatalogEntry
from theorems.common import resolve_config
from utils.errors import CatalogError

LOG = logging.getLogger(__name__)

DEFAULT_RANDOM_COUNT = 200


def subgroup_fingerprint(group):
    """Hash of the sorted element encodings: equal subgroups, equal fingerprints."""
    return hashlib.sha256(b"".join(sorted(group.keys))).hexdigest()


def _prefix(field, n):
    return "gl{}f{}".format(n, field.q)


def _unique(field, n, generators):
    kept, seen = [], set()
    for g in generators:
        if g.key not in seen:
            seen.add(g.key)
            kept.append(g)
    return kept or [identity(field, n)]


def _unipotent_generators(field, n):
    return [
        elementary(field, n, i, i + 1, c) for i in range(n - 1) for c in field.additive_basis
    ]


def _torus_generators(field, n):
    omega = field.primitive_element
    return [diagonal(field, [omega if j == i else 1 for j in range(n)]) for i in range(n)]


def named_subgroups(field, n):
    """(short name, generators) for the standard subgroups, in a fixed order."""
    torus = _torus_generators(field, n)
    unipotent = _unipotent_generators(field, n)
    permutations = []
    if n >= 2:
        permutations.append(permutation_matrix(field, [1, 0] + list(range(2, n))))
    if n >= 3:
        permutations.append(permutation_matrix(field, [(j + 1) % n for j in range(n)]))
    named = [
        ("identity", [identity(field, n)]),
        ("scalars", [diagonal(field, [field.primitive_element] * n)]),
        ("diagonal", torus),
        ("unipotent", unipotent),
        ("borel", torus + unipotent),
        ("monomial", torus + permutations),
    ]
    named.extend(("jordan-{}".format(k), [jordan_block(field, n, k)]) for k in range(2, n + 1))
    named.append(("gl", list(standard_gl_generators(field, n))))
    return [(name, _unique(field, n, gens)) for name, gens in named]


def _entry(spec, group, tags=()):
    tags = list(tags)
    if group.complete and group.order > 1 and all(is_unipotent(g) for g in group.elements):
        tags.append("unipotent")
    return CatalogEntry.from_spec(spec, tags=tags)


def discover_normal_cyclic(spec, group, limit=None):
    """Every nontrivial cyclic subgroup <x> normal in the group (or the first `limit`), as specs."""
    found, seen = [], set()
    for x in group.elements[1:]:
        cyclic = closure(GroupSpec(spec.field, spec.n, [x]))
        fingerprint = subgroup_fingerprint(cyclic)
        if fingerprint in seen:
            continue
        seen.add(fingerprint)
        if is_normal_in(cyclic, group):
            name = "{}-normal-{}".format(spec.name, len(found))
            found.append((GroupSpec(spec.field, spec.n, [x], name=name), cyclic))
            if limit is not None and len(found) >= limit:
                break
    return found


def _with_normal_pairs(specs, config, tags_of):
    entries, pairs = [], []
    for spec in specs:
        group = closure(spec, config.closure_cap)
        entries.append(_entry(spec, group, tags_of(spec)))
        if not group.complete:
            continue
        for normal, cyclic in discover_normal_cyclic(spec, group):
            entries.append(_entry(normal, cyclic, ["cyclic", "normal"]))
            pairs.append((normal.name, spec.name))
    return entries, pairs


def _all_cyclic(field, n, config):
    ambient = enumerate_gl(field, n, config.ambient_cap)
    entries, seen = [], set()
    for g in ambient.elements:
        name = "{}-cyclic-{:05d}".format(_prefix(field, n), len(entries))
        spec = GroupSpec(field, n, [g], name=name)
        group = closure(spec, config.closure_cap)
        fingerprint = subgroup_fingerprint(group)
        if fingerprint in seen:
            continue
        seen.add(fingerprint)
        entries.append(_entry(spec, group, ["cyclic"]))
    return Catalog(entries)


def _named_standard(field, n, config):
    prefix = _prefix(field, n)
    specs = [
        GroupSpec(field, n, gens, name="{}-{}".format(prefix, short))
        for short, gens in named_subgroups(field, n)
    ]
    entries, pairs = _with_normal_pairs(specs, config, lambda spec: ["named"])
    names = {entry.name for entry in entries}
    loewy = [("unipotent", "borel"), ("unipotent", "unipotent")]
    loewy += [("jordan-{}".format(k),) * 2 for k in range(2, n + 1)]
    loewy.append(("jordan-{}".format(n), "borel"))
    loewy = [
        ("{}-{}".format(prefix, a), "{}-{}".format(prefix, b))
        for a, b in loewy
        if "{}-{}".format(prefix, a) in names and "{}-{}".format(prefix, b) in names
    ]
    return Catalog(entries, pairs, loewy)


def _random(field, n, seed, count, k, config):
    rng = random.Random(seed)
    specs = [
        GroupSpec(
            field,
            n,
            [random_invertible(field, n, rng) for _ in range(k)],
            name="{}-random{}-s{}-{:04d}".format(_prefix(field, n), k, seed, i),
        )
        for i in range(count)
    ]
    entries, pairs = _with_normal_pairs(specs, config, lambda spec: ["random"])
    return Catalog(entries, pairs)


def _unipotent_subgroups(field, n, config):
    unitriangular = closure(
        GroupSpec(field, n, _unipotent_generators(field, n) or [identity(field, n)], name="U"),
        config.closure_cap,
    )
    elements = unitriangular.elements
    entries, seen = [], set()
    for i, a in enumerate(elements):
        for b in elements[i:]:
            generators = _unique(field, n, [a, b])
            name = "{}-unipotent-{:04d}".format(_prefix(field, n), len(entries))
            spec = GroupSpec(field, n, generators, name=name)
            group = closure(spec, config.closure_cap)
            fingerprint = subgroup_fingerprint(group)
            if group.order <= 1 or fingerprint in seen:
                continue
            seen.add(fingerprint)
            entries.append(_entry(spec, group, ["unitriangular"]))
    return Catalog(entries)


def generate_catalog(field, n, mode, seed=0, count=None, k=2, config=None):
    """
    A test population over GL_n(F_q). all-cyclic keeps one entry per distinct
    cyclic subgroup; named-standard and random-k-generated also emit normal
    cyclic subgroups with (normal, over) pairs; named-standard designates
    Loewy pairs. Output depends only on the arguments.
    """
    config = resolve_config(config)
    try:
        mode = CatalogMode(mode)
    except ValueError:
        raise CatalogError(
            "unknown generation mode {!r}; choose from {}".format(
                mode, ", ".join(m.value for m in CatalogMode)
            ),
            field="mode",
        )
    if mode == CatalogMode.ALL_CYCLIC:
        catalog = _all_cyclic(field, n, config)
    elif mode == CatalogMode.NAMED_STANDARD:
        catalog = _named_standard(field, n, config)
    elif mode == CatalogMode.RANDOM:
        count = DEFAULT_RANDOM_COUNT if count is None else count
        catalog = _random(field, n, seed, count, k, config)
    else:
        catalog = _unipotent_subgroups(field, n, config)
    LOG.debug(
        "Generated {} catalog over GL_{}(F_{}): {} entries, {} pairs".format(
            mode.value, n, field.q, len(catalog), len(catalog.pairs)
        )
    )
    return catalog
