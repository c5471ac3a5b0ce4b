import json
import logging
import os
import re

import attr

from algebra.field import field_make
from algebra.matrix import Mat
from grouplat.closure import GroupSpec
from utils.errors import CatalogError, CentreError

LOG = logging.getLogger(__name__)

BUNDLED_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), "catalogs")
ENTRY_KEYS = {"name", "q", "n", "generators", "tags", "expected"}
EXPECTED_KEYS = {"g_cr", "g_ir", "contractible", "convex", "simplices", "lattice_size", "order"}


def _as_tuple(values):
    return tuple(values)


@attr.s(frozen=True)
class CatalogEntry:
    name = attr.ib()
    q = attr.ib()
    n = attr.ib()
    generators = attr.ib(converter=lambda gens: tuple(tuple(map(tuple, g)) for g in gens))
    tags = attr.ib(default=(), converter=_as_tuple)
    expected = attr.ib(factory=dict, eq=False)

    @property
    def field(self):
        return field_make(self.q)

    def matrices(self):
        return tuple(Mat(self.field, g) for g in self.generators)

    def to_spec(self):
        return GroupSpec(self.field, self.n, self.matrices(), name=self.name)

    def has_tag(self, tag):
        return tag in self.tags

    def to_json(self):
        data = {
            "name": self.name,
            "q": self.q,
            "n": self.n,
            "generators": [[list(row) for row in g] for g in self.generators],
            "tags": list(self.tags),
        }
        if self.expected:
            data["expected"] = dict(self.expected)
        return data

    @classmethod
    def from_spec(cls, spec, tags=(), expected=None):
        return cls(
            name=spec.name,
            q=spec.field.q,
            n=spec.n,
            generators=[g.entries for g in spec.generators],
            tags=tags,
            expected=expected or {},
        )


@attr.s(frozen=True)
class Catalog:
    """
    Entries plus two kinds of designated pairs, both by entry name:
    `pairs` (normal subgroup, overgroup) and `loewy` (group, normalizing group).
    """

    entries = attr.ib(converter=_as_tuple)
    pairs = attr.ib(default=(), converter=_as_tuple)
    loewy = attr.ib(default=(), converter=_as_tuple)

    def __attrs_post_init__(self):
        names = set()
        for entry in self.entries:
            if entry.name in names:
                raise CatalogError("duplicate entry name", entry=entry.name, field="name")
            names.add(entry.name)
        for kind, pairs in (("pairs", self.pairs), ("loewy", self.loewy)):
            for first, second in pairs:
                for name in (first, second):
                    if name not in names:
                        raise CatalogError(
                            "pair refers to unknown entry {!r}".format(name), field=kind
                        )

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def by_name(self):
        return {entry.name: entry for entry in self.entries}

    def extend(self, other):
        return Catalog(
            self.entries + other.entries, self.pairs + other.pairs, self.loewy + other.loewy
        )

    def to_json(self):
        return {
            "entries": [entry.to_json() for entry in self.entries],
            "pairs": [{"normal": a, "over": b} for a, b in self.pairs],
            "loewy": [{"group": a, "over": b} for a, b in self.loewy],
        }


def _line_of(text, name):
    match = re.search(r'"name"\s*:\s*{}'.format(re.escape(json.dumps(name))), text)
    if match is None:
        return None
    return text.count("\n", 0, match.start()) + 1


def _require(raw, key, kind, name, line):
    if key not in raw:
        raise CatalogError("missing required field", entry=name, field=key, line=line)
    value = raw[key]
    if not isinstance(value, kind) or isinstance(value, bool):
        raise CatalogError(
            "expected {}, got {!r}".format(kind.__name__, value), entry=name, field=key, line=line
        )
    return value


def parse_entry(raw, text=""):
    """Validate one entry object; `text` is the source, for line numbers."""
    if not isinstance(raw, dict):
        raise CatalogError("entry must be an object, got {!r}".format(raw))
    name = raw.get("name")
    line = _line_of(text, name) if isinstance(name, str) else None
    name = _require(raw, "name", str, None, line)
    unknown = sorted(set(raw) - ENTRY_KEYS)
    if unknown:
        raise CatalogError("unknown fields {}".format(", ".join(unknown)), entry=name, line=line)
    q = _require(raw, "q", int, name, line)
    n = _require(raw, "n", int, name, line)
    if n < 1:
        raise CatalogError("n must be positive", entry=name, field="n", line=line)
    try:
        field = field_make(q)
    except CentreError as e:
        raise CatalogError(str(e), entry=name, field="q", line=line)

    generators = _require(raw, "generators", list, name, line)
    if not generators:
        raise CatalogError(
            "at least one generator is required", entry=name, field="generators", line=line
        )
    for index, g in enumerate(generators):
        if (
            not isinstance(g, list)
            or len(g) != n
            or any(not isinstance(row, list) or len(row) != n for row in g)
        ):
            raise CatalogError(
                "generator {} is not an {}x{} array".format(index, n, n),
                entry=name,
                field="generators",
                line=line,
            )
        for row in g:
            for value in row:
                if not isinstance(value, int) or isinstance(value, bool) or not 0 <= value < q:
                    raise CatalogError(
                        "generator {} has code {!r} outside 0..{}".format(index, value, q - 1),
                        entry=name,
                        field="generators",
                        line=line,
                    )
        if not Mat(field, g).is_invertible:
            raise CatalogError(
                "generator {} is singular".format(index), entry=name, field="generators", line=line
            )

    tags = raw.get("tags", [])
    if not isinstance(tags, list) or not all(isinstance(t, str) for t in tags):
        raise CatalogError("tags must be a list of strings", entry=name, field="tags", line=line)
    expected = raw.get("expected", {})
    if not isinstance(expected, dict) or set(expected) - EXPECTED_KEYS:
        raise CatalogError(
            "expected must be an object with keys among {}".format(
                ", ".join(sorted(EXPECTED_KEYS))
            ),
            entry=name,
            field="expected",
            line=line,
        )
    return CatalogEntry(name, q, n, generators, tags, expected)


def _parse_pairs(raw, kind, first_key, second_key):
    pairs = []
    for item in raw or []:
        if not isinstance(item, dict) or first_key not in item or second_key not in item:
            raise CatalogError(
                "each item needs '{}' and '{}'".format(first_key, second_key), field=kind
            )
        pairs.append((item[first_key], item[second_key]))
    return pairs


def _from_recipe(recipes, config):
    from harness.generate import generate_catalog

    if isinstance(recipes, dict):
        recipes = [recipes]
    catalog = Catalog(())
    for recipe in recipes:
        try:
            field = field_make(recipe["q"])
            catalog = catalog.extend(
                generate_catalog(
                    field,
                    recipe["n"],
                    recipe["mode"],
                    seed=recipe.get("seed", 0),
                    count=recipe.get("count"),
                    k=recipe.get("k", 2),
                    config=config,
                )
            )
        except (KeyError, TypeError) as e:
            raise CatalogError("malformed generation recipe: {!r}".format(e), field="generate")
    return catalog


def resolve_catalog_path(name_or_path):
    """A file path, or the name of a bundled catalog."""
    if os.path.isfile(name_or_path):
        return name_or_path
    bundled = os.path.join(BUNDLED_DIR, "{}.json".format(name_or_path))
    if os.path.isfile(bundled):
        return bundled
    raise FileNotFoundError("No catalog file or bundled catalog named {!r}".format(name_or_path))


def bundled_catalogs():
    return sorted(f[: -len(".json")] for f in os.listdir(BUNDLED_DIR) if f.endswith(".json"))


def parse_catalog(text, config=None):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise CatalogError(e.msg, line=e.lineno)

    if isinstance(data, dict) and "generate" in data:
        return _from_recipe(data["generate"], config)
    if isinstance(data, list):
        raw_entries, raw_pairs, raw_loewy = data, [], []
    elif isinstance(data, dict) and "entries" in data:
        raw_entries = data["entries"]
        raw_pairs = data.get("pairs")
        raw_loewy = data.get("loewy")
    else:
        raise CatalogError(
            "a catalog is an array of entries, an object with 'entries', or a recipe"
        )
    entries = [parse_entry(raw, text) for raw in raw_entries]
    return Catalog(
        entries,
        _parse_pairs(raw_pairs, "pairs", "normal", "over"),
        _parse_pairs(raw_loewy, "loewy", "group", "over"),
    )


def ingest_catalog(path, config=None):
    path = resolve_catalog_path(path)
    LOG.debug("Reading catalog {}".format(path))
    with open(path, "r") as f:
        catalog = parse_catalog(f.read(), config)
    LOG.debug(
        "Catalog {}: {} entries, {} pairs, {} loewy pairs".format(
            path, len(catalog), len(catalog.pairs), len(catalog.loewy)
        )
    )
    return catalog


def write_catalog(catalog, path):
    with open(path, "w") as f:
        json.dump(catalog.to_json(), f, indent=2)
        f.write("\n")
