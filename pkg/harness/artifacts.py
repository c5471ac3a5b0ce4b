import hashlib
import json
import logging

from algebra.matrix import Mat
from algebra.subspace import Subspace
from clients.cache_client import CacheClient
from enums.artifact_kind import ArtifactKind
from grouplat.closure import GroupClosure, closure
from grouplat.lattice import InvLattice, invariant_lattice
from topology.homology import HomologyReport, reduced_homology

LOG = logging.getLogger(__name__)


def cache_key(spec, kind, config):
    """Content hash of (q, n, sorted generator encodings, artifact kind, config fingerprint)."""
    kind = ArtifactKind(kind)
    blob = json.dumps(
        {
            "q": spec.field.q,
            "n": spec.n,
            "generators": sorted(g.key.hex() for g in spec.generators),
            "kind": kind.value,
            "fingerprint": config.fingerprint(),
        },
        sort_keys=True,
    ).encode("utf-8")
    return hashlib.sha256(blob).hexdigest()


def encode_closure(group):
    return {"complete": group.complete, "elements": [g.as_lists() for g in group.elements]}


def decode_closure(spec, value):
    elements = [Mat(spec.field, entries, invertible=True) for entries in value["elements"]]
    return GroupClosure(
        spec.field, spec.n, elements, value["complete"], given_generators=spec.generators
    )


def encode_lattice(lattice):
    return {"nodes": [[list(row) for row in w.basis] for w in lattice.nodes]}


def decode_lattice(spec, value):
    nodes = [
        Subspace(spec.field, spec.n, tuple(tuple(row) for row in basis)) for basis in value["nodes"]
    ]
    return InvLattice(spec.field, spec.n, nodes, group=spec)


def encode_homology(report):
    return {
        "reduced_betti": list(report.reduced_betti),
        "torsion": [list(t) for t in report.torsion],
        "euler_characteristic": report.euler_characteristic,
        "simplex_counts": list(report.simplex_counts),
    }


def decode_homology(value):
    return HomologyReport(
        reduced_betti=value["reduced_betti"],
        torsion=value["torsion"],
        euler_characteristic=value["euler_characteristic"],
        simplex_counts=value["simplex_counts"],
    )


def cache_store(key, value, config):
    return CacheClient.store(key, value, config.cache_dir)


def cache_load(key, config):
    return CacheClient.load(key, config.cache_dir)


def _cached(spec, kind, config, compute, encode, decode):
    if not config.use_cache:
        return compute()
    key = cache_key(spec, kind, config)
    value = cache_load(key, config)
    if value is not None:
        try:
            return decode(value)
        except (KeyError, TypeError, ValueError) as e:
            LOG.warning("Ignoring undecodable {} artifact {}: {}".format(kind.value, key, e))
    result = compute()
    cache_store(key, encode(result), config)
    return result


def cached_closure(spec, config):
    return _cached(
        spec,
        ArtifactKind.CLOSURE,
        config,
        lambda: closure(spec, config.closure_cap),
        encode_closure,
        lambda value: decode_closure(spec, value),
    )


def cached_lattice(spec, config):
    return _cached(
        spec,
        ArtifactKind.LATTICE,
        config,
        lambda: invariant_lattice(spec, config.enumeration_cap),
        encode_lattice,
        lambda value: decode_lattice(spec, value),
    )


def cached_homology(spec, complex_, config):
    """Reduced homology of X^H for the group `spec`; `complex_` must be that X^H."""
    return _cached(
        spec,
        ArtifactKind.HOMOLOGY,
        config,
        lambda: reduced_homology(complex_),
        encode_homology,
        decode_homology,
    )
