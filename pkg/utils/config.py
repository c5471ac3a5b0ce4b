import hashlib
import json
import logging
import os

import attr
import toml

LOG = logging.getLogger(__name__)

CACHE_DIR_ENV = "CENTRE_CACHE_DIR"
CONFIG_TABLE = "centre"

DEFAULT_CLOSURE_CAP = 250000
DEFAULT_AMBIENT_CAP = 2 ** 24
DEFAULT_ENUMERATION_CAP = 4096
DEFAULT_ENTRY_BUDGET = 60.0
DEFAULT_CONVEXITY_PAIR_CAP = 20000


def _default_cache_dir():
    return os.path.join(os.path.expanduser("~"), ".cache", "tits-centre")


@attr.s(frozen=True)
class Config:
    closure_cap = attr.ib(default=DEFAULT_CLOSURE_CAP)
    ambient_cap = attr.ib(default=DEFAULT_AMBIENT_CAP)
    enumeration_cap = attr.ib(default=DEFAULT_ENUMERATION_CAP)
    convexity_pair_cap = attr.ib(default=DEFAULT_CONVEXITY_PAIR_CAP)
    entry_budget = attr.ib(default=DEFAULT_ENTRY_BUDGET)
    workers = attr.ib(default=1)
    seed = attr.ib(default=0)
    use_cache = attr.ib(default=False)
    cache_dir = attr.ib(factory=_default_cache_dir)

    @closure_cap.validator
    @ambient_cap.validator
    @enumeration_cap.validator
    @convexity_pair_cap.validator
    @workers.validator
    def _check_positive(self, attribute, value):
        if not isinstance(value, int) or value < 1:
            raise ValueError(
                "{} must be a positive integer, got {!r}".format(attribute.name, value)
            )

    @entry_budget.validator
    def _check_budget(self, attribute, value):
        if value <= 0:
            raise ValueError("entry_budget must be positive, got {!r}".format(value))

    def fingerprint(self):
        """Hash of every setting that can change a computed artifact."""
        relevant = {
            "closure_cap": self.closure_cap,
            "ambient_cap": self.ambient_cap,
            "enumeration_cap": self.enumeration_cap,
        }
        blob = json.dumps(relevant, sort_keys=True).encode("utf-8")
        return hashlib.sha256(blob).hexdigest()[:16]

    def as_dict(self):
        return attr.asdict(self)


def load_config(path=None, environ=None, **overrides):
    """
    Defaults, then the `[centre]` table of a TOML file, then the environment,
    then explicit overrides (command-line flags). `None` overrides are ignored.
    """
    environ = os.environ if environ is None else environ
    values = {}
    if path:
        LOG.debug("Reading configuration from {}".format(path))
        with open(path, "r") as f:
            parsed = toml.load(f)
        values.update(parsed.get(CONFIG_TABLE, {}))
    if environ.get(CACHE_DIR_ENV):
        values["cache_dir"] = environ[CACHE_DIR_ENV]
    values.update({k: v for k, v in overrides.items() if v is not None})

    known = {a.name for a in attr.fields(Config)}
    unknown = sorted(set(values) - known)
    if unknown:
        raise ValueError("Unknown configuration keys: {}".format(", ".join(unknown)))
    return Config(**values)
