import json
import logging
import os
import tempfile

from utils.config import CACHE_DIR_ENV

LOG = logging.getLogger(__name__)


class CacheClient:
    """
    One JSON file per content-hash key under the cache root. Writers race
    through a hard link, so the first complete file for a key wins and
    readers never see a partial write.
    """

    ENV_VAR = CACHE_DIR_ENV
    FILE_TEMPLATE = "{key}.json"

    @classmethod
    def root(cls, cache_dir=None):
        return cache_dir or os.environ.get(cls.ENV_VAR) or os.path.join(
            os.path.expanduser("~"), ".cache", "tits-centre"
        )

    @classmethod
    def path(cls, key, cache_dir=None):
        return os.path.join(cls.root(cache_dir), cls.FILE_TEMPLATE.format(key=key))

    @classmethod
    def load(cls, key, cache_dir=None):
        path = cls.path(key, cache_dir)
        if not os.path.exists(path):
            LOG.debug("Cache miss for {}".format(key))
            return None
        try:
            with open(path, "r") as f:
                payload = json.load(f)
            if payload.get("key") != key or "value" not in payload:
                raise ValueError("cache entry does not match its key")
        except (OSError, ValueError, AttributeError) as e:
            LOG.warning("Ignoring corrupt cache entry {}: {}".format(path, e))
            return None
        LOG.debug("Cache hit for {}".format(key))
        return payload["value"]

    @classmethod
    def store(cls, key, value, cache_dir=None):
        """Returns True if this call wrote the entry, False if another writer got there first."""
        root = cls.root(cache_dir)
        os.makedirs(root, exist_ok=True)
        final = cls.path(key, cache_dir)
        if os.path.exists(final):
            return False
        fd, tmp = tempfile.mkstemp(dir=root, prefix=".tmp-", suffix=".json")
        try:
            with os.fdopen(fd, "w") as f:
                json.dump({"key": key, "value": value}, f, sort_keys=True)
            try:
                os.link(tmp, final)
            except FileExistsError:
                return False
            return True
        finally:
            os.unlink(tmp)
