import json
import logging
import platform
from collections import Counter
from datetime import datetime, timezone
from importlib import metadata

import attr

from enums.outcome import Outcome

LOG = logging.getLogger(__name__)

SCHEMA_VERSION = 1
TOOLCHAIN_PACKAGES = ("attrs", "galois", "numpy", "sympy", "toml")
WORST_FIRST = (Outcome.DISAGREE, Outcome.FAIL, Outcome.SKIP, Outcome.PASS)


def _package_version(name):
    try:
        return metadata.version(name)
    except metadata.PackageNotFoundError:
        return None


def build_header():
    """Everything that legitimately differs between two identical runs."""
    return {
        "generated_at": datetime.now(timezone.utc).isoformat(),
        "toolchain": {
            "python": platform.python_version(),
            **{name: _package_version(name) for name in TOOLCHAIN_PACKAGES},
        },
    }


def _check_family(name):
    return name.split(":", 1)[0]


def summarize(records, pair_records=()):
    counts = Counter()
    by_check = {}
    for record in list(records) + list(pair_records):
        for name, result in record["checks"].items():
            counts[result["outcome"]] += 1
            family = by_check.setdefault(_check_family(name), Counter())
            family[result["outcome"]] += 1
    summary = {outcome.value: counts[outcome.value] for outcome in Outcome}
    summary.update(
        {
            "entries": len(records),
            "pairs": len(pair_records),
            "checks": sum(counts.values()),
            "by_check": {name: dict(sorted(c.items())) for name, c in sorted(by_check.items())},
        }
    )
    return summary


@attr.s(frozen=True)
class CampaignReport:
    """
    Per-entry and per-pair records, a summary of outcomes, and the settings
    they were computed under. Timings and the header are kept out of the
    verdict section, which is byte-identical across reruns.
    """

    records = attr.ib(converter=tuple)
    pair_records = attr.ib(converter=tuple)
    summary = attr.ib()
    config = attr.ib()
    fields = attr.ib(factory=dict)
    timings = attr.ib(factory=dict, eq=False)
    header = attr.ib(factory=dict, eq=False)
    schema = attr.ib(default=SCHEMA_VERSION)

    @property
    def failures(self):
        return self.summary[Outcome.FAIL.value]

    @property
    def disagreements(self):
        return self.summary[Outcome.DISAGREE.value]

    @property
    def passed(self):
        return self.failures == 0 and self.disagreements == 0

    def verdict_section(self):
        return {
            "records": list(self.records),
            "pairs": list(self.pair_records),
            "summary": self.summary,
        }

    def verdict_json(self):
        return json.dumps(self.verdict_section(), sort_keys=True, indent=2)

    def to_json(self):
        return {
            "schema": self.schema,
            "header": self.header,
            "config": self.config.as_dict(),
            "fingerprint": self.config.fingerprint(),
            "seed": self.config.seed,
            "fields": self.fields,
            "timings": self.timings,
            **self.verdict_section(),
        }

    def dumps(self):
        return json.dumps(self.to_json(), sort_keys=True, indent=2)

    def write(self, path):
        with open(path, "w") as f:
            f.write(self.dumps())
            f.write("\n")
        LOG.info("Wrote campaign report to {}".format(path))

    def summary_line(self):
        template = (
            "{} entries, {} pairs, {} checks: "
            "{} passed, {} failed, {} skipped, {} oracle disagreements"
        )
        return template.format(
            self.summary["entries"],
            self.summary["pairs"],
            self.summary["checks"],
            self.summary[Outcome.PASS.value],
            self.failures,
            self.summary[Outcome.SKIP.value],
            self.disagreements,
        )

    def family_lines(self):
        """One line per check family, marked with the worst outcome it saw."""
        lines = []
        for family, counts in self.summary["by_check"].items():
            worst = next(o for o in WORST_FIRST if counts.get(o.value))
            seen = [o.value for o in Outcome if counts.get(o.value)]
            tally = ", ".join("{} {}".format(value, counts[value]) for value in seen)
            lines.append("{} {}: {}".format(worst.emoji, family, tally))
        return lines
