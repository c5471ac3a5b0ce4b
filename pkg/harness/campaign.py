import logging
import time
from concurrent.futures import ProcessPoolExecutor

from building.complex import fixed_point_subcomplex
from enums.outcome import Outcome
from harness.artifacts import cached_closure, cached_homology, cached_lattice
from harness.catalog import Catalog
from harness.report import CampaignReport, build_header, summarize
from theorems.borel_tits import borel_tits_demo
from theorems.centre import check_normal_overgroup, find_centre
from theorems.common import ambient_for, resolve_config
from theorems.convexity import check_convex
from theorems.fixed_point import check_fixed_point_form
from theorems.loewy import loewy_centres
from theorems.reducibility import g_cr_verdicts
from theorems.serre import verify_serre_question
from grouplat.closure import satisfies_lagrange
from utils.errors import (
    CapacityError,
    CentreError,
    OracleDisagreementError,
    PreconditionError,
    VerificationFailure,
)
from utils.formatter import (
    centre_to_json,
    flag_to_json,
    format_flag,
    homology_to_json,
    loewy_to_json,
)

LOG = logging.getLogger(__name__)


class _Missing(Exception):
    """A stage this check depends on did not produce its result."""


class CheckRunner:
    """
    Runs named checks in order, turning every exception into a recorded
    outcome. The wall-clock budget is checked before each stage.
    """

    def __init__(self, name, config):
        self.name = name
        self.config = config
        self.started = time.monotonic()
        self.checks = {}

    @property
    def elapsed(self):
        return time.monotonic() - self.started

    def _set(self, check, outcome, detail=""):
        self.checks[check] = {"outcome": outcome.value, "detail": detail}
        if outcome in (Outcome.FAIL, Outcome.DISAGREE):
            LOG.warning("{} {}: {} {}".format(self.name, check, outcome.value, detail))
        return outcome

    def run(self, check, stage):
        if self.elapsed > self.config.entry_budget:
            return self._set(check, Outcome.SKIP, "skip: budget")
        try:
            outcome, detail = stage()
        except _Missing as e:
            outcome, detail = Outcome.SKIP, "skip: requires {}".format(e)
        except OracleDisagreementError as e:
            outcome, detail = Outcome.DISAGREE, "{} {}".format(e, e.verdicts)
        except VerificationFailure as e:
            outcome, detail = Outcome.FAIL, "{} {}".format(e, e.verdicts)
        except (CapacityError, PreconditionError) as e:
            outcome, detail = Outcome.SKIP, "skip: {}".format(e)
        except CentreError as e:
            outcome, detail = Outcome.FAIL, str(e)
        except Exception as e:
            LOG.debug("Unexpected error in {} {}".format(self.name, check), exc_info=True)
            outcome, detail = Outcome.FAIL, "error: {!r}".format(e)
        return self._set(check, outcome, detail)


def _passing(ok, detail=""):
    return (Outcome.PASS, "") if ok else (Outcome.FAIL, detail)


class EntryRun:
    """All applicable checks for one catalog entry; results land in `record`."""

    def __init__(self, entry, config, loewy_overs=()):
        self.entry = entry
        self.config = config
        self.loewy_overs = loewy_overs
        self.runner = CheckRunner(entry.name, config)
        self.spec = entry.to_spec()
        self.group = self.lattice = self.complex_ = self.homology = None
        self.verdict = None
        self._ambient = None
        self.record = {
            "name": entry.name,
            "q": entry.q,
            "n": entry.n,
            "tags": list(entry.tags),
        }

    def ambient(self):
        if self._ambient is None:
            self._ambient = ambient_for(self.spec.field, self.spec.n, self.config)
        return self._ambient

    def _need(self, *attributes):
        for attribute in attributes:
            if getattr(self, attribute) is None:
                raise _Missing(attribute.rstrip("_"))

    def closure_stage(self):
        self.group = cached_closure(self.spec, self.config)
        lagrange = satisfies_lagrange(self.group)
        self.record["closure"] = {
            "order": self.group.order,
            "complete": self.group.complete,
            "lagrange": lagrange,
        }
        if not self.group.complete:
            return Outcome.SKIP, "skip: closure cap {} reached".format(self.config.closure_cap)
        return _passing(lagrange, "order {} does not divide |GL|".format(self.group.order))

    def lattice_stage(self):
        self.lattice = cached_lattice(self.spec, self.config)
        self.complex_ = fixed_point_subcomplex(self.lattice)
        self.record["lattice_size"] = len(self.lattice)
        self.record["simplices"] = len(self.complex_)
        self.record["simplices_by_length"] = self.complex_.counts_by_length()
        return Outcome.PASS, ""

    def homology_stage(self):
        self._need("complex_")
        self.homology = cached_homology(self.spec, self.complex_, self.config)
        self.record["homology"] = homology_to_json(self.homology)
        return Outcome.PASS, ""

    def convexity_stage(self):
        self._need("complex_")
        verdict = check_convex(self.complex_, self.ambient(), self.config)
        self.record["convex"] = verdict.holds
        return _passing(
            verdict.holds, "flag {} violates convexity".format(format_flag(verdict.violation))
        )

    def g_cr_stage(self):
        self._need("lattice", "complex_")
        self.verdict = g_cr_verdicts(self.spec, self.config, self.lattice, self.homology)
        self.record["g_cr"] = self.verdict.as_dict()
        self.record["g_ir"] = self.verdict.is_g_ir
        self.record["contractible"] = self.verdict.contractibility.contractible
        if not self.verdict.agree:
            return Outcome.DISAGREE, "G-cr tests disagree {}".format(self.verdict.as_dict())
        return Outcome.PASS, ""

    def fixed_point_stage(self):
        self._need("complex_")
        verdict = check_fixed_point_form(self.complex_, self.ambient(), self.config)
        self.record["fixed_point_form"] = {
            "holds": verdict.is_fixed_point_form,
            "stabilizer_order": verdict.H.order,
        }
        return _passing(
            verdict.is_fixed_point_form,
            "X^H is not recovered; missing {}".format(format_flag(verdict.counterexample)),
        )

    def centre_stage(self):
        report = find_centre(self.spec, self.config, self.ambient())
        self.record["centre"] = centre_to_json(report)
        return Outcome.PASS, ""

    def loewy_stage(self, over):
        report = loewy_centres(self.spec, over.to_spec(), self.config)
        self.record.setdefault("loewy", {})[over.name] = loewy_to_json(report)
        return _passing(report.k_stable, "{} does not fix the Loewy flags".format(over.name))

    def borel_tits_stage(self):
        report = borel_tits_demo(self.spec, self.config, self.ambient())
        self.record["borel_tits"] = {
            "normalizer_order": report.normalizer.order,
            "complex_normalizer_order": report.complex_normalizer.order,
            "fixed_flag": flag_to_json(report.fixed_flag),
        }
        return Outcome.PASS, ""

    def expected_stage(self):
        mismatches = []
        for key, wanted in sorted(self.entry.expected.items()):
            actual = self._actual(key)
            if actual != wanted:
                mismatches.append("{}: expected {!r}, got {!r}".format(key, wanted, actual))
        return _passing(not mismatches, "; ".join(mismatches))

    def _actual(self, key):
        if key == "g_cr":
            return self.verdict.is_g_cr if self.verdict is not None else None
        if key == "order":
            return self.record.get("closure", {}).get("order")
        return self.record.get(key)

    def execute(self):
        run = self.runner.run
        run("closure", self.closure_stage)
        run("lattice", self.lattice_stage)
        if self.complex_ is not None and not self.complex_.is_empty:
            run("homology", self.homology_stage)
        run("convexity", self.convexity_stage)
        run("g_cr", self.g_cr_stage)
        run("fixed_point_form", self.fixed_point_stage)
        not_g_cr = self.verdict is not None and not self.verdict.is_g_cr
        if not_g_cr:
            run("centre", self.centre_stage)
        for over in self.loewy_overs:
            run("loewy:{}".format(over.name), lambda over=over: self.loewy_stage(over))
        if self.entry.has_tag("unipotent"):
            run("borel_tits", self.borel_tits_stage)
        if self.entry.expected:
            run("expected", self.expected_stage)
        self.record["checks"] = self.runner.checks
        return self.record, self.runner.elapsed


class PairRun:
    """Normal-subgroup inheritance and, for contractible X^N, the overgroup check."""

    def __init__(self, normal, over, config):
        self.normal = normal
        self.over = over
        self.config = config
        self.runner = CheckRunner("{} in {}".format(normal.name, over.name), config)
        self.verdict = None
        self.record = {"normal": normal.name, "over": over.name}

    def serre_stage(self):
        self.verdict = verify_serre_question(
            self.normal.to_spec(), self.over.to_spec(), self.config
        )
        self.record["h_g_cr"] = self.verdict.h_g_cr
        self.record["n_g_cr"] = self.verdict.n_g_cr
        return _passing(self.verdict.holds, "G-cr overgroup with a non-G-cr normal subgroup")

    def overgroup_stage(self):
        verdict = check_normal_overgroup(self.normal.to_spec(), self.over.to_spec(), self.config)
        self.record["overgroup"] = {
            "k_in_normalizer": verdict.k_in_normalizer,
            "fixes_centre": verdict.fixes_centre,
            "centre": flag_to_json(verdict.centre),
        }
        return _passing(verdict.holds, "overgroup does not fix the centre of X^N")

    def execute(self):
        self.runner.run("serre", self.serre_stage)
        if self.verdict is not None and not self.verdict.n_g_cr:
            self.runner.run("normal_overgroup", self.overgroup_stage)
        self.record["checks"] = self.runner.checks
        return self.record, self.runner.elapsed


def _entry_job(job):
    entry, loewy_overs, config = job
    return EntryRun(entry, config, loewy_overs).execute()


def _pair_job(job):
    normal, over, config = job
    return PairRun(normal, over, config).execute()


def _map(function, jobs, workers):
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            return list(executor.map(function, jobs))
    return [function(job) for job in jobs]


def run_campaign(entries, config=None):
    """
    Run every applicable check on every entry and designated pair. Failures
    are recorded, never raised; records come back sorted by name.
    """
    config = resolve_config(config)
    catalog = entries if isinstance(entries, Catalog) else Catalog(entries)
    by_name = catalog.by_name()
    overs = {}
    for group, over in catalog.loewy:
        overs.setdefault(group, []).append(by_name[over])

    started = time.monotonic()
    entry_jobs = [(entry, tuple(overs.get(entry.name, ())), config) for entry in catalog]
    pair_jobs = [(by_name[normal], by_name[over], config) for normal, over in catalog.pairs]
    LOG.info(
        "Running campaign: {} entries, {} pairs, {} workers".format(
            len(entry_jobs), len(pair_jobs), config.workers
        )
    )
    entry_results = _map(_entry_job, entry_jobs, config.workers)
    pair_results = _map(_pair_job, pair_jobs, config.workers)

    records = sorted((record for record, _ in entry_results), key=lambda r: r["name"])
    pair_records = sorted(
        (record for record, _ in pair_results), key=lambda r: (r["normal"], r["over"])
    )
    timings = {record["name"]: round(elapsed, 3) for record, elapsed in entry_results}
    timings.update(
        {"{} in {}".format(r["normal"], r["over"]): round(e, 3) for r, e in pair_results}
    )
    timings["total"] = round(time.monotonic() - started, 3)
    fields = {str(entry.q): str(entry.field.polynomial) for entry in catalog}
    return CampaignReport(
        records=records,
        pair_records=pair_records,
        summary=summarize(records, pair_records),
        config=config,
        fields=fields,
        timings=timings,
        header=build_header(),
    )
