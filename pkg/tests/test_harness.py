import json
import os
import tempfile
import time
import unittest

from algebra.field import field_make
from algebra.matrix import Mat
from building.complex import fixed_point_subcomplex
from enums.catalog_mode import CatalogMode
from enums.outcome import Outcome
from grouplat.closure import GroupSpec, closure, is_normal_in
from harness.artifacts import cache_key, cached_closure, cached_homology, cached_lattice
from harness.campaign import CheckRunner, run_campaign
from harness.catalog import (
    Catalog,
    bundled_catalogs,
    ingest_catalog,
    parse_catalog,
    resolve_catalog_path,
    write_catalog,
)
from harness.generate import (
    discover_normal_cyclic,
    generate_catalog,
    named_subgroups,
    subgroup_fingerprint,
)
from harness.report import CampaignReport, summarize
from utils.config import Config
from utils.errors import CatalogError, EnumerationTooLargeError

F2 = field_make(2)
F3 = field_make(3)

IDENTITY_ENTRY = '{"name": "ok", "q": 2, "n": 2, "generators": [[[1, 0], [0, 1]]]}'


def entries_text(*entries):
    return "[\n  " + ",\n  ".join(entries) + "\n]"


class TestCatalog(unittest.TestCase):
    def assertCatalogError(self, text, field=None, line=None, message=None):
        with self.assertRaises(CatalogError) as context:
            parse_catalog(text)
        if field is not None:
            self.assertEqual(context.exception.field, field)
        if line is not None:
            self.assertEqual(context.exception.line, line)
        if message is not None:
            self.assertIn(message, str(context.exception))
        return context.exception

    def testParseCatalog_AcceptsAnArrayOfEntries(self):
        catalog = parse_catalog(entries_text(IDENTITY_ENTRY))
        self.assertEqual(len(catalog), 1)
        entry = catalog.entries[0]
        self.assertEqual((entry.name, entry.q, entry.n), ("ok", 2, 2))
        self.assertEqual(entry.to_spec().generators[0].as_lists(), [[1, 0], [0, 1]])

    def testParseCatalog_SingularGeneratorNamesEntryAndLine(self):
        bad = '{"name": "bad", "q": 2, "n": 2, "generators": [[[1, 1], [1, 1]]]}'
        error = self.assertCatalogError(
            entries_text(IDENTITY_ENTRY, bad), field="generators", line=3, message="singular"
        )
        self.assertEqual(error.entry, "bad")
        self.assertIn("line 3", str(error))

    def testParseCatalog_MissingField(self):
        self.assertCatalogError(
            entries_text('{"name": "noq", "n": 2, "generators": [[[1, 0], [0, 1]]]}'), field="q"
        )

    def testParseCatalog_UnknownField(self):
        self.assertCatalogError(
            entries_text(
                '{"name": "x", "q": 2, "n": 2, "generators": [[[1, 0], [0, 1]]], "colour": 1}'
            ),
            message="colour",
        )

    def testParseCatalog_UnsupportedField(self):
        self.assertCatalogError(
            entries_text('{"name": "x", "q": 6, "n": 2, "generators": [[[1, 0], [0, 1]]]}'),
            field="q",
            message="unsupported field",
        )

    def testParseCatalog_WrongShapeAndCodeRange(self):
        self.assertCatalogError(
            entries_text('{"name": "x", "q": 2, "n": 2, "generators": [[[1, 0, 0], [0, 1, 0]]]}'),
            field="generators",
            message="not an 2x2 array",
        )
        self.assertCatalogError(
            entries_text('{"name": "x", "q": 3, "n": 2, "generators": [[[1, 0], [0, 3]]]}'),
            field="generators",
            message="outside 0..2",
        )

    def testParseCatalog_MalformedJsonReportsLine(self):
        self.assertCatalogError('[\n  {"name": "x",\n  oops\n]', line=3)

    def testParseCatalog_UnknownExpectedKey(self):
        self.assertCatalogError(
            entries_text(
                '{"name": "x", "q": 2, "n": 2, "generators": [[[1, 0], [0, 1]]],'
                ' "expected": {"colour": 1}}'
            ),
            field="expected",
        )

    def testCatalog_DuplicateNamesAndUnknownPairs(self):
        with self.assertRaises(CatalogError):
            parse_catalog(entries_text(IDENTITY_ENTRY, IDENTITY_ENTRY))
        text = json.dumps(
            {
                "entries": [json.loads(IDENTITY_ENTRY)],
                "pairs": [{"normal": "ok", "over": "missing"}],
            }
        )
        self.assertCatalogError(text, field="pairs", message="missing")

    def testBundledCatalogs_ExamplesHasEntriesAndPairs(self):
        self.assertIn("examples", bundled_catalogs())
        self.assertIn("acceptance", bundled_catalogs())
        catalog = ingest_catalog("examples")
        self.assertEqual(len(catalog), 10)
        self.assertEqual(len(catalog.pairs), 4)
        self.assertEqual(len(catalog.loewy), 2)
        for entry in catalog:
            self.assertTrue(entry.expected)

    def testResolveCatalogPath_UnknownNameRaises(self):
        with self.assertRaises(FileNotFoundError):
            resolve_catalog_path("no-such-catalog")

    def testWriteCatalog_CanBeReadBack(self):
        catalog = ingest_catalog("examples")
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "copy.json")
            write_catalog(catalog, path)
            self.assertEqual(ingest_catalog(path), catalog)

    def testParseCatalog_RecipeGeneratesEntries(self):
        catalog = parse_catalog(json.dumps({"generate": {"q": 2, "n": 2, "mode": "all-cyclic"}}))
        self.assertEqual(len(catalog), 5)
        self.assertCatalogError(
            json.dumps({"generate": {"q": 2, "mode": "all-cyclic"}}), field="generate"
        )


class TestGenerate(unittest.TestCase):
    def testAllCyclic_OneEntryPerCyclicSubgroup(self):
        self.assertEqual(len(generate_catalog(F2, 2, "all-cyclic")), 5)
        self.assertEqual(len(generate_catalog(F2, 3, CatalogMode.ALL_CYCLIC)), 79)

    def testAllCyclic_NamesAndTags(self):
        catalog = generate_catalog(F3, 2, "all-cyclic")
        first = catalog.entries[0]
        self.assertEqual(first.name, "gl2f3-cyclic-00000")
        self.assertTrue(first.has_tag("cyclic"))
        fingerprints = {subgroup_fingerprint(closure(e.to_spec())) for e in catalog}
        self.assertEqual(len(fingerprints), len(catalog))

    def testUnipotentSubgroups_OfGl3F2(self):
        catalog = generate_catalog(F2, 3, "unipotent-subgroups")
        self.assertEqual(len(catalog), 9)
        for entry in catalog:
            self.assertTrue(entry.has_tag("unipotent"))

    def testNamedStandard_PairsAreNormal(self):
        catalog = generate_catalog(F2, 3, "named-standard")
        by_name = catalog.by_name()
        self.assertIn("gl3f2-borel", by_name)
        self.assertIn("gl3f2-jordan-3", by_name)
        self.assertTrue(catalog.pairs)
        for normal, over in catalog.pairs:
            n_group = closure(by_name[normal].to_spec())
            h_group = closure(by_name[over].to_spec())
            self.assertTrue(n_group.issubset(h_group))
            self.assertTrue(is_normal_in(n_group, h_group))
        self.assertIn(("gl3f2-jordan-3", "gl3f2-borel"), catalog.loewy)

    def testNamedSubgroups_GlIsTheWholeGroup(self):
        named = dict(named_subgroups(F3, 2))
        self.assertEqual(list(named)[0], "identity")
        self.assertEqual(closure(GroupSpec(F3, 2, named["gl"])).order, 48)
        self.assertEqual(closure(GroupSpec(F3, 2, named["borel"])).order, 12)

    def testRandom_IsDeterministicInTheSeed(self):
        first = generate_catalog(F3, 2, "random-k-generated", seed=4, count=6)
        again = generate_catalog(F3, 2, "random-k-generated", seed=4, count=6)
        other = generate_catalog(F3, 2, "random-k-generated", seed=5, count=6)
        self.assertEqual(first.to_json(), again.to_json())
        self.assertNotEqual(first.to_json(), other.to_json())
        self.assertEqual(first.entries[0].name, "gl2f3-random2-s4-0000")

    def testDiscoverNormalCyclic_FindsEveryNormalCyclicSubgroup(self):
        spec = GroupSpec(F3, 2, [Mat(F3, [[0, 2], [1, 0]]), Mat(F3, [[1, 1], [1, 2]])], name="q8")
        group = closure(spec)
        self.assertEqual(group.order, 8)
        found = discover_normal_cyclic(spec, group)
        self.assertEqual(len(found), 4)
        self.assertEqual(sorted(cyclic.order for _, cyclic in found), [2, 4, 4, 4])
        self.assertEqual(len(discover_normal_cyclic(spec, group, limit=2)), 2)

    def testGenerateCatalog_UnknownModeRaises(self):
        with self.assertRaises(CatalogError):
            generate_catalog(F2, 2, "every-subgroup")


class TestArtifacts(unittest.TestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.config = Config(use_cache=True, cache_dir=self.tmp.name)
        self.spec = ingest_catalog("examples").by_name()["gl3f2-j3"].to_spec()

    def tearDown(self):
        self.tmp.cleanup()

    def testCachedArtifacts_SecondReadMatchesFirst(self):
        closure_first = cached_closure(self.spec, self.config)
        lattice_first = cached_lattice(self.spec, self.config)
        complex_ = fixed_point_subcomplex(lattice_first)
        homology_first = cached_homology(self.spec, complex_, self.config)
        self.assertEqual(len(os.listdir(self.tmp.name)), 3)

        self.assertEqual(cached_closure(self.spec, self.config).keys, closure_first.keys)
        self.assertEqual(cached_lattice(self.spec, self.config), lattice_first)
        self.assertEqual(cached_homology(self.spec, complex_, self.config), homology_first)

    def testCacheKey_DependsOnFingerprintAndKind(self):
        other = Config(use_cache=True, cache_dir=self.tmp.name, closure_cap=99)
        closure_key = cache_key(self.spec, "closure", self.config)
        self.assertNotEqual(closure_key, cache_key(self.spec, "closure", other))
        self.assertNotEqual(closure_key, cache_key(self.spec, "lattice", self.config))
        # worker count and seed do not change artifacts
        same = Config(use_cache=True, cache_dir=self.tmp.name, workers=4, seed=9)
        self.assertEqual(closure_key, cache_key(self.spec, "closure", same))

    def testCacheDisabled_WritesNothing(self):
        config = Config(use_cache=False, cache_dir=self.tmp.name)
        cached_closure(self.spec, config)
        self.assertEqual(os.listdir(self.tmp.name), [])


class TestCampaign(unittest.TestCase):
    def testRunCampaign_EmptyCatalog(self):
        report = run_campaign([])
        self.assertEqual(report.summary["entries"], 0)
        self.assertEqual(report.summary["checks"], 0)
        self.assertTrue(report.passed)
        self.assertEqual(report.records, ())

    def testRunCampaign_ExamplesPass(self):
        report = run_campaign(ingest_catalog("examples"))
        self.assertTrue(report.passed, report.verdict_json())
        self.assertEqual(report.summary["entries"], 10)
        self.assertEqual(report.summary["pairs"], 4)
        names = [record["name"] for record in report.records]
        self.assertEqual(names, sorted(names))
        by_name = {record["name"]: record for record in report.records}
        j3 = by_name["gl3f2-j3"]
        self.assertEqual(j3["checks"]["centre"]["outcome"], "pass")
        self.assertEqual(j3["checks"]["loewy:gl3f2-borel"]["outcome"], "pass")
        self.assertEqual(j3["checks"]["borel_tits"]["outcome"], "pass")
        self.assertEqual(j3["centre"]["centre"], [[[1, 0, 0]], [[1, 0, 0], [0, 1, 0]]])
        self.assertNotIn("centre", by_name["gl2f3-gl"]["checks"])
        self.assertNotIn("homology", by_name["gl2f3-rotation"]["checks"])

    def testRunCampaign_BrokenExpectationFails(self):
        report = run_campaign(ingest_catalog("broken-expected"))
        self.assertFalse(report.passed)
        self.assertEqual(report.failures, 1)
        record = report.records[0]
        self.assertEqual(record["checks"]["expected"]["outcome"], "fail")
        self.assertIn("g_cr: expected True, got False", record["checks"]["expected"]["detail"])

    def testRunCampaign_VerdictSectionIsDeterministic(self):
        catalog = generate_catalog(F2, 2, "named-standard")
        first = run_campaign(catalog)
        second = run_campaign(catalog)
        self.assertEqual(first.verdict_json(), second.verdict_json())
        self.assertEqual(first, second)

    def testRunCampaign_CacheIsTransparent(self):
        catalog = ingest_catalog("examples")
        plain = run_campaign(catalog)
        with tempfile.TemporaryDirectory() as tmp:
            config = Config(use_cache=True, cache_dir=tmp)
            cold = run_campaign(catalog, config)
            self.assertTrue(os.listdir(tmp))
            warm = run_campaign(catalog, config)
        self.assertEqual(plain.verdict_json(), cold.verdict_json())
        self.assertEqual(plain.verdict_json(), warm.verdict_json())

    def testRunCampaign_CapacityErrorsBecomeSkips(self):
        config = Config(ambient_cap=10)
        catalog = Catalog([ingest_catalog("examples").by_name()["gl2f2-j2"]])
        record = run_campaign(catalog, config).records[0]
        self.assertEqual(record["checks"]["convexity"]["outcome"], "skip")
        self.assertIn("ambient group too large", record["checks"]["convexity"]["detail"])

    def testReport_ToJsonCarriesSettings(self):
        report = run_campaign([], Config(seed=7))
        data = json.loads(report.dumps())
        self.assertEqual(data["seed"], 7)
        self.assertEqual(data["schema"], 1)
        self.assertIn("generated_at", data["header"])
        self.assertEqual(data["fingerprint"], Config().fingerprint())


class TestCheckRunner(unittest.TestCase):
    def testRun_MapsExceptionsToOutcomes(self):
        runner = CheckRunner("entry", Config())

        def too_large():
            raise EnumerationTooLargeError("too many")

        def broken():
            raise RuntimeError("boom")

        self.assertEqual(runner.run("ok", lambda: (Outcome.PASS, "")), Outcome.PASS)
        self.assertEqual(runner.run("cap", too_large), Outcome.SKIP)
        self.assertEqual(runner.run("broken", broken), Outcome.FAIL)
        self.assertEqual(runner.checks["cap"]["detail"], "skip: too many")
        self.assertIn("boom", runner.checks["broken"]["detail"])

    def testRun_SkipsOnceTheBudgetIsSpent(self):
        runner = CheckRunner("entry", Config(entry_budget=1.0))
        runner.started = time.monotonic() - 5
        self.assertEqual(runner.run("late", lambda: (Outcome.PASS, "")), Outcome.SKIP)
        self.assertEqual(runner.checks["late"]["detail"], "skip: budget")

    def testSummarize_CountsByCheckFamily(self):
        records = [
            {"checks": {"loewy:a": {"outcome": "pass"}, "loewy:b": {"outcome": "fail"}}},
            {"checks": {"closure": {"outcome": "skip"}}},
        ]
        summary = summarize(records)
        self.assertEqual(summary["checks"], 3)
        self.assertEqual(summary["by_check"]["loewy"], {"fail": 1, "pass": 1})
        self.assertEqual(summary["oracle-disagreement"], 0)

    def testFamilyLines_MarkEachFamilyWithItsWorstOutcome(self):
        records = [
            {"checks": {"loewy:a": {"outcome": "pass"}, "loewy:b": {"outcome": "fail"}}},
            {"checks": {"closure": {"outcome": "pass"}, "centre": {"outcome": "skip"}}},
        ]
        report = CampaignReport(records, (), summarize(records), Config())
        self.assertEqual(
            report.family_lines(),
            [
                "{} centre: skip 1".format(Outcome.SKIP.emoji),
                "{} closure: pass 1".format(Outcome.PASS.emoji),
                "{} loewy: pass 1, fail 1".format(Outcome.FAIL.emoji),
            ],
        )


if __name__ == "__main__":
    unittest.main()
