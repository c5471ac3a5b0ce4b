# -*- coding: utf-8 -*-
#!/usr/bin/env python3

import json
import logging
import sys

from algebra.field import field_make
from algebra.matrix import Mat
from building.complex import face_closure, full_building
from enums.emoji import Emoji
from enums.outcome import Outcome
from grouplat.closure import GroupSpec
from harness.campaign import run_campaign
from harness.catalog import ingest_catalog, write_catalog
from harness.generate import generate_catalog
from theorems.borel_tits import borel_tits_demo
from theorems.centre import find_centre
from theorems.common import fixed_complex
from theorems.convexity import check_convex
from theorems.fixed_point import check_fixed_point_form
from theorems.loewy import loewy_centres
from theorems.reducibility import g_cr_verdicts
from topology.homology import reduced_homology
from utils import formatter
from utils.centre_argparser import CentreArgumentParser
from utils.config import load_config
from utils.errors import (
    CapacityError,
    CatalogError,
    InputError,
    OracleDisagreementError,
    PreconditionError,
    VerificationFailure,
)

LOG = logging.getLogger(__name__)
log_formatter = logging.Formatter(
    "%(asctime)s - %(process)s - %(levelname)s - %(message)s"
)

SHOWN_VERTICES = 8


def configure_logging(debug=False):
    """One stderr handler on the root logger, so every module's LOG reaches it."""
    root = logging.getLogger()
    if not any(getattr(h, "_centre_handler", False) for h in root.handlers):
        sh = logging.StreamHandler()
        sh.setFormatter(log_formatter)
        sh._centre_handler = True
        root.addHandler(sh)
    root.setLevel(logging.DEBUG if debug else logging.WARNING)


def build_config(args):
    return load_config(
        getattr(args, "config", None),
        closure_cap=getattr(args, "cap_closure", None),
        ambient_cap=getattr(args, "cap_ambient", None),
        seed=getattr(args, "seed", None),
        workers=getattr(args, "workers", None),
        use_cache=True if getattr(args, "cache", False) else None,
    )


def _pick_entry(catalog, name, path):
    if name is None:
        if not len(catalog):
            raise CatalogError("catalog {} has no entries".format(path))
        return catalog.entries[0]
    by_name = catalog.by_name()
    if name not in by_name:
        raise CatalogError("no entry named {!r} in {}".format(name, path))
    return by_name[name]


def _check_shape(spec, args):
    if args.q is not None and spec.field.q != args.q:
        raise InputError("--q {} does not match the entry's q={}".format(args.q, spec.field.q))
    if args.n is not None and spec.n != args.n:
        raise InputError("--n {} does not match the entry's n={}".format(args.n, spec.n))


def inline_group(field, n, generators, name="H"):
    return GroupSpec(field, n, [Mat(field, g) for g in generators], name=name)


def group_from_args(args, config, entry_name=None):
    """The group named on the command line, inline (--gens) or from a catalog file."""
    if not args.gens_file:
        return inline_group(field_make(args.q), args.n, args.gens)
    catalog = ingest_catalog(args.gens_file, config)
    spec = _pick_entry(catalog, entry_name, args.gens_file).to_spec()
    _check_shape(spec, args)
    return spec


def complex_from_flags_file(path):
    with open(path, "r") as f:
        data = json.load(f)
    if not isinstance(data, dict) or not {"q", "n", "flags"} <= set(data):
        raise InputError("{}: expected an object with q, n and flags".format(path))
    field = field_make(data["q"])
    flags = formatter.flags_from_json(field, data["n"], data["flags"])
    return face_closure(field, data["n"], flags)


def _subject(args, config):
    """(complex, description) for commands that accept a flag-set file or a group."""
    if getattr(args, "flags_file", None):
        return complex_from_flags_file(args.flags_file), "Y from {}".format(args.flags_file)
    spec = group_from_args(args, config, args.entry)
    _, complex_ = fixed_complex(spec, config)
    return complex_, "X^{}".format(spec.name)


def _plural(count, singular, plural):
    return "{} {}".format(count, singular if count == 1 else plural)


def cmd_complex(args, config):
    spec = group_from_args(args, config, args.entry)
    lattice, complex_ = fixed_complex(spec, config)
    summary = formatter.complex_summary(complex_)
    vertices = complex_.members
    if complex_.is_empty:
        lines = ["X^H: empty (H is G-irreducible)"]
    else:
        head = "X^H: {}".format(_plural(len(vertices), "vertex", "vertices"))
        if len(vertices) <= SHOWN_VERTICES:
            head += " ({})".format(", ".join(formatter.format_subspace(w) for w in vertices))
        lines = [
            head,
            "  {}; by type: {}".format(
                _plural(len(complex_), "simplex", "simplices"),
                ", ".join("{}: {}".format(t, c) for t, c in sorted(summary["by_type"].items())),
            ),
        ]
    lines.append("  invariant lattice: {}".format(_plural(len(lattice), "node", "nodes")))
    payload = {
        "group": spec.name,
        "q": spec.field.q,
        "n": spec.n,
        "complex": summary,
        "vertices": [formatter.subspace_to_json(w) for w in vertices],
        "lattice": [formatter.subspace_to_json(w) for w in lattice.nodes],
    }
    return payload, lines, True


def cmd_crcheck(args, config):
    spec = group_from_args(args, config, args.entry)
    verdict = g_cr_verdicts(spec, config)
    if not verdict.agree:
        raise OracleDisagreementError(
            "G-cr tests disagree for {}".format(spec.name), verdicts=verdict.as_dict()
        )
    if verdict.is_g_ir:
        line = "G-cr (G-irreducible: X^H empty)"
    elif verdict.is_g_cr:
        line = "G-cr (all three tests agree)"
    else:
        line = "not G-cr (all three tests agree)"
    payload = {
        "group": spec.name,
        "g_cr": verdict.is_g_cr,
        "g_ir": verdict.is_g_ir,
        "tests": verdict.as_dict(),
    }
    return payload, [line], True


def cmd_centre(args, config):
    spec = group_from_args(args, config, args.entry)
    report = find_centre(spec, config)
    lines = [
        "Centre of X^{}: {}".format(spec.name, formatter.format_flag(report.centre)),
        "  X^H has {}, |M| = {}, |K| = {}, X^K has {}".format(
            _plural(len(report.Y), "simplex", "simplices"),
            report.M.order,
            report.K.order,
            _plural(len(report.XK), "simplex", "simplices"),
        ),
    ]
    lines.extend(
        "  {} {}".format(Emoji.SUCCESS.value if ok else Emoji.FAILURE.value, check)
        for check, ok in sorted(report.checks.items())
    )
    return formatter.centre_to_json(report), lines, True


def cmd_homology(args, config):
    if args.full_building:
        field = field_make(args.q)
        complex_ = full_building(field, args.n, config.enumeration_cap)
        subject = "building of GL_{}(F_{})".format(args.n, args.q)
    else:
        spec = group_from_args(args, config, args.entry)
        _, complex_ = fixed_complex(spec, config)
        subject = "X^{}".format(spec.name)
    report = reduced_homology(complex_)
    size = _plural(len(complex_), "simplex", "simplices")
    lines = ["Reduced homology of {} ({}):".format(subject, size)]
    lines.append("  degree  betti  torsion")
    for degree, betti in enumerate(report.reduced_betti):
        torsion = report.torsion[degree]
        lines.append(
            "  {:>6}  {:>5}  {}".format(degree, betti, ",".join(str(t) for t in torsion) or "-")
        )
    numbers = ", ".join(str(b) for b in report.reduced_betti)
    lines.append("  reduced Betti numbers: ({})".format(numbers))
    payload = formatter.homology_to_json(report)
    payload["subject"] = subject
    payload["simplex_counts"] = list(report.simplex_counts)
    return payload, lines, True


def cmd_loewy(args, config):
    spec = group_from_args(args, config, args.entry)
    if args.over_entry:
        over = group_from_args(args, config, args.over_entry)
    elif args.over_gens:
        over = inline_group(spec.field, spec.n, args.over_gens, name="K")
    else:
        over = spec
    report = loewy_centres(spec, over, config)
    lines = [
        "socle flag:   {}".format(formatter.format_flag(report.socle_flag)),
        "radical flag: {}".format(formatter.format_flag(report.radical_flag)),
    ]
    if report.k_stable:
        lines.append("{} both flags are {}-stable".format(Emoji.SUCCESS.value, over.name))
    else:
        lines.append("{} {} does not fix the flags".format(Emoji.FAILURE.value, over.name))
    payload = formatter.loewy_to_json(report)
    payload.update({"group": spec.name, "over": over.name})
    return payload, lines, report.k_stable


def cmd_fixedform(args, config):
    complex_, subject = _subject(args, config)
    verdict = check_fixed_point_form(complex_, config=config)
    if verdict.is_fixed_point_form:
        lines = [
            "{} {} is X^H for its pointwise stabilizer H (order {})".format(
                Emoji.SUCCESS.value, subject, verdict.H.order
            )
        ]
    else:
        lines = [
            "{} {} is not of fixed-point form: "
            "{} is fixed by its pointwise stabilizer (order {})".format(
                Emoji.FAILURE.value,
                subject,
                formatter.format_flag(verdict.counterexample),
                verdict.H.order,
            )
        ]
    payload = {
        "subject": subject,
        "is_fixed_point_form": verdict.is_fixed_point_form,
        "stabilizer_order": verdict.H.order,
        "counterexample": formatter.flag_to_json(verdict.counterexample),
    }
    return payload, lines, verdict.is_fixed_point_form


def cmd_convex(args, config):
    complex_, subject = _subject(args, config)
    verdict = check_convex(complex_, config=config)
    if verdict.holds:
        lines = ["{} {} is convex".format(Emoji.SUCCESS.value, subject)]
    else:
        lines = [
            "{} {} is not convex: {} lies in the hull of {}".format(
                Emoji.FAILURE.value,
                subject,
                formatter.format_flag(verdict.violation),
                " and ".join(formatter.format_flag(f) for f in verdict.witnesses),
            )
        ]
    payload = {
        "subject": subject,
        "convex": verdict.holds,
        "witnesses": [formatter.flag_to_json(f) for f in verdict.witnesses or ()],
        "violation": formatter.flag_to_json(verdict.violation),
    }
    return payload, lines, verdict.holds


def cmd_boreltits(args, config):
    spec = group_from_args(args, config, args.entry)
    report = borel_tits_demo(spec, config)
    lines = [
        "|U| = {}, |N_G(U)| = {}, |N_G(X^U)| = {}".format(
            report.U.order, report.normalizer.order, report.complex_normalizer.order
        ),
        "N_G(U) fixes {}, so it lies in a proper parabolic".format(
            formatter.format_flag(report.fixed_flag)
        ),
    ]
    lines.extend(
        "  {} {}".format(Emoji.SUCCESS.value if ok else Emoji.FAILURE.value, check)
        for check, ok in sorted(report.checks.items())
    )
    payload = {
        "group": spec.name,
        "order": report.U.order,
        "normalizer_order": report.normalizer.order,
        "complex_normalizer_order": report.complex_normalizer.order,
        "fixed_flag": formatter.flag_to_json(report.fixed_flag),
        "checks": dict(sorted(report.checks.items())),
    }
    return payload, lines, True


def cmd_campaign(args, config):
    catalog = ingest_catalog(args.catalog, config)
    report = run_campaign(catalog, config)
    if args.out:
        report.write(args.out)
    emoji = Emoji.SUCCESS.value if report.passed else Emoji.FAILURE.value
    lines = ["{} {}".format(emoji, report.summary_line())]
    lines.extend("  {}".format(line) for line in report.family_lines())
    for record in list(report.records) + list(report.pair_records):
        for check, result in sorted(record["checks"].items()):
            outcome = Outcome(result["outcome"])
            if outcome in (Outcome.FAIL, Outcome.DISAGREE):
                name = record.get("name") or "{} in {}".format(record["normal"], record["over"])
                lines.append("  {} {} {}: {}".format(outcome.emoji, name, check, result["detail"]))
    return report.to_json(), lines, report.passed


def cmd_catalog(args, config):
    field = field_make(args.q)
    catalog = generate_catalog(
        field, args.n, args.mode, seed=config.seed, count=args.count, k=args.k, config=config
    )
    if args.out:
        write_catalog(catalog, args.out)
    lines = [
        "{} entries, {} normal pairs, {} Loewy pairs{}".format(
            len(catalog),
            len(catalog.pairs),
            len(catalog.loewy),
            " written to {}".format(args.out) if args.out else "",
        )
    ]
    return catalog.to_json(), lines, True


COMMANDS = {
    "complex": cmd_complex,
    "crcheck": cmd_crcheck,
    "centre": cmd_centre,
    "homology": cmd_homology,
    "loewy": cmd_loewy,
    "fixedform": cmd_fixedform,
    "convex": cmd_convex,
    "boreltits": cmd_boreltits,
    "campaign": cmd_campaign,
    "catalog": cmd_catalog,
}
WRITES_OWN_OUTPUT = ("campaign", "catalog")


def generate_human_output(lines):
    return "\n".join(lines)


def generate_json_output(payload):
    return json.dumps(payload, sort_keys=True, indent=2)


def main(args):
    config = build_config(args)
    payload, lines, ok = COMMANDS[args.command](args, config)
    if args.json:
        output = generate_json_output(payload)
    else:
        output = generate_human_output(lines)
    if args.out and args.command not in WRITES_OWN_OUTPUT:
        with open(args.out, "w") as f:
            f.write(output)
            f.write("\n")
    print(output)
    return ok


def run(argv=None):
    """Exit status: 0 success, 1 failed or negative assertive verdict, 2 usage or input error."""
    parser = CentreArgumentParser()
    try:
        args = parser.parse_args(argv)
    except CentreArgumentParser.ArgumentCombinationError as e:
        parser.print_usage(sys.stderr)
        print("error: {}".format(e), file=sys.stderr)
        return 2
    configure_logging(args.debug)

    try:
        ok = main(args)
    except (InputError, CapacityError, OSError, ValueError) as e:
        LOG.error(str(e))
        return 2
    except (PreconditionError, VerificationFailure) as e:
        LOG.error(str(e))
        for name, value in sorted(getattr(e, "verdicts", {}).items()):
            LOG.error("  {}: {}".format(name, value))
        return 1
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(run())
