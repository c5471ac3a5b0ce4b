import argparse
import logging

from enums.catalog_mode import CatalogMode
from utils import formatter
from utils.config import DEFAULT_AMBIENT_CAP, DEFAULT_CLOSURE_CAP

GROUP_COMMANDS = (
    "complex",
    "crcheck",
    "centre",
    "homology",
    "loewy",
    "fixedform",
    "boreltits",
    "convex",
)
FLAG_SET_COMMANDS = ("fixedform", "convex")


class CentreArgumentParser(argparse.ArgumentParser):
    def __init__(self):
        super().__init__(
            prog="tits-centre",
            description="Fixed-point subcomplexes of the building of GL_n(F_q) and their centres.",
        )
        self.add_argument(
            "--debug", "-d", action="store_true", help="Debug log level"
        )

        common = argparse.ArgumentParser(add_help=False)
        common.add_argument(
            "--json",
            action="store_true",
            help="Print the machine-readable JSON record instead of the human summary.",
        )
        common.add_argument(
            "--out", help="Also write the output (or the campaign report) to this file."
        )
        common.add_argument("--config", help="TOML file with a [centre] table of settings.")
        common.add_argument(
            "--cap-closure",
            type=self.TypeConverter.positive_int,
            help="Maximum number of group elements to enumerate (default {}).".format(
                DEFAULT_CLOSURE_CAP
            ),
        )
        common.add_argument(
            "--cap-ambient",
            type=self.TypeConverter.positive_int,
            help="Maximum q^(n^2) matrices scanned to enumerate GL_n(F_q) (default {}).".format(
                DEFAULT_AMBIENT_CAP
            ),
        )
        common.add_argument("--seed", type=int, help="Random seed (default 0).")
        common.add_argument(
            "--workers", type=self.TypeConverter.positive_int, help="Worker processes (default 1)."
        )

        group = argparse.ArgumentParser(add_help=False)
        group.add_argument("--q", type=int, help="Field order.")
        group.add_argument("--n", type=self.TypeConverter.positive_int, help="Dimension of V.")
        group.add_argument(
            "--gens",
            action="append",
            default=[],
            type=self.TypeConverter.matrix,
            metavar="ROWS",
            help=(
                "Generator as ';'-separated rows of ','-separated element codes,"
                " e.g. '1,1;0,1'. Repeatable."
            ),
        )
        group.add_argument(
            "--gens-file", help="Catalog file (or bundled catalog name) holding the group."
        )
        group.add_argument("--entry", help="Name of the catalog entry to use (default: the first).")

        commands = self.add_subparsers(
            dest="command", metavar="command", parser_class=argparse.ArgumentParser
        )
        commands.required = True
        for name, text in (
            ("complex", "Summarize X^H and the invariant lattice."),
            ("crcheck", "Three-way G-complete reducibility test."),
            ("centre", "Find a centre of a contractible X^H."),
        ):
            commands.add_parser(name, parents=[common, group], help=text)
        homology = commands.add_parser(
            "homology", parents=[common, group], help="Reduced integral homology of X^H."
        )
        homology.add_argument(
            "--full-building", action="store_true", help="Use the whole building instead of X^H."
        )
        loewy = commands.add_parser(
            "loewy", parents=[common, group], help="Socle and radical flags and their stability."
        )
        loewy.add_argument(
            "--over-gens",
            action="append",
            default=[],
            type=self.TypeConverter.matrix,
            metavar="ROWS",
            help="Generator of the normalizing group K (default K = H). Repeatable.",
        )
        loewy.add_argument("--over-entry", help="Catalog entry (in --gens-file) to use as K.")
        for name, text in (
            ("fixedform", "Decide whether a subcomplex is X^H for some H."),
            ("convex", "Decide whether a subcomplex is convex."),
        ):
            sub = commands.add_parser(name, parents=[common, group], help=text)
            sub.add_argument(
                "--flags-file",
                help="JSON {q, n, flags} file of flags (lists of member bases) instead of a group.",
            )
        commands.add_parser(
            "boreltits",
            parents=[common, group],
            help="Normalizer of a unipotent group in a parabolic.",
        )
        campaign = commands.add_parser(
            "campaign", parents=[common], help="Run every check over a catalog."
        )
        campaign.add_argument("catalog", help="Catalog file, or the name of a bundled catalog.")
        campaign.add_argument(
            "--cache",
            action="store_true",
            help="Reuse and store closures, lattices and homology on disk.",
        )
        catalog = commands.add_parser("catalog", parents=[common], help="Generate a catalog file.")
        catalog.add_argument("--q", type=int, required=True, help="Field order.")
        catalog.add_argument(
            "--n", type=self.TypeConverter.positive_int, required=True, help="Dimension of V."
        )
        catalog.add_argument(
            "--mode",
            required=True,
            choices=[m.value for m in CatalogMode],
            help="Population to generate.",
        )
        catalog.add_argument(
            "--count",
            type=self.TypeConverter.positive_int,
            help="Number of random groups (default 200).",
        )
        catalog.add_argument(
            "--k",
            type=self.TypeConverter.positive_int,
            default=2,
            help="Generators per random group.",
        )

    def parse_args(self, args=None, namespace=None):
        args = super().parse_args(args, namespace)
        self._validate_args(args)
        return args

    @classmethod
    def _validate_args(cls, args):
        if args.command not in GROUP_COMMANDS:
            return
        if args.gens and args.gens_file:
            raise cls.ArgumentCombinationError("Use either --gens or --gens-file, not both.")
        if args.entry and not args.gens_file:
            raise cls.ArgumentCombinationError(
                "--entry selects from --gens-file; pass the file too."
            )
        flag_set = args.command in FLAG_SET_COMMANDS and args.flags_file
        full_building = args.command == "homology" and args.full_building
        if flag_set and (args.gens or args.gens_file):
            raise cls.ArgumentCombinationError(
                "--flags-file replaces the group; drop --gens/--gens-file."
            )
        if full_building and (args.gens or args.gens_file):
            raise cls.ArgumentCombinationError("--full-building takes only --q and --n.")
        if not (args.gens or args.gens_file or flag_set or full_building):
            raise cls.ArgumentCombinationError("Give the group with --gens or --gens-file.")
        if (args.gens or full_building) and (args.q is None or args.n is None):
            raise cls.ArgumentCombinationError(
                "--q and --n are required with --gens and --full-building."
            )
        for g in args.gens + getattr(args, "over_gens", []):
            if args.n is not None and (len(g) != args.n or any(len(row) != args.n for row in g)):
                raise cls.ArgumentCombinationError(
                    "Generator {} is not {}x{}.".format(formatter.format_rows(g), args.n, args.n)
                )
        if args.command == "loewy" and args.over_entry and not args.gens_file:
            raise cls.ArgumentCombinationError(
                "--over-entry selects from --gens-file; pass the file too."
            )
        if args.command == "loewy" and args.over_entry and args.over_gens:
            raise cls.ArgumentCombinationError("Use either --over-gens or --over-entry, not both.")

    class TypeConverter:
        @classmethod
        def matrix(cls, text):
            try:
                rows = formatter.parse_matrix(text)
            except ValueError as e:
                msg = "Not a valid matrix: '{0}'.".format(text)
                logging.critical(e)
                raise argparse.ArgumentTypeError(msg)
            if not rows:
                raise argparse.ArgumentTypeError("Not a valid matrix: '{0}'.".format(text))
            return rows

        @classmethod
        def positive_int(cls, i):
            i = int(i)
            if i <= 0:
                msg = "Not a positive number: {0}".format(i)
                raise argparse.ArgumentTypeError(msg)
            return i

    class ArgumentCombinationError(Exception):
        pass
