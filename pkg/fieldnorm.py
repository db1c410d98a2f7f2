#!/usr/bin/env python3
"""
fieldnorm - field-normalized research productivity indicators

Usage:
    python fieldnorm.py <command> [options]

Examples:
    python fieldnorm.py validate --corpus-dir data/italy --coverage data/italy/coverage.csv
    python fieldnorm.py stats --corpus-dir data/italy --years 2001-2003
    python fieldnorm.py compare --corpus-dir data/italy --format json --output table3.json
    python fieldnorm.py sector --countries countries.csv --reference I --reference-public-pi 0.82
    python fieldnorm.py synth --scenario ab --out-dir /tmp/ab

Exit codes: 0 success, 1 validation/schema/domain error, 2 usage error or unreadable file.
"""

import argparse
import logging
import sys
from dataclasses import replace
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

# Add parent directory to path for imports
sys.path.insert(0, str(Path(__file__).parent))

from core.config import Config
from core.errors import CorpusError, FieldnormError, RankingError
from core.reporting import Report, write_report
from analytics.corpus import (
    Corpus,
    coverage_screen,
    excluded_areas,
    load_corpus,
    load_coverage,
    validate_corpus,
    write_corpus,
)
from analytics.corpus.loader import AUTHORSHIPS_FILE, PUBLICATIONS_FILE, RESEARCHERS_FILE, TAXONOMY_FILE
from analytics.indicators import CountingMode, Normalizer, Scope, area_summary, intensity_table, theta_table
from analytics.ranking import distortion_report, distortion_summary, rank_units
from analytics.sector import calibrate_private_intensity, load_countries, sector_comparison_table
from analytics.synth import ab_config, default_config, generate_corpus, load_synth_config, table1_corpus

logger = logging.getLogger("fieldnorm")

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

CORPUS_COMMANDS = ("validate", "intensity", "stats", "normalize", "rank", "compare")


class UsageError(Exception):
    """Bad combination of command-line options"""


def configure_logging(verbose: bool = False) -> None:
    """Send log records to stderr; reports never contain log output"""
    level = logging.DEBUG if verbose else Config.get_log_level()
    root = logging.getLogger()
    for handler in list(root.handlers):
        if getattr(handler, "_fieldnorm", False):
            root.removeHandler(handler)
    handler = logging.StreamHandler(sys.stderr)
    handler._fieldnorm = True
    handler.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s"))
    root.addHandler(handler)
    root.setLevel(level)
    logger.debug("Settings loaded from %s", Config.get_env_source() or "the process environment")


def parse_years(text: str) -> Tuple[int, int]:
    """FROM-TO, or a single year"""
    parts = text.split("-")
    try:
        if len(parts) == 1:
            year = int(parts[0])
            return (year, year)
        if len(parts) == 2:
            start, end = int(parts[0]), int(parts[1])
            if start <= end:
                return (start, end)
    except ValueError:
        pass
    raise argparse.ArgumentTypeError(f"expected FROM-TO with FROM <= TO, got {text!r}")


class FieldnormToolkit:
    """
    Runs one subcommand and produces its report.

    Each cmd_* method returns (report, exit code); the report is written
    by run() in the requested format.
    """

    def __init__(self, args: argparse.Namespace):
        self.args = args
        self.fmt = args.format or Config.get_format()
        self.inputs: Dict[str, Path] = {}
        self.notes: List[str] = []

    # ============= CORPUS INPUTS =============

    def corpus_paths(self) -> Tuple[Path, Path, Path, Optional[Path]]:
        args = self.args
        if args.corpus_dir:
            base = Path(args.corpus_dir)
            if not base.is_dir():
                raise FileNotFoundError(f"corpus directory not found: {base}")
            authorships = base / AUTHORSHIPS_FILE
            return (
                base / TAXONOMY_FILE,
                base / RESEARCHERS_FILE,
                base / PUBLICATIONS_FILE,
                authorships if authorships.exists() else None,
            )
        if not (args.taxonomy and args.researchers and args.publications):
            raise UsageError("give --corpus-dir or all of --taxonomy, --researchers and --publications")
        return (
            Path(args.taxonomy),
            Path(args.researchers),
            Path(args.publications),
            Path(args.authorships) if args.authorships else None,
        )

    def load(self) -> Corpus:
        taxonomy, researchers, publications, authorships = self.corpus_paths()
        self.inputs.update(taxonomy=taxonomy, researchers=researchers, publications=publications)
        if authorships is not None:
            self.inputs["authorships"] = authorships
        for path in self.inputs.values():
            if not path.is_file():
                raise FileNotFoundError(f"input file not found: {path}")

        exclude: List[str] = []
        if self.args.coverage:
            self.inputs["coverage"] = Path(self.args.coverage)
            flags = coverage_screen(load_coverage(self.args.coverage), self.threshold())
            exclude = excluded_areas(flags)
            if exclude:
                self.notes.append(f"excluded for low coverage: {', '.join(exclude)}")

        return load_corpus(
            taxonomy, researchers, publications, authorships,
            years=self.args.years, exclude_das=exclude or None,
        )

    def load_valid(self) -> Corpus:
        """Load and refuse a corpus with validation errors"""
        corpus = self.load()
        report = validate_corpus(corpus)
        if not report.accepted:
            first = report.errors[0]
            more = f" (+{len(report.errors) - 1} more)" if len(report.errors) > 1 else ""
            raise FieldnormError(f"corpus rejected: {first.message} {first.ref_id}".rstrip() + more, first.code)
        return corpus

    def threshold(self) -> float:
        if self.args.threshold is not None:
            return self.args.threshold
        return Config.get_coverage_threshold()

    def counting(self) -> CountingMode:
        mode = CountingMode(self.args.counting)
        if mode is CountingMode.QUALITY_WEIGHTED:
            self.notes.append(mode.label)
        return mode

    def new_report(self, columns: Sequence[str], **config) -> Report:
        echo = {}
        if self.args.command in CORPUS_COMMANDS:
            echo["years"] = "-".join(map(str, self.args.years)) if self.args.years else "all"
        echo.update(config)
        return Report(self.args.command, list(columns), config=echo, inputs=dict(self.inputs), notes=self.notes)

    # ============= COMMANDS =============

    def cmd_validate(self) -> Tuple[Report, int]:
        columns = ["severity", "code", "ref_id", "row", "message"]
        try:
            corpus = self.load()
        except CorpusError as e:
            report = self.new_report(columns)
            for issue in e.issues:
                report.add_row("error", issue.code, issue.ref_id, issue.row, issue.describe())
            print(f"fieldnorm validate: {e}", file=sys.stderr)
            return report, EXIT_FAILURE

        result = validate_corpus(corpus)
        report = self.new_report(columns, threshold=self.threshold() if self.args.coverage else None)
        for finding in result.errors:
            report.add_row("error", finding.code, finding.ref_id, None, finding.message)
        for finding in result.warnings:
            report.add_row("warning", finding.code, finding.ref_id, None, finding.message)

        if self.args.coverage:
            for flag in coverage_screen(load_coverage(self.args.coverage), self.threshold()):
                code = "COVERAGE_OK" if flag.passes else "LOW_COVERAGE"
                severity = "info" if flag.passes else "warning"
                report.add_row(severity, code, flag.da_id, None, f"coverage ratio {flag.ratio:.4f}")

        n_sds, n_researchers, n_pubs = corpus.counts()
        report.notes.append(f"{n_sds} SDs, {n_researchers} researchers, {n_pubs} publications")
        per_area = corpus.researchers_per_area()
        report.notes.append("researchers per area: " + ", ".join(f"{da}={n}" for da, n in per_area.items()))
        if not result.accepted:
            codes = ", ".join(sorted(set(result.codes())))
            print(f"fieldnorm validate: corpus rejected: {codes}", file=sys.stderr)
            return report, EXIT_FAILURE
        return report, EXIT_OK

    def cmd_intensity(self) -> Tuple[Report, int]:
        corpus = self.load_valid()
        scope = Scope(self.args.level)
        mode = self.counting()
        table = intensity_table(corpus, scope, mode)
        report = self.new_report(
            ["unit_id", scope.column, "da_id", "researchers", "publications", "intensity"],
            level=scope.value, counting=mode.value,
        )
        for cell in table.cells:
            report.add_row(cell.unit_id, cell.scope_id, cell.da_id, cell.researcher_count, cell.publication_count, cell.intensity)
        return report, EXIT_OK

    def cmd_stats(self) -> Tuple[Report, int]:
        corpus = self.load_valid()
        mode = self.counting()
        report = self.new_report(
            [
                "da_id", "da_name", "units", "researchers", "researchers_rank", "publications",
                "publications_rank", "pi", "pi_rank", "n_sds", "min", "max", "mean", "median",
                "std_dev", "variation_coeff", "fertility_ratio",
            ],
            counting=mode.value,
        )
        if mode is CountingMode.WHOLE:
            report.notes.append("area totals count each publication once; theta keeps the summed unit credits as its baseline")
        for row in area_summary(corpus, mode):
            s = row.stats
            report.add_row(
                row.da_id, row.da_name, row.units, row.researchers, row.researchers_rank,
                row.publications, row.publications_rank, row.intensity, row.intensity_rank,
                s.n_sds, s.min, s.max, s.mean, s.median, s.std_dev, s.variation_coeff, s.fertility_ratio,
            )
        return report, EXIT_OK

    def cmd_normalize(self) -> Tuple[Report, int]:
        corpus = self.load_valid()
        mode = self.counting()
        report = self.new_report(["unit_id", "da_id", "theta"], counting=mode.value)
        for row in theta_table(corpus, mode):
            report.add_row(row.unit_id, row.da_id, row.theta)
        return report, EXIT_OK

    def cmd_rank(self) -> Tuple[Report, int]:
        corpus = self.load_valid()
        scope = Scope(self.args.level)
        mode = self.counting()
        tolerance = Config.get_tie_tolerance()
        report = self.new_report(
            [scope.column, "unit_id", "value", "rank"],
            level=scope.value, by=self.args.by, counting=mode.value, tie_tolerance=tolerance,
        )

        table = intensity_table(corpus, scope, mode)
        normalizer = Normalizer(corpus, mode) if self.args.by == "theta" else None
        for scope_id in table.scope_ids():
            if normalizer is None:
                values = table.values(scope_id)
            elif scope is Scope.DA:
                values = {u: t.theta for u, t in normalizer.area_thetas(scope_id).items()}
            elif scope_id in normalizer.degenerate_sds:
                continue
            else:
                values = {c.unit_id: normalizer.pqcn(c.unit_id, scope_id) for c in table.cells_for(scope_id)}
            if not values:
                continue
            for entry in rank_units(values, scope_id, tolerance).entries:
                report.add_row(scope_id, entry.unit_id, entry.value, entry.rank)
        return report, EXIT_OK

    def cmd_compare(self) -> Tuple[Report, int]:
        corpus = self.load_valid()
        mode = self.counting()
        include = self.args.include_unchanged
        config = {"counting": mode.value, "include_unchanged": include, "tie_tolerance": Config.get_tie_tolerance()}

        if not self.args.units:
            report = self.new_report(
                ["da_id", "da_name", "n_sds", "n_units", "n_changed", "max_variation",
                 "average_variation", "median_variation"],
                **config,
            )
            for row in distortion_summary(corpus, mode, include):
                c = row.comparison
                report.add_row(
                    row.da_id, row.da_name, row.n_sds, c.n_units, c.changed_label(),
                    c.max_variation, c.average_variation, c.median_variation,
                )
            return report, EXIT_OK

        report = self.new_report(
            ["da_id", "unit_id", "aggregate_pi", "aggregate_rank", "theta", "normalized_rank", "variation"],
            units=True, **config,
        )
        for da_id in corpus.taxonomy.da_ids():
            try:
                aggregate, normalized, _ = distortion_report(corpus, da_id, mode, include)
            except RankingError as e:
                if e.code != "INSUFFICIENT_UNITS":
                    raise
                continue
            theta = {e.unit_id: e for e in normalized.entries}
            for entry in sorted(aggregate.entries, key=lambda e: e.unit_id):
                other = theta[entry.unit_id]
                report.add_row(
                    da_id, entry.unit_id, entry.value, entry.rank, other.value, other.rank,
                    abs(entry.rank - other.rank),
                )
        return report, EXIT_OK

    def cmd_sector(self) -> Tuple[Report, int]:
        args = self.args
        self.inputs["countries"] = Path(args.countries)
        if not self.inputs["countries"].is_file():
            raise FileNotFoundError(f"input file not found: {args.countries}")
        records = load_countries(args.countries)

        config = {"reference": args.reference}
        if args.reference_public_pi is not None:
            config["reference_public_pi"] = args.reference_public_pi
            rows = sector_comparison_table(records, args.reference, reference_public_pi=args.reference_public_pi)
        else:
            if args.private_pubs is None or args.private_researchers is None:
                raise UsageError(
                    "give --reference-public-pi or both --private-pubs and --private-researchers"
                )
            config.update(private_pubs=args.private_pubs, private_researchers=args.private_researchers)
            pi = calibrate_private_intensity(args.private_pubs, args.private_researchers)
            rows = sector_comparison_table(records, args.reference, private_intensity=pi)

        report = self.new_report(
            ["country_id", "total_pi", "total_rank", "public_share_percent", "public_pi", "public_rank",
             "private_intensity", "zero_private_pi", "clamped"],
            **config,
        )
        for r in rows:
            report.add_row(
                r.country_id, r.total_intensity, r.rank_total, r.public_share * 100, r.public_intensity,
                r.rank_public, r.private_intensity_used, r.zero_private_intensity, r.clamped,
            )
            if r.clamped:
                report.notes.append(f"{r.country_id}: negative public intensity clamped to 0")
        return report, EXIT_OK

    def cmd_synth(self) -> Tuple[Report, int]:
        args = self.args
        config_echo = {}
        if args.config:
            self.inputs["config"] = Path(args.config)
            if not self.inputs["config"].is_file():
                raise FileNotFoundError(f"input file not found: {args.config}")
            synth = load_synth_config(args.config)
        elif args.scenario == "table1":
            if args.seed is not None:
                raise UsageError("--seed has no effect on the table1 scenario, which is not random")
            synth = None
        elif args.scenario == "ab":
            synth = ab_config()
        else:
            synth = default_config()
        config_echo["scenario"] = args.scenario or "config"

        if synth is None:
            corpus = table1_corpus()
        else:
            if args.seed is not None:
                synth = replace(synth, seed=args.seed)
            config_echo.update(seed=synth.seed, noise=synth.noise.value)
            corpus = generate_corpus(synth)

        written = write_corpus(corpus, args.out_dir)
        logger.info("Wrote %s", ", ".join(str(p) for p in written))

        report = self.new_report(["da_id", "units", "researchers", "publications", "pi"], **config_echo)
        for row in area_summary(corpus):
            report.add_row(row.da_id, row.units, row.researchers, row.publications, row.intensity)
        report.notes.extend(f"wrote {p.name}" for p in written)
        return report, EXIT_OK

    # ============= DRIVER =============

    def run(self) -> int:
        handler = getattr(self, f"cmd_{self.args.command}")
        report, code = handler()
        write_report(report, self.fmt, self.args.output)
        return code


# =============================================================================
# Argument parsing
# =============================================================================


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", "-o", help="Report path (default: stdout)")
    common.add_argument("--format", choices=Config.FORMATS, help="Report format (default: FIELDNORM_FORMAT or tsv)")
    common.add_argument("--verbose", "-v", action="store_true", help="Debug logging on stderr")

    corpus = argparse.ArgumentParser(add_help=False)
    corpus.add_argument("--corpus-dir", help="Directory with taxonomy/researchers/publications/authorships.csv")
    corpus.add_argument("--taxonomy")
    corpus.add_argument("--researchers")
    corpus.add_argument("--publications")
    corpus.add_argument("--authorships")
    corpus.add_argument("--years", type=parse_years, help="Publication year window FROM-TO")
    corpus.add_argument("--coverage", help="coverage.csv; areas below --threshold are excluded")
    corpus.add_argument("--threshold", type=float, help="Coverage threshold (default 0.90)")

    counting = argparse.ArgumentParser(add_help=False)
    counting.add_argument("--counting", choices=[m.value for m in CountingMode], default=CountingMode.WHOLE.value)

    parser = argparse.ArgumentParser(
        prog="fieldnorm",
        description="Field-normalized research productivity indicators",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=__doc__.split("Examples:")[1].split("Exit codes")[0],
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {Config.VERSION}")
    sub = parser.add_subparsers(dest="command", metavar="command")
    sub.required = True

    sub.add_parser("validate", parents=[common, corpus], help="Check corpus inputs")

    p = sub.add_parser("intensity", parents=[common, corpus, counting], help="Publication intensity per unit")
    p.add_argument("--level", choices=[s.value for s in Scope], default=Scope.DA.value)

    sub.add_parser("stats", parents=[common, corpus, counting], help="Per-area summary and SD spread")
    sub.add_parser("normalize", parents=[common, corpus, counting], help="Field-normalized area intensity")

    p = sub.add_parser("rank", parents=[common, corpus, counting], help="Rank units per SD or area")
    p.add_argument("--level", choices=[s.value for s in Scope], default=Scope.DA.value)
    p.add_argument("--by", choices=["pi", "theta"], default="pi")

    p = sub.add_parser("compare", parents=[common, corpus, counting], help="Aggregate vs normalized rankings")
    p.add_argument("--level", choices=[Scope.DA.value], default=Scope.DA.value)
    p.add_argument("--units", action="store_true", help="Per-unit ranks instead of per-area statistics")
    p.add_argument("--include-unchanged", action="store_true", help="Average and median over all units")

    p = sub.add_parser("sector", parents=[common], help="Public/private decomposition of national intensity")
    p.add_argument("--countries", required=True, help="countries.csv")
    p.add_argument("--reference", required=True, help="country_id used to calibrate private intensity")
    calibration = p.add_mutually_exclusive_group(required=True)
    calibration.add_argument("--reference-public-pi", type=float)
    calibration.add_argument("--private-pubs", type=float)
    p.add_argument("--private-researchers", type=float)

    p = sub.add_parser("synth", parents=[common], help="Generate a synthetic corpus")
    source = p.add_mutually_exclusive_group(required=True)
    source.add_argument("--config", help="SynthConfig as JSON or YAML")
    source.add_argument("--scenario", choices=["default", "ab", "table1"])
    p.add_argument("--seed", type=int, help="Override the seed (not accepted with --scenario table1)")
    p.add_argument("--out-dir", required=True)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """CLI interface for the toolkit"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    try:
        configure_logging(args.verbose)
        return FieldnormToolkit(args).run()
    except UsageError as e:
        print(f"fieldnorm {args.command}: usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print(f"fieldnorm {args.command}: cannot read input: {e}", file=sys.stderr)
        return EXIT_USAGE
    except FieldnormError as e:
        print(f"fieldnorm {args.command}: {e}", file=sys.stderr)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
