"""Command-line front end.

Exit status: 0 when every check passes, 2 when the report records a
violation (or a certificate that does not pass), 1 for usage and input
errors.  Output goes to ``-o`` (default stdout); logging goes to stderr.
"""

from __future__ import annotations

import argparse
import logging
import math
import sys
from typing import Any, Sequence

from .audit import run_full_audit
from .certificates import certify_clover, certify_kifli, emit_angle_plot
from .discharging import run_discharging, verify_density_bound
from .exceptions import HypothesesUnmet, PennyError
from .fields import ChoiceField, FractionField, IntegerField, StringField
from .forms import Form
from .generators import (
    MAX_MAGNITUDE,
    densify_search,
    fixture_instance,
    gen_hex_lattice,
    gen_perturbed,
    gen_random,
)
from .io import (
    declared_document,
    instance_document,
    read_point_set,
    write_csv,
    write_json,
)
from .validators import OpenInterval
from .version import __version__

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VIOLATIONS = 2


# ── Parameter forms ──────────────────────────────────────────────


class SeededForm(Form):
    seed = IntegerField("Seed", initial=0, minimum=0)


class DischargeParams(Form):
    title = "discharge"

    variant = ChoiceField("Variant", choices=["weak", "main"], initial="main", required=True)
    q = FractionField("q", validators=[OpenInterval(0, 1)])


class CertifyParams(Form):
    title = "certify"

    target = ChoiceField("Target", choices=["kifli", "clover"], required=True)
    eps = FractionField("eps", validators=[OpenInterval(0, None)])
    delta = FractionField("delta", validators=[OpenInterval(0, None)])
    grid = IntegerField("Grid", minimum=1)

    def clean_form(self) -> bool:
        if self.target.value == "kifli":
            for name in ("eps", "delta"):
                if self.fields[name].value is not None:
                    self.add_error(name, "only the clover certificate takes this parameter")
            if self.grid.value is not None and self.grid.value < 8:
                self.add_error("grid", "the kifli grid must be at least 8")
        elif self.eps.value is not None and not float(self.eps.value) < math.pi / 6:
            self.add_error("eps", "eps must be strictly less than π/6")
        return True


class HexParams(Form):
    k = IntegerField("k", required=True, minimum=0)


class PerturbedParams(SeededForm):
    k = IntegerField("k", required=True, minimum=0)
    magnitude = FractionField(
        "Magnitude", initial="1/1000", required=True, validators=[OpenInterval(0, MAX_MAGNITUDE)]
    )


class RandomParams(SeededForm):
    n = IntegerField("n", required=True, minimum=2)
    scale = IntegerField("Scale", minimum=1)


class DensifyParams(SeededForm):
    n = IntegerField("n", required=True, minimum=3)
    iterations = IntegerField("Iterations", minimum=0)


class FixtureParams(Form):
    name = StringField("Fixture name", required=True)


class PlotParams(Form):
    samples = IntegerField("Samples", initial=1001, minimum=2)


def _params(form_class: type[Form], args: argparse.Namespace, *names: str) -> dict[str, Any]:
    data = {name: getattr(args, name) for name in names if getattr(args, name, None) is not None}
    return form_class(data, title=args.command).cleaned()


# ── Subcommands ──────────────────────────────────────────────────


def cmd_build(args: argparse.Namespace) -> int:
    point_set = read_point_set(args.input)
    g = point_set.graph(method=args.method)
    gp = g.general_position()
    summary = g.summary()
    summary["edges"] = sorted(list(e) for e in g.edges)
    summary["collinear_triples"] = [list(t) for t in gp.collinear_triples]
    write_json(args.output, summary)
    return EXIT_OK


def cmd_audit(args: argparse.Namespace) -> int:
    g = read_point_set(args.input).graph()
    report = run_full_audit(g)
    document = {"graph": g.summary(), "audit": report.to_dict()}
    write_json(args.output, document)
    return EXIT_OK if report.passed else EXIT_VIOLATIONS


def cmd_discharge(args: argparse.Namespace) -> int:
    params = _params(DischargeParams, args, "variant", "q")
    g = read_point_set(args.input).graph()
    document: dict[str, Any] = {"graph": g.summary()}
    try:
        ledger = run_discharging(g, params["variant"], q=params["q"])
    except HypothesesUnmet:
        ledger = None
    else:
        document["ledger"] = ledger.to_dict()
    verdict = verify_density_bound(g, ledger, params["variant"])
    document["bound"] = verdict.to_dict()
    write_json(args.output, document)
    if not verdict.applicable:
        return EXIT_OK
    return EXIT_OK if verdict.passed else EXIT_VIOLATIONS


def cmd_certify(args: argparse.Namespace) -> int:
    params = _params(CertifyParams, args, "target", "eps", "delta", "grid")
    if params["target"] == "kifli":
        cert = certify_kifli(grid=params["grid"])
    else:
        cert = certify_clover(params["eps"], params["delta"], params["grid"])
    logger.info("%s certificate: %s", params["target"], cert.verdict)
    write_json(args.output, cert.to_dict())
    return EXIT_OK if cert.passed else EXIT_VIOLATIONS


def cmd_gen(args: argparse.Namespace) -> int:
    kind = args.kind
    if kind == "hex":
        p = _params(HexParams, args, "k")
        document = instance_document(gen_hex_lattice(p["k"]))
    elif kind == "perturbed":
        p = _params(PerturbedParams, args, "k", "magnitude", "seed")
        document = instance_document(gen_perturbed(p["k"], p["magnitude"], p["seed"]))
    elif kind == "random":
        p = _params(RandomParams, args, "n", "scale", "seed")
        document = instance_document(gen_random(p["n"], p["seed"], p["scale"]))
    elif kind == "densify":
        p = _params(DensifyParams, args, "n", "iterations", "seed")
        result = densify_search(p["n"], p["iterations"], p["seed"])
        document = instance_document(result.instance)
        if args.summary:
            write_json(args.summary, result.to_dict())
    else:
        p = _params(FixtureParams, args, "name")
        spec, fixture = fixture_instance(p["name"])
        document = declared_document(fixture.coords, fixture.edges, spec)
    write_json(args.output, document)
    return EXIT_OK


def cmd_plot(args: argparse.Namespace) -> int:
    p = _params(PlotParams, args, "samples")
    table = emit_angle_plot(p["samples"])
    write_csv(args.output, ["x", "angle"], ([repr(float(x)), repr(float(a))] for x, a in table))
    return EXIT_OK


# ── Parser ───────────────────────────────────────────────────────


class ArgumentParser(argparse.ArgumentParser):
    """argparse with usage errors mapped to exit status 1."""

    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> ArgumentParser:
    parser = ArgumentParser(
        prog="penny-audit",
        description="Build, audit and certify penny graphs.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument(
        "-v", "--verbose", action="count", default=0, help="-v for progress, -vv for detail"
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=ArgumentParser)

    def output(p: argparse.ArgumentParser) -> None:
        p.add_argument("-o", "--output", default="-", help="output file ('-' for stdout)")

    p = sub.add_parser("build", help="build the penny graph and write its summary")
    p.add_argument("input", help="point-set file ('-' for stdin)")
    p.add_argument("--method", choices=["auto", "all_pairs", "grid"], default="auto")
    output(p)
    p.set_defaults(handler=cmd_build)

    p = sub.add_parser("audit", help="run every structural check")
    p.add_argument("input")
    output(p)
    p.set_defaults(handler=cmd_audit)

    p = sub.add_parser("discharge", help="run discharging and verify the density bound")
    p.add_argument("input")
    p.add_argument("--variant", choices=["weak", "main"], default="main")
    p.add_argument("--q", help="transfer unit as p/q (default: the variant's preset)")
    output(p)
    p.set_defaults(handler=cmd_discharge)

    p = sub.add_parser("certify", help="write an interval certificate")
    p.add_argument("target", choices=["kifli", "clover"])
    p.add_argument("--eps", help="clover endpoint segment width (default: auto-tuned)")
    p.add_argument("--delta", help="clover grid margin (default: auto-tuned)")
    p.add_argument("--grid", type=int, help="grid size")
    output(p)
    p.set_defaults(handler=cmd_certify)

    p = sub.add_parser("gen", help="write a generated point-set file")
    p.add_argument("kind", choices=["hex", "perturbed", "random", "densify", "fixture"])
    p.add_argument("--k", type=int, help="lattice radius")
    p.add_argument("--n", type=int, help="number of points")
    p.add_argument("--magnitude", help="perturbation bound as p/q (default 1/1000)")
    p.add_argument("--scale", type=int, help="side of the sampling square for random sets")
    p.add_argument("--iterations", type=int, help="annealing iterations (default 2000)")
    p.add_argument("--seed", type=int, help="random seed (default 0)")
    p.add_argument("--name", help="fixture name")
    p.add_argument("--summary", help="densify: also write the search summary here")
    output(p)
    p.set_defaults(handler=cmd_gen)

    p = sub.add_parser("plot", help="write a CSV table")
    p.add_argument("table", choices=["clover-angle"])
    p.add_argument("--samples", type=int, help="number of sample points (default 1001)")
    output(p)
    p.set_defaults(handler=cmd_plot)

    return parser


def configure_logging(verbosity: int) -> None:
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity > 1:
        level = logging.DEBUG
    logging.basicConfig(
        level=level,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
        force=True,
    )


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.verbose)
    try:
        return args.handler(args)
    except PennyError as e:
        print(f"{parser.prog}: error: {e.message}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
