"""Command-line front end: triway project | ada | cluster.

Loads a dataset (long CSV or JSON), optionally transforms it, runs the
requested pipeline, and writes a JSON result (plus an optional SVG for
``project``).  Output is byte-identical across reruns on the same input.
Exit codes: 0 result written, 1 runtime error, 2 usage error.
"""

import argparse
import csv
import os
import sys

from . import _jsonio
from .archetypoid import ada, elbow, rss_curve
from .clustering import auto_k, pam
from .dataset import (load_json, load_long_csv, power_transform,
                      rank_transform)
from .svgplot import DEFAULT_PALETTE, render_embedding
from .threeway import correlate_covariate, project

PALETTE_ENV = "TRIWAY_COLOR_PALETTE"


def _k_value(text: str):
    if text == "auto":
        return "auto"
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"k must be a positive integer or 'auto', got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"k must be >= 1, got {value}")
    return value


def _transform_spec(text: str):
    if text == "none":
        return ("none",)
    if text == "rank:global":
        return ("rank", "global")
    if text == "rank:occasion":
        return ("rank", "per_occasion")
    if text.startswith("power:"):
        try:
            p = float(text.split(":", 1)[1])
        except ValueError:
            raise argparse.ArgumentTypeError(
                f"bad power transform {text!r}") from None
        if p <= 0:
            raise argparse.ArgumentTypeError("power must be positive")
        return ("power", p)
    raise argparse.ArgumentTypeError(
        f"transform must be none, rank:global, rank:occasion, or power:<p>, "
        f"got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="triway",
        description="Embed three-way dissimilarity data into the plane and "
                    "extract archetypal profiles and clusters.")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", required=True, help="input data file")
    common.add_argument("--format", choices=("csv", "json"), default=None,
                        help="input format (default: inferred from extension)")
    common.add_argument("--conditionality",
                        choices=("conditional", "unconditional"),
                        default="unconditional")
    common.add_argument("--symmetry",
                        choices=("auto", "symmetric", "asymmetric"),
                        default="auto")
    common.add_argument("--transform", type=_transform_spec,
                        default=("none",),
                        help="none | rank:global | rank:occasion | power:<p>")
    common.add_argument("--similarity-max", type=float, default=None,
                        help="treat entries as similarities with this maximum")
    common.add_argument("--dims", type=int, default=2)
    common.add_argument("--out", required=True, help="output JSON path")

    p_project = sub.add_parser("project", parents=[common],
                               help="embed and emit profile coordinates")
    p_project.add_argument("--svg", default=None, help="optional SVG scatter path")
    p_project.add_argument("--covariate", default=None,
                           help="CSV (label,value) to correlate with the axes")

    p_ada = sub.add_parser("ada", parents=[common],
                           help="archetypoid analysis of the profile matrix")
    p_ada.add_argument("--k", type=_k_value, default="auto",
                       help="archetypoid count, or 'auto' for the elbow rule")
    p_ada.add_argument("--kmax", type=int, default=None,
                       help="largest k for the rss curve (auto mode)")

    p_cluster = sub.add_parser("cluster", parents=[common],
                               help="k-medoid clustering of the profile matrix")
    p_cluster.add_argument("--k", type=_k_value, default="auto",
                           help="cluster count, or 'auto' to maximize silhouette")
    p_cluster.add_argument("--kmax", type=int, default=None,
                           help="largest k searched in auto mode")
    return parser


def _load_dataset(args):
    fmt = args.format
    if fmt is None:
        fmt = "json" if str(args.input).lower().endswith(".json") else "csv"
    loader = load_json if fmt == "json" else load_long_csv
    dataset = loader(args.input,
                     similarity_max=args.similarity_max,
                     conditionality=args.conditionality,
                     declared_symmetry=args.symmetry)
    spec = args.transform
    if spec[0] == "rank":
        dataset = rank_transform(dataset, scope=spec[1])
    elif spec[0] == "power":
        dataset = power_transform(dataset, spec[1])
    return dataset


def _read_covariate(path, labels):
    values = {}
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or tuple(h.strip() for h in header) != ("label", "value"):
            raise ValueError(f"{path}: expected header 'label,value'")
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 2:
                raise ValueError(f"{path}: line {lineno}: expected 2 fields")
            label, raw = row[0].strip(), row[1].strip()
            if label in values:
                raise ValueError(f"{path}: duplicate covariate label {label!r}")
            try:
                values[label] = float(raw)
            except ValueError:
                raise ValueError(
                    f"{path}: line {lineno}: non-numeric value {raw!r}") from None
    missing = [lab for lab in labels if lab not in values]
    if missing:
        raise ValueError(f"{path}: covariate missing labels {missing}")
    extra = [lab for lab in values if lab not in labels]
    if extra:
        raise ValueError(f"{path}: covariate has unknown labels {extra}")
    return [values[lab] for lab in labels]


def _palette():
    raw = os.environ.get(PALETTE_ENV)
    if not raw:
        return DEFAULT_PALETTE
    colors = tuple(c.strip() for c in raw.split(",") if c.strip())
    return colors or DEFAULT_PALETTE


def _write_result(path, record) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(_jsonio.dumps(record))
        fh.write("\n")


def cmd_project(args) -> None:
    dataset = _load_dataset(args)
    profile = project(dataset, dims=args.dims)
    record = profile.to_record()
    if args.covariate:
        covariate = _read_covariate(args.covariate, profile.labels)
        correlations = []
        for dim in range(1, profile.dims + 1):
            direction = "both" if profile.symmetry == "asymmetric" else "to"
            for item in correlate_covariate(profile, covariate,
                                            dimension=dim, direction=direction):
                correlations.append({
                    "occasion": item.occasion,
                    "direction": item.direction,
                    "dimension": dim,
                    "r": item.r,
                })
        record["covariate_correlations"] = correlations
    if args.svg:
        svg = render_embedding(record, palette=_palette(),
                               title=os.path.basename(str(args.input)))
        with open(args.svg, "w", encoding="utf-8") as fh:
            fh.write(svg)
    _write_result(args.out, record)


def cmd_ada(args) -> None:
    dataset = _load_dataset(args)
    profile = project(dataset, dims=args.dims)
    Y = profile.Y
    if args.k == "auto":
        k_max = args.kmax if args.kmax is not None else Y.shape[0]
        curve = rss_curve(Y, k_max)
        choice = elbow(curve)
        result = ada(Y, choice.k)
        record = result.to_record(profile.labels)
        record["curve"] = [[k, rss] for k, rss in curve]
        record["elbow"] = {"k": choice.k, "no_elbow": choice.no_elbow,
                           "rule": "max-chord-distance"}
    else:
        result = ada(Y, args.k)
        record = result.to_record(profile.labels)
    _write_result(args.out, record)


def cmd_cluster(args) -> None:
    dataset = _load_dataset(args)
    profile = project(dataset, dims=args.dims)
    Y = profile.Y
    if args.k == "auto":
        k_max = args.kmax if args.kmax is not None else Y.shape[0] - 1
        _, result, _ = auto_k(Y, k_max)
    else:
        result = pam(Y, args.k)
    _write_result(args.out, result.to_record(profile.labels))


_COMMANDS = {"project": cmd_project, "ada": cmd_ada, "cluster": cmd_cluster}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "svg", None) and args.svg == args.out:
        parser.error("--out and --svg paths must be distinct")
    try:
        _COMMANDS[args.command](args)
    except (ValueError, OSError) as exc:
        print(f"triway: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
