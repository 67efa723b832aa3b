"""Command-line interface: ``ckspaces {classify,metric,curvature,verify}``.

Every command builds a :class:`Report` and prints it as deterministic JSON
(sorted keys, floats as ``%.12e``) or, with ``--pretty``, as a plain table.

Exit codes: 0 success, 1 verification failure, 2 malformed input,
3 point outside the chart domain, 4 degenerate metric.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, field
from typing import Any, Sequence

import numpy as np

from . import __version__
from .classify import classify_group
from .core import OmegaSignature, parse_signature, tolerance
from .errors import ChartDomainError, DegenerateMetricError, UnsupportedDimensionError
from .rank_one import (
    beltrami_metric,
    beltrami_to_weierstrass,
    foliation_report_rank1,
    is_metric_degenerate_rank1,
    parallel_metric,
    sectional_curvature_rank1,
    subsidiary_metric_rank1,
)
from .rank_two import (
    foliation_report_rank2,
    is_metric_degenerate_rank2,
    rank2_metric,
    sectional_curvature_rank2_origin,
    subsidiary_metric_rank2,
    tangent_vector,
)
from .verify import SUITES, run_suites

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_CHART_DOMAIN = 3
EXIT_DEGENERATE = 4


class UsageError(ValueError):
    """Malformed arguments detected after argparse (arity, values)."""


@dataclass
class Report:
    command: str
    signature: list[float]
    payload: dict[str, Any] = field(default_factory=dict)
    version: str = __version__

    def to_json(self) -> str:
        return dumps(
            {
                "command": self.command,
                "signature": self.signature,
                "payload": self.payload,
                "version": self.version,
            }
        )


def _plain(value: Any) -> Any:
    """Convert numpy containers and scalars to built-in Python values."""
    if isinstance(value, np.ndarray):
        return [_plain(v) for v in value.tolist()]
    if isinstance(value, (np.bool_,)):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    return value


def _encode(value: Any) -> str:
    if value is None:
        return "null"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        if math.isnan(value) or math.isinf(value):
            return json.dumps(str(value))
        return "%.12e" % value
    if isinstance(value, str):
        return json.dumps(value, ensure_ascii=False)
    if isinstance(value, dict):
        items = sorted(value.items())
        return "{" + ", ".join(f"{json.dumps(k, ensure_ascii=False)}: {_encode(v)}" for k, v in items) + "}"
    if isinstance(value, list):
        return "[" + ", ".join(_encode(v) for v in value) + "]"
    raise TypeError(f"cannot serialise {type(value).__name__}")


def dumps(value: Any) -> str:
    """Deterministic JSON text: sorted keys and every float written as %.12e."""
    return _encode(_plain(value))


def _signature_list(sig: OmegaSignature) -> list[float]:
    return [float(w) for w in sig.omegas]


def _parse_point(text: str | None, size: int) -> np.ndarray:
    if text is None or text.strip() == "origin":
        return np.zeros(size)
    try:
        values = [float(p) for p in text.split(",")]
    except ValueError:
        raise UsageError(f"malformed --point {text!r}") from None
    if len(values) == 1 and values[0] == 0.0:
        return np.zeros(size)
    if len(values) != size:
        raise UsageError(f"--point needs {size} coordinates, got {len(values)}")
    return np.array(values)


def _foliation_payload(report) -> list[dict]:
    return [
        {
            "zero_position": leaf.zero_position,
            "base_signature": [float(w) for w in leaf.base_signature],
            "fiber_signature": [float(w) for w in leaf.fiber_signature],
            "base_dimension": leaf.base_dimension,
            "fiber_dimension": leaf.fiber_dimension,
            "base_rank": leaf.base_rank,
            "fiber_rank": leaf.fiber_rank,
        }
        for leaf in report.leaves
    ]


def _metric_payload(metric) -> dict:
    return {"chart": metric.chart, "labels": list(metric.labels), "matrix": metric.matrix}


def cmd_classify(args) -> Report:
    sig = args.signature
    record = classify_group(sig)
    payload = record.to_dict()
    return Report("classify", _signature_list(sig), payload)


def cmd_metric(args) -> Report:
    sig = args.signature
    if args.space == "rank1":
        point = _parse_point(args.point, sig.n)
        if args.chart == "beltrami":
            beltrami_to_weierstrass(sig, point)
            metric = beltrami_metric(sig, point)
        else:
            metric = parallel_metric(sig, point)
        degenerate = is_metric_degenerate_rank1(sig)
        foliation = foliation_report_rank1(sig)
        subsidiary = {leaf.zero_position: subsidiary_metric_rank1(sig, int(leaf.zero_position)) for leaf in foliation.leaves}
    else:
        if sig.n < 3:
            raise UsageError("rank-two spaces need N >= 3")
        if args.chart != "beltrami":
            raise UsageError("rank-two spaces are only charted in Beltrami coordinates")
        point = _parse_point(args.point, 2 * (sig.n - 1))
        metric = rank2_metric(sig, point)
        degenerate = is_metric_degenerate_rank2(sig)
        foliation = foliation_report_rank2(sig)
        subsidiary = {
            leaf.zero_position: subsidiary_metric_rank2(
                sig, leaf.zero_position if leaf.zero_position == "(2)" else int(leaf.zero_position)
            )
            for leaf in foliation.leaves
        }
    payload = {
        "space": args.space,
        "point": point,
        "metric": _metric_payload(metric),
        "degenerate": degenerate,
    }
    if degenerate:
        payload["foliation"] = _foliation_payload(foliation)
        payload["subsidiary"] = {k: _metric_payload(m) for k, m in subsidiary.items()}
    return Report("metric", _signature_list(sig), payload)


def _random_plane(rng: np.random.Generator, metric: np.ndarray, tries: int = 50):
    """Random chart plane whose Gram determinant is not close to zero."""
    dim = metric.shape[0]
    for _ in range(tries):
        u, v = rng.normal(size=(2, dim))
        area = (u @ metric @ u) * (v @ metric @ v) - (u @ metric @ v) ** 2
        if abs(area) > 1e-2 * float(u @ u) * float(v @ v):
            return u, v
    return u, v


def cmd_curvature(args) -> Report:
    sig = args.signature
    rng = np.random.default_rng(args.seeds)
    samples = []
    if args.space == "rank1":
        if is_metric_degenerate_rank1(sig):
            raise DegenerateMetricError("the rank-one main metric is degenerate for this signature")
        theory = float(sig[1])
        for _ in range(args.points):
            eta = rng.uniform(-0.3, 0.3, sig.n)
            metric = beltrami_metric(sig, eta).matrix
            for _ in range(args.planes):
                u, v = _random_plane(rng, metric)
                value = sectional_curvature_rank1(sig, eta, u, v)
                samples.append({"point": eta, "plane": [u, v], "value": value, "theory": theory})
    else:
        if sig.n < 3:
            raise UsageError("rank-two spaces need N >= 3")
        if is_metric_degenerate_rank2(sig):
            raise DegenerateMetricError("the rank-two main metric is degenerate for this signature")
        for i in range(1, sig.n):
            for j in range(1, sig.n):
                first, second = f"P_(1){i}", f"P_(2){j}"
                value = sectional_curvature_rank2_origin(
                    sig, tangent_vector(sig.n, first), tangent_vector(sig.n, second)
                )
                theory = float(sig[2]) if i == j else 0.0
                kind = "same-index" if i == j else "disjoint-index"
                samples.append({"plane": [first, second], "kind": kind, "value": value, "theory": theory})
    deviation = max((abs(s["value"] - s["theory"]) for s in samples), default=0.0)
    payload = {"space": args.space, "samples": samples, "max_deviation": deviation}
    return Report("curvature", _signature_list(sig), payload)


def cmd_verify(args) -> Report:
    suites = SUITES if args.suite == "all" else (args.suite,)
    results = run_suites(suites, args.n, args.seeds)
    payload = {
        "n": args.n,
        "seed": args.seeds,
        "suites": {name: [c.to_dict() for c in checks] for name, checks in results.items()},
        "passed": all(c.passed for checks in results.values() for c in checks),
    }
    return Report("verify", [], payload)


def _format_pretty(report: Report) -> str:
    lines = [f"{report.command}  signature={report.signature}  version={report.version}"]
    _pretty_lines(_plain(report.payload), lines, "")
    return "\n".join(lines)


def _pretty_lines(value: Any, lines: list[str], indent: str) -> None:
    for key, item in sorted(value.items()):
        if isinstance(item, dict):
            lines.append(f"{indent}{key}:")
            _pretty_lines(item, lines, indent + "  ")
        elif isinstance(item, list) and item and isinstance(item[0], dict):
            lines.append(f"{indent}{key}:")
            for entry in item:
                lines.append(indent + "  - " + "  ".join(f"{k}={_short(v)}" for k, v in sorted(entry.items())))
        elif isinstance(item, list) and item and isinstance(item[0], list):
            lines.append(f"{indent}{key}:")
            for row in item:
                lines.append(indent + "  " + " ".join(_short(v).rjust(10) for v in row))
        else:
            lines.append(f"{indent}{key}: {_short(item)}")


def _short(value: Any) -> str:
    if isinstance(value, float):
        return f"{value:.6g}"
    if isinstance(value, list):
        return "[" + ", ".join(_short(v) for v in value) + "]"
    return str(value)


def _signature_arg(text: str) -> OmegaSignature:
    try:
        return parse_signature(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ckspaces", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pretty", action="store_true", help="human-readable table instead of JSON")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common], help="group structure and catalog names")
    p.add_argument("--omega", dest="signature", type=_signature_arg, required=True, help="e.g. 0,-1,1,1")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("metric", parents=[common], help="main metric at a chart point")
    p.add_argument("--omega", dest="signature", type=_signature_arg, required=True)
    p.add_argument("--space", choices=("rank1", "rank2"), default="rank1")
    p.add_argument("--chart", choices=("beltrami", "parallel"), default="beltrami")
    p.add_argument("--point", help="comma separated coordinates, or 'origin' (default)")
    p.set_defaults(func=cmd_metric)

    p = sub.add_parser("curvature", parents=[common], help="sampled sectional curvatures")
    p.add_argument("--omega", dest="signature", type=_signature_arg, required=True)
    p.add_argument("--space", choices=("rank1", "rank2"), default="rank1")
    p.add_argument("--points", type=int, default=3, help="random chart points (rank1)")
    p.add_argument("--planes", type=int, default=3, help="random planes per point (rank1)")
    p.add_argument("--seeds", type=int, default=0, help="base random seed")
    p.set_defaults(func=cmd_curvature)

    p = sub.add_parser("verify", parents=[common], help="run invariant suites")
    p.add_argument("--suite", choices=SUITES + ("all",), default="all")
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--seeds", type=int, default=0, help="base random seed")
    p.set_defaults(func=cmd_verify)
    return parser


def _attach_negative_values(argv: Sequence[str]) -> list[str]:
    """Rewrite ``--omega -1,1`` as ``--omega=-1,1`` so argparse keeps the value."""
    out: list[str] = []
    it = iter(argv)
    for token in it:
        if token in VALUE_OPTIONS:
            value = next(it, None)
            if value is not None and value.startswith("-"):
                out.append(f"{token}={value}")
                continue
            out.append(token)
            if value is not None:
                out.append(value)
            continue
        out.append(token)
    return out


VALUE_OPTIONS = ("--omega", "--point")


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(_attach_negative_values(argv))
    if getattr(args, "n", 1) < 1:
        parser.error("--n must be at least 1")
    try:
        tolerance()
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        report = args.func(args)
    except (UsageError, UnsupportedDimensionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ChartDomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CHART_DOMAIN
    except DegenerateMetricError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    print(_format_pretty(report) if args.pretty else report.to_json())
    if report.command == "verify" and not report.payload["passed"]:
        return EXIT_VERIFY_FAILED
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
