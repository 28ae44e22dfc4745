"""
Main Pipeline - frontal-lab command-line entry point

    frontal-lab run <config.json> [--out DIR]
    frontal-lab verify <config.json> [--out DIR]
    frontal-lab eval "<expr>" --at u,v [--order 2]

Exit codes: 0 success, 1 failed identity (verify), 2 configuration error,
3 numerical failure.
"""
import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

from src import __version__
from src.curves import (
    asymptotic_fields,
    asymptotic_fields_front_K,
    curvature_line_fields,
    g_asymptotic_residuals,
    gaussian_line_residual,
    line_of_curvature_residuals,
    trace_flow,
)
from src.errors import ConfigurationError, FrontalLabError, NumericalError, RunConfigError
from src.exprlang import eval_jet, parse
from src.frontal import (
    classify_singularity,
    extendability_test,
    parallelly_smoothable_test,
    singular_set,
)
from src.frontal.surface import FrontalSurface
from src.generators import build_surface
from src.jets import seed_pair
from src.models import TracedCurve
from src.output.formatter import (
    fields_frame,
    singular_frame,
    to_csv,
    to_jsonl,
    to_obj,
    to_report_json,
    write_text,
)
from src.utils.config import config
from src.utils.logger import setup_logger
from src.utils.run_config import RunConfig, TraceOutput, load_run_config
from src.validation import run_invariant_suite

logger = setup_logger("frontal-lab.cli")

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_CONFIG = 2
EXIT_NUMERIC = 3
EXIT_INTERNAL = 4

FIELD_INDEX = {"asymptotic-1": 0, "asymptotic-2": 1, "curvature-line-1": 0, "curvature-line-2": 1}
SINGULAR_GRID_MIN = 16


# --- request handlers ------------------------------------------------------

def trace_request(s: FrontalSurface, request: TraceOutput) -> Tuple[Dict, List[TracedCurve]]:
    """Trace one field family from every seed and attach residuals"""
    index = FIELD_INDEX[request.field]
    asymptotic = request.field.startswith("asymptotic")
    curves, summaries = [], []
    for seed in request.seeds:
        center = request.chart_center or seed
        if asymptotic and s.provenance.kind == "extendable-K-wave":
            field = asymptotic_fields_front_K(s)[index]
        elif asymptotic:
            field = asymptotic_fields(s, center)[index]
        else:
            field = curvature_line_fields(s, center)[index]

        domain = field.chart or s.domain
        if not domain.contains(seed):
            raise RunConfigError(f"seed {list(seed)} lies outside the chart {domain.to_dict()} about {list(center)}")
        curve = trace_flow(field, seed, h=request.step, n_steps=request.steps, domain=domain)
        summary = {"seed": list(seed), "construction": field.provenance.get("construction")}
        if asymptotic:
            curve.residual_name = "g-asymptotic"
            curve.residuals = g_asymptotic_residuals(s, curve).tolist()
        else:
            curve.residual_name = "line-of-curvature"
            curve.residuals = line_of_curvature_residuals(s, curve).tolist()
            summary["gaussian_line_residual"] = gaussian_line_residual(s, curve, field.eigenvalue)
        summary.update({
            "termination": curve.termination.value,
            "vertices": len(curve.vertices),
            "residual": curve.residual_name,
            "max_residual": curve.max_residual,
        })
        curves.append(curve)
        summaries.append(summary)
    return {"type": "trace", "field": request.field, "curves": summaries}, curves


def execute(s: FrontalSurface, run: RunConfig, out_dir: Path) -> List[Dict]:
    """Carry out every output request, writing files as they are produced"""
    n, m = run.grid
    blocks: List[Dict] = []
    curves: List[TracedCurve] = []
    for request in run.outputs:
        logger.info(f"Processing {request.type} request")
        if request.type == "mesh":
            write_text(out_dir, "surface.obj", to_obj(s, n, m))
            blocks.append({"type": "mesh", "file": "surface.obj", "vertices": n * m, "faces": 2 * (n - 1) * (m - 1)})
        elif request.type == "fields":
            frame = fields_frame(s, n, m)
            write_text(out_dir, "fields.csv", to_csv(frame))
            blocks.append({"type": "fields", "file": "fields.csv", "rows": len(frame)})
        elif request.type == "singular-set":
            polylines = singular_set(s, max(n, SINGULAR_GRID_MIN), max(m, SINGULAR_GRID_MIN))
            frame = singular_frame(polylines)
            write_text(out_dir, "singular.csv", to_csv(frame))
            blocks.append({"type": "singular-set", "file": "singular.csv",
                           "polylines": len(polylines), "vertices": len(frame)})
        elif request.type == "classify":
            reports = [classify_singularity(s, p).to_dict() for p in request.points]
            blocks.append({"type": "classify", "points": reports})
        elif request.type == "extendability":
            verdict = extendability_test(s, request.mode, max(n, SINGULAR_GRID_MIN))
            blocks.append({"type": "extendability", **verdict.to_dict()})
        elif request.type == "trace":
            block, traced = trace_request(s, request)
            blocks.append(block)
            curves.extend(traced)
        elif request.type == "smoothable":
            verdict = parallelly_smoothable_test(s, request.point, request.epsilon)
            blocks.append({"type": "smoothable", **verdict.to_dict()})
    if curves:
        write_text(out_dir, "curves.jsonl", to_jsonl(curves))
    return blocks


def base_report(command: str, run: RunConfig, s: FrontalSurface) -> Dict:
    return {
        "schema_version": config.SCHEMA_VERSION,
        "version": __version__,
        "command": command,
        "config": run.model_dump(mode="json"),
        "surface": s.provenance.to_dict(),
    }


# --- commands --------------------------------------------------------------

def run_command(config_path: str, out: Optional[str] = None) -> int:
    run = load_run_config(config_path)
    out_dir = Path(out or run.output_dir)
    s = build_surface(run.generator)
    report = base_report("run", run, s)
    report["results"] = execute(s, run, out_dir)
    path = write_text(out_dir, "report.json", to_report_json(report))
    logger.info(f"Run complete: {len(report['results'])} requests, report at {path}")
    return EXIT_OK


def verify_command(config_path: str, out: Optional[str] = None) -> int:
    run = load_run_config(config_path)
    out_dir = Path(out or run.output_dir)
    s = build_surface(run.generator)
    checks = run_invariant_suite(s, grid=min(run.grid))
    passed = all(c.passed for c in checks)
    report = base_report("verify", run, s)
    report["suite"] = {"passed": passed, "checks": [c.to_dict() for c in checks]}
    write_text(out_dir, "report.json", to_report_json(report))

    for c in checks:
        status = "PASS" if c.passed else "FAIL"
        print(f"{status}  {c.name:<26} residual {c.residual:.3e}  tolerance {c.tolerance:.1e}")
    if not passed:
        logger.error(f"{config_path}: {sum(not c.passed for c in checks)} identities failed")
        return EXIT_VERIFY_FAILED
    logger.info(f"All {len(checks)} identities passed")
    return EXIT_OK


def parse_point(text: str) -> Tuple[float, float]:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected u,v, got {text!r}")
    try:
        return float(parts[0]), float(parts[1])
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected two numbers, got {text!r}") from None


def eval_command(text: str, at: Tuple[float, float], order: int = 2) -> int:
    """Print every jet coefficient c[i, j] = d^(i+j) f / (i! j!) as JSON"""
    ju, jv = seed_pair(at[0], at[1], order)
    jet = eval_jet(parse(text), {"u": ju, "v": jv})
    pairs = [(i, d - i) for d in range(order + 1) for i in range(d, -1, -1)]
    coefficients = {f"{i},{j}": float(jet.taylor[i, j]) for i, j in pairs}
    derivatives = {f"{i},{j}": float(jet.derivative(i, j)) for i, j in pairs}
    print(json.dumps(
        {"expr": text, "at": list(at), "order": order, "coefficients": coefficients, "derivatives": derivatives},
        indent=2,
    ))
    return EXIT_OK


# --- entry point -----------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="frontal-lab", description="Frontal surfaces and wavefronts")
    parser.add_argument("--quiet", "-q", action="store_true", help="Only warnings and errors")
    parser.add_argument("--verbose", "-v", action="store_true", help="Debug logging")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="Build the configured surface and write every requested output")
    run.add_argument("config", help="Run configuration (JSON)")
    run.add_argument("--out", help="Output directory (overrides output_dir)")

    verify = sub.add_parser("verify", help="Run the invariant suite on the configured surface")
    verify.add_argument("config", help="Run configuration (JSON)")
    verify.add_argument("--out", help="Output directory for report.json")

    ev = sub.add_parser("eval", help="Print the jet of an expression at a point")
    ev.add_argument("expr", help="Expression in u and v")
    ev.add_argument("--at", type=parse_point, required=True, help="Point as u,v")
    ev.add_argument("--order", type=int, choices=[0, 1, 2, 3], default=2, help="Jet order")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """CLI entrypoint"""
    args = build_parser().parse_args(argv)
    if args.quiet:
        setup_logger(level=logging.WARNING)
    elif args.verbose:
        setup_logger(level=logging.DEBUG)
    else:
        setup_logger(level=logging.INFO)

    source = getattr(args, "config", None) or "<eval>"
    try:
        if args.command == "run":
            return run_command(args.config, args.out)
        if args.command == "verify":
            return verify_command(args.config, args.out)
        return eval_command(args.expr, args.at, args.order)
    except ConfigurationError as e:
        logger.error(f"{source}: configuration error: {e}")
        return EXIT_CONFIG
    except NumericalError as e:
        logger.error(f"{source}: numerical failure: {e}")
        return EXIT_NUMERIC
    except FrontalLabError as e:
        logger.error(f"{source}: {e}")
        return EXIT_NUMERIC
    except Exception as e:
        logger.error(f"{source}: internal error: {type(e).__name__}: {e}", exc_info=True)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
