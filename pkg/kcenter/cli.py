import sys
import json
import time
import logging
import argparse

from .config import SolverConfiguration
from .errors import KCenterError, InstanceParseError, ValidationError, ResourceGuardError, NumericalError
from .gauge import gauge_from_json, Euclidean
from .instance import Instance, attraction_sets
from .solvers import solve_one_center, exact_by_partition, multi_start, two_center_split_bound, two_center_1d, as_interval
from .analysis import certify_local, compactness_diagnostic, perturbation_probe
from .utils import SeededSampler
from . import data

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_VALIDATION = 3
EXIT_GUARD = 4
EXIT_NUMERICAL = 5


class _Timer:
    def __init__(self, config):
        self.enabled = config.RECORD_TIMING
        self.start = time.perf_counter()

    def elapsed_ms(self):
        if not self.enabled:
            return None
        return round((time.perf_counter() - self.start) * 1000, 3)


def _finish(args, report):
    if args.out is not None:
        data.dump_report(report, args.out)
        logger.info("Report written to %s", args.out)


def cmd_validate(args, config):
    inst = data.load_instance(args.instance)
    c = inst.constants
    print("m=%d d=%d gauge=%s norm_F=%.17g norm_polar=%.17g" % (inst.m, inst.dimension, inst.gauge.kind, c.set_norm, c.polar_norm))
    return EXIT_OK


def cmd_solve(args, config):
    inst = data.load_instance(args.instance)
    timer = _Timer(config)
    if args.method == "exact":
        ret = exact_by_partition(inst, args.k, args.eps, args.force, config)
    else:
        ret = multi_start(inst, args.k, args.restarts, args.seed, args.tol, args.eps, config)
    report = data.make_report("solve", ret.to_json(), data.instance_id(args.instance), args.k, ret.seed, timer.elapsed_ms())
    print("value=%.17g" % ret.value)
    _finish(args, report)
    return EXIT_OK


def cmd_one_center(args, config):
    inst = data.load_instance(args.instance)
    timer = _Timer(config)
    ret = solve_one_center(inst.gauge, inst.points, args.eps, config)
    report = data.make_report("one_center", ret.to_json(), data.instance_id(args.instance), 1, None, timer.elapsed_ms())
    print("radius=%.17g center=%s" % (ret.radius, json.dumps(ret.center.tolist())))
    _finish(args, report)
    return EXIT_OK


def cmd_certify(args, config):
    inst = data.load_instance(args.instance)
    x = data.centers_from_json(args.centers, inst.dimension)
    timer = _Timer(config)
    cert = certify_local(inst, x, args.tol, config)
    result = cert.to_json()
    result["clustering"] = attraction_sets(inst, x, 0.0, config).to_json()
    report = data.make_report("certificate", result, data.instance_id(args.instance), x.k, None, timer.elapsed_ms())
    print("verdict=%s value=%.17g" % (cert.verdict, cert.value))
    _finish(args, report)
    return EXIT_OK


def cmd_compactness(args, config):
    inst = data.load_instance(args.instance)
    timer = _Timer(config)
    ret = compactness_diagnostic(inst, args.k, args.eps, args.force, config)
    report = data.make_report("compactness", ret.to_json(), data.instance_id(args.instance), args.k, None, timer.elapsed_ms())
    print("verdict=%s v_k=%.17g v_km1=%.17g" % (ret.verdict, ret.v_k, ret.v_km1))
    _finish(args, report)
    return EXIT_OK


def cmd_probe(args, config):
    inst = data.load_instance(args.instance)
    x = data.centers_from_json(args.centers, inst.dimension)
    timer = _Timer(config)
    ret = perturbation_probe(inst, x, args.radius, args.samples, args.seed, config)
    report = data.make_report("probe", ret.to_json(), data.instance_id(args.instance), x.k, args.seed, timer.elapsed_ms())
    print("verdict=%s" % ret.verdict)
    _finish(args, report)
    return EXIT_OK


def cmd_bound2(args, config):
    inst = data.load_instance(args.instance)
    timer = _Timer(config)
    if isinstance(inst.gauge, Euclidean):
        ret = two_center_split_bound(inst.points, args.eps, args.seed, config)
        result = ret.to_json()
        print("r1=%.17g bound=%.17g" % (ret.r1, ret.bound))
    elif inst.dimension == 1 and as_interval(inst.gauge) is not None:
        ret = two_center_1d(inst.gauge, inst.points)
        result = ret.to_json()
        print("bound=%.17g" % ret.value)
    else:
        raise ValidationError("bound2 needs a Euclidean gauge or a gauge on the line, got %s in dimension %d" % (inst.gauge.kind, inst.dimension))
    report = data.make_report("bound2", result, data.instance_id(args.instance), 2, args.seed, timer.elapsed_ms())
    _finish(args, report)
    return EXIT_OK


def cmd_emit_csv(args, config):
    reports = [data.load_report(path) for path in args.reports]
    data.emit_csv(reports, args.out)
    print("rows=%d" % len(reports))
    return EXIT_OK


def cmd_gen(args, config):
    try:
        gauge_obj = json.loads(args.gauge)
    except json.JSONDecodeError as e:
        raise InstanceParseError("--gauge is not valid JSON: %s" % e)
    gauge = gauge_from_json(gauge_obj)
    if args.m < 1 or args.d < 1:
        raise ValidationError("gen needs m >= 1 and d >= 1, got m = %d, d = %d" % (args.m, args.d))
    if not args.low < args.high:
        raise ValidationError("gen needs low < high, got [%g, %g]" % (args.low, args.high))
    points = SeededSampler(args.seed, args.d).uniform_box(args.low, args.high, args.m)
    inst = Instance(points, gauge, args.d)
    text = json.dumps(data.instance_to_json(inst), sort_keys=True, indent=2) + "\n"
    data.atomic_write(args.out, text)
    print("m=%d d=%d gauge=%s" % (inst.m, inst.dimension, gauge.kind))
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(prog="kcenter", description="Generalized k-center problems with gauge distances")
    parser.add_argument("--verbose", "-v", action="count", default=0, help="Raise log level (repeatable)")
    sub = parser.add_subparsers(dest="command")
    sub.required = True

    def command(name, fn, help):
        p = sub.add_parser(name, help=help)
        p.set_defaults(handler=fn)
        return p

    p = command("validate", cmd_validate, "Parse and validate an instance")
    p.add_argument("--instance", required=True, help="Instance JSON file")

    p = command("solve", cmd_solve, "Solve the k-center problem")
    p.add_argument("--instance", required=True, help="Instance JSON file")
    p.add_argument("--k", type=int, required=True, help="Number of centers")
    p.add_argument("--method", choices=["exact", "heuristic"], default="exact", help="Partition oracle or multi-start heuristic")
    p.add_argument("--tol", type=float, default=None, help="Heuristic stopping tolerance")
    p.add_argument("--eps", type=float, default=None, help="1-center accuracy")
    p.add_argument("--restarts", type=int, default=10, help="Random restarts of the heuristic")
    p.add_argument("--seed", type=int, default=0, help="Random seed")
    p.add_argument("--force", action="store_true", help="Override the enumeration guard")
    p.add_argument("--out", default=None, help="Report JSON file")

    p = command("one-center", cmd_one_center, "Solve the 1-center problem")
    p.add_argument("--instance", required=True, help="Instance JSON file")
    p.add_argument("--eps", type=float, default=None, help="1-center accuracy")
    p.add_argument("--out", default=None, help="Report JSON file")

    p = command("certify", cmd_certify, "Check the local optimality certificate")
    p.add_argument("--instance", required=True, help="Instance JSON file")
    p.add_argument("--centers", required=True, help="Centers as JSON or a JSON file")
    p.add_argument("--tol", type=float, default=None, help="1-center accuracy and recentering slack")
    p.add_argument("--out", default=None, help="Report JSON file")

    p = command("compactness", cmd_compactness, "Test whether the optimal solution set is compact")
    p.add_argument("--instance", required=True, help="Instance JSON file")
    p.add_argument("--k", type=int, required=True, help="Number of centers")
    p.add_argument("--eps", type=float, default=None, help="1-center accuracy")
    p.add_argument("--force", action="store_true", help="Override the enumeration guard")
    p.add_argument("--out", default=None, help="Report JSON file")

    p = command("probe", cmd_probe, "Search random perturbations for a better configuration")
    p.add_argument("--instance", required=True, help="Instance JSON file")
    p.add_argument("--centers", required=True, help="Centers as JSON or a JSON file")
    p.add_argument("--radius", type=float, required=True, help="Perturbation radius per center")
    p.add_argument("--samples", type=int, default=10000, help="Number of perturbations")
    p.add_argument("--seed", type=int, default=0, help="Random seed")
    p.add_argument("--out", default=None, help="Report JSON file")

    p = command("bound2", cmd_bound2, "Constructive 2-center bound below the 1-center radius")
    p.add_argument("--instance", required=True, help="Instance JSON file")
    p.add_argument("--eps", type=float, default=None, help="1-center accuracy")
    p.add_argument("--seed", type=int, default=0, help="Random seed for the hyperplane witness")
    p.add_argument("--out", default=None, help="Report JSON file")

    p = command("emit-csv", cmd_emit_csv, "Flatten reports into a CSV table")
    p.add_argument("reports", nargs="*", help="Report JSON files")
    p.add_argument("--out", required=True, help="CSV file")

    p = command("gen", cmd_gen, "Generate a seeded random instance")
    p.add_argument("--m", type=int, required=True, help="Number of points")
    p.add_argument("--d", type=int, required=True, help="Dimension")
    p.add_argument("--low", type=float, default=0.0, help="Lower box bound")
    p.add_argument("--high", type=float, default=1.0, help="Upper box bound")
    p.add_argument("--gauge", default='{"kind": "euclidean"}', help="Gauge descriptor JSON")
    p.add_argument("--seed", type=int, default=0, help="Random seed")
    p.add_argument("--out", required=True, help="Instance JSON file")
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)

    level = logging.WARNING
    if args.verbose == 1:
        level = logging.INFO
    elif args.verbose > 1:
        level = logging.DEBUG
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")

    config = SolverConfiguration.from_env()
    if args.verbose > 0:
        config.SHOW_PROGRESS = True

    try:
        return args.handler(args, config)
    except InstanceParseError as e:
        print("parse error: %s" % e, file=sys.stderr)
        return EXIT_PARSE
    except ValidationError as e:
        print("invalid input: %s" % e, file=sys.stderr)
        return EXIT_VALIDATION
    except ResourceGuardError as e:
        print("too large: %s" % e, file=sys.stderr)
        return EXIT_GUARD
    except NumericalError as e:
        print("numerical failure: %s" % e, file=sys.stderr)
        return EXIT_NUMERICAL
    except KCenterError as e:
        print("error: %s" % e, file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
