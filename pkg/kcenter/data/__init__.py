import io
import os
import csv
import json
import tempfile
import logging
from typing import Any, Dict, Iterable, Optional

from ..instance import Instance, CenterConfiguration
from ..gauge import gauge_from_json
from ..errors import InstanceParseError, KCenterError
from ..version import __version__

logger = logging.getLogger(__name__)

CSV_COLUMNS = ["instance", "kind", "k", "method", "value", "gap", "verdict"]


def instance_from_json(obj : Dict[str, Any]) -> Instance:
    """Build an ``Instance`` from ``{"dimension", "points", "gauge"}``.

    Raises:
        InstanceParseError: the object is malformed.
        ValidationError: it parses but describes an invalid instance.
    """
    if not isinstance(obj, dict):
        raise InstanceParseError("instance must be a JSON object, got %s" % type(obj).__name__)
    for key in ("dimension", "points", "gauge"):
        if key not in obj:
            raise InstanceParseError("instance is missing field '%s'" % key)
    dimension = obj["dimension"]
    if not isinstance(dimension, int) or isinstance(dimension, bool):
        raise InstanceParseError("dimension must be an integer, got %r" % (dimension,))
    points = obj["points"]
    if not isinstance(points, list) or len(points) == 0:
        raise InstanceParseError("points must be a nonempty list")
    for i, row in enumerate(points):
        if not isinstance(row, list) or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in row):
            raise InstanceParseError("point %d is not a list of numbers: %r" % (i + 1, row))
        if len(row) != len(points[0]):
            raise InstanceParseError("point %d has %d coordinates but point 1 has %d" % (i + 1, len(row), len(points[0])))
    gauge = gauge_from_json(obj["gauge"])
    try:
        return Instance(points, gauge, dimension)
    except KCenterError:
        raise
    except (TypeError, ValueError) as e:
        raise InstanceParseError("instance is malformed: %s" % e)


def instance_to_json(inst : Instance) -> Dict[str, Any]:
    return {
        "dimension": inst.dimension,
        "points": inst.points.tolist(),
        "gauge": inst.gauge.to_json(),
    }


def _read_json(path : str) -> Any:
    try:
        with open(path, "r", encoding="utf-8") as f:
            return json.load(f)
    except OSError as e:
        raise InstanceParseError("cannot read %s: %s" % (path, e))
    except json.JSONDecodeError as e:
        raise InstanceParseError("%s is not valid JSON: %s" % (path, e))


def load_instance(path : str) -> Instance:
    inst = instance_from_json(_read_json(path))
    logger.info("Loaded %s: m = %d, d = %d, gauge %s", path, inst.m, inst.dimension, inst.gauge.kind)
    return inst


def instance_id(path : str) -> str:
    return os.path.splitext(os.path.basename(path))[0]


def centers_from_json(text_or_path : str, dimension : Optional[int] = None) -> CenterConfiguration:
    """Centers given inline as a JSON list of lists or as a path to such a file."""
    if os.path.exists(text_or_path):
        obj = _read_json(text_or_path)
    else:
        try:
            obj = json.loads(text_or_path)
        except json.JSONDecodeError as e:
            raise InstanceParseError("centers are neither a file nor valid JSON: %s" % e)
    if isinstance(obj, dict):
        obj = obj.get("centers")
    if not isinstance(obj, list) or len(obj) == 0:
        raise InstanceParseError("centers must be a nonempty list of points")
    if dimension == 1 and not isinstance(obj[0], list):
        obj = [[v] for v in obj]
    try:
        return CenterConfiguration(obj, dimension)
    except KCenterError:
        raise
    except (TypeError, ValueError) as e:
        raise InstanceParseError("centers are malformed: %s" % e)


## reports

def make_report(kind : str,
        result : Dict[str, Any],
        instance : Optional[str] = None,
        k : Optional[int] = None,
        seed : Optional[int] = None,
        elapsed_ms : Optional[float] = None,
    ) -> Dict[str, Any]:
    return {
        "kind": kind,
        "instance": instance,
        "k": k,
        "result": result,
        "tool_version": __version__,
        "seed": seed,
        "elapsed_ms": elapsed_ms,
    }


def dumps_report(report : Dict[str, Any]) -> str:
    # float repr is the shortest string that round-trips, at most 17 significant digits
    return json.dumps(report, sort_keys=True, indent=2, allow_nan=False) + "\n"


def atomic_write(path : str, text : str):
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix=".%s." % os.path.basename(path), dir=directory)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as f:
            f.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.remove(tmp)
        raise
    logger.debug("Wrote %s", path)


def dump_report(report : Dict[str, Any], path : str):
    atomic_write(path, dumps_report(report))


def load_report(path : str) -> Dict[str, Any]:
    obj = _read_json(path)
    if not isinstance(obj, dict) or "kind" not in obj or "result" not in obj:
        raise InstanceParseError("%s is not a report" % path)
    return obj


## csv

def _scalar(v) -> bool:
    return v is None or isinstance(v, (bool, int, float, str))


def flatten_report(report : Dict[str, Any]) -> Dict[str, Any]:
    """One CSV row: top-level identifiers plus the scalar fields of the result."""
    row = {
        "instance": report.get("instance"),
        "kind": report.get("kind"),
        "k": report.get("k"),
    }
    for key, value in report.get("result", {}).items():
        if _scalar(value) and key not in row:
            row[key] = value
    return row


def emit_csv(reports : Iterable[Dict[str, Any]], path : str):
    """Write one row per report; the header is the union of all columns, blanks where a report lacks one."""
    rows = [flatten_report(it) for it in reports]
    extra = sorted({key for row in rows for key in row} - set(CSV_COLUMNS))
    columns = CSV_COLUMNS + extra

    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=columns, restval="", lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({key: ("" if value is None else value) for key, value in row.items()})
    atomic_write(path, buf.getvalue())
    logger.info("Wrote %d rows to %s", len(rows), path)
    return columns
