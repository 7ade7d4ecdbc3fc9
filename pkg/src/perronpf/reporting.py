"""Deterministic JSON reports and the optional file-based result cache."""

from __future__ import annotations

import dataclasses
import hashlib
import json
import os
import sys
import time
from fractions import Fraction

VERSION = "0.1.0"
CACHE_ENV = "PERRONPF_CACHE_DIR"


def _canonical_float(x: float):
    if x != x or x in (float("inf"), float("-inf")):
        return str(x)
    return float(f"{x:.12g}")


def to_jsonable(obj):
    """Recursive conversion to JSON-safe data with 12-significant-digit
    floats, so serialized reports are byte-stable."""
    if obj is None or isinstance(obj, (bool, int, str)):
        return obj
    if isinstance(obj, float):
        return _canonical_float(obj)
    if isinstance(obj, Fraction):
        return f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, complex):
        return {"im": _canonical_float(obj.imag), "re": _canonical_float(obj.real)}
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: to_jsonable(getattr(obj, f.name))
                for f in dataclasses.fields(obj)}
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    return str(obj)


def dumps_canonical(obj, pretty=False):
    data = to_jsonable(obj)
    if pretty:
        return json.dumps(data, sort_keys=True, indent=2)
    return json.dumps(data, sort_keys=True, separators=(",", ":"))


def build_report(command, inputs, result, elapsed_s, cache_hit=None):
    report = {
        "command": command,
        "inputs": to_jsonable(inputs),
        "result": to_jsonable(result),
        "timing_ms": _canonical_float(elapsed_s * 1000.0),
        "versions": VERSION,
    }
    if cache_hit is not None:
        report["cache_hit"] = cache_hit
    return report


# ---------------------------------------------------------------------------
# JSON-lines cache, append-only, opt-in
# ---------------------------------------------------------------------------

def cache_key(command, inputs):
    payload = dumps_canonical({"command": command, "inputs": inputs})
    return hashlib.sha256(payload.encode()).hexdigest()


def default_cache_dir():
    return os.environ.get(CACHE_ENV)


def _cache_file(cache_dir):
    return os.path.join(cache_dir, "results.jsonl")


def _warn(msg):
    print(f"warning: {msg}", file=sys.stderr)


def cache_get(cache_dir, key):
    """Latest cached report for key, or None. Never raises: I/O or parse
    problems degrade to a cache miss with a warning."""
    path = _cache_file(cache_dir)
    found = None
    try:
        with open(path) as fh:
            for lineno, line in enumerate(fh, start=1):
                line = line.strip()
                if not line:
                    continue
                try:
                    entry = json.loads(line)
                except json.JSONDecodeError:
                    _warn(f"cache: skipping corrupted line {lineno} in {path}")
                    continue
                if entry.get("key") == key:
                    found = entry.get("report")
    except FileNotFoundError:
        return None
    except OSError as exc:
        _warn(f"cache read failed ({exc}); continuing without cache")
        return None
    return found


def cache_put(cache_dir, key, report):
    try:
        os.makedirs(cache_dir, exist_ok=True)
        entry = {"created_at": time.time(), "key": key, "report": report}
        with open(_cache_file(cache_dir), "a") as fh:
            fh.write(json.dumps(entry, sort_keys=True,
                                separators=(",", ":")) + "\n")
    except OSError as exc:
        _warn(f"cache write failed ({exc}); continuing without cache")
