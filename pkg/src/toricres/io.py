"""JSON fan and result files.  Rationals travel as ``"p/q"`` strings."""

import json
import re
from fractions import Fraction
from importlib import resources
from pathlib import Path

import numpy as np

from .fan import Fan

_RATIONAL = re.compile(r"^-?\d+/\d+$")
_SAFE_INT = 2 ** 53


class FanFileError(ValueError):
    """Unreadable or malformed fan file."""


def encode(obj):
    """Convert to JSON-ready values; exact rationals become ``"p/q"``."""
    if isinstance(obj, Fraction):
        return f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return obj if abs(obj) < _SAFE_INT else str(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    if isinstance(obj, np.integer):
        return encode(int(obj))
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.ndarray):
        return [encode(x) for x in obj.tolist()]
    if isinstance(obj, dict):
        return {str(k): encode(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [encode(x) for x in obj]
    raise TypeError(f"cannot encode {type(obj).__name__}")


def decode(obj):
    """Inverse of :func:`encode` for rationals; other strings are kept."""
    if isinstance(obj, str):
        if _RATIONAL.match(obj):
            return Fraction(obj)
        if re.fullmatch(r"-?\d{16,}", obj):
            return int(obj)
        return obj
    if isinstance(obj, dict):
        return {k: decode(v) for k, v in obj.items()}
    if isinstance(obj, list):
        return [decode(x) for x in obj]
    return obj


def _dump(obj, indent):
    pad = "  " * (indent + 1)
    if isinstance(obj, dict) and obj:
        items = [f"{pad}{json.dumps(k)}: {_dump(v, indent + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + "  " * indent + "}"
    if isinstance(obj, list) and any(isinstance(x, (list, dict)) for x in obj):
        items = [pad + _dump(v, indent + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + "  " * indent + "]"
    return json.dumps(obj)


def dumps(obj):
    """JSON text with scalar lists kept on one line."""
    return _dump(encode(obj), 0) + "\n"


def fan_to_dict(f):
    out = {"dim": f.dim, "rays": [list(r) for r in f.rays],
           "cones": [list(c) for c in f.cones]}
    if f.name:
        out["name"] = f.name
    return out


def fan_from_dict(d):
    if not isinstance(d, dict):
        raise FanFileError("fan file must hold a JSON object")
    try:
        dim, rays, cones = d["dim"], d["rays"], d["cones"]
    except KeyError as e:
        raise FanFileError(f"missing field {e.args[0]!r}") from None
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise FanFileError("'dim' must be a positive integer")

    def ints(v, what):
        if not isinstance(v, list) or not all(
                isinstance(x, int) and not isinstance(x, bool) for x in v):
            raise FanFileError(f"{what} must be a list of integers")
        return tuple(v)

    if not isinstance(rays, list) or not isinstance(cones, list) or not rays or not cones:
        raise FanFileError("'rays' and 'cones' must be nonempty lists")
    rays = tuple(ints(r, "each ray") for r in rays)
    cones = tuple(ints(c, "each cone") for c in cones)
    if any(len(r) != dim for r in rays):
        raise FanFileError("ray length does not match 'dim'")
    if any(not 0 <= i < len(rays) for c in cones for i in c):
        raise FanFileError("cone index out of range")
    name = d.get("name")
    return Fan(dim, rays, cones, name if isinstance(name, str) else None)


def read_fan(path):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as e:
        raise FanFileError(f"cannot read {path}: {e}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise FanFileError(f"{path}: {e}") from None
    return fan_from_dict(data)


def write_fan(f, path):
    Path(path).write_text(dumps(fan_to_dict(f)), encoding="utf-8")


def read_result(path):
    return decode(json.loads(Path(path).read_text(encoding="utf-8")))


def write_result(result, path):
    Path(path).write_text(dumps(result), encoding="utf-8")


def bundled_names():
    files = resources.files("toricres") / "data"
    return sorted(p.name[:-5] for p in files.iterdir() if p.name.endswith(".json"))


def load_bundled(name):
    res = resources.files("toricres") / "data" / f"{name}.json"
    if not res.is_file():
        raise FanFileError(f"no bundled fan named {name!r}")
    return fan_from_dict(json.loads(res.read_text(encoding="utf-8")))


def resolve_fan_argument(arg):
    """A path, or a bundled example named by ``arg`` or its file stem."""
    path = Path(arg)
    if path.exists():
        return read_fan(arg)
    for name in (arg, path.stem):
        if name in bundled_names():
            return load_bundled(name)
    raise FanFileError(f"{arg}: no such file or bundled example")
