"""Text file formats: build configs, frame files, signal files and measurement CSVs.

Every real number is written as ``format(v, ".16e")`` (17 significant digits),
which round-trips doubles exactly and does not depend on locale. Writers emit
keys and rows in a fixed order so identical inputs give identical bytes.

Signal file::

    N 3
    1.0000000000000000e+00 0.0000000000000000e+00
    ...

Frame file: a JSON document with keys ``format``, ``n``, ``B``,
``tight_bound``, ``window``, ``lattice``, ``weights`` and ``subspaces``;
complex numbers are ``[re, im]`` pairs and each subspace is a list of basis
rows.

Measurement CSV::

    # squared=false frame=<id>
    k,l,value
    0,0,1.0000000000000000e+00
"""

import json

import numpy as np

from .complex_core import indicator
from .fusion import FusionFrame, GaborFusionFrame, Subspace
from .phase_retrieval import MeasurementSet

FRAME_FORMAT = "gaborfusion-frame/1"


class FormatError(ValueError):
    pass


def fmt(v):
    v = float(v)
    if v == 0:
        v = 0.0  # drop negative zero
    return format(v, ".16e")


# ---- signals ----

def format_signal(x):
    x = np.asarray(x, dtype=np.complex128)
    lines = [f"N {x.size}"] + [f"{fmt(z.real)} {fmt(z.imag)}" for z in x]
    return "\n".join(lines) + "\n"


def parse_signal(text):
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise FormatError("empty signal file")
    head = lines[0].split()
    if len(head) != 2 or head[0] != "N":
        raise FormatError("signal file must start with 'N <dim>'")
    try:
        n = int(head[1])
        vals = [tuple(float(t) for t in ln.split()) for ln in lines[1:]]
    except ValueError as err:
        raise FormatError(f"bad number in signal file: {err}") from None
    if n < 1 or len(vals) != n or any(len(v) != 2 for v in vals):
        raise FormatError(f"expected {n} lines of 're im'")
    x = np.array([complex(re, im) for re, im in vals])
    if not np.all(np.isfinite(x)):
        raise FormatError("signal has non-finite entries")
    return x


# ---- measurements ----

def format_measurements(m):
    rows = sorted(zip(m.index, m.values), key=lambda r: r[0])
    out = [f"# squared={'true' if m.squared else 'false'} frame={m.frame_id}", "k,l,value"]
    for (k, l), v in rows:
        out.append(f"{k},{l},{fmt(v)}")
    return "\n".join(out) + "\n"


def parse_measurements(text):
    squared = False
    frame = ""
    index, values = [], []
    header_seen = False
    for ln in text.splitlines():
        s = ln.strip()
        if not s:
            continue
        if s.startswith("#"):
            for tok in s[1:].split():
                key, _, val = tok.partition("=")
                if key == "squared":
                    squared = val == "true"
                elif key == "frame":
                    frame = val
            continue
        if not header_seen:
            if s.replace(" ", "") != "k,l,value":
                raise FormatError("measurement CSV must have header 'k,l,value'")
            header_seen = True
            continue
        parts = s.split(",")
        if len(parts) != 3:
            raise FormatError(f"bad measurement row: {s!r}")
        try:
            k, l, v = int(parts[0]), int(parts[1]), float(parts[2])
        except ValueError:
            raise FormatError(f"bad measurement row: {s!r}") from None
        if not np.isfinite(v) or v < 0:
            raise FormatError(f"measurement at ({k},{l}) is negative or non-finite")
        index.append((k, l))
        values.append(v)
    if not header_seen or not values:
        raise FormatError("no measurements found")
    if len(set(index)) != len(index):
        raise FormatError("duplicate lattice points in measurements")
    return MeasurementSet(np.array(values), tuple(index), squared, frame)


# ---- frames ----

def _cplx(z):
    return [float(z.real), float(z.imag)]


def _dump(obj, indent=0):
    pad = "  " * indent
    if isinstance(obj, dict):
        items = [f'{pad}  {json.dumps(k)}: {_dump(v, indent + 1).lstrip()}' for k, v in obj.items()]
        return pad + "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, list):
        if all(not isinstance(v, (list, dict)) for v in obj):
            return pad + "[" + ", ".join(_dump(v) for v in obj) + "]"
        return pad + "[\n" + ",\n".join(_dump(v, indent + 1) for v in obj) + "\n" + pad + "]"
    if isinstance(obj, bool) or obj is None:
        return pad + json.dumps(obj)
    if isinstance(obj, int):
        return pad + str(obj)
    if isinstance(obj, float):
        return pad + fmt(obj)
    return pad + json.dumps(obj)


def frame_to_dict(F, B=None):
    gabor = isinstance(F, GaborFusionFrame)
    return {
        "format": FRAME_FORMAT,
        "n": F.ambient_dim,
        "B": None if B is None else float(B),
        "tight_bound": F.tight_bound if gabor else None,
        "window": [[_cplx(z) for z in row] for row in F.window] if gabor else None,
        "lattice": [[int(k), int(l)] for k, l in F.lattice] if gabor else None,
        "weights": [float(w) for w in F.weights],
        "subspaces": [[[_cplx(z) for z in row] for row in W.basis] for W in F.subspaces],
    }


def format_frame(F, B=None):
    return _dump(frame_to_dict(F, B)) + "\n"


def _complex_array(data, what):
    try:
        arr = np.array(data, dtype=float)
    except (TypeError, ValueError):
        raise FormatError(f"{what} is not a numeric array") from None
    if arr.ndim < 1 or arr.shape[-1] != 2:
        raise FormatError(f"{what} entries must be [re, im] pairs")
    return arr[..., 0] + 1j * arr[..., 1]


def frame_from_dict(d):
    """Rebuild a frame from its dictionary form. Returns ``(frame, B)``."""
    if not isinstance(d, dict) or d.get("format") != FRAME_FORMAT:
        raise FormatError(f"not a {FRAME_FORMAT} document")
    try:
        n = int(d["n"])
        raw = d["subspaces"]
        weights = d.get("weights")
    except (KeyError, TypeError, ValueError) as err:
        raise FormatError(f"frame file missing field: {err}") from None
    if not isinstance(raw, list) or not raw:
        raise FormatError("frame file has no subspaces")
    subs = []
    for i, b in enumerate(raw):
        basis = _complex_array(b, f"subspace {i}")
        if basis.ndim != 2 or basis.shape[1] != n:
            raise FormatError(f"subspace {i} basis must have rows of length {n}")
        try:
            subs.append(Subspace(basis))
        except ValueError as err:
            raise FormatError(f"subspace {i}: {err}") from None
    try:
        if d.get("lattice") is not None:
            lattice = tuple((int(k), int(l)) for k, l in d["lattice"])
            window = _complex_array(d["window"], "window")
            if len(lattice) != len(subs):
                raise FormatError("lattice and subspace counts differ")
            F = GaborFusionFrame(tuple(subs), weights, window=window, lattice=lattice,
                                 tight_bound=d.get("tight_bound"))
        else:
            F = FusionFrame(tuple(subs), weights)
    except (TypeError, ValueError) as err:
        raise FormatError(f"invalid frame: {err}") from None
    B = d.get("B")
    return F, (None if B is None else float(B))


def parse_frame(text):
    try:
        d = json.loads(text)
    except json.JSONDecodeError as err:
        raise FormatError(f"frame file is not valid JSON: {err}") from None
    return frame_from_dict(d)


# ---- build configs ----

def parse_config(text):
    """Parse a JSON build config into ``(n, window_rows, B, construction)``.

    Each entry of ``rows`` is one of::

        {"support": [1, 2, 4], "normalize": true}   # indicator, optionally unit norm
        {"support": [3], "value": 0.5}              # constant value on the support
        {"values": [[re, im], ...]}                 # explicit entries
    """
    try:
        d = json.loads(text)
    except json.JSONDecodeError as err:
        raise FormatError(f"config is not valid JSON: {err}") from None
    if not isinstance(d, dict):
        raise FormatError("config must be a JSON object")
    try:
        n = int(d["n"])
        rows_spec = d["rows"]
    except (KeyError, TypeError, ValueError) as err:
        raise FormatError(f"config missing field: {err}") from None
    if n < 1:
        raise FormatError("n must be positive")
    if not isinstance(rows_spec, list) or not rows_spec:
        raise FormatError("config needs a non-empty 'rows' list")
    rows = []
    for i, r in enumerate(rows_spec):
        if not isinstance(r, dict):
            raise FormatError(f"row {i} must be an object")
        if "values" in r:
            row = _complex_array(r["values"], f"row {i}")
            if row.shape != (n,):
                raise FormatError(f"row {i} must have {n} entries")
        elif "support" in r:
            try:
                support = [int(s) for s in r["support"]]
            except (TypeError, ValueError):
                raise FormatError(f"row {i} support must be integers") from None
            if any(not 0 <= s < n for s in support):
                raise FormatError(f"row {i} support outside 0..{n - 1}")
            row = indicator(n, support) if support else np.zeros(n, dtype=np.complex128)
            if "value" in r:
                row = row * float(r["value"])
            if r.get("normalize") and support:
                row = row / np.linalg.norm(row)
        else:
            raise FormatError(f"row {i} needs 'support' or 'values'")
        rows.append(row)
    construction = d.get("construction", "gabor")
    if construction not in ("gabor", "coisometry"):
        raise FormatError(f"unknown construction {construction!r}")
    try:
        B = float(d.get("B", 1.0))
    except (TypeError, ValueError):
        raise FormatError("B must be a number") from None
    return n, np.array(rows), B, construction
