"""Command-line interface: ``gaborfusion build|verify|measure|reconstruct|demo``.

Exit codes: 0 success, 1 property false, 2 parse error, 3 failed construction
hypothesis, 4 dimension mismatch, 5 uncertified frame, 6 inconsistent
measurements.
"""

import argparse
import sys
import warnings

import numpy as np

from .complex_core import indicator
from .errors import (
    HypothesisError,
    InconsistentMeasurementsError,
    UncertifiedFrameError,
)
from .formats import (
    FormatError,
    format_frame,
    format_measurements,
    format_signal,
    parse_config,
    parse_frame,
    parse_measurements,
    parse_signal,
)
from .fusion import (
    GaborFusionFrame,
    build_from_coisometries,
    build_gabor_fusion,
    frame_bounds,
    is_tight,
    window_rows,
)
from .gabor import full_lattice, tf_shift
from .phase_retrieval import (
    divisibility_condition,
    injectivity_certificate,
    measure,
    mod_phase_distance,
    reconstruct,
)

EXIT_OK, EXIT_FALSE, EXIT_PARSE, EXIT_HYPOTHESIS = 0, 1, 2, 3
EXIT_DIMENSION, EXIT_UNCERTIFIED, EXIT_INCONSISTENT = 4, 5, 6

DEMO_TOL = 1e-6


class CliError(Exception):
    def __init__(self, message, code):
        super().__init__(message)
        self.code = code


def _read(path, what):
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as err:
        raise CliError(f"cannot read {what} {path}: {err.strerror}", EXIT_PARSE) from None


def _emit(text, out):
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _load_frame(path):
    try:
        return parse_frame(_read(path, "frame file"))
    except FormatError as err:
        raise CliError(f"malformed frame file: {err}", EXIT_PARSE) from None


def _g(v):
    return f"{v:.12g}"


def lattice_unitaries(n):
    """``pi(k, l)`` as matrices, in full-lattice order."""
    eye = np.eye(n, dtype=np.complex128)
    return [np.array([tf_shift(e, k, l) for e in eye]).T for k, l in full_lattice(n)]


def build_frame(n, rows, B, construction="gabor"):
    """Gabor fusion frame from window rows, through either construction path."""
    if rows.shape[1] != n:
        raise ValueError(f"window rows have length {rows.shape[1]}, expected {n}")
    if construction == "gabor":
        return build_gabor_fusion(rows, B)
    nonzero = window_rows(rows)
    F = build_from_coisometries(list(nonzero), lattice_unitaries(n), B)
    bound = n * float(np.sum(np.abs(nonzero) ** 2)) / B
    return GaborFusionFrame(F.subspaces, None, window=nonzero,
                            lattice=tuple(full_lattice(n)), tight_bound=bound)


def cmd_build(args):
    if not args.config:
        raise CliError("build needs --config", EXIT_PARSE)
    try:
        n, rows, B, construction = parse_config(_read(args.config, "config"))
    except FormatError as err:
        raise CliError(f"bad config: {err}", EXIT_PARSE) from None
    try:
        F = build_frame(n, rows, B, construction)
    except HypothesisError as err:
        which = ("coisometry construction" if construction == "coisometry"
                 else "Gabor fusion construction")
        raise CliError(f"{which} hypothesis failed ({err.hypothesis}): {err}",
                       EXIT_HYPOTHESIS) from None
    _emit(format_frame(F, B), args.out)
    return EXIT_OK


def _support_size(F):
    if not isinstance(F, GaborFusionFrame) or F.window is None or len(F.window) == 0:
        return None
    return int(np.count_nonzero(np.abs(F.window[0]) > 1e-12))


def cmd_verify(args):
    if not args.frame:
        raise CliError("verify needs --frame", EXIT_PARSE)
    F, _ = _load_frame(args.frame)
    n = F.ambient_dim
    lo, hi, spanning = frame_bounds(F)
    A = is_tight(F, tol=args.tol if args.tol is not None else 1e-10)
    cert = injectivity_certificate(F)
    print(f"frame: N = {n}, {len(F)} subspaces")
    print(f"bounds: A = {_g(lo)}, B = {_g(hi)}" + ("" if spanning else " (not a fusion frame)"))
    print(f"tight, A = {_g(A)}" if A is not None else "not tight")
    print(f"certificate rank {cert.rank}/{cert.dimension} ({cert.verdict})")
    n0 = _support_size(F)
    if n0 is not None and 0 < n0 < n:
        ok = divisibility_condition(n, n0)
        print(f"condition({n},{n0}) = {'true' if ok else 'false'}")
    else:
        print("condition: n/a")
    return EXIT_OK if A is not None else EXIT_FALSE


def cmd_measure(args):
    if not args.frame or not args.signal:
        raise CliError("measure needs --frame and --signal", EXIT_PARSE)
    F, _ = _load_frame(args.frame)
    try:
        x = parse_signal(_read(args.signal, "signal file"))
    except FormatError as err:
        raise CliError(f"malformed signal file: {err}", EXIT_PARSE) from None
    if x.size != F.ambient_dim:
        raise CliError(f"signal has length {x.size}, frame lives in C^{F.ambient_dim}",
                       EXIT_DIMENSION)
    if not isinstance(F, GaborFusionFrame):
        raise CliError("measurement CSV needs a lattice-indexed frame", EXIT_PARSE)
    m = measure(x, F)
    _emit(format_measurements(m), args.out)
    return EXIT_OK


def cmd_reconstruct(args):
    if not args.frame or not args.measurements:
        raise CliError("reconstruct needs --frame and --measurements", EXIT_PARSE)
    F, _ = _load_frame(args.frame)
    try:
        m = parse_measurements(_read(args.measurements, "measurement file"))
    except FormatError as err:
        raise CliError(f"malformed measurement file: {err}", EXIT_PARSE) from None
    lattice = getattr(F, "lattice", ())
    if set(m.index) != set(lattice) or len(m.index) != len(lattice):
        raise CliError("measurement lattice does not match the frame", EXIT_DIMENSION)
    order = {p: i for i, p in enumerate(m.index)}
    values = np.array([m.values[order[p]] for p in lattice])
    m = type(m)(values, lattice, m.squared, m.frame_id)
    truth = None
    if args.truth:
        try:
            truth = parse_signal(_read(args.truth, "truth signal"))
        except FormatError as err:
            raise CliError(f"malformed truth file: {err}", EXIT_PARSE) from None
        if truth.size != F.ambient_dim:
            raise CliError("truth signal has the wrong length", EXIT_DIMENSION)
    tol = args.tol if args.tol is not None else 5e-2
    try:
        cls = reconstruct(m, F, tol=tol)
    except UncertifiedFrameError as err:
        raise CliError(str(err), EXIT_UNCERTIFIED) from None
    except InconsistentMeasurementsError as err:
        raise CliError(str(err), EXIT_INCONSISTENT) from None
    _emit(format_signal(cls.representative), args.out)
    if truth is not None:
        d = mod_phase_distance(truth, cls.representative)
        print(f"mod-phase distance: {d:.6e}", file=sys.stderr if args.out in (None, "-") else sys.stdout)
    return EXIT_OK


def demo_rows(n, support):
    """Window rows for the demo: the C^7 pair for (7, 3), otherwise an indicator plus a delta."""
    if (n, support) == (7, 3):
        return np.array([indicator(7, [1, 2, 4]) / np.sqrt(3), indicator(7, [3])])
    rows = [indicator(n, range(support)) / np.sqrt(support), indicator(n, [support])]
    return np.array(rows)


def cmd_demo(args):
    n = args.n if args.n is not None else 7
    support = args.support if args.support is not None else 3
    seed = args.seed if args.seed is not None else 0
    trials = 5
    if not 0 < support < n:
        raise CliError(f"need 0 < support < n, got support={support}, n={n}", EXIT_PARSE)
    print(f"seed = {seed}")
    if not divisibility_condition(n, support):
        print(f"refusing: condition({n},{support}) fails")
        return EXIT_FALSE
    print(f"condition({n},{support}) = true")
    rows = demo_rows(n, support)
    F = build_gabor_fusion(rows, 1.0)
    A = is_tight(F)
    print(f"frame: {len(F)} subspaces of dimension {F.subspaces[0].dim} in C^{n}")
    if A is None:
        print("not tight")
        return EXIT_FALSE
    print(f"tight, A = {_g(A)} (expected N |Y|^2 / B = {_g(F.tight_bound)})")
    cert = injectivity_certificate(F)
    print(f"certificate rank {cert.rank}/{cert.dimension} ({cert.verdict})")
    if not cert.certified:
        return EXIT_UNCERTIFIED
    rng = np.random.default_rng(seed)
    worst = 0.0
    for t in range(trials):
        x = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        x_hat = reconstruct(measure(x, F), F).representative
        d = mod_phase_distance(x, x_hat) / np.linalg.norm(x)
        worst = max(worst, d)
        print(f"signal {t}: relative mod-phase distance = {d:.3e}")
    return EXIT_OK if worst <= DEMO_TOL else EXIT_FALSE


def make_parser():
    p = argparse.ArgumentParser(prog="gaborfusion", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="build a Gabor fusion frame from a JSON config")
    b.add_argument("--config", required=True)
    b.add_argument("--out", "-o")
    b.set_defaults(func=cmd_build)

    v = sub.add_parser("verify", help="report bounds, tightness and certificate of a frame")
    v.add_argument("--frame", required=True)
    v.add_argument("--tol", type=float)
    v.set_defaults(func=cmd_verify)

    m = sub.add_parser("measure", help="write the fusion measurements of a signal as CSV")
    m.add_argument("--frame", required=True)
    m.add_argument("--signal", required=True)
    m.add_argument("--out", "-o")
    m.set_defaults(func=cmd_measure)

    r = sub.add_parser("reconstruct", help="recover a signal modulo phase")
    r.add_argument("--frame", required=True)
    r.add_argument("--measurements", required=True)
    r.add_argument("--truth")
    r.add_argument("--tol", type=float)
    r.add_argument("--out", "-o")
    r.set_defaults(func=cmd_reconstruct)

    d = sub.add_parser("demo", help="run the C^7 example end to end")
    d.add_argument("--seed", type=int)
    d.add_argument("--n", type=int)
    d.add_argument("--support", type=int)
    d.set_defaults(func=cmd_demo)
    return p


def main(argv=None):
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("default")
            return args.func(args)
    except CliError as err:
        print(f"error: {err}", file=sys.stderr)
        return err.code


if __name__ == "__main__":
    sys.exit(main())
