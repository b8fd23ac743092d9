"""Command-line front end.

Quadric documents are text files with ``#`` comment lines and one line of
ten coefficients ``a b c d e f g h i j`` (d = xy, e = yz, f = zx).  Point
files hold ``x y z`` per line.

Exit codes: 0 success, 1 usage or input error, 2 degenerate input,
3 numerical failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import costmodel, dcga, dpga, oracle, qcga
from .algebra import left_contraction
from .errors import DegenerateError, NotInSpanError, NumericError
from .interop import FrameworkTag, convert, from_coefficients, membership, to_coefficients
from .oracle import PluckerLine, QuadricCoefficients

EXIT_OK, EXIT_USAGE, EXIT_DEGENERATE, EXIT_NUMERIC = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# ----------------------------------------------------------------------
# file formats


def read_document(path: str | Path) -> tuple[QuadricCoefficients, list[str]]:
    comments, rows = [], []
    for raw in Path(path).read_text().splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            comments.append(line[1:].strip())
            continue
        rows.append(line)
    if len(rows) != 1:
        raise UsageError(f"{path}: expected exactly one coefficient line, found {len(rows)}")
    try:
        vals = [float(t) for t in rows[0].split()]
    except ValueError:
        raise UsageError(f"{path}: coefficients must be numbers") from None
    if len(vals) != 10:
        raise UsageError(f"{path}: expected 10 coefficients, found {len(vals)}")
    return QuadricCoefficients.from_array(vals).validate(), comments


def format_document(q: QuadricCoefficients, comments: list[str]) -> str:
    head = "".join(f"# {c}\n" for c in comments)
    return head + str(q) + "\n"


def read_points(path: str | Path) -> np.ndarray:
    pts = []
    for n, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.replace(",", " ").split()
        if len(parts) != 3:
            raise UsageError(f"{path}:{n}: expected 'x y z'")
        try:
            pts.append([float(t) for t in parts])
        except ValueError:
            raise UsageError(f"{path}:{n}: coordinates must be numbers") from None
    return np.array(pts).reshape(-1, 3)


def parse_point(text: str) -> np.ndarray:
    try:
        vals = [float(t) for t in text.split(",")]
    except ValueError:
        raise UsageError(f"bad point {text!r}; expected 'x,y,z'") from None
    if len(vals) != 3:
        raise UsageError(f"bad point {text!r}; expected 'x,y,z'")
    return np.array(vals)


def parse_line(text: str) -> PluckerLine:
    if ";" not in text:
        raise UsageError(f"bad line {text!r}; expected 'px,py,pz;dx,dy,dz'")
    p, d = text.split(";", 1)
    try:
        return PluckerLine.from_point_direction(parse_point(p), parse_point(d))
    except DegenerateError:
        raise
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _fmt(v: float) -> str:
    return f"{v:.12g}"


# ----------------------------------------------------------------------
# commands


def cmd_fit(args) -> int:
    pts = read_points(args.points)
    if len(pts) < 9:
        raise UsageError(f"need at least 9 points, got {len(pts)}")
    fw = FrameworkTag.parse(args.framework)
    if fw is FrameworkTag.QCGA:
        method = "wedge" if len(pts) == 9 else "reference"
        q = qcga.extract_coefficients(qcga.quadric_from_nine_points(pts, method=method))
    else:
        q = to_coefficients(from_coefficients(oracle.fit_nine_points(pts), fw), fw)
    q = QuadricCoefficients.from_array(q.canonical())
    _emit(format_document(q, [f"fit from {len(pts)} points via {fw.value}"]), args.out)
    return EXIT_OK


def cmd_convert(args) -> int:
    q, comments = read_document(args.doc)
    src, dst = FrameworkTag.parse(args.source), FrameworkTag.parse(args.target)
    entity = convert(from_coefficients(q, src), src, dst)
    q2 = to_coefficients(entity, dst)
    text = f"# {dst.value} entity: {entity!r}\n" if not args.out else ""
    _emit(text + format_document(q2, comments + [f"converted {src.value} -> {dst.value}"]), args.out)
    return EXIT_OK


def cmd_transform(args) -> int:
    q, comments = read_document(args.doc)
    if not args.rotate:
        raise UsageError("transform needs at least one --rotate AXIS DEG")
    Q = convert(from_coefficients(q, FrameworkTag.QCGA), FrameworkTag.QCGA, FrameworkTag.DPGA)
    for axis, deg in args.rotate:
        if axis.lower() not in ("x", "y", "z"):
            raise UsageError(f"rotation axis must be x, y or z, got {axis!r}")
        try:
            angle = np.deg2rad(float(deg))
        except ValueError:
            raise UsageError(f"bad angle {deg!r}") from None
        Q = dpga.apply(dpga.axis_rotor(axis.lower(), angle), Q)
        comments = comments + [f"rotate {axis.lower()} {deg}"]
    out = to_coefficients(convert(Q, FrameworkTag.DPGA, FrameworkTag.QCGA), FrameworkTag.QCGA)
    _emit(format_document(out, comments), args.out)
    return EXIT_OK


def cmd_eval(args) -> int:
    q, _ = read_document(args.doc)
    fw = FrameworkTag.parse(args.framework)
    p = parse_point(args.point)
    print(_fmt(membership(from_coefficients(q, fw), fw, p)))
    return EXIT_OK


def cmd_tangent(args) -> int:
    q, _ = read_document(args.doc)
    fw = FrameworkTag.parse(args.framework)
    p = parse_point(args.point)
    entity = from_coefficients(q, fw)
    try:
        if fw is FrameworkTag.DCGA:
            n, d = dcga.plane_normal_offset(dcga.tangent_plane(entity, p))
        elif fw is FrameworkTag.DPGA:
            if abs(oracle.eval(q, p)) > 1e-8 * max(1.0, np.abs(q.as_array()).max()):
                raise UsageError("point is not on the quadric")
            n, d = dpga.plane_normal_offset(dpga.tangent_plane_dual(entity, p))
        else:
            n, d = qcga.plane_normal_offset(qcga.tangent_plane(entity, p, orthogonal_offset=True))
    except ValueError as exc:
        if isinstance(exc, DegenerateError):
            raise
        raise UsageError(str(exc)) from None
    if np.dot(n, oracle.gradient(q, p)) < 0:
        n, d = -n, -d
    print("normal " + " ".join(_fmt(v) for v in n))
    print("offset " + _fmt(d))
    return EXIT_OK


def cmd_intersect(args) -> int:
    q, _ = read_document(args.doc)
    fw = FrameworkTag.parse(args.framework)
    line = parse_line(args.line)
    entity = from_coefficients(q, fw)
    roots = oracle.intersect_line(q, line)
    if fw is FrameworkTag.DCGA:
        P = dcga.intersect(entity, dcga.line_from_plucker(line))
        check = lambda p: dcga.pair_point_residual(P, p)  # noqa: E731
    elif fw is FrameworkTag.DPGA:
        x1, x2 = line.point_at(0.0), line.point_at(1.0)
        L = dpga.line(x1, x2)
        P = dpga.intersect(dpga.dual_line(x1, x2), entity, L)
        check = lambda p: dpga.pair_point_residual(P, p, L)  # noqa: E731
    else:
        c = qcga.intersect(entity, qcga.line_from_plucker(line))
        check = lambda p: qcga.pair_point_residual(c, p)  # noqa: E731
    print(f"{len(roots)} intersection point(s)")
    for p in roots:
        r = check(p)
        if r > 1e-8:
            raise NumericError(f"pair-point test rejects root {p} (residual {r:.3g})")
        print(" ".join(_fmt(v) for v in p) + f"  residual {r:.2e}")
    return EXIT_OK


def cmd_bench(args) -> int:
    reports = costmodel.table3()
    if args.measure:
        rng = np.random.default_rng(args.seed)
        for rep in reports:
            worst = 0
            for _ in range(args.measure):
                q = oracle.random_quadric(rng, "ellipsoid")
                if rep.operation == "membership":
                    where = rng.uniform(-1, 1, 3)
                elif rep.operation == "tangent_plane":
                    where = oracle.sample_surface(q, 1, rng)[0]
                else:
                    where = oracle.random_line(rng)
                worst = max(worst, costmodel.measure(rep.framework, rep.operation, q, where).measured)
            rep.measured = worst
    print(costmodel.format_table(reports, tsv=args.tsv))
    return EXIT_OK


def sample_surface_grid(q: QuadricCoefficients, n: int, box: float = 2.0, tol: float = 1e-6,
                        max_iter: int = 200) -> np.ndarray:
    """Points on the surface, one per grid cell whose corners change sign.

    Each such cell is searched by bisection from its center toward a corner
    of the other sign (or a zero corner) until ``|f| < tol``.
    """
    if n < 2:
        raise UsageError("grid needs at least 2 cells per axis")
    ax = np.linspace(-box, box, n + 1)
    X, Y, Z = np.meshgrid(ax, ax, ax, indexing="ij")
    F = oracle.eval(q, np.stack([X, Y, Z], axis=-1).reshape(-1, 3)).reshape(X.shape)
    corners = np.stack([F[i:n + i, j:n + j, k:n + k] for i in (0, 1) for j in (0, 1) for k in (0, 1)], axis=-1)
    hits = np.argwhere((corners.min(axis=-1) <= 0.0) & (corners.max(axis=-1) >= 0.0))
    offsets = np.array([(i, j, k) for i in (0, 1) for j in (0, 1) for k in (0, 1)])
    seen: dict[tuple, np.ndarray] = {}
    for cell in hits:
        lo = ax[cell]
        h = ax[1] - ax[0]
        c = lo + 0.5 * h
        fc = float(oracle.eval(q, c))
        if abs(fc) < tol:
            p = c
        else:
            vals = corners[tuple(cell)]
            pick = [k for k in range(8) if vals[k] == 0.0 or np.sign(vals[k]) != np.sign(fc)]
            if not pick:
                continue
            a, b = c, lo + offsets[pick[0]] * h
            fa = fc
            p = None
            for _ in range(max_iter):
                m = 0.5 * (a + b)
                fm = float(oracle.eval(q, m))
                if abs(fm) < tol:
                    p = m
                    break
                if np.sign(fm) == np.sign(fa):
                    a, fa = m, fm
                else:
                    b = m
            if p is None:
                continue
        key = tuple(np.round(p, 9))
        seen.setdefault(key, p)
    return np.array(list(seen.values())).reshape(-1, 3)


def cmd_sample(args) -> int:
    q, _ = read_document(args.doc)
    pts = sample_surface_grid(q, args.grid, args.box)
    text = "".join(" ".join(_fmt(v) for v in p) + "\n" for p in pts)
    if len(pts) == 0:
        print("warning: no surface points inside the sampling box", file=sys.stderr)
    _emit(text, args.out)
    return EXIT_OK


# ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    frameworks = [t.value for t in FrameworkTag]
    p = _Parser(prog="gaquadrics", description="Quadric surfaces in DCGA, DPGA and QCGA.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("fit", help="quadric through 9 or more points")
    s.add_argument("points")
    s.add_argument("--framework", choices=frameworks, default="qcga")
    s.add_argument("--out")
    s.set_defaults(func=cmd_fit)

    s = sub.add_parser("convert", help="move a quadric between frameworks")
    s.add_argument("doc")
    s.add_argument("--from", dest="source", choices=frameworks, required=True)
    s.add_argument("--to", dest="target", choices=frameworks, required=True)
    s.add_argument("--out")
    s.set_defaults(func=cmd_convert)

    s = sub.add_parser("transform", help="rotate a quadric with DPGA rotors")
    s.add_argument("doc")
    s.add_argument("--rotate", nargs=2, action="append", metavar=("AXIS", "DEG"))
    s.add_argument("--out")
    s.set_defaults(func=cmd_transform)

    s = sub.add_parser("eval", help="value of the implicit function at a point")
    s.add_argument("doc")
    s.add_argument("--point", required=True)
    s.add_argument("--framework", choices=frameworks, default="qcga")
    s.set_defaults(func=cmd_eval)

    s = sub.add_parser("tangent", help="tangent plane at a surface point")
    s.add_argument("doc")
    s.add_argument("--point", required=True)
    s.add_argument("--framework", choices=frameworks, default="qcga")
    s.set_defaults(func=cmd_tangent)

    s = sub.add_parser("intersect", help="quadric-line intersection")
    s.add_argument("doc")
    s.add_argument("--line", required=True)
    s.add_argument("--framework", choices=frameworks, default="qcga")
    s.set_defaults(func=cmd_intersect)

    s = sub.add_parser("bench", help="product-count table")
    s.add_argument("--table", action="store_true", help="accepted for compatibility; the table is always shown")
    s.add_argument("--tsv", action="store_true")
    s.add_argument("--measure", type=int, default=0, metavar="N",
                   help="add the largest measured count over N random quadrics")
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_bench)

    s = sub.add_parser("sample", help="point cloud from a sign-change grid")
    s.add_argument("doc")
    s.add_argument("--grid", type=int, default=20)
    s.add_argument("--box", type=float, default=2.0, help="half-width of the sampling cube")
    s.add_argument("--out")
    s.set_defaults(func=cmd_sample)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DegenerateError, NotInSpanError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except NumericError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
