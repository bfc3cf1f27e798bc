"""Command-line front end.

Output is deterministic by construction: JSON is rendered by a small local
serializer with fixed key order and floats printed with 17 significant
digits, CSV rows use the same float format, and SVG files are plain static
documents.  Identical flags therefore give byte-identical output.

Exit codes: 0 on success, 2 on usage errors (click's default), 3 on domain
errors raised by the library.
"""

from __future__ import annotations

import functools
import json
import os
import sys

import click
import numpy as np

from . import angles, billiards, curves, polygons
from .chords import ArcLengthParam, validate_partials
from .errors import EquichordError, NotAdmissible, OutOfRange
from .fourier import Harmonic, TrigPolynomial
from .geometry import Geometry, circle_curve

DEFAULT_TOL = 1e-9

_GEOMETRY_TAGS = {
    "euclidean": Geometry.EUCLIDEAN, "E2": Geometry.EUCLIDEAN,
    "spherical": Geometry.SPHERICAL, "S2": Geometry.SPHERICAL,
    "hyperbolic": Geometry.HYPERBOLIC, "H2": Geometry.HYPERBOLIC,
}


def tolerance(override: float | None = None) -> float:
    """Default tolerance 1e-9, overridable by EQUICHORD_TOL or a flag."""
    if override is not None:
        return float(override)
    env = os.environ.get("EQUICHORD_TOL")
    return float(env) if env else DEFAULT_TOL


# ---------------------------------------------------------------------------
# deterministic rendering


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def to_json(obj, indent: int = 0) -> str:
    """JSON with insertion key order and 17-significant-digit floats."""
    pad = "  " * indent
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        rows = [f'{pad}  {json.dumps(str(k))}: {to_json(v, indent + 1)}'
                for k, v in obj.items()]
        return "{\n" + ",\n".join(rows) + "\n" + pad + "}"
    if isinstance(obj, np.ndarray):
        obj = obj.tolist()
    if isinstance(obj, (list, tuple)):
        if len(obj) == 0:
            return "[]"
        rows = [f"{pad}  {to_json(v, indent + 1)}" for v in obj]
        return "[\n" + ",\n".join(rows) + "\n" + pad + "]"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _fmt(obj)
    if obj is None:
        return "null"
    return json.dumps(obj)


def _emit(text: str, out: str | None):
    click.echo(text)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")


def _svg_document(polylines) -> str:
    """800x800 SVG; polylines is a list of (Nx2 array, color, closed)."""
    pts = np.vstack([p for p, _, _ in polylines])
    lo = pts.min(axis=0)
    hi = pts.max(axis=0)
    span = float(max(hi[0] - lo[0], hi[1] - lo[1], 1e-12))
    margin = 0.05 * span
    scale = 800.0 / (span + 2 * margin)

    def to_px(p):
        x = (p[:, 0] - lo[0] + margin) * scale
        y = 800.0 - (p[:, 1] - lo[1] + margin) * scale
        return x, y

    lines = ['<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 800 800">']
    for p, color, closed in polylines:
        x, y = to_px(np.asarray(p, float))
        coords = " ".join(f"{xi:.3f},{yi:.3f}" for xi, yi in zip(x, y))
        tag = "polygon" if closed else "polyline"
        lines.append(
            f'<{tag} fill="none" stroke="{color}" stroke-width="2" points="{coords}"/>'
        )
    lines.append("</svg>")
    return "\n".join(lines)


def _polygon_svg(vertices: np.ndarray, k: int) -> str:
    v = np.asarray(vertices, float)
    n = len(v)
    shapes = [(np.vstack([v[i], v[(i + k) % n]]), "gray", False) for i in range(n)]
    shapes.append((v, "black", True))
    return _svg_document(shapes)


def _curve_svg(points: np.ndarray) -> str:
    return _svg_document([(np.asarray(points, float), "black", True)])


# ---------------------------------------------------------------------------
# error mapping


def domain_errors(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except EquichordError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(3)
        except (OSError, KeyError, ValueError, json.JSONDecodeError) as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(3)
    return wrapper


def _parse_floats(text: str) -> list[float]:
    return [float(s) for s in text.split(",") if s.strip()]


# ---------------------------------------------------------------------------
# curve specs


def _harmonic_list(raw) -> tuple[Harmonic, ...]:
    return tuple(Harmonic(int(h["k"]), float(h["amp"]), float(h.get("phase", 0.0)))
                 for h in raw)


def _resolve_alpha(value, geometry: Geometry, radius: float | None) -> float:
    """Float passthrough, or 'auto-kN': first root of k tan c = tan kc,
    converted to a contact angle on S2/H2."""
    if isinstance(value, str):
        if not value.startswith("auto-k"):
            try:
                return float(value)
            except ValueError:
                raise OutOfRange(f"unrecognized angle reference {value!r}") from None
        k = int(value[len("auto-k"):])
        roots = angles.gutkin_roots(k)
        if not roots:
            raise NotAdmissible(f"k tan c = tan kc has no roots for k={k}")
        c = roots[0]
        if geometry is Geometry.EUCLIDEAN:
            return c
        return angles.contact_angle_from_c(geometry, radius, c)
    if value is None:
        raise OutOfRange("an alpha value or 'auto-kN' reference is required")
    return float(value)


class CurveSpec:
    """Parsed curve spec JSON plus the built curve."""

    def __init__(self, data: dict, alpha_override=None):
        tag = data.get("geometry", "euclidean")
        if tag not in _GEOMETRY_TAGS:
            raise OutOfRange(f"unknown geometry tag {tag!r}")
        self.geometry = _GEOMETRY_TAGS[tag]
        raw_alpha = alpha_override if alpha_override is not None else data.get("alpha")

        if self.geometry is Geometry.EUCLIDEAN:
            self.kind = "fourier"
            self.spec = curves.FourierCurveE2(
                c0=float(data["c0"]),
                harmonics=_harmonic_list(data.get("harmonics", [])),
            )
            self.curve = curves.build_e2_curve(self.spec)
            self.radius = None
            self.alpha = (_resolve_alpha(raw_alpha, self.geometry, None)
                          if raw_alpha is not None else None)
        else:
            self.kind = "deformed_circle"
            self.radius = float(data["R"])
            alpha = _resolve_alpha(raw_alpha, self.geometry, self.radius)
            g = TrigPolynomial(0.0, _harmonic_list(data.get("g", [])))
            self.spec = curves.DeformedCircle(
                geometry=self.geometry, R=self.radius,
                epsilon=float(data.get("epsilon", 0.0)), g=g, alpha=alpha,
            )
            self.curve = curves.build_deformed_circle(self.spec)
            self.alpha = alpha

    @classmethod
    def load(cls, path: str, alpha_override=None) -> "CurveSpec":
        with open(path) as fh:
            return cls(json.load(fh), alpha_override=alpha_override)

    def require_alpha(self) -> float:
        if self.alpha is None:
            raise OutOfRange("spec has no alpha; pass --alpha or add it to the spec")
        return self.alpha

    def sample_plane_points(self, n: int = 512) -> np.ndarray:
        """Planar image for SVG: E2 curve itself, geodesic polar plot otherwise."""
        ts = np.linspace(0.0, 2 * np.pi, n, endpoint=False)
        if self.geometry is Geometry.EUCLIDEAN:
            return np.asarray(self.curve.point(ts), float)
        r = self.spec.R + self.spec.epsilon * self.spec.g(ts)
        return np.stack([r * np.cos(ts), r * np.sin(ts)], axis=-1)


# ---------------------------------------------------------------------------
# commands


@click.group()
def main():
    """Equiangular-chord curves and polygons: construct, verify, classify."""


@main.command("solve-angle")
@click.option("--k", type=int, required=True, help="Diagonal/harmonic index, k >= 2.")
@click.option("--geometry", type=click.Choice(["E2", "S2", "H2"]), default="E2")
@click.option("--radius", type=float, default=None,
              help="Circle radius (required for S2/H2 contact angles).")
@click.option("--out", type=click.Path(), default=None)
@domain_errors
def cmd_solve_angle(k, geometry, radius, out):
    """Solve k tan c = tan(kc) and report contact angles."""
    geo = _GEOMETRY_TAGS[geometry]
    sols = angles.solve_angle(k, geo, radius)
    payload = [
        {"k": s.k, "geometry": s.geometry.value, "c": s.c, "alpha": s.alpha,
         "residual": s.residual, "radius": s.radius}
        for s in sols
    ]
    _emit(to_json(payload), out)


@main.group()
def polygon():
    """Gutkin (n,k)-gon constructions and checks."""


def _polygon_payload(p: polygons.GutkinPolygon) -> dict:
    return {"n": p.n, "k": p.k, "alpha": p.alpha,
            "vertices": [[float(x), float(y)] for x, y in p.vertices]}


@polygon.command("construct")
@click.option("--n", type=int, required=True)
@click.option("--k", type=int, required=True)
@click.option("--arcs", type=str, default=None,
              help="Comma-separated arcs summing to 2 pi gcd(n,k-1)/n (inscribed construction).")
@click.option("--params", type=str, default=None,
              help="Comma-separated free side lengths for the n = 2k construction.")
@click.option("--out", type=click.Path(), default=None)
@click.option("--svg", type=click.Path(), default=None)
@domain_errors
def cmd_polygon_construct(n, k, arcs, params, out, svg):
    """Construct a Gutkin polygon (inscribed arcs, or free sides when n = 2k)."""
    if arcs is not None:
        p = polygons.construct_inscribed(n, k, _parse_floats(arcs))
    elif n == 2 * k:
        free = _parse_floats(params) if params else []
        p = polygons.construct_2kk(k, free)
    else:
        raise click.UsageError("--arcs is required unless n = 2k (then --params)")
    _emit(to_json(_polygon_payload(p)), out)
    if svg:
        with open(svg, "w") as fh:
            fh.write(_polygon_svg(p.vertices, p.k) + "\n")


@polygon.command("verify")
@click.option("--in", "in_path", type=click.Path(exists=True), default=None,
              help="Polygon JSON produced by construct.")
@click.option("--regular", type=int, default=None, help="Use a regular n-gon instead.")
@click.option("--k", type=int, default=None, help="Diagonal index (default: from file).")
@click.option("--tol", type=float, default=None)
@click.option("--out", type=click.Path(), default=None)
@domain_errors
def cmd_polygon_verify(in_path, regular, k, tol, out):
    """Measure the 2n contact angles of the k-diagonals."""
    tol = tolerance(tol)
    if (in_path is None) == (regular is None):
        raise click.UsageError("exactly one of --in / --regular is required")
    if in_path is not None:
        with open(in_path) as fh:
            data = json.load(fh)
        vertices = np.asarray(data["vertices"], float)
        k = int(k if k is not None else data["k"])
    else:
        vertices = polygons.regular_polygon(regular)
        if k is None:
            raise click.UsageError("--k is required with --regular")
    rep = polygons.verify_gutkin(vertices, int(k), tol=tol)
    payload = {"n": rep["n"], "k": rep["k"], "is_gutkin": rep["is_gutkin"],
               "alpha": rep["alpha_measured"], "max_residual": rep["max_residual"],
               "tol": tol}
    _emit(to_json(payload), out)


@polygon.command("classify")
@click.option("--n", type=int, required=True)
@click.option("--k", type=int, required=True)
@click.option("--out", type=click.Path(), default=None)
@domain_errors
def cmd_polygon_classify(n, k, out):
    """Existence and dimension of nontrivial equiangular Gutkin (n,k)-gons."""
    spec = polygons.circulant_spectrum(n, k)
    restr2 = [s.r for s in angles.solve_restr2(n, k)]
    payload = {"n": n, "k": k,
               "exists_nontrivial": polygons.exists_nontrivial(n, k),
               "M": spec.M, "zero_set": list(spec.zero_set),
               "restr2_roots": restr2}
    _emit(to_json(payload), out)


@polygon.command("family")
@click.option("--n", type=int, required=True)
@click.option("--k", type=int, required=True)
@click.option("--coeffs", type=str, default=None,
              help="Comma-separated coefficients in the kernel basis.")
@click.option("--out", type=click.Path(), default=None)
@click.option("--svg", type=click.Path(), default=None)
@domain_errors
def cmd_polygon_family(n, k, coeffs, out, svg):
    """Kernel basis of equiangular deformations, optionally a family member."""
    basis = polygons.equiangular_family_basis(n, k)
    payload = {"n": n, "k": k, "dimension": len(basis),
               "basis": [[float(x) for x in b] for b in basis]}
    member = None
    if coeffs is not None:
        sides = polygons.family_member(n, k, _parse_floats(coeffs))
        member = polygons.polygon_from_sides(sides)
        payload["sides"] = [float(x) for x in sides]
        payload["vertices"] = [[float(x), float(y)] for x, y in member]
    _emit(to_json(payload), out)
    if svg and member is not None:
        with open(svg, "w") as fh:
            fh.write(_polygon_svg(member, k) + "\n")


@main.group()
def curve():
    """Gutkin curves from spec JSON files."""


@curve.command("build")
@click.option("--spec", "spec_path", type=click.Path(exists=True), required=True)
@click.option("--out", type=click.Path(), default=None)
@click.option("--svg", type=click.Path(), default=None)
@domain_errors
def cmd_curve_build(spec_path, out, svg):
    """Build the curve and report length and convexity."""
    cs = CurveSpec.load(spec_path)
    arclen = ArcLengthParam(cs.curve)
    payload = {"geometry": cs.geometry.value, "kind": cs.kind,
               "length": arclen.total_length, "convex": True}
    if cs.alpha is not None:
        payload["alpha"] = cs.alpha
    _emit(to_json(payload), out)
    if svg:
        with open(svg, "w") as fh:
            fh.write(_curve_svg(cs.sample_plane_points()) + "\n")


@curve.command("verify")
@click.option("--spec", "spec_path", type=click.Path(exists=True), required=True)
@click.option("--alpha", type=str, default=None,
              help="Contact angle (float or auto-kN); overrides the spec.")
@click.option("--samples", type=int, default=64)
@click.option("--tol", type=float, default=None)
@click.option("--out", type=click.Path(), default=None)
@domain_errors
def cmd_curve_verify(spec_path, alpha, samples, tol, out):
    """Shoot chords at angle alpha and report the worst arrival-angle defect."""
    tol = tolerance(tol)
    cs = CurveSpec.load(spec_path, alpha_override=alpha)
    a = cs.require_alpha()
    rep = curves.verify_curve_gutkin(cs.curve, a, n_samples=samples)
    payload = {"geometry": cs.geometry.value, "alpha": a,
               "n_samples": rep["n_samples"],
               "max_angle_residual": rep["max_angle_residual"],
               "is_gutkin": rep["max_angle_residual"] < tol, "tol": tol}
    _emit(to_json(payload), out)


@curve.command("residual")
@click.option("--spec", "spec_path", type=click.Path(exists=True), required=True)
@click.option("--operator", type=click.Choice(["E2", "S2", "H2"]), required=True)
@click.option("--alpha", type=str, default=None)
@click.option("--grid", type=int, default=4096)
@click.option("--out", type=click.Path(), default=None)
@domain_errors
def cmd_curve_residual(spec_path, operator, alpha, grid, out):
    """Max residual of the functional chord equation on a uniform grid."""
    cs = CurveSpec.load(spec_path, alpha_override=alpha)
    a = cs.require_alpha()
    geo = _GEOMETRY_TAGS[operator]
    ts = np.linspace(0.0, 2 * np.pi, int(grid), endpoint=False)
    if geo is Geometry.EUCLIDEAN:
        if cs.kind != "fourier":
            raise OutOfRange("the E2 operator applies to euclidean specs")
        rho = cs.spec.rho
        f = TrigPolynomial(rho.c0 * np.sin(a),
                           tuple(Harmonic(h.k, h.amp * np.sin(a), h.phase)
                                 for h in rho.harmonics))
        res = curves.e2_residual_operator(f, a)(ts)
    else:
        if cs.kind != "deformed_circle" or cs.geometry is not geo:
            raise OutOfRange("operator geometry must match the spec geometry")
        d = cs.spec
        f = TrigPolynomial(d.f_star,
                           tuple(Harmonic(h.k, d.epsilon * h.amp, h.phase)
                                 for h in d.g.harmonics))
        res = curves.s2_residual_operator(f, a, d.c, d.a, geo)(ts)
    payload = {"geometry": cs.geometry.value, "operator": operator, "alpha": a,
               "grid": int(grid), "max_residual": float(np.abs(res).max())}
    _emit(to_json(payload), out)


@main.group()
def billiard():
    """Billiard map inside a curve spec."""


@billiard.command("orbit")
@click.option("--spec", "spec_path", type=click.Path(exists=True), required=True)
@click.option("--t0", type=float, default=0.0)
@click.option("--theta", type=str, default=None,
              help="Launch angle (float or auto-kN); defaults to the spec alpha.")
@click.option("--steps", type=int, required=True)
@click.option("--out", type=click.Path(), default=None)
@domain_errors
def cmd_billiard_orbit(spec_path, t0, theta, steps, out):
    """Iterate the billiard map and export the orbit as CSV."""
    if steps < 0:
        raise click.UsageError("--steps must be >= 0")
    cs = CurveSpec.load(spec_path, alpha_override=theta)
    angle = cs.require_alpha()
    rows = billiards.export_orbit(cs.curve, billiards.BilliardState(t=t0, theta=angle),
                                  steps)
    lines = ["step,t,theta,chord_length"]
    for step, t, th, length in rows:
        lines.append(f"{step},{_fmt(t)},{_fmt(th)},{_fmt(length)}")
    _emit("\n".join(lines), out)


@main.group()
def chords():
    """Generating-function checks."""


@chords.command("validate")
@click.option("--spec", "spec_path", type=click.Path(exists=True), default=None)
@click.option("--circle", type=click.Choice(["E2", "S2", "H2"]), default=None)
@click.option("--radius", type=float, default=None)
@click.option("--samples", type=int, default=100)
@click.option("--seed", type=int, default=0)
@click.option("--step", type=float, default=1e-5)
@click.option("--out", type=click.Path(), default=None)
@domain_errors
def cmd_chords_validate(spec_path, circle, radius, samples, seed, step, out):
    """Check the closed-form partials of L(x,y) against finite differences."""
    if (spec_path is None) == (circle is None):
        raise click.UsageError("exactly one of --spec / --circle is required")
    if circle is not None:
        if radius is None:
            raise click.UsageError("--radius is required with --circle")
        cv = circle_curve(_GEOMETRY_TAGS[circle], radius)
    else:
        cv = CurveSpec.load(spec_path).curve
    report = validate_partials(cv, samples=samples, seed=seed, step=step)
    payload = {"geometry": report["geometry"], "samples": report["samples"],
               "step": report["step"], "max_rel_err": report["max_rel_err"],
               "per_quantity": dict(sorted(report["per_quantity"].items()))}
    _emit(to_json(payload), out)


if __name__ == "__main__":
    main()
