"""Linear inequality systems over named rate variables.

Provides the geometric plumbing for capacity-region work: Fourier-Motzkin
elimination, 2-D corner (vertex) enumeration, containment and
offset-containment queries, and unions of half-plane systems indexed by a
correlation parameter rho.

Arithmetic policy: elimination runs in exact rational arithmetic whenever
every coefficient and right-hand side is an int or Fraction; any float in
the input switches the run to float mode with a 1e-9 zero tolerance.
Rationale: pairwise combination amplifies rounding error, so exact inputs
should give exact projections.

A right-hand side of +inf marks a vacuous constraint (used for rate bounds
that diverge when an interference gain is 0); vacuous constraints are
dropped by elimination and satisfied by every point.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

ZERO_TOL = 1e-9

Number = (int, Fraction)  # exact types; float means approximate mode


def _is_exact(x) -> bool:
    return isinstance(x, Number) and not isinstance(x, bool)


def _canon(x):
    # collapse Fraction with unit denominator to int for readability
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x)
    return x


@dataclass(frozen=True)
class LinearInequality:
    """A constraint sum(coeffs[v] * v) <= rhs over named variables.

    coeffs is stored as a sorted tuple of (name, coefficient) pairs with
    zero coefficients dropped; construct with any mapping.  rhs may be
    +inf (vacuous constraint).  An empty coefficient vector is permitted
    only as an infeasibility marker produced by elimination (0 <= rhs
    with rhs < 0); well-formed user constraints have at least one
    nonzero coefficient.
    """

    coeffs: tuple
    rhs: object

    def __init__(self, coeffs: Mapping[str, object], rhs) -> None:
        items = []
        for name, value in coeffs.items():
            if _is_exact(value):
                value = _canon(Fraction(value))
                if value == 0:
                    continue
            else:
                value = float(value)
                if value == 0.0:
                    continue
            items.append((str(name), value))
        items.sort(key=lambda kv: kv[0])
        if not (_is_exact(rhs) or isinstance(rhs, float)):
            raise TypeError(f"rhs must be numeric, got {rhs!r}")
        object.__setattr__(self, "coeffs", tuple(items))
        object.__setattr__(self, "rhs", _canon(rhs) if _is_exact(rhs) else float(rhs))

    def coeff(self, name: str):
        for n, v in self.coeffs:
            if n == name:
                return v
        return 0

    def as_dict(self) -> dict:
        return dict(self.coeffs)

    @property
    def is_vacuous(self) -> bool:
        return isinstance(self.rhs, float) and math.isinf(self.rhs) and self.rhs > 0

    @property
    def is_trivial(self) -> bool:
        return not self.coeffs and (self.is_vacuous or self.rhs >= 0)

    @property
    def is_infeasible_marker(self) -> bool:
        return not self.coeffs and not self.is_vacuous and self.rhs < 0

    def is_exact(self) -> bool:
        return all(_is_exact(v) for _, v in self.coeffs) and _is_exact(self.rhs)

    def evaluate(self, point: Mapping[str, float]) -> float:
        return sum(float(v) * float(point.get(n, 0.0)) for n, v in self.coeffs)

    def satisfied(self, point: Mapping[str, float], tol: float = ZERO_TOL) -> bool:
        if self.is_vacuous:
            return True
        return self.evaluate(point) <= float(self.rhs) + tol


@dataclass(frozen=True)
class HalfPlaneSystem:
    """An ordered variable list and a conjunction of <= constraints."""

    variables: tuple
    constraints: tuple

    def __init__(self, variables: Sequence[str],
                 constraints: Iterable[LinearInequality]) -> None:
        variables = tuple(str(v) for v in variables)
        constraints = tuple(constraints)
        declared = set(variables)
        for c in constraints:
            for name, _ in c.coeffs:
                if name not in declared:
                    raise ValueError(f"constraint references undeclared variable {name!r}")
        object.__setattr__(self, "variables", variables)
        object.__setattr__(self, "constraints", constraints)

    def satisfied(self, point: Mapping[str, float], tol: float = ZERO_TOL) -> bool:
        return all(c.satisfied(point, tol) for c in self.constraints)

    def is_exact(self) -> bool:
        return all(c.is_exact() for c in self.constraints if not c.is_vacuous)


def _normalized_key(c: LinearInequality, var_order: Sequence[str]):
    """Scale a constraint so its first nonzero coefficient (in variable
    order) has magnitude 1; returns (coeff tuple, rhs) for duplicate and
    domination comparison."""
    by_name = c.as_dict()
    scale = None
    for name in var_order:
        v = by_name.get(name)
        if v:
            scale = abs(v) if _is_exact(v) else abs(float(v))
            break
    if scale is None:
        return ((), c.rhs)
    coeffs = tuple((name, _canon(Fraction(v) / scale) if _is_exact(v) else float(v) / scale)
                   for name, v in c.coeffs)
    rhs = c.rhs if c.is_vacuous else (
        _canon(Fraction(c.rhs) / scale) if _is_exact(c.rhs) and _is_exact(scale)
        else float(c.rhs) / float(scale))
    return (coeffs, rhs)


def _dedupe(constraints: Iterable[LinearInequality],
            var_order: Sequence[str]) -> list:
    """Drop trivial constraints, exact duplicates, and dominated copies
    (same normalized normal vector, larger rhs)."""
    best: dict = {}
    order: list = []
    for c in constraints:
        if c.is_trivial or c.is_vacuous:
            continue
        key, rhs = _normalized_key(c, var_order)
        if key not in best:
            best[key] = (rhs, c)
            order.append(key)
        else:
            old_rhs, _ = best[key]
            if not (isinstance(rhs, float) and math.isinf(rhs)) and rhs < old_rhs:
                best[key] = (rhs, c)
    return [best[k][1] for k in order]


def fourier_motzkin_eliminate(sys: HalfPlaneSystem, var: str) -> HalfPlaneSystem:
    """Project the feasible set of `sys` onto the variables other than `var`.

    Constraints are split by the sign of the coefficient on `var`; every
    (upper bound, lower bound) pair combines into one constraint of the
    projection.  Redundant duplicates are removed by exact comparison of
    scale-normalized coefficient vectors; no LP-based minimality is
    attempted.  A combination with an all-zero coefficient vector and a
    negative rhs is kept as an infeasibility marker (empty projection).
    """
    if var not in sys.variables:
        raise ValueError(f"variable {var!r} not declared in system")
    exact = sys.is_exact()

    def sign_of(c: LinearInequality) -> int:
        v = c.coeff(var)
        if exact:
            return 0 if v == 0 else (1 if v > 0 else -1)
        v = float(v)
        if abs(v) <= ZERO_TOL:
            return 0
        return 1 if v > 0 else -1

    zero, pos, neg = [], [], []
    for c in sys.constraints:
        if c.is_vacuous:
            continue
        {0: zero, 1: pos, -1: neg}[sign_of(c)].append(c)

    out = list(zero)
    names = [v for v in sys.variables if v != var]
    for p in pos:
        cp = p.coeff(var)
        for n in neg:
            cn = n.coeff(var)
            if exact:
                wp, wn = Fraction(1, 1) / cp, Fraction(1, 1) / (-cn)
            else:
                wp, wn = 1.0 / float(cp), 1.0 / (-float(cn))
            coeffs = {}
            for name in names:
                v = p.coeff(name) * wp + n.coeff(name) * wn
                if not exact and abs(float(v)) <= ZERO_TOL:
                    v = 0
                coeffs[name] = v
            rhs = p.rhs * wp + n.rhs * wn
            out.append(LinearInequality(coeffs, rhs))
    return HalfPlaneSystem(names, _dedupe(out, names))


def lemma_rate_split_system() -> HalfPlaneSystem:
    """The symbolic rate-splitting inequality system whose projection onto
    (R1, R2) gives the two-user bounds.

    The mutual-information constants a1..a3, b1..b3 are carried as symbolic
    nonnegative variables so the projection keeps them on the right-hand
    side: constraints are written as e.g. R2c - a1 <= 0.  The common-rate
    variables R1c, R2c satisfy 0 <= Rkc <= Rk and are the ones to
    eliminate.
    """
    c = lambda m: LinearInequality(m, 0)
    constraints = (
        c({"R2c": 1, "a1": -1}),              # R2c <= a1
        c({"R1": 1, "R1c": -1, "a2": -1}),    # R1 - R1c <= a2
        c({"R1": 1, "R2c": 1, "a3": -1}),     # R1 + R2c <= a3
        c({"R1c": 1, "b1": -1}),              # R1c <= b1
        c({"R2": 1, "R2c": -1, "b2": -1}),    # R2 - R2c <= b2
        c({"R2": 1, "R1c": 1, "b3": -1}),     # R2 + R1c <= b3
        c({"R1c": -1}),                       # R1c >= 0
        c({"R1c": 1, "R1": -1}),              # R1c <= R1
        c({"R2c": -1}),                       # R2c >= 0
        c({"R2c": 1, "R2": -1}),              # R2c <= R2
    )
    names = ("R1", "R2", "R1c", "R2c", "a1", "a2", "a3", "b1", "b2", "b3")
    return HalfPlaneSystem(names, constraints)


# ---------------------------------------------------------------------------
# 2-D corner enumeration


def _recession_directions(rows):
    """Candidate extreme rays of the recession cone within the nonnegative
    quadrant: the axes plus each constraint boundary direction."""
    cands = [(1.0, 0.0), (0.0, 1.0)]
    for a1, a2, _ in rows:
        for d in ((a2, -a1), (-a2, a1)):
            norm = math.hypot(*d)
            if norm > 0 and d[0] >= -ZERO_TOL * norm and d[1] >= -ZERO_TOL * norm:
                cands.append((max(d[0], 0.0) / norm, max(d[1], 0.0) / norm))
    return cands


def corner_points(sys: HalfPlaneSystem, tol: float = 1e-9) -> list:
    """Vertices of a 2-variable system intersected with the nonnegative
    quadrant, sorted counterclockwise around the centroid and deduplicated
    within `tol`.

    Enumerates all pairwise line intersections of the constraint
    boundaries (including the axes) and keeps the feasible ones.  Raises
    ValueError when the intersection is unbounded (detected through the
    recession cone of the constraint normals).
    """
    if len(sys.variables) != 2:
        raise ValueError("corner enumeration requires exactly 2 variables")
    x, y = sys.variables
    rows = [(float(c.coeff(x)), float(c.coeff(y)), float(c.rhs))
            for c in sys.constraints
            if not c.is_vacuous and c.coeffs]
    if any(c.is_infeasible_marker for c in sys.constraints):
        return []
    rows.append((-1.0, 0.0, 0.0))
    rows.append((0.0, -1.0, 0.0))

    for d in _recession_directions(rows):
        if d == (0.0, 0.0):
            continue
        if all(a1 * d[0] + a2 * d[1] <= ZERO_TOL for a1, a2, _ in rows):
            raise ValueError("system is unbounded over the nonnegative quadrant")

    def feasible(px, py):
        return all(a1 * px + a2 * py <= r + tol * (1.0 + abs(r))
                   for a1, a2, r in rows)

    points = []
    for i in range(len(rows)):
        a11, a12, r1 = rows[i]
        for j in range(i + 1, len(rows)):
            a21, a22, r2 = rows[j]
            det = a11 * a22 - a12 * a21
            scale = max(abs(a11), abs(a12), abs(a21), abs(a22), 1.0)
            if abs(det) <= 1e-12 * scale * scale:
                continue
            px = (r1 * a22 - r2 * a12) / det + 0.0   # +0.0 clears -0.0
            py = (a11 * r2 - a21 * r1) / det + 0.0
            if feasible(px, py):
                points.append((px, py))

    unique: list = []
    for p in points:
        if not any(abs(p[0] - q[0]) <= tol and abs(p[1] - q[1]) <= tol
                   for q in unique):
            unique.append(p)
    if len(unique) <= 1:
        return unique
    cx = sum(p[0] for p in unique) / len(unique)
    cy = sum(p[1] for p in unique) / len(unique)
    unique.sort(key=lambda p: math.atan2(p[1] - cy, p[0] - cx))
    return unique


# ---------------------------------------------------------------------------
# rho-indexed unions


@dataclass(frozen=True)
class RateRegion2D:
    """A union of half-plane systems over {R1, R2}, one per correlation
    parameter rho in [0, 1].

    Each member system is interpreted inside the nonnegative quadrant.
    Every system this package constructs is downward closed there (all
    constraints are upper bounds with nonnegative coefficients), which
    offset_contains relies on.
    """

    families: tuple  # of (rho: float, HalfPlaneSystem)

    def __init__(self, families: Iterable) -> None:
        fams = []
        for rho, system in families:
            rho = float(rho)
            if not 0.0 <= rho <= 1.0:
                raise ValueError(f"rho must lie in [0, 1], got {rho}")
            if tuple(system.variables) != ("R1", "R2"):
                raise ValueError("region families must be systems over (R1, R2)")
            fams.append((rho, system))
        object.__setattr__(self, "families", tuple(fams))

    def corner_points_by_family(self) -> list:
        return [(rho, corner_points(system)) for rho, system in self.families]


def contains(region: RateRegion2D, point, tol: float = ZERO_TOL) -> bool:
    """Union membership: true iff some family's system holds at `point`
    and the point is (within tol) in the nonnegative quadrant."""
    r1, r2 = float(point[0]), float(point[1])
    if r1 < -tol or r2 < -tol:
        return False
    mapping = {"R1": r1, "R2": r2}
    return any(system.satisfied(mapping, tol) for _, system in region.families)


def _ray_extent(system: HalfPlaneSystem, dx: float, dy: float):
    """Largest t >= 0 with t*(dx,dy) feasible, or None if the ray is
    entirely infeasible, or +inf if unconstrained along the direction."""
    hi = math.inf
    for c in system.constraints:
        if c.is_vacuous:
            continue
        a = float(c.coeff("R1")) * dx + float(c.coeff("R2")) * dy
        rhs = float(c.rhs)
        if a > ZERO_TOL:
            hi = min(hi, rhs / a)
        elif rhs < -ZERO_TOL:
            return None
    if hi < 0.0:
        return None
    return hi


def offset_contains(outer: RateRegion2D, inner: RateRegion2D,
                    d1: float, d2: float, probe_grid: int = 512,
                    tol: float = ZERO_TOL) -> bool:
    """Probe-based check that every boundary point of `outer` lies in
    inner expanded by the box [0,d1] x [0,d2].

    Boundary points of the union are sampled by casting probe_grid rays
    from the origin across the closed first-quadrant direction fan.  For
    downward-closed regions, p is in inner + box iff the componentwise
    clamp (max(p1-d1,0), max(p2-d2,0)) is in inner, which is the test
    applied at each probe.
    """
    if d1 < 0 or d2 < 0:
        raise ValueError("offsets must be nonnegative")
    if probe_grid < 2:
        raise ValueError("probe_grid must be at least 2")
    for k in range(probe_grid):
        theta = (math.pi / 2) * k / (probe_grid - 1)
        dx, dy = math.cos(theta), math.sin(theta)
        t_out = None
        for _, system in outer.families:
            t = _ray_extent(system, dx, dy)
            if t is not None:
                t_out = t if t_out is None else max(t_out, t)
        if t_out is None:
            continue
        if math.isinf(t_out):
            t_in = None
            for _, system in inner.families:
                t = _ray_extent(system, dx, dy)
                if t is not None:
                    t_in = t if t_in is None else max(t_in, t)
            if t_in is None or not math.isinf(t_in):
                return False
            continue
        px, py = t_out * dx, t_out * dy
        q = (max(px - d1, 0.0), max(py - d2, 0.0))
        if not contains(inner, q, tol=max(tol, 1e-9 * (1.0 + t_out))):
            return False
    return True


# ---------------------------------------------------------------------------
# serialization


def _rhs_to_json(rhs):
    if isinstance(rhs, float) and math.isinf(rhs):
        return None
    if isinstance(rhs, Fraction):
        return float(rhs)
    return rhs


def system_to_dict(system: HalfPlaneSystem, rho=None) -> dict:
    d = {
        "variables": list(system.variables),
        "constraints": [
            {"coeffs": {name: (float(v) if isinstance(v, Fraction) else v)
                        for name, v in c.coeffs},
             "rhs": _rhs_to_json(c.rhs)}
            for c in system.constraints
        ],
    }
    if rho is not None:
        d["rho"] = rho
    return d


def region_to_json(region: RateRegion2D) -> str:
    families = [system_to_dict(system, rho=rho) for rho, system in region.families]
    return json.dumps({"families": families}, indent=2, sort_keys=True)


def corners_to_csv(points: Iterable, header=("R1", "R2")) -> str:
    """RFC-4180 CSV with a header row; one row per corner."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for p in points:
        writer.writerow([format(float(v), ".12g") for v in p])
    return buf.getvalue()


def region_corners_csv(region: RateRegion2D) -> str:
    """Corner rows of every family, prefixed with the family's rho."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(("rho", "R1", "R2"))
    for rho, pts in region.corner_points_by_family():
        for p in pts:
            writer.writerow([format(float(rho), ".12g"),
                             format(p[0], ".12g"), format(p[1], ".12g")])
    return buf.getvalue()
