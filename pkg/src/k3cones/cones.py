"""Linear cone constraints and the exact lower bound on the extremal slope.

A divisor class on the blown-up threefold is written a*M + b*phiL - m*EP.
Effective classes whose support avoids the two exceptional surfaces satisfy
the necessary conditions encoded here; combining them with the nef-cone
facets of the first exceptional surface and the nef class built from the
blown-up family surface pins the slope of any extremal prime divisor to
lambda >= 39/22, with every step carrying an exact certificate.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

from .geometry import GeometryError, GeometryModel, lambda_slope
from .lattice import DivClass, pair, pair_const
from .linprog import (EQ, GE, GT, FarkasCertificate, IneqSystem, LinRow,
                      LPResult, feasibility, lp_optimize)
from .poly import Poly2
from .rationals import ratio_str

Q = Fraction
XY = ("x", "y")


class ConeError(ValueError):
    pass


@dataclass(frozen=True)
class ClassTriple:
    """The class a*M + b*phiL - m*EP."""

    a: Fraction
    b: Fraction
    m: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a", Q(self.a))
        object.__setattr__(self, "b", Q(self.b))
        object.__setattr__(self, "m", Q(self.m))


@dataclass(frozen=True)
class ConeCheck:
    name: str
    satisfied: bool
    slack: Fraction


@dataclass(frozen=True)
class ConeVerdict:
    checks: tuple[ConeCheck, ...]

    @property
    def overall(self) -> bool:
        return all(c.satisfied for c in self.checks)


def necessary_conditions(t: ClassTriple, assume_nodal_free: bool = False) -> ConeVerdict:
    """Conditions every mobile-supported effective class satisfies; the
    bitangent-count condition b >= 2m additionally needs one nodal-curve
    lifting outside the divisor."""
    checks = [
        ConeCheck("a >= m", t.a >= t.m, t.a - t.m),
        ConeCheck("a/2 + b >= 9m/2",
                  t.a / 2 + t.b >= Q(9, 2) * t.m,
                  t.a / 2 + t.b - Q(9, 2) * t.m),
    ]
    if assume_nodal_free:
        checks.append(ConeCheck("b >= 2m", t.b >= 2 * t.m, t.b - 2 * t.m))
    return ConeVerdict(tuple(checks))


def extremality_test(t: ClassTriple) -> bool:
    """Strictly below the slope of the singular-members family: a/5 + b < 3m."""
    if t.a <= 0:
        raise ConeError("extremality test needs a > 0")
    return t.a / 5 + t.b < 3 * t.m


# ---------------------------------------------------------------------------
# infeasibility of an extremal class missing a nodal lifting
# ---------------------------------------------------------------------------

def nodal_system(include_m_sign: bool = True) -> IneqSystem:
    """{a/5 + b < 3m, a/2 + b >= 9m/2, b >= 2m, a > 0 (, m >= 0)}."""
    rows = [
        LinRow({"a": Q(-1, 5), "b": Q(-1), "m": Q(3)}, Q(0), GT, "extremal"),
        LinRow({"a": Q(1, 2), "b": Q(1), "m": Q(-9, 2)}, Q(0), GE, "over_R"),
        LinRow({"b": Q(1), "m": Q(-2)}, Q(0), GE, "bitangent"),
        LinRow({"a": Q(1)}, Q(0), GT, "a_pos"),
    ]
    if include_m_sign:
        rows.append(LinRow({"m": Q(1)}, Q(0), GE, "m_sign"))
    return IneqSystem(("a", "b", "m"), rows)


def nodal_infeasibility(include_m_sign: bool = True) -> FarkasCertificate:
    """Exact certificate that an extremal effective class must contain every
    nodal-curve lifting (the constraint system above has no solution)."""
    witness, cert = feasibility(nodal_system(include_m_sign))
    if cert is None:
        raise ConeError(f"nodal system unexpectedly feasible at {witness}")
    return cert


def certificate_support_minimal(cert: FarkasCertificate, system: IneqSystem) -> bool:
    """Dropping any single row in the certificate's support restores
    feasibility (the certificate uses no redundant row)."""
    for i in cert.support(system):
        sub = IneqSystem(system.unknowns,
                         [r for j, r in enumerate(system.rows) if j != i])
        witness, _ = feasibility(sub)
        if witness is None:
            return False
    return True


# ---------------------------------------------------------------------------
# nef cone of the first exceptional surface
# ---------------------------------------------------------------------------

def nef_coordinates(model: GeometryModel, cls: DivClass) -> tuple[Poly2, Poly2]:
    """Coordinates (u, v) of a class on the first exceptional surface in the
    nef-cone basis (Rt - 27*lS, lS); membership is u >= 0 and v >= 0."""
    space = model.space("ES-surface")
    if cls.space != space:
        raise ConeError("class must live on the first exceptional surface")
    u = cls.coeff("Rt")
    v = cls.coeff("lS") + u * 27
    return u, v


def nef_membership_ES(model: GeometryModel, cls: DivClass):
    """(member, u, v) for a constant class on the first exceptional surface."""
    u, v = nef_coordinates(model, cls)
    uc, vc = u.constant(), v.constant()
    return uc >= 0 and vc >= 0, uc, vc


# ---------------------------------------------------------------------------
# the exact lower bound 39/22
# ---------------------------------------------------------------------------

@dataclass
class LowerBoundResult:
    lambda_min: Fraction
    vertex: tuple[Fraction, Fraction]
    ratio_min: Fraction
    facet_u: Poly2                  # >= 0 : first nef coordinate
    facet_v: Poly2                  # >= 0 : second nef coordinate
    alpha_pairing: Poly2            # 72*(5 - 8x + 29y) >= 0
    alpha_self_checks: dict[str, Fraction]
    quadratic_identity: str
    optimality_certificate: FarkasCertificate
    optimality_system: IneqSystem
    lp_cross_check: LPResult
    notes: list[str] = field(default_factory=list)


def _xy_family(model: GeometryModel) -> DivClass:
    """ES + x*D + y*EP with polynomial coefficients in (x, y)."""
    x = Poly2.var(XY, "x")
    y = Poly2.var(XY, "y")
    return (model.y("ES") + model.y("D").scale(x) + model.y("EP").scale(y))


def theorem13_bound(model: GeometryModel) -> LowerBoundResult:
    """Derive the facet inequalities, the nef pairing from the blown-up
    family, and minimise the slope exactly; everything is re-verified and a
    failure raises instead of reporting."""
    x = Poly2.var(XY, "x")
    y = Poly2.var(XY, "y")
    z = _xy_family(model)

    # facets: the restriction to the first exceptional surface must be nef
    restricted = model.restrict_es.apply(z)
    u, v = nef_coordinates(model, restricted)
    expect_u = Poly2(XY, {(0, 0): -1, (1, 0): 28, (0, 1): 1})
    expect_v = Poly2(XY, {(0, 0): -9, (1, 0): 36, (0, 1): 27})
    if u != expect_u or v != expect_v:
        raise GeometryError(f"facet derivation drifted: u={u}, v={v}")

    # quadratic identity: the self-pairing of the restriction factors as the
    # product of the two facets
    quad = pair(model.form("Y"), z, z, model.y("ES"))
    quad_surface = pair(model.form("ES-surface"), restricted, restricted)
    one = Poly2.const(XY, 1)
    factored = (one - x * 4 - y * 3) * (one - x * 28 - y * 1) * 18
    if not (quad == quad_surface == factored == u * v * 2):
        raise GeometryError("quadratic identity failed")

    # nef class alpha on the blown-up family: pull-back of ES plus half the
    # aggregate of nodal-fibre strict transforms
    fdt = model.form("Dtilde")
    alpha = model.cls("Dtilde", "alpha")
    a_cnode = pair_const(fdt, alpha, model.cls("Dtilde", "Cnode"))
    a_nues = pair_const(fdt, alpha, model.cls("Dtilde", "nuES"))
    if a_cnode != 0 or a_nues != 360:
        raise GeometryError("alpha self-checks failed")
    alpha_z = pair(fdt, alpha, model.nu_pull.apply(z))
    expect_alpha = Poly2(XY, {(0, 0): 5, (1, 0): -8, (0, 1): 29}) * 72
    if alpha_z != expect_alpha:
        raise GeometryError(f"alpha pairing drifted: {alpha_z}")

    # closed-form vertex: the second facet meets the alpha facet
    #   v = 0:  y = (1 - 4x)/3      alpha: 5 - 8x + 29y = 0
    xv = Q(11, 35)
    yv = Q(-3, 35)
    if v.eval({"x": xv, "y": yv}) != 0 or expect_alpha.eval({"x": xv, "y": yv}) != 0:
        raise GeometryError("vertex does not sit on both active facets")
    if u.eval({"x": xv, "y": yv}) < 0:
        raise GeometryError("vertex violates the first facet")
    ratio = yv / xv
    lam = Q(9, 5) + ratio / 10

    # optimality: no feasible point has a smaller ratio, i.e. adding the
    # open half-plane y < ratio*x (for x > 0) empties the region
    opt_sys = IneqSystem(("x", "y"), [
        LinRow({"x": Q(4), "y": Q(3)}, Q(1), GE, "facet_v"),
        LinRow({"x": Q(-8), "y": Q(29)}, Q(-5), GE, "alpha_nef"),
        LinRow({"x": ratio, "y": Q(-1)}, Q(0), GT, "ratio_below"),
        LinRow({"x": Q(1)}, Q(0), GT, "x_pos"),
    ])
    witness, cert = feasibility(opt_sys)
    if cert is None:
        raise GeometryError(f"a class with smaller ratio exists: {witness}")

    # cross-check through the generic simplex in homogenised coordinates
    # (u' = 1/x, s = y/x); the first facet joins as s - u' >= -28
    lp_sys = IneqSystem(("uinv", "s"), [
        LinRow({"uinv": Q(-1), "s": Q(3)}, Q(-4), GE, "facet_v"),
        LinRow({"uinv": Q(5), "s": Q(29)}, Q(8), GE, "alpha_nef"),
        LinRow({"uinv": Q(-1), "s": Q(1)}, Q(-28), GE, "facet_u"),
        LinRow({"uinv": Q(1)}, Q(0), GT, "x_pos"),
    ])
    lp_res = lp_optimize(lp_sys, {"s": Q(1)}, "min")
    if lp_res.status != "optimal" or lp_res.value != ratio or not lp_res.attained:
        raise GeometryError(f"simplex cross-check disagrees: {lp_res}")

    # in the eta-parametrisation (y = eta*x) the slope is a polynomial
    xe = ("x", "eta")
    slope = lambda_slope(Poly2(xe, {(1, 0): 30}), Poly2.const(xe, 3),
                         Poly2(xe, {(0, 0): 1, (1, 0): 2, (1, 1): -1}))
    notes = [
        "slope of the pushed-down family: 9/5 + (y/x)/10, minimised at the "
        "vertex where the second nef facet meets the alpha pairing",
        f"vertex ({ratio_str(xv)}, {ratio_str(yv)}), ratio y/x = {ratio_str(ratio)}",
        "first facet is slack at the vertex: u = "
        + ratio_str(u.eval({"x": xv, "y": yv})),
        f"symbolic slope over the family in eta-form: {slope}",
    ]

    return LowerBoundResult(
        lambda_min=lam,
        vertex=(xv, yv),
        ratio_min=ratio,
        facet_u=u,
        facet_v=v,
        alpha_pairing=alpha_z,
        alpha_self_checks={"alpha·Cnode": a_cnode, "alpha·nuES": a_nues},
        quadratic_identity=f"{quad} = 18(1-4x-3y)(1-28x-y)",
        optimality_certificate=cert,
        optimality_system=opt_sys,
        lp_cross_check=lp_res,
        notes=notes,
    )
