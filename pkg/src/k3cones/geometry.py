"""The six concrete divisor-class lattices and their printed-value checks.

The model is generated from a deliberately small primary input set — the ten
triple products on the blown-up threefold, the four surface forms, the
blown-up family surface form with its two exceptional families, nine curve
pairings and a handful of definitional classes and maps.  Everything else
that the source tables print is *recomputed* from those inputs and diffed,
so a verification run can detect transcription slips; one such slip, the
cube of the big divisor D + 4*E_S, is a known discrepancy (printed 10242,
recomputed 1296, both positive) and is allowlisted rather than corrected.

Geometry in two sentences, for orientation: a degree-two K3 surface S is a
double plane branched over a smooth sextic; blowing up the projectivised
cotangent bundle P(Omega_S) along the kernel curve of the tangent map gives
a threefold Y that also fibres over the dual plane, and the universal family
of singular hyperplane-class curves sweeps out a divisor D on Y whose
normalisation is an elliptic surface.  All the certified bounds on the
pseudoeffective cone of P(Omega_S) are linear algebra over these lattices.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .lattice import (CurveClass, DivClass, IntersectionForm, LatticeSpace,
                      LinearMap, pair, pair_const, pair_curve)
from .poly import Poly2, PolyError
from .reporting import DISCREPANT, PASS, Report, Row
from .rationals import ratio_str

Q = Fraction

# family sizes on the blown-up family surface
NODE_COUNT = 324          # nodes of the dual sextic (= bitangents)
CUSP_COUNT = 72           # cusps of the dual sextic (= inflection lines)
NODAL_FIBRE_COUNT = 648   # singular fibres of the elliptic fibration (2 per node)
BLOWUP_POINT_COUNT = 720  # centres blown up in the normalised family


class GeometryError(ValueError):
    pass


# ---------------------------------------------------------------------------
# primary inputs
# ---------------------------------------------------------------------------

_Y_TRIPLES = {
    ("M", "M", "M"): 0,
    ("M", "M", "ES"): 6,
    ("M", "M", "EP"): 0,
    ("M", "ES", "ES"): -12,
    ("M", "ES", "EP"): 30,
    ("M", "EP", "EP"): -30,
    ("ES", "ES", "ES"): 18,
    ("ES", "ES", "EP"): -36,
    ("ES", "EP", "EP"): 54,
    ("EP", "EP", "EP"): -72,
}

# P(Omega_S) for a K3: forced by the tautological relation with c1 = 0,
# c2 = 24 and the degree-two polarisation L^2 = 2
_PCOT_TRIPLES = {
    ("zetaS", "zetaS", "zetaS"): -24,
    ("zetaS", "zetaS", "piL"): 0,
    ("zetaS", "piL", "piL"): 2,
    ("piL", "piL", "piL"): 0,
}

_ES_SURF = {("Rt", "Rt"): 54, ("Rt", "lS"): 1, ("lS", "lS"): 0}
_EP_SURF = {("Rt", "Rt"): -36, ("Rt", "lp"): 1, ("lp", "lp"): 0}
_T_SURF = {("zetaT", "zetaT"): -90, ("zetaT", "lT"): 1, ("lT", "lT"): 0}

# blown-up family surface: bisection N, elliptic fibre lD, one distinguished
# exceptional curve per family plus the family aggregates; distinct members
# of the 648/72 families are disjoint (-1)-curves
_DT_PAIRS = {
    ("N", "N"): -108,
    ("N", "lD"): 2,
    ("N", "lnode"): 0,
    ("N", "Lnode"): 0,
    ("N", "lcusp"): 1,
    ("N", "Lcusp"): CUSP_COUNT,
    ("lD", "lD"): 0,
    ("lD", "lnode"): 0,
    ("lD", "Lnode"): 0,
    ("lD", "lcusp"): 0,
    ("lD", "Lcusp"): 0,
    ("lnode", "lnode"): -1,
    ("lnode", "Lnode"): -1,
    ("lnode", "lcusp"): 0,
    ("lnode", "Lcusp"): 0,
    ("Lnode", "Lnode"): -NODAL_FIBRE_COUNT,
    ("Lnode", "lcusp"): 0,
    ("Lnode", "Lcusp"): 0,
    ("lcusp", "lcusp"): -1,
    ("lcusp", "Lcusp"): -1,
    ("Lcusp", "Lcusp"): -CUSP_COUNT,
}

# curve pairing vectors against (M, ES, EP): the two exceptional rulings and
# the general elliptic fibre of the family divisor
_CURVES = {
    "lP": {"M": 0, "ES": 1, "EP": -1},
    "lS": {"M": 1, "ES": -1, "EP": 1},
    "lD": {"M": 0, "ES": 4, "EP": 2},
}


@dataclass
class GeometryModel:
    """All spaces, forms, named classes, curves and maps, ready to pair."""

    spaces: dict[str, LatticeSpace]
    forms: dict[str, IntersectionForm]
    classes: dict[str, dict[str, DivClass]]
    curves: dict[str, CurveClass]
    mu_push: LinearMap          # threefold -> projectivised cotangent bundle
    restrict_es: LinearMap      # threefold -> first exceptional surface
    restrict_ep: LinearMap      # threefold -> second exceptional surface
    nu_pull: LinearMap          # threefold -> blown-up family surface

    def space(self, key: str) -> LatticeSpace:
        return self.spaces[key]

    def form(self, key: str) -> IntersectionForm:
        return self.forms[key]

    def cls(self, space: str, name: str) -> DivClass:
        return self.classes[space][name]

    def y(self, name: str) -> DivClass:
        return self.classes["Y"][name]

    def triple(self, *args: Union[str, DivClass]) -> Fraction:
        """Triple product on the threefold; names refer to its named classes."""
        classes = [self.y(a) if isinstance(a, str) else a for a in args]
        return pair_const(self.form("Y"), *classes)

    def curve_pairing(self, curve: str, cls: Union[str, DivClass]) -> Fraction:
        c = self.y(cls) if isinstance(cls, str) else cls
        return pair_curve(self.curves[curve], c).constant()


def build_model() -> GeometryModel:
    y = LatticeSpace("Y", ("M", "ES", "EP"), 3)
    pcot = LatticeSpace("P(Omega)", ("zetaS", "piL"), 3)
    es_s = LatticeSpace("ES-surface", ("Rt", "lS"), 2)
    ep_s = LatticeSpace("EP-surface", ("Rt", "lp"), 2)
    t = LatticeSpace("T", ("zetaT", "lT"), 2)
    dt = LatticeSpace("Dtilde", ("N", "lD", "lnode", "Lnode", "lcusp", "Lcusp"), 2)

    forms = {
        "Y": IntersectionForm(y, _Y_TRIPLES),
        "P(Omega)": IntersectionForm(pcot, _PCOT_TRIPLES),
        "ES-surface": IntersectionForm(es_s, _ES_SURF),
        "EP-surface": IntersectionForm(ep_s, _EP_SURF),
        "T": IntersectionForm(t, _T_SURF),
        "Dtilde": IntersectionForm(dt, _DT_PAIRS),
    }

    M = DivClass.basis(y, "M")
    ES = DivClass.basis(y, "ES")
    EP = DivClass.basis(y, "EP")
    phiL = (EP + ES).scale(Q(1, 3))
    D = M.scale(30) - EP.scale(2)
    y_classes = {
        "M": M, "ES": ES, "EP": EP,
        "phiL": phiL,
        "D": D,
        "muPzetaP": M - phiL.scale(2),   # linear consistency only (see report)
    }

    zetaS = DivClass.basis(pcot, "zetaS")
    piL = DivClass.basis(pcot, "piL")
    pcot_classes = {
        "zetaS": zetaS, "piL": piL,
        "DS": zetaS.scale(30) + piL.scale(54),
    }

    Rt_es = DivClass.basis(es_s, "Rt")
    lS_es = DivClass.basis(es_s, "lS")
    es_classes = {"Rt": Rt_es, "lS": lS_es,
                  "nef2": Rt_es - lS_es.scale(27)}  # second nef-cone generator

    Rt_ep = DivClass.basis(ep_s, "Rt")
    lp_ep = DivClass.basis(ep_s, "lp")
    ep_classes = {"Rt": Rt_ep, "lp": lp_ep,
                  "Nclass": Rt_ep.scale(2) + lp_ep.scale(72)}

    zetaT = DivClass.basis(t, "zetaT")
    lT = DivClass.basis(t, "lT")
    t_classes = {
        "zetaT": zetaT, "lT": lT,
        "RT": zetaT + lT.scale(36),
        "BT": zetaT.scale(4) + lT.scale(288),
        "KT": zetaT.scale(-2) - lT.scale(72),
        "pullR": zetaT.scale(6) + lT.scale(360),  # pull-back of the branch sextic
    }

    N = DivClass.basis(dt, "N")
    lD = DivClass.basis(dt, "lD")
    lnode = DivClass.basis(dt, "lnode")
    Lnode = DivClass.basis(dt, "Lnode")
    lcusp = DivClass.basis(dt, "lcusp")
    Lcusp = DivClass.basis(dt, "Lcusp")
    nuES = N.scale(2) + lD.scale(72) - Lnode + Lcusp
    nuEP = N + Lnode + Lcusp.scale(2)
    nuM = lD.scale(30)
    cnode_agg = lD.scale(NODAL_FIBRE_COUNT) - Lnode.scale(2)
    dt_classes = {
        "N": N, "lD": lD, "lnode": lnode, "Lnode": Lnode,
        "lcusp": lcusp, "Lcusp": Lcusp,
        "Cnode": lD - lnode.scale(2),
        "Ccusp": lD - lcusp,
        "CnodeAgg": cnode_agg,
        "nuES": nuES, "nuEP": nuEP, "nuM": nuM,
        "alpha": nuES + cnode_agg.scale(Q(1, 2)),
    }

    curves = {name: CurveClass.from_dict(y, vec) for name, vec in _CURVES.items()}
    # the common curve of the two exceptional surfaces, as a cycle: pairing
    # with any divisor class A is the triple product A.ES.EP
    curves["Rt"] = CurveClass.from_dict(y, {
        b: pair_const(forms["Y"], DivClass.basis(y, b), ES, EP) for b in y.basis})

    mu_push = LinearMap(y, pcot, {
        "M": zetaS + piL.scale(2),
        "ES": DivClass(pcot, [0, 0]),
        "EP": piL.scale(3),
    }, name="mu_push")

    restrict_es = LinearMap(y, es_s, {
        "M": Rt_es - lS_es.scale(24),
        "ES": -Rt_es + lS_es.scale(18),
        "EP": Rt_es,
    }, name="restrict_es")

    # derived: a class restricts to the second exceptional surface as
    # (pairing with the ruling fibre) * Rt + (A.ES.EP + 36 * same) * lp
    def _r_ep(b: str) -> DivClass:
        a = curves["lP"].against(b)
        rt = pair_const(forms["Y"], DivClass.basis(y, b), ES, EP)
        return Rt_ep.scale(a) + lp_ep.scale(rt + 36 * a)

    restrict_ep = LinearMap(y, ep_s, {b: _r_ep(b) for b in y.basis},
                            name="restrict_ep")

    nu_pull = LinearMap(y, dt, {"M": nuM, "ES": nuES, "EP": nuEP}, name="nu_pull")

    # the bisection as a curve on the threefold, derived from its class on
    # the second exceptional surface through the derived restriction
    curves["N"] = CurveClass.from_dict(y, {
        b: pair_const(forms["EP-surface"],
                      restrict_ep.apply(DivClass.basis(y, b)),
                      ep_classes["Nclass"])
        for b in y.basis})

    return GeometryModel(
        spaces={"Y": y, "P(Omega)": pcot, "ES-surface": es_s,
                "EP-surface": ep_s, "T": t, "Dtilde": dt},
        forms=forms,
        classes={"Y": y_classes, "P(Omega)": pcot_classes,
                 "ES-surface": es_classes, "EP-surface": ep_classes,
                 "T": t_classes, "Dtilde": dt_classes},
        curves=curves,
        mu_push=mu_push,
        restrict_es=restrict_es,
        restrict_ep=restrict_ep,
        nu_pull=nu_pull,
    )


# ---------------------------------------------------------------------------
# stated values and their recomputation
# ---------------------------------------------------------------------------

# mismatches that are known printing slips in the source tables, shipped as
# data so a verification run can tell expected discrepancies from regressions
DISCREPANCY_ALLOWLIST: tuple[tuple[str, str, str], ...] = (
    ("the big divisor of the corollary", "(D+4ES)^3",
     "printed 10242; the stated table entries force "
     "-10224 + 12*2016 + 48*(-288) + 64*18 = 1296; both values are positive "
     "so the bigness conclusion is unaffected"),
)


def _class_str(cls: DivClass) -> str:
    parts = []
    for name, c in zip(cls.space.basis, cls.coefficients):
        if c.is_zero():
            continue
        v = c.constant()
        parts.append(f"{ratio_str(v)}*{name}")
    return " + ".join(parts) if parts else "0"


def verify_tables(model: GeometryModel) -> Report:
    """Recompute every printed intersection table entry and diff it."""
    rep = Report("intersection table verification")
    allow = {(t, q): note for t, q, note in DISCREPANCY_ALLOWLIST}

    def check(table, quantity, stated, derived, kind="derived", note=""):
        key = (table, quantity)
        rep.add(Row.check(table, quantity, stated, derived, kind=kind,
                          note=allow.get(key, note),
                          allow_discrepant=key in allow))

    m = model
    fy = m.form("Y")

    # -- core triple products (primary inputs, recomputed through pair) -----
    t1 = "triple products on the blown-up threefold"
    for mono, val in _Y_TRIPLES.items():
        check(t1, _power_label(mono), val, m.triple(*mono), kind="input")

    # -- exceptional surfaces and their common curve -------------------------
    t2 = "exceptional surfaces and their common curve"
    check(t2, "ES^3", 18, m.triple("ES", "ES", "ES"))
    check(t2, "EP^3", -72, m.triple("EP", "EP", "EP"))
    check(t2, "ES·Rt", -36, m.curve_pairing("Rt", "ES"),
          note="pairing against the common curve equals ES^2·EP")
    check(t2, "EP·Rt", 54, m.curve_pairing("Rt", "EP"))
    check(t2, "Rt^2 on ES-surface", 54,
          pair_const(m.form("ES-surface"),
                     m.restrict_es.apply(m.y("EP")), m.restrict_es.apply(m.y("EP"))),
          note="restriction of EP is the common curve; compatibility with ES·EP^2")
    check(t2, "Rt^2 on EP-surface", -36,
          pair_const(m.form("EP-surface"),
                     m.restrict_ep.apply(m.y("ES")), m.restrict_ep.apply(m.y("ES"))),
          note="restriction of ES is the common curve; compatibility with ES^2·EP")

    # -- ruling sum and plane pull-back --------------------------------------
    t3 = "products with the ruling sum and the plane pull-back"
    epes = m.y("EP") + m.y("ES")
    check(t3, "(EP+ES)·ES^2", -18, m.triple(epes, "ES", "ES"))
    check(t3, "(EP+ES)·EP·ES", 18, m.triple(epes, "EP", "ES"))
    check(t3, "(EP+ES)·EP^2", -18, m.triple(epes, "EP", "EP"))
    check(t3, "M^2·phiL", 2, m.triple("M", "M", "phiL"))
    check(t3, "M·phiL^2", 2, m.triple("M", "phiL", "phiL"))
    check(t3, "phiL·EP^2", -6, m.triple("phiL", "EP", "EP"))
    check(t3, "phiL^2·EP", 0, m.triple("phiL", "phiL", "EP"))

    # -- the family of singular members --------------------------------------
    t4 = "the family of singular members (D = 30M - 2EP)"
    for label, stated, args in [
        ("D^3", -10224, ("D", "D", "D")),
        ("D^2·ES", 2016, ("D", "D", "ES")),
        ("D·ES^2", -288, ("D", "ES", "ES")),
        ("D^2·EP", 3312, ("D", "D", "EP")),
        ("D·EP^2", -756, ("D", "EP", "EP")),
        ("D·EP·ES", 792, ("D", "EP", "ES")),
    ]:
        check(t4, label, stated, m.triple(*args))
    check(t4, "(EP+ES)·D^2", 5328, m.triple(epes, "D", "D"))
    check(t4, "(EP+ES)·D·EP", 36, m.triple(epes, "D", "EP"))
    check(t4, "(EP+ES)·D·ES", 504, m.triple(epes, "D", "ES"))

    # -- pairings with the exceptional and fibre curves ----------------------
    t5 = "pairings with the exceptional and fibre curves"
    lnode = m.cls("Dtilde", "lnode")
    lcusp = m.cls("Dtilde", "lcusp")
    fdt = m.form("Dtilde")
    for cls_name, stated in [("ES", 1), ("EP", -1), ("M", 0), ("D", 2)]:
        derived = pair_const(fdt, m.nu_pull.apply(m.y(cls_name)), lnode)
        check(t5, f"{cls_name}·lP", stated, derived,
              note="via the nodal exceptional curve upstairs (projection formula)")
    for cls_name, stated, kind in [("ES", -1, "input"), ("EP", 1, "input"),
                                   ("M", 1, "input"), ("D", 28, "derived")]:
        check(t5, f"{cls_name}·lS", stated, m.curve_pairing("lS", cls_name),
              kind=kind)
    for cls_name, stated in [("ES", 4), ("EP", 2), ("M", 0), ("D", -4)]:
        derived = pair_const(fdt, m.nu_pull.apply(m.y(cls_name)),
                             m.cls("Dtilde", "lD"))
        check(t5, f"{cls_name}·lD", stated, derived,
              note="via the general fibre upstairs")

    # -- ruled surface over the dual curve ------------------------------------
    t6 = "ruled surface over the dual curve"
    ft = m.form("T")
    RT, BT, KT = m.cls("T", "RT"), m.cls("T", "BT"), m.cls("T", "KT")
    zT, lT = m.cls("T", "zetaT"), m.cls("T", "lT")
    check(t6, "zetaT^2", -90, pair_const(ft, zT, zT), kind="input")
    check(t6, "zetaT·RT", -54, pair_const(ft, zT, RT))
    check(t6, "RT^2", -18, pair_const(ft, RT, RT))
    check(t6, "KT·lT", -2, pair_const(ft, KT, lT),
          note="rational ruling, adjunction on a fibre")
    check(t6, "KT·RT", 36, pair_const(ft, KT, RT),
          note="adjunction on the genus-10 section: 2g-2 - RT^2")
    check(t6, "pull-back of branch sextic", _class_str(m.cls("T", "pullR")),
          _class_str(RT.scale(2) + BT),
          note="splits as twice the section plus the branch curve")
    check(t6, "BT·lT", 4, pair_const(ft, BT, lT),
          note="four branch points on a general fibre")
    check(t6, "BT^2", 864, pair_const(ft, BT, BT))

    # -- minimal elliptic surface of the normalised family -------------------
    t7 = "minimal elliptic surface of the normalised family"
    check(t7, "Nbar^2", -36, 2 * pair_const(ft, RT, RT),
          note="double cover is etale at the section, so the square doubles")
    half_branch = BT.scale(Q(1, 2))
    check(t7, "canonical class upstairs", "72*lT (pulled back)",
          f"{_class_str(KT + half_branch)} (pulled back)",
          note="double-cover formula: canonical plus half the branch class")
    kbar = KT + half_branch
    check(t7, "Kbar^2", 0, 2 * pair_const(ft, kbar, kbar))
    check(t7, "singular fibres", NODAL_FIBRE_COUNT, 2 * pluecker(6).bitangents,
          note="two per node of the dual sextic")
    check(t7, "blown-up points", BLOWUP_POINT_COUNT,
          2 * pluecker(6).bitangents + pluecker(6).flexes,
          note="nodal fibre centres plus one per cusp")

    # -- blown-up family surface ---------------------------------------------
    t8 = "blown-up family surface"
    Cnode, Ccusp = m.cls("Dtilde", "Cnode"), m.cls("Dtilde", "Ccusp")
    Ncls = m.cls("Dtilde", "N")
    lD = m.cls("Dtilde", "lD")
    for label, stated, a, b, kind in [
        ("Cnode·lnode", 2, Cnode, lnode, "derived"),
        ("Cnode^2", -4, Cnode, Cnode, "derived"),
        ("lnode^2", -1, lnode, lnode, "input"),
        ("Ccusp·lcusp", 1, Ccusp, lcusp, "derived"),
        ("Ccusp^2", -1, Ccusp, Ccusp, "derived"),
        ("lcusp^2", -1, lcusp, lcusp, "input"),
        ("N·lnode", 0, Ncls, lnode, "input"),
        ("N·Cnode", 2, Ncls, Cnode, "derived"),
        ("N·lcusp", 1, Ncls, lcusp, "input"),
        ("N·Ccusp", 1, Ncls, Ccusp, "derived"),
        ("N^2", -108, Ncls, Ncls, "input"),
    ]:
        check(t8, label, stated, pair_const(fdt, a, b), kind=kind)
    check(t8, "fibre = Cnode + 2*lnode", _class_str(lD),
          _class_str(Cnode + lnode.scale(2)), kind="consistency")
    check(t8, "fibre = Ccusp + lcusp", _class_str(lD),
          _class_str(Ccusp + lcusp), kind="consistency")

    # -- the bisection of the second ruling ----------------------------------
    t9 = "the bisection of the second ruling"
    fep = m.form("EP-surface")
    Nclass = m.cls("EP-surface", "Nclass")
    check(t9, "N·Rt on EP-surface", 0,
          pair_const(fep, Nclass, m.cls("EP-surface", "Rt")),
          note="the bisection misses the negative section")
    for cls_name, stated in [("ES", 0), ("EP", 36), ("M", 60), ("D", 1728)]:
        via_restriction = pair_const(
            fep, m.restrict_ep.apply(m.y(cls_name)), Nclass)
        via_family = pair_const(
            fdt, m.nu_pull.apply(m.y(cls_name)), m.cls("Dtilde", "N"))
        note = "restriction route; family route agrees" \
            if via_restriction == via_family else \
            f"family route DISAGREES: {ratio_str(via_family)}"
        check(t9, f"{cls_name}·N", stated, via_restriction, note=note)

    # -- pull-backs to the blown-up family ------------------------------------
    t10 = "pull-backs to the blown-up family"
    for a_name in ("M", "ES", "EP"):
        for b_name in ("M", "ES", "EP"):
            if a_name > b_name:
                continue
            upstairs = pair_const(fdt, m.nu_pull.apply(m.y(a_name)),
                                  m.nu_pull.apply(m.y(b_name)))
            downstairs = m.triple(a_name, b_name, "D")
            check(t10, f"pull({a_name})·pull({b_name}) vs {a_name}·{b_name}·D",
                  downstairs, upstairs, kind="consistency")

    # -- push-forward to the cotangent projectivisation ----------------------
    t11 = "push-forward to the cotangent projectivisation"
    pushed_d = m.mu_push.apply(m.y("D"))
    check(t11, "push of D", "30*zetaS + 54*piL", _class_str(pushed_d))
    check(t11, "slope of push of D", "9/5",
          ratio_str(lambda_slope(Q(30), Q(0), Q(2)).constant()))
    check(t11, "push of M", "1*zetaS + 2*piL",
          _class_str(m.mu_push.apply(m.y("M"))), kind="input")
    check(t11, "push of EP", "3*piL",
          _class_str(m.mu_push.apply(m.y("EP"))), kind="input")
    check(t11, "companion tautological class + 2*phiL", _class_str(m.y("M")),
          _class_str(m.y("muPzetaP") + m.y("phiL").scale(2)),
          kind="consistency",
          note="linear consistency only; no independent product check available")

    # -- compatibility of push-forward with triple products ------------------
    t12 = "compatibility of push-forward with triple products"
    fpc = m.form("P(Omega)")
    zeta2L = m.cls("P(Omega)", "zetaS") + m.cls("P(Omega)", "piL").scale(2)
    piL = m.cls("P(Omega)", "piL")
    mes = m.y("M") + m.y("ES")
    phiL = m.y("phiL")
    for label, down, up in [
        ("(zetaS+2piL)^3 vs (M+ES)^3",
         pair_const(fpc, zeta2L, zeta2L, zeta2L), m.triple(mes, mes, mes)),
        ("(zetaS+2piL)^2·piL vs (M+ES)^2·phiL",
         pair_const(fpc, zeta2L, zeta2L, piL), m.triple(mes, mes, phiL)),
        ("(zetaS+2piL)·piL^2 vs (M+ES)·phiL^2",
         pair_const(fpc, zeta2L, piL, piL), m.triple(mes, phiL, phiL)),
        ("piL^3 vs phiL^3",
         pair_const(fpc, piL, piL, piL), m.triple(phiL, phiL, phiL)),
    ]:
        check(t12, label, down, up, kind="consistency")

    # -- restriction to the first exceptional surface ------------------------
    t13 = "restriction to the first exceptional surface"
    fes = m.form("ES-surface")
    for a_name in ("M", "ES", "EP"):
        for b_name in ("M", "ES", "EP"):
            if a_name > b_name:
                continue
            onto = pair_const(fes, m.restrict_es.apply(m.y(a_name)),
                              m.restrict_es.apply(m.y(b_name)))
            down = m.triple(a_name, b_name, "ES")
            check(t13, f"{a_name}|ES·{b_name}|ES vs {a_name}·{b_name}·ES",
                  down, onto, kind="consistency")
    check(t13, "restriction of D", "28*Rt + -720*lS",
          _class_str(m.restrict_es.apply(m.y("D"))))

    # -- the big divisor of the corollary -------------------------------------
    t14 = "the big divisor of the corollary"
    big = m.y("D") + m.y("ES").scale(4)
    check(t14, "(D+4ES)·lS", 24, pair_curve(m.curves["lS"], big).constant())
    check(t14, "(D+4ES)^3", 10242, m.triple(big, big, big))

    return rep


def _power_label(mono: tuple[str, ...]) -> str:
    """Compact rendering: ("M","M","ES") -> "M^2·ES"."""
    out = []
    for name in mono:
        if out and out[-1][0] == name:
            out[-1][1] += 1
        else:
            out.append([name, 1])
    return "·".join(n if e == 1 else f"{n}^{e}" for n, e in out)


# ---------------------------------------------------------------------------
# classical plane-curve counts and small numerology
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PlueckerData:
    """Counts for a smooth plane curve of degree d and its dual."""

    degree: int
    dual_degree: int
    bitangents: int
    flexes: int
    genus: int


def pluecker(d: int) -> PlueckerData:
    if d < 2:
        raise GeometryError("plane-curve counts need degree >= 2")
    return PlueckerData(
        degree=d,
        dual_degree=d * (d - 1),
        bitangents=d * (d - 2) * (d - 3) * (d + 3) // 2,
        flexes=3 * d * (d - 2),
        genus=(d - 1) * (d - 2) // 2,
    )


def numerology(model: GeometryModel) -> Report:
    """Degree and count bookkeeping that anchors the lattices."""
    rep = Report("numerology")
    t = "numerology"
    p6 = pluecker(6)
    rep.add(Row.check(t, "branch sextic genus", 10, p6.genus))
    rep.add(Row.check(t, "degree of the dual sextic", 30, p6.dual_degree))
    rep.add(Row.check(t, "nodes of the dual sextic", 324, p6.bitangents))
    rep.add(Row.check(t, "cusps of the dual sextic", 72, p6.flexes))
    # L^2 = 2 and the ramification curve lies in |3L|
    l2 = Q(2)
    rep.add(Row.check(t, "L·R", 6, 3 * l2))
    for k in (1, 2, 3):
        rep.add(Row.check(t, f"degree of O_R({k}L)", 6 * k, k * 3 * l2))
    rep.add(Row.check(t, "canonical degree of the branch sextic", 18,
                      2 * p6.genus - 2))
    rep.add(Row.check(t, "ramification curve genus (adjunction)", 10,
                      (9 * l2 + 2) / 2, note="2g-2 = (3L)^2 on a K3"))
    rep.add(Row.check(t, "singular fibres", NODAL_FIBRE_COUNT, 2 * p6.bitangents))
    rep.add(Row.check(t, "blown-up points", BLOWUP_POINT_COUNT,
                      2 * p6.bitangents + p6.flexes))
    ft = model.form("T")
    kt = model.cls("T", "KT")
    rep.add(Row.check(t, "KT·lT", -2, pair_const(ft, kt, model.cls("T", "lT"))))
    kbar = kt + model.cls("T", "BT").scale(Q(1, 2))
    rep.add(Row.check(t, "Kbar^2", 0, 2 * pair_const(ft, kbar, kbar)))
    rep.add(Row.check(t, "branch curve degree on a ruling fibre", 4,
                      pair_const(ft, model.cls("T", "BT"), model.cls("T", "lT"))))
    return rep


# ---------------------------------------------------------------------------
# the slope bookkeeping used by both bound pipelines
# ---------------------------------------------------------------------------

CoeffLike = Union[Fraction, int, Poly2]


def pushforward_class(model: GeometryModel, a: CoeffLike, b: CoeffLike,
                      m: CoeffLike) -> DivClass:
    """Push a*M + b*phiL - m*EP down to the cotangent projectivisation."""
    z = (model.y("M").scale(a) + model.y("phiL").scale(b)
         - model.y("EP").scale(m))
    return model.mu_push.apply(z)


def lambda_slope(a: CoeffLike, b: CoeffLike, m: CoeffLike) -> Poly2:
    """(2a + b - 3m) / a, the slope of the pushed-down class against the
    tautological part; exact also for polynomial inputs.  Raises on a = 0."""
    pa = a if isinstance(a, Poly2) else Poly2.const(("x", "eta"), a)
    pb = b if isinstance(b, Poly2) else Poly2.const(("x", "eta"), b)
    pm = m if isinstance(m, Poly2) else Poly2.const(("x", "eta"), m)
    if pa.is_zero():
        raise GeometryError("slope undefined for a = 0")
    num = pa * 2 + pb - pm * 3
    try:
        return num.divide_exact(pa)
    except PolyError as exc:
        raise GeometryError(f"slope is not polynomial: {exc}") from exc
