"""Exact rational linear programming with certificates.

Small dense systems only: the cone computations need a handful of rows over
two or three unknowns, so the solver favours transparency over speed.

* two-phase primal simplex over Fractions, Bland's smallest-index pivot rule
  (deterministic, cycle-free);
* strict inequalities: the closure is solved first; strict feasibility is
  decided by maximising a common slack on the strict rows; infeasibility of
  a strict system is certified through the Motzkin transposition system,
  itself solved exactly;
* every infeasibility answer carries a FarkasCertificate whose replay is
  checked before it is returned.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional, Sequence

from .rationals import ratio_str

Q = Fraction

GE = ">="
GT = ">"
EQ = "="
_RELATIONS = (GE, GT, EQ)


class LinProgError(ValueError):
    pass


@dataclass(frozen=True)
class LinRow:
    """One constraint: sum(coeffs[v] * v) REL constant."""

    coeffs: Mapping[str, Fraction]
    constant: Fraction
    relation: str
    name: str = ""

    def __post_init__(self):
        if self.relation not in _RELATIONS:
            raise LinProgError(f"unknown relation {self.relation!r}")
        object.__setattr__(self, "coeffs",
                           {v: Q(c) for v, c in self.coeffs.items() if Q(c) != 0})
        object.__setattr__(self, "constant", Q(self.constant))

    def value(self, point: Mapping[str, Fraction]) -> Fraction:
        return sum((c * Q(point[v]) for v, c in self.coeffs.items()), Q(0))

    def holds_at(self, point: Mapping[str, Fraction]) -> bool:
        lhs = self.value(point)
        if self.relation == GE:
            return lhs >= self.constant
        if self.relation == GT:
            return lhs > self.constant
        return lhs == self.constant

    def render(self) -> str:
        lhs = " + ".join(f"{ratio_str(c)}*{v}" for v, c in sorted(self.coeffs.items())) or "0"
        return f"{lhs} {self.relation} {ratio_str(self.constant)}"


class IneqSystem:
    """Immutable list of rows over a shared unknown set."""

    def __init__(self, unknowns: Sequence[str], rows: Sequence[LinRow]):
        self.unknowns = tuple(unknowns)
        known = set(self.unknowns)
        for r in rows:
            extra = set(r.coeffs) - known
            if extra:
                raise LinProgError(f"row {r.name!r} uses unknowns {sorted(extra)} "
                                   f"outside {self.unknowns}")
        self.rows = tuple(rows)

    def with_rows(self, rows: Sequence[LinRow]) -> "IneqSystem":
        return IneqSystem(self.unknowns, rows)

    def drop(self, name: str) -> "IneqSystem":
        kept = [r for r in self.rows if r.name != name]
        if len(kept) == len(self.rows):
            raise LinProgError(f"no row named {name!r}")
        return IneqSystem(self.unknowns, kept)

    def closure(self) -> "IneqSystem":
        return IneqSystem(self.unknowns, [
            LinRow(r.coeffs, r.constant, GE if r.relation == GT else r.relation, r.name)
            for r in self.rows
        ])

    def strict_rows(self) -> list[int]:
        return [i for i, r in enumerate(self.rows) if r.relation == GT]

    def holds_at(self, point: Mapping[str, Fraction]) -> bool:
        return all(r.holds_at(point) for r in self.rows)


@dataclass(frozen=True)
class FarkasCertificate:
    """Nonnegative multipliers recombining the rows into a contradiction.

    The weighted sum of the rows has an identically zero left-hand side while
    the combined relation demands it exceed ``combined_constant`` (>= 0, with
    strictness whenever a strict row carries positive weight), which is
    impossible.  For equality rows the multiplier may be negative.
    """

    multipliers: tuple[Fraction, ...]
    combined_constant: Fraction
    strict_weight: Fraction

    def support(self, system: IneqSystem) -> list[int]:
        return [i for i, m in enumerate(self.multipliers) if m != 0]

    def verify(self, system: IneqSystem) -> bool:
        if len(self.multipliers) != len(system.rows):
            return False
        combo: dict[str, Fraction] = {v: Q(0) for v in system.unknowns}
        const = Q(0)
        strict_w = Q(0)
        for m, row in zip(self.multipliers, system.rows):
            if m < 0 and row.relation != EQ:
                return False
            for v, c in row.coeffs.items():
                combo[v] += m * c
            const += m * row.constant
            if row.relation == GT:
                strict_w += m
        if any(c != 0 for c in combo.values()):
            return False
        if const != self.combined_constant or strict_w != self.strict_weight:
            return False
        # contradiction: 0 >= const > 0, or 0 > const = 0 via a strict row
        return const > 0 or (const == 0 and strict_w > 0)


@dataclass
class LPResult:
    status: str  # "optimal" | "unbounded" | "infeasible"
    value: Optional[Fraction] = None
    vertex: Optional[dict[str, Fraction]] = None
    attained: bool = True
    certificate: Optional[FarkasCertificate] = None
    notes: list[str] = field(default_factory=list)


# ---------------------------------------------------------------------------
# standard-form simplex core
# ---------------------------------------------------------------------------

class _Standard:
    """min c.z  s.t.  A z = b, z >= 0, solved by two-phase tableau simplex."""

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.rows: list[list[Fraction]] = []   # each: coeffs + rhs
        self.base_row_of: list[int] = []       # original row index per matrix row
        self.flip: list[int] = []              # +1 / -1 applied to reach rhs >= 0

    def add_row(self, coeffs: list[Fraction], rhs: Fraction, origin: int):
        if rhs < 0:
            coeffs = [-c for c in coeffs]
            rhs = -rhs
            self.flip.append(-1)
        else:
            self.flip.append(1)
        self.rows.append(coeffs + [rhs])
        self.base_row_of.append(origin)

    def solve(self, costs: list[Fraction]):
        """Returns (status, z, duals) where duals certify infeasibility.

        status: "optimal" (z = column values), "infeasible" (duals y per
        matrix row with y.A <= 0 componentwise over columns, y.b > 0),
        or "unbounded".
        """
        m = len(self.rows)
        n = self.ncols
        if m == 0:
            # no constraints: feasible z = 0; unbounded iff any cost < 0
            if any(c < 0 for c in costs):
                return "unbounded", None, None
            return "optimal", [Q(0)] * n, None

        # tableau columns: structural 0..n-1, artificial n..n+m-1, rhs last
        width = n + m + 1
        tab = []
        for i, row in enumerate(self.rows):
            line = row[:-1] + [Q(0)] * m + [row[-1]]
            line[n + i] = Q(1)
            tab.append(line)
        basis = [n + i for i in range(m)]

        def pivot(r: int, c: int):
            prow = tab[r]
            pv = prow[c]
            tab[r] = [x / pv for x in prow]
            prow = tab[r]
            for i in range(m):
                if i != r and tab[i][c] != 0:
                    f = tab[i][c]
                    tab[i] = [a - f * b for a, b in zip(tab[i], prow)]
            basis[r] = c

        def run_phase(cost: list[Fraction], allowed: int) -> Fraction:
            # price out the basis, then Bland pivoting over columns < allowed
            while True:
                y = [Q(0)] * width
                for r, b in enumerate(basis):
                    cb = cost[b]
                    if cb != 0:
                        y = [a + cb * v for a, v in zip(y, tab[r])]
                reduced = [cost[j] - y[j] for j in range(allowed)]
                enter = next((j for j, rc in enumerate(reduced)
                              if j not in basis and rc < 0), None)
                if enter is None:
                    return y[-1]  # objective value of current basis
                ratios = [(tab[r][-1] / tab[r][enter], basis[r], r)
                          for r in range(m) if tab[r][enter] > 0]
                if not ratios:
                    return None  # unbounded in this phase
                _, _, leave = min(ratios, key=lambda t: (t[0], t[1]))
                pivot(leave, enter)

        # phase 1
        p1cost = [Q(0)] * n + [Q(1)] * m + [Q(0)]
        val = run_phase(p1cost, n + m)
        assert val is not None, "phase 1 cannot be unbounded"
        if val > 0:
            # duals: y_i = sum over basic artificials of B^-1 rows
            y = [Q(0)] * m
            for r, b in enumerate(basis):
                if b >= n:
                    for i in range(m):
                        y[i] += tab[r][n + i]
            return "infeasible", None, y

        # drive leftover zero-level artificials out of the basis; rows that
        # stay artificial-basic are identically zero on structural columns
        # and can never be chosen as pivot rows again
        for r in range(m):
            if basis[r] >= n:
                c = next((j for j in range(n) if tab[r][j] != 0), None)
                if c is not None:
                    pivot(r, c)

        # phase 2
        p2cost = costs + [Q(0)] * m + [Q(0)]
        val = run_phase(p2cost, n)
        if val is None:
            return "unbounded", None, None
        z = [Q(0)] * n
        for r, b in enumerate(basis):
            if b < n:
                z[b] = tab[r][-1]
        return "optimal", z, None


# ---------------------------------------------------------------------------
# public interface
# ---------------------------------------------------------------------------

def _build(system: IneqSystem, objective: Mapping[str, Fraction], sense: str):
    """Standard form: x = x+ - x-, slack per inequality row."""
    unknowns = system.unknowns
    col_of_pos = {v: 2 * i for i, v in enumerate(unknowns)}
    col_of_neg = {v: 2 * i + 1 for i, v in enumerate(unknowns)}
    nvar = 2 * len(unknowns)
    slack_col: dict[int, int] = {}
    ncols = nvar
    for i, r in enumerate(system.rows):
        if r.relation in (GE, GT):
            slack_col[i] = ncols
            ncols += 1

    std = _Standard(ncols)
    for i, r in enumerate(system.rows):
        coeffs = [Q(0)] * ncols
        for v, c in r.coeffs.items():
            coeffs[col_of_pos[v]] += c
            coeffs[col_of_neg[v]] -= c
        if i in slack_col:
            coeffs[slack_col[i]] = Q(-1)
        std.add_row(coeffs, r.constant, i)

    sign = Q(1) if sense == "min" else Q(-1)
    costs = [Q(0)] * ncols
    for v, c in objective.items():
        if v not in col_of_pos:
            raise LinProgError(f"objective uses unknown {v!r}")
        costs[col_of_pos[v]] += sign * Q(c)
        costs[col_of_neg[v]] -= sign * Q(c)
    return std, costs, col_of_pos, col_of_neg


def _point_from(z, col_of_pos, col_of_neg) -> dict[str, Fraction]:
    return {v: z[col_of_pos[v]] - z[col_of_neg[v]] for v in col_of_pos}


def _farkas_from_duals(system: IneqSystem, std: _Standard, y) -> FarkasCertificate:
    mult = [Q(0)] * len(system.rows)
    for mat_row, orig in enumerate(std.base_row_of):
        mult[orig] += std.flip[mat_row] * y[mat_row]
    const = sum((m * r.constant for m, r in zip(mult, system.rows)), Q(0))
    strict_w = sum((m for m, r in zip(mult, system.rows) if r.relation == GT), Q(0))
    cert = FarkasCertificate(tuple(mult), const, strict_w)
    if not cert.verify(system):
        raise LinProgError("internal error: Farkas certificate failed replay")
    return cert


def _solve_closure(system: IneqSystem, objective, sense) -> LPResult:
    std, costs, cpos, cneg = _build(system, objective, sense)
    status, z, y = std.solve(costs)
    if status == "infeasible":
        return LPResult("infeasible",
                        certificate=_farkas_from_duals(system, std, y))
    if status == "unbounded":
        return LPResult("unbounded")
    point = _point_from(z, cpos, cneg)
    value = sum((Q(c) * point[v] for v, c in objective.items()), Q(0))
    return LPResult("optimal", value=value, vertex=point)


def _strict_feasibility(system: IneqSystem):
    """(witness, certificate): exactly one is None.

    Decides feasibility of a system containing strict rows by maximising a
    common slack on them; when the maximum is zero the Motzkin transposition
    system is solved for an exact certificate.
    """
    eps = "_eps"
    if eps in system.unknowns:
        raise LinProgError("reserved unknown name _eps")
    aug_rows = []
    for r in system.rows:
        if r.relation == GT:
            aug_rows.append(LinRow({**r.coeffs, eps: Q(-1)}, r.constant, GE, r.name))
        else:
            aug_rows.append(LinRow(r.coeffs, r.constant, r.relation, r.name))
    aug_rows.append(LinRow({eps: Q(1)}, Q(0), GE, "_eps_low"))
    aug_rows.append(LinRow({eps: Q(-1)}, Q(-1), GE, "_eps_cap"))
    aug = IneqSystem(system.unknowns + (eps,), aug_rows)
    res = _solve_closure(aug, {eps: Q(1)}, "max")
    if res.status == "infeasible":
        # closure itself infeasible: multipliers carry over (drop eps rows)
        mult = res.certificate.multipliers[:len(system.rows)]
        const = sum((m * r.constant for m, r in zip(mult, system.rows)), Q(0))
        strict_w = sum((m for m, r in zip(mult, system.rows) if r.relation == GT), Q(0))
        cert = FarkasCertificate(tuple(mult), const, strict_w)
        if not cert.verify(system):
            raise LinProgError("internal error: closure certificate failed replay")
        return None, cert
    assert res.status == "optimal"
    if res.value > 0:
        witness = {v: res.vertex[v] for v in system.unknowns}
        if not system.holds_at(witness):
            raise LinProgError("internal error: slack witness failed replay")
        return witness, None
    return None, _motzkin_certificate(system)


def _motzkin_certificate(system: IneqSystem) -> FarkasCertificate:
    """Certificate for an infeasible system with strict rows and feasible
    closure: multipliers y >= 0 on inequality rows (free on equalities) with
    zero combination, nonnegative combined constant, and total weight >= 1 on
    the strict rows."""
    names = [f"y{i}" for i in range(len(system.rows))]
    rows: list[LinRow] = []
    for v in system.unknowns:
        combo = {names[i]: r.coeffs[v] for i, r in enumerate(system.rows) if v in r.coeffs}
        rows.append(LinRow(combo, Q(0), EQ, f"combo_{v}"))
    rows.append(LinRow({names[i]: r.constant for i, r in enumerate(system.rows)
                        if r.constant != 0}, Q(0), GE, "const_sign"))
    rows.append(LinRow({names[i]: Q(1) for i, r in enumerate(system.rows)
                        if r.relation == GT}, Q(1), GE, "strict_weight"))
    for i, r in enumerate(system.rows):
        if r.relation != EQ:
            rows.append(LinRow({names[i]: Q(1)}, Q(0), GE, f"sign_{i}"))
    dual = IneqSystem(tuple(names), rows)
    res = _solve_closure(dual, {}, "min")
    if res.status != "optimal":
        raise LinProgError("internal error: transposition system unsolvable")
    mult = tuple(res.vertex[names[i]] for i in range(len(system.rows)))
    const = sum((m * r.constant for m, r in zip(mult, system.rows)), Q(0))
    strict_w = sum((m for m, r in zip(mult, system.rows) if r.relation == GT), Q(0))
    cert = FarkasCertificate(mult, const, strict_w)
    if not cert.verify(system):
        raise LinProgError("internal error: Motzkin certificate failed replay")
    return cert


def feasibility(system: IneqSystem):
    """(witness, certificate) for an arbitrary system; exactly one is None."""
    if system.strict_rows():
        return _strict_feasibility(system)
    res = _solve_closure(system, {}, "min")
    if res.status == "infeasible":
        return None, res.certificate
    return res.vertex, None


def lp_optimize(system: IneqSystem, objective: Mapping[str, Fraction],
                sense: str = "min") -> LPResult:
    """Exact optimum with a vertex witness, or unbounded, or a certificate.

    Strict rows are handled through the closure: when the closure optimum
    sits on a strict row the value is reported as an unattained infimum
    (resp. supremum) with a note listing the active strict rows, provided the
    strict system is feasible at all.
    """
    if sense not in ("min", "max"):
        raise LinProgError(f"sense must be 'min' or 'max', got {sense!r}")
    objective = {v: Q(c) for v, c in objective.items()}
    closure = system.closure()
    res = _solve_closure(closure, objective, sense)
    strict = system.strict_rows()
    if res.status == "infeasible":
        cert = res.certificate
        if not cert.verify(system):  # valid for the strict system too
            raise LinProgError("internal error: certificate failed on strict system")
        return LPResult("infeasible", certificate=cert)
    if not strict:
        return res
    witness, cert = _strict_feasibility(system)
    if cert is not None:
        return LPResult("infeasible", certificate=cert)
    if res.status == "unbounded":
        return LPResult("unbounded")
    active = [system.rows[i].name or f"row{i}" for i in strict
              if system.rows[i].value(res.vertex) == system.rows[i].constant]
    if not active:
        return res
    res.attained = False
    witness_txt = ", ".join(f"{v}={ratio_str(c)}" for v, c in sorted(witness.items()))
    res.notes.append(
        f"optimum of the closure is active on strict rows {active}; the "
        "strict system approaches but does not attain it (strictly feasible "
        f"point: {witness_txt})")
    return res
