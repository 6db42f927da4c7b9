"""Divisor-class lattices with symmetric multilinear intersection forms.

A ``LatticeSpace`` fixes an ordered basis of divisor-class names and an
arity (2 for surfaces, 3 for threefolds).  An ``IntersectionForm`` stores the
form's values on all sorted basis monomials and ``pair`` expands it
multilinearly over classes whose coefficients may be bivariate polynomials,
so the same code path evaluates both numeric table entries and symbolic
families like E_S + x*D + eta*x*E_P.

Curve classes are kept as pairing vectors (intersection numbers against the
basis divisors) rather than as members of a dual lattice.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement, product
from typing import Iterable, Mapping, Sequence, Union

from .poly import Poly1, Poly2
from .rationals import ratio_str

Q = Fraction
CoeffLike = Union[Fraction, int, Poly2]

# variable pair shared by every polynomial coefficient in the package
SYM_VARS = ("x", "eta")


class LatticeError(ValueError):
    pass


def as_poly(c: CoeffLike) -> Poly2:
    if isinstance(c, Poly2):
        return c
    return Poly2.const(SYM_VARS, c)


@dataclass(frozen=True)
class LatticeSpace:
    name: str
    basis: tuple[str, ...]
    arity: int

    def __post_init__(self):
        if len(set(self.basis)) != len(self.basis):
            raise LatticeError(f"duplicate basis names in {self.basis}")
        if self.arity not in (2, 3):
            raise LatticeError("arity must be 2 (surface) or 3 (threefold)")

    @property
    def rank(self) -> int:
        return len(self.basis)

    def index(self, name: str) -> int:
        try:
            return self.basis.index(name)
        except ValueError:
            raise LatticeError(f"{name!r} not in basis of {self.name}") from None

    def monomials(self) -> list[tuple[str, ...]]:
        """All sorted basis monomials of length = arity, in basis order."""
        return [tuple(self.basis[i] for i in combo)
                for combo in combinations_with_replacement(range(self.rank), self.arity)]

    def sort_key(self, monomial: Iterable[str]) -> tuple[str, ...]:
        return tuple(sorted(monomial, key=self.index))


class IntersectionForm:
    """Symmetric k-linear form stored on sorted basis monomials (complete)."""

    def __init__(self, space: LatticeSpace, entries: Mapping[tuple[str, ...], CoeffLike]):
        self.space = space
        normalised: dict[tuple[str, ...], Fraction] = {}
        for mono, val in entries.items():
            if len(mono) != space.arity:
                raise LatticeError(f"monomial {mono} has length {len(mono)}, "
                                   f"expected {space.arity}")
            key = space.sort_key(mono)
            if key in normalised:
                raise LatticeError(f"duplicate monomial {key}")
            normalised[key] = Q(val) if not isinstance(val, Poly2) else val.constant()
        missing = [m for m in space.monomials() if m not in normalised]
        if missing:
            raise LatticeError(f"missing monomial {missing[0]} "
                               f"({len(missing)} missing in total)")
        self.values = normalised

    def __getitem__(self, monomial: Iterable[str]) -> Fraction:
        return self.values[self.space.sort_key(monomial)]


def make_form(space: LatticeSpace, entries: Mapping[tuple[str, ...], CoeffLike]) -> IntersectionForm:
    return IntersectionForm(space, entries)


class DivClass:
    """Divisor class: one polynomial coefficient per basis element."""

    __slots__ = ("space", "coefficients")

    def __init__(self, space: LatticeSpace, coefficients: Sequence[CoeffLike]):
        if len(coefficients) != space.rank:
            raise LatticeError(f"{space.name} has rank {space.rank}, "
                               f"got {len(coefficients)} coefficients")
        self.space = space
        self.coefficients = tuple(as_poly(c) for c in coefficients)

    @classmethod
    def basis(cls, space: LatticeSpace, name: str) -> "DivClass":
        coeffs = [Q(0)] * space.rank
        coeffs[space.index(name)] = Q(1)
        return cls(space, coeffs)

    @classmethod
    def from_dict(cls, space: LatticeSpace, coeffs: Mapping[str, CoeffLike]) -> "DivClass":
        out: list[CoeffLike] = [Q(0)] * space.rank
        for name, c in coeffs.items():
            out[space.index(name)] = c
        return cls(space, out)

    def coeff(self, name: str) -> Poly2:
        return self.coefficients[self.space.index(name)]

    def is_constant(self) -> bool:
        return all(c.is_constant() for c in self.coefficients)

    def _check(self, other: "DivClass"):
        if self.space is not other.space and self.space != other.space:
            raise LatticeError(f"space mismatch: {self.space.name} vs {other.space.name}")

    def __add__(self, other: "DivClass") -> "DivClass":
        self._check(other)
        return DivClass(self.space, [a + b for a, b in
                                     zip(self.coefficients, other.coefficients)])

    def __sub__(self, other: "DivClass") -> "DivClass":
        self._check(other)
        return DivClass(self.space, [a - b for a, b in
                                     zip(self.coefficients, other.coefficients)])

    def __neg__(self) -> "DivClass":
        return DivClass(self.space, [-c for c in self.coefficients])

    def scale(self, factor: CoeffLike) -> "DivClass":
        f = as_poly(factor)
        return DivClass(self.space, [f * c for c in self.coefficients])

    def __rmul__(self, factor) -> "DivClass":
        return self.scale(factor)

    def __eq__(self, other) -> bool:
        return (isinstance(other, DivClass) and self.space == other.space
                and self.coefficients == other.coefficients)

    def __repr__(self) -> str:
        parts = [f"({c})*{n}" for n, c in zip(self.space.basis, self.coefficients)
                 if not c.is_zero()]
        return " + ".join(parts) if parts else "0"


class CurveClass:
    """Curve known through its intersection numbers against the basis."""

    __slots__ = ("space", "pairings")

    def __init__(self, space: LatticeSpace, pairings: Sequence[CoeffLike]):
        if len(pairings) != space.rank:
            raise LatticeError(f"{space.name} has rank {space.rank}, "
                               f"got {len(pairings)} pairings")
        self.space = space
        self.pairings = tuple(Q(p) if not isinstance(p, Poly2) else p.constant()
                              for p in pairings)

    @classmethod
    def from_dict(cls, space: LatticeSpace, pairings: Mapping[str, CoeffLike]) -> "CurveClass":
        out: list[CoeffLike] = [Q(0)] * space.rank
        for name, p in pairings.items():
            out[space.index(name)] = p
        return cls(space, out)

    def against(self, name: str) -> Fraction:
        return self.pairings[self.space.index(name)]


def pair(form: IntersectionForm, *classes: DivClass) -> Poly2:
    """Multilinear expansion of the form on arity-many classes."""
    space = form.space
    if len(classes) != space.arity:
        raise LatticeError(f"{space.name} needs {space.arity} classes, "
                           f"got {len(classes)}")
    for c in classes:
        if c.space != space:
            raise LatticeError(f"class on {c.space.name} paired on {space.name}")
    total = Poly2(SYM_VARS, {})
    for idx in product(range(space.rank), repeat=space.arity):
        coeff = classes[0].coefficients[idx[0]]
        if coeff.is_zero():
            continue
        for k in range(1, space.arity):
            nxt = classes[k].coefficients[idx[k]]
            if nxt.is_zero():
                coeff = None
                break
            coeff = coeff * nxt
        if coeff is None:
            continue
        value = form[tuple(space.basis[i] for i in idx)]
        if value != 0:
            total = total + coeff * value
    return total


def pair_const(form: IntersectionForm, *classes: DivClass) -> Fraction:
    """pair() for all-constant classes, returned as a plain rational."""
    return pair(form, *classes).constant()


def pair_curve(curve: CurveClass, cls: DivClass) -> Poly2:
    if curve.space != cls.space:
        raise LatticeError(f"space mismatch: {curve.space.name} vs {cls.space.name}")
    total = Poly2(SYM_VARS, {})
    for p, c in zip(curve.pairings, cls.coefficients):
        if p != 0 and not c.is_zero():
            total = total + c * p
    return total


class LinearMap:
    """Linear map between lattices; one matrix column per source basis class."""

    def __init__(self, source: LatticeSpace, target: LatticeSpace,
                 columns: Mapping[str, DivClass], name: str = ""):
        self.source = source
        self.target = target
        self.name = name
        cols = []
        for b in source.basis:
            if b not in columns:
                raise LatticeError(f"map {name!r} missing image of {b!r}")
            img = columns[b]
            if img.space != target:
                raise LatticeError(f"image of {b!r} lives on {img.space.name}, "
                                   f"not {target.name}")
            cols.append(img)
        self.columns = tuple(cols)

    def apply(self, cls: DivClass) -> DivClass:
        if cls.space != self.source:
            raise LatticeError(f"map {self.name!r} expects classes on "
                               f"{self.source.name}, got {cls.space.name}")
        out = [Poly2(SYM_VARS, {}) for _ in range(self.target.rank)]
        for col, coeff in zip(self.columns, cls.coefficients):
            if coeff.is_zero():
                continue
            for r in range(self.target.rank):
                out[r] = out[r] + coeff * col.coefficients[r]
        return DivClass(self.target, out)

    def compose(self, inner: "LinearMap") -> "LinearMap":
        """self . inner (apply inner first)."""
        if inner.target != self.source:
            raise LatticeError("composition spaces do not match")
        cols = {b: self.apply(inner.columns[i])
                for i, b in enumerate(inner.source.basis)}
        return LinearMap(inner.source, self.target, cols,
                         name=f"{self.name}.{inner.name}")

    def is_identity(self) -> bool:
        if self.source != self.target:
            return False
        return all(col == DivClass.basis(self.source, b)
                   for b, col in zip(self.source.basis, self.columns))


def _invert(matrix: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(matrix)
    aug = [row[:] + [Q(1) if i == j else Q(0) for j in range(n)]
           for i, row in enumerate(matrix)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise LatticeError("singular basis matrix")
        aug[col], aug[piv] = aug[piv], aug[col]
        f = aug[col][col]
        aug[col] = [v / f for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                g = aug[r][col]
                aug[r] = [a - g * b for a, b in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def change_basis(space: LatticeSpace,
                 new_basis: Sequence[tuple[str, DivClass]]) -> tuple[LinearMap, LinearMap]:
    """(forward, inverse) between a newly named space on the given classes
    and the original space; forward maps new coordinates to old, and
    forward.compose(inverse) is the identity exactly.  Raises on a singular
    (non-spanning) basis."""
    if len(new_basis) != space.rank:
        raise LatticeError(f"need {space.rank} classes for a basis of {space.name}")
    names = [n for n, _ in new_basis]
    mat: list[list[Fraction]] = [[Q(0)] * space.rank for _ in range(space.rank)]
    for j, (_, cls) in enumerate(new_basis):
        if cls.space != space:
            raise LatticeError("new basis classes must live on the original space")
        if not cls.is_constant():
            raise LatticeError("basis change needs constant coefficients")
        for i in range(space.rank):
            mat[i][j] = cls.coefficients[i].constant()
    inv = _invert(mat)

    new_space = LatticeSpace(f"{space.name}<{','.join(names)}>", tuple(names), space.arity)
    forward = LinearMap(new_space, space,
                        {n: cls for n, cls in new_basis}, name="forward")
    inverse = LinearMap(space, new_space,
                        {b: DivClass(new_space, [inv[i][space.index(b)]
                                                 for i in range(space.rank)])
                         for b in space.basis}, name="inverse")
    return forward, inverse


def transport_form(form: IntersectionForm, embed: LinearMap) -> IntersectionForm:
    """Intersection form induced on embed.source by pulling classes through."""
    if embed.target != form.space:
        raise LatticeError("map target must carry the form")
    src = embed.source
    entries = {}
    for mono in src.monomials():
        classes = [embed.apply(DivClass.basis(src, n)) for n in mono]
        entries[mono] = pair(form, *classes).constant()
    return IntersectionForm(src, entries)


# ---------------------------------------------------------------------------
# JSON serialisation (exact "p/q" strings throughout)
# ---------------------------------------------------------------------------

def _poly_json(p: Poly2):
    if p.is_constant():
        return ratio_str(p.constant())
    return [[i, j, ratio_str(c)] for (i, j), c in
            sorted(p.terms.items())]


def space_json(space: LatticeSpace) -> dict:
    return {"name": space.name, "basis": list(space.basis), "arity": space.arity}


def form_json(form: IntersectionForm) -> dict:
    return {
        "space": space_json(form.space),
        "values": {" ".join(m): ratio_str(v)
                   for m, v in sorted(form.values.items())},
    }


def divclass_json(name: str, cls: DivClass) -> dict:
    return {
        "name": name,
        "space": cls.space.name,
        "coefficients": {b: _poly_json(c)
                         for b, c in zip(cls.space.basis, cls.coefficients)
                         if not c.is_zero()},
    }


def curve_json(name: str, curve: CurveClass) -> dict:
    return {
        "name": name,
        "space": curve.space.name,
        "pairings": {b: ratio_str(p)
                     for b, p in zip(curve.space.basis, curve.pairings)},
    }


def load_space(doc: dict) -> LatticeSpace:
    return LatticeSpace(doc["name"], tuple(doc["basis"]), doc["arity"])


def load_form(doc: dict) -> IntersectionForm:
    space = load_space(doc["space"])
    entries = {tuple(k.split()): Fraction(v) for k, v in doc["values"].items()}
    return IntersectionForm(space, entries)


def dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
