"""Exact univariate and bivariate polynomial algebra over the rationals.

Provides the computational substrate for the certification pipeline:

* ``Poly1`` — dense univariate polynomials with Fraction coefficients,
  Euclidean division, gcd, Sturm sequences and certified real-root
  isolation/refinement by bisection.
* ``Poly2`` — sparse bivariate polynomials (monomial map), used both for
  class coefficients in the divisor lattices and for the bigness cubic.
* Sylvester resultants: bivariate (eliminating one variable, coefficients
  in the other) and univariate (over the rationals).

Everything is immutable and pure; no floating point anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

Q = Fraction
Scalar = Union[Fraction, int]


class PolyError(ValueError):
    pass


def _q(c: Scalar) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)


# ---------------------------------------------------------------------------
# univariate
# ---------------------------------------------------------------------------

class Poly1:
    """Univariate polynomial in one named variable, coefficients by degree."""

    __slots__ = ("var", "coeffs")

    def __init__(self, var: str, coeffs: Iterable[Scalar]):
        cs = [_q(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.var = var
        self.coeffs = tuple(cs)

    # -- construction helpers ------------------------------------------------
    @classmethod
    def zero(cls, var: str) -> "Poly1":
        return cls(var, ())

    @classmethod
    def const(cls, var: str, c: Scalar) -> "Poly1":
        return cls(var, (c,))

    @classmethod
    def x(cls, var: str) -> "Poly1":
        return cls(var, (0, 1))

    # -- basic structure -----------------------------------------------------
    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def leading(self) -> Fraction:
        if not self.coeffs:
            raise PolyError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __eq__(self, other) -> bool:
        return (isinstance(other, Poly1) and self.var == other.var
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.var, self.coeffs))

    def __repr__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            elif i == 1:
                parts.append(f"{c}*{self.var}")
            else:
                parts.append(f"{c}*{self.var}^{i}")
        return " + ".join(parts)

    # -- ring operations -----------------------------------------------------
    def _check(self, other: "Poly1"):
        if self.var != other.var:
            raise PolyError(f"variable mismatch: {self.var} vs {other.var}")

    def __add__(self, other: "Poly1") -> "Poly1":
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [Q(0)] * (n - len(self.coeffs))
        for i, c in enumerate(other.coeffs):
            a[i] += c
        return Poly1(self.var, a)

    def __neg__(self) -> "Poly1":
        return Poly1(self.var, (-c for c in self.coeffs))

    def __sub__(self, other: "Poly1") -> "Poly1":
        return self + (-other)

    def __mul__(self, other) -> "Poly1":
        if isinstance(other, (int, Fraction)):
            return Poly1(self.var, (c * other for c in self.coeffs))
        self._check(other)
        if self.is_zero() or other.is_zero():
            return Poly1.zero(self.var)
        out = [Q(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly1(self.var, out)

    __rmul__ = __mul__

    def eval(self, t: Scalar) -> Fraction:
        """Exact value by Horner's scheme."""
        t = _q(t)
        acc = Q(0)
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def derivative(self) -> "Poly1":
        return Poly1(self.var, (i * c for i, c in enumerate(self.coeffs) if i > 0))

    def divmod(self, other: "Poly1") -> tuple["Poly1", "Poly1"]:
        self._check(other)
        if other.is_zero():
            raise PolyError("division by the zero polynomial")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return Poly1.zero(self.var), self
        quo = [Q(0)] * (dq + 1)
        lead = other.leading()
        for k in range(dq, -1, -1):
            top = rem[k + other.degree()]
            if top == 0:
                continue
            f = top / lead
            quo[k] = f
            for j, c in enumerate(other.coeffs):
                rem[k + j] -= f * c
        return Poly1(self.var, quo), Poly1(self.var, rem)

    def monic(self) -> "Poly1":
        if self.is_zero():
            return self
        lead = self.leading()
        return Poly1(self.var, (c / lead for c in self.coeffs))

    def gcd(self, other: "Poly1") -> "Poly1":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a.divmod(b)[1]
        return a.monic() if not a.is_zero() else a

    def squarefree_part(self) -> "Poly1":
        if self.is_zero():
            raise PolyError("zero polynomial has no squarefree part")
        g = self.gcd(self.derivative())
        if g.degree() <= 0:
            return self
        return self.divmod(g)[0]

    # -- Sturm machinery -----------------------------------------------------
    def sturm_sequence(self) -> list["Poly1"]:
        """Canonical Sturm chain p, p', -rem(...), ... of the polynomial."""
        if self.is_zero():
            raise PolyError("Sturm sequence of the zero polynomial")
        seq = [self, self.derivative()]
        while not seq[-1].is_zero():
            rem = seq[-2].divmod(seq[-1])[1]
            if rem.is_zero():
                break
            seq.append(-rem)
        return seq

    def count_roots(self, lo: Scalar, hi: Scalar) -> int:
        """Number of distinct real roots in the half-open interval (lo, hi].

        Uses the Sturm chain of the squarefree part, so multiple roots are
        counted once.
        """
        lo, hi = _q(lo), _q(hi)
        if not lo < hi:
            raise PolyError("count_roots needs lo < hi")
        seq = self.squarefree_part().sturm_sequence()

        def variations(t: Fraction) -> int:
            signs = [p.eval(t) for p in seq]
            signs = [s for s in signs if s != 0]
            return sum(1 for a, b in zip(signs, signs[1:]) if (a > 0) != (b > 0))

        return variations(lo) - variations(hi)

    def cauchy_root_bound(self) -> Fraction:
        """B with every real root in [-B, B]."""
        if self.is_zero():
            raise PolyError("root bound of the zero polynomial")
        lead = abs(self.leading())
        m = max((abs(c) for c in self.coeffs[:-1]), default=Q(0))
        return Q(1) + m / lead


@dataclass(frozen=True)
class RootBracket:
    """Isolating rational interval for one real root of ``poly``.

    Certified on construction: the squarefree part changes sign across the
    interval and its Sturm count over (lo, hi] is exactly one.
    """

    poly: Poly1
    lo: Fraction
    hi: Fraction
    sign_lo: int
    sign_hi: int

    def width(self) -> Fraction:
        return self.hi - self.lo

    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def recheck(self) -> bool:
        """Re-verify the defining invariant from scratch."""
        sf = self.poly.squarefree_part()
        a, b = sf.eval(self.lo), sf.eval(self.hi)
        if a == 0 or b == 0 or (a > 0) == (b > 0):
            return False
        if self.sign_lo != (1 if a > 0 else -1):
            return False
        if self.sign_hi != (1 if b > 0 else -1):
            return False
        return self.poly.count_roots(self.lo, self.hi) == 1


def _bracket(p: Poly1, sf: Poly1, lo: Fraction, hi: Fraction) -> RootBracket:
    a, b = sf.eval(lo), sf.eval(hi)
    return RootBracket(p, lo, hi, 1 if a > 0 else -1, 1 if b > 0 else -1)


def isolate_roots(p: Poly1, lo: Scalar, hi: Scalar) -> list[RootBracket]:
    """Pairwise-disjoint isolating brackets, one per real root in (lo, hi).

    Isolation runs on the squarefree part; endpoints that happen to be roots
    are nudged outward by repeated halving until the interval gains exactly
    that one root, so the returned brackets still cover every root of the
    open interval.
    """
    if p.is_zero():
        raise PolyError("cannot isolate roots of the zero polynomial")
    lo, hi = _q(lo), _q(hi)
    if not lo < hi:
        raise PolyError("isolate_roots needs lo < hi")
    sf = p.squarefree_part()

    step = (hi - lo) / 2
    while sf.eval(lo) == 0:
        step /= 2
        cand = lo - step
        if sf.count_roots(cand, lo) == 1:
            lo = cand
    step = (hi - lo) / 2
    while sf.eval(hi) == 0:
        step /= 2
        cand = hi + step
        if sf.count_roots(hi, cand) == 1:
            hi = cand

    out: list[RootBracket] = []
    stack = [(lo, hi)]
    while stack:
        a, b = stack.pop()
        n = sf.count_roots(a, b)
        if n == 0:
            continue
        if n == 1 and sf.eval(a) != 0:
            out.append(_bracket(p, sf, a, b))
            continue
        m = (a + b) / 2
        if sf.eval(m) == 0:
            # rational root exactly at the split point: shrink a private
            # interval around it until it isolates
            d = (b - a) / 4
            while sf.count_roots(m - d, m + d) != 1 or sf.eval(m - d) == 0 \
                    or sf.eval(m + d) == 0:
                d /= 2
            out.append(_bracket(p, sf, m - d, m + d))
            stack.append((a, m - d))
            stack.append((m + d, b))
        else:
            stack.append((a, m))
            stack.append((m, b))
    out.sort(key=lambda br: br.lo)
    return out


def refine_bracket(br: RootBracket, width: Scalar) -> RootBracket:
    """Bisect an isolating bracket until ``hi - lo <= width``."""
    width = _q(width)
    if width <= 0:
        raise PolyError("bracket width must be positive")
    sf = br.poly.squarefree_part()
    lo, hi = br.lo, br.hi
    slo = sf.eval(lo)
    while hi - lo > width:
        m = (lo + hi) / 2
        sm = sf.eval(m)
        if sm == 0:
            # exact rational root: narrow symmetrically around it
            d = min(width / 2, (hi - lo) / 4)
            while sf.eval(m - d) == 0 or sf.eval(m + d) == 0:
                d /= 2
            lo, hi = m - d, m + d
            slo = sf.eval(lo)
            break
        if (sm > 0) == (slo > 0):
            lo, slo = m, sm
        else:
            hi = m
    return _bracket(br.poly, sf, lo, hi)


# ---------------------------------------------------------------------------
# bivariate
# ---------------------------------------------------------------------------

class Poly2:
    """Sparse polynomial in two named variables.

    ``terms`` maps exponent pairs (i, j) — powers of ``vars[0]`` and
    ``vars[1]`` — to nonzero Fractions.  Constant polynomials double as plain
    rationals throughout the lattice layer.
    """

    __slots__ = ("vars", "terms")

    def __init__(self, vars: tuple[str, str], terms: Mapping[tuple[int, int], Scalar]):
        self.vars = (vars[0], vars[1])
        self.terms = {k: _q(v) for k, v in terms.items() if _q(v) != 0}

    @classmethod
    def const(cls, vars: tuple[str, str], c: Scalar) -> "Poly2":
        return cls(vars, {(0, 0): c})

    @classmethod
    def var(cls, vars: tuple[str, str], name: str) -> "Poly2":
        if name == vars[0]:
            return cls(vars, {(1, 0): 1})
        if name == vars[1]:
            return cls(vars, {(0, 1): 1})
        raise PolyError(f"{name!r} is not one of {vars}")

    # -- structure -----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or set(self.terms) == {(0, 0)}

    def constant(self) -> Fraction:
        """The value of a constant polynomial, as a Fraction."""
        if not self.is_constant():
            raise PolyError(f"not a constant polynomial: {self}")
        return self.terms.get((0, 0), Q(0))

    def total_degree(self) -> int:
        return max((i + j for i, j in self.terms), default=-1)

    def degree_in(self, name: str) -> int:
        k = self._axis(name)
        return max((key[k] for key in self.terms), default=-1)

    def _axis(self, name: str) -> int:
        if name == self.vars[0]:
            return 0
        if name == self.vars[1]:
            return 1
        raise PolyError(f"{name!r} is not one of {self.vars}")

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poly2):
            return NotImplemented
        if self.vars != other.vars and not (self.is_constant() and other.is_constant()):
            return False
        return self.terms == other.terms

    def __hash__(self):
        # constants compare equal across variable pairs, so hash them alike
        if self.is_constant():
            return hash(frozenset(self.terms.items()))
        return hash((self.vars, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        xs, ys = self.vars
        parts = []
        for (i, j) in sorted(self.terms, key=lambda k: (k[0] + k[1], k)):
            c = self.terms[(i, j)]
            mon = "".join(
                (f"*{v}^{e}" if e > 1 else f"*{v}") if e else ""
                for v, e in ((xs, i), (ys, j))
            )
            parts.append(f"{c}{mon}")
        return " + ".join(parts)

    # -- ring operations -----------------------------------------------------
    def _align(self, other) -> tuple["Poly2", "Poly2"]:
        """Coerce scalars and reconcile variable pairs; constant polynomials
        are variable-agnostic and adopt the other operand's variables."""
        if not isinstance(other, Poly2):
            other = Poly2.const(self.vars, other)
        if self.vars == other.vars:
            return self, other
        if other.is_constant():
            return self, Poly2.const(self.vars, other.constant())
        if self.is_constant():
            return Poly2.const(other.vars, self.constant()), other
        raise PolyError(f"variable mismatch: {self.vars} vs {other.vars}")

    def __add__(self, other) -> "Poly2":
        a, b = self._align(other)
        out = dict(a.terms)
        for k, v in b.terms.items():
            out[k] = out.get(k, Q(0)) + v
        return Poly2(a.vars, out)

    __radd__ = __add__

    def __neg__(self) -> "Poly2":
        return Poly2(self.vars, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other) -> "Poly2":
        a, b = self._align(other)
        return a + (-b)

    def __rsub__(self, other) -> "Poly2":
        a, b = self._align(other)
        return b - a

    def __mul__(self, other) -> "Poly2":
        a, b = self._align(other)
        out: dict[tuple[int, int], Fraction] = {}
        for (i1, j1), c1 in a.terms.items():
            for (i2, j2), c2 in b.terms.items():
                k = (i1 + i2, j1 + j2)
                out[k] = out.get(k, Q(0)) + c1 * c2
        return Poly2(a.vars, out)

    __rmul__ = __mul__

    def eval(self, point: Mapping[str, Scalar]) -> Fraction:
        """Exact value at a full variable binding; raises on a missing one."""
        missing = [v for v in self.vars if v not in point]
        if missing:
            raise PolyError(f"missing variable binding for {missing}")
        a, b = _q(point[self.vars[0]]), _q(point[self.vars[1]])
        acc = Q(0)
        for (i, j), c in self.terms.items():
            acc += c * a**i * b**j
        return acc

    def substitute(self, name: str, value: Scalar) -> Poly1:
        """Specialise one variable to a rational, yielding a Poly1."""
        k = self._axis(name)
        other = self.vars[1 - k]
        value = _q(value)
        out: dict[int, Fraction] = {}
        for key, c in self.terms.items():
            deg = key[1 - k]
            out[deg] = out.get(deg, Q(0)) + c * value ** key[k]
        n = max(out, default=-1)
        return Poly1(other, [out.get(i, Q(0)) for i in range(n + 1)])

    def derivative(self, name: str) -> "Poly2":
        k = self._axis(name)
        out: dict[tuple[int, int], Fraction] = {}
        for key, c in self.terms.items():
            e = key[k]
            if e == 0:
                continue
            nk = (key[0] - 1, key[1]) if k == 0 else (key[0], key[1] - 1)
            out[nk] = out.get(nk, Q(0)) + c * e
        return Poly2(self.vars, out)

    def coeffs_in(self, name: str) -> list[Poly1]:
        """Coefficients of powers of ``name`` as Poly1 in the other variable,
        indexed by degree (length = degree_in(name) + 1)."""
        k = self._axis(name)
        other = self.vars[1 - k]
        deg = self.degree_in(name)
        if deg < 0:
            return []
        rows: list[dict[int, Fraction]] = [dict() for _ in range(deg + 1)]
        for key, c in self.terms.items():
            rows[key[k]][key[1 - k]] = c
        out = []
        for row in rows:
            n = max(row, default=-1)
            out.append(Poly1(other, [row.get(i, Q(0)) for i in range(n + 1)]))
        return out

    def divide_exact(self, other) -> "Poly2":
        """Exact quotient self / other; raises if the division leaves a remainder."""
        me, other = self._align(other)
        if other.is_zero():
            raise PolyError("division by zero polynomial")
        if me.is_zero():
            return Poly2(me.vars, {})
        rem = Poly2(me.vars, dict(me.terms))
        quo: dict[tuple[int, int], Fraction] = {}
        lead_key = max(other.terms, key=lambda k: (k[0] + k[1], k))
        lead_c = other.terms[lead_key]
        while not rem.is_zero():
            rk = max(rem.terms, key=lambda k: (k[0] + k[1], k))
            di, dj = rk[0] - lead_key[0], rk[1] - lead_key[1]
            if di < 0 or dj < 0:
                raise PolyError("inexact polynomial division")
            f = rem.terms[rk] / lead_c
            quo[(di, dj)] = quo.get((di, dj), Q(0)) + f
            rem = rem - Poly2(me.vars, {(di, dj): f}) * other
        return Poly2(me.vars, quo)


# ---------------------------------------------------------------------------
# resultants
# ---------------------------------------------------------------------------

def _det(matrix: Sequence[Sequence], zero, is_zero) -> object:
    """Determinant by cofactor expansion with memoisation on column subsets.

    Generic over a commutative ring given +, * and unary -; fine for the
    small Sylvester matrices (at most 6x6) this package builds.
    """
    n = len(matrix)
    if n == 0:
        raise PolyError("empty matrix")
    memo: dict[tuple[int, ...], object] = {}

    def minor(row: int, cols: tuple[int, ...]):
        if not cols:
            return None
        if len(cols) == 1:
            return matrix[row][cols[0]]
        key = cols
        if row == n - len(cols) and key in memo:
            return memo[key]
        acc = zero
        sign = 1
        for idx, c in enumerate(cols):
            entry = matrix[row][c]
            if not is_zero(entry):
                rest = cols[:idx] + cols[idx + 1:]
                sub = minor(row + 1, rest)
                term = entry * sub
                acc = acc + term if sign > 0 else acc - term
            sign = -sign
        if row == n - len(cols):
            memo[key] = acc
        return acc

    return minor(0, tuple(range(n)))


def sylvester_resultant_poly1(p: Poly1, q: Poly1) -> Fraction:
    """Resultant of two univariate rational polynomials (Sylvester determinant)."""
    if p.is_zero() or q.is_zero():
        raise PolyError("resultant of the zero polynomial")
    m, n = p.degree(), q.degree()
    if m == 0 and n == 0:
        return Q(1)
    if m == 0:
        return p.coeffs[0] ** n
    if n == 0:
        return q.coeffs[0] ** m
    size = m + n
    rows: list[list[Fraction]] = []
    pc = list(reversed(p.coeffs))
    qc = list(reversed(q.coeffs))
    for i in range(n):
        rows.append([Q(0)] * i + pc + [Q(0)] * (size - m - 1 - i))
    for i in range(m):
        rows.append([Q(0)] * i + qc + [Q(0)] * (size - n - 1 - i))
    return _det(rows, Q(0), lambda e: e == 0)


def resultant(p: Poly2, q: Poly2, eliminate: str) -> Poly1:
    """Sylvester resultant of two bivariate polynomials, eliminating one
    variable; the result is univariate in the other variable.

    Vanishes exactly at the parameter values where the specialised
    polynomials share a root (or both leading coefficients vanish).  Both
    inputs must have positive degree in the eliminated variable.
    """
    if p.is_zero() or q.is_zero():
        raise PolyError("resultant of the zero polynomial")
    if p.vars != q.vars:
        raise PolyError(f"variable mismatch: {p.vars} vs {q.vars}")
    m, n = p.degree_in(eliminate), q.degree_in(eliminate)
    if m <= 0 or n <= 0:
        raise PolyError(f"resultant needs positive degree in {eliminate!r}")
    other = p.vars[1 - p._axis(eliminate)]
    pc = list(reversed(p.coeffs_in(eliminate)))
    qc = list(reversed(q.coeffs_in(eliminate)))
    size = m + n
    zero = Poly1.zero(other)
    rows: list[list[Poly1]] = []
    for i in range(n):
        rows.append([zero] * i + pc + [zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([zero] * i + qc + [zero] * (size - n - 1 - i))
    det = _det(rows, zero, lambda e: e.is_zero())
    return det
