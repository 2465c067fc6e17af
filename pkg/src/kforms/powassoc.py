"""Finite-dimensional unital algebras by structure constants: generic reduced
characteristic data, reduced norms, adjuncts, and division tests.

The generic element x = sum(t_i e_i) is manipulated with polynomial-function
coordinates; the least linear dependence among its powers over the rational
function field gives the generic minimal polynomial, whose coefficients are
asserted to clear denominators (they always do for strictly power associative
algebras).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Optional

from .fields import FiniteField
from .forms import Form, isotropy_search, resolve_budget
from .linalg import matrix_rank, solve
from .polynomials import DependenceFinder, Poly, UniPoly

EXHAUSTIVE_DIVISION_BUDGET = 10**6


class DependenceError(RuntimeError):
    """Generic minimal polynomial coefficients failed to clear denominators
    (a symptom of non-power-associative input)."""


@dataclass(frozen=True)
class UnitReport:
    ok: bool
    failing_basis: Optional[int]


@dataclass(frozen=True)
class AssociativityReport:
    ok: bool
    failing_triple: Optional[tuple]


@dataclass(frozen=True)
class PowerAssociativityReport:
    ok: bool
    failing_associator: Optional[tuple]
    samples: int
    max_exponent: int


@dataclass(frozen=True)
class DivisionReport:
    status: str  # "yes" | "no" | "unknown"
    mode: str
    witness: Optional[tuple]


@dataclass(frozen=True)
class ReducedCharData:
    """Degree r and coefficients m_0..m_{r-1} of the generic minimal polynomial
    (as polynomial functions of the coordinates), plus the recorded conventions:
    norm_poly = (-1)^r * m_0 and the adjunct sign a*adj(a) = sigma*N(a)*1."""

    r: int
    m: tuple
    norm_poly: Poly
    sigma: int


class Algebra:
    """Unital algebra over a field, given by sparse structure constants.

    table[i][j] is a tuple of (k, c) pairs meaning e_i * e_j = sum(c * e_k).
    """

    def __init__(self, field, dim: int, table, unit_coords, name: str = "algebra"):
        self.field = field
        self.dim = dim
        self.table = tuple(
            tuple(tuple((k, field.coerce(c)) for k, c in cell) for cell in row) for row in table
        )
        self.unit_coords = tuple(field.coerce(c) for c in unit_coords)
        self.name = name

    # -- constructors

    @classmethod
    def matrix_algebra(cls, field, n: int) -> "Algebra":
        dim = n * n
        one = field.one()

        def idx(r, c):
            return r * n + c

        table = [[() for _ in range(dim)] for _ in range(dim)]
        for r in range(n):
            for c in range(n):
                for r2 in range(n):
                    for c2 in range(n):
                        if c == r2:
                            table[idx(r, c)][idx(r2, c2)] = ((idx(r, c2), one),)
        unit = [field.zero()] * dim
        for r in range(n):
            unit[idx(r, r)] = one
        return cls(field, dim, table, unit, name=f"M_{n}({field})")

    @classmethod
    def quadratic_extension(cls, field, d) -> "Algebra":
        """F[x]/(x^2 - d) as a two-dimensional algebra with basis (1, x)."""
        d = field.coerce(d)
        one = field.one()
        table = [
            [((0, one),), ((1, one),)],
            [((1, one),), ((0, d),)],
        ]
        return cls(field, 2, table, [one, field.zero()], name=f"{field}[x]/(x^2-{d})")

    @classmethod
    def from_structure_constants(cls, field, constants, unit_coords, name: str = "algebra") -> "Algebra":
        """Build from a dense cube c[i][j][k] with e_i e_j = sum_k c[i][j][k] e_k."""
        dim = len(constants)
        table = [
            [
                tuple((k, field.coerce(c)) for k, c in enumerate(cell) if not field.coerce(c).is_zero())
                for cell in row
            ]
            for row in constants
        ]
        return cls(field, dim, table, unit_coords, name)

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "field": self.field.descriptor(),
            "unit": [str(c) for c in self.unit_coords],
            "table": [
                [[[k, str(c)] for k, c in cell] for cell in row] for row in self.table
            ],
        }

    @classmethod
    def from_json(cls, data: dict, field=None) -> "Algebra":
        from .fields import parse_element, parse_field

        field = field or parse_field(data["field"])
        table = [
            [tuple((k, parse_element(str(c), field)) for k, c in cell) for cell in row]
            for row in data["table"]
        ]
        unit = [parse_element(str(c), field) for c in data["unit"]]
        return cls(field, data["dim"], table, unit, name=data.get("name", "algebra"))

    # -- elements

    def element(self, coords) -> "AlgElem":
        coords = tuple(self.field.coerce(c) for c in coords)
        if len(coords) != self.dim:
            raise ValueError("coordinate vector has wrong length")
        return AlgElem(self, coords)

    def zero(self) -> "AlgElem":
        return AlgElem(self, (self.field.zero(),) * self.dim)

    def one(self) -> "AlgElem":
        return AlgElem(self, self.unit_coords)

    def basis(self, i: int) -> "AlgElem":
        coords = [self.field.zero()] * self.dim
        coords[i] = self.field.one()
        return AlgElem(self, tuple(coords))

    def random_element(self, rng) -> "AlgElem":
        return AlgElem(self, tuple(self.field.random_element(rng) for _ in range(self.dim)))

    def multiply(self, u, v):
        """Coordinate product; works for field-element and Poly coordinates."""
        zero = None
        out = [zero] * self.dim
        for i, ui in enumerate(u):
            if _is_zero(ui):
                continue
            row = self.table[i]
            for j, vj in enumerate(v):
                if _is_zero(vj):
                    continue
                p = ui * vj
                for k, c in row[j]:
                    contrib = p * c
                    out[k] = contrib if out[k] is None else out[k] + contrib
        if isinstance(u[0], Poly):
            filler = Poly.zero(self.field, u[0].nvars)
        else:
            filler = self.field.zero()
        return [x if x is not None else filler for x in out]

    # -- structure checks

    def check_unit(self) -> UnitReport:
        one = self.one()
        for i in range(self.dim):
            e = self.basis(i)
            if one * e != e or e * one != e:
                return UnitReport(False, i)
        return UnitReport(True, None)

    def check_associative(self) -> AssociativityReport:
        basis = [self.basis(i) for i in range(self.dim)]
        for i, j in product(range(self.dim), repeat=2):
            ij = basis[i] * basis[j]
            for k in range(self.dim):
                if (ij * basis[k]) != (basis[i] * (basis[j] * basis[k])):
                    return AssociativityReport(False, (i, j, k))
        return AssociativityReport(True, None)

    def check_power_associative(self, samples: int = 20, max_exponent: int = 6, seed: int = 0) -> PowerAssociativityReport:
        rng = random.Random(seed)
        for _ in range(samples):
            a = self.random_element(rng)
            powers = [self.one(), a]
            for _ in range(max_exponent - 1):
                powers.append(a * powers[-1])
            for i in range(1, max_exponent):
                for j in range(1, max_exponent - i + 1):
                    for k in range(1, max_exponent - i - j + 1):
                        lhs = (powers[i] * powers[j]) * powers[k]
                        rhs = powers[i] * (powers[j] * powers[k])
                        if lhs != rhs:
                            return PowerAssociativityReport(False, (i, j, k, a.coords), samples, max_exponent)
        return PowerAssociativityReport(True, None, samples, max_exponent)

    # -- generic reduced characteristic data

    @cached_property
    def reduced_char(self) -> ReducedCharData:
        n = self.dim
        finder = DependenceFinder(self.field, n)
        generic = [Poly.var(self.field, n, i) for i in range(n)]
        unit_row = [Poly.const(self.field, n, c) for c in self.unit_coords]
        rows = [unit_row]
        combo = finder.offer(unit_row)
        current = unit_row
        while combo is None:
            if len(rows) > n:
                raise DependenceError("no dependence among generic powers")  # unreachable
            current = self.multiply(current, generic)
            rows.append(current)
            combo = finder.offer(current)
        r = len(rows) - 1
        lead = combo[r]
        m = []
        for i in range(r):
            q = combo[i].exact_divide(lead)
            if q is None:
                raise DependenceError(
                    f"minimal polynomial coefficient m_{i} does not clear denominators"
                )
            m.append(q)
        sign = self.field.from_int(-1) ** r
        norm_poly = m[0].scale(sign) if r % 2 else m[0]
        sigma = self._adjunct_sign(r, m, norm_poly)
        return ReducedCharData(r, tuple(m), norm_poly, sigma)

    def _adjunct_sign(self, r, m, norm_poly) -> int:
        rng = random.Random(1)
        one = self.field.one()
        checked = 0
        sigma = None
        for _ in range(200):
            a = self.random_element(rng)
            norm = norm_poly.evaluate(a.coords)
            if norm.is_zero():
                continue
            adj = self._adjunct_from(a, r, m)
            lhs = a * adj
            target = self.one().scale(norm)
            if lhs == target:
                s = 1
            elif lhs == target.scale(-one):
                s = -1
            else:
                raise DependenceError("adjunct identity failed: a*adj(a) not proportional to N(a)*1")
            if sigma is None:
                sigma = s
            elif sigma != s:
                raise DependenceError("adjunct sign is not globally constant")
            checked += 1
            if checked >= 8:
                break
        if sigma is None:
            raise DependenceError("could not sample an element of nonzero norm")
        return sigma

    def _adjunct_from(self, a: "AlgElem", r: int, m) -> "AlgElem":
        acc = self.one().scale(m[1].evaluate(a.coords)) if r >= 2 else self.zero()
        power = a
        for i in range(2, r):
            acc = acc + power.scale(m[i].evaluate(a.coords))
            power = power * a
        return acc + power if r >= 2 else self.one()

    @property
    def degree(self) -> int:
        return self.reduced_char.r

    # -- norm, characteristic polynomial, adjunct

    def reduced_norm(self, a: "AlgElem"):
        return self.reduced_char.norm_poly.evaluate(a.coords)

    def norm_form(self) -> Form:
        return Form.from_poly(self.reduced_char.norm_poly, ("norm-of-algebra", self.name))

    def reduced_char_poly(self, a: "AlgElem") -> UniPoly:
        data = self.reduced_char
        coeffs = [mi.evaluate(a.coords) for mi in data.m] + [self.field.one()]
        return UniPoly(self.field, coeffs)

    def adjunct(self, a: "AlgElem") -> "AlgElem":
        data = self.reduced_char
        return self._adjunct_from(a, data.r, data.m)

    def norm_of_shifted(self, a: "AlgElem") -> UniPoly:
        """N(T*1 - a) as a univariate polynomial in T."""
        field = self.field
        coords = [
            UniPoly(field, [-(a.coords[i]), self.unit_coords[i]]) for i in range(self.dim)
        ]
        return self.reduced_char.norm_poly.evaluate(coords, zero=UniPoly.zero(field))

    # -- division tests

    def is_division(self, mode: str = "exhaustive", budget: Optional[int] = None) -> DivisionReport:
        if mode == "exhaustive":
            return self._division_exhaustive(budget)
        if mode == "certify":
            return self._division_certify()
        raise ValueError(f"unknown mode {mode!r}")

    def _division_exhaustive(self, budget: Optional[int]) -> DivisionReport:
        field = self.field
        if not isinstance(field, FiniteField):
            raise ValueError("exhaustive division test requires a finite field")
        limit = budget if budget is not None else EXHAUSTIVE_DIVISION_BUDGET
        if field.size**self.dim > limit:
            raise ValueError(f"q^dim = {field.size ** self.dim} exceeds the exhaustive budget {limit}")
        basis = [self.basis(i) for i in range(self.dim)]
        for coords in product(list(field.elements()), repeat=self.dim):
            a = AlgElem(self, coords)
            if a.is_zero():
                continue
            left = [(a * e).coords for e in basis]
            if matrix_rank([list(r) for r in zip(*left)]) < self.dim:
                return DivisionReport("no", "exhaustive", coords)
            right = [(e * a).coords for e in basis]
            if matrix_rank([list(r) for r in zip(*right)]) < self.dim:
                return DivisionReport("no", "exhaustive", coords)
        return DivisionReport("yes", "exhaustive", None)

    def _division_certify(self) -> DivisionReport:
        from .fields import is_prime

        if not is_prime(self.degree):
            raise ValueError("certify mode requires prime degree")
        report = self.is_principally_division("certify")
        return DivisionReport(report.status, "certify", report.witness)

    def is_principally_division(self, mode: str = "certify", budget: Optional[int] = None) -> DivisionReport:
        if mode == "certify":
            form = self.norm_form()
            q = self.field.size
            if q is not None and (q**self.dim - 1) // (q - 1) <= resolve_budget(budget):
                result = isotropy_search(form, "exhaustive", budget=budget)
            else:
                result = isotropy_search(form, "randomized", seed=0, trials=4000)
            if result.status == "anisotropic":
                return DivisionReport("yes", "certify", None)
            if result.status == "isotropic":
                witness = result.witness.vector if result.witness else None
                return DivisionReport("no", "certify", witness)
            return DivisionReport("unknown", "certify", None)
        if mode == "exhaustive":
            field = self.field
            if not isinstance(field, FiniteField):
                raise ValueError("exhaustive test requires a finite field")
            limit = budget if budget is not None else EXHAUSTIVE_DIVISION_BUDGET
            if field.size**self.dim > limit:
                raise ValueError("q^dim exceeds the exhaustive budget")
            for coords in product(list(field.elements()), repeat=self.dim):
                a = AlgElem(self, coords)
                if a.is_zero():
                    continue
                if not _is_irreducible(minimal_polynomial(self, a)):
                    return DivisionReport("no", "exhaustive", coords)
            return DivisionReport("yes", "exhaustive", None)
        raise ValueError(f"unknown mode {mode!r}")

    def __repr__(self) -> str:
        return f"Algebra({self.name}, dim={self.dim} over {self.field})"


class AlgElem:
    """Element of an Algebra; powers are left-normed a^(k+1) = a * a^k."""

    __slots__ = ("parent", "coords")

    def __init__(self, parent: Algebra, coords: tuple):
        self.parent = parent
        self.coords = tuple(coords)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coords)

    def __add__(self, other: "AlgElem") -> "AlgElem":
        return AlgElem(self.parent, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "AlgElem") -> "AlgElem":
        return AlgElem(self.parent, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "AlgElem":
        return AlgElem(self.parent, tuple(-a for a in self.coords))

    def __mul__(self, other):
        if isinstance(other, AlgElem):
            return AlgElem(self.parent, tuple(self.parent.multiply(self.coords, other.coords)))
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c) -> "AlgElem":
        c = self.parent.field.coerce(c)
        return AlgElem(self.parent, tuple(x * c for x in self.coords))

    def __pow__(self, k: int) -> "AlgElem":
        if k < 0:
            raise ValueError("negative powers are not defined here")
        result = self.parent.one()
        for _ in range(k):
            result = self * result
        return result

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, AlgElem)
            and self.parent is other.parent
            and self.coords == other.coords
        )

    def __hash__(self) -> int:
        return hash(self.coords)

    def __repr__(self) -> str:
        return f"AlgElem{self.coords}"


def _is_zero(x) -> bool:
    return x.is_zero() if hasattr(x, "is_zero") else not x


def minimal_polynomial(algebra: Algebra, a: AlgElem) -> UniPoly:
    """Monic minimal polynomial of a over the base field (exact linear algebra)."""
    field = algebra.field
    rows = [list(algebra.one().coords)]
    current = algebra.one()
    for r in range(1, algebra.dim + 2):
        current = a * current
        matrix = [[rows[i][j] for i in range(len(rows))] for j in range(algebra.dim)]
        sol = solve(matrix, list(current.coords))
        if sol is not None:
            coeffs = [-c for c in sol] + [field.one()]
            return UniPoly(field, coeffs)
        rows.append(list(current.coords))
    raise AssertionError("no minimal polynomial found")  # unreachable


def _is_irreducible(poly: UniPoly) -> bool:
    """Trial division by all monic polynomials of degree <= deg/2."""
    field = poly.field
    deg = poly.degree
    if deg <= 1:
        return deg == 1
    elements = list(field.elements())
    for d in range(1, deg // 2 + 1):
        for tail in product(elements, repeat=d):
            divisor = UniPoly(field, list(tail) + [field.one()])
            if _uni_mod(poly, divisor).is_zero():
                return False
    return True


def _uni_mod(a: UniPoly, b: UniPoly) -> UniPoly:
    field = a.field
    rem = list(a.coeffs)
    inv = b.coeffs[-1].inverse()
    while len(rem) >= len(b.coeffs) and rem:
        f = rem[-1] * inv
        shift = len(rem) - len(b.coeffs)
        for i, c in enumerate(b.coeffs):
            rem[shift + i] = rem[shift + i] - f * c
        while rem and rem[-1].is_zero():
            rem.pop()
    return UniPoly(field, rem)
