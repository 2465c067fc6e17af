"""Symbol algebras of prime degree p: generators x, y with x^p = a, y^p = b
and the commutation yx = rho*xy for a fixed primitive p-th root of unity.

The realized algebra has basis x^i y^j and monomial structure constants, so
products and the generator-rewriting witness are exact computations.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product
from typing import Optional

from .fields import FiniteField, check_char, is_prime, primitive_p_root
from .forms import Form, isotropy_search, resolve_budget
from .linalg import matrix_inverse
from .powassoc import Algebra, AlgElem


@dataclass(frozen=True)
class SymbolIdentityReport:
    z_power_ok: bool
    w_power_ok: bool
    commutation_ok: bool
    first_form_iso_ok: bool
    second_form_iso_ok: bool
    z_coords: tuple
    w_coords: tuple

    @property
    def ok(self) -> bool:
        return self.z_power_ok and self.w_power_ok and self.commutation_ok and self.first_form_iso_ok


@dataclass(frozen=True)
class SplitReport:
    status: str  # "yes" | "no" | "unknown"
    method: str
    witness: Optional[tuple]


class SymbolAlgebra:
    """D_(a,b) of degree p with the commutation convention yx = rho*xy."""

    def __init__(self, field, p: int, a, b):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        check_char(field, p)
        a = field.coerce(a)
        b = field.coerce(b)
        if a.is_zero() or b.is_zero():
            raise ValueError("slots a, b must be nonzero")
        self.field = field
        self.p = p
        self.a = a
        self.b = b
        self.rho = primitive_p_root(field, p)
        self.algebra = self._realize()
        self.x = self.algebra.basis(self._index(1, 0))
        self.y = self.algebra.basis(self._index(0, 1))

    def _index(self, i: int, j: int) -> int:
        return i * self.p + j

    def _realize(self) -> Algebra:
        p, a, b = self.p, self.a, self.b
        rho = self.rho.value
        dim = p * p
        table = [[() for _ in range(dim)] for _ in range(dim)]
        for i, j, k, l in product(range(p), repeat=4):
            c = rho ** (j * k) * a ** ((i + k) // p) * b ** ((j + l) // p)
            table[self._index(i, j)][self._index(k, l)] = ((self._index((i + k) % p, (j + l) % p), c),)
        unit = [self.field.zero()] * dim
        unit[0] = self.field.one()
        return Algebra(self.field, dim, table, unit, name=f"D_({self.a},{self.b}) deg {p}")

    def element(self, coords) -> AlgElem:
        return self.algebra.element(coords)

    def scalar(self, c) -> AlgElem:
        return self.algebra.one().scale(self.field.coerce(c))

    def y_inverse(self) -> AlgElem:
        # closed form b^-1 * y^(p-1)
        return (self.y ** (self.p - 1)).scale(self.b.inverse())

    def norm_form(self) -> Form:
        form = self.algebra.norm_form()
        if form.degree != self.p:
            raise AssertionError(f"norm form has degree {form.degree}, expected {self.p}")
        return form

    def check_relations(self) -> bool:
        """x^p = a, y^p = b and yx = rho*xy hold in the realized algebra."""
        rho = self.rho.value
        return (
            self.x**self.p == self.scalar(self.a)
            and self.y**self.p == self.scalar(self.b)
            and self.y * self.x == (self.x * self.y).scale(rho)
        )

    def identity_witness(self) -> SymbolIdentityReport:
        """Verify the generator rewriting z = x + y, w = -x*y^-1: it realizes
        the same algebra as the (-a*b^-1, a+b) presentation, and the second
        (a+b, -b*a^-1) presentation via w' = -y*x^-1."""
        a, b, p = self.a, self.b, self.p
        s = a + b
        if s.is_zero():
            raise ValueError("hypothesis a + b != 0 violated")
        rho = self.rho.value
        z = self.x + self.y
        w = -(self.x * self.y_inverse())
        z_ok = z**p == self.scalar(s)
        w_ok = w**p == self.scalar(-(a * b.inverse()))
        comm_ok = z * w == (w * z).scale(rho)
        first = self._generator_pair_realizes(-(a * b.inverse()), s, w, z)
        x_inv = (self.x ** (p - 1)).scale(a.inverse())
        w2 = -(self.y * x_inv)
        second = self._generator_pair_realizes(s, -(b * a.inverse()), z, w2)
        return SymbolIdentityReport(z_ok, w_ok, comm_ok, first, second, z.coords, w.coords)

    def _generator_pair_realizes(self, new_a, new_b, gx: AlgElem, gy: AlgElem) -> bool:
        """True when gx, gy satisfy the D_(new_a,new_b) relations and the
        linear extension x^i y^j -> gx^i gy^j is an algebra isomorphism."""
        p = self.p
        rho = self.rho.value
        if gx**p != self.scalar(new_a) or gy**p != self.scalar(new_b):
            return False
        if gy * gx != (gx * gy).scale(rho):
            return False
        other = SymbolAlgebra(self.field, p, new_a, new_b)
        images = []
        for i in range(p):
            for j in range(p):
                images.append((gx**i) * (gy**j))
        matrix = [[images[col].coords[row] for col in range(p * p)] for row in range(p * p)]
        if matrix_inverse(matrix) is None:
            return False
        for u in range(p * p):
            for v in range(p * p):
                ((k, c),) = other.algebra.table[u][v]
                if images[u] * images[v] != images[k].scale(c):
                    return False
        return True

    def is_split(self, strategy: str = "auto", seed: int = 0) -> SplitReport:
        """Split iff the norm form is isotropic; over finite fields the answer
        must be yes (no finite noncommutative division algebras)."""
        form = self.norm_form()
        field = self.field
        finite = isinstance(field, FiniteField)
        if strategy == "auto":
            points = None
            if finite:
                points = (field.size**form.dim - 1) // (field.size - 1)
            strategy = "exhaustive" if finite and points <= 10**6 else "randomized"
        if strategy == "exhaustive":
            result = isotropy_search(form, "exhaustive", budget=resolve_budget(None))
            if result.status == "isotropic":
                return SplitReport("yes", "exhaustive-norm-isotropy", result.witness.vector)
            if finite:
                raise AssertionError("finite symbol algebra with anisotropic norm form")
            return SplitReport("no", "exhaustive-norm-isotropy", None)
        trials = 4000
        for attempt in range(3):
            result = isotropy_search(form, "randomized", seed=seed + attempt, trials=trials)
            if result.status == "isotropic":
                return SplitReport("yes", "randomized-norm-isotropy", result.witness.vector)
            trials *= 4
        if finite:
            raise AssertionError("finite symbol algebra: expected an isotropy witness")
        return SplitReport("unknown", "randomized-norm-isotropy", None)

    def __repr__(self) -> str:
        return f"SymbolAlgebra(p={self.p}, a={self.a}, b={self.b} over {self.field})"


def build_symbol_algebra(field, p: int, a, b) -> SymbolAlgebra:
    """Construct D_(a,b) and verify its defining relations and associativity."""
    spec = SymbolAlgebra(field, p, a, b)
    if not spec.check_relations():
        raise AssertionError("realized structure constants violate the defining relations")
    report = spec.algebra.check_associative()
    if not report.ok:
        raise AssertionError(f"symbol algebra not associative at {report.failing_triple}")
    return spec


def symbol_norm_form(spec: SymbolAlgebra) -> Form:
    return spec.norm_form()


def symbol_identity_witness(spec: SymbolAlgebra) -> SymbolIdentityReport:
    return spec.identity_witness()


def restricted_generator_form(spec: SymbolAlgebra) -> Form:
    """Restriction of the norm form to the span of x and y (a*t^p + b*s^p up to
    the recorded sign convention)."""
    poly = spec.algebra.reduced_char.norm_poly
    field = spec.field
    from .polynomials import Poly

    values = []
    for idx in range(spec.p * spec.p):
        if idx == spec._index(1, 0):
            values.append(Poly.var(field, 2, 0))
        elif idx == spec._index(0, 1):
            values.append(Poly.var(field, 2, 1))
        else:
            values.append(Poly.zero(field, 2))
    restricted = poly.evaluate(values, zero=Poly.zero(field, 2))
    return Form.from_poly(restricted, ("restriction", "span(x,y)"))


def random_split_witness(spec: SymbolAlgebra, seed: int = 0) -> Optional[tuple]:
    rng = random.Random(seed)
    form = spec.norm_form()
    for _ in range(2000):
        v = tuple(spec.field.random_element(rng) for _ in range(form.dim))
        if all(c.is_zero() for c in v):
            continue
        if form.evaluate(v).is_zero():
            return v
    return None
