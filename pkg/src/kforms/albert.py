"""First Tits process cubic structures A = D + D + D over a degree-3 symbol
algebra D: the 27-variable cubic norm, the adjoint, traces, and powers via the
Cayley-Hamilton relation.

The c / c^-1 exponents and the adjoint product order are fixed conventions
validated at build time by the adjoint identities (x#)# = N(x)x and
N(x#) = N(x)^2; a failure aborts construction instead of silently swapping
conventions.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Optional

from .fields import FiniteField
from .forms import Form, isotropy_search
from .polynomials import Poly, UniPoly
from .powassoc import AlgElem
from .symbolalg import SymbolAlgebra


class AlbertConventionError(RuntimeError):
    """The adopted first-Tits formulas failed their validation identities."""


@dataclass(frozen=True)
class DivisionStatusReport:
    status: str  # "no" | "unknown"  (finite desk-scale checks can never certify "yes")
    witness: Optional[tuple]
    symbol_trivial: Optional[bool]
    consistent: Optional[bool]


class AlbertAlgebra:
    """Cubic norm structure D0 + D1 + D2 with Tits scalar c (27-dimensional)."""

    def __init__(self, D: SymbolAlgebra, c, validate: bool = True):
        if D.p != 3:
            raise ValueError("first Tits process requires a degree-3 symbol algebra")
        c = D.field.coerce(c)
        if c.is_zero():
            raise ValueError("Tits scalar c must be nonzero")
        self.D = D
        self.c = c
        self.c_inv = c.inverse()
        self.field = D.field
        self.dim = 27
        data = D.algebra.reduced_char
        if data.r != 3:
            raise AssertionError(f"symbol algebra has generic degree {data.r}, expected 3")
        # chi_d(T) = T^3 - T_D(d) T^2 + S_D(d) T - N_D(d)
        self._trace_poly = -data.m[2]
        self._quad_poly = data.m[1]
        self._norm_poly_d = data.norm_poly
        if validate:
            self._validate_conventions()

    # -- element plumbing

    def element(self, coords) -> tuple:
        coords = tuple(self.field.coerce(v) for v in coords)
        if len(coords) != 27:
            raise ValueError("Albert elements have 27 coordinates")
        return coords

    def one(self) -> tuple:
        return tuple(self.D.algebra.one().coords) + (self.field.zero(),) * 18

    def split(self, x: tuple) -> tuple[AlgElem, AlgElem, AlgElem]:
        alg = self.D.algebra
        return (
            AlgElem(alg, x[0:9]),
            AlgElem(alg, x[9:18]),
            AlgElem(alg, x[18:27]),
        )

    def join(self, x0: AlgElem, x1: AlgElem, x2: AlgElem) -> tuple:
        return tuple(x0.coords) + tuple(x1.coords) + tuple(x2.coords)

    def random_element(self, rng) -> tuple:
        return tuple(self.field.random_element(rng) for _ in range(27))

    def add(self, x: tuple, y: tuple) -> tuple:
        return tuple(a + b for a, b in zip(x, y))

    def scale(self, c, x: tuple) -> tuple:
        c = self.field.coerce(c)
        return tuple(c * a for a in x)

    # -- the cubic norm structure (N, #, T)

    def norm_d(self, d: AlgElem):
        return self._norm_poly_d.evaluate(d.coords)

    def trace_d(self, d: AlgElem):
        return self._trace_poly.evaluate(d.coords)

    def adj_d(self, d: AlgElem) -> AlgElem:
        return self.D.algebra.adjunct(d)

    def norm(self, x: tuple):
        x0, x1, x2 = self.split(x)
        return (
            self.norm_d(x0)
            + self.c * self.norm_d(x1)
            + self.c_inv * self.norm_d(x2)
            - self.trace_d(x0 * x1 * x2)
        )

    def sharp(self, x: tuple) -> tuple:
        x0, x1, x2 = self.split(x)
        y0 = self.adj_d(x0) - x1 * x2
        y1 = self.adj_d(x2).scale(self.c_inv) - x0 * x1
        y2 = self.adj_d(x1).scale(self.c) - x2 * x0
        return self.join(y0, y1, y2)

    def trace(self, x: tuple):
        x0, _x1, _x2 = self.split(x)
        return self.trace_d(x0)

    def quad_trace(self, x: tuple):
        return self.trace(self.sharp(x))

    def _validate_conventions(self) -> None:
        rng = random.Random(7)
        one = self.one()
        if self.norm(one) != self.field.one():
            raise AlbertConventionError("N(1) != 1")
        for _ in range(6):
            x = self.random_element(rng)
            sharp_sharp = self.sharp(self.sharp(x))
            if sharp_sharp != self.scale(self.norm(x), x):
                raise AlbertConventionError("(x#)# = N(x) x failed")
            if self.norm(self.sharp(x)) != self.norm(x) ** 2:
                raise AlbertConventionError("N(x#) = N(x)^2 failed")

    # -- powers and the characteristic polynomial

    def power(self, x: tuple, k: int) -> tuple:
        if not 0 <= k <= 3:
            raise ValueError("powers are defined via Cayley-Hamilton for k <= 3 only")
        if k == 0:
            return self.one()
        if k == 1:
            return x
        t, s = self.trace(x), self.quad_trace(x)
        square = self.add(self.add(self.sharp(x), self.scale(t, x)), self.scale(-s, self.one()))
        if k == 2:
            return square
        n = self.norm(x)
        cube = self.add(
            self.add(self.scale(t, square), self.scale(-s, x)), self.scale(n, self.one())
        )
        return cube

    def char_poly_element(self, x: tuple) -> UniPoly:
        """chi_x(T) = N(T*1 - x), verified to expand as
        T^3 - T(x) T^2 + S(x) T - N(x)."""
        field = self.field
        one = self.one()
        coords = [UniPoly(field, [-x[i], one[i]]) for i in range(27)]
        via_norm = self._norm_form_poly.evaluate(coords, zero=UniPoly.zero(field))
        expected = UniPoly(
            field, [-self.norm(x), self.quad_trace(x), -self.trace(x), field.one()]
        )
        if via_norm != expected:
            raise AlbertConventionError("chi_x(T) = N(T - x) expansion mismatch")
        return via_norm

    def char_poly_vanishes(self, x: tuple) -> bool:
        """chi_x(x) = 0 with powers defined via Cayley-Hamilton."""
        t, s, n = self.trace(x), self.quad_trace(x), self.norm(x)
        acc = self.power(x, 3)
        acc = self.add(acc, self.scale(-t, self.power(x, 2)))
        acc = self.add(acc, self.scale(s, x))
        acc = self.add(acc, self.scale(-n, self.one()))
        return all(v.is_zero() for v in acc)

    # -- the norm as a 27-variable cubic form

    @cached_property
    def _norm_form_poly(self) -> Poly:
        field = self.field
        n27 = 27

        def embed(poly: Poly, offset: int) -> Poly:
            terms = {}
            for exps, c in poly.terms.items():
                e = [0] * n27
                for i, v in enumerate(exps):
                    e[offset + i] = v
                terms[tuple(e)] = c
            return Poly(field, n27, terms)

        g0 = [Poly.var(field, n27, i) for i in range(9)]
        g1 = [Poly.var(field, n27, 9 + i) for i in range(9)]
        g2 = [Poly.var(field, n27, 18 + i) for i in range(9)]
        alg = self.D.algebra
        prod = alg.multiply(alg.multiply(g0, g1), g2)
        trace_term = self._trace_poly.evaluate(prod, zero=Poly.zero(field, n27))
        total = (
            embed(self._norm_poly_d, 0)
            + embed(self._norm_poly_d, 9).scale(self.c)
            + embed(self._norm_poly_d, 18).scale(self.c_inv)
            - trace_term
        )
        return total

    def norm_form(self) -> Form:
        return Form.from_poly(
            self._norm_form_poly, ("norm-of-algebra", f"albert({self.D.a},{self.D.b},{self.c})")
        )

    # -- division status

    def division_status(self, strategy: str = "auto", seed: int = 0) -> DivisionStatusReport:
        """Principally-division status via norm isotropy (degree 3 is prime).

        Over finite fields the answer must be "no" and is cross-checked against
        triviality of (a, b, c) as a mod-3 symbol.  Over other fields this can
        only falsify: a found witness means "no", otherwise "unknown".
        """
        form = self.norm_form()
        finite = isinstance(self.field, FiniteField)
        witness = self._probe_witness()
        if witness is None:
            trials = 2000
            for attempt in range(4):
                result = isotropy_search(form, "randomized", seed=seed + attempt, trials=trials)
                if result.status == "isotropic":
                    witness = result.witness.vector
                    break
                trials *= 4
        symbol_trivial = None
        consistent = None
        if finite:
            from .milnor import Symbol, is_trivial

            symbol_trivial = is_trivial(Symbol(self.field, 3, (self.D.a, self.D.b, self.c)))
            if witness is None:
                raise AssertionError("finite Albert structure: expected an isotropy witness")
            consistent = symbol_trivial  # not division <=> trivial symbol over F_q
        if witness is not None:
            return DivisionStatusReport("no", tuple(witness), symbol_trivial, consistent)
        return DivisionStatusReport("unknown", None, symbol_trivial, consistent)

    def _probe_witness(self) -> Optional[tuple]:
        """Small targeted search: vectors supported on the D1/D2 summands where
        the norm reduces to c*N_D(x1) + c^-1*N_D(x2)."""
        alg = self.D.algebra
        zero9 = (self.field.zero(),) * 9
        candidates = []
        for s in (1, -1):
            for t in (1, -1):
                candidates.append(
                    zero9 + tuple(alg.one().scale(self.field.from_int(s)).coords)
                    + tuple(alg.one().scale(self.field.from_int(t) * self.c).coords)
                )
        for v in candidates:
            if all(c.is_zero() for c in v):
                continue
            if self.norm(v).is_zero():
                return tuple(v)
        return None

    def __repr__(self) -> str:
        return f"AlbertAlgebra(D_({self.D.a},{self.D.b}), c={self.c} over {self.field})"


def build_first_tits(D: SymbolAlgebra, c) -> AlbertAlgebra:
    return AlbertAlgebra(D, c)


def albert_norm_form(A: AlbertAlgebra) -> Form:
    return A.norm_form()
