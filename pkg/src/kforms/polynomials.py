"""Sparse multivariate and dense univariate polynomials over an exact field.

These back the symbolic side of the package: generic characteristic data,
norm-form extraction and the T-substitution identities.  Coefficients are
field elements; exponent vectors are tuples.
"""

from __future__ import annotations

from typing import Optional


class Poly:
    """Multivariate polynomial as a map exponent-vector -> nonzero coefficient."""

    __slots__ = ("field", "nvars", "terms")

    def __init__(self, field, nvars: int, terms: Optional[dict] = None):
        self.field = field
        self.nvars = nvars
        self.terms = terms or {}

    @classmethod
    def zero(cls, field, nvars: int) -> "Poly":
        return cls(field, nvars, {})

    @classmethod
    def const(cls, field, nvars: int, c) -> "Poly":
        c = field.coerce(c)
        if c.is_zero():
            return cls.zero(field, nvars)
        return cls(field, nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, field, nvars: int, i: int) -> "Poly":
        exps = [0] * nvars
        exps[i] = 1
        return cls(field, nvars, {tuple(exps): field.one()})

    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def is_homogeneous(self) -> bool:
        degrees = {sum(e) for e in self.terms}
        return len(degrees) <= 1

    def _check(self, other: "Poly") -> None:
        if self.nvars != other.nvars or self.field != other.field:
            raise ValueError("polynomial ring mismatch")

    def __add__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(self.field, self.nvars, other)
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out[e] + c if e in out else c
            if s.is_zero():
                out.pop(e, None)
            else:
                out[e] = s
        return Poly(self.field, self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.field, self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(self.field, self.nvars, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return self.scale(other)
        self._check(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                p = c1 * c2
                if e in out:
                    s = out[e] + p
                    if s.is_zero():
                        del out[e]
                    else:
                        out[e] = s
                elif not p.is_zero():
                    out[e] = p
        return Poly(self.field, self.nvars, out)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c) -> "Poly":
        c = self.field.coerce(c)
        if c.is_zero():
            return Poly.zero(self.field, self.nvars)
        return Poly(self.field, self.nvars, {e: x * c for e, x in self.terms.items()})

    def __pow__(self, n: int) -> "Poly":
        result = Poly.const(self.field, self.nvars, self.field.one())
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Poly)
            and self.nvars == other.nvars
            and self.field == other.field
            and self.terms == other.terms
        )

    def __hash__(self) -> int:
        return hash((self.field, self.nvars, frozenset(self.terms.items())))

    def evaluate(self, values, zero=None):
        """Evaluate at values drawn from any ring with +, * and ** (field
        elements, UniPoly, Poly...)."""
        acc = self.field.zero() if zero is None else zero
        for exps, c in self.terms.items():
            term = c
            for i, e in enumerate(exps):
                if e:
                    term = term * values[i] ** e if term is not c else c * values[i] ** e
            acc = acc + term
        return acc

    def lead(self) -> tuple:
        """Lexicographically largest exponent vector and its coefficient."""
        e = max(self.terms)
        return e, self.terms[e]

    def exact_divide(self, g: "Poly") -> Optional["Poly"]:
        """Return self / g if g divides exactly, else None."""
        if g.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        rem = self
        quot = Poly.zero(self.field, self.nvars)
        ge, gc = g.lead()
        gcinv = gc.inverse()
        while not rem.is_zero():
            re, rc = rem.lead()
            qe = tuple(a - b for a, b in zip(re, ge))
            if any(x < 0 for x in qe):
                return None
            qterm = Poly(self.field, self.nvars, {qe: rc * gcinv})
            quot = quot + qterm
            rem = rem - qterm * g
        return quot

    def to_string(self, names: Optional[list[str]] = None) -> str:
        if not self.terms:
            return "0"
        names = names or [f"x{i}" for i in range(self.nvars)]
        parts = []
        for exps in sorted(self.terms, key=lambda e: (sum(e), e), reverse=True):
            c = self.terms[exps]
            monos = []
            for i, e in enumerate(exps):
                if e == 1:
                    monos.append(names[i])
                elif e > 1:
                    monos.append(f"{names[i]}^{e}")
            cs = str(c)
            if monos and cs == "1":
                parts.append("*".join(monos))
            elif monos:
                parts.append(cs + "*" + "*".join(monos))
            else:
                parts.append(cs)
        return " + ".join(parts)

    __str__ = to_string

    def __repr__(self) -> str:
        return f"Poly({self.to_string()})"


class UniPoly:
    """Dense univariate polynomial over a field, little-endian coefficients."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        trimmed = list(coeffs)
        while trimmed and trimmed[-1].is_zero():
            trimmed.pop()
        self.field = field
        self.coeffs = tuple(trimmed)

    @classmethod
    def zero(cls, field) -> "UniPoly":
        return cls(field, [])

    @classmethod
    def const(cls, field, c) -> "UniPoly":
        return cls(field, [field.coerce(c)])

    @classmethod
    def x(cls, field) -> "UniPoly":
        return cls(field, [field.zero(), field.one()])

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, i: int):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.field.zero()

    def __add__(self, other):
        if not isinstance(other, UniPoly):
            other = UniPoly.const(self.field, other)
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly(self.field, [self[i] + other[i] for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return UniPoly(self.field, [-c for c in self.coeffs])

    def __sub__(self, other):
        if not isinstance(other, UniPoly):
            other = UniPoly.const(self.field, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, UniPoly):
            c = self.field.coerce(other)
            return UniPoly(self.field, [x * c for x in self.coeffs])
        if self.is_zero() or other.is_zero():
            return UniPoly.zero(self.field)
        out = [self.field.zero()] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return UniPoly(self.field, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "UniPoly":
        result = UniPoly.const(self.field, self.field.one())
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __call__(self, value):
        acc = self.field.zero() if not isinstance(value, UniPoly) else UniPoly.zero(self.field)
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def __eq__(self, other) -> bool:
        return isinstance(other, UniPoly) and self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.field, self.coeffs))

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for e in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[e]
            if c.is_zero():
                continue
            if e == 0:
                parts.append(str(c))
            else:
                xe = "T" if e == 1 else f"T^{e}"
                parts.append(xe if str(c) == "1" else f"{c}*{xe}")
        return " + ".join(parts)

    __repr__ = __str__


class DependenceFinder:
    """Incremental fraction-free elimination over the rational function field.

    Rows are vectors of Poly.  offer(row) returns None while the rows stay
    independent; at the first dependent row it returns polynomial coefficients
    lam with sum(lam[i] * row_i) = 0 and lam[last] != 0.
    """

    def __init__(self, field, nvars: int):
        self.field = field
        self.nvars = nvars
        self.count = 0
        self.pivots: list[tuple[int, list[Poly], dict]] = []

    def offer(self, row: list[Poly]) -> Optional[list[Poly]]:
        idx = self.count
        self.count += 1
        vec = list(row)
        combo: dict[int, Poly] = {idx: Poly.const(self.field, self.nvars, self.field.one())}
        for col, pvec, pcombo in self.pivots:
            f = vec[col]
            if f.is_zero():
                continue
            piv = pvec[col]
            vec = [piv * x - f * y for x, y in zip(vec, pvec)]
            keys = set(combo) | set(pcombo)
            zero = Poly.zero(self.field, self.nvars)
            combo = {k: piv * combo.get(k, zero) - f * pcombo.get(k, zero) for k in keys}
        if all(x.is_zero() for x in vec):
            zero = Poly.zero(self.field, self.nvars)
            return [combo.get(i, zero) for i in range(self.count)]
        col = next(i for i in range(len(vec)) if not vec[i].is_zero())
        self.pivots.append((col, vec, combo))
        return None
