"""Exact arithmetic for finite fields F_q and iterated Laurent series fields.

Finite fields are F_l[x]/(modulus) with a deterministically chosen modulus and
multiplicative generator, so every descriptor is bit-reproducible.  Laurent
fields are built recursively: an element of F_q((t1))...((tm)) is a truncated
series in the outermost variable whose coefficients live in the inner field.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional, Union


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division (inputs here are small)."""
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


# ---------------------------------------------------------------------------
# dense polynomial helpers over F_l, little-endian coefficient lists


def _poly_trim(p: list[int]) -> list[int]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_mul(a: list[int], b: list[int], l: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % l
    return _poly_trim(out)


def _poly_divmod(a: list[int], b: list[int], l: int) -> tuple[list[int], list[int]]:
    a = list(a)
    q = [0] * max(0, len(a) - len(b) + 1)
    inv_lead = pow(b[-1], l - 2, l)
    while len(a) >= len(b) and a:
        shift = len(a) - len(b)
        factor = (a[-1] * inv_lead) % l
        q[shift] = factor
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - factor * bi) % l
        _poly_trim(a)
    return _poly_trim(q), a


def _poly_mod(a: list[int], m: list[int], l: int) -> list[int]:
    return _poly_divmod(a, m, l)[1]


def _poly_inv_mod(a: list[int], m: list[int], l: int) -> list[int]:
    """Inverse of a modulo m via the extended Euclidean algorithm."""
    r0, r1 = list(m), _poly_trim(list(a))
    s0, s1 = [], [1]
    while r1:
        q, r = _poly_divmod(r0, r1, l)
        r0, r1 = r1, r
        s0, s1 = s1, _poly_trim([(x - y) % l for x, y in _zip_pad(s0, _poly_mul(q, s1, l))])
    if len(r0) != 1:
        raise ZeroDivisionError("element is not invertible")
    c = pow(r0[0], l - 2, l)
    return _poly_trim([(x * c) % l for x in s0])


def _zip_pad(a: list[int], b: list[int]) -> list[tuple[int, int]]:
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0, b[i] if i < len(b) else 0) for i in range(n)]


def _poly_is_irreducible(p: list[int], l: int) -> bool:
    # trial division by every monic polynomial of degree <= deg/2
    deg = len(p) - 1
    for d in range(1, deg // 2 + 1):
        for code in range(l**d):
            div = _decode_poly(code, d, l) + [1]
            if not _poly_divmod(p, div, l)[1]:
                return False
    return True


def _decode_poly(code: int, length: int, l: int) -> list[int]:
    out = []
    for _ in range(length):
        out.append(code % l)
        code //= l
    return out


# ---------------------------------------------------------------------------
# finite fields


_FIELD_CACHE: dict[tuple[int, int], "FiniteField"] = {}


class FiniteField:
    """F_q with q = char^degree, presented as F_char[x]/(modulus).

    The modulus is the monic irreducible of the given degree whose coefficient
    vector has the smallest base-char encoding; the generator is the smallest
    element (same encoding) of full multiplicative order.  Both choices make
    descriptors reproducible across runs and implementations.
    """

    def __init__(self, char: int, degree: int = 1):
        if not is_prime(char):
            raise ValueError(f"characteristic {char} is not prime")
        if degree < 1:
            raise ValueError("degree must be >= 1")
        self.char = char
        self.degree = degree
        self.q = char**degree
        self.modulus = self._find_modulus()
        self._zero = FqElem(self, (0,) * degree)
        self._one = FqElem(self, tuple([1] + [0] * (degree - 1)))
        self.generator = self._find_generator()
        self._dlog: Optional[dict[tuple[int, ...], int]] = None

    def _find_modulus(self) -> tuple[int, ...]:
        l, k = self.char, self.degree
        for code in range(l**k):
            p = _decode_poly(code, k, l) + [1]
            if _poly_is_irreducible(p, l):
                return tuple(p)
        raise AssertionError("no irreducible polynomial found")  # unreachable

    def _find_generator(self) -> "FqElem":
        factors = factorize(self.q - 1) if self.q > 2 else {}
        for idx in range(1, self.q):
            g = self.from_index(idx)
            if all(g ** ((self.q - 1) // f) != self._one for f in factors):
                return g
        raise AssertionError("no generator found")  # unreachable

    # -- element constructors

    def zero(self) -> "FqElem":
        return self._zero

    def one(self) -> "FqElem":
        return self._one

    def from_int(self, n: int) -> "FqElem":
        return FqElem(self, tuple([n % self.char] + [0] * (self.degree - 1)))

    def from_coeffs(self, coeffs) -> "FqElem":
        c = [x % self.char for x in coeffs]
        if len(c) > self.degree:
            c = _poly_mod(c, list(self.modulus), self.char)
        c += [0] * (self.degree - len(c))
        return FqElem(self, tuple(c[: self.degree]))

    def from_index(self, idx: int) -> "FqElem":
        """Element number idx in the canonical base-char encoding."""
        return FqElem(self, tuple(_decode_poly(idx, self.degree, self.char)))

    def coerce(self, x) -> "FqElem":
        if isinstance(x, FqElem) and x.parent == self:
            return x
        if isinstance(x, int):
            return self.from_int(x)
        raise TypeError(f"cannot coerce {x!r} into {self}")

    def elements(self) -> Iterator["FqElem"]:
        for idx in range(self.q):
            yield self.from_index(idx)

    def units(self) -> Iterator["FqElem"]:
        for idx in range(1, self.q):
            yield self.from_index(idx)

    def random_element(self, rng) -> "FqElem":
        return self.from_index(rng.randrange(self.q))

    def random_unit(self, rng) -> "FqElem":
        return self.from_index(rng.randrange(1, self.q))

    # -- structure

    @property
    def size(self) -> int:
        return self.q

    @property
    def base_field(self) -> "FiniteField":
        return self

    def dlog(self, a: "FqElem") -> int:
        """Discrete log of a base the canonical generator."""
        if a.is_zero():
            raise ZeroDivisionError("dlog of zero")
        if self._dlog is None:
            table = {}
            acc = self._one
            for e in range(self.q - 1):
                table[acc.coeffs] = e
                acc = acc * self.generator
            self._dlog = table
        return self._dlog[a.coeffs]

    def descriptor(self) -> str:
        if self.degree == 1:
            return f"gf({self.char})"
        return f"gf({self.char}^{self.degree})"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FiniteField)
            and self.char == other.char
            and self.degree == other.degree
        )

    def __hash__(self) -> int:
        return hash(("gf", self.char, self.degree))

    def __repr__(self) -> str:
        return self.descriptor()


def make_field(char: int, degree: int = 1) -> FiniteField:
    """Deterministic descriptor of F_{char^degree}; cached per (char, degree)."""
    key = (char, degree)
    if key not in _FIELD_CACHE:
        _FIELD_CACHE[key] = FiniteField(char, degree)
    return _FIELD_CACHE[key]


class FqElem:
    """Element of a FiniteField, stored as reduced coefficients mod char."""

    __slots__ = ("parent", "coeffs")

    def __init__(self, parent: FiniteField, coeffs: tuple[int, ...]):
        self.parent = parent
        self.coeffs = coeffs

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    @property
    def index(self) -> int:
        """Canonical base-char encoding, the field's element order."""
        out = 0
        for c in reversed(self.coeffs):
            out = out * self.parent.char + c
        return out

    def __add__(self, other):
        other = _as_fq(self.parent, other)
        if other is NotImplemented:
            return NotImplemented
        l = self.parent.char
        return FqElem(self.parent, tuple((a + b) % l for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_fq(self.parent, other)
        if other is NotImplemented:
            return NotImplemented
        l = self.parent.char
        return FqElem(self.parent, tuple((a - b) % l for a, b in zip(self.coeffs, other.coeffs)))

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __neg__(self):
        l = self.parent.char
        return FqElem(self.parent, tuple((-a) % l for a in self.coeffs))

    def __mul__(self, other):
        other = _as_fq(self.parent, other)
        if other is NotImplemented:
            return NotImplemented
        l = self.parent.char
        prod = _poly_mul(list(self.coeffs), list(other.coeffs), l)
        prod = _poly_mod(prod, list(self.parent.modulus), l)
        prod += [0] * (self.parent.degree - len(prod))
        return FqElem(self.parent, tuple(prod))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_fq(self.parent, other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _as_fq(self.parent, other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def inverse(self) -> "FqElem":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        l = self.parent.char
        if self.parent.degree == 1:
            return FqElem(self.parent, (pow(self.coeffs[0], l - 2, l),))
        inv = _poly_inv_mod(list(self.coeffs), list(self.parent.modulus), l)
        inv += [0] * (self.parent.degree - len(inv))
        return FqElem(self.parent, tuple(inv))

    def __pow__(self, n: int) -> "FqElem":
        if n < 0:
            return self.inverse() ** (-n)
        result = self.parent.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def multiplicative_order(self) -> int:
        if self.is_zero():
            raise ZeroDivisionError("order of zero")
        order = self.parent.q - 1
        for f in factorize(order):
            while order % f == 0 and self ** (order // f) == self.parent.one():
                order //= f
        return order

    def __eq__(self, other) -> bool:
        other = _as_fq(self.parent, other)
        if other is NotImplemented:
            return False
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.parent.char, self.parent.degree, self.coeffs))

    def __str__(self) -> str:
        if self.parent.degree == 1:
            return str(self.coeffs[0])
        return "[" + ",".join(str(c) for c in self.coeffs) + "]"

    __repr__ = __str__


def _as_fq(parent: FiniteField, x):
    if isinstance(x, FqElem):
        return x if x.parent == parent else NotImplemented
    if isinstance(x, int):
        return parent.from_int(x)
    return NotImplemented


# ---------------------------------------------------------------------------
# iterated Laurent series fields


class LaurentField:
    """F_q((t1))...((tm)) with tm outermost, coefficients in the inner field."""

    def __init__(self, base: FiniteField, variables: tuple[str, ...], default_precision: int = 16):
        if not variables:
            raise ValueError("at least one variable required")
        if len(set(variables)) != len(variables):
            raise ValueError("variable names must be distinct")
        if default_precision <= 0:
            raise ValueError("precision must be positive")
        self.base = base
        self.variables = tuple(variables)
        self.default_precision = default_precision
        self.var = self.variables[-1]
        self._inner = (
            base if len(variables) == 1 else LaurentField(base, variables[:-1], default_precision)
        )
        self._zero = LaurentElem(self, 0, (), True, None)
        self._one = LaurentElem(self, 0, (self._inner.one(),), True, None)

    @property
    def inner(self):
        """Field of series coefficients: one variable fewer, or the base."""
        return self._inner

    @property
    def depth(self) -> int:
        return len(self.variables)

    @property
    def char(self) -> int:
        return self.base.char

    @property
    def size(self):
        return None

    @property
    def base_field(self) -> FiniteField:
        return self.base

    def zero(self) -> "LaurentElem":
        return self._zero

    def one(self) -> "LaurentElem":
        return self._one

    def from_int(self, n: int) -> "LaurentElem":
        return self.coerce(n)

    def uniformizer(self, name: Optional[str] = None) -> "LaurentElem":
        """The variable `name` (default: the outermost) as a field element."""
        if name is None or name == self.var:
            return LaurentElem(self, 1, (self._inner.one(),), True, None)
        return self.coerce(self._inner.uniformizer(name))

    def coerce(self, x) -> "LaurentElem":
        if isinstance(x, LaurentElem) and x.parent == self:
            return x
        try:
            c = self._inner.coerce(x)
        except TypeError:
            raise TypeError(f"cannot coerce {x!r} into {self}") from None
        if _coeff_is_zero(c):
            return self._zero
        return LaurentElem(self, 0, (c,), True, None)

    def series(self, val: int, coeffs, exact: bool = True, prec: Optional[int] = None) -> "LaurentElem":
        """Series sum(coeffs[i] * t^(val+i)) with explicit exactness."""
        mapping = {val + i: self._inner.coerce(c) for i, c in enumerate(coeffs)}
        if not exact and prec is None:
            prec = val + len(coeffs)
        return _make_series(self, mapping, exact, prec)

    def random_element(self, rng, min_val: int = 0, max_terms: int = 3) -> "LaurentElem":
        """Random exact element: random valuation and short random tail."""
        val = min_val + rng.randrange(3)
        nterms = 1 + rng.randrange(max_terms)
        inner = self._inner
        coeffs = [inner.random_unit(rng) if hasattr(inner, "random_unit") else inner.random_element(rng, min_val=0)]
        for _ in range(nterms - 1):
            coeffs.append(inner.random_element(rng) if isinstance(inner, FiniteField) else inner.random_element(rng, min_val=0))
        return self.series(val, coeffs)

    def random_unit(self, rng) -> "LaurentElem":
        return self.random_element(rng, min_val=0)

    def descriptor(self) -> str:
        return self.base.descriptor() + "".join(f"(({v}))" for v in self.variables)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LaurentField)
            and self.base == other.base
            and self.variables == other.variables
        )

    def __hash__(self) -> int:
        return hash(("laurent", self.base, self.variables))

    def __repr__(self) -> str:
        return self.descriptor()


def _coeff_is_zero(c) -> bool:
    # inner coefficient with no certified nonzero part counts as zero storage-wise
    if isinstance(c, LaurentElem):
        return not c.coeffs
    return c.is_zero()


def _make_series(parent: LaurentField, mapping: dict, exact: bool, prec: Optional[int]) -> "LaurentElem":
    if prec is not None:
        mapping = {e: c for e, c in mapping.items() if e < prec}
    mapping = {e: c for e, c in mapping.items() if not _coeff_is_zero(c)}
    if not mapping:
        return parent.zero() if exact else LaurentElem(parent, 0, (), False, prec)
    val = min(mapping)
    top = max(mapping)
    coeffs = tuple(mapping.get(e, parent.inner.zero()) for e in range(val, top + 1))
    return LaurentElem(parent, val, coeffs, exact, None if exact else prec)


class LaurentElem:
    """Truncated Laurent series; exact elements are finite sums, inexact ones
    are known only modulo t^prec."""

    __slots__ = ("parent", "val", "coeffs", "exact", "prec")

    def __init__(self, parent, val, coeffs, exact, prec):
        self.parent = parent
        self.val = val
        self.coeffs = coeffs
        self.exact = exact
        self.prec = prec

    # -- structure helpers

    def is_zero(self) -> bool:
        """True only for the exact zero; use compare() for inexact elements."""
        return self.exact and not self.coeffs

    @property
    def valuation(self) -> int:
        if not self.coeffs:
            raise ValueError("valuation undetermined: no certified nonzero coefficient")
        return self.val

    def _mapping(self) -> dict:
        return {self.val + i: c for i, c in enumerate(self.coeffs) if not _coeff_is_zero(c)}

    def _bound(self):
        # absolute exponent below which coefficients are known; None = all
        return None if self.exact else self.prec

    def shift(self, k: int) -> "LaurentElem":
        """Multiply by t^k."""
        if not self.coeffs and self.exact:
            return self
        prec = None if self.prec is None else self.prec + k
        return LaurentElem(self.parent, self.val + k, self.coeffs, self.exact, prec)

    def scale(self, c) -> "LaurentElem":
        """Multiply by an element of the coefficient field."""
        c = self.parent.inner.coerce(c)
        return _make_series(
            self.parent, {e: x * c for e, x in self._mapping().items()}, self.exact, self._bound()
        )

    def truncate(self, n: int) -> "LaurentElem":
        """Truncate modulo t^n, marking the result inexact."""
        bound = n if self._bound() is None else min(n, self._bound())
        return _make_series(self.parent, {e: c for e, c in self._mapping().items() if e < bound}, False, bound)

    # -- ring operations

    def __add__(self, other):
        other = _as_laurent(self.parent, other)
        if other is NotImplemented:
            return NotImplemented
        out = self._mapping()
        for e, c in other._mapping().items():
            out[e] = out[e] + c if e in out else c
        exact = self.exact and other.exact
        prec = _min_bound(self._bound(), other._bound())
        return _make_series(self.parent, out, exact, prec)

    __radd__ = __add__

    def __neg__(self):
        return _make_series(
            self.parent, {e: -c for e, c in self._mapping().items()}, self.exact, self._bound()
        )

    def __sub__(self, other):
        other = _as_laurent(self.parent, other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        other = _as_laurent(self.parent, other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return self.parent.zero()
        exact = self.exact and other.exact
        bounds = []
        if not self.exact:
            bounds.append(self.prec + (other.val if other.coeffs else other.prec))
        if not other.exact:
            bounds.append(other.prec + (self.val if self.coeffs else self.prec))
        prec = min(bounds) if bounds else None
        out: dict = {}
        for e1, c1 in self._mapping().items():
            for e2, c2 in other._mapping().items():
                e = e1 + e2
                if prec is not None and e >= prec:
                    continue
                p = c1 * c2
                out[e] = out[e] + p if e in out else p
        return _make_series(self.parent, out, exact, prec)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_laurent(self.parent, other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _as_laurent(self.parent, other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def inverse(self) -> "LaurentElem":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        if not self.coeffs:
            raise PrecisionError("cannot invert: no certified nonzero coefficient")
        v, c = self.val, self.coeffs[0]
        cinv = c.inverse()
        if self.exact and len(self.coeffs) == 1:
            return LaurentElem(self.parent, -v, (cinv,), True, None)
        # invert the principal-unit part 1 + m by the series recurrence
        rel = self.parent.default_precision if self.exact else self.prec - v
        unit = self.shift(-v).scale(cinv)
        m = {e: c for e, c in unit._mapping().items() if e > 0}
        inv_coeffs = [self.parent.inner.one()]
        for n in range(1, rel):
            acc = self.parent.inner.zero()
            for e, me in m.items():
                if e <= n:
                    acc = acc + me * inv_coeffs[n - e]
            inv_coeffs.append(-acc)
        out = {i - v: b * cinv for i, b in enumerate(inv_coeffs)}
        return _make_series(self.parent, out, False, rel - v)

    def __pow__(self, n: int) -> "LaurentElem":
        if n < 0:
            return self.inverse() ** (-n)
        result = self.parent.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def hensel_pth_root(self, p: int) -> "LaurentElem":
        """p-th root of a principal unit 1 + m via Newton iteration.

        Requires char != p (so p is invertible) and leading term exactly 1.
        The root is an infinite series in general, so the result is inexact at
        the working precision.
        """
        if self.parent.char == p:
            raise ValueError("p equal to the characteristic: Hensel step unavailable")
        if not self.coeffs or self.val != 0 or self.coeffs[0] != self.parent.inner.one():
            raise ValueError("p-th root requires a principal unit 1 + m")
        rel = self.parent.default_precision if self.exact else self.prec
        u = self.truncate(rel)
        pinv = self.parent.coerce(self.parent.base.from_int(p)).inverse()
        y = self.parent.one().truncate(rel)
        for _ in range(max(1, rel).bit_length() + 2):
            err = y**p - u
            if not err.coeffs:
                break
            y = y - err * pinv * (y ** (p - 1)).inverse()
            y = y.truncate(rel)
        return y

    # -- comparisons

    def compare(self, other) -> str:
        """Three-valued comparison: 'equal', 'unequal' or 'unknown'."""
        other = _as_laurent(self.parent, other)
        d = self - other
        if d.is_zero():
            return "equal"
        if d.coeffs:
            return "unequal"
        return "equal" if d.exact else "unknown"

    def __eq__(self, other) -> bool:
        other = _as_laurent(self.parent, other)
        if other is NotImplemented:
            return False
        if not (self.exact and other.exact):
            return False
        return self._mapping() == other._mapping()

    def __hash__(self) -> int:
        return hash((self.parent, self.val, self.coeffs, self.exact, self.prec))

    def __str__(self) -> str:
        t = self.parent.var
        parts = []
        for e in sorted(self._mapping()):
            c = self._mapping()[e]
            cs = str(c)
            composite = isinstance(c, LaurentElem) and (len(c._mapping()) > 1 or not c.exact)
            if composite:
                cs = f"({cs})"
            if e == 0:
                parts.append(cs)
            else:
                te = t if e == 1 else f"{t}^{e}"
                parts.append(te if cs == "1" else f"{cs}*{te}")
        if not self.exact:
            parts.append(f"O({t}^{self.prec})")
        return " + ".join(parts) if parts else "0"

    __repr__ = __str__


def _min_bound(a: Optional[int], b: Optional[int]) -> Optional[int]:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def _as_laurent(parent: LaurentField, x):
    try:
        return parent.coerce(x)
    except TypeError:
        return NotImplemented


class PrecisionError(ValueError):
    """A series operation needed more certified terms than were available."""


FieldElem = Union[FqElem, LaurentElem]
Field = Union[FiniteField, LaurentField]


# ---------------------------------------------------------------------------
# roots of unity and the mod-p class map


@dataclass(frozen=True)
class RootOfUnity:
    field: Field
    p: int
    value: FieldElem


def _residue_field(field: Field) -> FiniteField:
    return field if isinstance(field, FiniteField) else field.base


def check_char(field: Field, p: int) -> None:
    """Reject p equal to the characteristic (standing hypothesis)."""
    if field.char == p:
        raise ValueError(f"p = {p} equals the characteristic of {field}")


def primitive_p_root(field: Field, p: int) -> RootOfUnity:
    """Deterministic primitive p-th root of unity: the smallest element of
    exact order p in the canonical element order of the residue field."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    check_char(field, p)
    res = _residue_field(field)
    if (res.q - 1) % p != 0:
        raise ValueError(f"mu_{p} is not contained in {field} (p does not divide q-1)")
    best = None
    g = res.generator ** ((res.q - 1) // p)
    for j in range(1, p):
        cand = g**j
        if best is None or cand.index < best.index:
            best = cand
    value = best if isinstance(field, FiniteField) else field.coerce(best)
    return RootOfUnity(field, p, value)


def p_class(a: FieldElem, p: int):
    """Class of a unit in F*/(F*)^p.

    For F_q: the discrete log modulo p (0 when mu_p is absent, since then
    every unit is a p-th power).  For Laurent elements: the pair
    (valuation mod p, p_class of the leading unit), using that the principal
    unit 1 + m is a p-th power by Hensel's lemma.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if isinstance(a, FqElem):
        check_char(a.parent, p)
        if a.is_zero():
            raise ZeroDivisionError("p_class of zero")
        if (a.parent.q - 1) % p != 0:
            return 0
        return a.parent.dlog(a) % p
    check_char(a.parent, p)
    v, u, _tail = leading_unit_decomposition(a)
    return (v % p, p_class(u, p))


def leading_unit_decomposition(a: LaurentElem):
    """Write a = t^v * u * (1 + tail) with u in the coefficient field and
    valuation(tail) > 0; exactness flags propagate."""
    if a.is_zero():
        raise ZeroDivisionError("decomposition of zero")
    if not a.coeffs:
        raise PrecisionError("insufficient precision to certify the leading coefficient")
    v = a.val
    u = a.coeffs[0]
    tail = a.shift(-v).scale(u.inverse()) - a.parent.one()
    return v, u, tail


# ---------------------------------------------------------------------------
# descriptor and element text syntax


def parse_field(text: str, default_precision: int = 16) -> Field:
    """Parse "gf(7)", "gf(5^2)", "gf(7)((t))((s))"."""
    s = text.strip().replace(" ", "")
    if not s.startswith("gf("):
        raise ValueError(f"bad field descriptor: {text!r}")
    close = s.index(")")
    inside = s[3:close]
    if "^" in inside:
        char_s, deg_s = inside.split("^")
        base = make_field(int(char_s), int(deg_s))
    else:
        base = make_field(int(inside))
    rest = s[close + 1 :]
    variables = []
    while rest:
        if not (rest.startswith("((") and "))" in rest):
            raise ValueError(f"bad Laurent suffix in descriptor: {text!r}")
        end = rest.index("))")
        variables.append(rest[2:end])
        rest = rest[end + 2 :]
    if not variables:
        return base
    return LaurentField(base, tuple(variables), default_precision)


# expression tokens: integers, names, ^ * + - , [ ] ( ) and O(...)

def _tokenize(s: str) -> list:
    tokens = []
    i = 0
    while i < len(s):
        c = s[i]
        if c.isspace():
            i += 1
        elif c.isdigit():
            j = i
            while j < len(s) and s[j].isdigit():
                j += 1
            tokens.append(("int", int(s[i:j])))
            i = j
        elif c.isalpha() or c == "_":
            j = i
            while j < len(s) and (s[j].isalnum() or s[j] == "_"):
                j += 1
            tokens.append(("name", s[i:j]))
            i = j
        elif c in "+-*^()[],":
            tokens.append((c, c))
            i += 1
        else:
            raise ValueError(f"unexpected character {c!r} in {s!r}")
    return tokens


class _ExprParser:
    """Recursive-descent parser shared by element and form literals."""

    def __init__(self, tokens: list):
        self.tokens = tokens
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def take(self, kind=None):
        tok = self.peek()
        if kind is not None and tok[0] != kind:
            raise ValueError(f"expected {kind!r}, found {tok}")
        self.pos += 1
        return tok

    def parse(self):
        node = self.sum()
        if self.pos != len(self.tokens):
            raise ValueError(f"trailing tokens at {self.tokens[self.pos:]}")
        return node

    def sum(self):
        terms = [("+", self.product())]
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            terms.append((op, self.product()))
        return ("sum", terms)

    def product(self):
        factors = [self.factor()]
        while self.peek()[0] == "*":
            self.take()
            factors.append(self.factor())
        return ("product", factors)

    def factor(self):
        neg = False
        while self.peek()[0] == "-":
            self.take()
            neg = not neg
        node = self.atom()
        if self.peek()[0] == "^":
            self.take()
            sign = 1
            if self.peek()[0] == "-":
                self.take()
                sign = -1
            exp = sign * self.take("int")[1]
            node = ("pow", node, exp)
        if neg:
            node = ("neg", node)
        return node

    def atom(self):
        kind, value = self.peek()
        if kind == "int":
            self.take()
            return ("int", value)
        if kind == "name":
            self.take()
            if value == "O" and self.peek()[0] == "(":
                self.take("(")
                var = self.take("name")[1]
                prec = 1
                if self.peek()[0] == "^":
                    self.take()
                    prec = self.take("int")[1]
                self.take(")")
                return ("bigoh", var, prec)
            return ("name", value)
        if kind == "(":
            self.take()
            node = self.sum()
            self.take(")")
            return node
        if kind == "[":
            self.take()
            coords = [self.signed_int()]
            while self.peek()[0] == ",":
                self.take()
                coords.append(self.signed_int())
            self.take("]")
            return ("vector", coords)
        raise ValueError(f"unexpected token {self.peek()}")

    def signed_int(self):
        sign = 1
        while self.peek()[0] == "-":
            self.take()
            sign = -sign
        return sign * self.take("int")[1]


def parse_expression(text: str):
    return _ExprParser(_tokenize(text)).parse()


def _eval_in_field(node, field: Field):
    kind = node[0]
    if kind == "int":
        return field.from_int(node[1]), None
    if kind == "vector":
        res = _residue_field(field)
        if res.degree != len(node[1]):
            raise ValueError(f"coefficient vector length {len(node[1])} != field degree {res.degree}")
        return field.coerce(res.from_coeffs(node[1])) if isinstance(field, LaurentField) else res.from_coeffs(node[1]), None
    if kind == "name":
        if isinstance(field, LaurentField) and node[1] in field.variables:
            return field.uniformizer(node[1]), None
        raise ValueError(f"unknown name {node[1]!r} in {field}")
    if kind == "neg":
        v, o = _eval_in_field(node[1], field)
        return -v, o
    if kind == "pow":
        v, o = _eval_in_field(node[1], field)
        if o is not None:
            raise ValueError("O(...) cannot be exponentiated")
        return v**node[2], None
    if kind == "product":
        acc, oh = _eval_in_field(node[1][0], field)
        for sub in node[1][1:]:
            v, o = _eval_in_field(sub, field)
            if o is not None or oh is not None:
                raise ValueError("O(...) only allowed as a trailing summand")
            acc = acc * v
        return acc, oh
    if kind == "sum":
        acc = field.zero() if not isinstance(field, LaurentField) else field.zero()
        oh = None
        for op, sub in node[1]:
            v, o = _eval_in_field(sub, field)
            if o is not None:
                oh = o if oh is None else min(oh, o)
                continue
            acc = acc + v if op == "+" else acc - v
        return acc, oh
    if kind == "bigoh":
        if not isinstance(field, LaurentField) or node[1] != field.var:
            raise ValueError(f"O({node[1]}^...) does not match outer variable of {field}")
        return field.zero(), node[2]
    raise AssertionError(f"unhandled node {node}")


def parse_element(text: str, field: Field) -> FieldElem:
    """Parse element text: "5", "[2,1]", "3*t^-1 + 1 + 2*t^3 + O(t^16)"."""
    value, oh = _eval_in_field(parse_expression(text), field)
    if oh is not None:
        value = value.truncate(oh)
    return value
