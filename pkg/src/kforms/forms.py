"""Homogeneous forms: diagonal/Pfister/doubled constructions, evaluation,
and isotropy decision or search.

Exhaustive search enumerates projective points (first nonzero coordinate
normalized to 1) in lexicographic order of the canonical element encoding, so
the returned witness is reproducible.  Diagonal quadratic forms over Laurent
fields are decided exactly by recursive residue-form splitting.
"""

from __future__ import annotations

import os
import random
from dataclasses import dataclass
from itertools import product
from typing import Optional

from .fields import (
    FiniteField,
    LaurentField,
    check_char,
    leading_unit_decomposition,
    parse_expression,
)
from .polynomials import Poly

DEFAULT_BUDGET = 10**8


class BudgetError(RuntimeError):
    """Raised when an exhaustive task would exceed the evaluation budget."""


def resolve_budget(budget: Optional[int] = None) -> int:
    if budget is not None:
        return budget
    env = os.environ.get("KFORMS_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


class Form:
    """Homogeneous polynomial of fixed degree in dim variables, stored sparsely
    as exponent-vector -> nonzero coefficient."""

    __slots__ = ("field", "degree", "dim", "terms", "provenance")

    def __init__(self, field, degree: int, dim: int, terms: dict, provenance=("adhoc",)):
        if degree < 1 or dim < 1:
            raise ValueError("degree and dimension must be >= 1")
        clean = {}
        for exps, c in terms.items():
            exps = tuple(exps)
            if len(exps) != dim:
                raise ValueError(f"exponent vector {exps} has wrong length")
            if sum(exps) != degree:
                raise ValueError(f"term {exps} is not homogeneous of degree {degree}")
            if not c.is_zero():
                clean[exps] = c
        self.field = field
        self.degree = degree
        self.dim = dim
        self.terms = clean
        self.provenance = provenance

    @classmethod
    def diagonal(cls, field, coeffs, degree: int, provenance=None) -> "Form":
        coeffs = [field.coerce(c) for c in coeffs]
        if any(c.is_zero() for c in coeffs):
            raise ValueError("diagonal coefficients must be nonzero")
        n = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            e = [0] * n
            e[i] = degree
            terms[tuple(e)] = c
        return cls(field, degree, n, terms, provenance or ("diagonal", tuple(coeffs)))

    @classmethod
    def from_poly(cls, poly: Poly, provenance=("adhoc",)) -> "Form":
        if poly.is_zero():
            raise ValueError("zero polynomial is not a form")
        if not poly.is_homogeneous():
            raise ValueError("polynomial is not homogeneous")
        return cls(poly.field, poly.total_degree(), poly.nvars, dict(poly.terms), provenance)

    def diagonal_coefficients(self) -> Optional[list]:
        """Per-variable coefficients if the form is diagonal and involves every
        variable; None otherwise."""
        out = [None] * self.dim
        for exps, c in self.terms.items():
            live = [i for i, e in enumerate(exps) if e]
            if len(live) != 1:
                return None
            out[live[0]] = c
        if any(c is None for c in out):
            return None
        return out

    def evaluate(self, vector):
        if len(vector) != self.dim:
            raise ValueError(f"vector of length {len(vector)} for a {self.dim}-dimensional form")
        vector = [self.field.coerce(v) for v in vector]
        acc = self.field.zero()
        for exps, c in self.terms.items():
            term = c
            for i, e in enumerate(exps):
                if e:
                    term = term * vector[i] ** e
            acc = acc + term
        return acc

    def as_poly(self) -> Poly:
        return Poly(self.field, self.dim, dict(self.terms))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Form)
            and self.field == other.field
            and self.degree == other.degree
            and self.dim == other.dim
            and self.terms == other.terms
        )

    def __hash__(self) -> int:
        return hash((self.field, self.degree, self.dim, frozenset(self.terms.items())))

    def __str__(self) -> str:
        return self.as_poly().to_string()

    def __repr__(self) -> str:
        return f"Form(deg={self.degree}, dim={self.dim}, {self})"

    def to_json(self) -> dict:
        terms = [
            {"exps": list(e), "coeff": str(c)}
            for e, c in sorted(self.terms.items())
        ]
        return {
            "degree": self.degree,
            "dim": self.dim,
            "field": self.field.descriptor(),
            "terms": terms,
        }

    @classmethod
    def from_json(cls, data: dict, field=None) -> "Form":
        from .fields import parse_element, parse_field

        field = field or parse_field(data["field"])
        terms = {}
        for t in data["terms"]:
            terms[tuple(t["exps"])] = parse_element(str(t["coeff"]), field)
        return cls(field, data["degree"], data["dim"], terms, ("json",))


def parse_form(text: str, field, dim: Optional[int] = None) -> Form:
    """Parse a form literal like "3*x0^3 + 5*x1^3" over the given field."""
    ast = parse_expression(text)
    indices: set[int] = set()

    def scan(node):
        if node[0] == "name" and node[1].startswith("x") and node[1][1:].isdigit():
            indices.add(int(node[1][1:]))
        for sub in node[1:]:
            if isinstance(sub, tuple):
                scan(sub)
            elif isinstance(sub, list):
                for s in sub:
                    scan(s if isinstance(s, tuple) else s[1])

    scan(ast)
    n = dim if dim is not None else (max(indices) + 1 if indices else 1)

    def ev(node) -> Poly:
        kind = node[0]
        if kind == "int":
            return Poly.const(field, n, field.from_int(node[1]))
        if kind == "name":
            name = node[1]
            if name.startswith("x") and name[1:].isdigit():
                return Poly.var(field, n, int(name[1:]))
            if isinstance(field, LaurentField) and name in field.variables:
                return Poly.const(field, n, field.uniformizer(name))
            raise ValueError(f"unknown name {name!r} in form literal")
        if kind == "vector":
            from .fields import _residue_field

            res = _residue_field(field)
            return Poly.const(field, n, field.coerce(res.from_coeffs(node[1])))
        if kind == "neg":
            return -ev(node[1])
        if kind == "pow":
            if node[2] < 0:
                raise ValueError("negative exponents not allowed in form literals")
            return ev(node[1]) ** node[2]
        if kind == "product":
            acc = ev(node[1][0])
            for sub in node[1][1:]:
                acc = acc * ev(sub)
            return acc
        if kind == "sum":
            acc = Poly.zero(field, n)
            for op, sub in node[1]:
                acc = acc + ev(sub) if op == "+" else acc - ev(sub)
            return acc
        raise ValueError(f"unsupported node {kind} in form literal")

    return Form.from_poly(ev(ast), ("literal", text))


# ---------------------------------------------------------------------------
# constructors


def direct_sum(f: Form, g: Form) -> Form:
    """(f + g)(v, w) = f(v) + g(w) on the direct sum of the variable spaces."""
    if f.degree != g.degree:
        raise ValueError("direct sum requires equal degrees")
    if f.field != g.field:
        raise ValueError("direct sum requires equal base fields")
    n = f.dim + g.dim
    terms = {}
    for e, c in f.terms.items():
        terms[e + (0,) * g.dim] = c
    for e, c in g.terms.items():
        terms[(0,) * f.dim + e] = c
    return Form(f.field, f.degree, n, terms, ("sum", f, g))


def scale(c, f: Form) -> Form:
    c = f.field.coerce(c)
    if c.is_zero():
        raise ValueError("scaling coefficient must be nonzero")
    return Form(f.field, f.degree, f.dim, {e: c * x for e, x in f.terms.items()}, ("scaled", c, f))


def norm_double(n_form: Form, a) -> Form:
    """Doubling N |-> N + (-a)N; provenance records (N, a) for contract checks."""
    a = n_form.field.coerce(a)
    if a.is_zero():
        raise ValueError("doubling scalar must be nonzero")
    doubled = direct_sum(n_form, scale(-a, n_form))
    return Form(doubled.field, doubled.degree, doubled.dim, doubled.terms, ("doubled", n_form, a))


def pfister(field, slots) -> Form:
    """2^n-dimensional quadratic Pfister form of the given slots, built by
    iterated doubling from the one-dimensional form <1>."""
    if field.char == 2:
        raise ValueError("Pfister forms need characteristic != 2")
    slots = [field.coerce(a) for a in slots]
    if any(a.is_zero() for a in slots):
        raise ValueError("Pfister slots must be nonzero")
    form = Form.diagonal(field, [field.one()], 2)
    for a in slots:
        form = direct_sum(form, scale(-a, form))
    return Form(field, 2, form.dim, form.terms, ("pfister", tuple(slots)))


def diagonal_power_form(field, coeffs, p: int) -> Form:
    """The obvious degree-p diagonal form a_1 t_1^p + ... + a_n t_n^p."""
    return Form.diagonal(field, coeffs, p)


# ---------------------------------------------------------------------------
# isotropy search


@dataclass(frozen=True)
class IsotropyWitness:
    vector: tuple
    value: object
    strategy: str


@dataclass(frozen=True)
class SearchResult:
    status: str  # "isotropic" | "anisotropic" | "not-found"
    witness: Optional[IsotropyWitness]
    evaluations: int
    strategy: str

    @property
    def isotropic(self) -> Optional[bool]:
        if self.status == "isotropic":
            return True
        if self.status == "anisotropic":
            return False
        return None


def _normalized_blocks(field, n: int):
    """Projective enumeration blocks in lexicographic order: block j fixes
    v_0..v_{j-1} = 0, v_j = 1 and runs the tail through all tuples."""
    for j in range(n - 1, -1, -1):
        yield j


def _block_vectors(field, n: int, j: int):
    prefix = [field.zero()] * j + [field.one()]
    tail = n - j - 1
    if tail == 0:
        yield tuple(prefix)
        return
    for idxs in product(range(field.size), repeat=tail):
        yield tuple(prefix + [field.from_index(i) for i in idxs])


def _search_exhaustive(f: Form, budget: int, workers: int) -> SearchResult:
    field = f.field
    if not isinstance(field, FiniteField):
        raise ValueError("exhaustive search requires a finite field")
    q, n = field.size, f.dim
    points = (q**n - 1) // (q - 1) if q > 1 else 1
    if points > budget:
        raise BudgetError(f"exhaustive search needs {points} evaluations, budget {budget}")
    evaluations = 0
    blocks = list(_normalized_blocks(field, n))
    if workers <= 1:
        for j in blocks:
            for v in _block_vectors(field, n, j):
                evaluations += 1
                if f.evaluate(v).is_zero():
                    return SearchResult(
                        "isotropic", IsotropyWitness(v, f.evaluate(v), "exhaustive"), evaluations, "exhaustive"
                    )
        return SearchResult("anisotropic", None, evaluations, "exhaustive")
    # partitioned mode: blocks are scanned independently (round-robin buckets)
    # and the per-block winners merged; must equal the sequential result.
    buckets: list[list[int]] = [[] for _ in range(workers)]
    for pos, j in enumerate(blocks):
        buckets[pos % workers].append(j)
    found: dict[int, tuple] = {}
    for bucket in buckets:
        for j in bucket:
            for v in _block_vectors(field, n, j):
                evaluations += 1
                if f.evaluate(v).is_zero():
                    found[j] = v
                    break
    if not found:
        return SearchResult("anisotropic", None, evaluations, "exhaustive")
    best_j = max(found)  # larger j comes earlier in the sequential order
    v = found[best_j]
    return SearchResult("isotropic", IsotropyWitness(v, f.evaluate(v), "exhaustive"), evaluations, "exhaustive")


def _random_vector(field, n: int, rng):
    if isinstance(field, FiniteField):
        return tuple(field.random_element(rng) for _ in range(n))
    return tuple(
        field.random_element(rng, min_val=-1) if rng.random() < 0.7 else field.zero()
        for _ in range(n)
    )


def _search_randomized(f: Form, seed: int, trials: int) -> SearchResult:
    rng = random.Random(seed)
    evaluations = 0
    for _ in range(trials):
        v = _random_vector(f.field, f.dim, rng)
        if all(x.is_zero() for x in v):
            continue
        evaluations += 1
        if f.evaluate(v).is_zero():
            return SearchResult(
                "isotropic", IsotropyWitness(v, f.evaluate(v), "randomized"), evaluations, "randomized"
            )
    return SearchResult("not-found", None, evaluations, "randomized")


def _diag_quadratic_decide(coeffs: list, field):
    """Exact isotropy of sum(c_i x_i^2) over F_q or a Laurent tower.

    Returns (isotropic, witness-or-None); over Laurent fields a witness is
    only returned when it lifts exactly (monomial coefficients), the decision
    itself is always exact.
    """
    if isinstance(field, FiniteField):
        form = Form.diagonal(field, coeffs, 2)
        res = _search_exhaustive(form, resolve_budget(None), 1)
        return res.isotropic, (list(res.witness.vector) if res.witness else None)
    check_char(field, 2)
    even: list[tuple[int, object, int]] = []
    odd: list[tuple[int, object, int]] = []
    for i, c in enumerate(coeffs):
        if not c.exact:
            raise ValueError("springer decision requires exact coefficients")
        v, u, _tail = leading_unit_decomposition(c)
        (even if v % 2 == 0 else odd).append((i, u, v // 2))
    for group in (even, odd):
        if not group:
            continue
        iso, w = _diag_quadratic_decide([u for _, u, _ in group], field.inner)
        if iso:
            if w is None:
                return True, None
            candidate = [field.zero()] * len(coeffs)
            for (i, _u, half), wi in zip(group, w):
                candidate[i] = field.coerce(wi) * field.uniformizer() ** (-half)
            total = field.zero()
            for c, x in zip(coeffs, candidate):
                total = total + c * x * x
            if total.is_zero():
                return True, candidate
            return True, None
    return False, None


def _search_springer(f: Form) -> SearchResult:
    if not isinstance(f.field, LaurentField):
        raise ValueError("springer decision requires a Laurent series field")
    if f.degree != 2:
        raise ValueError("springer decision requires a quadratic form")
    coeffs = f.diagonal_coefficients()
    if coeffs is None:
        raise ValueError("springer decision requires a diagonal form in all variables")
    iso, witness = _diag_quadratic_decide(coeffs, f.field)
    if not iso:
        return SearchResult("anisotropic", None, 0, "springer")
    if witness is None:
        return SearchResult("isotropic", None, 0, "springer")
    v = tuple(witness)
    return SearchResult("isotropic", IsotropyWitness(v, f.evaluate(v), "springer"), 0, "springer")


def isotropy_search(
    f: Form,
    strategy: str = "exhaustive",
    *,
    seed: int = 0,
    trials: int = 2000,
    budget: Optional[int] = None,
    workers: int = 1,
) -> SearchResult:
    """Decide or search isotropy.

    exhaustive: definite answer over finite fields, lexicographically smallest
    witness.  randomized: seeded sampling, "not-found" is inconclusive.
    springer: exact decision for diagonal quadratic forms over Laurent fields.
    """
    if strategy == "exhaustive":
        return _search_exhaustive(f, resolve_budget(budget), workers)
    if strategy == "randomized":
        return _search_randomized(f, seed, trials)
    if strategy == "springer":
        return _search_springer(f)
    raise ValueError(f"unknown strategy {strategy!r}")


# ---------------------------------------------------------------------------
# Chevalley-Warning style zero counting


@dataclass(frozen=True)
class ChevalleyWarningReport:
    applicable: bool
    reason: str
    zero_count: Optional[int]
    count_divisible_by_char: Optional[bool]
    nontrivial_zero_exists: Optional[bool]
    witness: Optional[IsotropyWitness]


def _count_zeros(f: Form, budget: int) -> int:
    field = f.field
    q, n = field.size, f.dim
    diag = f.diagonal_coefficients()
    if diag is not None and field.degree == 1:
        # per-variable value distributions combined by additive convolution;
        # exact, and much faster than point enumeration
        l = field.char
        conv = [0] * l
        conv[0] = 1
        for c in diag:
            ci = c.coeffs[0]
            dist = [0] * l
            for x in range(l):
                dist[(ci * pow(x, f.degree, l)) % l] += 1
            new = [0] * l
            for s, cnt in enumerate(conv):
                if cnt:
                    for t, dcnt in enumerate(dist):
                        new[(s + t) % l] += cnt * dcnt
            conv = new
        return conv[0]
    if q**n > budget:
        raise BudgetError(f"zero counting needs {q ** n} evaluations, budget {budget}")
    count = 0
    elements = list(field.elements())
    for point in product(elements, repeat=n):
        if f.evaluate(point).is_zero():
            count += 1
    return count


def chevalley_warning_check(q: int, d: int, n: int, f: Form, budget: Optional[int] = None) -> ChevalleyWarningReport:
    """Count zeros of f over F_q and check the degree-vs-variables bound: for
    n > d variables... the count is divisible by the characteristic and a
    nontrivial zero exists."""
    if not isinstance(f.field, FiniteField) or f.field.size != q:
        raise ValueError("form is not defined over F_q for the given q")
    if f.degree != d or f.dim != n:
        raise ValueError("form does not match the stated degree/dimension")
    if n <= d:
        return ChevalleyWarningReport(False, "hypothesis not met: need more variables than the degree", None, None, None, None)
    budget = resolve_budget(budget)
    count = _count_zeros(f, budget)
    result = _search_exhaustive(f, budget, 1)
    return ChevalleyWarningReport(
        True,
        "",
        count,
        count % f.field.char == 0,
        result.status == "isotropic",
        result.witness,
    )
