"""Mod-p Milnor symbols over finite fields and iterated Laurent towers:
normalization, the two-slot rewriting identity, residue-based triviality,
splits/neutralizes contract checks and the p = 2 common-slot procedure.

Symbols are presentations.  Triviality of a class is decided by recursively
splitting k_n(E((t))) into a unit part (k_n(E)) and a tame-residue part
(k_{n-1}(E)): slots are reduced to t^v * u modulo p-th powers, the symbol is
expanded multilinearly, multiple t-slots are cleared via (t, t) = (t, -1),
and the base case over F_q is k_n = 0 for n >= 2 and the p-class test for
n = 1.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional

from .fields import (
    FiniteField,
    LaurentField,
    check_char,
    is_prime,
    leading_unit_decomposition,
    p_class,
    parse_expression,
)
from .forms import (
    Form,
    diagonal_power_form,
    isotropy_search,
    pfister,
    resolve_budget,
    scale,
    direct_sum,
    _block_vectors,
)


@dataclass(frozen=True)
class Symbol:
    """Presentation (a_1, ..., a_n) of a class in k_n(F) = K^M_n(F)/p."""

    field: object
    p: int
    slots: tuple

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        check_char(self.field, self.p)
        slots = tuple(self.field.coerce(a) for a in self.slots)
        for a in slots:
            if a.is_zero():
                raise ValueError("symbol slots must be nonzero")
            if hasattr(a, "exact") and not a.exact:
                raise ValueError("symbol slots must be exact")
        object.__setattr__(self, "slots", slots)

    @property
    def length(self) -> int:
        return len(self.slots)

    @property
    def has_unit_slot(self) -> bool:
        one = self.field.one()
        return any(a == one for a in self.slots)

    def __str__(self) -> str:
        return "(" + ", ".join(str(a) for a in self.slots) + ")"

    def __repr__(self) -> str:
        return f"Symbol{self} mod {self.p} over {self.field}"


def parse_symbol(text: str, field, p: int) -> Symbol:
    """Parse "(t, 3)" style symbol text over the given field."""
    from .fields import parse_element

    s = text.strip()
    if s.startswith("(") and s.endswith(")"):
        s = s[1:-1]
    parts = _split_top_level(s)
    return Symbol(field, p, tuple(parse_element(part, field) for part in parts))


def _split_top_level(s: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in s:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    if cur:
        parts.append("".join(cur))
    return [p.strip() for p in parts if p.strip()]


def _supported(field) -> bool:
    return isinstance(field, (FiniteField, LaurentField))


def _canonical_slot(a, field, p):
    """Canonical representative of the class of a modulo p-th powers."""
    if isinstance(field, FiniteField):
        if (field.q - 1) % p != 0:
            return field.one()
        return field.generator ** p_class(a, p)
    v, u, _tail = leading_unit_decomposition(a)
    inner_rep = _canonical_slot(u, field.inner, p)
    return field.uniformizer() ** (v % p) * field.coerce(inner_rep)


def normalize(s: Symbol) -> Symbol:
    """Slot-wise canonical class representatives; a slot reduced to 1 flags the
    presentation as trivial (check has_unit_slot)."""
    if not _supported(s.field):
        raise ValueError(f"unsupported field {s.field} for normalization")
    return Symbol(s.field, s.p, tuple(_canonical_slot(a, s.field, s.p) for a in s.slots))


def rewrite_identity(s: Symbol, i: int) -> Symbol:
    """Rewrite slots (a_i, a_{i+1}) as (-a_i * a_{i+1}^-1, a_i + a_{i+1})."""
    if not 0 <= i < s.length - 1:
        raise IndexError(f"slot index {i} out of range for length {s.length}")
    a, b = s.slots[i], s.slots[i + 1]
    if (a + b).is_zero():
        raise ValueError("rewriting requires a_i + a_{i+1} != 0")
    new = list(s.slots)
    new[i] = -(a * b.inverse())
    new[i + 1] = a + b
    return Symbol(s.field, s.p, tuple(new))


# ---------------------------------------------------------------------------
# residues and triviality


@dataclass(frozen=True)
class ResidueDecomposition:
    """Image of a symbol under k_n(E((t))) = k_n(E) + k_{n-1}(E), as formal
    sums of symbols over E with mod-p coefficients."""

    field: object
    unit_terms: tuple  # ((coeff, Symbol over E), ...)
    residue_terms: tuple

    @property
    def unit_part(self) -> Optional[Symbol]:
        if len(self.unit_terms) == 1 and self.unit_terms[0][0] == 1:
            return self.unit_terms[0][1]
        return None

    @property
    def residue_part(self) -> Optional[Symbol]:
        if len(self.residue_terms) == 1 and self.residue_terms[0][0] == 1:
            return self.residue_terms[0][1]
        return None


def _expand_level(field: LaurentField, p: int, terms):
    """One level of the decomposition: terms are (coeff, slot tuple) over the
    Laurent field; returns (unit_terms, residue_terms) over field.inner."""
    inner = field.inner
    inner_one = inner.one()
    minus_one = inner.from_int(-1) if isinstance(inner, FiniteField) else inner.coerce(-1)
    unit_terms: list = []
    residue_terms: list = []
    for coeff, slots in terms:
        profiles = []
        for a in slots:
            v, u, _tail = leading_unit_decomposition(a)
            profiles.append((v % p, u))
        t_positions = [i for i, (v, _u) in enumerate(profiles) if v != 0]
        n_subsets = 1 << len(t_positions)
        for mask in range(n_subsets):
            chosen = [t_positions[i] for i in range(len(t_positions)) if mask >> i & 1]
            c = coeff
            for i in chosen:
                c = c * profiles[i][0] % p
            if c == 0:
                continue
            units = [profiles[i][1] for i in range(len(slots)) if i not in chosen]
            if any(u == inner_one for u in units):
                continue  # a slot that is a p-th power kills the term
            k = len(chosen)
            if k == 0:
                unit_terms.append((c, tuple(units)))
                continue
            # move the t-slots to the front (sign = permutation parity), then
            # clear repeats via (t, t) = (t, -1)
            swaps = sum(pos - rank for rank, pos in enumerate(chosen))
            if swaps % 2 and p != 2:
                c = (-c) % p
                if c == 0:
                    continue
            extra = [minus_one] * (k - 1)
            if any(u == inner_one for u in extra):
                continue  # -1 trivial (p = 2 over a field where -1 is a square)
            residue_terms.append((c, tuple(extra + units)))
    return unit_terms, residue_terms


def _sum_is_trivial(field, p: int, terms) -> bool:
    terms = [(c, slots) for c, slots in terms if c % p != 0]
    if not terms:
        return True
    if isinstance(field, FiniteField):
        length = len(terms[0][1])
        if length >= 2:
            return True  # k_n(F_q) = 0 for n >= 2
        if length == 0:
            return sum(c for c, _ in terms) % p == 0  # k_0 = Z/p
        total = 0
        for c, slots in terms:
            total = (total + c * p_class(slots[0], p)) % p
        return total == 0
    unit_terms, residue_terms = _expand_level(field, p, terms)
    return _sum_is_trivial(field.inner, p, unit_terms) and _sum_is_trivial(
        field.inner, p, residue_terms
    )


def residue(s: Symbol) -> ResidueDecomposition:
    """Decompose a symbol over E((t)) into unit and tame-residue parts."""
    if not isinstance(s.field, LaurentField):
        raise ValueError("residue decomposition needs a Laurent series field")
    unit_terms, residue_terms = _expand_level(s.field, s.p, [(1, s.slots)])
    inner = s.field.inner
    unit_packed = tuple((c, Symbol(inner, s.p, slots)) for c, slots in unit_terms if slots)
    res_packed = tuple((c, Symbol(inner, s.p, slots)) for c, slots in residue_terms if slots)
    return ResidueDecomposition(s.field, unit_packed, res_packed)


def is_trivial(s: Symbol) -> bool:
    """Exact triviality of the class of s in k_n over a supported field."""
    if not _supported(s.field):
        raise ValueError(f"unsupported field {s.field} for triviality decision")
    return _sum_is_trivial(s.field, s.p, [(1, s.slots)])


# ---------------------------------------------------------------------------
# splits / neutralizes contract checks


@dataclass(frozen=True)
class SplitCheckReport:
    strategy: str
    search_status: str
    witness: Optional[tuple]
    symbol_trivial: bool
    consistent: bool
    conclusive: bool


@dataclass(frozen=True)
class NeutralizeCheckReport:
    samples_checked: int
    all_trivial: bool
    failures: tuple


def _auto_search(form: Form, seed: int, trials: int):
    field = form.field
    if isinstance(field, FiniteField):
        points = (field.size**form.dim - 1) // (field.size - 1)
        if points <= min(resolve_budget(None), 2 * 10**6):
            return isotropy_search(form, "exhaustive")
        return isotropy_search(form, "randomized", seed=seed, trials=trials)
    if form.degree == 2 and field.char != 2 and form.diagonal_coefficients() is not None:
        return isotropy_search(form, "springer")
    return isotropy_search(form, "randomized", seed=seed, trials=trials)


def split_check(n_form: Form, s: Symbol, samples: int = 2000, seed: int = 0) -> SplitCheckReport:
    """Splitting contract: a found isotropy witness must force the symbol to
    vanish; a nontrivial symbol must see no witness (definite for exhaustive
    and springer strategies, evidence only for randomized)."""
    result = _auto_search(n_form, seed, samples)
    trivial = is_trivial(s)
    if result.status == "isotropic":
        consistent = trivial
    elif result.status == "anisotropic":
        consistent = True
    else:
        consistent = True  # inconclusive search constrains nothing
    return SplitCheckReport(
        result.strategy,
        result.status,
        result.witness.vector if result.witness else None,
        trivial,
        consistent,
        result.status != "not-found",
    )


def neutralize_check(n_form: Form, s: Symbol, samples: int = 10, seed: int = 0) -> NeutralizeCheckReport:
    """Neutralizing contract: appending any represented nonzero value N(v) to
    the symbol yields a trivial class."""
    rng = random.Random(seed)
    field = n_form.field
    checked = 0
    failures = []
    attempts = 0
    while checked < samples and attempts < 50 * samples:
        attempts += 1
        if isinstance(field, FiniteField):
            v = tuple(field.random_element(rng) for _ in range(n_form.dim))
        else:
            v = tuple(field.random_element(rng, min_val=0) for _ in range(n_form.dim))
        if all(x.is_zero() for x in v):
            continue
        value = n_form.evaluate(v)
        if value.is_zero():
            continue
        extended = Symbol(s.field, s.p, s.slots + (value,))
        checked += 1
        if not is_trivial(extended):
            failures.append(v)
    return NeutralizeCheckReport(checked, not failures, tuple(failures))


# ---------------------------------------------------------------------------
# the p = 2 common-slot procedure


@dataclass(frozen=True)
class CommonSlotReport:
    branch: str  # "alpha-trivial" | "beta-trivial" | "sum-zero-alpha-trivial" | "rewrite"
    alpha: Optional[Symbol]
    beta: Optional[Symbol]
    shared_before: int
    shared_after: Optional[int]
    witness: Optional[tuple]
    declared_trivial: Optional[str]
    declaration_agrees: Optional[bool]


def shared_slot_count(alpha: Symbol, beta: Symbol) -> int:
    return len(_match_shared(alpha, beta)[0])


def _match_shared(alpha: Symbol, beta: Symbol):
    """Greedy multiset matching of equal slots; ties broken by the canonical
    element order so reordering is deterministic."""
    remaining = list(range(beta.length))
    pairs = []
    order = sorted(range(alpha.length), key=lambda i: _slot_key(alpha.slots[i]))
    for i in order:
        for j in remaining:
            if alpha.slots[i] == beta.slots[j]:
                pairs.append((i, j))
                remaining.remove(j)
                break
    return pairs, remaining


def _slot_key(a):
    return a.index if hasattr(a, "index") else str(a)


def _reorder(s: Symbol, front: list[int]) -> Symbol:
    rest = [i for i in range(s.length) if i not in front]
    return Symbol(s.field, s.p, tuple(s.slots[i] for i in front + rest))


def common_slot_step(alpha: Symbol, beta: Symbol, budget: Optional[int] = None) -> CommonSlotReport:
    """One inductive step of the common-slot procedure for p = 2 symbols of
    equal length n sharing m < n-1 slots.

    Builds the Pfister forms of the length n-1 prefixes, finds a zero of
    a_{n-1} tau^2 + a_n * Phi - b_n * Gamma, and either declares one symbol
    trivial (isotropic prefix form, or vanishing two-term sum) or rewrites the
    last two slots so the outputs share one more slot.
    """
    if alpha.p != 2 or beta.p != 2:
        raise ValueError("common-slot procedure requires p = 2")
    if alpha.field != beta.field or alpha.length != beta.length:
        raise ValueError("symbols must have the same field and length")
    n = alpha.length
    if n < 2:
        raise ValueError("symbols must have length >= 2")
    pairs, _ = _match_shared(alpha, beta)
    m = len(pairs)
    if m >= n - 1:
        raise ValueError(f"presentations already share {m} >= n-1 slots")
    alpha = _reorder(alpha, [i for i, _ in pairs])
    beta = _reorder(beta, [j for _, j in pairs])
    field = alpha.field
    if not isinstance(field, FiniteField):
        raise ValueError("isotropy of the assembled form is only decided over finite fields here")
    a, b = alpha.slots, beta.slots
    phi = pfister(field, a[: n - 1])
    gamma = pfister(field, b[: n - 1])
    assembled = direct_sum(
        direct_sum(Form.diagonal(field, [a[n - 2]], 2), scale(a[n - 1], phi)),
        scale(-b[n - 1], gamma),
    )
    dim_phi = phi.dim
    budget = resolve_budget(budget)
    count = 0
    for j in range(assembled.dim - 1, -1, -1):
        for v in _block_vectors(field, assembled.dim, j):
            count += 1
            if count > budget:
                raise RuntimeError("budget exceeded during common-slot witness search")
            if not assembled.evaluate(v).is_zero():
                continue
            t0 = v[0]
            vv = v[1 : 1 + dim_phi]
            ww = v[1 + dim_phi :]
            phi_v = phi.evaluate(vv)
            gamma_w = gamma.evaluate(ww)
            vv_nonzero = not all(x.is_zero() for x in vv)
            ww_nonzero = not all(x.is_zero() for x in ww)
            if vv_nonzero and phi_v.is_zero():
                agrees = is_trivial(alpha)
                return CommonSlotReport("alpha-trivial", None, None, m, None, v, "alpha", agrees)
            if ww_nonzero and gamma_w.is_zero():
                agrees = is_trivial(beta)
                return CommonSlotReport("beta-trivial", None, None, m, None, v, "beta", agrees)
            if phi_v.is_zero() or gamma_w.is_zero():
                continue  # degenerate zero-subvector cases carry no information
            two_term = t0 * t0 * a[n - 2] + phi_v * a[n - 1]
            if two_term.is_zero():
                agrees = is_trivial(alpha)
                return CommonSlotReport(
                    "sum-zero-alpha-trivial", None, None, m, None, v, "alpha", agrees
                )
            if t0.is_zero():
                continue  # the rewriting needs the square slot t0^2 a_{n-1} != 0
            new_last = gamma_w * b[n - 1]
            rewritten = -(t0 * t0 * a[n - 2]) * (phi_v * a[n - 1]).inverse()
            alpha_new = Symbol(field, 2, a[: n - 2] + (rewritten, new_last))
            beta_new = Symbol(field, 2, b[: n - 1] + (new_last,))
            shared_after = shared_slot_count(alpha_new, beta_new)
            if shared_after < m + 1:
                raise AssertionError("rewriting failed to increase the shared slot count")
            return CommonSlotReport(
                "rewrite", alpha_new, beta_new, m, shared_after, v, None, None
            )
    raise RuntimeError("no usable witness found for the common-slot step")


# ---------------------------------------------------------------------------
# the obvious splitting form


@dataclass(frozen=True)
class ObviousFormReport:
    search_status: str
    strategy: str
    witness: Optional[tuple]
    symbol_trivial: bool
    consistent: bool
    conclusive: bool


def obvious_form_consistency(s: Symbol, seed: int = 0, trials: int = 2000) -> ObviousFormReport:
    """The diagonal form a_1 t_1^p + ... + a_n t_n^p splits the symbol: any
    found zero must be matched by a trivial class."""
    form = diagonal_power_form(s.field, s.slots, s.p)
    result = _auto_search(form, seed, trials)
    trivial = is_trivial(s)
    consistent = trivial if result.status == "isotropic" else True
    return ObviousFormReport(
        result.status,
        result.strategy,
        result.witness.vector if result.witness else None,
        trivial,
        consistent,
        result.status != "not-found",
    )
