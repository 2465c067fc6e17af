"""Explicit cd_p bounds for C_n fields and the splitting-form dimension
ledger behind them.

All threshold decisions are exact integer power comparisons; the ceiling
expressions are emitted as documentation strings only, never used to decide
(log2(3) is irrational, so float rounding at the boundary would be wrong
exactly where it matters).
"""

from __future__ import annotations

from dataclasses import dataclass

from .fields import is_prime


@dataclass(frozen=True)
class SplittingLedger:
    p: int
    n: int
    route: str  # "symbol" | "albert"
    m: int
    base_dim: int
    extra_slots: int
    total_dim: int
    threshold: int
    sufficient: bool


def ledger(p: int, n: int, route: str, m: int) -> SplittingLedger:
    """Dimension bookkeeping for the degree-p splitting form at level m:
    base_dim * 2^extra_slots against the C_n threshold p^n."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if n < 0:
        raise ValueError("n must be >= 0")
    if route == "albert":
        if p != 3:
            raise ValueError("the albert route requires p = 3")
        if m < 3:
            raise ValueError("the albert route requires m >= 3")
        base, extra = 27, m - 3
    elif route == "symbol":
        if m < 2:
            raise ValueError("the symbol route requires m >= 2")
        base, extra = p * p, m - 2
    else:
        raise ValueError(f"unknown route {route!r}")
    total = base * 2**extra
    threshold = p**n
    return SplittingLedger(p, n, route, m, base, extra, total, threshold, total > threshold)


def cd_bound(p: int, n: int) -> int:
    """Upper bound for cd_p of a C_n field.

    p = 2: n.  p = 3: n for n <= 4, otherwise the least m whose albert-route
    ledger is sufficient (the ceil((n-3)log2(3) + 3) expression).  p >= 5:
    n for n <= 2, otherwise the least m whose symbol-route ledger is
    sufficient (ceil((n-2)log2(p) + 1)).
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if n < 0:
        raise ValueError("n must be >= 0")
    if p == 2:
        return n
    if p == 3:
        if n <= 4:
            return n
        return least_sufficient_level(3, n, "albert")
    if n <= 2:
        return n
    return least_sufficient_level(p, n, "symbol")


def least_sufficient_level(p: int, n: int, route: str) -> int:
    m = 3 if route == "albert" else 2
    while not ledger(p, n, route, m).sufficient:
        m += 1
    return m


def formula_text(p: int, n: int) -> str:
    if p == 2:
        return "n"
    if p == 3:
        return "n" if n <= 4 else "ceil((n-3)*log2(3) + 3)"
    return "n" if n <= 2 else f"ceil((n-2)*log2({p}) + 1)"


def bound_table(p: int, n_max: int) -> list[dict]:
    """Rows (n, cd bound, ledger trace) for n = 0..n_max."""
    rows = []
    for n in range(n_max + 1):
        bound = cd_bound(p, n)
        row = {"n": n, "cd_bound": bound, "formula": formula_text(p, n)}
        if p == 3 and n >= 5:
            row["ledger"] = ledger(3, n, "albert", bound)
        elif p >= 5 and n >= 3:
            row["ledger"] = ledger(p, n, "symbol", bound)
        else:
            row["ledger"] = None
        rows.append(row)
    return rows
