"""Grid verification: every formula checked against every independent route."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .exact import LambdaPoly, factorial, binomial, poly_eval_exact
from .moments import (
    closed_form_powers,
    coeff_closed_form,
    factorial_moment_poly,
    kappa_table,
    lowest_degree,
    mean,
    order2_moment_poly,
    variance,
    variance_identity_poly,
)
from .oracles import charalambides_moment_poly, fmgf_moment_poly
from .partitions import count_weighted, enumerate_weighted


@dataclass
class CellResult:
    k: int
    n: int
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


@dataclass
class VerifyReport:
    k_max: int
    n_max: int
    cells: list[CellResult]
    checks: int

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.cells)

    def first_failure(self) -> Optional[CellResult]:
        return next((c for c in self.cells if not c.passed), None)


def _cmp(label: str, got, want, failures: list[str]) -> int:
    if got != want:
        failures.append(f"{label}: {got} != {want}")
    return 1


def verify_cell(
    k: int,
    n: int,
    *,
    kappas: Optional[Sequence[int]] = None,
    lambdas: Sequence[Fraction] = (),
) -> tuple[CellResult, int]:
    """Run every per-(k, n) check; returns the result and how many checks ran."""
    cell = CellResult(k, n)
    f = cell.failures
    checks = 0
    engine = factorial_moment_poly(n, k, kappas=kappas)
    fmgf = fmgf_moment_poly(n, k)
    char = charalambides_moment_poly(n, k)
    checks += _cmp("engine vs fmgf", engine, fmgf, f)
    checks += _cmp("engine vs charalambides", engine, char, f)

    vecs = list(enumerate_weighted(n, k))
    checks += _cmp("partition count", len(vecs), count_weighted(n, k), f)
    checks += _cmp("distinct partitions", len(set(vecs)), len(vecs), f)
    checks += _cmp("weight constraint", all(v.is_consistent() for v in vecs), True, f)

    if n == 0:
        checks += _cmp("M_0", engine, LambdaPoly([1]), f)
    else:
        k1 = kappa_table(k)[0]
        checks += _cmp("degree", engine.degree, n, f)
        checks += _cmp("leading coefficient", engine[n], k1**n, f)
        checks += _cmp("constant term", engine[0], 0, f)
        checks += _cmp("lowest power", engine.lowest_power(), lowest_degree(n, k), f)
        checks += _cmp("linear coefficient", engine[1], factorial(n) * binomial(k + 1, n + 1), f)
        checks += _cmp("nonnegative", all(c >= 0 for c in engine), True, f)
        for p in closed_form_powers(n, k):
            checks += _cmp(f"closed form lam^{p}", engine[p], coeff_closed_form(n, k, p), f)
    if k == 1:
        checks += _cmp("k=1 collapse", engine, LambdaPoly.monomial(n), f)
    if k == 2:
        checks += _cmp("k=2 closed form", engine, order2_moment_poly(n), f)
    for lam in lambdas:
        checks += _cmp(
            f"evaluation at {lam}", poly_eval_exact(engine, lam), poly_eval_exact(char, lam), f
        )
    return cell, checks


def verify_order(k: int, lambdas: Sequence[Fraction] = ()) -> tuple[list[str], int]:
    """Per-k identities: mean/variance against M_1, M_2."""
    failures: list[str] = []
    checks = 0
    var_coeff = Fraction(k * (k + 1) * (2 * k + 1), 6)
    checks += _cmp("variance identity", variance_identity_poly(k), LambdaPoly([0, var_coeff]), failures)
    checks += _cmp("mean identity", factorial_moment_poly(1, k), LambdaPoly([0, Fraction(k * (k + 1), 2)]), failures)
    for lam in lambdas:
        checks += _cmp(f"mean at {lam}", mean(k, lam), poly_eval_exact(factorial_moment_poly(1, k), lam), failures)
        checks += _cmp(f"variance at {lam}", variance(k, lam), poly_eval_exact(variance_identity_poly(k), lam), failures)
    return failures, checks


def random_lambdas(seed: Optional[int], count: int = 3) -> list[Fraction]:
    if seed is None:
        return []
    rng = random.Random(seed)
    return [Fraction(rng.randint(0, 50), rng.randint(1, 12)) for _ in range(count)]


def run_verification(
    k_max: int,
    n_max: int,
    seed: Optional[int] = None,
    *,
    kappa_fault: Optional[int] = None,
) -> VerifyReport:
    """Check the whole grid 1 <= k <= k_max, 0 <= n <= n_max in (k, n) order.

    ``kappa_fault=j`` adds one to kappa_j in the main engine's table (fault
    injection for exercising the failure path).
    """
    if k_max < 1:
        raise ValueError(f"k_max must be >= 1, got {k_max}")
    if n_max < 0:
        raise ValueError(f"n_max must be >= 0, got {n_max}")
    lambdas = random_lambdas(seed)
    cells: list[CellResult] = []
    total = 0
    for k in range(1, k_max + 1):
        kappas = None
        if kappa_fault is not None:
            table = list(kappa_table(k))
            if 1 <= kappa_fault <= k:
                table[kappa_fault - 1] += 1
            kappas = table
        order_failures, c = verify_order(k, lambdas)
        total += c
        for n in range(n_max + 1):
            cell, c = verify_cell(k, n, kappas=kappas, lambdas=lambdas)
            if n == 0:
                cell.failures[:0] = order_failures
            cells.append(cell)
            total += c
    return VerifyReport(k_max, n_max, cells, total)
