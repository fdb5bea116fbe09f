"""Stirling triangles of arbitrary order and higher-order Bell numbers.

The order-m triangle holds, at position (n, k), the number of k-sets in
the m-fold iterated partition set of an n-set.  Order 1 is the classical
Stirling triangle of the second kind; higher orders arise either by the
convolution recurrence or as entries of the m-th power of the Stirling
matrix.  Row sums give the order-m Bell numbers.

All arithmetic is exact; triangles are immutable and memoized per
(n_max, order) within a process, so repeated identity sweeps reuse them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .exact import binomial, compositions, factorial, multinomial

__all__ = [
    "Triangle",
    "BellTable",
    "Fault",
    "CellCheck",
    "IdentityReport",
    "FiniteDifferenceReport",
    "STIRLING_METHODS",
    "BELL_METHODS",
    "IDENTITIES",
    "stirling2_triangle",
    "identity_triangle",
    "higher_stirling",
    "bell",
    "bell_table",
    "verify_identity",
    "finite_difference_check",
    "average_cardinality",
]

STIRLING_METHODS = ("recurrence", "matrix-power")
BELL_METHODS = (
    "row-sum",
    "triangle-recurrence",
    "fixed-element",
    "intermediate-stage",
    "egf",
)
IDENTITIES = ("eq5", "eq6", "eq8", "eq9", "eq10", "eq11", "eq12", "matrix-split")


@dataclass(frozen=True)
class Triangle:
    """Lower-triangular integer table indexed by (n, k), 1 <= k <= n <= n_max.

    ``order`` is the iteration depth m; order 0 is the identity matrix
    convention (entry 1 exactly when n == k).
    """

    order: int
    n_max: int
    rows: tuple[tuple[int, ...], ...]

    def entry(self, n: int, k: int) -> int:
        """Entry at (n, k) with the boundary conventions built in.

        (0, 0) -> 1, (n, 0) -> 0 for n >= 1, and anything above the
        diagonal is 0.
        """
        if n == 0:
            return 1 if k == 0 else 0
        if k <= 0 or k > n:
            return 0
        if n > self.n_max:
            raise ValueError(f"row {n} beyond n_max={self.n_max}")
        return self.rows[n - 1][k - 1]

    def row(self, n: int) -> tuple[int, ...]:
        if not 1 <= n <= self.n_max:
            raise ValueError(f"row {n} outside 1..{self.n_max}")
        return self.rows[n - 1]

    def row_sum(self, n: int) -> int:
        return sum(self.row(n))

    def weighted_row_sum(self, n: int) -> int:
        """Sum of k * entry(n, k) over the row: total outer cardinality."""
        return sum(k * v for k, v in enumerate(self.row(n), start=1))

    def multiply(self, other: "Triangle") -> "Triangle":
        """Lower-triangular matrix product; orders add."""
        if self.n_max != other.n_max:
            raise ValueError("triangle sizes differ")
        rows = tuple(
            tuple(
                sum(self.entry(n, i) * other.entry(i, k) for i in range(k, n + 1))
                for k in range(1, n + 1)
            )
            for n in range(1, self.n_max + 1)
        )
        return Triangle(self.order + other.order, self.n_max, rows)

    def with_entry(self, n: int, k: int, value: int) -> "Triangle":
        """Copy with one entry replaced (fault-injection test hook)."""
        if not 1 <= k <= n <= self.n_max:
            raise ValueError(f"({n}, {k}) outside the triangle")
        rows = list(list(r) for r in self.rows)
        rows[n - 1][k - 1] = value
        return Triangle(self.order, self.n_max, tuple(tuple(r) for r in rows))

    def __str__(self) -> str:
        return "\n".join(" ".join(str(v) for v in row) for row in self.rows)


@dataclass(frozen=True)
class BellTable:
    """Higher-order Bell numbers of one order m, for n = 0 .. n_max."""

    m: int
    values: tuple[int, ...]

    @property
    def n_max(self) -> int:
        return len(self.values) - 1

    def value(self, n: int) -> int:
        return self.values[n]


@lru_cache(maxsize=None)
def stirling2_triangle(n_max: int) -> Triangle:
    """Stirling numbers of the second kind, S(n, k), as an order-1 triangle.

    Built by the textbook recurrence S(n, k) = k*S(n-1, k) + S(n-1, k-1).
    """
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    rows: list[tuple[int, ...]] = [(1,)]
    for n in range(2, n_max + 1):
        prev = rows[-1]

        def at(k: int) -> int:
            return prev[k - 1] if 1 <= k <= n - 1 else 0

        rows.append(tuple(k * at(k) + at(k - 1) if k > 1 else 1 for k in range(1, n + 1)))
    return Triangle(1, n_max, tuple(rows))


@lru_cache(maxsize=None)
def identity_triangle(n_max: int) -> Triangle:
    """The order-0 convention: entry(n, k) = 1 exactly when n == k."""
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    rows = tuple((0,) * (n - 1) + (1,) for n in range(1, n_max + 1))
    return Triangle(0, n_max, rows)


def higher_stirling(
    n_max: int, m: int, method: str = "recurrence", binary: bool = False
) -> Triangle:
    """Order-m Stirling triangle up to n_max, by either of two routes.

    ``recurrence`` iterates the convolution
    T_{j+1}(n, k) = sum_i T_j(i, k) * S(n, i) starting from the Stirling
    triangle; ``matrix-power`` raises the Stirling matrix to the m-th
    power (iterated multiplication, or square-and-multiply when
    ``binary`` is set).  Both produce identical triangles.
    """
    if n_max < 1 or m < 1:
        raise ValueError(f"higher_stirling requires n_max >= 1 and m >= 1, got ({n_max}, {m})")
    if method not in STIRLING_METHODS:
        raise ValueError(f"unknown method {method!r}; expected one of {STIRLING_METHODS}")
    return _higher_stirling(n_max, m, method, binary)


@lru_cache(maxsize=None)
def _higher_stirling(n_max: int, m: int, method: str, binary: bool) -> Triangle:
    base = stirling2_triangle(n_max)
    if method == "recurrence":
        current = base
        for _ in range(m - 1):
            rows = tuple(
                tuple(
                    sum(current.entry(i, k) * base.entry(n, i) for i in range(k, n + 1))
                    for k in range(1, n + 1)
                )
                for n in range(1, n_max + 1)
            )
            current = Triangle(current.order + 1, n_max, rows)
        return current
    if binary:
        result = identity_triangle(n_max)
        power = base
        e = m
        while e:
            if e & 1:
                result = result.multiply(power)
            e >>= 1
            if e:
                power = power.multiply(power)
        return Triangle(m, n_max, result.rows)
    current = base
    for _ in range(m - 1):
        current = current.multiply(base)
    return current


@lru_cache(maxsize=None)
def _bell_values(m: int, n_max: int) -> tuple[int, ...]:
    # B(n, m) for n = 0..n_max via the Stirling convolution in m;
    # order 0 is the all-ones convention.
    if m == 0:
        return (1,) * (n_max + 1)
    prev = _bell_values(m - 1, n_max)
    s = stirling2_triangle(max(n_max, 1))
    return (1,) + tuple(
        sum(prev[k] * s.entry(n, k) for k in range(1, n + 1)) for n in range(1, n_max + 1)
    )


def bell_table(m: int, n_max: int) -> BellTable:
    """Order-m Bell numbers for n = 0..n_max, via the triangle recurrence."""
    if m < 0 or n_max < 0:
        raise ValueError(f"bell_table requires m >= 0 and n_max >= 0, got ({m}, {n_max})")
    return BellTable(m, _bell_values(m, n_max))


@lru_cache(maxsize=None)
def _bell_fixed_element(n: int, m: int) -> int:
    # Count by the elements related to one fixed atom: choose its
    # (n-s)-set of relatives, an inner structure one order down for it,
    # and a full-order structure on the complement.
    if n == 0 or m == 0:
        return 1
    return sum(
        binomial(n - 1, s) * _bell_fixed_element(s, m) * _bell_fixed_element(n - s, m - 1)
        for s in range(n)
    )


def bell(n: int, m: int, method: str = "triangle-recurrence") -> int:
    """The order-m Bell number of an n-set, by any of five routes.

    All methods agree; ``method`` selects the computation path.  Order 0
    and n = 0 both return 1 by convention.
    """
    if n < 0 or m < 0:
        raise ValueError(f"bell requires n >= 0 and m >= 0, got ({n}, {m})")
    if method not in BELL_METHODS:
        raise ValueError(f"unknown method {method!r}; expected one of {BELL_METHODS}")
    if n == 0 or m == 0:
        return 1
    if method == "row-sum":
        return higher_stirling(n, m).row_sum(n)
    if method == "triangle-recurrence":
        return _bell_values(m, n)[n]
    if method == "fixed-element":
        return _bell_fixed_element(n, m)
    if method == "intermediate-stage":
        # split the iteration at stage r: structures of order m-r on the
        # i-sets present after r rounds
        r = max(1, m // 2)
        stage = higher_stirling(n, r)
        prev = _bell_values(m - r, n)
        return sum(prev[i] * stage.entry(n, i) for i in range(1, n + 1))
    from . import egf

    return egf.bell_from_egf(n, m)


@dataclass(frozen=True)
class FiniteDifferenceReport:
    """Result of testing that n -> Bell(n, m) is polynomial in m.

    ``differences`` holds the (n-1)-th forward differences of the Bell
    sequence over m = 1..m_count; a degree-(n-1) polynomial makes them
    constant, and the leading coefficient forces the constant to equal
    ``predicted`` = (n-1)! * n! / 2^(n-1).
    """

    n: int
    differences: tuple[int, ...]
    constant: bool
    predicted: int

    @property
    def ok(self) -> bool:
        return self.constant and all(d == self.predicted for d in self.differences)


def finite_difference_check(n: int, m_count: int | None = None) -> FiniteDifferenceReport:
    """Take (n-1)-th forward differences of m -> Bell(n, m) over m = 1..m_count."""
    if n < 2:
        raise ValueError(f"finite_difference_check requires n >= 2, got {n}")
    if m_count is None:
        m_count = n + 2
    if m_count < n + 1:
        raise ValueError(f"need m_count >= {n + 1} to see two values of the difference")
    seq = [bell(n, m) for m in range(1, m_count + 1)]
    for _ in range(n - 1):
        seq = [b - a for a, b in zip(seq, seq[1:])]
    numerator = factorial(n - 1) * factorial(n)
    denominator = 2 ** (n - 1)
    if numerator % denominator:
        raise ArithmeticError(f"leading-term prediction for n={n} is not an integer")
    return FiniteDifferenceReport(
        n=n,
        differences=tuple(seq),
        constant=len(set(seq)) == 1,
        predicted=numerator // denominator,
    )


def average_cardinality(n: int, m: int) -> Fraction:
    """Mean number of outer boxes over the order-m partition set of an n-set."""
    if n < 1 or m < 1:
        raise ValueError(f"average_cardinality requires n >= 1 and m >= 1, got ({n}, {m})")
    tri = higher_stirling(n, m)
    return Fraction(tri.weighted_row_sum(n), tri.row_sum(n))


@dataclass(frozen=True)
class Fault:
    """Test hook: perturb one triangle entry during verification reads."""

    order: int
    n: int
    k: int
    delta: int = 1


@dataclass(frozen=True)
class CellCheck:
    """One verified cell: an identity instantiated at specific indices."""

    identity: str
    params: tuple[tuple[str, int], ...]
    ok: bool
    lhs: object = None  # exact values recorded on failure
    rhs: object = None

    def describe(self) -> str:
        where = ", ".join(f"{k}={v}" for k, v in self.params)
        if self.ok:
            return f"{self.identity}[{where}]: pass"
        return f"{self.identity}[{where}]: FAIL lhs={self.lhs} rhs={self.rhs}"


@dataclass
class IdentityReport:
    """Aggregate outcome of an identity sweep."""

    checks: list[CellCheck] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.checks)

    @property
    def failures(self) -> list[CellCheck]:
        return [c for c in self.checks if not c.ok]

    def extend(self, other: "IdentityReport") -> None:
        self.checks.extend(other.checks)

    def summary(self) -> str:
        return f"{len(self.checks)} cells checked, {len(self.failures)} failed"


class _Tables:
    """Entry access with boundary conventions and optional fault applied."""

    def __init__(self, n_max: int, fault: Fault | None = None):
        self.n_max = n_max
        self.fault = fault

    def triangle(self, m: int) -> Triangle:
        tri = identity_triangle(self.n_max) if m == 0 else higher_stirling(self.n_max, m)
        f = self.fault
        if f is not None and f.order == m and 1 <= f.k <= f.n <= self.n_max:
            tri = tri.with_entry(f.n, f.k, tri.entry(f.n, f.k) + f.delta)
        return tri

    def s(self, m: int, n: int, k: int) -> int:
        if n == 0 or k == 0:
            return 1 if n == 0 and k == 0 else 0
        if k > n:
            return 0
        if m == 0:
            return 1 if n == k else 0
        value = higher_stirling(self.n_max, m).entry(n, k)
        f = self.fault
        if f is not None and (f.order, f.n, f.k) == (m, n, k):
            value += f.delta
        return value

    @staticmethod
    def b(n: int, m: int) -> int:
        return bell(n, m)


def _cells_eq5(t: _Tables, n_max, m_max):
    # Bell from the previous order through the Stirling convolution.
    for m in range(1, m_max + 1):
        for n in range(1, n_max + 1):
            lhs = t.b(n, m)
            rhs = sum(t.b(k, m - 1) * t.s(1, n, k) for k in range(1, n + 1))
            yield "eq5", (("n", n), ("m", m)), lhs, rhs


def _cells_eq6(t: _Tables, n_max, m_max):
    # Fix one atom and split by its set of related atoms.
    for m in range(1, m_max + 1):
        for n in range(1, n_max + 1):
            lhs = t.b(n, m)
            rhs = sum(
                binomial(n - 1, s) * t.b(s, m) * t.b(n - s, m - 1) for s in range(n)
            )
            yield "eq6", (("n", n), ("m", m)), lhs, rhs


def _cells_eq8(t: _Tables, n_max, m_max):
    # Stirling analogue of the fixed-atom split, one outer box at a time.
    for m in range(1, m_max + 1):
        for n in range(1, n_max + 1):
            for k in range(1, n + 1):
                lhs = t.s(m, n, k)
                rhs = sum(
                    binomial(n - 1, s) * t.b(n - s, m - 1) * t.s(m, s, k - 1)
                    for s in range(k - 1, n)
                )
                yield "eq8", (("n", n), ("m", m), ("k", k)), lhs, rhs


def _cells_eq9(t: _Tables, n_max, m_max, r_values):
    # Stop after r rounds, group by cardinality, then continue.
    for m in range(1, m_max + 1):
        for r in r_values if r_values is not None else range(m + 1):
            if r > m:
                continue
            for n in range(1, n_max + 1):
                for k in range(1, n + 1):
                    lhs = t.s(m, n, k)
                    rhs = sum(t.s(m - r, i, k) * t.s(r, n, i) for i in range(k, n + 1))
                    yield "eq9", (("n", n), ("m", m), ("k", k), ("r", r)), lhs, rhs


def _cells_eq10(t: _Tables, n_max, m_max, r_values):
    # Bell version of the intermediate-stage split.
    for m in range(1, m_max + 1):
        for r in r_values if r_values is not None else range(m + 1):
            if r > m:
                continue
            for n in range(1, n_max + 1):
                lhs = t.b(n, m)
                rhs = sum(t.b(i, m - r) * t.s(r, n, i) for i in range(1, n + 1))
                yield "eq10", (("n", n), ("m", m), ("r", r)), lhs, rhs


def _inner_family_sum(t: _Tables, n: int, k: int, m: int) -> int:
    # Sum over ordered splits of the atoms into k nonempty families of
    # the multinomial times one lower-order structure count per family.
    total = 0
    for parts in compositions(n, k):
        term = multinomial(n, parts)
        for p in parts:
            term *= t.b(p, m - 1)
        total += term
    return total


def _cells_eq11(t: _Tables, n_max, m_max):
    # Count k-sets by forming the k outer families first.  Summing over
    # positive compositions realizes the local convention that an empty
    # family contributes nothing.
    for m in range(1, m_max + 1):
        for n in range(1, n_max + 1):
            for k in range(1, n + 1):
                lhs = t.s(m, n, k)
                rhs = Fraction(_inner_family_sum(t, n, k, m), factorial(k))
                yield "eq11", (("n", n), ("m", m), ("k", k)), lhs, rhs


def _cells_eq12(t: _Tables, n_max, m_max):
    for m in range(1, m_max + 1):
        for n in range(1, n_max + 1):
            lhs = t.b(n, m)
            rhs = sum(
                Fraction(_inner_family_sum(t, n, k, m), factorial(k))
                for k in range(1, n + 1)
            )
            yield "eq12", (("n", n), ("m", m)), lhs, rhs


def _cells_matrix_split(t: _Tables, n_max, m_max, r_values):
    # The order-m triangle factors through any intermediate stage.
    for m in range(1, m_max + 1):
        whole = t.triangle(m)
        for r in r_values if r_values is not None else range(m + 1):
            if r > m:
                continue
            product = t.triangle(m - r).multiply(t.triangle(r))
            mismatch = None
            for n in range(1, n_max + 1):
                for k in range(1, n + 1):
                    if whole.entry(n, k) != product.entry(n, k):
                        mismatch = (n, k)
                        break
                if mismatch:
                    break
            if mismatch is None:
                yield "matrix-split", (("m", m), ("r", r)), 0, 0
            else:
                n, k = mismatch
                yield (
                    "matrix-split",
                    (("m", m), ("r", r), ("n", n), ("k", k)),
                    whole.entry(n, k),
                    product.entry(n, k),
                )


def verify_identity(
    identity: str,
    n_max: int,
    m_max: int,
    r: int | None = None,
    fault: Fault | None = None,
) -> IdentityReport:
    """Check one closed-form identity on every cell in the given ranges.

    ``r`` restricts the split parameter of eq9/eq10/matrix-split to a
    single value; by default every 0 <= r <= m is swept.  A ``fault``
    perturbs one triangle entry as seen by the checks, which the report
    must then flag.
    """
    if identity not in IDENTITIES:
        raise ValueError(f"unknown identity {identity!r}; expected one of {IDENTITIES}")
    if n_max < 1 or m_max < 1:
        raise ValueError(f"ranges must be >= 1, got n_max={n_max}, m_max={m_max}")
    if r is not None and not 0 <= r <= m_max:
        raise ValueError(f"split parameter r={r} outside 0..{m_max}")
    t = _Tables(n_max, fault)
    r_values = None if r is None else (r,)
    if identity == "eq5":
        cells = _cells_eq5(t, n_max, m_max)
    elif identity == "eq6":
        cells = _cells_eq6(t, n_max, m_max)
    elif identity == "eq8":
        cells = _cells_eq8(t, n_max, m_max)
    elif identity == "eq9":
        cells = _cells_eq9(t, n_max, m_max, r_values)
    elif identity == "eq10":
        cells = _cells_eq10(t, n_max, m_max, r_values)
    elif identity == "eq11":
        cells = _cells_eq11(t, n_max, m_max)
    elif identity == "eq12":
        cells = _cells_eq12(t, n_max, m_max)
    else:
        cells = _cells_matrix_split(t, n_max, m_max, r_values)
    report = IdentityReport()
    for name, params, lhs, rhs in cells:
        ok = lhs == rhs
        report.checks.append(
            CellCheck(name, params, ok, None if ok else lhs, None if ok else rhs)
        )
    return report
