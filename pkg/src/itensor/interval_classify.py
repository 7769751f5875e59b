"""Membership criteria for interval tensor families.

Every criterion here depends only on the two bound tensors, yet decides a
property quantified over the whole (uncountable) box.  The B-family test
comes in four equivalent shapes (theorem, compact, slack, pairwise); the
double-B test evaluates six named endpoint conditions (a, b1, b2, c1, c2,
c3); faster paths exist for families whose members are all Z tensors, for
circulant bounds, and for rows with a dominating off-diagonal position.
Necessary-condition reports and the sufficient hat criterion bracket the
exact tests from both sides, and the dichotomy separates the strict
interval-B case from the unique critical row.

Verdicts carry the full ledger of evaluated conditions so a reported status
can be recomputed from the inputs.  Rows and trailing indices in records
and witnesses are 1-based.
"""

from __future__ import annotations

from dataclasses import dataclass

from .classify import (
    Status,
    Verdict,
    Witness,
    DichotomyAnomaly,
    check_double_b,
    _ge,
    _gt,
)
from .interval import (
    IntervalTensor,
    argmax_upper_offdiag,
    extreme_hat,
    extreme_row_max_except,
    is_interval_z,
    is_symmetric_interval,
)
from .tensor import diag_tail_flat, flat_to_tail, is_circulant, offdiag_tail_flats

__all__ = [
    "ConditionRecord",
    "IntervalVerdict",
    "IntervalDichotomy",
    "NecessaryReport",
    "INTERVAL_B_METHODS",
    "check_interval_b",
    "check_interval_b_zfast",
    "interval_b_necessary",
    "check_interval_double_b",
    "classify_interval_double_b_dichotomy",
    "interval_double_b_necessary",
    "check_interval_double_b_dominance",
    "check_interval_double_b_zfast",
    "check_interval_double_b_hat_sufficient",
    "check_interval_circulant",
    "interval_p_sufficient",
    "interval_verdict_report",
]

INTERVAL_B_METHODS = ("theorem", "compact", "slack", "pairwise")


@dataclass(frozen=True)
class ConditionRecord:
    """One evaluated inequality: id, the row(s) it binds, and both sides."""

    condition: str
    rows: tuple[int, ...]
    lhs: float
    rhs: float
    passed: bool
    tail: tuple[int, ...] | None = None
    pair_tail: tuple[int, ...] | None = None


@dataclass(frozen=True)
class IntervalVerdict:
    status: Status
    method: str
    witness: Witness | None = None
    conditions: tuple[ConditionRecord, ...] = ()

    def holds(self) -> bool:
        return self.status is Status.HOLDS


@dataclass(frozen=True)
class IntervalDichotomy:
    """kind is ``interval_b``, ``critical_row`` or ``not_double_b``; a
    critical row reports its 1-based index and which row condition failed
    (``nonpositive_row_sum`` or ``slack_equality`` with the tail)."""

    kind: str
    critical_row: int | None = None
    failing_mode: str | None = None
    failing_tail: tuple[int, ...] | None = None


@dataclass(frozen=True)
class NecessaryReport:
    """Outcome of a necessary- or finite-member condition sweep."""

    variant: str
    passed: bool
    records: tuple[ConditionRecord, ...] = ()
    member_verdicts: tuple[tuple[str, Verdict], ...] = ()


def _tail1(AI: IntervalTensor, flat: int) -> tuple[int, ...]:
    return tuple(c + 1 for c in flat_to_tail(flat, AI.order, AI.dim))


def _excl_sum(u_val: float, lrow: list[float], od: tuple[int, ...], skip: int) -> float:
    """Sum of (u_val - lower entry) over off-diagonal positions except ``skip``."""
    s = 0.0
    for t in od:
        if t != skip:
            s += u_val - lrow[t]
    return s


class _Rows:
    """Per-row endpoint quantities shared by the interval criteria."""

    def __init__(self, AI: IntervalTensor):
        self.AI = AI
        n = AI.dim
        self.lrow = [AI.lower.row_list(i) for i in range(n)]
        self.urow = [AI.upper.row_list(i) for i in range(n)]
        self.od = [offdiag_tail_flats(AI.lower, i) for i in range(n)]
        self.ldiag = [
            self.lrow[i][diag_tail_flat(i, AI.order, n)] for i in range(n)
        ]
        self.lsum_od = [
            sum(self.lrow[i][t] for t in self.od[i]) for i in range(n)
        ]

    def lrow_total(self, i1: int) -> float:
        return sum(self.lrow[i1])

    def excl(self, i1: int, j: int) -> float:
        """Slack sum of row i1 anchored at j's upper bound, skipping j."""
        return _excl_sum(self.urow[i1][j], self.lrow[i1], self.od[i1], j)

    def max_upper_od(self, i1: int) -> float | None:
        k = argmax_upper_offdiag(self.AI, i1)
        return None if k is None else self.urow[i1][k]


def _verdict(method: str, records: list[ConditionRecord]) -> IntervalVerdict:
    witness = None
    status = Status.HOLDS
    for rec in records:
        if not rec.passed:
            status = Status.FAILS
            witness = Witness(
                rec.rows[0],
                rec.condition,
                rec.lhs,
                rec.rhs,
                rec.tail,
                rec.rows[1] if len(rec.rows) > 1 else None,
                rec.pair_tail,
            )
            break
    return IntervalVerdict(status, method, witness, tuple(records))


def check_interval_b(
    AI: IntervalTensor, method: str = "theorem", tol: float = 0.0
) -> IntervalVerdict:
    """Decide whether every member of the box is a B-tensor.

    theorem: lower row sums positive, and for each off-diagonal position j
    the lower-bound sum over the other positions beats (n**(m-1)-1) times
    j's upper bound.  compact folds both into a single inequality per
    position; slack and pairwise restate it through the diagonal surplus.
    All four methods agree in status on every input.
    """
    if method not in INTERVAL_B_METHODS:
        raise ValueError(f"unknown interval B method {method!r}")
    rows = _Rows(AI)
    n, r = AI.dim, AI.row_len
    recs: list[ConditionRecord] = []

    if method == "theorem":
        for i1 in range(n):
            s = rows.lrow_total(i1)
            recs.append(ConditionRecord("a", (i1 + 1,), s, 0.0, _gt(s, 0.0, tol)))
        for i1 in range(n):
            lrow, urow = rows.lrow[i1], rows.urow[i1]
            for j in rows.od[i1]:
                lhs = 0.0
                for t in range(r):
                    if t != j:
                        lhs += lrow[t]
                rhs = (r - 1) * urow[j]
                recs.append(
                    ConditionRecord(
                        "b", (i1 + 1,), lhs, rhs, _gt(lhs, rhs, tol), _tail1(AI, j)
                    )
                )
    elif method == "compact":
        for i1 in range(n):
            s = rows.lrow_total(i1)
            if not rows.od[i1]:
                recs.append(ConditionRecord("a", (i1 + 1,), s, 0.0, _gt(s, 0.0, tol)))
                continue
            for j in rows.od[i1]:
                rhs = max(0.0, (r - 1) * rows.urow[i1][j] + rows.lrow[i1][j])
                recs.append(
                    ConditionRecord(
                        "b", (i1 + 1,), s, rhs, _gt(s, rhs, tol), _tail1(AI, j)
                    )
                )
    elif method == "slack":
        for i1 in range(n):
            s = rows.lrow_total(i1)
            recs.append(ConditionRecord("a", (i1 + 1,), s, 0.0, _gt(s, 0.0, tol)))
        for i1 in range(n):
            lrow, urow = rows.lrow[i1], rows.urow[i1]
            for j in rows.od[i1]:
                lhs = rows.ldiag[i1] - lrow[j]
                rhs = 0.0
                for t in rows.od[i1]:
                    rhs += urow[j] - lrow[t]
                recs.append(
                    ConditionRecord(
                        "b", (i1 + 1,), lhs, rhs, _gt(lhs, rhs, tol), _tail1(AI, j)
                    )
                )
    else:  # pairwise
        for i1 in range(n):
            s = rows.lrow_total(i1)
            recs.append(ConditionRecord("a", (i1 + 1,), s, 0.0, _gt(s, 0.0, tol)))
        for i1 in range(n):
            for j in rows.od[i1]:
                lhs = rows.ldiag[i1] - rows.urow[i1][j]
                rhs = rows.excl(i1, j)
                recs.append(
                    ConditionRecord(
                        "b", (i1 + 1,), lhs, rhs, _gt(lhs, rhs, tol), _tail1(AI, j)
                    )
                )
    return _verdict(f"interval_b_{method}", recs)


def check_interval_b_zfast(AI: IntervalTensor, tol: float = 0.0) -> IntervalVerdict:
    """Fast B-family test for interval Z tensors: positive lower row sums
    alone decide membership."""
    if not is_interval_z(AI):
        raise ValueError("interval is not an interval Z tensor")
    rows = _Rows(AI)
    recs = []
    for i1 in range(AI.dim):
        s = rows.lrow_total(i1)
        recs.append(ConditionRecord("a", (i1 + 1,), s, 0.0, _gt(s, 0.0, tol)))
    return _verdict("interval_b_zfast", recs)


def interval_b_necessary(AI: IntervalTensor, tol: float = 0.0) -> NecessaryReport:
    """Necessary conditions for the interval B class.

    Per row: the lower diagonal beats the absolute sum of negative lower
    off-diagonal entries (id a); it beats every off-diagonal magnitude from
    either bound (id b); and it beats the largest off-diagonal upper bound
    (id r).  Any failure certifies the family is not interval B.
    """
    rows = _Rows(AI)
    recs: list[ConditionRecord] = []
    for i1 in range(AI.dim):
        lrow = rows.lrow[i1]
        neg = 0.0
        for t in rows.od[i1]:
            if lrow[t] < 0.0:
                neg += -lrow[t]
        recs.append(
            ConditionRecord(
                "a", (i1 + 1,), rows.ldiag[i1], neg, _gt(rows.ldiag[i1], neg, tol)
            )
        )
    for i1 in range(AI.dim):
        for t in rows.od[i1]:
            rhs = max(abs(rows.urow[i1][t]), abs(rows.lrow[i1][t]))
            recs.append(
                ConditionRecord(
                    "b",
                    (i1 + 1,),
                    rows.ldiag[i1],
                    rhs,
                    _gt(rows.ldiag[i1], rhs, tol),
                    _tail1(AI, t),
                )
            )
    for i1 in range(AI.dim):
        m = rows.max_upper_od(i1)
        rhs = max(0.0, m) if m is not None else 0.0
        recs.append(
            ConditionRecord(
                "r", (i1 + 1,), rows.ldiag[i1], rhs, _gt(rows.ldiag[i1], rhs, tol)
            )
        )
    return NecessaryReport(
        "interval_b_necessary", all(rec.passed for rec in recs), tuple(recs)
    )


def check_interval_double_b(AI: IntervalTensor, tol: float = 0.0) -> IntervalVerdict:
    """Decide whether every member of the box is a double B-tensor.

    Six endpoint conditions, evaluated exhaustively and recorded:

    a   per row, the lower diagonal beats max(0, every off-diagonal upper);
    b1  per row and off-diagonal position j, the gap (lower diagonal minus
        j's upper bound) covers max(0, sum over other off-diagonal
        positions of (j's upper bound minus their lower bounds));
    b2  per row, the lower diagonal covers max(0, minus the off-diagonal
        lower-bound sum);
    c1  per row pair and position pair, the product of the b1 left sides
        strictly beats the product of the b1 right sides;
    c2  per ordered row pair and position in the first row, the b1 left
        side times the second row's lower diagonal strictly beats the b1
        right side times that row's b2 right side;
    c3  per row pair, the product of lower diagonals strictly beats the
        product of the b2 right sides.

    The witness is the lexicographically first failure in the order
    a, b1, b2, c1, c2, c3, then rows, then tail offsets.
    """
    rows = _Rows(AI)
    n = AI.dim
    recs: list[ConditionRecord] = []

    for i1 in range(n):
        m = rows.max_upper_od(i1)
        rhs = max(0.0, m) if m is not None else 0.0
        recs.append(
            ConditionRecord(
                "a", (i1 + 1,), rows.ldiag[i1], rhs, _gt(rows.ldiag[i1], rhs, tol)
            )
        )

    # b1 left sides and slack sums are reused by c1/c2 below.
    gap: list[dict[int, float]] = [dict() for _ in range(n)]
    slack: list[dict[int, float]] = [dict() for _ in range(n)]
    for i1 in range(n):
        for j in rows.od[i1]:
            gap[i1][j] = rows.ldiag[i1] - rows.urow[i1][j]
            slack[i1][j] = rows.excl(i1, j)
            rhs = max(0.0, slack[i1][j])
            recs.append(
                ConditionRecord(
                    "b1",
                    (i1 + 1,),
                    gap[i1][j],
                    rhs,
                    _ge(gap[i1][j], rhs, tol),
                    _tail1(AI, j),
                )
            )

    negsum = [max(0.0, -rows.lsum_od[i1]) for i1 in range(n)]
    for i1 in range(n):
        recs.append(
            ConditionRecord(
                "b2",
                (i1 + 1,),
                rows.ldiag[i1],
                negsum[i1],
                _ge(rows.ldiag[i1], negsum[i1], tol),
            )
        )

    for i1 in range(n):
        for j1 in range(i1 + 1, n):
            for ti in rows.od[i1]:
                for tj in rows.od[j1]:
                    lhs = gap[i1][ti] * gap[j1][tj]
                    rhs = max(0.0, slack[i1][ti]) * max(0.0, slack[j1][tj])
                    recs.append(
                        ConditionRecord(
                            "c1",
                            (i1 + 1, j1 + 1),
                            lhs,
                            rhs,
                            _gt(lhs, rhs, tol),
                            _tail1(AI, ti),
                            _tail1(AI, tj),
                        )
                    )

    for i1 in range(n):
        for j1 in range(n):
            if j1 == i1:
                continue
            for ti in rows.od[i1]:
                lhs = gap[i1][ti] * rows.ldiag[j1]
                rhs = max(0.0, slack[i1][ti]) * negsum[j1]
                recs.append(
                    ConditionRecord(
                        "c2",
                        (i1 + 1, j1 + 1),
                        lhs,
                        rhs,
                        _gt(lhs, rhs, tol),
                        _tail1(AI, ti),
                    )
                )

    for i1 in range(n):
        for j1 in range(i1 + 1, n):
            lhs = rows.ldiag[i1] * rows.ldiag[j1]
            rhs = negsum[i1] * negsum[j1]
            recs.append(
                ConditionRecord(
                    "c3", (i1 + 1, j1 + 1), lhs, rhs, _gt(lhs, rhs, tol)
                )
            )
    return _verdict("interval_double_b", recs)


def classify_interval_double_b_dichotomy(
    AI: IntervalTensor, tol: float = 0.0
) -> IntervalDichotomy:
    """Separate interval double B families into the interval-B case and the
    unique-critical-row case.

    The critical row is the single row failing the pairwise-form row
    conditions, either through a nonpositive lower row sum or through slack
    equality at some position; more than one such row raises
    DichotomyAnomaly.
    """
    if not check_interval_double_b(AI, tol=tol).holds():
        return IntervalDichotomy("not_double_b")
    rows = _Rows(AI)
    failing: list[tuple[int, str, int | None]] = []
    for i1 in range(AI.dim):
        s = rows.lrow_total(i1)
        if not _gt(s, 0.0, tol):
            failing.append((i1, "nonpositive_row_sum", None))
            continue
        for j in rows.od[i1]:
            lhs = rows.ldiag[i1] - rows.urow[i1][j]
            if not _gt(lhs, rows.excl(i1, j), tol):
                failing.append((i1, "slack_equality", j))
                break
    if not failing:
        return IntervalDichotomy("interval_b")
    if len(failing) > 1:
        raise DichotomyAnomaly(
            f"critical-row conditions fail in rows {[f[0] + 1 for f in failing]},"
            " expected exactly one",
            [f[0] + 1 for f in failing],
        )
    i1, mode, j = failing[0]
    return IntervalDichotomy(
        "critical_row",
        i1 + 1,
        mode,
        None if j is None else _tail1(AI, j),
    )


def interval_double_b_necessary(
    AI: IntervalTensor, variant: str = "extremes", tol: float = 0.0
) -> NecessaryReport:
    """Necessary conditions for the interval double B class.

    extremes: the lower bound and, for each row index i, the member raising
    every other row's largest-upper off-diagonal position must all be double
    B-tensors.  rowmax: the six endpoint conditions evaluated only at each
    row's argmax position, with the branch chosen by that maximum's sign.
    """
    if variant == "extremes":
        members = [("lower", AI.lower)]
        for i1 in range(AI.dim):
            members.append(
                (f"row_max_except_{i1 + 1}", extreme_row_max_except(AI, i1))
            )
        verdicts = tuple((label, check_double_b(T, tol=tol)) for label, T in members)
        return NecessaryReport(
            "extremes",
            all(v.holds() for _, v in verdicts),
            member_verdicts=verdicts,
        )
    if variant != "rowmax":
        raise ValueError(f"unknown variant {variant!r}")

    rows = _Rows(AI)
    n = AI.dim
    recs: list[ConditionRecord] = []
    arg = [argmax_upper_offdiag(AI, i1) for i1 in range(n)]
    maxu = [None if arg[i1] is None else rows.urow[i1][arg[i1]] for i1 in range(n)]
    # Rows without off-diagonal positions behave like the nonpositive branch.
    positive = [m is not None and m > 0.0 for m in maxu]

    for i1 in range(n):
        rhs = max(0.0, maxu[i1]) if maxu[i1] is not None else 0.0
        recs.append(
            ConditionRecord(
                "a", (i1 + 1,), rows.ldiag[i1], rhs, _gt(rows.ldiag[i1], rhs, tol)
            )
        )
    for i1 in range(n):
        if positive[i1]:
            lhs = rows.ldiag[i1] - maxu[i1]
            rhs = rows.excl(i1, arg[i1])
            recs.append(
                ConditionRecord(
                    "b1",
                    (i1 + 1,),
                    lhs,
                    rhs,
                    _ge(lhs, rhs, tol),
                    _tail1(AI, arg[i1]),
                )
            )
        else:
            rhs = -rows.lsum_od[i1]
            recs.append(
                ConditionRecord(
                    "b2",
                    (i1 + 1,),
                    rows.ldiag[i1],
                    rhs,
                    _ge(rows.ldiag[i1], rhs, tol),
                )
            )
    for i1 in range(n):
        for j1 in range(i1 + 1, n):
            if positive[i1] and positive[j1]:
                lhs = (rows.ldiag[i1] - maxu[i1]) * (rows.ldiag[j1] - maxu[j1])
                rhs = rows.excl(i1, arg[i1]) * rows.excl(j1, arg[j1])
                recs.append(
                    ConditionRecord(
                        "c1",
                        (i1 + 1, j1 + 1),
                        lhs,
                        rhs,
                        _gt(lhs, rhs, tol),
                        _tail1(AI, arg[i1]),
                        _tail1(AI, arg[j1]),
                    )
                )
            elif not positive[i1] and not positive[j1]:
                lhs = rows.ldiag[i1] * rows.ldiag[j1]
                rhs = (-rows.lsum_od[i1]) * (-rows.lsum_od[j1])
                recs.append(
                    ConditionRecord(
                        "c3", (i1 + 1, j1 + 1), lhs, rhs, _gt(lhs, rhs, tol)
                    )
                )
    for i1 in range(n):
        for j1 in range(n):
            if j1 == i1 or not positive[i1] or positive[j1]:
                continue
            lhs = (rows.ldiag[i1] - maxu[i1]) * rows.ldiag[j1]
            rhs = rows.excl(i1, arg[i1]) * (-rows.lsum_od[j1])
            recs.append(
                ConditionRecord(
                    "c2",
                    (i1 + 1, j1 + 1),
                    lhs,
                    rhs,
                    _gt(lhs, rhs, tol),
                    _tail1(AI, arg[i1]),
                )
            )
    return NecessaryReport("rowmax", all(r.passed for r in recs), tuple(recs))


def check_interval_double_b_dominance(
    AI: IntervalTensor, tol: float = 0.0
) -> IntervalVerdict:
    """Exact double-B test under the per-row dominance hypothesis.

    Requires dim >= 3 and, in every row, one off-diagonal position whose
    lower bound is at or above every other off-diagonal upper bound of that
    row.  Under the hypothesis the finite extreme-member conditions are not
    just necessary but sufficient, so the verdict equals the general one;
    otherwise the result is inconclusive, naming the first failing row.
    """
    method = "double_b_dominance"
    if AI.dim < 3:
        return IntervalVerdict(Status.INCONCLUSIVE, method)
    rows = _Rows(AI)
    for i1 in range(AI.dim):
        lrow, urow = rows.lrow[i1], rows.urow[i1]
        found = None
        for k in rows.od[i1]:
            if all(urow[t] <= lrow[k] for t in rows.od[i1] if t != k):
                found = k
                break
        if found is None:
            # Best candidate is the largest lower entry; report the upper
            # bound elsewhere in the row that blocks it.
            best = max(rows.od[i1], key=lambda t: lrow[t])
            block = max(urow[t] for t in rows.od[i1] if t != best)
            return IntervalVerdict(
                Status.INCONCLUSIVE,
                method,
                Witness(i1 + 1, "hypothesis", lrow[best], block, _tail1(AI, best)),
            )
    report = interval_double_b_necessary(AI, "extremes", tol=tol)
    if report.passed:
        return IntervalVerdict(Status.HOLDS, method)
    for _, v in report.member_verdicts:
        if not v.holds():
            return IntervalVerdict(Status.FAILS, method, v.witness)
    raise AssertionError("unreachable: failing report without failing member")


def check_interval_double_b_zfast(
    AI: IntervalTensor, tol: float = 0.0
) -> IntervalVerdict:
    """Fast double-B test for interval Z tensors: the family is interval
    double B exactly when its lower bound tensor is a double B-tensor."""
    if not is_interval_z(AI):
        raise ValueError("interval is not an interval Z tensor")
    v = check_double_b(AI.lower, tol=tol)
    return IntervalVerdict(v.status, "interval_double_b_zfast", v.witness)


def check_interval_double_b_hat_sufficient(
    AI: IntervalTensor, tol: float = 0.0
) -> IntervalVerdict:
    """Sufficient double-B test via the hat rearrangement (never FAILS).

    Requires every row's largest off-diagonal lower bound to be
    nonnegative; then double-B membership of the single hat tensor certifies
    the whole family.  When either part fails the verdict is inconclusive.
    """
    method = "double_b_hat"
    rows = _Rows(AI)
    for i1 in range(AI.dim):
        if not rows.od[i1]:
            continue
        maxl = max(rows.lrow[i1][t] for t in rows.od[i1])
        if not _ge(maxl, 0.0, tol):
            return IntervalVerdict(
                Status.INCONCLUSIVE,
                method,
                Witness(i1 + 1, "hypothesis", maxl, 0.0),
            )
    v = check_double_b(extreme_hat(AI), tol=tol)
    if v.holds():
        return IntervalVerdict(Status.HOLDS, method)
    return IntervalVerdict(Status.INCONCLUSIVE, method, v.witness)


def check_interval_circulant(AI: IntervalTensor, tol: float = 0.0) -> IntervalVerdict:
    """Row-0 criterion for families with circulant bounds.

    For circulant bounds the interval B and interval double B classes
    coincide and are decided by two first-row conditions: a positive lower
    row sum (c1) and the strict pairwise slack inequality at every
    off-diagonal position (c2).
    """
    if not (is_circulant(AI.lower) and is_circulant(AI.upper)):
        raise ValueError("interval bounds are not circulant")
    rows = _Rows(AI)
    recs = [
        ConditionRecord(
            "c1",
            (1,),
            rows.ldiag[0],
            -rows.lsum_od[0],
            _gt(rows.ldiag[0], -rows.lsum_od[0], tol),
        )
    ]
    for j in rows.od[0]:
        lhs = rows.ldiag[0] - rows.urow[0][j]
        rhs = rows.excl(0, j)
        recs.append(
            ConditionRecord("c2", (1,), lhs, rhs, _gt(lhs, rhs, tol), _tail1(AI, j))
        )
    return _verdict("interval_circulant", recs)


def interval_p_sufficient(AI: IntervalTensor, tol: float = 0.0) -> IntervalVerdict:
    """Sufficient conditions for the interval P class (never FAILS).

    Holds for even order when the family is interval B and either interval
    Z or symmetric, or when it is symmetric and interval double B.
    """
    if AI.order % 2 != 0:
        return IntervalVerdict(Status.INCONCLUSIVE, "even_order_required")
    z = is_interval_z(AI)
    sym = is_symmetric_interval(AI)
    if z or sym:
        ib = check_interval_b(AI, tol=tol)
        if z and ib.holds():
            return IntervalVerdict(Status.HOLDS, "interval_z_and_interval_b")
        if sym and ib.holds():
            return IntervalVerdict(Status.HOLDS, "symmetric_and_interval_b")
        if sym and check_interval_double_b(AI, tol=tol).holds():
            return IntervalVerdict(Status.HOLDS, "symmetric_and_interval_double_b")
    return IntervalVerdict(Status.INCONCLUSIVE, "no_sufficient_branch")


def interval_verdict_report(v: IntervalVerdict, class_id: str) -> dict:
    """Serializable report form, including the condition ledger."""
    out = {"class": class_id, "method": v.method, "status": v.status.value}
    if v.witness is not None:
        w = v.witness
        wd = {"row": w.row, "condition": w.condition, "lhs": w.lhs, "rhs": w.rhs}
        if w.tail is not None:
            wd["index"] = list(w.tail)
        if w.pair_row is not None:
            wd["pair_row"] = w.pair_row
        if w.pair_tail is not None:
            wd["pair_index"] = list(w.pair_tail)
        out["witness"] = wd
    if v.conditions:
        out["conditions"] = [
            {
                "id": rec.condition,
                "rows": list(rec.rows),
                "lhs": rec.lhs,
                "rhs": rec.rhs,
                "passed": rec.passed,
                **({"tail": list(rec.tail)} if rec.tail is not None else {}),
                **(
                    {"pair_tail": list(rec.pair_tail)}
                    if rec.pair_tail is not None
                    else {}
                ),
            }
            for rec in v.conditions
        ]
    return out
