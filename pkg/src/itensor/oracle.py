"""Independent ground truth and cross-validation for the interval criteria.

The oracle decides interval membership by checking every vertex of the box
(members whose entries all sit at a bound).  This is exact:

* For the B class, each defining inequality of a member is affine in every
  entry, so its minimum over the box is attained at a vertex.  If every
  vertex satisfies every inequality, every member does.
* For the double B class, the endpoint criteria that decide the family are
  read off finitely many members that raise one or two entries of the lower
  bound; all of those are vertices.  If every vertex is double B, those
  members are, the endpoint conditions follow, and the endpoint conditions
  bound every member of the box.  A belt of random interior members is
  checked as well, guarding the implementation rather than the argument.

The cross-validation suite generates seeded random families (optionally Z,
circulant, or symmetric structured, plus exactly manufactured critical-row
families), replays every classifier invariant against the oracle and
against each other, and logs each disagreement with a serialized instance.

Generated entry values are snapped to a 1/16 grid so that every sum and
product appearing in the criteria is computed exactly in double precision;
manufactured boundary instances rely on this to hit slack equalities
bit-exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .classify import (
    B_METHODS,
    Status,
    Witness,
    check_b,
    check_double_b,
    classify_double_b_dichotomy,
)
from .interval import (
    DEFAULT_VERTEX_LIMIT,
    IntervalTensor,
    interval_to_json,
    is_interval_z,
    make_interval,
    reduce_via_K,
    vertex_iter,
)
from .interval_classify import (
    INTERVAL_B_METHODS,
    check_interval_b,
    check_interval_b_zfast,
    check_interval_circulant,
    check_interval_double_b,
    check_interval_double_b_dominance,
    check_interval_double_b_hat_sufficient,
    check_interval_double_b_zfast,
    classify_interval_double_b_dichotomy,
    interval_b_necessary,
    interval_double_b_necessary,
)
from .tensor import (
    Tensor,
    circulant_from_first_row,
    diag_tail_flat,
    is_circulant,
    make_tensor,
    row_mix,
    tail_to_flat,
)

__all__ = [
    "GeneratorSpec",
    "OracleVerdict",
    "SuiteReport",
    "oracle_interval_b",
    "oracle_interval_double_b",
    "random_interval_tensor",
    "random_member",
    "boundary_interval",
    "critical_row_tensor",
    "equivalence_suite",
]

GRID = 16.0  # entry values are multiples of 1/GRID, keeping criteria exact

STRUCTURES = ("general", "z", "circulant", "symmetric")


@dataclass(frozen=True)
class GeneratorSpec:
    """Recipe for one random interval instance; deterministic in ``seed``."""

    order: int
    dim: int
    diag_range: tuple[float, float] = (1.0, 8.0)
    offdiag_range: tuple[float, float] = (-2.0, 2.0)
    radius_scale: float = 0.5
    structure: str = "general"
    seed: int = 0

    def __post_init__(self):
        if self.diag_range[0] > self.diag_range[1]:
            raise ValueError("empty diag_range")
        if self.offdiag_range[0] > self.offdiag_range[1]:
            raise ValueError("empty offdiag_range")
        if self.radius_scale < 0:
            raise ValueError("radius_scale must be >= 0")
        if self.structure not in STRUCTURES:
            raise ValueError(f"unknown structure {self.structure!r}")


@dataclass(frozen=True)
class OracleVerdict:
    """Vertex-exhaustive verdict, carrying the failing member when any."""

    status: Status
    method: str
    witness: Witness | None = None
    failing_tensor: Tensor | None = None
    vertices_checked: int = 0

    def holds(self) -> bool:
        return self.status is Status.HOLDS


def oracle_interval_b(
    AI: IntervalTensor, limit: int = DEFAULT_VERTEX_LIMIT, tol: float = 0.0
) -> OracleVerdict:
    """Interval B membership by checking the B criterion at every vertex."""
    checked = 0
    for T in vertex_iter(AI, limit):
        checked += 1
        v = check_b(T, "definition", tol=tol)
        if not v.holds():
            return OracleVerdict(Status.FAILS, "vertex_b", v.witness, T, checked)
    return OracleVerdict(Status.HOLDS, "vertex_b", vertices_checked=checked)


def oracle_interval_double_b(
    AI: IntervalTensor,
    limit: int = DEFAULT_VERTEX_LIMIT,
    tol: float = 0.0,
    interior_members: int = 64,
    member_seed: int = 0,
) -> OracleVerdict:
    """Interval double B membership by vertex exhaustion plus a belt of
    random interior members."""
    checked = 0
    for T in vertex_iter(AI, limit):
        checked += 1
        v = check_double_b(T, tol=tol)
        if not v.holds():
            return OracleVerdict(
                Status.FAILS, "vertex_double_b", v.witness, T, checked
            )
    for k in range(interior_members):
        T = random_member(AI, seed=member_seed * 1_000_003 + k)
        v = check_double_b(T, tol=tol)
        if not v.holds():
            return OracleVerdict(
                Status.FAILS, "interior_double_b", v.witness, T, checked
            )
    return OracleVerdict(Status.HOLDS, "vertex_double_b", vertices_checked=checked)


def _snap(arr: np.ndarray) -> np.ndarray:
    return np.round(arr * GRID) / GRID


def random_interval_tensor(spec: GeneratorSpec) -> IntervalTensor:
    """Seeded random interval with entries on the exact value grid.

    Structure ``z`` clamps off-diagonal uppers to zero, ``circulant``
    rotates a generated first row into both bounds, and ``symmetric``
    averages midpoint and radius over index-permutation orbits.
    """
    rng = np.random.default_rng(spec.seed)
    m, n = spec.order, spec.dim
    size = n**m
    r = n ** (m - 1)

    if spec.structure == "circulant":
        row_lo = _snap(rng.uniform(*spec.offdiag_range, size=r))
        row_lo[diag_tail_flat(0, m, n)] = _snap(
            np.asarray(rng.uniform(*spec.diag_range))
        )
        spread = _snap(rng.uniform(0.0, 2.0 * spec.radius_scale, size=r))
        lower = circulant_from_first_row(row_lo, m, n)
        upper = circulant_from_first_row(row_lo + spread, m, n)
        return make_interval(lower, upper)

    mid = _snap(rng.uniform(*spec.offdiag_range, size=size))
    diag_vals = _snap(rng.uniform(*spec.diag_range, size=n))
    for i in range(n):
        mid[i * r + diag_tail_flat(i, m, n)] = diag_vals[i]
    rad = _snap(rng.uniform(0.0, spec.radius_scale, size=size))

    if spec.structure == "symmetric":
        # Orbit averages divide by the orbit size (3, 6, ...), which would
        # leave the exact value grid and land rows on razor-edge ties;
        # re-snapping keeps the symmetrized values dyadic.
        mid = _snap(_orbit_average(mid, m, n))
        rad = _snap(_orbit_average(rad, m, n))
    lower = mid - rad
    upper = mid + rad

    if spec.structure == "z":
        for i in range(n):
            base = i * r
            d = diag_tail_flat(i, m, n)
            for f in range(r):
                if f == d:
                    continue
                upper[base + f] = min(upper[base + f], 0.0)
                lower[base + f] = min(lower[base + f], upper[base + f])
    return make_interval(make_tensor(m, n, lower), make_tensor(m, n, upper))


def _orbit_average(arr: np.ndarray, m: int, n: int) -> np.ndarray:
    shape = (n,) * m
    sums: dict[int, float] = {}
    counts: dict[int, int] = {}
    canon = np.empty(arr.size, dtype=np.int64)
    for f in range(arr.size):
        idx = np.unravel_index(f, shape)
        c = tail_to_flat(sorted(int(v) for v in idx), n)
        canon[f] = c
        sums[c] = sums.get(c, 0.0) + float(arr[f])
        counts[c] = counts.get(c, 0) + 1
    return np.array([sums[canon[f]] / counts[canon[f]] for f in range(arr.size)])


def random_member(AI: IntervalTensor, seed: int) -> Tensor:
    """Entrywise uniform member of the box, deterministic in ``seed``."""
    rng = np.random.default_rng(seed)
    span = AI.upper.entries - AI.lower.entries
    arr = AI.lower.entries + rng.uniform(0.0, 1.0, size=span.size) * span
    return Tensor(AI.order, AI.dim, arr)


def critical_row_tensor(order: int, dim: int, scale: float = 1.0) -> Tensor:
    """Double B-tensor whose row 0 sits exactly on the slack boundary.

    Row 0 carries diagonal q*scale and off-diagonal entries -scale (q the
    off-diagonal count), every other row a comfortably dominant diagonal.
    """
    q = dim ** (order - 1) - 1
    if q < 1:
        raise ValueError("need at least one off-diagonal position")
    r = dim ** (order - 1)
    arr = np.zeros(dim**order)
    for i in range(dim):
        d = i * r + diag_tail_flat(i, order, dim)
        if i == 0:
            arr[i * r : (i + 1) * r] = -scale
            arr[d] = q * scale
        else:
            arr[d] = (q + 1) * scale
    return make_tensor(order, dim, arr)


def boundary_interval(order: int, dim: int, scale: float = 1.0) -> IntervalTensor:
    """Interval double B family whose row 0 hits slack equality exactly.

    Lower bound: diagonal q*scale in row 0 ((q+1)*scale elsewhere, q the
    off-diagonal count), zero off-diagonal.  Upper bound adds ``scale`` to
    every entry.  Requires at least two off-diagonal positions per row so
    the critical row can coexist with condition (a).
    """
    q = dim ** (order - 1) - 1
    if q < 2:
        raise ValueError("need at least two off-diagonal positions per row")
    r = dim ** (order - 1)
    lower = np.zeros(dim**order)
    for i in range(dim):
        d = i * r + diag_tail_flat(i, order, dim)
        lower[d] = (q if i == 0 else q + 1) * scale
    upper = lower + scale
    return make_interval(
        make_tensor(order, dim, lower), make_tensor(order, dim, upper)
    )


@dataclass
class SuiteReport:
    """Aggregate of one cross-validation run.

    ``properties`` maps a property id to checked/passed counts; every failed
    check lands in ``counterexamples`` with the serialized instance.  The
    inclusion-direction probe counts are reported, not asserted.
    """

    trials: int
    seed: int
    order: int
    dim: int
    structure: str
    properties: dict[str, dict[str, int]] = field(default_factory=dict)
    counterexamples: list[dict] = field(default_factory=list)
    inclusion_probe: dict = field(default_factory=dict)

    def checked(self, prop: str) -> int:
        return self.properties.get(prop, {}).get("checked", 0)

    def failures(self, prop: str) -> int:
        p = self.properties.get(prop)
        return 0 if p is None else p["checked"] - p["passed"]

    def total_failures(self) -> int:
        return sum(self.failures(p) for p in self.properties)

    def to_json(self) -> dict:
        return {
            "trials": self.trials,
            "seed": self.seed,
            "order": self.order,
            "dim": self.dim,
            "structure": self.structure,
            "properties": self.properties,
            "counterexamples": self.counterexamples,
            "inclusion_probe": self.inclusion_probe,
        }


def _shrink(AI: IntervalTensor) -> IntervalTensor:
    """A strictly nested sub-box (quarter-way toward the midpoint)."""
    lo = AI.lower.entries
    up = AI.upper.entries
    return make_interval(
        make_tensor(AI.order, AI.dim, (3.0 * lo + up) / 4.0),
        make_tensor(AI.order, AI.dim, (lo + 3.0 * up) / 4.0),
    )


def _bump_upper_diag(AI: IntervalTensor, bump: float = 1.0) -> IntervalTensor:
    arr = AI.upper.entries.copy()
    r = AI.row_len
    for i in range(AI.dim):
        arr[i * r + diag_tail_flat(i, AI.order, AI.dim)] += bump
    return IntervalTensor(AI.lower, Tensor(AI.order, AI.dim, arr))


_MIXED_CYCLE = ("general", "b_biased", "z", "general", "b_biased", "circulant")

_B_BIASED = dict(diag_range=(4.0, 8.0), offdiag_range=(-0.5, 0.5), radius_scale=0.25)


def equivalence_suite(
    trials: int,
    seed: int,
    order: int = 3,
    dim: int = 2,
    structure: str = "mixed",
    vertex_limit: int = DEFAULT_VERTEX_LIMIT,
    boundary_every: int = 25,
) -> SuiteReport:
    """Cross-validate every classifier on seeded random instances.

    ``structure`` is one of the generator structures, or ``mixed`` to cycle
    recipes and inject exactly manufactured critical-row families.  The
    report is a pure function of the arguments.
    """
    report = SuiteReport(trials, seed, order, dim, structure)
    props = report.properties
    probe = {
        "double_b_not_b": 0,
        "b_not_double_b": 0,
        "manufactured_boundary_count": 0,
        "critical_row_instances": 0,
    }

    def tally(prop: str, ok: bool, AI: IntervalTensor, trial: int, details: str):
        rec = props.setdefault(prop, {"checked": 0, "passed": 0})
        rec["checked"] += 1
        if ok:
            rec["passed"] += 1
        else:
            report.counterexamples.append(
                {
                    "property": prop,
                    "trial": trial,
                    "instance": interval_to_json(AI),
                    "details": details,
                }
            )

    prev_interval_b: IntervalTensor | None = None

    for t in range(trials):
        trial_seed = (seed * 1_000_003 + t) & ((1 << 63) - 1)
        manufactured = False
        if structure == "mixed":
            recipe = _MIXED_CYCLE[t % len(_MIXED_CYCLE)]
            if boundary_every and t % boundary_every == boundary_every - 1:
                recipe = "boundary"
        else:
            recipe = structure

        if recipe == "boundary" and dim ** (order - 1) >= 3:
            scale = (1.0, 0.5, 2.0)[t % 3]
            AI = boundary_interval(order, dim, scale)
            manufactured = True
        elif recipe == "b_biased":
            AI = random_interval_tensor(
                GeneratorSpec(order, dim, seed=trial_seed, **_B_BIASED)
            )
        else:
            if recipe == "boundary":
                recipe = "general"
            AI = random_interval_tensor(
                GeneratorSpec(order, dim, structure=recipe, seed=trial_seed)
            )

        # Interval B: four methods and the vertex oracle.
        ib_verdicts = {
            meth: check_interval_b(AI, meth) for meth in INTERVAL_B_METHODS
        }
        statuses = {v.status for v in ib_verdicts.values()}
        tally(
            "interval_b_method_agreement",
            len(statuses) == 1,
            AI,
            t,
            f"statuses {sorted(s.value for s in statuses)}",
        )
        ib = ib_verdicts["theorem"]
        orc_b = oracle_interval_b(AI, vertex_limit)
        tally(
            "interval_b_vs_oracle",
            ib.status == orc_b.status,
            AI,
            t,
            f"classifier {ib.status.value}, oracle {orc_b.status.value}",
        )

        # Interval double B against the oracle.
        idb = check_interval_double_b(AI)
        orc_db = oracle_interval_double_b(AI, vertex_limit, member_seed=trial_seed)
        tally(
            "interval_double_b_vs_oracle",
            idb.status == orc_db.status,
            AI,
            t,
            f"classifier {idb.status.value}, oracle {orc_db.status.value}",
        )

        # Point-level method agreement and B => double B on sampled members.
        samples = [AI.lower, AI.upper]
        for k in range(4):
            samples.append(random_member(AI, seed=trial_seed + 7_919 * (k + 1)))
        for T in samples:
            point = {meth: check_b(T, meth).status for meth in B_METHODS}
            tally(
                "point_b_method_agreement",
                len(set(point.values())) == 1,
                AI,
                t,
                f"statuses {sorted(s.value for s in point.values())}",
            )
            if point["definition"] is Status.HOLDS:
                tally(
                    "point_b_implies_double_b",
                    check_double_b(T).holds(),
                    AI,
                    t,
                    "B member failing the double B check",
                )
            if ib.holds():
                tally(
                    "interval_b_implies_member_b",
                    point["definition"] is Status.HOLDS,
                    AI,
                    t,
                    "member of an interval B family failing the B check",
                )

        # Interval B implies every vertex is (double) B.
        if ib.holds():
            tally(
                "interval_b_implies_vertex_b",
                orc_b.holds(),
                AI,
                t,
                "interval B family with a failing vertex",
            )
            tally(
                "interval_b_implies_vertex_double_b",
                orc_db.holds(),
                AI,
                t,
                "interval B family with a vertex failing double B",
            )

        # Necessary reports must pass whenever the exact classifier holds.
        if ib.holds():
            tally(
                "interval_b_necessary_pass",
                interval_b_necessary(AI).passed,
                AI,
                t,
                "necessary interval-B report failed on a holding family",
            )
        if idb.holds():
            ok = (
                interval_double_b_necessary(AI, "extremes").passed
                and interval_double_b_necessary(AI, "rowmax").passed
            )
            tally(
                "interval_double_b_necessary_pass",
                ok,
                AI,
                t,
                "necessary double-B report failed on a holding family",
            )

        # Sufficient hat criterion never overclaims.
        hat = check_interval_double_b_hat_sufficient(AI)
        if hat.holds():
            tally(
                "hat_sufficient_implies_double_b",
                idb.holds(),
                AI,
                t,
                "hat criterion held on a non double B family",
            )

        # Reduction by dominated positions preserves both verdicts.
        reduced, _ = reduce_via_K(AI)
        tally(
            "k_reduction_preserves_interval_b",
            check_interval_b(reduced, "theorem").status == ib.status,
            AI,
            t,
            "interval-B verdict changed under reduction",
        )
        tally(
            "k_reduction_preserves_interval_double_b",
            check_interval_double_b(reduced).status == idb.status,
            AI,
            t,
            "double-B verdict changed under reduction",
        )
        tally(
            "k_reduction_idempotent",
            reduce_via_K(reduced)[0] == reduced,
            AI,
            t,
            "reduction is not idempotent",
        )

        # Upper diagonal entries are irrelevant to both families.
        bumped = _bump_upper_diag(AI)
        tally(
            "diagonal_irrelevance",
            check_interval_b(bumped, "theorem").status == ib.status
            and check_interval_double_b(bumped).status == idb.status,
            AI,
            t,
            "verdict moved when only upper diagonals changed",
        )

        # Membership is inherited by sub-boxes.
        nested = _shrink(AI)
        if ib.holds():
            tally(
                "containment_monotonic_interval_b",
                check_interval_b(nested, "theorem").holds(),
                AI,
                t,
                "nested sub-box lost the interval B property",
            )
        if idb.holds():
            tally(
                "containment_monotonic_interval_double_b",
                check_interval_double_b(nested).holds(),
                AI,
                t,
                "nested sub-box lost the interval double B property",
            )

        # Structured fast paths agree with the general classifiers.
        if is_interval_z(AI):
            tally(
                "zfast_interval_b_agreement",
                check_interval_b_zfast(AI).status == ib.status,
                AI,
                t,
                "Z fast path disagrees on interval B",
            )
            tally(
                "zfast_interval_double_b_agreement",
                check_interval_double_b_zfast(AI).status == idb.status,
                AI,
                t,
                "Z fast path disagrees on interval double B",
            )
        if is_circulant(AI.lower) and is_circulant(AI.upper):
            circ = check_interval_circulant(AI)
            tally(
                "circulant_agreement",
                circ.status == ib.status and circ.status == idb.status,
                AI,
                t,
                f"circulant {circ.status.value}, B {ib.status.value}, "
                f"double B {idb.status.value}",
            )
        dom = check_interval_double_b_dominance(AI)
        if dom.status is not Status.INCONCLUSIVE:
            tally(
                "dominance_agreement",
                dom.status == idb.status,
                AI,
                t,
                "dominance criterion disagrees with the general classifier",
            )

        # Dichotomies partition exactly.
        dich = classify_interval_double_b_dichotomy(AI)
        ok = (
            (dich.kind != "not_double_b") == idb.holds()
            and (dich.kind == "interval_b") == (idb.holds() and ib.holds())
            and (dich.kind != "critical_row" or not ib.holds())
        )
        tally("interval_dichotomy_partition", ok, AI, t, f"kind {dich.kind}")
        pd = classify_double_b_dichotomy(AI.lower)
        lb = check_b(AI.lower, "definition").holds()
        ldb = check_double_b(AI.lower).holds()
        ok = (
            (pd.kind != "not_double_b") == ldb
            and (pd.kind == "is_b") == (ldb and lb)
            and (pd.kind != "critical_row" or not lb)
        )
        tally("point_dichotomy_partition", ok, AI, t, f"kind {pd.kind}")

        # Inclusion-direction probe: counted, never asserted.
        if idb.holds() and not ib.holds():
            probe["double_b_not_b"] += 1
            if manufactured:
                probe["manufactured_boundary_count"] += 1
        if ib.holds() and not idb.holds():
            probe["b_not_double_b"] += 1
        if dich.kind == "critical_row":
            probe["critical_row_instances"] += 1

        # Row mixing of two interval B families stays interval B.
        if ib.holds():
            if prev_interval_b is not None and (
                prev_interval_b.order,
                prev_interval_b.dim,
            ) == (order, dim):
                mixed = _mix_intervals(prev_interval_b, AI, trial_seed)
                tally(
                    "row_mixing_closure",
                    check_interval_b(mixed, "theorem").holds(),
                    AI,
                    t,
                    "row mix of two interval B families is not interval B",
                )
            prev_interval_b = AI

    probe["double_b_implies_b_refuted"] = probe["double_b_not_b"] > 0
    probe["b_implies_double_b_refuted"] = probe["b_not_double_b"] > 0
    report.inclusion_probe = probe
    return report


def _mix_intervals(A: IntervalTensor, B: IntervalTensor, seed: int) -> IntervalTensor:
    """Row mix of two interval families: per row pick a parent and a random
    off-diagonal rearrangement, applied identically to both bounds."""
    rng = np.random.default_rng(seed ^ 0x5EED)
    q = A.row_len - 1
    assignment = {}
    for i in range(A.dim):
        pid = int(rng.integers(0, 2))
        perm = rng.permutation(q).tolist()
        assignment[i] = (pid, perm)
    lower = row_mix([A.lower, B.lower], assignment)
    upper = row_mix([A.upper, B.upper], assignment)
    return make_interval(lower, upper)
