"""Row recipes for the published code tables and the reproduction harness.

Table 2 is generated from Paley matrices alone.  Tables 1, 3, 4 and 5 need
matrices, designs or automorphism groups that are cited rather than printed,
so their rows name the files they require and are SKIPPED when absent.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from . import build as bld
from .code import (
    DistanceResult,
    LinearCode,
    dual,
    from_generator,
    fsd_status,
    hull_dimension,
    min_distance,
)
from .construct import (
    ValidationError,
    paley_matrix,
    paley_type_I,
    row_subset_design,
    validate_design,
    validate_fq_weighing,
    validate_weighing,
)
from .enumeration import default_cap
from .matq import read_matrix
from .orbit import orbit_structure, read_group

GENERATED = "GENERATED"
FILE = "FILE"

PASS = "PASS"
PARTIAL = "PARTIAL"
SKIPPED = "SKIPPED"
FAIL = "FAIL"

DESIGN_FILE = "design_15_6.mat"
DESIGN_R, DESIGN_LAMBDA = 15, 6


@dataclass(frozen=True)
class TableSpec:
    table: int
    source: str
    q: int
    length: int
    k: int
    d: int | None
    pi: int | None = None
    order: int | None = None
    alpha: int | None = None
    matrix: str | None = None
    group: str | None = None
    dual_k: int | None = None
    dual_d: int | None = None
    note: str = ""

    @property
    def files(self) -> tuple[str, ...]:
        if self.source != FILE:
            return ()
        names = [self.matrix] if self.matrix else []
        if self.group:
            names.append(self.group)
        if self.table == 1:
            names.append(DESIGN_FILE)
        return tuple(names)

    @property
    def label(self) -> str:
        d = "" if self.d is None else f",{self.d}"
        code = f"[{self.length},{self.k}{d}]_{self.q}"
        if self.table == 2:
            return f"T2 n={self.order} α={self.alpha} {code}"
        if self.table == 1:
            kind = "P1" if self.pi % 4 == 3 else "conf"
            return f"T1 t={self.order} {kind}({self.pi}) {code}"
        parts = [f"T{self.table}", Path(self.matrix).stem]
        if self.table in (3, 4):
            parts.append(self.group.split(".")[-2] if self.group else "I")
        return " ".join(parts + [code])


# Table 2: Paley type I skew-Hadamard matrices with B = I, by (n, alpha, q, d).
_TABLE2 = [
    (4, 0, 2, 2), (4, 2, 3, 3), (4, 0, 3, 4), (4, 1, 5, 4),
    (8, 0, 2, 2), (8, 2, 3, 6), (8, 0, 5, 6), (8, 1, 5, 7),
    (12, 0, 2, 2), (12, 0, 3, 6), (12, 1, 5, 6), (12, 0, 5, 8), (12, 4, 5, 9),
    (20, 0, 2, 2), (20, 2, 3, 10), (20, 0, 5, 8), (20, 1, 5, 13),
    (24, 0, 2, 2), (24, 0, 3, 9), (24, 1, 5, 15),
    (28, 0, 2, 2), (28, 2, 3, 6), (28, 0, 3, 12), (28, 1, 5, 12), (28, 0, 5, 15),
    (32, 0, 2, 2), (32, 2, 3, 14), (32, 2, 5, 10), (32, 0, 5, 18),
    (48, 0, 2, 2), (48, 0, 3, 15), (48, 0, 5, None),
]

# Table 1: Paley matrix of order t with the first t rows of a (15,6)-design on 36 blocks.
_TABLE1 = [
    (6, 3, 20, 2), (10, 5, 22, 3), (14, 3, 14, 5), (14, 5, 18, 6), (18, 3, 9, 6),
    (18, 5, 18, 6), (26, 3, 6, 6), (30, 3, 5, 6),
    (8, 3, 20, 3), (12, 2, 8, 2), (12, 5, 18, 4), (20, 2, 6, 2), (20, 3, 8, 6),
    (20, 5, 16, 7), (24, 2, 4, 2),
]

# Tables 3 and 4: orbit matrices; (matrix, group or None, t, q, d).
_TABLE3 = (
    [("H36.mat", None, 36, q, d) for q, d in [(2, 2), (3, 6), (5, 12), (7, 12), (9, 6), (11, 12), (25, 12)]]
    + [("H36.mat", "H36.Z3.grp", 12, q, d) for q, d in [(2, 2), (3, 3), (5, 8), (7, 8), (9, 3), (11, 8), (25, 8)]]
    + [("H100.mat", "H100.Z5.grp", 20, q, d) for q, d in [(2, 2), (3, 4), (5, 2), (7, 4), (9, 4), (11, 4), (25, 2)]]
)

_TABLE4 = (
    [("W72_36.mat", None, 72, q, 12) for q in (5, 7, 11, 25)]
    + [("W72_36.mat", "W72_36.Z2.grp", 36, q, 6) for q in (5, 7, 11, 25)]
    + [("W72_36.mat", "W72_36.Z3.grp", 24, q, 4) for q in (5, 7, 11, 25)]
    + [("W72_36.mat", "W72_36.Z4.grp", 18, q, 6) for q in (5, 7, 11, 25)]
    + [("W42_26.mat", "W42_26.Z3.grp", 14, q, d) for q, d in [(2, 4), (5, 8), (7, 8), (11, 10), (25, 8)]]
    + [("W56_29.mat", "W56_29.Z4.grp", 14, q, d) for q, d in [(7, 9), (11, 10)]]
    + [("W50_29.mat", "W50_29.Z5.grp", 10, q, d) for q, d in [(7, 6), (11, 6)]]
    + [("W56_29.mat", "W56_29.Z7.grp", 8, q, 6) for q in (7, 11)]
    + [("W72_36.mat", "W72_36.Z9.grp", 8, q, 4) for q in (5, 7, 11, 25)]
    + [("W42_26.mat", "W42_26.Z7.grp", 6, q, d) for q, d in [(2, 2), (5, 4), (7, 6), (11, 6), (25, 4)]]
)

_TABLE5 = [(6, 4), (8, 4), (12, 4)]


def table_rows(table: int) -> list[TableSpec]:
    if table == 1:
        return [
            TableSpec(1, FILE, q, t + 36, t, d, pi=t - 1, order=t, dual_k=36, dual_d=dd)
            for t, q, d, dd in _TABLE1
        ]
    if table == 2:
        return [
            TableSpec(2, GENERATED, q, 2 * n, n, d, pi=n - 1, order=n, alpha=a)
            for n, a, q, d in _TABLE2
        ]
    if table == 3:
        return [TableSpec(3, FILE, q, 2 * t, t, d, matrix=m, group=g, order=t) for m, g, t, q, d in _TABLE3]
    if table == 4:
        return [TableSpec(4, FILE, q, 2 * t, t, d, matrix=m, group=g, order=t) for m, g, t, q, d in _TABLE4]
    if table == 5:
        return [
            TableSpec(5, FILE, 4, 2 * n, n, d, matrix=f"W{n}_{n}_F4.mat", order=n, dual_k=n, dual_d=d)
            for n, d in _TABLE5
        ]
    raise ValueError(f"unknown table {table}; expected 1 to 5")


@dataclass
class RowResult:
    spec: TableSpec
    status: str
    distance: DistanceResult | None = None
    dual_distance: DistanceResult | None = None
    details: list[str] = field(default_factory=list)

    def to_text(self) -> str:
        parts = [self.spec.label, self.status]
        if self.distance is not None:
            parts.append(f"d={self.distance.d}[{self.distance.status}]")
        if self.dual_distance is not None:
            parts.append(f"dual_d={self.dual_distance.d}[{self.dual_distance.status}]")
        parts.extend(self.details)
        return " ".join(parts)


def _ingredient(spec: TableSpec, data_dir: Path | None) -> bld.BuildResult:
    if spec.table == 2:
        return bld.build_skew_hadamard(paley_type_I(spec.pi), None, spec.alpha, spec.q)
    assert data_dir is not None
    if spec.table == 1:
        W = paley_matrix(spec.pi)
        full = validate_design(read_matrix(data_dir / DESIGN_FILE), DESIGN_R, DESIGN_LAMBDA)
        return bld.build_plain(W, row_subset_design(full, spec.order), spec.q)
    if spec.table == 5:
        Wq = validate_fq_weighing(read_matrix(data_dir / spec.matrix))
        return bld.build_hermitian(Wq, None)
    W = validate_weighing(read_matrix(data_dir / spec.matrix))
    if spec.group is None:
        return bld.build_orbit(W.W, None, spec.q)
    n, gens = read_group(data_dir / spec.group)
    if n != W.n:
        raise ValidationError(f"{spec.group} acts on {n} points, matrix has order {W.n}")
    return bld.build_orbit(orbit_structure(W.W, gens), None, spec.q)


def _check_distance(found: DistanceResult, expected: int | None, what: str, problems: list[str], partial: list[str]) -> None:
    if expected is None:
        return
    if found.exact:
        if found.d != expected:
            problems.append(f"{what} {found.d} != {expected}")
    elif found.best_found is not None and found.best_found < expected:
        problems.append(f"{what} has a word of weight {found.best_found} < {expected}")
    elif found.d < expected:
        partial.append(f"{what} only bounded: {found.d} <= d <= {found.best_found}")


def reproduce_row(
    spec: TableSpec,
    data_dir: str | os.PathLike | None = None,
    cap: int | None = None,
    max_weight: int | None = None,
) -> RowResult:
    cap = default_cap() if cap is None else cap
    base = Path(data_dir) if data_dir is not None else None
    missing = [f for f in spec.files if base is None or not (base / f).is_file()]
    if missing:
        return RowResult(spec, SKIPPED, details=["missing " + ",".join(missing)])
    try:
        res = _ingredient(spec, base)
    except (ValidationError, bld.BuildError, ValueError) as exc:
        return RowResult(spec, FAIL, details=[f"ingredient rejected: {exc}"])

    problems: list[str] = []
    partial: list[str] = []
    C = from_generator(res.G)
    if (C.n, C.k) != (spec.length, spec.k):
        problems.append(f"parameters [{C.n},{C.k}] != [{spec.length},{spec.k}]")
    hull = hull_dimension(C, hermitian=res.hermitian)
    if res.predicted != bld.LCD:
        problems.append(f"predicted {res.predicted}")
    if hull != 0:
        problems.append(f"hull dimension {hull}")
    details = ["lcd" if hull == 0 else f"hull={hull}"]

    dist = min_distance(C, cap, max_weight)
    _check_distance(dist, spec.d, "d", problems, partial)
    dual_dist = None
    if spec.dual_d is not None:
        D: LinearCode = dual(C)
        if D.k != spec.dual_k:
            problems.append(f"dual dimension {D.k} != {spec.dual_k}")
        dual_dist = min_distance(D, cap, max_weight)
        _check_distance(dual_dist, spec.dual_d, "dual d", problems, partial)

    if spec.table in (2, 3, 4):
        fsd, how = fsd_status(C, cap)
        if fsd is False:
            problems.append(f"not formally self-dual [{how}]")
        elif fsd is None:
            partial.append("formal self-duality undetermined")
        details.append(f"fsd[{how}]" if fsd else f"fsd={'?' if fsd is None else 'no'}[{how}]")

    if problems:
        return RowResult(spec, FAIL, dist, dual_dist, details + problems)
    return RowResult(spec, PARTIAL if partial else PASS, dist, dual_dist, details + partial)


def _run(args) -> RowResult:
    return reproduce_row(*args)


def reproduce(
    table: int,
    data_dir: str | os.PathLike | None = None,
    *,
    cap: int | None = None,
    max_weight: int | None = None,
    max_order: int | None = None,
    workers: int = 1,
) -> list[RowResult]:
    """Reproduce every row of a table; results keep the table's row order."""
    rows = [r for r in table_rows(table) if max_order is None or r.order <= max_order]
    jobs = [(r, data_dir, cap, max_weight) for r in rows]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_run, jobs))
    return [_run(j) for j in jobs]


def summary(results: list[RowResult]) -> dict[str, int]:
    counts = {PASS: 0, PARTIAL: 0, SKIPPED: 0, FAIL: 0}
    for r in results:
        counts[r.status] += 1
    return counts
