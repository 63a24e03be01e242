"""Finite-window trajectory spaces and patching evidence for shift systems.

A shift system on the integer lattice restricts to a finite box by keeping
exactly those equations whose shifted references stay inside the box (no
wraparound, no padding).  Window trajectories solve that exact rational
linear system.  Patching asks whether two partial trajectories, pinned on
well-separated regions, extend to a single window trajectory that agrees
with some realization of each on a neighborhood (the radius-1 dilation) of
its region.

Feasibility on a window is evidence, not proof: an infeasible patch on a
finite window may become feasible with more room, so reports phrase
disagreements as window artifacts rather than refutations.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from . import linalg
from .decide import Status, Verdict, decide
from .matrix import PolyMatrix

Cell = Tuple[int, ...]
Trajectory = Dict[Cell, Tuple[Fraction, ...]]


@dataclass(frozen=True)
class Window:
    """The box {0..e1-1} x ... x {0..en-1} of the integer lattice."""

    extents: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "extents", tuple(int(e) for e in self.extents))
        if not self.extents or any(e < 1 for e in self.extents):
            raise ValueError("window extents must be positive")

    @property
    def ndim(self) -> int:
        return len(self.extents)

    def cells(self) -> List[Cell]:
        return list(itertools.product(*(range(e) for e in self.extents)))

    def contains(self, cell: Cell) -> bool:
        return len(cell) == self.ndim and all(0 <= c < e for c, e in zip(cell, self.extents))


def dilate(cells: Sequence[Cell], window: Window, radius: int = 1) -> List[Cell]:
    """Window cells within sup-norm distance <= radius of the given cells."""
    seen = set()
    for cell in cells:
        for offset in itertools.product(*(range(-radius, radius + 1) for _ in cell)):
            neighbor = tuple(c + o for c, o in zip(cell, offset))
            if window.contains(neighbor):
                seen.add(neighbor)
    return sorted(seen)


def _row_stencil(matrix: PolyMatrix, row: int) -> List[Cell]:
    offsets = set()
    for p in matrix.entries[row]:
        offsets.update(p.monomials())
    return sorted(offsets)


def _base_points(window: Window, stencil: Sequence[Cell]) -> List[Cell]:
    lows = [min(o[t] for o in stencil) for t in range(window.ndim)]
    highs = [max(o[t] for o in stencil) for t in range(window.ndim)]
    ranges = []
    for t, extent in enumerate(window.extents):
        lo = max(0, -lows[t])
        hi = extent - 1 - max(0, highs[t])
        if hi < lo:
            return []
        ranges.append(range(lo, hi + 1))
    return list(itertools.product(*ranges))


def window_constraint_matrix(
    matrix: PolyMatrix, window: Window
) -> Tuple[List[List[Fraction]], Dict[Cell, int]]:
    """The exact linear system cutting out window trajectories.

    Unknown layout: index(cell, component) = cell_index * k + component,
    cells in lexicographic order.  Raises if some row's stencil does not
    fit into the window at even one base point.
    """
    if matrix.ring.nvars != window.ndim:
        raise ValueError("window dimension must match the ring variable count")
    cells = window.cells()
    cell_index = {c: i for i, c in enumerate(cells)}
    k = matrix.cols
    ncols = len(cells) * k
    rows: List[List[Fraction]] = []
    for i in range(matrix.rows):
        stencil = _row_stencil(matrix, i)
        if not stencil:
            continue  # zero row constrains nothing
        bases = _base_points(window, stencil)
        if not bases:
            raise ValueError(f"window too small for the stencil of row {i}")
        for base in bases:
            coeffs = [Fraction(0)] * ncols
            for j in range(k):
                for mono, c in matrix.entry(i, j).terms.items():
                    target = tuple(b + o for b, o in zip(base, mono))
                    coeffs[cell_index[target] * k + j] += c
            rows.append(coeffs)
    return rows, cell_index


def _vector_to_trajectory(vec: Sequence[Fraction], cells: Sequence[Cell], k: int) -> Trajectory:
    return {
        cell: tuple(vec[i * k + j] for j in range(k)) for i, cell in enumerate(cells)
    }


def kernel_basis(matrix: PolyMatrix, window: Window) -> List[Trajectory]:
    """Exact basis of the window trajectory space, one mapping per basis vector."""
    rows, cell_index = window_constraint_matrix(matrix, window)
    cells = window.cells()
    k = matrix.cols
    vectors = linalg.nullspace_basis(rows, len(cells) * k)
    return [_vector_to_trajectory(v, cells, k) for v in vectors]


@dataclass(frozen=True)
class PatchProblem:
    """Two pinned partial trajectories on separated regions of one window."""

    system: PolyMatrix
    window: Window
    region1: Tuple[Cell, ...]
    traj1: Mapping[Cell, Tuple[Fraction, ...]]
    region2: Tuple[Cell, ...]
    traj2: Mapping[Cell, Tuple[Fraction, ...]]
    dilation_radius: int = 1

    def __post_init__(self):
        object.__setattr__(self, "region1", tuple(tuple(c) for c in self.region1))
        object.__setattr__(self, "region2", tuple(tuple(c) for c in self.region2))
        object.__setattr__(
            self,
            "traj1",
            {tuple(c): tuple(Fraction(v) for v in vals) for c, vals in dict(self.traj1).items()},
        )
        object.__setattr__(
            self,
            "traj2",
            {tuple(c): tuple(Fraction(v) for v in vals) for c, vals in dict(self.traj2).items()},
        )

    def validate(self) -> None:
        k = self.system.cols
        for name, region, traj in (
            ("region1", self.region1, self.traj1),
            ("region2", self.region2, self.traj2),
        ):
            for cell in region:
                if not self.window.contains(cell):
                    raise ValueError(f"{name} cell {cell} outside the window")
                if cell not in traj:
                    raise ValueError(f"{name} cell {cell} has no pinned value")
                if len(traj[cell]) != k:
                    raise ValueError(f"{name} value at {cell} must have {k} components")
        d1 = set(dilate(self.region1, self.window, self.dilation_radius))
        d2 = set(dilate(self.region2, self.window, self.dilation_radius))
        if d1 & d2:
            raise ValueError(
                "regions are not separation-valid: their dilations overlap"
            )


@dataclass(frozen=True)
class PatchResult:
    feasible: bool
    witness: Optional[Trajectory] = None


def _pin_rows(
    region: Sequence[Cell],
    traj: Mapping[Cell, Tuple[Fraction, ...]],
    cell_index: Dict[Cell, int],
    k: int,
    ncols: int,
    column_offset: int,
):
    """Equations fixing the given unknowns block to the pinned values."""
    rows, rhs = [], []
    for cell in region:
        for j in range(k):
            coeffs = [Fraction(0)] * ncols
            coeffs[column_offset + cell_index[cell] * k + j] = Fraction(1)
            rows.append(coeffs)
            rhs.append(traj[cell][j])
    return rows, rhs


def patch_feasible(problem: PatchProblem) -> PatchResult:
    """Exact feasibility of patching the two pinned restrictions in the window.

    Searches jointly for window trajectories f, f1, f2 with f1, f2 realizing
    the pinned values and f agreeing with f1 and f2 on the dilations of
    their regions.  Infeasibility here does not disprove patchability on the
    full lattice; the window may simply be too small.
    """
    problem.validate()
    kernel_rows, cell_index = window_constraint_matrix(problem.system, problem.window)
    cells = problem.window.cells()
    k = problem.system.cols
    n_unknowns = len(cells) * k

    # each restriction must extend to a window trajectory at all
    for name, region, traj in (
        ("traj1", problem.region1, problem.traj1),
        ("traj2", problem.region2, problem.traj2),
    ):
        rows = [list(r) for r in kernel_rows]
        rhs = [Fraction(0)] * len(rows)
        pin_rows, pin_rhs = _pin_rows(region, traj, cell_index, k, n_unknowns, 0)
        if linalg.solve_affine(rows + pin_rows, rhs + pin_rhs) is None:
            raise ValueError(f"{name} is not the restriction of any window trajectory")

    # joint unknowns: f | f1 | f2
    total = 3 * n_unknowns
    rows: List[List[Fraction]] = []
    rhs: List[Fraction] = []
    for block in range(3):
        off = block * n_unknowns
        for krow in kernel_rows:
            padded = [Fraction(0)] * total
            padded[off : off + n_unknowns] = krow
            rows.append(padded)
            rhs.append(Fraction(0))
    for region, traj, off in (
        (problem.region1, problem.traj1, n_unknowns),
        (problem.region2, problem.traj2, 2 * n_unknowns),
    ):
        pin_rows, pin_rhs = _pin_rows(region, traj, cell_index, k, total, off)
        rows.extend(pin_rows)
        rhs.extend(pin_rhs)
    for region, off in (
        (problem.region1, n_unknowns),
        (problem.region2, 2 * n_unknowns),
    ):
        for cell in dilate(region, problem.window, problem.dilation_radius):
            for j in range(k):
                coeffs = [Fraction(0)] * total
                col = cell_index[cell] * k + j
                coeffs[col] = Fraction(1)
                coeffs[off + col] = Fraction(-1)
                rows.append(coeffs)
                rhs.append(Fraction(0))

    solution = linalg.solve_affine(rows, rhs)
    if solution is None:
        return PatchResult(feasible=False)
    witness = _vector_to_trajectory(solution[:n_unknowns], cells, k)
    return PatchResult(feasible=True, witness=witness)


WINDOW_ARTIFACT = "window artifact - enlarge window"
NO_EVIDENCE = "no evidence"


@dataclass(frozen=True)
class EvidenceEntry:
    index: int
    feasible: bool
    consistent: bool
    note: str = ""


@dataclass(frozen=True)
class EvidenceReport:
    """Agreement table between the symbolic verdict and patching outcomes."""

    verdict: Verdict
    entries: Tuple[EvidenceEntry, ...]
    consistent: bool
    flags: Tuple[str, ...]

    def to_json_dict(self) -> dict:
        return {
            "verdict": self.verdict.to_json_dict(),
            "problems": [
                {
                    "index": e.index,
                    "feasible": e.feasible,
                    "consistent": e.consistent,
                    "note": e.note,
                }
                for e in self.entries
            ],
            "consistent": self.consistent,
            "flags": list(self.flags),
        }

    def to_text(self) -> str:
        lines = [
            f"symbolic verdict: {self.verdict.status.value} ({self.verdict.reason})",
        ]
        for e in self.entries:
            state = "feasible" if e.feasible else "infeasible"
            mark = "ok" if e.consistent else "?"
            note = f"  [{e.note}]" if e.note else ""
            lines.append(f"  patch {e.index}: {state}  ({mark}){note}")
        lines.append(f"overall: {'consistent' if self.consistent else 'inconsistent'}")
        for flag in self.flags:
            lines.append(f"note: {flag}")
        return "\n".join(lines)


def evidence_report(matrix: PolyMatrix, problems: Sequence[PatchProblem]) -> EvidenceReport:
    """Run the symbolic decision and every patch test, then tabulate agreement.

    An uncontrollable verdict is corroborated by at least one infeasible
    patch; a controllable verdict expects every tested patch to be feasible.
    Disagreements are labeled as window artifacts, never as refutations.
    """
    verdict = decide(matrix)
    results = [patch_feasible(p) for p in problems]
    flags: List[str] = []
    entries: List[EvidenceEntry] = []

    if verdict.status is Status.CONTROLLABLE:
        for i, r in enumerate(results):
            entries.append(
                EvidenceEntry(
                    index=i,
                    feasible=r.feasible,
                    consistent=r.feasible,
                    note="" if r.feasible else WINDOW_ARTIFACT,
                )
            )
        consistent = all(e.consistent for e in entries)
    elif verdict.status is Status.UNCONTROLLABLE:
        corroborated = any(not r.feasible for r in results)
        for i, r in enumerate(results):
            entries.append(
                EvidenceEntry(
                    index=i,
                    feasible=r.feasible,
                    consistent=True,
                    note="obstruction exhibited" if not r.feasible else "",
                )
            )
        consistent = corroborated and bool(results)
        if results and not corroborated:
            flags.append(
                "no infeasible patch found; "
                "not a refutation - try larger windows or different regions"
            )
    else:
        for i, r in enumerate(results):
            entries.append(EvidenceEntry(index=i, feasible=r.feasible, consistent=True))
        consistent = True
        flags.append("symbolic verdict indeterminate; patching makes no prediction")

    if not problems:
        consistent = True
        flags.append(NO_EVIDENCE)
    return EvidenceReport(
        verdict=verdict, entries=tuple(entries), consistent=consistent, flags=tuple(flags)
    )
