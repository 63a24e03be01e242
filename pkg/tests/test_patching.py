"""Window trajectory spaces and patching feasibility."""

import random
from fractions import Fraction

import pytest

from polyctrl.matrix import PolyMatrix
from polyctrl.patching import (
    PatchProblem,
    Window,
    dilate,
    evidence_report,
    kernel_basis,
    patch_feasible,
    window_constraint_matrix,
)
from polyctrl.poly import Polynomial, Ring


B1 = Ring(("s",), laurent=True)
B2 = Ring(("s1", "s2"), laurent=True)


def shift_1d(poly_terms):
    return PolyMatrix(B1, [[Polynomial(B1, poly_terms)]])


def forward_difference_2d():
    s1, s2 = B2.gens()
    return PolyMatrix(B2, [[s1 - 1, s2 - 1]])


def dense_nullity(rows, ncols):
    """Textbook forward elimination, independent of the library path."""
    m = [list(r) for r in rows]
    rank = 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for i in range(rank + 1, len(m)):
            if m[i][col] != 0:
                f = m[i][col] / m[rank][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        rank += 1
        if rank == len(m):
            break
    return ncols - rank


def test_window_validation():
    with pytest.raises(ValueError):
        Window(())
    with pytest.raises(ValueError):
        Window((4, 0))
    assert len(Window((2, 3)).cells()) == 6


def test_dilate_clips_to_window():
    w = Window((4,))
    assert dilate([(0,)], w) == [(0,), (1,)]
    assert dilate([(2,)], w) == [(1,), (2,), (3,)]


def test_kernel_constant_sequences():
    m = shift_1d({(1,): 1, (0,): -1})  # w(t+1) = w(t)
    basis = kernel_basis(m, Window((8,)))
    assert len(basis) == 1
    values = {v for traj in basis for (v,) in traj.values()}
    assert len(values) == 1  # constant trajectory


def test_kernel_pure_shift_forces_zero_tail():
    m = shift_1d({(1,): 1})  # w(t+1) = 0 for t = 0..6
    basis = kernel_basis(m, Window((8,)))
    assert len(basis) == 1
    traj = basis[0]
    assert all(traj[(t,)] == (0,) for t in range(1, 8))
    assert traj[(0,)] != (0,)


def test_kernel_forward_difference_4x4():
    m = forward_difference_2d()
    window = Window((4, 4))
    basis = kernel_basis(m, window)
    assert len(basis) == 23  # 32 unknowns, 9 independent equations
    # the constant pair (1, 1) lies in the trajectory space
    rows, cell_index = window_constraint_matrix(m, window)
    constant = [Fraction(1)] * (len(window.cells()) * 2)
    assert all(sum(c * v for c, v in zip(row, constant)) == 0 for row in rows)


def test_window_too_small_for_stencil():
    m = shift_1d({(3,): 1, (0,): 1})
    with pytest.raises(ValueError):
        kernel_basis(m, Window((3,)))
    assert len(kernel_basis(m, Window((4,)))) == 3


def test_zero_row_contributes_nothing():
    z = B1.zero()
    m = PolyMatrix(B1, [[z]])
    assert len(kernel_basis(m, Window((5,)))) == 5


def test_kernel_dimension_matches_dense_oracle():
    rng = random.Random(52000)
    for _ in range(50):
        n = rng.randint(1, 2)
        ring = Ring(tuple(f"s{j + 1}" for j in range(n)), laurent=True)
        l, k = rng.randint(1, 2), rng.randint(1, 2)

        def rpoly():
            terms = {}
            for _ in range(rng.randint(1, 3)):
                mono = tuple(rng.randint(-1, 1) for _ in range(n))
                c = rng.randint(-3, 3)
                if c:
                    terms[mono] = terms.get(mono, 0) + c
            return Polynomial(ring, terms)

        matrix = PolyMatrix(ring, [[rpoly() for _ in range(k)] for _ in range(l)])
        window = Window(tuple(rng.randint(4, 6) for _ in range(n)))
        basis = kernel_basis(matrix, window)
        rows, _ = window_constraint_matrix(matrix, window)
        assert len(basis) == dense_nullity(rows, len(window.cells()) * k)


def constant_patch_problem():
    m = shift_1d({(1,): 1, (0,): -1})
    return PatchProblem(
        system=m,
        window=Window((8,)),
        region1=((0,), (1,)),
        traj1={(0,): (0,), (1,): (0,)},
        region2=((6,), (7,)),
        traj2={(6,): (1,), (7,): (1,)},
    )


def band_patch_problem():
    m = forward_difference_2d()
    window = Window((8, 8))
    region1 = tuple((0, j) for j in range(8)) + tuple((1, j) for j in range(8))
    region2 = tuple((6, j) for j in range(8)) + tuple((7, j) for j in range(8))
    return PatchProblem(
        system=m,
        window=window,
        region1=region1,
        traj1={c: (Fraction(0), Fraction(0)) for c in region1},
        region2=region2,
        traj2={c: (Fraction(1), Fraction(1)) for c in region2},
    )


def test_patch_infeasible_for_constants():
    result = patch_feasible(constant_patch_problem())
    assert not result.feasible
    assert result.witness is None


def test_patch_feasible_across_bands():
    problem = band_patch_problem()
    result = patch_feasible(problem)
    assert result.feasible
    w = result.witness
    # witness satisfies the pinned values on both regions
    assert all(w[c] == problem.traj1[c] for c in problem.region1)
    assert all(w[c] == problem.traj2[c] for c in problem.region2)
    # and every window equation, by direct substitution
    rows, cell_index = window_constraint_matrix(problem.system, problem.window)
    flat = [Fraction(0)] * (len(problem.window.cells()) * 2)
    for cell, idx in cell_index.items():
        flat[idx * 2], flat[idx * 2 + 1] = w[cell]
    assert all(sum(c * v for c, v in zip(row, flat)) == 0 for row in rows)


def test_patch_empty_region_extends_other_side():
    m = shift_1d({(1,): 1, (0,): -1})
    problem = PatchProblem(
        system=m,
        window=Window((8,)),
        region1=(),
        traj1={},
        region2=((6,), (7,)),
        traj2={(6,): (1,), (7,): (1,)},
    )
    result = patch_feasible(problem)
    assert result.feasible
    assert all(result.witness[(t,)] == (1,) for t in range(8))


def test_patch_separation_violations():
    m = shift_1d({(1,): 1, (0,): -1})
    problem = PatchProblem(
        system=m,
        window=Window((8,)),
        region1=((0,), (3,)),
        traj1={(0,): (0,), (3,): (0,)},
        region2=((4,), (7,)),
        traj2={(4,): (1,), (7,): (1,)},
    )
    with pytest.raises(ValueError):
        patch_feasible(problem)  # dilations of cells 3 and 4 overlap


def test_patch_unrealizable_restriction():
    m = shift_1d({(1,): 1, (0,): -1})
    problem = PatchProblem(
        system=m,
        window=Window((8,)),
        region1=((0,), (1,)),
        traj1={(0,): (0,), (1,): (1,)},  # not a restriction of any constant
        region2=((6,), (7,)),
        traj2={(6,): (1,), (7,): (1,)},
    )
    with pytest.raises(ValueError):
        patch_feasible(problem)


def test_patch_translation_invariance():
    rng = random.Random(9090)
    m = forward_difference_2d()
    window = Window((7, 7))
    for _ in range(20):
        base1 = (0, rng.randrange(3))
        base2 = (5, rng.randrange(3))
        v1 = Fraction(rng.randint(-2, 2))
        v2 = Fraction(rng.randint(-2, 2))
        results = []
        for shift in ((0, 0), (0, rng.randrange(2))):
            r1 = (tuple(a + b for a, b in zip(base1, shift)),)
            r2 = (tuple(a + b for a, b in zip(base2, shift)),)
            problem = PatchProblem(
                system=m,
                window=window,
                region1=r1,
                traj1={r1[0]: (v1, v1)},
                region2=r2,
                traj2={r2[0]: (v2, v2)},
            )
            results.append(patch_feasible(problem).feasible)
        assert results[0] == results[1]


def test_evidence_report_consistent_uncontrollable():
    m = shift_1d({(1,): 1, (0,): -1})
    report = evidence_report(m, [constant_patch_problem()])
    assert report.verdict.status.value == "Uncontrollable"
    assert not report.entries[0].feasible
    assert report.consistent


def test_evidence_report_consistent_controllable():
    report = evidence_report(forward_difference_2d(), [band_patch_problem()])
    assert report.verdict.status.value == "Controllable"
    assert report.entries[0].feasible
    assert report.consistent


def test_evidence_report_empty_suite_flagged():
    m = shift_1d({(1,): 1, (0,): -1})
    report = evidence_report(m, [])
    assert report.consistent
    assert "no evidence" in report.flags
    payload = report.to_json_dict()
    assert payload["consistent"] is True
    assert payload["problems"] == []
    assert "verdict" in payload and "flags" in payload


def test_evidence_report_uncontrollable_without_obstruction():
    # constants system, but both regions pinned to the same constant: the
    # patch succeeds, so the uncontrollable verdict is left uncorroborated
    m = shift_1d({(1,): 1, (0,): -1})
    problem = PatchProblem(
        system=m,
        window=Window((8,)),
        region1=((0,), (1,)),
        traj1={(0,): (1,), (1,): (1,)},
        region2=((6,), (7,)),
        traj2={(6,): (1,), (7,): (1,)},
    )
    report = evidence_report(m, [problem])
    assert report.entries[0].feasible
    assert not report.consistent
    assert any("not a refutation" in f for f in report.flags)
    assert "inconsistent" in report.to_text()
