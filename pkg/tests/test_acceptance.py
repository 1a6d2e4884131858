"""Acceptance gate: one test per criterion, exact (zero-tolerance) checks.

Run with ``pytest tests/test_acceptance.py -s`` to see the per-criterion
pass/fail lines and timings.
"""

import json
import random
import time
from contextlib import contextmanager
from fractions import Fraction

from auerbach.c0 import (
    codim1_closed_form,
    construct_basis,
    coord_l1_certificate,
    l1_functional,
    reconstruct,
    select_max_det,
    SubspaceSpec,
)
from auerbach.ck import (
    SumSystem,
    Top,
    element_norm,
    eval_functional,
    functional_norm,
    index_weight,
    materialize,
)
from auerbach.cli import main
from auerbach.cx import CXIndex, CXSystem, profile_tail_mismatch
from auerbach.ordinals import SpaceDesc, ord_parse
from auerbach.verify import (
    _max_block_deep,
    oracle_maxdet,
    oracle_series_eval,
    random_member,
    random_rational,
    random_subspace_spec,
    random_sum_element,
)


@contextmanager
def criterion(number: int, title: str, limit_seconds: float):
    started = time.perf_counter()
    try:
        yield
    except BaseException:
        print(f"ACCEPTANCE {number} ({title}): FAIL")
        raise
    elapsed = time.perf_counter() - started
    print(f"ACCEPTANCE {number} ({title}): PASS [{elapsed:.2f}s / {limit_seconds:.0f}s]")
    assert elapsed < limit_seconds, f"criterion {number} exceeded {limit_seconds}s"


def test_criterion_1_c0_suite():
    with criterion(1, "c0 suite, 200 random subspaces", 10):
        rng = random.Random(1001)
        for _ in range(200):
            spec = random_subspace_spec(rng, max_codim=3, max_support=10, bound=9)
            selection = select_max_det(spec)
            reference = oracle_maxdet(spec)
            assert selection.indices == reference.indices
            assert selection.det_value == reference.det_value
            basis = construct_basis(spec, selection)
            top = basis.tail_start + 2
            for k in range(1, top + 1):
                vector = basis.vector(k)
                assert vector.sup_norm == 1
                for _, c in vector.correction:
                    assert abs(c) <= 1
                for f in spec.functionals:
                    total = f.coeff(vector.unit_index)
                    for j, c in vector.correction:
                        total += f.coeff(j) * c
                    assert total == 0
                for i in range(1, top + 1):
                    value = vector.coord(basis.unit_index(i))
                    assert value == (1 if i == k else 0)
            for i in basis.selection.indices:
                assert coord_l1_certificate(basis, i).passed
            for _ in range(5):
                expected, dense = random_member(rng, basis)
                assert reconstruct(basis, dense) == expected


def test_criterion_2_codim1_oracle():
    with criterion(2, "codim-1 closed form vs Cramer route", 2):
        rng = random.Random(2002)
        done = 0
        while done < 100:
            coeffs = [random_rational(rng) for _ in range(rng.randint(1, 10))]
            f = l1_functional(coeffs)
            if f.is_zero:
                continue
            peak = max(abs(c) for c in f.coeffs)
            if sum(1 for c in f.coeffs if abs(c) == peak) != 1:
                continue
            spec = SubspaceSpec((f,))
            assert construct_basis(spec, select_max_det(spec)) == codim1_closed_form(f)
            done += 1


def test_criterion_3_ck_suite():
    with criterion(3, "tree spaces across ordinals and copies", 60):
        alphas = ["1", "2", "3", "w", "w+1", "w^2", "w^2*2+3"]
        for alpha in alphas:
            for copies in (1, 2):
                desc = SpaceDesc(ord_parse(alpha), copies)
                system = SumSystem(desc)
                indices = system.indices(100)
                vectors = [system.materialize(si) for si in indices]
                for a, fa in enumerate(indices):
                    for b, xb in enumerate(vectors):
                        value = system.eval(fa, xb)
                        assert value == (1 if a == b else 0), (alpha, copies, fa)
                for si, xv in zip(indices, vectors):
                    assert system.element_norm(xv) == 1
                    assert system.functional_norm(si) == 1
                rng = random.Random(3003)
                for _ in range(20):
                    si = rng.choice(indices)
                    y = random_sum_element(rng, system, depth=3, breadth=4)
                    component = y[si.copy - 1]
                    depth = max(
                        _max_block_deep(component), index_weight(si.index), 1
                    ) + 2
                    assert system.eval(si, y) == oracle_series_eval(
                        system.base, si.index, component, depth
                    )
                from auerbach.ck import equals

                for _ in range(50):
                    y = random_sum_element(rng, system, depth=3, breadth=4)
                    coeffs = system.expand(y)
                    rebuilt = system.combine(coeffs)
                    assert all(equals(p, q) for p, q in zip(rebuilt, y))
                    for si, c in coeffs.items():
                        assert system.eval(si, y) == c


def test_criterion_4_cx_suite():
    with criterion(4, "eventually-constant product spaces", 10):
        for d in (1, 2, 3):
            system = CXSystem(d)
            indices = system.indices(50)
            vectors = [system.materialize(i) for i in indices]
            for a, fa in enumerate(indices):
                assert system.functional_norm(fa) == 1
                assert system.vector_norm(vectors[a]) == 1
                for b, xb in enumerate(vectors):
                    value = system.eval(fa, xb)
                    assert value == (1 if a == b else 0)

        # dimension 1 coincides with the c-space system index by index
        system = CXSystem(1)
        y1 = SpaceDesc(ord_parse("1"))
        for position, index in enumerate(system.indices(50)):
            assert index == CXIndex(position, 1)
            tree = materialize(y1, Top(position))
            sequence = system.materialize(index)
            top = tree.max_block
            assert sequence.prefix_len == top
            for k in range(1, top + 1):
                child = tree.child(k)
                value = (child.tail if child else Fraction(0)) + tree.tail
                assert sequence.term(k) == (value,)
            assert sequence.tail == (tree.tail,)
            assert element_norm(tree) == system.vector_norm(sequence)
            assert functional_norm(y1, Top(position)) == system.functional_norm(index)
            for other in system.indices(20):
                assert system.eval(other, sequence) == eval_functional(
                    y1, Top(other.level), tree
                )

        # the all-ones row is essential: without it, constant-tailed
        # profiles (s, t, t, ...) with s != -t stay unreachable
        for rows in range(1, 9):
            assert profile_tail_mismatch(Fraction(1), Fraction(0), rows) != 0
            assert profile_tail_mismatch(Fraction(3), Fraction(-3), rows) == 0
        target = CXSystem(1)
        from auerbach.cx import cx_vector

        reachable = cx_vector([(Fraction(1),)], (Fraction(0),))
        assert target.eval(CXIndex(0, 1), reachable) == Fraction(1, 2)
        assert target.eval(CXIndex(1, 1), reachable) == Fraction(-1, 2)


def test_criterion_5_cli_round_trip(tmp_path):
    with criterion(5, "CLI round-trip and fault injection", 5):
        spec_path = tmp_path / "spec.json"
        spec_path.write_text(json.dumps({
            "functionals": [
                {"coeffs": ["1", "0", "1/2"]},
                {"coeffs": ["0", "1", "2/3"]},
            ]
        }))
        digests = []
        for run in ("first", "second"):
            basis_path = tmp_path / f"basis_{run}.json"
            report_path = tmp_path / f"report_{run}.json"
            verify_path = tmp_path / f"verify_{run}.json"
            assert main([
                "c0", "--input", str(spec_path), "--out", str(basis_path),
                "--verify", "--report", str(report_path),
            ]) == 0
            assert main([
                "verify", "--spec", str(spec_path), "--basis", str(basis_path),
                "--report", str(verify_path),
            ]) == 0
            assert report_path.read_bytes() == verify_path.read_bytes()
            digests.append((basis_path.read_bytes(), report_path.read_bytes()))
        assert digests[0] == digests[1]

        fault_report = tmp_path / "fault.json"
        assert main([
            "c0", "--input", str(spec_path), "--debug-corrupt",
            "--report", str(fault_report),
        ]) == 1
        failing = [
            c for c in json.loads(fault_report.read_text())["checks"]
            if not c["pass"]
        ]
        assert failing and all(c["witness"] for c in failing)
