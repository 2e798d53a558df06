import unittest

import pytest

from sparse_trace.base.polysys.system import SparseSystem, TorusPoint, random_system
from sparse_trace.base.solver.torus import solve_torus
from sparse_trace.config.common.families import simplex_points
from sparse_trace.config.common.loader import fixture_path, read_json
from sparse_trace.config.models.settings import TraceTestConfig
from sparse_trace.core.supports.lattice import SupportCollection
from sparse_trace.core.supports.offsets import tal_candidate, unnecessary_candidate
from sparse_trace.err import PreconditionError
from sparse_trace.logic.traces import collinear, monomial_trace, relative_gap, trace, trace_vector
from sparse_trace.logic.tracetest import Verdict, constant_sparse_trace_test, sparse_trace_test

EVEN = [[0, 0], [2, 0], [4, 0], [3, 1], [0, 2], [2, 2]]


# Unit test for trace helpers

class TestTraces(unittest.TestCase):
    def test_trace(self):
        """
        Test coordinate sums and the monomial trace.
        """
        points = [TorusPoint((1.0, 2.0)), TorusPoint((3.0, -1.0))]
        self.assertEqual(trace(points), 4.0)
        self.assertEqual(trace(points, 1), 1.0)
        self.assertEqual(list(trace_vector(points)), [4.0, 1.0])
        self.assertEqual(monomial_trace(points, (1, 2)), 1.0 * 4.0 + 3.0 * 1.0)

    def test_empty(self):
        """
        Test that the trace of nothing is refused.
        """
        with self.assertRaises(PreconditionError) as ctx:
            trace([])
        self.assertEqual(ctx.exception.code, "empty_solution_set")

    def test_collinear(self):
        """
        Test the collinearity decision and its residual.
        """
        ok, residual = collinear(1.0, 2.0, 3.0)
        self.assertTrue(ok)
        self.assertEqual(residual, 0.0)
        ok, residual = collinear(0.0, 1.0, 0.0, rel_tol=1e-6)
        self.assertFalse(ok)
        self.assertEqual(residual, 1.0)

    def test_relative_gap(self):
        """
        Test the scaled distance between two traces.
        """
        self.assertEqual(relative_gap(100.0, 101.0), 1.0 / 101.0)
        self.assertEqual(relative_gap(0.0, 0.5), 0.5)


# Unit test for sparse_trace_test on the worked pencil

class TestSparseTraceTest(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        """
        Solve the worked target system once for every test.
        """
        cls.system = SparseSystem.deserialize(read_json(fixture_path("pencil_target.json")))
        cls.collection = cls.system.collection
        cls.solved = solve_torus(cls.system, 0)

    def test_full_set_passes(self):
        """
        Test that the complete solution set passes.
        """
        report = sparse_trace_test(self.collection, self.system, self.solved.points, seed=1, solved=self.solved)
        self.assertEqual(report.verdict, Verdict.PASS)
        self.assertTrue(report.passed)
        self.assertLessEqual(report.collinearity_residual, report.tolerance)
        self.assertEqual([t for t, _ in report.samples], [0.0, 0.5, 1.0])
        self.assertEqual(report.diagnostics["mv"], 17)
        self.assertTrue(report.diagnostics["two_sided"])

    def test_missing_point_fails(self):
        """
        Test that dropping a solution makes the traces bend.
        """
        partial = self.solved.points[:-1]
        report = sparse_trace_test(self.collection, self.system, partial, seed=1, solved=self.solved)
        self.assertEqual(report.verdict, Verdict.FAIL)
        self.assertGreater(report.collinearity_residual, report.tolerance)

    def test_serialize(self):
        """
        Test the report payload.
        """
        report = sparse_trace_test(self.collection, self.system, self.solved.points, seed=2, solved=self.solved)
        payload = report.serialize()
        self.assertEqual(payload["algorithm"], "sparse")
        self.assertEqual(payload["verdict"], "pass")
        self.assertIn("g", payload["diagnostics"])

    @pytest.mark.slow
    def test_soundness_over_seeds(self):
        """
        Test that the complete set passes for twenty seeds.
        """
        for seed in range(20):
            report = sparse_trace_test(self.collection, self.system, self.solved.points, seed=seed, solved=self.solved)
            self.assertTrue(report.passed, seed)

    def _code(self, **kwargs) -> str:
        args = {
            "collection": self.collection,
            "system": self.system,
            "points": self.solved.points,
            "seed": 0,
            "solved": self.solved,
        }
        args.update(kwargs)
        with self.assertRaises(PreconditionError) as ctx:
            sparse_trace_test(**args)
        return ctx.exception.code

    def test_collection_mismatch(self):
        """
        Test that the system must live on the collection.
        """
        other = SupportCollection.from_lists([simplex_points(2, 2)] * 2)
        self.assertEqual(self._code(collection=other), "collection_mismatch")

    def test_not_subset(self):
        """
        Test that B must lie inside the collection.
        """
        part = SupportCollection.from_lists([[[5, 5]], [[0, 0]]])
        self.assertEqual(self._code(part=part), "not_subset")

    def test_not_abundant(self):
        """
        Test that a thin B is refused unless one-sided runs are allowed.
        """
        thin = unnecessary_candidate(self.collection)
        self.assertEqual(self._code(part=thin), "not_abundant")
        report = sparse_trace_test(
            self.collection, self.system, self.solved.points, thin, 0, TraceTestConfig(one_sided=True), self.solved
        )
        self.assertFalse(report.diagnostics["two_sided"])

    def test_not_tal(self):
        """
        Test that B outside the candidate is refused unless assumed.
        """
        self.assertEqual(self._code(part=self.collection), "not_tal")
        report = sparse_trace_test(
            self.collection, self.system, self.solved.points, self.collection, 0, TraceTestConfig(assume_tal=True), self.solved
        )
        self.assertTrue(report.diagnostics["candidate_override"])

    def test_empty_and_duplicate(self):
        """
        Test the solution set contract.
        """
        self.assertEqual(self._code(points=[]), "empty_solution_set")
        first = self.solved.points[0]
        self.assertEqual(self._code(points=[first, first]), "duplicate_solution")

    def test_not_a_solution(self):
        """
        Test that a non-solution is refused.
        """
        self.assertEqual(self._code(points=[TorusPoint((1.0, 1.0))]), "not_a_solution")

    def test_lacunary(self):
        """
        Test that lacunary collections are refused.
        """
        collection = SupportCollection.from_lists([EVEN, EVEN])
        system = random_system(collection, 0)
        with self.assertRaises(PreconditionError) as ctx:
            sparse_trace_test(collection, system, [TorusPoint((1.0, 1.0))])
        self.assertEqual(ctx.exception.code, "lacunary")

    def test_zero_mixed_volume(self):
        """
        Test that collections without isolated solutions are refused.
        """
        collection = SupportCollection.from_lists([[[0, 0], [1, 0]], [[0, 0], [2, 0]]])
        system = random_system(collection, 0)
        with self.assertRaises(PreconditionError) as ctx:
            sparse_trace_test(collection, system, [TorusPoint((1.0, 1.0))])
        self.assertEqual(ctx.exception.code, "zero_mixed_volume")

    def test_not_square(self):
        """
        Test that non-square collections are refused.
        """
        collection = SupportCollection.from_lists([[[0, 0], [1, 0], [0, 1]]])
        system = random_system(collection, 0)
        with self.assertRaises(PreconditionError) as ctx:
            sparse_trace_test(collection, system, [TorusPoint((1.0, 1.0))])
        self.assertEqual(ctx.exception.code, "not_square")


# Unit test for constant_sparse_trace_test

class TestConstantTraceTest(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        """
        Solve a random pair of dense cubics once for every test.
        """
        cls.collection = SupportCollection.from_lists([simplex_points(3, 2)] * 2)
        cls.system = random_system(cls.collection, 21)
        cls.solved = solve_torus(cls.system, 21)

    def test_candidate_is_low_degree(self):
        """
        Test that the unnecessary candidate of a dense cubic is its linear part.
        """
        candidate = unnecessary_candidate(self.collection)
        self.assertEqual(set(candidate[0].points), {(0, 0), (1, 0), (0, 1)})
        self.assertTrue(candidate.issubset(tal_candidate(self.collection)))

    def test_full_set_passes(self):
        """
        Test that the trace of the complete set stays put.
        """
        self.assertEqual(self.solved.certified_count, 9)
        report = constant_sparse_trace_test(self.collection, self.system, self.solved.points, seed=4, solved=self.solved)
        self.assertTrue(report.passed)
        self.assertEqual(report.algorithm, "constant")
        self.assertEqual(len(report.samples), 2)

    def test_missing_point_fails(self):
        """
        Test that a proper subset changes its trace.
        """
        report = constant_sparse_trace_test(
            self.collection, self.system, self.solved.points[:5], seed=4, solved=self.solved
        )
        self.assertEqual(report.verdict, Verdict.FAIL)

    def test_not_unnecessary(self):
        """
        Test that B outside the unnecessary candidate is refused.
        """
        with self.assertRaises(PreconditionError) as ctx:
            constant_sparse_trace_test(
                self.collection, self.system, self.solved.points, tal_candidate(self.collection), solved=self.solved
            )
        self.assertEqual(ctx.exception.code, "not_unnecessary")


if __name__ == "__main__":
    unittest.main()
