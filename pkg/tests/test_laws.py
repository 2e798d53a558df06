import unittest

import pytest

from sparse_trace.base.polysys.system import SparseSystem, random_system
from sparse_trace.config.common.loader import fixture_path, read_json
from sparse_trace.config.common.standard import CommonSupportStandard
from sparse_trace.core.supports.offsets import tal_candidate, unnecessary_candidate
from sparse_trace.err import PreconditionError
from sparse_trace.logic.laws import (
    TraceBehaviour,
    classify_linearity,
    classify_traces,
    lacunary_trace_check,
    triangular_trace_check,
)


# Unit test for classify_traces

class TestClassifyTraces(unittest.TestCase):
    def test_constant(self):
        """
        Test that equal samples are constant.
        """
        self.assertEqual(classify_traces([2.0] * 5)[0], TraceBehaviour.CONSTANT)

    def test_affine(self):
        """
        Test that evenly spaced samples are affine linear.
        """
        self.assertEqual(classify_traces([1.0 + 0.5j * k for k in range(6)])[0], TraceBehaviour.AFFINE_LINEAR)

    def test_nonlinear(self):
        """
        Test that squares are neither.
        """
        behaviour, first, second, scale = classify_traces([float(k * k) for k in range(5)])
        self.assertEqual(behaviour, TraceBehaviour.NONLINEAR)
        self.assertEqual(second, 2.0)
        self.assertEqual(scale, 16.0)


# Unit test for classify_linearity on the worked pencil

class TestClassifyLinearity(unittest.TestCase):
    def setUp(self):
        """
        Set up the test case with the worked target system.
        """
        self.system = SparseSystem.deserialize(read_json(fixture_path("pencil_target.json")))
        self.collection = self.system.collection

    def test_tal_candidate_is_affine(self):
        """
        Test that moving the candidate coefficients moves the trace on a line.
        """
        report = classify_linearity(self.collection, self.system, tal_candidate(self.collection), num_t=5, seed=3)
        self.assertIn(report.classification, (TraceBehaviour.AFFINE_LINEAR, TraceBehaviour.CONSTANT))
        self.assertEqual(len(report.traces), 5)

    @pytest.mark.slow
    def test_unnecessary_candidate_is_constant(self):
        """
        Test that moving the unnecessary coefficients keeps the trace.
        """
        report = classify_linearity(self.collection, self.system, unnecessary_candidate(self.collection), seed=3)
        self.assertEqual(report.classification, TraceBehaviour.CONSTANT)

    @pytest.mark.slow
    def test_whole_collection_is_nonlinear(self):
        """
        Test that moving every coefficient bends the trace.
        """
        report = classify_linearity(self.collection, self.system, self.collection, seed=3)
        self.assertEqual(report.classification, TraceBehaviour.NONLINEAR)

    def test_too_few_samples(self):
        """
        Test that fewer than five samples are refused.
        """
        with self.assertRaises(PreconditionError) as ctx:
            classify_linearity(self.collection, self.system, self.collection, num_t=3)
        self.assertEqual(ctx.exception.code, "too_few_samples")


# Unit test for the lacunary and triangular trace relations

class TestTraceLaws(unittest.TestCase):
    def setUp(self):
        """
        Set up the test case with the shipped lacunary and triangular families.
        """
        self.standard = CommonSupportStandard()

    def test_lacunary_vanishing(self):
        """
        Test that the first trace vanishes when e1 is outside the lattice.
        """
        collection = self.standard.build("lacunary_even")
        report = lacunary_trace_check(collection, random_system(collection, 5), seed=5)
        self.assertEqual(report.law, "lacunary_vanishing")
        self.assertTrue(report.holds)
        self.assertEqual(report.factor, 0)
        self.assertEqual(report.diagnostics["index"], 2)
        self.assertTrue(report.subset_check["holds"])

    def test_lacunary_index(self):
        """
        Test that the first trace is twice the reduced trace.
        """
        collection = self.standard.build("lacunary_stretched")
        report = lacunary_trace_check(collection, random_system(collection, 6), seed=6)
        self.assertEqual(report.law, "lacunary_index")
        self.assertTrue(report.holds)
        self.assertEqual(report.factor, 2)
        self.assertEqual(report.diagnostics["reduced_mv"], 2)
        self.assertTrue(report.subset_check["holds"])

    def test_not_lacunary(self):
        """
        Test that a saturated collection is refused.
        """
        collection = self.standard.build("dense_quadrics")
        with self.assertRaises(PreconditionError) as ctx:
            lacunary_trace_check(collection, random_system(collection, 0))
        self.assertEqual(ctx.exception.code, "not_lacunary")

    def test_triangular_plane(self):
        """
        Test that the first trace is twice the trace of the first equation.
        """
        collection = self.standard.build("triangular_plane")
        report = triangular_trace_check(collection, random_system(collection, 7), seed=7)
        self.assertTrue(report.holds)
        self.assertEqual(report.factor, 2)
        self.assertEqual(report.diagnostics["witness"], [0])
        self.assertTrue(report.subset_check["holds"])

    def test_triangular_space(self):
        """
        Test the factor three relation in three variables.
        """
        collection = self.standard.build("triangular_space")
        report = triangular_trace_check(collection, random_system(collection, 8), seed=8)
        self.assertTrue(report.holds)
        self.assertEqual(report.factor, 3)
        self.assertEqual(report.diagnostics["witness"], [1, 2])

    def test_not_triangular(self):
        """
        Test that a collection without a witness is refused.
        """
        system = SparseSystem.deserialize(read_json(fixture_path("pencil_target.json")))
        with self.assertRaises(PreconditionError) as ctx:
            triangular_trace_check(system.collection, system)
        self.assertEqual(ctx.exception.code, "not_triangular")


if __name__ == "__main__":
    unittest.main()
