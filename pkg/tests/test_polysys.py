import unittest

import numpy as np

from sparse_trace.base.polysys.homotopy import SegmentFamily
from sparse_trace.base.polysys.system import (
    SparseSystem,
    TorusPoint,
    agree_outside,
    apply_monomial_map,
    newton_residual,
    random_system,
    resample,
    split,
)
from sparse_trace.config.common.loader import fixture_path, read_json
from sparse_trace.core.supports.lattice import SupportCollection
from sparse_trace.core.supports.monomial import MonomialMap
from sparse_trace.core.supports.offsets import tal_candidate, unnecessary_candidate
from sparse_trace.err import NonIntegralError, PreconditionError, SerializationError


def _load(name: str) -> SparseSystem:
    return SparseSystem.deserialize(read_json(fixture_path(name)))


# Unit test for TorusPoint

class TestTorusPoint(unittest.TestCase):
    def test_zero_coordinate(self):
        """
        Test that points off the torus are refused.
        """
        with self.assertRaises(PreconditionError) as ctx:
            TorusPoint((1.0, 0.0))
        self.assertEqual(ctx.exception.code, "zero_coordinate")

    def test_deserialize(self):
        """
        Test reading a point and refusing a malformed one.
        """
        point = TorusPoint.deserialize([{"re": 1.0, "im": 2.0}, {"re": -1.0, "im": 0.0}])
        self.assertEqual(point[0], 1 + 2j)
        self.assertEqual(len(point), 2)
        with self.assertRaises(SerializationError):
            TorusPoint.deserialize([{"re": 1.0}])


# Unit test for SparseSystem

class TestSparseSystem(unittest.TestCase):
    def setUp(self):
        """
        Set up the test case with the two systems of the worked pencil.
        """
        self.target = _load("pencil_target.json")
        self.start = _load("pencil_start.json")
        self.rng = np.random.default_rng(3)

    def _point(self, n: int) -> np.ndarray:
        return self.rng.normal(size=n) + 1j * self.rng.normal(size=n)

    def test_evaluate(self):
        """
        Test evaluation at (1, 1), which sums the coefficients.
        """
        values = self.target.evaluate([1.0, 1.0])
        np.testing.assert_allclose(values, [26.0, 13.0])

    def test_jacobian_matches_finite_differences(self):
        """
        Test the Jacobian against central differences.
        """
        x = self._point(2)
        jac = self.target.jacobian(x)
        h = 1e-6
        for j in range(2):
            e = np.zeros(2, complex)
            e[j] = h
            column = (self.target.evaluate(x + e) - self.target.evaluate(x - e)) / (2 * h)
            np.testing.assert_allclose(jac[:, j], column, rtol=1e-5, atol=1e-6)

    def test_coefficient_mismatch(self):
        """
        Test that coefficient rows must match the supports.
        """
        with self.assertRaises(PreconditionError) as ctx:
            SparseSystem(self.target.collection, [[1.0], [1.0]])
        self.assertEqual(ctx.exception.code, "coefficient_mismatch")

    def test_serialize(self):
        """
        Test that a serialized system reads back unchanged.
        """
        self.assertEqual(SparseSystem.deserialize(self.target.serialize()), self.target)

    def test_deserialize_errors(self):
        """
        Test that malformed payloads raise SerializationError.
        """
        with self.assertRaises(SerializationError):
            SparseSystem.deserialize({"collection": {"n": 2, "supports": [[[0, 0]]]}})
        with self.assertRaises(SerializationError):
            SparseSystem.deserialize(
                {"collection": {"n": 1, "supports": [[[0], [1]]]}, "coefficients": [[{"re": 1.0}, {"re": 2.0, "im": 0.0}]]}
            )
        with self.assertRaises(SerializationError):
            SparseSystem.deserialize([])

    def test_pencil_agrees_outside_candidate(self):
        """
        Test that the pencil endpoints only differ on the affine-linear candidate.
        """
        tal = tal_candidate(self.target.collection)
        self.assertTrue(agree_outside(self.target, self.start, tal))
        self.assertFalse(agree_outside(self.target, self.start, unnecessary_candidate(self.target.collection)))

    def test_split(self):
        """
        Test that the two parts of a split add up to the system.
        """
        tal = tal_candidate(self.target.collection)
        inside, outside = split(self.target, tal)
        self.assertEqual(inside + outside, self.target)
        self.assertEqual(inside.coefficient(0, (2, 4)), 0)
        self.assertEqual(outside.coefficient(0, (2, 4)), 3)

    def test_resample(self):
        """
        Test that resampling keeps the coefficients outside B.
        """
        tal = tal_candidate(self.target.collection)
        fresh = resample(self.target, tal, seed=5)
        self.assertTrue(agree_outside(self.target, fresh, tal))
        self.assertNotEqual(fresh, self.target)
        self.assertEqual(resample(self.target, tal, seed=5), fresh)

    def test_random_system_is_deterministic(self):
        """
        Test that the same seed gives the same coefficients.
        """
        collection = self.target.collection
        self.assertEqual(random_system(collection, 11), random_system(collection, 11))
        self.assertNotEqual(random_system(collection, 11), random_system(collection, 12))
        moduli = np.abs(random_system(collection, 11).flat)
        self.assertTrue(np.all((moduli >= 0.5) & (moduli <= 1.5)))

    def test_shift(self):
        """
        Test that shifting multiplies each equation by a monomial.
        """
        x = self._point(2)
        shifted = self.target.shift([[1, -1], [0, 2]])
        expected = self.target.evaluate(x) * np.array([x[0] / x[1], x[1] ** 2])
        np.testing.assert_allclose(shifted.evaluate(x), expected)

    def test_apply_monomial_map(self):
        """
        Test both directions of a monomial change of coordinates.
        """
        shear = MonomialMap.from_rows([[1, 0], [-2, 1]])
        y = self._point(2)
        moved = apply_monomial_map(self.target, shear)
        np.testing.assert_allclose(self.target.evaluate(shear.torus_map(y)), moved.evaluate(y))
        pulled = apply_monomial_map(self.target, shear, inverse=True)
        np.testing.assert_allclose(pulled.evaluate(shear.torus_map(y)), self.target.evaluate(y))

    def test_monomial_map_round_trip(self):
        """
        Test that moving a system by a map and pulling it back restores it.
        """
        for rows in ([[1, 0], [-2, 1]], [[0, 1], [1, 0]], [[2, 1], [1, 1]]):
            phi = MonomialMap.from_rows(rows)
            moved = apply_monomial_map(self.target, phi)
            self.assertEqual(apply_monomial_map(moved, phi, inverse=True), self.target)

    def test_random_moduli(self):
        """
        Test that a thousand random systems keep every coefficient modulus in [0.5, 1.5].
        """
        collection = SupportCollection.from_lists([[[0, 0], [1, 0], [0, 1]], [[0, 0], [2, 1]]])
        rng = np.random.default_rng(17)
        moduli = np.concatenate([np.abs(random_system(collection, rng).flat) for _ in range(1000)])
        self.assertEqual(moduli.size, 5000)
        self.assertGreaterEqual(moduli.min(), 0.5)
        self.assertLessEqual(moduli.max(), 1.5)

    def test_non_integral_pullback(self):
        """
        Test that pulling back along a non-unimodular map can fail.
        """
        with self.assertRaises(NonIntegralError):
            apply_monomial_map(self.target, MonomialMap.from_rows([[2, 0], [0, 1]]), inverse=True)

    def test_restrict_and_project(self):
        """
        Test restriction to a subsystem and dropping an unused coordinate.
        """
        collection = SupportCollection.from_lists([[[0, 0], [2, 0]], [[0, 0], [0, 1]]])
        system = SparseSystem(collection, [[1.0, -4.0], [1.0, 1.0]])
        first = system.restrict([0]).project(1)
        self.assertEqual(first.ambient_dim, 1)
        np.testing.assert_allclose(first.evaluate([0.5]), [0.0])
        with self.assertRaises(PreconditionError) as ctx:
            system.restrict([1]).project(1)
        self.assertEqual(ctx.exception.code, "not_projectable")

    def test_newton_residual(self):
        """
        Test that a root has a tiny residual and a random point does not.
        """
        collection = SupportCollection.from_lists([[[0, 0], [1, 0]], [[0, 0], [0, 1]]])
        system = SparseSystem(collection, [[-2.0, 1.0], [-3.0, 1.0]])
        self.assertLess(newton_residual(system, [2.0, 3.0]), 1e-14)
        self.assertGreater(newton_residual(system, [1.0, 1.0]), 0.1)


# Unit test for SegmentFamily

class TestSegmentFamily(unittest.TestCase):
    def setUp(self):
        """
        Set up the test case with the pencil between the two worked systems.
        """
        self.family = SegmentFamily(_load("pencil_target.json"), _load("pencil_start.json"))

    def test_endpoints(self):
        """
        Test that the segment hits both systems exactly.
        """
        self.assertEqual(self.family.at(1), self.family.target)
        self.assertEqual(self.family.at(0), self.family.start)

    def test_midpoint(self):
        """
        Test the coefficients halfway along the segment.
        """
        half = self.family.coefficients(0.5)
        np.testing.assert_allclose(half, (self.family.target.flat + self.family.start.flat) / 2)

    def test_reversed(self):
        """
        Test that reversing swaps the endpoints.
        """
        back = self.family.reversed()
        self.assertEqual(back.target, self.family.start)

    def test_bad_gamma(self):
        """
        Test that gamma must lie on the unit circle.
        """
        with self.assertRaises(PreconditionError) as ctx:
            SegmentFamily(self.family.target, self.family.start, gamma=2.0)
        self.assertEqual(ctx.exception.code, "bad_gamma")


if __name__ == "__main__":
    unittest.main()
