import unittest
from fractions import Fraction

from sparse_trace.core.intmath import echelon_columns, integer_det, lattice_basis
from sparse_trace.core.supports.classify import (
    MonodromyOutlook,
    defect,
    essential_complement,
    has_positive_mixed_volume_by_defect,
    is_abundant,
    is_lacunary,
    is_triangular,
    lacunary_reduction,
    monodromy_outlook,
    triangular_reduction,
    triangular_witnesses,
)
from sparse_trace.core.supports.lattice import (
    Support,
    SupportCollection,
    check_subset,
    collection_lattice,
    difference_lattice,
)
from sparse_trace.core.supports.monomial import MonomialMap
from sparse_trace.core.supports.offsets import as_fraction, exit_parameters, offset, tal_candidate, unnecessary_candidate
from sparse_trace.core.supports.omega import RootsOfUnity, omega_support
from sparse_trace.err import CapacityError, NonIntegralError, PreconditionError, SerializationError

HEXAGON = [[0, 0], [1, 0], [2, 0], [1, 1], [3, 1], [0, 2], [1, 2], [2, 2], [1, 3], [2, 3], [1, 4], [2, 4]]
RECTANGLE = [[a, b] for a in range(3) for b in range(4)]
EVEN = [[0, 0], [2, 0], [4, 0], [3, 1], [0, 2], [2, 2]]
STRETCHED = ([[0, 0], [1, 0], [1, 2]], [[0, 0], [1, 0], [0, 2], [1, 2]])
SEGMENT_FIRST = ([[0, 0], [1, 0], [2, 0]], [[0, 0], [1, 0], [0, 1], [2, 1], [1, 1], [0, 2]])


# Unit test for Support and SupportCollection

class TestSupport(unittest.TestCase):
    def setUp(self):
        """
        Set up the test case with the hexagon and rectangle of the worked pencil.
        """
        self.pencil = SupportCollection.from_lists([HEXAGON, RECTANGLE])

    def test_points_are_sorted(self):
        """
        Test that points are stored in lexicographic order.
        """
        support = Support.from_points([[1, 0], [0, 0], [0, 1]])
        self.assertEqual(support.points, ((0, 0), (0, 1), (1, 0)))
        self.assertEqual(support.ambient_dim, 2)

    def test_duplicate_point(self):
        """
        Test that duplicate points are refused.
        """
        with self.assertRaises(PreconditionError) as ctx:
            Support.from_points([[0, 0], [0, 0]])
        self.assertEqual(ctx.exception.code, "duplicate_point")

    def test_dimension_mismatch(self):
        """
        Test that points of different lengths are refused.
        """
        with self.assertRaises(PreconditionError) as ctx:
            Support.from_points([[0, 0], [1, 0, 0]])
        self.assertEqual(ctx.exception.code, "dimension_mismatch")

    def test_non_integer_exponent(self):
        """
        Test that fractional exponents are refused.
        """
        with self.assertRaises(PreconditionError) as ctx:
            Support.from_points([[0, 0.5]])
        self.assertEqual(ctx.exception.code, "non_integer_exponent")

    def test_contains_and_set_operations(self):
        """
        Test membership, union, difference and subset checks.
        """
        a = Support.from_points([[0, 0], [1, 0]])
        b = Support.from_points([[1, 0], [0, 1]])
        self.assertIn((1, 0), a)
        self.assertIn([0, 0], a)
        self.assertNotIn((0, 1), a)
        self.assertEqual(len(a.union(b)), 3)
        self.assertEqual(a.difference(b).points, ((0, 0),))
        self.assertTrue(a.difference(b).issubset(a))

    def test_normalized(self):
        """
        Test that normalizing moves the coordinate minima to zero.
        """
        support = Support.from_points([[2, -1], [3, 4]])
        moved, shift = support.normalized()
        self.assertEqual(shift, (-2, 1))
        self.assertEqual(moved.min_corner(), (0, 0))

    def test_collection_deserialize(self):
        """
        Test that a collection survives serialization and bad payloads are refused.
        """
        again = SupportCollection.deserialize(self.pencil.serialize())
        self.assertEqual(again, self.pencil)
        with self.assertRaises(SerializationError):
            SupportCollection.deserialize({"n": 2})

    def test_square(self):
        """
        Test the square check.
        """
        self.assertTrue(self.pencil.square())
        with self.assertRaises(PreconditionError) as ctx:
            SupportCollection.from_lists([HEXAGON]).require_square()
        self.assertEqual(ctx.exception.code, "not_square")

    def test_check_subset(self):
        """
        Test validation of 0-based index subsets.
        """
        self.assertEqual(check_subset([1, 0, 1], 2), (0, 1))
        with self.assertRaises(PreconditionError) as ctx:
            check_subset([], 2)
        self.assertEqual(ctx.exception.code, "empty_subset")
        with self.assertRaises(PreconditionError) as ctx:
            check_subset([2], 2)
        self.assertEqual(ctx.exception.code, "bad_subset")


# Unit test for difference lattices

class TestLattice(unittest.TestCase):
    def test_pencil_is_saturated(self):
        """
        Test that the pencil supports generate all of Z^2.
        """
        info = collection_lattice(SupportCollection.from_lists([HEXAGON, RECTANGLE]))
        self.assertEqual(info.rank, 2)
        self.assertEqual(info.index, 1)
        self.assertTrue(info.contains_unit(0))

    def test_even_support(self):
        """
        Test a support of index two whose lattice misses e1.
        """
        info = difference_lattice(Support.from_points(EVEN))
        self.assertEqual(info.index, 2)
        self.assertFalse(info.contains_unit(0))
        self.assertFalse(info.contains_unit(1))
        self.assertTrue(info.contains((1, 1)))

    def test_stretched_support(self):
        """
        Test a lacunary collection whose lattice still contains e1.
        """
        info = collection_lattice(SupportCollection.from_lists(list(STRETCHED)))
        self.assertEqual(info.index, 2)
        self.assertEqual(info.invariant_factors, (1, 2))
        self.assertTrue(info.contains_unit(0))
        self.assertFalse(info.contains_unit(1))

    def test_rank_deficient(self):
        """
        Test that a segment has rank one and infinite index.
        """
        info = difference_lattice(Support.from_points([[0, 0], [1, 0], [2, 0]]))
        self.assertEqual(info.rank, 1)
        self.assertFalse(info.full_rank)
        self.assertEqual(info.serialize()["index"], "inf")

    def test_singleton(self):
        """
        Test that a single point has the zero lattice.
        """
        info = difference_lattice(Support.from_points([[3, 3]]))
        self.assertEqual(info.rank, 0)

    def test_translation_invariant(self):
        """
        Test that translating a support does not change its difference lattice.
        """
        for points in (HEXAGON, EVEN, STRETCHED[0]):
            support = Support.from_points(points)
            info = difference_lattice(support)
            for shift in ((3, -2), (-5, 7), (0, 1)):
                moved = difference_lattice(support.translate(shift))
                self.assertEqual(moved.rank, info.rank)
                self.assertEqual(moved.index, info.index)
                self.assertEqual(moved.invariant_factors, info.invariant_factors)
                self.assertTrue(all(moved.contains(v) for v in support.differences()))


# Unit test for MonomialMap

class TestMonomialMap(unittest.TestCase):
    def setUp(self):
        """
        Set up the test case with a unimodular shear.
        """
        self.shear = MonomialMap.from_rows([[1, 0], [-2, 1]])

    def test_apply_point(self):
        """
        Test the action on exponents.
        """
        self.assertEqual(self.shear.apply_point((1, 2)), (1, 0))
        self.assertEqual(self.shear.inverse_point((1, 0)), (1, 2))
        self.assertTrue(self.shear.is_unimodular())

    def test_torus_map(self):
        """
        Test the torus map phi(y)_i = y^(Phi e_i).
        """
        image = self.shear.torus_map([2.0, 3.0])
        self.assertAlmostEqual(image[0], 2.0 / 9.0)
        self.assertAlmostEqual(image[1], 3.0)

    def test_inverse_and_compose(self):
        """
        Test that composing with the inverse gives the identity.
        """
        self.assertEqual(self.shear.compose(self.shear.inverse()), MonomialMap.identity(2))

    def test_singular(self):
        """
        Test that singular matrices are refused.
        """
        with self.assertRaises(PreconditionError) as ctx:
            MonomialMap.from_rows([[1, 2], [2, 4]])
        self.assertEqual(ctx.exception.code, "singular_map")

    def test_non_integral_preimage(self):
        """
        Test that a preimage outside Z^n raises NonIntegralError.
        """
        stretch = MonomialMap.from_rows([[1, 0], [0, 2]])
        self.assertEqual(stretch.determinant, 2)
        with self.assertRaises(NonIntegralError):
            stretch.inverse_point((0, 1))
        with self.assertRaises(NonIntegralError):
            stretch.inverse()

    def test_serialize(self):
        """
        Test the matrix payload.
        """
        payload = self.shear.serialize()
        self.assertEqual(payload, {"matrix": [[1, 0], [-2, 1]], "determinant": 1})
        self.assertEqual(MonomialMap.deserialize(payload), self.shear)


# Unit test for the classification predicates

class TestClassify(unittest.TestCase):
    def setUp(self):
        """
        Set up the test case with the pencil, lacunary and triangular collections.
        """
        self.pencil = SupportCollection.from_lists([HEXAGON, RECTANGLE])
        self.even = SupportCollection.from_lists([EVEN, EVEN])
        self.stretched = SupportCollection.from_lists(list(STRETCHED))
        self.segment_first = SupportCollection.from_lists(list(SEGMENT_FIRST))

    def test_defect(self):
        """
        Test defects of single members and of the whole collection.
        """
        self.assertEqual(defect(self.segment_first, [0]), 0)
        self.assertEqual(defect(self.segment_first, [1]), 1)
        self.assertEqual(defect(self.pencil, [0, 1]), 0)

    def test_positive_mixed_volume(self):
        """
        Test the defect criterion on a degenerate and a generic collection.
        """
        flat = SupportCollection.from_lists([[[0, 0], [1, 0]], [[0, 0], [1, 0]]])
        self.assertFalse(has_positive_mixed_volume_by_defect(flat))
        self.assertTrue(has_positive_mixed_volume_by_defect(self.pencil))

    def test_lacunary(self):
        """
        Test the lacunary predicate.
        """
        self.assertFalse(is_lacunary(self.pencil))
        self.assertTrue(is_lacunary(self.even))
        self.assertTrue(is_lacunary(self.stretched))

    def test_triangular(self):
        """
        Test the least triangular witness.
        """
        self.assertIsNone(is_triangular(self.pencil))
        self.assertEqual(is_triangular(self.segment_first), (0,))
        self.assertEqual(triangular_witnesses(self.segment_first), ((0,),))

    def test_triangular_capacity(self):
        """
        Test that the triangularity search refuses large dimensions.
        """
        n = 9
        unit = [[0] * n] + [[1 if i == j else 0 for i in range(n)] for j in range(n)]
        with self.assertRaises(CapacityError):
            is_triangular(SupportCollection.from_lists([unit] * n))

    def test_lacunary_reduction(self):
        """
        Test that the reduction maps back onto the translated input.
        """
        reduction = lacunary_reduction(self.stretched)
        self.assertEqual(abs(reduction.phi.determinant), 2)
        self.assertFalse(is_lacunary(reduction.reduced))
        self.assertEqual(reduction.phi.apply_collection(reduction.reduced), self.stretched.translate(reduction.shifts))
        with self.assertRaises(PreconditionError) as ctx:
            lacunary_reduction(self.pencil)
        self.assertEqual(ctx.exception.code, "not_lacunary")

    def test_triangular_reduction(self):
        """
        Test that the reduced witness only uses the leading coordinate.
        """
        reduction = triangular_reduction(self.segment_first, [0])
        self.assertTrue(reduction.phi.is_unimodular())
        self.assertTrue(all(p[1] == 0 for p in reduction.reduced[0].points))
        with self.assertRaises(PreconditionError) as ctx:
            triangular_reduction(self.even, [0, 1])
        self.assertEqual(ctx.exception.code, "unit_not_in_lattice")

    def test_essential_complement(self):
        """
        Test the essential subcollection completing {0, e1}.
        """
        self.assertEqual(essential_complement(self.pencil), (0, 1))
        self.assertEqual(essential_complement(self.segment_first), (0,))

    def test_monodromy_outlook(self):
        """
        Test the predicted monodromy shapes.
        """
        self.assertEqual(monodromy_outlook(self.pencil), MonodromyOutlook.SYMMETRIC)
        self.assertEqual(monodromy_outlook(self.even), MonodromyOutlook.IMPRIMITIVE)
        self.assertEqual(monodromy_outlook(self.segment_first), MonodromyOutlook.IMPRIMITIVE)


# Unit test for offsets and the candidate sets

class TestOffsets(unittest.TestCase):
    def setUp(self):
        """
        Set up the test case with the pencil supports.
        """
        self.pencil = SupportCollection.from_lists([HEXAGON, RECTANGLE])

    def test_as_fraction(self):
        """
        Test parsing of exact rationals.
        """
        self.assertEqual(as_fraction("1/2"), Fraction(1, 2))
        self.assertEqual(as_fraction(3), Fraction(3))
        with self.assertRaises(PreconditionError) as ctx:
            as_fraction(0.5)
        self.assertEqual(ctx.exception.code, "inexact_rational")
        with self.assertRaises(PreconditionError) as ctx:
            as_fraction("half")
        self.assertEqual(ctx.exception.code, "bad_rational")

    def test_exit_parameters(self):
        """
        Test the exit parameters of a few hexagon points.
        """
        params = exit_parameters(self.pencil[0])
        self.assertEqual(params[(0, 0)], 2)
        self.assertEqual(params[(2, 2)], Fraction(2, 3))
        self.assertEqual(params[(1, 3)], Fraction(4, 3))
        self.assertEqual(params[(3, 1)], 0)

    def test_rectangle_offsets(self):
        """
        Test offsets of the rectangle at the levels 0, 1/2 and 1.
        """
        rectangle = self.pencil[1]
        last = {(2, b) for b in range(4)}
        self.assertEqual(set(offset(rectangle, 0).points), last)
        self.assertEqual(set(offset(rectangle, "1/2").points), last)
        self.assertEqual(set(offset(rectangle, 1).points), last | {(1, b) for b in range(4)})
        with self.assertRaises(PreconditionError) as ctx:
            offset(rectangle, -1)
        self.assertEqual(ctx.exception.code, "negative_offset")

    def test_tal_candidate(self):
        """
        Test that the candidate is the set where the two pencil systems differ.
        """
        tal = tal_candidate(self.pencil)
        self.assertEqual(
            set(tal[0].points), {(0, 0), (1, 0), (1, 1), (0, 2), (1, 2), (2, 2), (1, 3), (1, 4)}
        )
        self.assertEqual(set(tal[1].points), {(a, b) for a in (0, 1) for b in range(4)})
        self.assertTrue(is_abundant(tal))

    def test_unnecessary_candidate(self):
        """
        Test the unnecessary candidate, which is not abundant here.
        """
        unnecessary = unnecessary_candidate(self.pencil)
        self.assertEqual(set(unnecessary[0].points), {(0, 0), (1, 1), (0, 2), (1, 2), (1, 3)})
        self.assertEqual(set(unnecessary[1].points), {(0, b) for b in range(4)})
        self.assertFalse(is_abundant(unnecessary))

    def test_offset_is_monotone(self):
        """
        Test that raising the level never removes points from the offset.
        """
        levels = [Fraction(0), Fraction(1, 3), Fraction(1, 2), Fraction(2, 3), Fraction(1), Fraction(3, 2), Fraction(4)]
        for support in (self.pencil[0], self.pencil[1], Support.from_points(EVEN)):
            previous = offset(support, levels[0])
            for level in levels[1:]:
                current = offset(support, level)
                self.assertTrue(previous.issubset(current), (support, level))
                previous = current
            self.assertEqual(previous, support)

    def test_candidates_are_nested(self):
        """
        Test that the unnecessary candidate lies inside the affine-linear candidate.
        """
        collections = (
            self.pencil,
            SupportCollection.from_lists([EVEN, EVEN]),
            SupportCollection.from_lists(list(STRETCHED)),
            SupportCollection.from_lists(list(SEGMENT_FIRST)),
        )
        for collection in collections:
            self.assertTrue(unnecessary_candidate(collection).issubset(tal_candidate(collection)))


# Unit test for roots of unity filtering

class TestOmega(unittest.TestCase):
    def test_fixes(self):
        """
        Test which exponents a sign vector fixes.
        """
        omega = RootsOfUnity.from_signs((-1, 1))
        self.assertTrue(omega.fixes((2, 3)))
        self.assertFalse(omega.fixes((1, 0)))
        self.assertEqual(omega.serialize(), {"orders": [2, 2], "residues": [1, 0]})

    def test_zero_order(self):
        """
        Test that order zero is refused.
        """
        with self.assertRaises(PreconditionError) as ctx:
            RootsOfUnity((0, 2), (0, 1))
        self.assertEqual(ctx.exception.code, "zero_order")

    def test_omega_support(self):
        """
        Test that filtering keeps exactly the odd first exponents.
        """
        pencil = SupportCollection.from_lists([HEXAGON, RECTANGLE])
        filtered = omega_support(pencil, RootsOfUnity.from_signs((-1, 1)))
        self.assertEqual(filtered.delta, 2)
        for member in filtered.members:
            self.assertTrue(all(p[0] % 2 == 1 for p in member.points))

    def test_empty_member(self):
        """
        Test that a member fixed entirely by omega does not count.
        """
        even = SupportCollection.from_lists([EVEN, [[0, 0], [1, 0], [0, 1]]])
        filtered = omega_support(even, RootsOfUnity.from_signs((-1, -1)))
        self.assertTrue(filtered.members[0].is_empty())
        self.assertEqual(filtered.delta, 1)



# Unit test for the integer echelon form

class TestIntegerEchelon(unittest.TestCase):
    def test_gcd_of_a_line(self):
        """
        Test that 4 and 6 generate 2Z.
        """
        self.assertEqual(lattice_basis([[4], [6]], 1), [(2,)])
        self.assertEqual(lattice_basis([[-9], [0], [6]], 1), [(3,)])

    def test_transform_is_unimodular(self):
        """
        Test that the echelon transform is unimodular and reproduces the columns.
        """
        columns = [[0, 3], [5, -7], [2, 2]]
        echelon, transform, zeros = echelon_columns(columns, 2)
        self.assertEqual(zeros, 1)
        self.assertEqual(echelon[0], [0, 0])
        self.assertEqual(abs(integer_det(transform)), 1)
        for column, coeffs in zip(echelon, transform):
            combined = [sum(c * g[i] for c, g in zip(coeffs, columns)) for i in range(2)]
            self.assertEqual(combined, list(column))
        self.assertEqual(abs(integer_det(echelon[1:])), 3)


if __name__ == "__main__":
    unittest.main()
