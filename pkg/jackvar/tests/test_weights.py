from unittest import TestCase

import numpy as np

from jackvar.errors import InvalidParams, QuadratureFailure
from jackvar.statistics.quadrature import adaptive_simpson
from jackvar.statistics.weights import WeightFunction, WeightKind, cell_integrals


class TestAdaptiveSimpson(TestCase):
    def test_polynomial_is_exact(self):
        value, error = adaptive_simpson(lambda x: x ** 3 - 2 * x, 0.0, 2.0)
        self.assertAlmostEqual(0.0, value, 12)

    def test_smooth_function(self):
        value, _ = adaptive_simpson(np.sin, 0.0, np.pi)
        self.assertAlmostEqual(2.0, value, 9)

    def test_reversed_and_empty_interval(self):
        self.assertEqual((0.0, 0.0), adaptive_simpson(np.cos, 1.0, 1.0))
        value, _ = adaptive_simpson(lambda x: x, 1.0, 0.0)
        self.assertAlmostEqual(-0.5, value, 12)

    def test_failure(self):
        self.assertRaises(QuadratureFailure, adaptive_simpson, lambda x: 1.0 / x if x else 0.0, 0.0, 1.0,
                          1e-10, 5)


class TestWeightFunction(TestCase):
    def test_box_support_is_inclusive(self):
        w = WeightFunction.box(0.25)
        self.assertEqual(1.0, w(0.25))
        self.assertEqual(1.0, w(0.75))
        self.assertEqual(0.0, w(0.2))
        self.assertEqual(0.0, w(0.8))
        self.assertEqual("box(0.25)", w.name)

    def test_box_cells(self):
        np.testing.assert_allclose(cell_integrals(WeightFunction.box(0.25), 4), [0, 0.25, 0.25, 0], atol=1e-15)
        np.testing.assert_allclose(cell_integrals(WeightFunction.box(0.0), 5), [0.2] * 5, rtol=1e-14)

    def test_mesa(self):
        w = WeightFunction.mesa(0.1, 0.25, 0.75, 0.9)
        self.assertEqual(WeightKind.MESA, w.kind)
        self.assertAlmostEqual(0.1, w.alpha)
        self.assertAlmostEqual(0.5, w(0.175))
        self.assertEqual(1.0, w(0.5))
        self.assertEqual(0.0, w(0.95))
        self.assertAlmostEqual(0.65, w.integral(), 14)

    def test_mesa_cells_are_symmetric(self):
        weights = cell_integrals(WeightFunction.mesa(0.1, 0.25, 0.75, 0.9), 37)
        np.testing.assert_allclose(weights, weights[::-1], atol=1e-15)
        self.assertAlmostEqual(0.65, float(np.sum(weights)), 12)

    def test_trimmed_cells_are_zero(self):
        weights = cell_integrals(WeightFunction.mesa(0.1, 0.25, 0.75, 0.9), 20)
        self.assertEqual(0.0, weights[0])
        self.assertEqual(0.0, weights[1])
        self.assertEqual(0.0, weights[-1])
        self.assertEqual(0.0, weights[-2])

    def test_holder_cusp(self):
        w = WeightFunction.holder_cusp(0.5, 0.1)
        self.assertEqual(0.5, w.holder_order)
        self.assertEqual("holder_cusp(0.5,0.1)", w.name)
        self.assertAlmostEqual(1.0, w(0.5))
        self.assertAlmostEqual(1.0 - 0.5 ** 0.5, w(0.75))

        # int_{0.1}^{0.9} 1 - |2s - 1|^h ds = 0.8 - 0.8^(h + 1) / (h + 1)
        expected = 0.8 - 0.8 ** 1.5 / 1.5
        self.assertAlmostEqual(expected, float(np.sum(cell_integrals(w, 101))), 12)

    def test_custom_matches_exact(self):
        exact = WeightFunction.mesa(0.1, 0.25, 0.75, 0.9)
        custom = WeightFunction.custom(lambda s: float(exact(s)), 0.1, breakpoints=(0.25, 0.75))
        np.testing.assert_allclose(cell_integrals(custom, 30), cell_integrals(exact, 30), atol=1e-10)

    def test_invalid_parameters(self):
        self.assertRaises(InvalidParams, WeightFunction.box, 0.5)
        self.assertRaises(InvalidParams, WeightFunction.box, -0.1)
        self.assertRaises(InvalidParams, WeightFunction.mesa, 0.3, 0.2, 0.7, 0.9)
        self.assertRaises(InvalidParams, WeightFunction.holder_cusp, 1.5, 0.1)
        self.assertRaises(InvalidParams, WeightFunction.holder_cusp, 0.5, 0.0)
        self.assertRaises(InvalidParams, cell_integrals, WeightFunction.box(0.1), 0)
