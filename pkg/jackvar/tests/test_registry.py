from unittest import TestCase

from jackvar.errors import UnknownName, InvalidParams
from jackvar.registry import resolve_functional, resolve_model, functional_names, model_names
from jackvar.simulation.sampling import ModelKind
from jackvar.statistics.weights import WeightKind


class TestRegistry(TestCase):
    def test_functionals(self):
        self.assertEqual("square", resolve_functional("square").name)
        self.assertEqual("identity", resolve_functional(" Identity ").name)
        mesa = resolve_functional("mesa(0.1, 0.25, 0.75, 0.9)")
        self.assertEqual(WeightKind.MESA, mesa.weight.kind)
        self.assertEqual("holder_cusp(0.5,0.1)", resolve_functional("holder_cusp(0.5,0.1)").weight.name)

    def test_models(self):
        model = resolve_model("normal(0, 1)")
        self.assertEqual(ModelKind.NORMAL, model.kind)
        self.assertEqual((0.0, 1.0), model.params)
        self.assertEqual("student_t(2.5)", resolve_model("student_t(2.5)").name)

    def test_unknown_names(self):
        self.assertRaises(UnknownName, resolve_functional, "cube")
        self.assertRaises(UnknownName, resolve_model, "cauchy(0,1)")

    def test_arity(self):
        self.assertRaises(InvalidParams, resolve_functional, "box")
        self.assertRaises(InvalidParams, resolve_functional, "square(2)")
        self.assertRaises(InvalidParams, resolve_model, "exponential")
        self.assertRaises(InvalidParams, resolve_model, "normal(0,1,2)")

    def test_malformed(self):
        self.assertRaises(InvalidParams, resolve_functional, "box(a)")
        self.assertRaises(InvalidParams, resolve_model, "normal(0,1")

    def test_parameter_domain(self):
        self.assertRaises(InvalidParams, resolve_functional, "box(0.5)")
        self.assertRaises(InvalidParams, resolve_functional, "box(0)")
        self.assertRaises(InvalidParams, resolve_functional, "box(-0.1)")
        self.assertEqual("box(0.01)", resolve_functional("box(0.01)").name)
        self.assertRaises(InvalidParams, resolve_model, "uniform(1,0)")

    def test_names(self):
        self.assertIn("paper_sgn", functional_names())
        self.assertEqual(["normal", "uniform", "exponential", "student_t", "two_point"], model_names())
