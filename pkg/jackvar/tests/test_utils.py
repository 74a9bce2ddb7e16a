from unittest import TestCase

from jackvar.utils import parse_call, format_call, format_float, geometric_grid, parse_grid, format_grid


class TestUtils(TestCase):
    def test_parse_call(self):
        self.assertEqual(("square", []), parse_call("square"))
        self.assertEqual(("mesa", [0.1, 0.25, 0.75, 0.9]), parse_call("mesa(0.1, 0.25, 0.75, 0.9)"))
        self.assertEqual(("student_t", [2.5]), parse_call("  Student_T( 2.5 ) "))
        self.assertEqual(("identity", []), parse_call("identity()"))
        self.assertRaises(ValueError, parse_call, "box(")
        self.assertRaises(ValueError, parse_call, "box(0.1,)")
        self.assertRaises(ValueError, parse_call, "")

    def test_format_call(self):
        self.assertEqual("normal(0,1)", format_call("normal", [0.0, 1.0]))
        self.assertEqual("box(0.25)", format_call("box", [0.25]))
        self.assertEqual("paper_sgn", format_call("paper_sgn", []))

    def test_format_float(self):
        self.assertEqual("", format_float(None))
        self.assertEqual("0.10000000000000001", format_float(0.1))
        self.assertEqual(0.1, float(format_float(0.1)))

    def test_grid(self):
        self.assertEqual([64, 128, 256, 512, 1024, 2048, 4096], parse_grid("64..4096"))
        self.assertEqual([64, 128, 256], geometric_grid(64, 500))
        self.assertEqual([10, 20, 50], parse_grid("10, 20,50"))
        self.assertEqual("10,20,50", format_grid([10, 20, 50]))
        self.assertRaises(ValueError, geometric_grid, 0, 10)
        self.assertRaises(ValueError, parse_grid, "10,x")
