from unittest import TestCase

import numpy as np

from jackvar.errors import TooFewSamples, InvalidB, InvalidParams
from jackvar.statistics.empirical import from_samples
from jackvar.statistics.estimators import pseudovalues, jackknife_variance, infinitesimal_jackknife_variance, \
    bootstrap_variance, exact_bootstrap_variance, decomposition, estimate_all
from jackvar.statistics.functionals import identity, square, paper_sgn, trimmed, ConstantFunctional, \
    SmoothFunctionOfMean, influence_l_statistic
from jackvar.statistics.models import EstimatorKind
from jackvar.statistics.weights import WeightFunction


def builtin_functionals():
    return [identity(), square(), paper_sgn(), trimmed(WeightFunction.box(0.25)),
            trimmed(WeightFunction.mesa(0.1, 0.25, 0.75, 0.9)), trimmed(WeightFunction.holder_cusp(0.5, 0.1))]


def relative_error(expected: float, actual: float) -> float:
    return abs(expected - actual) / max(abs(expected), 1e-300)


class TestPseudovalues(TestCase):
    def test_mean(self):
        pseudo = pseudovalues(identity(), from_samples([1, 2, 3]))
        np.testing.assert_allclose(pseudo.values, [1, 2, 3], rtol=1e-14)
        self.assertEqual(2.0, pseudo.base_estimate)

    def test_square(self):
        pseudo = pseudovalues(square(), from_samples([1, 2, 3]))
        np.testing.assert_allclose(pseudo.values, [-0.5, 4.0, 7.5], rtol=1e-14)

    def test_constant_functional(self):
        pseudo = pseudovalues(ConstantFunctional(3.0), from_samples([1, 5, 9]))
        self.assertEqual([3.0, 3.0, 3.0], list(pseudo.values))

    def test_too_few(self):
        self.assertRaises(TooFewSamples, pseudovalues, square(), from_samples([1.0]))


class TestJackknife(TestCase):
    def test_examples(self):
        sample = from_samples([1, 2, 3])
        self.assertAlmostEqual(1.0, jackknife_variance(identity(), sample).value, 14)
        self.assertLessEqual(relative_error(193 / 12, jackknife_variance(square(), sample).value), 1e-12)

    def test_constant_sample(self):
        sample = from_samples([5, 5, 5])
        for spec in builtin_functionals():
            self.assertEqual(0.0, jackknife_variance(spec, sample).value, spec.name)
            self.assertEqual(0.0, infinitesimal_jackknife_variance(spec, sample).value, spec.name)
            self.assertEqual(0.0, bootstrap_variance(spec, sample, 10, 1).value, spec.name)

    def test_kind(self):
        estimate = jackknife_variance(square(), from_samples([1, 2, 3]))
        self.assertEqual(EstimatorKind.JACKKNIFE, estimate.kind)
        self.assertEqual(3, estimate.n)
        self.assertAlmostEqual(np.sqrt(193 / 12 / 3), estimate.standard_error, 12)

    def test_exact_mean_relation(self):
        rng = np.random.default_rng(2001)
        for trial in range(100):
            n = int(rng.integers(2, 201))
            generator = [rng.normal, rng.exponential, rng.uniform][trial % 3]
            sample = from_samples(generator(size=n))
            jack = jackknife_variance(identity(), sample).value
            ijack = infinitesimal_jackknife_variance(identity(), sample).value
            self.assertLessEqual(relative_error(n / (n - 1) * ijack, jack), 1e-12, f"n={n}")

    def test_permutation_invariance(self):
        rng = np.random.default_rng(4)
        values = rng.normal(size=30)
        shuffled = rng.permutation(values)
        for spec in builtin_functionals():
            self.assertEqual(jackknife_variance(spec, from_samples(values)).value,
                             jackknife_variance(spec, from_samples(shuffled)).value, spec.name)

    def test_scale_equivariance(self):
        rng = np.random.default_rng(13)
        values = rng.normal(size=50)
        c = 3.0
        for w in [WeightFunction.box(0.2), WeightFunction.mesa(0.1, 0.25, 0.75, 0.9)]:
            spec = trimmed(w)
            base = jackknife_variance(spec, from_samples(values)).value
            scaled = jackknife_variance(spec, from_samples(c * values)).value
            self.assertLessEqual(relative_error(c ** 2 * base, scaled), 1e-10, w.name)

            base = infinitesimal_jackknife_variance(spec, from_samples(values)).value
            scaled = infinitesimal_jackknife_variance(spec, from_samples(c * values)).value
            self.assertLessEqual(relative_error(c ** 2 * base, scaled), 1e-10, w.name)

        # g~(x) = g(cx) on the unscaled data equals g on the scaled data
        chained = SmoothFunctionOfMean("scaled_square", lambda x: (c * np.asarray(x, dtype=float)) ** 2,
                                       lambda x: 2.0 * c * c * np.asarray(x, dtype=float))
        self.assertLessEqual(relative_error(jackknife_variance(square(), from_samples(c * values)).value,
                                            jackknife_variance(chained, from_samples(values)).value), 1e-10)


class TestInfinitesimalJackknife(TestCase):
    def test_examples(self):
        sample = from_samples([1, 2, 3])
        self.assertAlmostEqual(2 / 3, infinitesimal_jackknife_variance(identity(), sample).value, 14)
        self.assertLessEqual(relative_error(32 / 3, infinitesimal_jackknife_variance(square(), sample).value), 1e-12)
        box = trimmed(WeightFunction.box(0.25))
        self.assertAlmostEqual(1.25, infinitesimal_jackknife_variance(box, from_samples([1, 2, 3, 4])).value, 14)

    def test_difference(self):
        sample = from_samples([1, 2, 3])
        difference = jackknife_variance(square(), sample).value - infinitesimal_jackknife_variance(square(), sample).value
        self.assertLessEqual(relative_error(65 / 12, difference), 1e-12)

    def test_dual_route(self):
        rng = np.random.default_rng(17)
        for trial in range(100):
            n = int(rng.integers(2, 80))
            sample = from_samples(rng.uniform(-1, 1, size=n))
            alpha = float(rng.uniform(0.01, 0.4))
            w = WeightFunction.box(alpha) if trial % 2 else WeightFunction.holder_cusp(float(rng.uniform(0.2, 1.0)),
                                                                                      alpha)
            phi = influence_l_statistic(w, sample, sample.values)
            route = float(np.mean(phi ** 2))
            value = infinitesimal_jackknife_variance(trimmed(w), sample).value
            self.assertLessEqual(abs(route - value), 1e-10 * max(route, 1e-300), f"{w.name} n={n}")


class TestBootstrap(TestCase):
    def test_invalid_b(self):
        self.assertRaises(InvalidB, bootstrap_variance, identity(), from_samples([1, 2]), 1, 0)
        self.assertRaises(TooFewSamples, bootstrap_variance, identity(), from_samples([1]), 10, 0)

    def test_determinism(self):
        sample = from_samples(np.random.default_rng(1).normal(size=40))
        first = bootstrap_variance(paper_sgn(), sample, 300, 99)
        second = bootstrap_variance(paper_sgn(), sample, 300, 99)
        self.assertEqual(first.value, second.value)
        self.assertEqual(300, first.bootstrap.b)
        self.assertEqual(99, first.bootstrap.seed)
        self.assertNotEqual(first.value, bootstrap_variance(paper_sgn(), sample, 300, 100).value)

    def test_exact_bootstrap_of_mean(self):
        self.assertAlmostEqual(0.25, exact_bootstrap_variance(identity(), from_samples([0, 1])).value, 14)

        # E*[v_boot] for the mean is the plug-in variance, i.e. v_ijack
        sample = from_samples([0.3, 1.1, 2.0, 4.5, 5.0])
        self.assertAlmostEqual(infinitesimal_jackknife_variance(identity(), sample).value,
                               exact_bootstrap_variance(identity(), sample).value, 12)
        self.assertRaises(InvalidParams, exact_bootstrap_variance, identity(), from_samples(range(9)))

    def test_monte_carlo_converges(self):
        sample = from_samples([0, 1])
        estimate = bootstrap_variance(identity(), sample, 20000, 5).value
        self.assertAlmostEqual(0.25, estimate, delta=0.02)

    def test_nonnegative(self):
        rng = np.random.default_rng(23)
        for spec in builtin_functionals():
            sample = from_samples(rng.normal(size=12))
            self.assertGreaterEqual(bootstrap_variance(spec, sample, 50, 3).value, 0.0)
            self.assertGreaterEqual(jackknife_variance(spec, sample).value, 0.0)
            self.assertGreaterEqual(infinitesimal_jackknife_variance(spec, sample).value, 0.0)


class TestDecomposition(TestCase):
    def test_square_example(self):
        report = decomposition(square(), from_samples([1, 2, 3]))
        np.testing.assert_allclose(report.delta, [-1 / 6, 1 / 3, -1 / 6], rtol=1e-12)
        self.assertAlmostEqual(32 / 3, report.term1, 12)
        self.assertAlmostEqual(16 / 3, report.term2, 12)
        self.assertAlmostEqual(0.0, report.term3, 12)
        self.assertAlmostEqual(1 / 12, report.term4, 12)
        self.assertLessEqual(relative_error(193 / 12, report.reconstructed), 1e-12)

    def test_mean_has_no_remainder(self):
        report = decomposition(identity(), from_samples([1, 4, 2, 8]))
        np.testing.assert_allclose(report.delta, 0.0, atol=1e-12)
        self.assertAlmostEqual(0.0, report.term3, 12)
        self.assertAlmostEqual(0.0, report.term4, 12)

    def test_identity(self):
        rng = np.random.default_rng(31)
        specs = builtin_functionals()
        for trial in range(100):
            spec = specs[trial % len(specs)]
            n = int(rng.integers(2, 120))
            sample = from_samples(rng.normal(0.2, 1.0, size=n))
            jack = jackknife_variance(spec, sample).value
            report = decomposition(spec, sample)
            self.assertLessEqual(abs(report.reconstructed - jack), 1e-10 * max(jack, 1e-300),
                                 f"{spec.name} n={n}")


class TestEstimateAll(TestCase):
    def test_estimate_all(self):
        estimates = estimate_all(square(), from_samples([1, 2, 3]))
        self.assertEqual(4.0, estimates.statistic)
        self.assertIsNone(estimates.bootstrap)
        self.assertLessEqual(relative_error(193 / 12, estimates.jackknife.value), 1e-12)

        with_boot = estimate_all(square(), from_samples([1, 2, 3]), b=50, seed=8)
        self.assertEqual(EstimatorKind.BOOTSTRAP, with_boot.bootstrap.kind)
