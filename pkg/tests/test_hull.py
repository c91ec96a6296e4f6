"""
测试线性包的计算与包含性证明。
"""
import random
import unittest

from pywfa.config import Config
from pywfa.errors import BudgetExceeded
from pywfa.hull import (certify_containment, containment_bound, linear_hull, orbit_sample,
                        target_map)
from pywfa.linalg import (QQ, PrimeField, Subspace, is_zero_vector, normalize_direction,
                          union_normalize)
from pywfa.minimize import minimal_rep
from pywfa.series import LinearRep
from tests.fixtures import fibonacci, r1, r2, r4, random_rep, s_mix, u_mix


class TestContainmentBound(unittest.TestCase):
    """测试长度界 N。"""

    def test_values(self):
        self.assertEqual(containment_bound(1, 1, 1), 2)
        self.assertEqual(containment_bound(2, 1, 2), 3)
        self.assertEqual(containment_bound(2, 2, 3), 17)
        self.assertEqual(containment_bound(3, 1, 1), 2)

    def test_invalid_arguments(self):
        for args in ((0, 1, 1), (1, 0, 1), (1, 1, 0)):
            with self.assertRaises(ValueError):
                containment_bound(*args)

    def test_budget(self):
        """测试单词数量超出预算时报错。"""
        with self.assertRaises(BudgetExceeded) as ctx:
            containment_bound(3, 2, 4, budget=100)
        self.assertTrue(ctx.exception.evidence().startswith('budget-exceeded'))
        self.assertEqual(containment_bound(2, 1, 2, budget=3), 3)


class TestOrbit(unittest.TestCase):
    """测试轨道样本。"""

    def test_repeated_vectors_not_expanded(self):
        sample = orbit_sample(r2(), None)
        self.assertEqual(sample.words, ((), (0,)))
        self.assertEqual(sample.max_length, 1)

    def test_depth(self):
        sample = orbit_sample(r1(), 3)
        self.assertEqual(len(sample), 4)
        self.assertEqual(sample.vectors[-1], (8,))

    def test_budget(self):
        with self.assertRaises(BudgetExceeded):
            orbit_sample(r1(), 10, budget=5)


class TestLinearHull(unittest.TestCase):
    """测试线性包。"""

    def test_one_dimensional(self):
        hull, certificate = linear_hull(r1())
        self.assertEqual(hull.components, (Subspace.full(QQ, 1),))
        self.assertEqual(certificate.bound, 2)
        self.assertTrue(certificate.verify(r1()))

    def test_finite_projective_orbit(self):
        """测试射影轨道有限时线性包是直线之并。"""
        hull, certificate = linear_hull(r2())
        e1 = Subspace.span(QQ, 2, [(1, 0)])
        e2 = Subspace.span(QQ, 2, [(0, 1)])
        self.assertEqual(hull.components, (e2, e1))
        self.assertEqual(hull.dimension, 1)
        self.assertEqual(certificate.targets, ((1,), (0,)))
        self.assertEqual(certificate.bound, 2)

    def test_full_hull(self):
        """测试轨道 Zariski 稠密时线性包是整个空间。"""
        for factory in (r4, fibonacci):
            hull, _ = linear_hull(factory())
            self.assertEqual(hull.components, (Subspace.full(QQ, 2),))
            self.assertEqual(hull.dimension, 2)

    def test_union_of_planes(self):
        """测试偶数位与奇数位各占一个平面的情形。"""
        hull, certificate = linear_hull(s_mix())
        even = Subspace.span(QQ, 4, [(1, 0, 2, 0), (0, 1, 0, 3)])
        odd = Subspace.span(QQ, 4, [(1, 0, 3, 0), (0, 1, 0, 2)])
        self.assertEqual(hull.components, (even, odd))
        self.assertEqual(certificate.targets, ((1,), (0,)))
        self.assertEqual(certificate.bound, 3)
        self.assertTrue(certificate.verify(s_mix()))

    def test_automaton_input(self):
        hull, _ = linear_hull(u_mix())
        self.assertEqual(hull.dimension, 2)
        self.assertEqual(len(hull.components), 2)

    def test_prime_field(self):
        """测试 F_p 上的精确计算。"""
        f5 = PrimeField(5)
        r = LinearRep.build(f5, 'x', [1], {'x': [[2]]}, [1])
        hull, _ = linear_hull(r)
        self.assertEqual(hull.components, (Subspace.full(f5, 1),))
        r = LinearRep.build(f5, 'x', [1, 0], {'x': [[0, 1], [1, 0]]}, [2, 3])
        hull, _ = linear_hull(r)
        self.assertEqual(len(hull.components), 2)
        self.assertEqual(hull.dimension, 1)

    def test_zero_dimensional(self):
        hull, certificate = linear_hull(LinearRep.zero(QQ, 'x'))
        self.assertTrue(hull.is_empty())
        self.assertEqual(certificate.bound, 0)

    def test_zero_initial_vector(self):
        r = LinearRep.build(QQ, 'x', [0, 0], {'x': [[1, 1], [0, 1]]}, [1, 1])
        hull, _ = linear_hull(r)
        self.assertEqual(hull.components, (Subspace.zero_space(QQ, 2),))

    def test_shallow_search_still_certified(self):
        """测试搜索深度受限时结果仍然包含轨道。"""
        config = Config(hull_max_depth=4, hull_max_components=2)
        hull, certificate = linear_hull(s_mix(), config)
        self.assertTrue(certify_containment(s_mix(), hull, config))
        self.assertTrue(certificate.verify(s_mix(), config))

class TestHullMinimality(unittest.TestCase):
    """测试线性包是包含轨道的最小不变并集。"""

    def assert_dense(self, r, hull, depth):
        sample = orbit_sample(r, depth)
        for i, comp in enumerate(hull.components):
            others = [c for j, c in enumerate(hull.components) if j != i]
            own = [v for v in sample.vectors
                   if comp.contains_vector(v) and not any(c.contains_vector(v) for c in others)]
            self.assertEqual(Subspace.span(r.field, r.dim, own), comp)
            if comp.dim == 2:
                directions = {normalize_direction(v) for v in sample.vectors
                              if comp.contains_vector(v) and not is_zero_vector(v)}
                self.assertGreater(len(directions), 2)

    def test_fixed_series(self):
        for factory in (r1, r2, r4, fibonacci, s_mix):
            r = factory()
            hull, certificate = linear_hull(r)
            self.assert_dense(r, hull, certificate.depth + 2)

    def test_random_representations(self):
        """测试随机极小表示的每个分量都由只落在该分量中的轨道向量张成。"""
        rng = random.Random(20240611)
        checked = 0
        for i in range(24):
            letters = 'x' if i % 3 else 'ab'
            r, _ = minimal_rep(random_rep(rng, letters))
            if r.dim == 0:
                continue
            try:
                hull, certificate = linear_hull(r)
            except BudgetExceeded:
                continue
            self.assertTrue(certificate.verify(r))
            self.assert_dense(r, hull, min(certificate.depth + 2, 12))
            checked += 1
        self.assertGreater(checked, 0)

    def test_krylov_fallback(self):
        """测试分量上限过小时退回整个 Krylov 空间，结果仍包含轨道。"""
        config = Config(hull_max_components=1)
        with self.assertLogs('pywfa', 'INFO') as logs:
            hull, certificate = linear_hull(s_mix(), config)
        self.assertTrue(any('Krylov' in line for line in logs.output))
        self.assertEqual(hull.components, (Subspace.full(QQ, 4),))
        self.assertEqual(certificate.targets, ((0,),))
        self.assertTrue(certificate.verify(s_mix(), config))
        exact, _ = linear_hull(s_mix())
        self.assertTrue(exact.is_subset_of(hull))
        self.assertNotEqual(exact, hull)



class TestContainment(unittest.TestCase):
    """测试包含性证明与目标映射。"""

    def test_certify(self):
        e1 = Subspace.span(QQ, 2, [(1, 0)])
        e2 = Subspace.span(QQ, 2, [(0, 1)])
        self.assertFalse(certify_containment(r2(), union_normalize([e1])))
        self.assertTrue(certify_containment(r2(), union_normalize([e1, e2])))
        self.assertFalse(certify_containment(r4(), union_normalize([e1, e2])))

    def test_target_map_requires_invariance(self):
        e1 = Subspace.span(QQ, 2, [(1, 0)])
        with self.assertRaises(ValueError):
            target_map(r2(), union_normalize([e1]))


if __name__ == '__main__':
    unittest.main()
