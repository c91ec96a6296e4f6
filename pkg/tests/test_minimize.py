"""
测试极小化与好基。
"""
import random
import unittest

from pywfa.errors import NotMinimalError
from pywfa.linalg import QQ, PrimeField
from pywfa.minimize import (good_basis, hankel_rank, left_spanning_words, minimal_rep,
                            right_spanning_words, transpose_rep)
from pywfa.series import LinearRep, coefficients, convert
from tests.fixtures import fibonacci, r1, r2, r4, s_mix, two_letter, u_mix


class TestMinimalRep(unittest.TestCase):
    """测试极小线性表示。"""

    def assertSameSeries(self, a, b, length=6):
        for (word, x), (_, y) in zip(coefficients(a, length), coefficients(b, length)):
            self.assertEqual(x, y, f"单词 {word} 的系数不同")

    def test_minimal_inputs_keep_dimension(self):
        """测试已极小的表示维数不变。"""
        for factory, dim in ((r1, 1), (r2, 2), (r4, 2), (fibonacci, 2), (s_mix, 4)):
            minimal, certificate = minimal_rep(factory())
            self.assertEqual(minimal.dim, dim)
            self.assertEqual(len(certificate.left_words), dim)
            self.assertEqual(len(certificate.right_words), dim)
            self.assertSameSeries(minimal, factory())

    def test_unreachable_coordinates_removed(self):
        """测试左约化删除不可达的坐标。"""
        r = LinearRep.build(QQ, 'x', [1, 0, 0], {'x': [[2, 0, 0], [0, 3, 0], [0, 0, 5]]}, [1, 1, 1])
        minimal, _ = minimal_rep(r)
        self.assertEqual(minimal.dim, 1)
        self.assertSameSeries(minimal, r1())

    def test_unobservable_coordinates_removed(self):
        """测试右约化删除对系数没有贡献的坐标。"""
        r = LinearRep.build(QQ, 'x', [1, 1], {'x': [[2, 0], [0, 3]]}, [1, 0])
        minimal, _ = minimal_rep(r)
        self.assertEqual(minimal.dim, 1)
        self.assertSameSeries(minimal, r1())

    def test_zero_series(self):
        r = LinearRep.build(QQ, 'x', [1, -1], {'x': [[2, 0], [0, 2]]}, [1, 1])
        minimal, certificate = minimal_rep(r)
        self.assertEqual(minimal.dim, 0)
        self.assertEqual(certificate.left_words, ())
        self.assertEqual(minimal('xx'), 0)

    def test_automaton_input(self):
        """测试直接极小化自动机。"""
        minimal, _ = minimal_rep(u_mix())
        self.assertEqual(minimal.dim, 4)
        self.assertSameSeries(minimal, s_mix(), 8)
        minimal, _ = minimal_rep(two_letter())
        self.assertEqual(minimal.dim, 2)

    def test_prime_field(self):
        """测试 F_3 上 2ⁿ + 1 的表示：系数 2, 0, 2, 0, ...，仍需两维。"""
        r = LinearRep.build(PrimeField(3), 'x', [1, 1], {'x': [[2, 0], [0, 1]]}, [1, 1])
        minimal, _ = minimal_rep(r)
        self.assertEqual(minimal.dim, 2)
        r = LinearRep.build(PrimeField(3), 'x', [1, 2], {'x': [[2, 0], [0, 2]]}, [1, 1])
        self.assertEqual(minimal_rep(r)[0].dim, 0)

    def test_hankel_rank_matches_dimension(self):
        """测试 Hankel 秩等于极小维数。"""
        for factory in (r1, r2, r4, fibonacci, s_mix):
            r = factory()
            self.assertEqual(hankel_rank(r, r.alphabet, 4), minimal_rep(r)[0].dim)
        self.assertEqual(hankel_rank(lambda w: 2 ** len(w), 'x', 3), 1)


class TestSpanningWords(unittest.TestCase):
    """测试张成单词与好基。"""

    def test_breadth_first_words(self):
        words = [w for w, _ in left_spanning_words(s_mix())]
        self.assertEqual(words, [(), (0,), (0, 0), (0, 0, 0)])
        words = [w for w, _ in right_spanning_words(r2())]
        self.assertEqual(words, [(), (0,)])

    def test_transpose_reverses_words(self):
        a = convert(two_letter())
        t = transpose_rep(a)
        self.assertEqual(t('ba'), a('ab'))
        self.assertEqual(t('bba'), a('abb'))

    def test_good_basis(self):
        """测试好基中 v = e₁ 且 u 的坐标是系数 S(w_i)。"""
        for factory in (r2, r4, fibonacci, s_mix):
            minimal, certificate = minimal_rep(factory())
            good = good_basis(minimal, certificate)
            self.assertEqual(good.v, (1,) + (0,) * (good.dim - 1))
            expected = tuple(minimal(w) for w in certificate.right_words)
            self.assertEqual(good.u, expected)
            for (_, x), (_, y) in zip(coefficients(good, 6), coefficients(minimal, 6)):
                self.assertEqual(x, y)

    def test_random_representations(self):
        """测试随机表示：极小化保持系数，维数等于 Hankel 秩。"""
        rng = random.Random(20240601)

        def entries(count):
            return [rng.choice([0, 0, 1, -1, 2]) for _ in range(count)]

        for _ in range(15):
            n = rng.randint(1, 3)
            r = LinearRep.build(QQ, 'ab', entries(n),
                                {x: [entries(n) for _ in range(n)] for x in 'ab'}, entries(n))
            minimal, _ = minimal_rep(r)
            self.assertLessEqual(minimal.dim, n)
            self.assertEqual(minimal.dim, hankel_rank(r, r.alphabet, n))
            for (word, x), (_, y) in zip(coefficients(minimal, 4), coefficients(r, 4)):
                self.assertEqual(x, y, word)

    def test_good_basis_requires_minimal(self):
        r = LinearRep.build(QQ, 'x', [1, 0], {'x': [[2, 0], [0, 2]]}, [1, 1])
        with self.assertRaises(NotMinimalError):
            good_basis(r)


if __name__ == '__main__':
    unittest.main()
