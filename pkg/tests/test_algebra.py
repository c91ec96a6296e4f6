"""
测试线性表示的有理运算。
"""
import unittest
from fractions import Fraction

from pywfa.algebra import (rep_constant, rep_difference, rep_polynomial, rep_product, rep_scale,
                           rep_star, rep_sum)
from pywfa.errors import AlphabetMismatchError, FieldMismatchError, StarOnNonproperError
from pywfa.linalg import QQ, PrimeField
from pywfa.series import LinearRep, convert, is_deterministic
from tests.fixtures import r1, r2, r4


def _x(n: int) -> str:
    return 'x' * n


class TestRationalOperations(unittest.TestCase):
    """测试和、积与星号。"""

    def test_sum_and_difference(self):
        s = rep_sum(r1(), r2())
        self.assertEqual([s(_x(n)) for n in range(4)], [3, 5, 6, 11])
        d = rep_difference(r4(), r1())
        self.assertEqual([d(_x(n)) for n in range(4)], [1, 3, 9, 27])

    def test_scale(self):
        s = rep_scale(Fraction(1, 2), r1())
        self.assertEqual(s(_x(3)), 4)

    def test_product(self):
        """测试 Cauchy 积：2ⁿ 与自身的积为 (n+1)·2ⁿ。"""
        p = rep_product(r1(), r1())
        self.assertEqual([p(_x(n)) for n in range(5)], [1, 4, 12, 32, 80])
        p = rep_product(rep_constant(QQ, 'x', 3), r1())
        self.assertEqual([p(_x(n)) for n in range(3)], [3, 6, 12])

    def test_star(self):
        """测试 (2x)* = Σ 2ⁿxⁿ 与 (x + x²)* 的 Fibonacci 系数。"""
        s = rep_star(rep_polynomial(QQ, 'x', {(0,): 2}))
        self.assertEqual([s(_x(n)) for n in range(5)], [1, 2, 4, 8, 16])
        f = rep_star(rep_polynomial(QQ, 'x', {(0,): 1, (0, 0): 1}))
        self.assertEqual([f(_x(n)) for n in range(7)], [1, 1, 2, 3, 5, 8, 13])

    def test_star_requires_proper(self):
        with self.assertRaises(StarOnNonproperError):
            rep_star(r1())

    def test_compatibility(self):
        with self.assertRaises(AlphabetMismatchError):
            rep_sum(r1(), LinearRep.build(QQ, 'y', [1], {'y': [[1]]}, [1]))
        with self.assertRaises(FieldMismatchError):
            rep_product(r1(), LinearRep.build(PrimeField(3), 'x', [1], {'x': [[1]]}, [1]))


class TestPolynomials(unittest.TestCase):
    """测试常数与多项式。"""

    def test_constant(self):
        c = rep_constant(QQ, 'ab', 5)
        self.assertEqual(c('_'), 5)
        self.assertEqual(c('a'), 0)
        self.assertEqual(rep_constant(QQ, 'ab', 0).dim, 0)

    def test_polynomial(self):
        """测试前缀树表示是确定性的。"""
        p = rep_polynomial(QQ, 'ab', {(): 1, (0, 1): 2, (0, 0): -3})
        self.assertEqual(p('_'), 1)
        self.assertEqual(p('ab'), 2)
        self.assertEqual(p('aa'), -3)
        self.assertEqual(p('a'), 0)
        self.assertEqual(p('ba'), 0)
        self.assertEqual(p.dim, 4)
        self.assertTrue(is_deterministic(convert(p)))

    def test_zero_polynomial(self):
        self.assertEqual(rep_polynomial(QQ, 'a', {(0,): 0}).dim, 0)


if __name__ == '__main__':
    unittest.main()
