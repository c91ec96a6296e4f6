"""
测试 Hadamard 积与 Hadamard 子逆。
"""
import unittest
from fractions import Fraction

from pywfa.errors import AlphabetMismatchError, AmbiguousInput, FieldMismatchError, NotUnambiguous
from pywfa.expressions import Poly, Sum, state_elimination
from pywfa.hadamard import expr_hadamard_subinverse, hadamard_product, hadamard_subinverse
from pywfa.linalg import QQ, PrimeField
from pywfa.series import LinearRep, convert, is_unambiguous
from tests.fixtures import ambiguous, r1, r2, s_mix, two_letter, u_mix


class TestHadamardProduct(unittest.TestCase):
    """测试逐点乘积。"""

    def test_pointwise(self):
        h = hadamard_product(r1(), r2())
        self.assertEqual(h.dim, 2)
        self.assertEqual([h('x' * n) for n in range(4)], [2, 6, 8, 24])

    def test_mismatch(self):
        with self.assertRaises(AlphabetMismatchError):
            hadamard_product(r1(), LinearRep.build(QQ, 'y', [1], {'y': [[1]]}, [1]))
        with self.assertRaises(FieldMismatchError):
            hadamard_product(r1(), LinearRep.build(PrimeField(7), 'x', [1], {'x': [[1]]}, [1]))


class TestSubinverse(unittest.TestCase):
    """测试支撑上逐点取倒数。"""

    def test_automaton(self):
        inverse = hadamard_subinverse(u_mix())
        self.assertTrue(is_unambiguous(inverse))
        self.assertEqual(inverse.states, u_mix().states)
        for n in range(8):
            self.assertEqual(inverse('x' * n), 1 / s_mix()('x' * n))

    def test_product_with_inverse_is_support(self):
        """测试 S ⊙ S⁻¹ 是支撑的特征级数。"""
        a = two_letter()
        h = hadamard_product(convert(a), convert(hadamard_subinverse(a)))
        self.assertEqual(h('aabb'), 1)
        self.assertEqual(h('_'), 1)
        self.assertEqual(h('ba'), 0)

    def test_ambiguous_input(self):
        with self.assertRaises(AmbiguousInput):
            hadamard_subinverse(ambiguous())

    def test_expression(self):
        """测试表达式形式的子逆保留结构与标记。"""
        e = state_elimination(u_mix())
        inverse = expr_hadamard_subinverse(e)
        self.assertEqual(type(inverse), type(e))
        self.assertEqual(inverse.unambiguous, e.unambiguous)
        for n in range(8):
            self.assertEqual(inverse('x' * n), Fraction(1) / s_mix()('x' * n))

    def test_expression_requires_flags(self):
        with self.assertRaises(NotUnambiguous):
            expr_hadamard_subinverse(Sum(Poly.of(QQ, 'x', {'x': 2}), Poly.of(QQ, 'x', {'xx': 3})))


if __name__ == '__main__':
    unittest.main()
