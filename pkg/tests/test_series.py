"""
测试字母表、线性表示与加权自动机。
"""
import itertools
import random
import unittest
from fractions import Fraction

from pywfa.errors import AlphabetMismatchError, DimensionMismatchError
from pywfa.linalg import QQ, PrimeField, Residue, dot
from pywfa.series import (Alphabet, LinearRep, WFA, ambiguity_witness, coefficients, convert,
                          eval_rep, eval_wfa, evaluate, is_deterministic, is_trim, is_unambiguous,
                          trim, words_up_to)
from tests.fixtures import (ambiguous, fibonacci, r1, r2, r4, random_rep, random_wfa, s_mix,
                            two_letter, u_mix)


class TestAlphabet(unittest.TestCase):
    """测试字母表与单词。"""

    def test_words(self):
        sigma = Alphabet.of('ab')
        self.assertEqual(sigma.parse_word('_'), ())
        self.assertEqual(sigma.parse_word('ba'), (1, 0))
        self.assertEqual(sigma.format_word(()), '_')
        self.assertEqual(sigma.format_word((1, 0, 0)), 'baa')
        with self.assertRaises(AlphabetMismatchError):
            sigma.parse_word('c')

    def test_invalid_alphabets(self):
        """测试空字母表、重复字母与保留字符。"""
        for letters in ('', 'aa', 'a_', 'a('):
            with self.assertRaises(AlphabetMismatchError):
                Alphabet.of(letters)

    def test_enumeration_order(self):
        """测试单词按长度优先、字母序次之枚举。"""
        words = [Alphabet.of('ab').format_word(w) for w in words_up_to(Alphabet.of('ab'), 2)]
        self.assertEqual(words, ['_', 'a', 'b', 'aa', 'ab', 'ba', 'bb'])


class TestLinearRep(unittest.TestCase):
    """测试线性表示的求值。"""

    def test_examples(self):
        """测试示例级数的前几个系数。"""
        self.assertEqual([r1()('x' * n) for n in range(4)], [1, 2, 4, 8])
        self.assertEqual([r2()('x' * n) for n in range(4)], [2, 3, 2, 3])
        self.assertEqual([r4()('x' * n) for n in range(4)], [2, 5, 13, 35])
        self.assertEqual([fibonacci()('x' * n) for n in range(7)], [0, 1, 1, 2, 3, 5, 8])
        self.assertEqual([s_mix()('x' * n) for n in range(8)], [1, 1, 2, 3, 4, 9, 8, 27])

    def test_eval_rep(self):
        """测试空词、下标单词与字母表不匹配。"""
        self.assertEqual(r2()('_'), 2)
        self.assertEqual(r2()(()), 2)
        self.assertEqual(eval_rep(r2(), (0, 0)), 2)
        self.assertEqual(eval_rep(r1(), 'xxx'), 8)
        with self.assertRaises(AlphabetMismatchError):
            eval_rep(r1(), 'y')
        with self.assertRaises(AlphabetMismatchError):
            eval_rep(r1(), (1,))

    def test_coefficients_match_evaluation(self):
        """测试逐层枚举与逐词求值一致。"""
        a = two_letter()
        r = convert(a)
        for word, value in coefficients(r, 4):
            self.assertEqual(value, evaluate(a, word))
        self.assertEqual(len(coefficients(r, 4)), 31)

    def test_zero_rep(self):
        z = LinearRep.zero(QQ, 'ab')
        self.assertEqual(z.dim, 0)
        self.assertEqual(z('abba'), 0)

    def test_shape_checks(self):
        with self.assertRaises(DimensionMismatchError):
            LinearRep.build(QQ, 'x', [1, 0], {'x': [[1, 0], [0, 1]]}, [1])
        with self.assertRaises(DimensionMismatchError):
            LinearRep.build(QQ, 'x', [1], {'x': [[1, 0]]}, [1])

    def test_prime_field(self):
        """测试 F_5 上的求值。"""
        r = LinearRep.build(PrimeField(5), 'x', [1], {'x': [[2]]}, [1])
        self.assertEqual(r('xxxx'), Residue(1, 5))
        self.assertEqual(r('xxx'), Residue(3, 5))

    def test_split_and_automaton_agree(self):
        """测试 S(uv) = (u·μ(u))·(μ(v)·v)，并与转换后的自动机逐词一致。"""
        rng = random.Random(19)
        for _ in range(8):
            r = random_rep(rng, 'ab')
            a = convert(r)
            for word, value in coefficients(r, 8):
                self.assertEqual(eval_wfa(a, word), value)
                self.assertEqual(eval_rep(r, word), value)
                cut = rng.randint(0, len(word))
                self.assertEqual(dot(r.field, r.left(word[:cut]), r.right(word[cut:])), value)


class TestWFA(unittest.TestCase):
    """测试加权自动机。"""

    def test_evaluation(self):
        a = u_mix()
        self.assertEqual([a('x' * n) for n in range(8)], [1, 1, 2, 3, 4, 9, 8, 27])
        b = two_letter()
        self.assertEqual(b('aab'), 12)
        self.assertEqual(b('ba'), 0)
        self.assertEqual(b('_'), 1)
        self.assertEqual(eval_wfa(convert(r2()), 'xx'), 2)
        self.assertEqual(eval_wfa(WFA.build(QQ, 'x', ['p'], terminal={'p': 1}), 'x'), 0)

    def test_conversion_preserves_series(self):
        """测试线性表示与自动机互相转换时级数不变。"""
        for r in (r1(), r2(), r4(), fibonacci(), s_mix()):
            a = convert(r)
            self.assertEqual(a.states, tuple(str(i + 1) for i in range(r.dim)))
            for word, value in coefficients(r, 6):
                self.assertEqual(a(word), value)
            back = convert(a)
            self.assertEqual(back, r)

    def test_zero_weights_dropped(self):
        a = WFA.build(QQ, 'x', ['p'], initial={'p': 1}, edges={('p', 'x', 'p'): 0},
                      terminal={'p': Fraction(1, 2)})
        self.assertEqual(a.edges, {})
        self.assertEqual(a('_'), Fraction(1, 2))

    def test_invalid_edges(self):
        with self.assertRaises(ValueError):
            WFA.build(QQ, 'x', ['p'], edges={('p', 'x', 'q'): 1})
        with self.assertRaises(AlphabetMismatchError):
            WFA.build(QQ, 'x', ['p'], edges={('p', 'y', 'p'): 1})

    def test_trim(self):
        """测试修剪删除无用状态。"""
        a = WFA.build(QQ, 'x', ['p', 'q', 'dead', 'lost'], initial={'p': 1},
                      edges={('p', 'x', 'q'): 2, ('p', 'x', 'dead'): 1, ('lost', 'x', 'q'): 1},
                      terminal={'q': 3})
        self.assertFalse(is_trim(a))
        t = trim(a)
        self.assertEqual(t.states, ('p', 'q'))
        self.assertTrue(is_trim(t))
        self.assertEqual(t('x'), 6)
        self.assertIs(trim(t), t)

    def test_determinism(self):
        self.assertTrue(is_deterministic(two_letter()))
        self.assertFalse(is_deterministic(u_mix()))
        self.assertFalse(is_deterministic(ambiguous()))

    def test_ambiguity(self):
        """测试歧义见证。"""
        self.assertEqual(ambiguity_witness(ambiguous()), (0,))
        self.assertTrue(is_unambiguous(u_mix()))
        self.assertTrue(is_unambiguous(two_letter()))
        self.assertFalse(is_unambiguous(convert(r4())))
        self.assertEqual(ambiguity_witness(convert(r4())), ())


def _first_ambiguous_word(a: WFA, max_length: int):
    """
    按长度优先、字典序次之枚举单词并逐词计数接受路径，返回第一个有两条路径的单词。
    路径数截断到 2；同一层中计数向量相同的单词后缀行为相同，只保留字典序最小的一个。
    """
    letters = range(len(a.alphabet))
    states = a.states
    level = [((), tuple(1 if q in a.initial else 0 for q in states))]
    for _ in range(max_length + 1):
        following = []
        seen = set()
        for word, counts in level:
            if min(2, sum(c for q, c in zip(states, counts) if q in a.terminal)) >= 2:
                return word
            for x in letters:
                step = dict.fromkeys(states, 0)
                for (src, letter, dst) in a.edges:
                    if letter == x:
                        step[dst] += counts[a.state_index[src]]
                vector = tuple(min(2, step[q]) for q in states)
                if any(vector) and vector not in seen:
                    seen.add(vector)
                    following.append((word + (x,), vector))
        level = following
    return None


def _support_automata(n_states: int, letters: str, initial_sets):
    states = [str(i) for i in range(n_states)]
    slots = [(p, x, q) for p in states for x in letters for q in states]
    finals = [set(c) for k in range(1, n_states + 1) for c in itertools.combinations(states, k)]
    for mask in range(1 << len(slots)):
        edges = {slot: 1 for i, slot in enumerate(slots) if mask >> i & 1}
        for initial in initial_sets:
            for terminal in finals:
                yield WFA.build(QQ, letters, states, initial={q: 1 for q in initial},
                                edges=edges, terminal={q: 1 for q in terminal})


class TestAmbiguityOracle(unittest.TestCase):
    """用逐词的路径计数检验歧义见证。"""

    def assert_matches_path_count(self, a: WFA):
        # 自乘积带分叉标记共 2|Q|² 个结点，最短见证不超过该长度
        bound = 2 * len(a.states) ** 2
        expected = _first_ambiguous_word(a, bound)
        self.assertEqual(ambiguity_witness(a), expected)
        self.assertEqual(is_unambiguous(a), expected is None)

    def test_all_two_state_automata(self):
        """穷举 2 个状态、1 或 2 个字母的所有支撑。"""
        for letters in ('x', 'ab'):
            for a in _support_automata(2, letters, [{'0'}, {'1'}, {'0', '1'}]):
                self.assert_matches_path_count(a)

    def test_all_three_state_unary_automata(self):
        for a in _support_automata(3, 'x', [{'0'}, {'0', '1'}]):
            self.assert_matches_path_count(a)

    def test_random_three_state_automata(self):
        rng = random.Random(29)
        for _ in range(150):
            a = random_wfa(rng, 'ab', density=0.3)
            self.assert_matches_path_count(a)


if __name__ == '__main__':
    unittest.main()
