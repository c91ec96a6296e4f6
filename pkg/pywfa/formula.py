"""
指数公式模块

把完全无歧义的有理表达式（有理数域上）写成
S(w) = λ₁^{a₁(w)} ⋯ λ_k^{a_k(w)}（w ∈ L）或 0（w ∉ L），
其中 a_i 是整数权重的线性表示，由和、积、星号三种组合子结构递归构造。
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from sympy import factorint

from pywfa.algebra import (characteristic_rep, rep_constant, rep_difference, rep_polynomial,
                           rep_product, rep_star, rep_sum)
from pywfa.errors import NonRationalFieldError, NotUnambiguous
from pywfa.expressions import Poly, Prod, RatExpr, Star, Sum, SupportNFA, iter_nodes, nfa_star
from pywfa.linalg import QQ
from pywfa.series import LinearRep, eval_rep
from pywfa.utils import Word, logger


def exponent_sum(a: LinearRep, b: LinearRep) -> LinearRep:
    """支撑不相交时的组合：C = A + B。"""
    return rep_sum(a, b)


def exponent_product(a: LinearRep, b: LinearRep, left: SupportNFA, right: SupportNFA) -> LinearRep:
    """
    连接无歧义时的组合：C = A·1_K + 1_L·B，对 w = uv（u ∈ L, v ∈ K）有 C(w) = A(u) + B(v)。

    Args:
        a: 左因子的指数级数，supp(a) ⊆ L
        b: 右因子的指数级数，supp(b) ⊆ K
        left: 语言 L
        right: 语言 K

    Returns:
        整数权重的线性表示
    """
    return rep_sum(rep_product(a, characteristic_rep(right, QQ)),
                   rep_product(characteristic_rep(left, QQ), b))


def exponent_star(a: LinearRep, language: SupportNFA) -> LinearRep:
    """
    L 是码时的组合：C = (1 − 1_{L*}·A)·((1_L + A)* − 1_{L*})，
    对 w = w₁⋯w_l（w_i ∈ L）有 C(w) = A(w₁) + ⋯ + A(w_l)。

    Args:
        a: 子式的指数级数，supp(a) ⊆ L
        language: 码 L

    Returns:
        整数权重的线性表示
    """
    char_l = characteristic_rep(language, QQ)
    char_star = characteristic_rep(nfa_star(language), QQ)
    one = rep_constant(QQ, a.alphabet, 1)
    left = rep_difference(one, rep_product(char_star, a))
    right = rep_difference(rep_star(rep_sum(char_l, a)), char_star)
    return rep_product(left, right)


@dataclass(frozen=True)
class ExponentFormula:
    """
    指数公式：常数 λ_i、整数权重的指数级数 a_i、支撑语言 L，
    以及线性有界常数 C（对非空单词 |a_i(w)| ≤ C|w|）。
    """

    lambdas: Tuple[Fraction, ...]
    exponents: Tuple[LinearRep, ...]
    support: SupportNFA
    bound: int

    def exponents_of(self, word) -> Tuple[int, ...]:
        """a₁(w), ..., a_k(w)。"""
        values = []
        for rep in self.exponents:
            value = eval_rep(rep, word)
            if value.denominator != 1:
                raise RuntimeError(f"指数级数取到非整数值 {value}")
            values.append(int(value))
        return tuple(values)

    def evaluate(self, word) -> Fraction:
        """
        由公式计算 S(w)。

        Args:
            word: 单词

        Returns:
            w ∈ L 时为 ∏ λ_i^{a_i(w)}，否则为 0
        """
        if not self.support.accepts(word):
            return Fraction(0)
        result = Fraction(1)
        for lam, exponent in zip(self.lambdas, self.exponents_of(word)):
            result *= lam ** exponent
        return result

    def __call__(self, word) -> Fraction:
        return self.evaluate(word)


def _factor(c: Fraction) -> Dict[int, int]:
    # p 进赋值，符号不计入
    valuation = dict(factorint(abs(c.numerator)))
    for p, k in factorint(c.denominator).items():
        valuation[p] = valuation.get(p, 0) - k
    return {int(p): int(k) for p, k in valuation.items() if k != 0 and p != 1}


def _atom_exponents(c: Fraction, primes: Sequence[int]) -> Tuple[int, ...]:
    valuation = _factor(c)
    return (1 if c < 0 else 0,) + tuple(valuation.get(p, 0) for p in primes)


def extract_formula(e: RatExpr) -> ExponentFormula:
    """
    从完全无歧义的表达式提取指数公式。

    λ 取 −1 以及所有多项式系数分子、分母中出现的素数（升序）；
    多项式原子的指数是符号位与各素数的赋值，运算节点使用三种组合子。

    Args:
        e: 所有运算节点都标记为无歧义的有理数域表达式

    Returns:
        ExponentFormula对象

    Raises:
        NonRationalFieldError: 表达式不在有理数域上
        NotUnambiguous: 存在未标记为无歧义的运算节点
    """
    if e.field != QQ:
        raise NonRationalFieldError(f"指数公式只支持有理数域，而不是 {e.field}")
    nodes = list(iter_nodes(e))
    polys: List[Poly] = []
    for node in nodes:
        if isinstance(node, Poly):
            polys.append(node)
        elif not node.unambiguous:
            raise NotUnambiguous(node.kind)

    primes = sorted({p for poly in polys for _, c in poly.terms for p in _factor(c)})
    lambdas = (Fraction(-1),) + tuple(Fraction(p) for p in primes)
    k = len(lambdas)
    alphabet = e.alphabet

    memo: Dict[int, Tuple[LinearRep, ...]] = {}

    def build(node: RatExpr) -> Tuple[LinearRep, ...]:
        key = id(node)
        if key in memo:
            return memo[key]
        if isinstance(node, Poly):
            atoms = [(w, _atom_exponents(c, primes)) for w, c in node.terms]
            result = tuple(rep_polynomial(QQ, alphabet, {w: exps[i] for w, exps in atoms})
                           for i in range(k))
        elif isinstance(node, Sum):
            left, right = build(node.left), build(node.right)
            result = tuple(exponent_sum(a, b) for a, b in zip(left, right))
        elif isinstance(node, Prod):
            left, right = build(node.left), build(node.right)
            result = tuple(exponent_product(a, b, node.left.support, node.right.support)
                           for a, b in zip(left, right))
        elif isinstance(node, Star):
            child = build(node.child)
            result = tuple(exponent_star(a, node.child.support) for a in child)
        else:
            raise TypeError(f"未知的表达式节点: {type(node).__name__}")
        memo[key] = result
        return result

    exponents = build(e)

    largest = max((abs(x) for poly in polys for _, c in poly.terms
                   for x in _atom_exponents(c, primes)), default=0)
    # 每个常数项叶子在一次星号迭代中至多使用一次，迭代次数不超过 |w|
    constant_leaves = _constant_leaf_count(e)
    bound = largest * (1 + 2 * constant_leaves) if constant_leaves else largest
    logger.info("指数公式: λ = %s, 指数级数维数 %s, C = %d",
                [str(x) for x in lambdas], [r.dim for r in exponents], bound)
    return ExponentFormula(lambdas, exponents, e.support, bound)


def formula_exponent_table(formula: ExponentFormula, words: Sequence[Word]) -> List[Tuple[Word, Tuple[int, ...]]]:
    """支撑中各单词的指数向量，用于报告。"""
    return [(w, formula.exponents_of(w)) for w in words if formula.support.accepts(w)]


def _constant_leaf_count(e: RatExpr) -> int:
    # 展开成树后带常数项的多项式叶子个数
    memo: Dict[int, int] = {}

    def count(node: RatExpr) -> int:
        key = id(node)
        if key not in memo:
            if isinstance(node, Poly):
                memo[key] = 1 if node.terms and node.terms[0][0] == () else 0
            else:
                memo[key] = sum(count(child) for child in node.children())
        return memo[key]

    return count(e)
