"""
Hadamard 积与 Hadamard 子逆。

无歧义级数的每个系数是唯一接受路径上权重的乘积，
因此把所有权重换成倒数即得到支撑上逐点取倒数的级数。
"""
from typing import Dict

from pywfa.errors import AlphabetMismatchError, AmbiguousInput, FieldMismatchError, NotUnambiguous
from pywfa.expressions import Poly, Prod, RatExpr, Star, Sum, iter_nodes
from pywfa.series import LinearRep, WFA, ambiguity_witness


def hadamard_product(r1: LinearRep, r2: LinearRep) -> LinearRep:
    """
    张量积表示：u = u₁⊗u₂，μ(x) = μ₁(x)⊗μ₂(x)，v = v₁⊗v₂，维数 n₁n₂。

    Args:
        r1: 线性表示
        r2: 线性表示

    Returns:
        识别逐点乘积的表示

    Raises:
        FieldMismatchError: 域不一致
        AlphabetMismatchError: 字母表不一致
    """
    if r1.field != r2.field:
        raise FieldMismatchError(f"域不一致: {r1.field} 与 {r2.field}")
    if r1.alphabet != r2.alphabet:
        raise AlphabetMismatchError("字母表不一致")
    u = tuple(a * b for a in r1.u for b in r2.u)
    v = tuple(a * b for a in r1.v for b in r2.v)
    mu = tuple(m1.kron(m2) for m1, m2 in zip(r1.mu, r2.mu))
    return LinearRep(r1.field, r1.alphabet, u, mu, v)


def hadamard_subinverse(a: WFA) -> WFA:
    """
    把无歧义自动机的所有初始、边、终止权重替换为倒数，结构不变。

    Args:
        a: 无歧义加权自动机

    Returns:
        识别 Σ_{w ∈ supp} S(w)⁻¹·w 的自动机

    Raises:
        AmbiguousInput: 自动机有歧义
    """
    witness = ambiguity_witness(a)
    if witness is not None:
        raise AmbiguousInput(a.alphabet.format_word(witness))
    one = a.field.one
    return WFA(a.field, a.alphabet, a.states,
               {s: one / w for s, w in a.initial.items()},
               {e: one / w for e, w in a.edges.items()},
               {s: one / w for s, w in a.terminal.items()})


def expr_hadamard_subinverse(e: RatExpr) -> RatExpr:
    """
    完全无歧义表达式的结构化子逆：每个多项式系数取倒数，运算节点与标记不变。

    Args:
        e: 完全无歧义的表达式

    Returns:
        表示 Hadamard 子逆的表达式

    Raises:
        NotUnambiguous: 存在未标记为无歧义的运算节点
    """
    for node in iter_nodes(e):
        if not isinstance(node, Poly) and not node.unambiguous:
            raise NotUnambiguous(node.kind)
    memo: Dict[int, RatExpr] = {}
    one = e.field.one

    def invert(node: RatExpr) -> RatExpr:
        key = id(node)
        if key not in memo:
            if isinstance(node, Poly):
                memo[key] = Poly(node.field, node.alphabet, tuple((w, one / c) for w, c in node.terms))
            elif isinstance(node, Sum):
                memo[key] = Sum(invert(node.left), invert(node.right), node.unambiguous)
            elif isinstance(node, Prod):
                memo[key] = Prod(invert(node.left), invert(node.right), node.unambiguous)
            else:
                memo[key] = Star(invert(node.child), node.unambiguous)
        return memo[key]

    return invert(e)
