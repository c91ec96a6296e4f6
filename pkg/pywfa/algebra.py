"""
线性表示的有理运算：和、数乘、Cauchy 积、星号、常数、多项式与特征级数。

当运算本身无歧义时（支撑不相交、分解唯一、支撑是码），
这些构造得到的自动机保持无歧义性。
"""
from typing import Mapping, Optional, Sequence

from pywfa.errors import AlphabetMismatchError, FieldMismatchError, StarOnNonproperError
from pywfa.linalg import Field, Matrix, Scalar, dot, mat_vec, vec_mat
from pywfa.series import Alphabet, LinearRep
from pywfa.utils import Word


def _check_compatible(a: LinearRep, b: LinearRep) -> None:
    if a.field != b.field:
        raise FieldMismatchError(f"域不一致: {a.field} 与 {b.field}")
    if a.alphabet != b.alphabet:
        raise AlphabetMismatchError("字母表不一致")


def block_matrix(field: Field, blocks: Sequence[Sequence[Optional[Matrix]]],
                 sizes: Sequence[int]) -> Matrix:
    """
    由分块拼成方阵，None 表示零块。

    Args:
        field: 域
        blocks: 分块网格，blocks[i][j] 的形状为 sizes[i]×sizes[j]
        sizes: 各块的维数

    Returns:
        拼接后的矩阵
    """
    total = sum(sizes)
    zero = field.zero
    rows = []
    for i, size_i in enumerate(sizes):
        for r in range(size_i):
            row = []
            for j, size_j in enumerate(sizes):
                block = blocks[i][j]
                row.extend(block.entries[r] if block is not None else (zero,) * size_j)
            rows.append(tuple(row))
    return Matrix(field, total, total, tuple(rows))


def _outer(field: Field, column: Sequence[Scalar], row: Sequence[Scalar]) -> Matrix:
    return Matrix(field, len(column), len(row), tuple(tuple(c * x for x in row) for c in column))


def rep_constant(field: Field, alphabet, c) -> LinearRep:
    """常数级数 c·ε。"""
    alphabet = Alphabet.of(alphabet)
    c = field.coerce(c)
    if c == 0:
        return LinearRep.zero(field, alphabet)
    return LinearRep.build(field, alphabet, [c], [[[0]] for _ in alphabet.letters], [1])


def rep_polynomial(field: Field, alphabet, terms: Mapping[Word, Scalar]) -> LinearRep:
    """
    多项式的前缀树表示：状态为支撑中单词的前缀，单词的系数放在终止权重上。

    Args:
        field: 域
        alphabet: 字母表
        terms: 单词到系数的映射

    Returns:
        确定性的线性表示
    """
    alphabet = Alphabet.of(alphabet)
    support = {w: field.coerce(c) for w, c in terms.items() if c != 0}
    if not support:
        return LinearRep.zero(field, alphabet)
    prefixes = sorted({w[:i] for w in support for i in range(len(w) + 1)},
                      key=lambda w: (len(w), w))
    index = {p: i for i, p in enumerate(prefixes)}
    n = len(prefixes)
    grids = [[[field.zero] * n for _ in range(n)] for _ in alphabet.letters]
    for p in prefixes:
        if p:
            grids[p[-1]][index[p[:-1]]][index[p]] = field.one
    u = [field.one] + [field.zero] * (n - 1)
    v = [support.get(p, field.zero) for p in prefixes]
    return LinearRep.build(field, alphabet, u, grids, v)


def rep_sum(a: LinearRep, b: LinearRep) -> LinearRep:
    """直和表示，识别 A + B。"""
    _check_compatible(a, b)
    sizes = (a.dim, b.dim)
    mu = tuple(block_matrix(a.field, [[ma, None], [None, mb]], sizes)
               for ma, mb in zip(a.mu, b.mu))
    return LinearRep(a.field, a.alphabet, a.u + b.u, mu, a.v + b.v)


def rep_scale(c, a: LinearRep) -> LinearRep:
    """数乘 c·A。"""
    c = a.field.coerce(c)
    return LinearRep(a.field, a.alphabet, tuple(c * x for x in a.u), a.mu, a.v)


def rep_difference(a: LinearRep, b: LinearRep) -> LinearRep:
    """A − B。"""
    return rep_sum(a, rep_scale(-1, b))


def rep_product(a: LinearRep, b: LinearRep) -> LinearRep:
    """
    Cauchy 积 A·B：u = (u₁, A(ε)u₂)，μ(x) = [[μ₁(x), μ₁(x)v₁u₂], [0, μ₂(x)]]，v = (0; v₂)。

    Args:
        a: 左因子
        b: 右因子

    Returns:
        识别 A·B 的表示
    """
    _check_compatible(a, b)
    field = a.field
    constant = dot(field, a.u, a.v)
    sizes = (a.dim, b.dim)
    mu = []
    for ma, mb in zip(a.mu, b.mu):
        jump = _outer(field, mat_vec(field, ma, a.v), b.u)
        mu.append(block_matrix(field, [[ma, jump], [None, mb]], sizes))
    u = a.u + tuple(constant * x for x in b.u)
    v = (field.zero,) * a.dim + b.v
    return LinearRep(field, a.alphabet, u, tuple(mu), v)


def rep_star(a: LinearRep) -> LinearRep:
    """
    星号 A* = (1 − A)^{-1}，要求 A(ε) = 0。
    新增状态 0：u = (1, 0)，v = (1; v₁)，
    μ(x) = [[0, u₁μ₁(x)], [0, μ₁(x) + v₁u₁μ₁(x)]]。

    Args:
        a: 常数项为零的表示

    Returns:
        识别 A* 的表示

    Raises:
        StarOnNonproperError: A(ε) ≠ 0
    """
    field = a.field
    if dot(field, a.u, a.v) != 0:
        raise StarOnNonproperError("星号要求常数项为零")
    sizes = (1, a.dim)
    mu = []
    for m in a.mu:
        restart = vec_mat(field, a.u, m)
        top = Matrix(field, 1, a.dim, (restart,))
        loop = Matrix(field, a.dim, a.dim, tuple(
            tuple(x + c * y for x, y in zip(row, restart))
            for row, c in zip(m.entries, a.v)))
        mu.append(block_matrix(field, [[None, top], [None, loop]], sizes))
    u = (field.one,) + (field.zero,) * a.dim
    v = (field.one,) + a.v
    return LinearRep(field, a.alphabet, u, tuple(mu), v)


def characteristic_rep(nfa, field: Field) -> LinearRep:
    """
    正则语言的 0/1 特征级数表示，由支撑自动机确定化后得到，权重只取 0 和 1。

    Args:
        nfa: SupportNFA
        field: 域

    Returns:
        线性表示
    """
    dfa = nfa.determinize()
    n = dfa.size
    if n == 0:
        return LinearRep.zero(field, dfa.alphabet)
    grids = [[[0] * n for _ in range(n)] for _ in dfa.alphabet.letters]
    for (state, letter), targets in dfa.transitions.items():
        for target in targets:
            grids[letter][state][target] = 1
    u = [1 if s in dfa.initial else 0 for s in range(n)]
    v = [1 if s in dfa.finals else 0 for s in range(n)]
    return LinearRep.build(field, dfa.alphabet, u, grids, v)
