"""
极小化模块

线性表示的极小化（左约化后接右约化）、Hankel 秩以及使 v = e₁ 的基变换。
"""
from collections import deque
from dataclasses import dataclass
from typing import Callable, List, Optional, Tuple, Union

from pywfa.errors import NotMinimalError
from pywfa.linalg import QQ, EchelonBasis, Field, Matrix, Subspace, Vector, mat_vec, rref, vec_mat
from pywfa.series import Alphabet, LinearRep, Series, WFA, as_rep, evaluate, words_up_to
from pywfa.utils import Word, logger


@dataclass(frozen=True)
class MinimalityCertificate:
    """极小性证书：左张成单词与右张成单词。"""

    left_words: Tuple[Word, ...]
    right_words: Tuple[Word, ...]


def transpose_rep(r: LinearRep) -> LinearRep:
    """
    转置表示 (vᵀ, μᵀ, uᵀ)，它识别的级数为 w ↦ S(反转 w)。

    Args:
        r: 线性表示

    Returns:
        转置后的表示
    """
    return LinearRep(r.field, r.alphabet, r.v, tuple(m.transpose() for m in r.mu), r.u)


def left_spanning_words(r: LinearRep) -> List[Tuple[Word, Vector]]:
    """
    广度优先的左闭包：从 u 出发逐字母右乘，只保留使张成空间增大的向量，
    并只扩展被保留的向量。

    Args:
        r: 线性表示

    Returns:
        (单词, u·μ(单词)) 列表，按发现顺序
    """
    basis = EchelonBasis(r.field, r.dim)
    kept: List[Tuple[Word, Vector]] = []
    if r.dim == 0 or not basis.add(r.u):
        return kept
    kept.append(((), r.u))
    queue = deque(kept)
    while queue and not basis.is_full():
        word, vec = queue.popleft()
        for letter, m in enumerate(r.mu):
            image = vec_mat(r.field, vec, m)
            if basis.add(image):
                item = (word + (letter,), image)
                kept.append(item)
                queue.append(item)
    return kept


def right_spanning_words(r: LinearRep) -> List[Tuple[Word, Vector]]:
    """
    右闭包：μ(w)·v 张成列空间的单词，按广度优先顺序，首个单词为空词。

    Args:
        r: 线性表示

    Returns:
        (单词, μ(单词)·v) 列表
    """
    kept = left_spanning_words(transpose_rep(r))
    return [(tuple(reversed(word)), vec) for word, vec in kept]


def _restrict_left(r: LinearRep) -> LinearRep:
    # 限制到 u·μ(X*) 张成的子空间上，坐标取其 RREF 基
    kept = left_spanning_words(r)
    space = Subspace.span(r.field, r.dim, (vec for _, vec in kept))
    if space.dim == r.dim:
        return r
    k = space.dim
    u = space.coordinates(r.u) if k else ()
    mu = []
    for m in r.mu:
        rows = tuple(space.coordinates(vec_mat(r.field, row, m)) for row in space.basis)
        mu.append(Matrix(r.field, k, k, rows))
    v = tuple(mat_vec(r.field, Matrix(r.field, k, r.dim, space.basis), r.v)) if k else ()
    return LinearRep(r.field, r.alphabet, tuple(u), tuple(mu), v)


def minimal_rep(r: Series) -> Tuple[LinearRep, MinimalityCertificate]:
    """
    计算极小线性表示：先做左约化，再以转置的方式做右约化。

    Args:
        r: 线性表示或自动机

    Returns:
        (极小表示, 极小性证书)
    """
    r = as_rep(r)
    left = _restrict_left(r)
    reduced = transpose_rep(_restrict_left(transpose_rep(left)))
    left_words = left_spanning_words(reduced)
    right_words = right_spanning_words(reduced)
    if len(left_words) != reduced.dim or len(right_words) != reduced.dim:
        raise RuntimeError("极小化结果未通过两侧张成检查")
    logger.info("极小化: 维数 %d -> %d", r.dim, reduced.dim)
    certificate = MinimalityCertificate(tuple(w for w, _ in left_words),
                                        tuple(w for w, _ in right_words))
    return reduced, certificate


def hankel_rank(evaluate_fn: Union[Series, Callable[[Word], object]], alphabet, length: int,
                field: Field = QQ) -> int:
    """
    计算 Hankel 矩阵有限截面 (S(uv))_{|u|,|v| ≤ length} 的秩。

    Args:
        evaluate_fn: 系数函数，或线性表示/自动机
        alphabet: 字母表
        length: 单词长度上界
        field: 系数所在的域

    Returns:
        秩
    """
    if isinstance(evaluate_fn, (LinearRep, WFA)):
        series = evaluate_fn
        field = series.field
        evaluate_fn = lambda w: evaluate(series, w)  # noqa: E731
    alphabet = Alphabet.of(alphabet)
    words = list(words_up_to(alphabet, length))
    rows = [[evaluate_fn(u + v) for v in words] for u in words]
    _, rank = rref(Matrix.from_rows(field, rows, cols=len(words)))
    return rank


def good_basis(r: LinearRep, certificate: Optional[MinimalityCertificate] = None) -> LinearRep:
    """
    以列为 μ(w_i)·v 的矩阵 B 做共轭（w₁ 为空词），使 v = e₁，
    并且每个轨道行 u·μ(w) 的坐标都是级数的系数 S(w·w_i)。

    Args:
        r: 极小线性表示
        certificate: 极小性证书（可选，提供时使用其右张成单词）

    Returns:
        共轭后的表示

    Raises:
        NotMinimalError: 右张成单词不能张成整个列空间
    """
    n = r.dim
    if n == 0:
        return r
    if certificate is not None:
        words = list(certificate.right_words)
    else:
        words = [w for w, _ in right_spanning_words(r)]
    if len(words) != n or (words and words[0] != ()):
        raise NotMinimalError(f"右张成单词数 {len(words)} 与维数 {n} 不符")
    columns = [r.right(w) for w in words]
    b = Matrix.from_rows(r.field, columns, cols=n).transpose()
    try:
        b_inv = b.inverse()
    except ZeroDivisionError as e:
        raise NotMinimalError("右张成向量线性相关") from e
    u = vec_mat(r.field, r.u, b)
    mu = tuple(b_inv @ m @ b for m in r.mu)
    v = mat_vec(r.field, b_inv, r.v)
    return LinearRep(r.field, r.alphabet, u, mu, v)
