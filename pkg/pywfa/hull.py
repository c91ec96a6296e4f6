"""
线性包模块

计算轨道 Ω = u·μ(X*) 在“子空间有限并”拓扑下的闭包 Ω̄，
即包含 u 且在所有 μ(x) 下不变的最小子空间并集，
并用长度界 N = k^{|X|(m−1)} + 1 证明 Ω ⊆ Y。
"""
from collections import deque
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from pywfa.config import Config, default_config
from pywfa.errors import BudgetExceeded
from pywfa.linalg import (PrimeField, Subspace, UnionOfSubspaces, Vector, is_zero_vector,
                          normalize_direction, subspace_image, union_normalize, vec_mat)
from pywfa.minimize import left_spanning_words
from pywfa.series import LinearRep, Series, as_rep
from pywfa.utils import Word, logger, word_count_up_to


@dataclass(frozen=True)
class OrbitSample:
    """轨道样本：按广度优先顺序排列、按向量去重的 (单词, u·μ(单词))。"""

    words: Tuple[Word, ...]
    vectors: Tuple[Vector, ...]

    def __len__(self) -> int:
        return len(self.vectors)

    @property
    def max_length(self) -> int:
        return max((len(w) for w in self.words), default=0)


def orbit_sample(r: Series, depth: Optional[int], budget: Optional[int] = None) -> OrbitSample:
    """
    枚举长度不超过 depth 的单词对应的轨道向量，重复向量不再扩展。

    Args:
        r: 线性表示
        depth: 最大单词长度；None 表示一直扩展到不再出现新向量
        budget: 向量数量上限

    Returns:
        OrbitSample对象

    Raises:
        BudgetExceeded: 向量数量超过预算
    """
    r = as_rep(r)
    words: List[Word] = [()]
    vectors: List[Vector] = [r.u]
    seen = {r.u}
    frontier = [((), r.u)]
    length = 0
    while frontier and (depth is None or length < depth):
        length += 1
        following = []
        for word, vec in frontier:
            for letter, m in enumerate(r.mu):
                image = vec_mat(r.field, vec, m)
                if image in seen:
                    continue
                seen.add(image)
                words.append(word + (letter,))
                vectors.append(image)
                following.append((word + (letter,), image))
                if budget is not None and len(vectors) > budget:
                    raise BudgetExceeded(len(vectors), budget)
        frontier = following
    return OrbitSample(tuple(words), tuple(vectors))


def containment_bound(k: int, alpha: int, m: int, budget: Optional[int] = None) -> int:
    """
    长度界 N = k^{alpha·(m−1)} + 1：若 Ω_{≤N} ⊆ Y 则 Ω ⊆ Y。

    Args:
        k: 并集的分量个数
        alpha: 字母表大小
        m: 并集的维数
        budget: 枚举预算；给出时若 N·alpha^N 超出预算则报错

    Returns:
        N

    Raises:
        BudgetExceeded: 需要枚举的单词数超过预算
    """
    if k < 1 or alpha < 1 or m < 1:
        raise ValueError("k、alpha、m 都必须至少为 1")
    bound = k ** (alpha * (m - 1)) + 1
    if budget is not None:
        if alpha == 1:
            cost = bound
        elif bound > budget.bit_length():
            raise BudgetExceeded(bound, budget)
        else:
            cost = bound * alpha ** bound
        if cost > budget:
            raise BudgetExceeded(cost, budget)
    return bound


def certify_containment(r: Series, y: UnionOfSubspaces, config: Optional[Config] = None) -> bool:
    """
    枚举 Ω_{≤N} 并检查每个向量都在 y 中；返回 True 即证明 Ω ⊆ y。

    Args:
        r: 线性表示
        y: 子空间并集（不要求不变）
        config: 配置

    Returns:
        是否包含
    """
    config = config or default_config()
    r = as_rep(r)
    if r.dim == 0:
        return True
    if y.is_empty():
        return False
    m = max(y.dimension, 1)
    bound = containment_bound(len(y.components), len(r.alphabet), m, config.enumeration_budget)
    sample = orbit_sample(r, bound, config.enumeration_budget)
    return all(y.contains_vector(vec) for vec in sample.vectors)


@dataclass(frozen=True)
class HullCertificate:
    """线性包证书：并集 Y、长度界 N、目标映射 f(i, x) 以及搜索深度。"""

    union: UnionOfSubspaces
    bound: int
    targets: Tuple[Tuple[int, ...], ...]
    depth: int

    def verify(self, r: Series, config: Optional[Config] = None) -> bool:
        """
        重新检查 u ∈ Y、目标映射有效以及 Ω_{≤N} ⊆ Y。

        Args:
            r: 线性表示
            config: 配置

        Returns:
            证书是否有效
        """
        r = as_rep(r)
        y = self.union
        if r.dim == 0:
            return y.is_empty()
        if not y.contains_vector(r.u) or len(self.targets) != len(y.components):
            return False
        for comp, row in zip(y.components, self.targets):
            for letter, m in enumerate(r.mu):
                if not y.components[row[letter]].contains(subspace_image(comp, m)):
                    return False
        return certify_containment(r, y, config)


def target_map(r: LinearRep, y: UnionOfSubspaces) -> Tuple[Tuple[int, ...], ...]:
    """
    对每个分量和字母，给出第一个包含其像的分量下标。

    Args:
        r: 线性表示
        y: 不变的子空间并集

    Returns:
        目标映射表

    Raises:
        ValueError: y 不是不变集
    """
    targets = []
    for i, comp in enumerate(y.components):
        row = []
        for letter, m in enumerate(r.mu):
            j = y.component_index(subspace_image(comp, m))
            if j is None:
                raise ValueError(f"分量 {i + 1} 在字母 {r.alphabet.letters[letter]} 下的像不在并集中")
            row.append(j)
        targets.append(tuple(row))
    return tuple(targets)


def _finite_field_hull(r: LinearRep, config: Config) -> Tuple[UnionOfSubspaces, int]:
    # 有限域上轨道有限，闭包就是过各轨道点的直线之并
    sample = orbit_sample(r, None, config.enumeration_budget)
    lines = [Subspace.span(r.field, r.dim, [vec]) for vec in sample.vectors]
    return union_normalize(lines, n=r.dim, field=r.field), sample.max_length


def _line_closure(r: LinearRep, depth: int, budget: int) -> Optional[UnionOfSubspaces]:
    # 在射影直线上做广度优先搜索；深度内闭合时直线之并就是线性包
    start = normalize_direction(r.u)
    seen = {start}
    frontier = [start]
    for _ in range(depth + 1):
        following = []
        for direction in frontier:
            for m in r.mu:
                image = vec_mat(r.field, direction, m)
                if is_zero_vector(image):
                    continue
                image = normalize_direction(image)
                if image not in seen:
                    seen.add(image)
                    following.append(image)
        if not following:
            lines = [Subspace.span(r.field, r.dim, [d]) for d in seen]
            return union_normalize(lines)
        if len(seen) > budget:
            return None
        frontier = following
    return None


def _orbit_tree(r: LinearRep, depth: int, budget: int) -> List[Tuple[int, int, Vector]]:
    # 不去重的轨道树，按广度优先顺序，每个节点为 (父节点, 字母, 向量)
    size = word_count_up_to(len(r.alphabet), depth)
    if size > budget:
        raise BudgetExceeded(size, budget)
    nodes: List[Tuple[int, int, Vector]] = [(-1, -1, r.u)]
    start = 0
    for _ in range(depth):
        end = len(nodes)
        for parent in range(start, end):
            vec = nodes[parent][2]
            for letter, m in enumerate(r.mu):
                nodes.append((parent, letter, vec_mat(r.field, vec, m)))
        start = end
    return nodes


class _BlockMapSearch:
    """
    在轨道树上搜索至多 k 个状态的确定性分块映射：
    树节点按其单词所到达的状态分组，每组的张成维数不超过 d，
    且每组的像落在某一组的张成中。
    """

    def __init__(self, r: LinearRep, nodes: Sequence[Tuple[int, int, Vector]], d: int, k: int):
        self.r = r
        self.nodes = nodes
        self.d = d
        self.k = k
        self.zero = Subspace.zero_space(r.field, r.dim)
        self.classes: List[int] = []
        self.spans: List[Subspace] = []
        self.transitions: Dict[Tuple[int, int], int] = {}

    def run(self) -> Optional[UnionOfSubspaces]:
        self.classes = [0]
        self.spans = [Subspace.span(self.r.field, self.r.dim, [self.r.u])]
        self.transitions = {}
        return self._search(1)

    def _extend(self, span: Subspace, vec: Vector) -> Optional[Subspace]:
        if span.contains_vector(vec):
            return span
        if span.dim >= self.d:
            return None
        return Subspace.span(self.r.field, self.r.dim, span.basis + (vec,))

    def _search(self, index: int) -> Optional[UnionOfSubspaces]:
        while index < len(self.nodes):
            parent, letter, vec = self.nodes[index]
            key = (self.classes[parent], letter)
            target = self.transitions.get(key)
            if target is None:
                mark = len(self.classes)
                saved = list(self.spans)
                for choice in range(min(len(saved) + 1, self.k)):
                    self.transitions[key] = choice
                    if choice == len(self.spans):
                        self.spans.append(self.zero)
                    result = self._search(index)
                    if result is not None:
                        return result
                    del self.classes[mark:]
                    self.spans[:] = saved
                del self.transitions[key]
                return None
            grown = self._extend(self.spans[target], vec)
            if grown is None:
                return None
            self.spans[target] = grown
            self.classes.append(target)
            index += 1
        return self._close()

    def _close(self) -> Optional[UnionOfSubspaces]:
        for span in self.spans:
            for m in self.r.mu:
                image = subspace_image(span, m)
                if not any(other.contains(image) for other in self.spans):
                    logger.debug("候选被拒绝: 像不在任何分量中 (d=%d, k=%d)", self.d, self.k)
                    return None
        return union_normalize(self.spans)


def _candidate_at_depth(r: LinearRep, depth: int, krylov: Subspace,
                        config: Config) -> UnionOfSubspaces:
    nodes = _orbit_tree(r, depth, config.enumeration_budget)
    for d in range(1, krylov.dim):
        for k in range(1, config.hull_max_components + 1):
            found = _BlockMapSearch(r, nodes, d, k).run()
            if found is not None:
                logger.info("深度 %d: 找到候选 (维数 %d, 分量 %d)", depth, d, len(found.components))
                return found
    logger.info("深度 %d: 分量上限 %d 内没有候选，退回 Krylov 空间 (维数 %d)",
                depth, config.hull_max_components, krylov.dim)
    return union_normalize([krylov])


def _search_hull(r: LinearRep, config: Config) -> Tuple[UnionOfSubspaces, int]:
    n = r.dim
    budget = config.enumeration_budget
    krylov = Subspace.span(r.field, n, (vec for _, vec in left_spanning_words(r)))
    depth = config.get_initial_depth(n)
    step = config.get_depth_step(n)
    previous = None
    while True:
        lines = _line_closure(r, depth, budget)
        if lines is not None:
            logger.info("深度 %d: 射影轨道有限，线性包由 %d 条直线组成", depth, len(lines.components))
            return lines, depth
        candidate = _candidate_at_depth(r, depth, krylov, config)
        if candidate == previous:
            return candidate, depth
        next_depth = depth + step
        if (next_depth > config.hull_max_depth
                or word_count_up_to(len(r.alphabet), next_depth) > budget):
            logger.warning("线性包搜索在深度 %d 停止，结果未经下一深度确认", depth)
            return candidate, depth
        previous = candidate
        depth = next_depth


def linear_hull(r: Series, config: Optional[Config] = None) -> Tuple[UnionOfSubspaces, HullCertificate]:
    """
    计算线性包 Ω̄ 及其证书。

    ℚ 上采用迭代加深：射影轨道在深度内闭合时直接取直线之并；
    否则按 (最大分量维数, 分量个数) 递增的顺序在轨道树上搜索不变并集，
    结果在相邻两个深度上一致时接受。F_p 上由有限的可达集精确计算。

    Args:
        r: 线性表示或自动机
        config: 配置

    Returns:
        (线性包, 证书)

    Raises:
        BudgetExceeded: 证明所需的枚举超过预算
    """
    config = config or default_config()
    r = as_rep(r)
    n = r.dim
    if n == 0:
        empty = union_normalize([], n=0, field=r.field)
        return empty, HullCertificate(empty, 0, (), 0)
    if is_zero_vector(r.u):
        y, depth = union_normalize([Subspace.zero_space(r.field, n)]), 0
    elif isinstance(r.field, PrimeField):
        y, depth = _finite_field_hull(r, config)
    else:
        y, depth = _search_hull(r, config)
    targets = target_map(r, y)
    bound = containment_bound(len(y.components), len(r.alphabet), max(y.dimension, 1),
                              config.enumeration_budget)
    if not y.contains_vector(r.u) or not certify_containment(r, y, config):
        raise RuntimeError("线性包未通过包含性证明")
    logger.info("线性包: 维数 %d, 分量 %d, N=%d", y.dimension, len(y.components), bound)
    return y, HullCertificate(y, bound, targets, depth)
