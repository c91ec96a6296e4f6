"""
变换模块

由线性包构造展开的直和表示，并在此基础上实现确定化、
无歧义覆盖条件检查以及 Pólya 级数的消歧流程。
"""
from collections import Counter
from dataclasses import dataclass
from typing import Collection, Optional, Sequence, Tuple, Union

from pywfa.config import Config, default_config
from pywfa.errors import CoverConditionViolated, HullDimensionExceeded
from pywfa.hull import HullCertificate, linear_hull, target_map
from pywfa.linalg import Subspace, UnionOfSubspaces, Vector, dot, vec_mat
from pywfa.minimize import good_basis, minimal_rep
from pywfa.series import (LinearRep, Series, WFA, ambiguity_witness, as_rep, as_wfa, convert,
                          is_deterministic, trim)
from pywfa.utils import logger


@dataclass(frozen=True)
class BlockStructure:
    """
    展开表示的分块结构：第 i 块的下标区间、该块所选的基（分量的 RREF 基）、
    对应的分量以及目标映射 f(i, x)。
    """

    blocks: Tuple[Tuple[int, ...], ...]
    bases: Tuple[Tuple[Vector, ...], ...]
    components: Tuple[Subspace, ...]
    targets: Tuple[Tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.blocks)

    @property
    def size(self) -> int:
        return sum(len(b) for b in self.blocks)


@dataclass(frozen=True)
class CoverViolation:
    """覆盖条件的第一处违反；块、列、状态编号都从 1 开始。"""

    condition: int
    block: Optional[int] = None
    letter: Optional[str] = None
    column: Optional[int] = None
    state: Optional[str] = None

    def __str__(self) -> str:
        parts = [f"cover-violation cond={self.condition}"]
        if self.block is not None:
            parts.append(f"block={self.block}")
        if self.letter is not None:
            parts.append(f"letter={self.letter}")
        if self.column is not None:
            parts.append(f"column={self.column}")
        if self.state is not None:
            parts.append(f"state={self.state}")
        return ' '.join(parts)


def expand_rep(r: Series, hull: UnionOfSubspaces,
               certificate: Optional[HullCertificate] = None) -> Tuple[LinearRep, BlockStructure]:
    """
    构造 m = Σ dim W_i 维的直和表示：第 i 块以 W_i 的 RREF 基 f_{(i,s)} 为坐标，
    μ′(x) 把第 i 块映到第 f(i,x) 块，v′_{(i,s)} = f_{(i,s)}·v。

    u 所在的第一个分量（按规范顺序）被排到最前面。

    Args:
        r: 线性表示
        hull: 不变的子空间并集（通常为线性包）
        certificate: 线性包证书；给出时必须与 hull 对应

    Returns:
        (展开表示, 分块结构)

    Raises:
        ValueError: 证书与并集不符、并集不是不变集或 u 不在任何分量中
    """
    r = as_rep(r)
    if certificate is not None and certificate.union != hull:
        raise ValueError("线性包证书与给定的并集不一致")
    if r.dim == 0 or hull.is_empty():
        return r, BlockStructure((), (), (), ())
    first = next((i for i, c in enumerate(hull.components) if c.contains_vector(r.u)), None)
    if first is None:
        raise ValueError("u 不在任何分量中")
    order = [first] + [i for i in range(len(hull.components)) if i != first]
    components = tuple(hull.components[i] for i in order)
    targets = target_map(r, UnionOfSubspaces(hull.field, hull.n, components))

    field = r.field
    offsets = []
    total = 0
    for comp in components:
        offsets.append(total)
        total += comp.dim
    blocks = tuple(tuple(range(off, off + comp.dim)) for off, comp in zip(offsets, components))

    u = [field.zero] * total
    for s, c in enumerate(components[0].coordinates(r.u)):
        u[offsets[0] + s] = c
    grids = [[[field.zero] * total for _ in range(total)] for _ in r.mu]
    v = [field.zero] * total
    for i, comp in enumerate(components):
        for s, row in enumerate(comp.basis):
            v[offsets[i] + s] = dot(field, row, r.v)
            for letter, m in enumerate(r.mu):
                j = targets[i][letter]
                coords = components[j].coordinates(vec_mat(field, row, m))
                for t, c in enumerate(coords):
                    grids[letter][offsets[i] + s][offsets[j] + t] = c
    expanded = LinearRep.build(field, r.alphabet, u, grids, v)
    structure = BlockStructure(blocks, tuple(c.basis for c in components), components, targets)
    logger.info("展开表示: 维数 %d -> %d, 分块 %d", r.dim, total, len(blocks))
    return expanded, structure


def _block_family(blocks: Union[BlockStructure, Sequence[Collection[int]]]) -> Tuple[Tuple[int, ...], ...]:
    if isinstance(blocks, BlockStructure):
        return blocks.blocks
    return tuple(tuple(sorted(b)) for b in blocks)


def check_cover_conditions(r: LinearRep,
                           blocks: Union[BlockStructure, Sequence[Collection[int]]]) -> Optional[CoverViolation]:
    """
    检查以分块 {M_i} 为覆盖族的四个条件：
    (1) u 的支撑在某一块内；(2) 每块在每个字母下的像落在某一块内；
    (3) 每块、每个字母、每一列至多一行非零；(4) 每块中 v 至多一个非零坐标。

    Args:
        r: 线性表示
        blocks: 分块结构或下标集合的序列（下标从 0 开始）

    Returns:
        第一处违反；全部满足时返回 None

    Raises:
        ValueError: 分块不是 [0, m) 的划分
    """
    family = _block_family(blocks)
    if sorted(i for b in family for i in b) != list(range(r.dim)):
        raise ValueError("分块不是所有下标的划分")
    members = [set(b) for b in family]
    letters = r.alphabet.letters

    support = {i for i, x in enumerate(r.u) if x != 0}
    if support and not any(support <= m for m in members):
        return CoverViolation(1)
    for bi, block in enumerate(family):
        for letter, m in enumerate(r.mu):
            columns = {j for i in block for j, _ in m.sparse_rows[i]}
            if columns and not any(columns <= member for member in members):
                return CoverViolation(2, bi + 1, letters[letter])
    for bi, block in enumerate(family):
        for letter, m in enumerate(r.mu):
            counts = Counter(j for i in block for j, _ in m.sparse_rows[i])
            for j in sorted(counts):
                if counts[j] > 1:
                    return CoverViolation(3, bi + 1, letters[letter], column=j + 1)
    for bi, block in enumerate(family):
        if sum(1 for i in block if r.v[i] != 0) > 1:
            return CoverViolation(4, bi + 1)
    return None


def check_automaton_cover(a: WFA, family: Sequence[Collection[str]]) -> Optional[CoverViolation]:
    """
    自动机形式的覆盖条件：(1) 某个成员包含全部初始状态；
    (2) 每个成员在每个字母下的后继都在同一成员内；
    (3) 对每个状态 q、字母 x 和成员 M，M 中至多一个状态有到 q 的 x 边；
    (4) 每个成员至多一个终止状态。满足时自动机无歧义。

    Args:
        a: 加权自动机
        family: 状态集合族，需覆盖所有状态

    Returns:
        第一处违反；全部满足时返回 None
    """
    members = [set(m) for m in family]
    covered = set().union(*members) if members else set()
    if covered != set(a.states):
        raise ValueError("状态族没有覆盖全部状态")
    letters = a.alphabet.letters
    successors = a.successors

    if a.initial and not any(set(a.initial) <= m for m in members):
        return CoverViolation(1)
    for mi, member in enumerate(members):
        for letter in range(len(letters)):
            targets = {dst for p in member for dst, _ in successors.get((p, letter), ())}
            if targets and not any(targets <= m for m in members):
                return CoverViolation(2, mi + 1, letters[letter])
    for mi, member in enumerate(members):
        for letter in range(len(letters)):
            counts = Counter(dst for p in member for dst, _ in successors.get((p, letter), ()))
            for q in a.states:
                if counts[q] > 1:
                    return CoverViolation(3, mi + 1, letters[letter], state=q)
    for mi, member in enumerate(members):
        if sum(1 for q in member if q in a.terminal) > 1:
            return CoverViolation(4, mi + 1)
    return None


def determinize(r: Series, config: Optional[Config] = None) -> WFA:
    """
    确定化：极小化后计算线性包，维数不超过 1 时展开为确定性自动机。

    Args:
        r: 线性表示或自动机
        config: 配置

    Returns:
        识别同一级数的确定性自动机

    Raises:
        HullDimensionExceeded: 线性包维数至少为 2，级数不可确定化
    """
    config = config or default_config()
    minimal, _ = minimal_rep(r)
    hull, certificate = linear_hull(minimal, config)
    if hull.dimension >= 2:
        raise HullDimensionExceeded(hull)
    expanded, _ = expand_rep(minimal, hull, certificate)
    result = trim(convert(expanded))
    if not is_deterministic(result):
        raise RuntimeError("确定化结果不是确定性自动机")
    return result


def disambiguate(r: Series, config: Optional[Config] = None) -> WFA:
    """
    Pólya 级数的消歧：极小化 → 好基 → 线性包 → 展开 → 覆盖条件检查。
    输入修剪后已是确定性自动机时原样返回。

    Args:
        r: 线性表示或自动机
        config: 配置

    Returns:
        识别同一级数的无歧义自动机

    Raises:
        CoverConditionViolated: 覆盖条件不成立（输入不是 Pólya 级数的证据）
    """
    config = config or default_config()
    direct = trim(as_wfa(r))
    if is_deterministic(direct):
        return direct
    minimal, certificate = minimal_rep(r)
    if minimal.dim == 0:
        return convert(minimal)
    good = good_basis(minimal, certificate)
    hull, hull_certificate = linear_hull(good, config)
    expanded, structure = expand_rep(good, hull, hull_certificate)
    violation = check_cover_conditions(expanded, structure)
    if violation is not None:
        raise CoverConditionViolated(violation)
    result = trim(convert(expanded))
    if ambiguity_witness(result) is not None:
        raise RuntimeError("消歧结果仍有歧义")
    return result
