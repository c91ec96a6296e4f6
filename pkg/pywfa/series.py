"""
级数核心模块

定义字母表、单词、线性表示 (u, μ, v) 和加权自动机 (Q, I, E, T)，
以及求值、互相转换、修剪、确定性与无歧义性判定。
"""
from collections import deque
from dataclasses import dataclass, field as dataclass_field
from functools import cached_property, singledispatch
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from pywfa.errors import AlphabetMismatchError, DimensionMismatchError, FieldMismatchError
from pywfa.linalg import Field, Matrix, Scalar, Vector, dot, mat_vec, vec_mat
from pywfa.utils import Word, reachable_mask, words_up_to as _words_up_to


_RESERVED_LETTERS = set('_()#')


@dataclass(frozen=True)
class Alphabet:
    """有序、非空、字母互不相同的字母表，字母均为单个字符。"""

    letters: Tuple[str, ...]

    def __post_init__(self):
        if not self.letters:
            raise AlphabetMismatchError("字母表不能为空")
        if len(set(self.letters)) != len(self.letters):
            raise AlphabetMismatchError(f"字母表含有重复字母: {' '.join(self.letters)}")
        for letter in self.letters:
            if len(letter) != 1 or letter.isspace() or letter in _RESERVED_LETTERS:
                raise AlphabetMismatchError(f"无效的字母: {letter!r}")

    @classmethod
    def of(cls, letters: Union[str, Iterable[str], 'Alphabet']) -> 'Alphabet':
        """
        从字符串（如 "ab"）或字母序列构造字母表。

        Args:
            letters: 字母

        Returns:
            Alphabet对象
        """
        if isinstance(letters, Alphabet):
            return letters
        return cls(tuple(letters))

    def __len__(self) -> int:
        return len(self.letters)

    @cached_property
    def _index(self) -> Dict[str, int]:
        return {letter: i for i, letter in enumerate(self.letters)}

    def index(self, letter: str) -> int:
        try:
            return self._index[letter]
        except KeyError:
            raise AlphabetMismatchError(f"字母 {letter!r} 不在字母表 {''.join(self.letters)} 中")

    def parse_word(self, text: str) -> Word:
        """
        解析单词文本，'_' 表示空词。

        Args:
            text: 单词文本

        Returns:
            字母下标元组
        """
        if text == '_':
            return ()
        return tuple(self.index(ch) for ch in text)

    def format_word(self, word: Sequence[int]) -> str:
        if not word:
            return '_'
        return ''.join(self.letters[i] for i in word)

    def as_word(self, word: Union[str, Sequence[int]]) -> Word:
        """将字符串或下标序列统一为经过校验的单词。"""
        if isinstance(word, str):
            return self.parse_word(word)
        word = tuple(word)
        for i in word:
            if not 0 <= i < len(self.letters):
                raise AlphabetMismatchError(f"字母下标 {i} 超出字母表范围")
        return word


def words_up_to(alphabet: Alphabet, max_length: int) -> Iterator[Word]:
    """
    按长度优先、字母序次之枚举单词。

    Args:
        alphabet: 字母表
        max_length: 最大长度

    Returns:
        单词迭代器
    """
    return _words_up_to(len(alphabet), max_length)


@dataclass(frozen=True)
class LinearRep:
    """
    线性表示 (u, μ, v)：S(w) = u·μ(w)·v，u 为行向量，v 为列向量。
    维数 0 的表示对应零级数。
    """

    field: Field
    alphabet: Alphabet
    u: Vector
    mu: Tuple[Matrix, ...]
    v: Vector

    def __post_init__(self):
        n = len(self.u)
        if len(self.v) != n:
            raise DimensionMismatchError(f"u 的长度 {n} 与 v 的长度 {len(self.v)} 不匹配")
        if len(self.mu) != len(self.alphabet):
            raise DimensionMismatchError("每个字母必须对应一个矩阵")
        for m in self.mu:
            if m.rows != n or m.cols != n:
                raise DimensionMismatchError(f"μ 矩阵形状 {m.rows}×{m.cols} 与维数 {n} 不匹配")
            if m.field != self.field:
                raise FieldMismatchError("μ 矩阵的域与表示的域不一致")

    @classmethod
    def build(cls, field: Field, alphabet, u: Sequence, mu, v: Sequence) -> 'LinearRep':
        """
        从普通 Python 数值构造线性表示。

        Args:
            field: 域
            alphabet: 字母表或字母字符串
            u: 初始行向量
            mu: 字母到矩阵行列表的映射，或按字母顺序的矩阵行列表序列
            v: 终止列向量

        Returns:
            LinearRep对象
        """
        alphabet = Alphabet.of(alphabet)
        n = len(u)
        if isinstance(mu, Mapping):
            mu = [mu[letter] for letter in alphabet.letters]
        matrices = tuple(m if isinstance(m, Matrix) else Matrix.from_rows(field, m, cols=n)
                         for m in mu)
        return cls(field, alphabet,
                   tuple(field.coerce(x) for x in u),
                   matrices,
                   tuple(field.coerce(x) for x in v))

    @classmethod
    def zero(cls, field: Field, alphabet) -> 'LinearRep':
        alphabet = Alphabet.of(alphabet)
        return cls(field, alphabet, (), tuple(Matrix.zeros(field, 0, 0) for _ in alphabet.letters), ())

    @property
    def dim(self) -> int:
        return len(self.u)

    def matrix(self, word: Union[str, Sequence[int]]) -> Matrix:
        """μ(w)，空词对应单位矩阵。"""
        result = Matrix.identity(self.field, self.dim)
        for i in self.alphabet.as_word(word):
            result = result @ self.mu[i]
        return result

    def left(self, word: Union[str, Sequence[int]]) -> Vector:
        """行向量 u·μ(w)。"""
        vec = self.u
        for i in self.alphabet.as_word(word):
            vec = vec_mat(self.field, vec, self.mu[i])
        return vec

    def right(self, word: Union[str, Sequence[int]]) -> Vector:
        """列向量 μ(w)·v。"""
        vec = self.v
        for i in reversed(self.alphabet.as_word(word)):
            vec = mat_vec(self.field, self.mu[i], vec)
        return vec

    def __call__(self, word) -> Scalar:
        return eval_rep(self, word)


@dataclass(frozen=True)
class WFA:
    """
    加权自动机 (Q, I, E, T)。边以 (源状态, 字母下标, 目标状态) 为键，只保存非零权重。
    """

    field: Field
    alphabet: Alphabet
    states: Tuple[str, ...]
    initial: Mapping[str, Scalar] = dataclass_field(default_factory=dict)
    edges: Mapping[Tuple[str, int, str], Scalar] = dataclass_field(default_factory=dict)
    terminal: Mapping[str, Scalar] = dataclass_field(default_factory=dict)

    def __post_init__(self):
        known = set(self.states)
        if len(known) != len(self.states):
            raise ValueError("状态名重复")
        for state in list(self.initial) + list(self.terminal):
            if state not in known:
                raise ValueError(f"未知状态: {state}")
        for (src, letter, dst), weight in self.edges.items():
            if src not in known or dst not in known:
                raise ValueError(f"边的端点不是有效状态: {src} -> {dst}")
            if not 0 <= letter < len(self.alphabet):
                raise AlphabetMismatchError(f"边的字母下标 {letter} 无效")
            if weight == 0:
                raise ValueError("不能保存零权重的边")

    @classmethod
    def build(cls, field: Field, alphabet, states: Iterable[str],
              initial: Mapping[str, object] = None,
              edges: Mapping[Tuple[str, object, str], object] = None,
              terminal: Mapping[str, object] = None) -> 'WFA':
        """
        构造加权自动机，零权重被丢弃，边的字母可以是字母字符或下标。

        Args:
            field: 域
            alphabet: 字母表或字母字符串
            states: 状态名序列
            initial: 初始权重
            edges: 边权重
            terminal: 终止权重

        Returns:
            WFA对象
        """
        alphabet = Alphabet.of(alphabet)
        init = {}
        for state, weight in (initial or {}).items():
            weight = field.coerce(weight)
            if weight != 0:
                init[state] = weight
        term = {}
        for state, weight in (terminal or {}).items():
            weight = field.coerce(weight)
            if weight != 0:
                term[state] = weight
        edge_map = {}
        for (src, letter, dst), weight in (edges or {}).items():
            if isinstance(letter, str):
                letter = alphabet.index(letter)
            weight = field.coerce(weight)
            if weight != 0:
                edge_map[(src, letter, dst)] = weight
        return cls(field, alphabet, tuple(states), init, edge_map, term)

    @cached_property
    def state_index(self) -> Dict[str, int]:
        return {state: i for i, state in enumerate(self.states)}

    @cached_property
    def successors(self) -> Dict[Tuple[str, int], Tuple[Tuple[str, Scalar], ...]]:
        """(状态, 字母) → ((目标状态, 权重), ...)，目标按状态顺序排列。"""
        table: Dict[Tuple[str, int], List[Tuple[str, Scalar]]] = {}
        for (src, letter, dst), weight in self.edges.items():
            table.setdefault((src, letter), []).append((dst, weight))
        index = self.state_index
        return {key: tuple(sorted(targets, key=lambda t: index[t[0]]))
                for key, targets in table.items()}

    def sorted_edges(self) -> List[Tuple[Tuple[str, int, str], Scalar]]:
        index = self.state_index
        return sorted(self.edges.items(),
                      key=lambda item: (index[item[0][0]], item[0][1], index[item[0][2]]))

    def __call__(self, word) -> Scalar:
        return eval_wfa(self, word)


Series = Union[LinearRep, WFA]


def eval_rep(r: LinearRep, word: Union[str, Sequence[int]]) -> Scalar:
    """
    计算 u·μ(w₁)⋯μ(w_l)·v。

    Args:
        r: 线性表示
        word: 单词

    Returns:
        系数 S(w)
    """
    return dot(r.field, r.left(word), r.v)


def eval_wfa(a: WFA, word: Union[str, Sequence[int]]) -> Scalar:
    """
    计算所有接受路径权重之和，按状态向量逐字母迭代。

    Args:
        a: 加权自动机
        word: 单词

    Returns:
        系数 S(w)
    """
    current: Dict[str, Scalar] = dict(a.initial)
    successors = a.successors
    for letter in a.alphabet.as_word(word):
        following: Dict[str, Scalar] = {}
        for state, weight in current.items():
            for dst, edge_weight in successors.get((state, letter), ()):
                following[dst] = following.get(dst, a.field.zero) + weight * edge_weight
        current = {s: w for s, w in following.items() if w != 0}
        if not current:
            return a.field.zero
    return sum((w * a.terminal[s] for s, w in current.items() if s in a.terminal), a.field.zero)


def evaluate(series: Series, word: Union[str, Sequence[int]]) -> Scalar:
    """对线性表示或自动机求系数。"""
    if isinstance(series, LinearRep):
        return eval_rep(series, word)
    return eval_wfa(series, word)


def coefficients(series: Series, max_length: int) -> List[Tuple[Word, Scalar]]:
    """
    枚举长度不超过 max_length 的所有单词及其系数。

    Args:
        series: 线性表示或自动机
        max_length: 最大单词长度

    Returns:
        (单词, 系数) 列表，按长度优先顺序
    """
    if isinstance(series, WFA):
        return [(w, eval_wfa(series, w)) for w in words_up_to(series.alphabet, max_length)]
    # 逐层复用前缀向量
    result = []
    layer: List[Tuple[Word, Vector]] = [((), series.u)]
    for length in range(max_length + 1):
        next_layer = []
        for word, vec in layer:
            result.append((word, dot(series.field, vec, series.v)))
            if length < max_length:
                for i, m in enumerate(series.mu):
                    next_layer.append((word + (i,), vec_mat(series.field, vec, m)))
        layer = next_layer
    return result


@singledispatch
def convert(series):
    """
    在线性表示与加权自动机之间转换：I(k)=u_k, E(k,x,l)=μ(x)_{k,l}, T(k)=v_k。
    """
    raise TypeError(f"不支持的类型: {type(series).__name__}")


@convert.register
def _(r: LinearRep) -> WFA:
    states = tuple(str(i + 1) for i in range(r.dim))
    edges = {}
    for letter, m in enumerate(r.mu):
        for i, sparse in enumerate(m.sparse_rows):
            for j, weight in sparse:
                edges[(states[i], letter, states[j])] = weight
    initial = {states[i]: x for i, x in enumerate(r.u) if x != 0}
    terminal = {states[i]: x for i, x in enumerate(r.v) if x != 0}
    return WFA(r.field, r.alphabet, states, initial, edges, terminal)


@convert.register
def _(a: WFA) -> LinearRep:
    n = len(a.states)
    index = a.state_index
    zero = a.field.zero
    u = tuple(a.initial.get(s, zero) for s in a.states)
    v = tuple(a.terminal.get(s, zero) for s in a.states)
    grids = [[[zero] * n for _ in range(n)] for _ in a.alphabet.letters]
    for (src, letter, dst), weight in a.edges.items():
        grids[letter][index[src]][index[dst]] = weight
    mu = tuple(Matrix(a.field, n, n, tuple(tuple(row) for row in grid)) for grid in grids)
    return LinearRep(a.field, a.alphabet, u, mu, v)


def support_edges(a: WFA) -> np.ndarray:
    """
    支撑图的布尔邻接矩阵（忽略字母）。

    Args:
        a: 加权自动机

    Returns:
        |Q|×|Q| 布尔矩阵
    """
    n = len(a.states)
    adjacency = np.zeros((n, n), dtype=bool)
    index = a.state_index
    for src, _, dst in a.edges:
        adjacency[index[src], index[dst]] = True
    return adjacency


def _useful_mask(a: WFA) -> np.ndarray:
    n = len(a.states)
    adjacency = support_edges(a)
    start = np.array([s in a.initial for s in a.states], dtype=bool)
    end = np.array([s in a.terminal for s in a.states], dtype=bool)
    if n == 0:
        return start
    accessible = reachable_mask(adjacency, start)
    coaccessible = reachable_mask(adjacency.T, end)
    return accessible & coaccessible


def trim(a: WFA) -> WFA:
    """
    删除不可达或不可共达的状态，识别的级数不变。

    Args:
        a: 加权自动机

    Returns:
        修剪后的自动机
    """
    useful = _useful_mask(a)
    kept = tuple(s for s, keep in zip(a.states, useful) if keep)
    if len(kept) == len(a.states):
        return a
    alive = set(kept)
    return WFA(a.field, a.alphabet, kept,
               {s: w for s, w in a.initial.items() if s in alive},
               {e: w for e, w in a.edges.items() if e[0] in alive and e[2] in alive},
               {s: w for s, w in a.terminal.items() if s in alive})


def is_trim(a: WFA) -> bool:
    return bool(_useful_mask(a).all())


def is_deterministic(a: WFA) -> bool:
    """
    至多一个初始状态，且每个 (状态, 字母) 至多一条出边。

    Args:
        a: 加权自动机

    Returns:
        是否确定
    """
    if len(a.initial) > 1:
        return False
    return all(len(targets) <= 1 for targets in a.successors.values())


def ambiguity_witness(a: WFA) -> Optional[Word]:
    """
    在支撑图的自乘积上做广度优先搜索，寻找标有同一单词的两条不同接受路径。

    搜索状态为 (p, q, 是否已分叉)，按长度优先、字母序次之扩展，
    因此返回的见证单词是最短且字典序最小的。

    Args:
        a: 加权自动机

    Returns:
        见证单词；自动机无歧义时返回 None
    """
    order = a.state_index
    initial = sorted(a.initial, key=order.get)
    start = [(p, q, p != q) for p in initial for q in initial]
    parent: Dict[Tuple[str, str, bool], Optional[Tuple[Tuple[str, str, bool], int]]] = {}
    queue = deque()
    for node in start:
        parent[node] = None
        queue.append(node)
    successors = a.successors
    letters = range(len(a.alphabet))
    while queue:
        node = queue.popleft()
        p, q, diverged = node
        if diverged and p in a.terminal and q in a.terminal:
            word = []
            while parent[node] is not None:
                node, letter = parent[node]
                word.append(letter)
            return tuple(reversed(word))
        for letter in letters:
            for p2, _ in successors.get((p, letter), ()):
                for q2, _ in successors.get((q, letter), ()):
                    child = (p2, q2, diverged or p2 != q2)
                    if child not in parent:
                        parent[child] = (node, letter)
                        queue.append(child)
    return None


def is_unambiguous(a: WFA) -> bool:
    """每个单词至多标记一条接受路径。"""
    return ambiguity_witness(a) is None


def as_rep(series: Series) -> LinearRep:
    """将自动机转换为线性表示，线性表示原样返回。"""
    if isinstance(series, WFA):
        return convert(series)
    return series


def as_wfa(series: Series) -> WFA:
    """将线性表示转换为自动机，自动机原样返回。"""
    if isinstance(series, LinearRep):
        return convert(series)
    return series
