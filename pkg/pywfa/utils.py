"""
工具函数模块

包含日志配置、单词枚举、可达性计算和整数辅助函数。
"""
from functools import reduce
from itertools import product
from math import gcd
from typing import Iterable, Iterator, Tuple
import logging
import sys

import numpy as np


# 配置日志（输出到stderr，保证stdout上的报告逐字节稳定）
logging.basicConfig(
    level=logging.WARNING,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
    handlers=[
        logging.StreamHandler(sys.stderr)
    ]
)

logger = logging.getLogger('pywfa')


Word = Tuple[int, ...]


def set_log_level(level) -> None:
    """
    设置 pywfa 日志级别。

    Args:
        level: 级别名（如 "INFO"）或 logging 常量
    """
    if isinstance(level, str):
        level = getattr(logging, level.upper(), logging.WARNING)
    logger.setLevel(level)


def words_up_to(alphabet_size: int, max_length: int) -> Iterator[Word]:
    """
    按广度优先顺序（先按长度，再按字母顺序）枚举所有长度不超过 max_length 的单词。

    Args:
        alphabet_size: 字母表大小
        max_length: 最大长度

    Returns:
        单词迭代器，单词为字母下标元组
    """
    for length in range(max_length + 1):
        yield from product(range(alphabet_size), repeat=length)


def word_count_up_to(alphabet_size: int, max_length: int) -> int:
    """
    统计长度不超过 max_length 的单词数量。

    Args:
        alphabet_size: 字母表大小
        max_length: 最大长度

    Returns:
        单词数量
    """
    if alphabet_size == 1:
        return max_length + 1
    return (alphabet_size ** (max_length + 1) - 1) // (alphabet_size - 1)


def lcm(a: int, b: int) -> int:
    """两个正整数的最小公倍数。"""
    return a * b // gcd(a, b)


def lcm_all(values: Iterable[int]) -> int:
    """
    一组正整数的最小公倍数，空集合返回 1。

    Args:
        values: 正整数序列

    Returns:
        最小公倍数
    """
    return reduce(lcm, values, 1)


def reachable_mask(adjacency: np.ndarray, start: np.ndarray) -> np.ndarray:
    """
    在布尔邻接矩阵上计算从起始集合可达的所有顶点。

    Args:
        adjacency: n×n 布尔矩阵，adjacency[i, j] 表示存在边 i→j
        start: 长度为 n 的布尔向量

    Returns:
        可达顶点的布尔向量（包含起点）
    """
    reached = start.astype(bool).copy()
    frontier = reached.copy()
    step = adjacency.astype(np.int64)
    while frontier.any():
        successors = (frontier.astype(np.int64) @ step) > 0
        frontier = successors & ~reached
        reached |= frontier
    return reached


def boolean_powers(adjacency: np.ndarray, count: int) -> list:
    """
    计算布尔矩阵的幂 A^0, A^1, ..., A^count。

    Args:
        adjacency: n×n 布尔矩阵
        count: 最高次幂

    Returns:
        布尔矩阵列表
    """
    size = adjacency.shape[0]
    step = adjacency.astype(np.int64)
    current = np.eye(size, dtype=bool)
    powers = [current]
    for _ in range(count):
        current = (current.astype(np.int64) @ step) > 0
        powers.append(current)
    return powers
