"""
诊断模块

有理数上的长度函数 ℓ、单词距离、有界变差的经验扫描，以及 Pólya 素数支撑探测。
这些扫描只对给定范围内的单词成立，不构成证明。
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, Optional, Sequence, Tuple

from sympy import factorint

from pywfa.config import Config, default_config
from pywfa.errors import BudgetExceeded, NonRationalFieldError, ZeroInputError
from pywfa.linalg import QQ
from pywfa.series import Series, WFA, coefficients, is_deterministic
from pywfa.utils import Word, logger, word_count_up_to


def _valuations(g: Fraction) -> Dict[int, int]:
    result = {int(p): int(k) for p, k in factorint(abs(g.numerator)).items() if p != 1}
    for p, k in factorint(g.denominator).items():
        if p != 1:
            result[int(p)] = result.get(int(p), 0) - int(k)
    return result


def length_q(g) -> int:
    """
    有理数上的长度函数 ℓ(g) = Σ_p |v_p(g)| + (g < 0 时为 1)。

    Args:
        g: 非零有理数

    Returns:
        非负整数

    Raises:
        ZeroInputError: g = 0
    """
    g = QQ.coerce(g)
    if g == 0:
        raise ZeroInputError("长度函数只对非零元素定义")
    return sum(abs(k) for k in _valuations(g).values()) + (1 if g < 0 else 0)


def word_distance(u: Sequence[int], v: Sequence[int]) -> int:
    """
    d(u, v) = |u| + |v| − 2·|最长公共前缀|。

    Args:
        u: 单词
        v: 单词

    Returns:
        距离
    """
    common = 0
    for a, b in zip(u, v):
        if a != b:
            break
        common += 1
    return len(u) + len(v) - 2 * common


@dataclass(frozen=True)
class VariationReport:
    """有界变差扫描结果：观察到的最大 ℓ(S(u)·S(v)⁻¹) 与取到最大值的单词对。"""

    c: int
    maxlen: int
    max_value: int
    witness: Optional[Tuple[Word, Word]]


def _require_rational(series: Series) -> None:
    if series.field != QQ:
        raise NonRationalFieldError(f"该诊断只支持有理数域，而不是 {series.field}")


def _nonzero_coefficients(series: Series, maxlen: int, config: Config) -> Dict[Word, Fraction]:
    count = word_count_up_to(len(series.alphabet), maxlen)
    if count > config.enumeration_budget:
        raise BudgetExceeded(count, config.enumeration_budget)
    return {w: c for w, c in coefficients(series, maxlen) if c != 0}


def _neighbours(u: Word, c: int, maxlen: int, alphabet_size: int):
    # 截去 i 个字母后再接上 j 个字母，i + j ≤ c
    for i in range(min(c, len(u)) + 1):
        prefix = u[:len(u) - i]
        frontier = [prefix]
        for j in range(c - i + 1):
            yield from frontier
            if j == c - i or len(prefix) + j >= maxlen:
                break
            frontier = [w + (x,) for w in frontier for x in range(alphabet_size)]


def variation_report(series: Series, c: int, maxlen: int,
                     config: Optional[Config] = None) -> VariationReport:
    """
    扫描 |u|, |v| ≤ maxlen、S(u) ≠ 0 ≠ S(v)、d(u, v) ≤ c 的所有单词对，
    报告 ℓ(S(u)·S(v)⁻¹) 的最大值；并列时取字典序最小的单词对 (u, v)。

    Args:
        series: 有理数域上的线性表示或自动机
        c: 距离上界
        maxlen: 单词长度上界
        config: 配置

    Returns:
        VariationReport对象
    """
    if c < 0 or maxlen < 0:
        raise ValueError("c 与 maxlen 都必须非负")
    _require_rational(series)
    config = config or default_config()
    values = _nonzero_coefficients(series, maxlen, config)
    best = 0
    best_key = None
    alphabet_size = len(series.alphabet)
    for u, su in values.items():
        for v in _neighbours(u, c, maxlen, alphabet_size):
            sv = values.get(v)
            if sv is None:
                continue
            value = length_q(su / sv)
            key = (u, v)
            if best_key is None or value > best or (value == best and key < best_key):
                best, best_key = value, key
    witness = best_key
    logger.info("变差扫描: c=%d, maxlen=%d, 最大值 %d", c, maxlen, best)
    return VariationReport(c, maxlen, best, witness)


def variation_bound(a: WFA, c: int) -> int:
    """
    确定性自动机的显式变差界 (c + 2)·C_w，C_w 为所有边权与终止权重的最大 ℓ。

    Args:
        a: 有理数域上的确定性自动机
        c: 距离上界

    Returns:
        上界
    """
    _require_rational(a)
    if not is_deterministic(a):
        raise ValueError("变差界只对确定性自动机成立")
    weights = list(a.edges.values()) + list(a.terminal.values())
    largest = max((length_q(w) for w in weights), default=0)
    return (c + 2) * largest


@dataclass(frozen=True)
class PrimeSupport:
    """系数中出现的素数集合，以及是否出现负系数。"""

    primes: FrozenSet[int]
    has_sign: bool = False

    def grows_from(self, other: 'PrimeSupport') -> bool:
        """self 严格包含 other。"""
        return (self.primes >= other.primes and self.has_sign >= other.has_sign
                and (self.primes != other.primes or self.has_sign != other.has_sign))


def polya_check_q(series: Series, maxlen: int, config: Optional[Config] = None) -> PrimeSupport:
    """
    分解长度不超过 maxlen 的所有非零系数，返回素数支撑的并。
    支撑随 maxlen 增长是级数不是 Pólya 级数的证据。

    Args:
        series: 有理数域上的线性表示或自动机
        maxlen: 单词长度上界
        config: 配置

    Returns:
        PrimeSupport对象
    """
    _require_rational(series)
    config = config or default_config()
    primes = set()
    negative = False
    for value in _nonzero_coefficients(series, maxlen, config).values():
        primes.update(_valuations(value))
        negative = negative or value < 0
    return PrimeSupport(frozenset(primes), negative)
