"""
单变量模块

有理函数 P/Q 与线性递推的读入、伴随矩阵表示，
以及从单字母无歧义自动机中提取等差-几何结构 s(kd+r) = α_r·β_r^k。
"""
import re
from dataclasses import dataclass, field as dataclass_field
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from pywfa.config import Config, default_config
from pywfa.errors import AmbiguousInput, NotUnaryError, ParseError, QZeroAtOriginError
from pywfa.linalg import QQ, Scalar
from pywfa.minimize import minimal_rep
from pywfa.series import LinearRep, WFA, ambiguity_witness, eval_wfa, support_edges, trim
from pywfa.transform import disambiguate
from pywfa.utils import boolean_powers, lcm_all, logger


_TERM_PATTERN = re.compile(r'^([+-]?)(\d+)?(?:\*?(x)(?:\^(\d+))?)?$')


def _strip(coeffs: Sequence[Fraction]) -> Tuple[Fraction, ...]:
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


@dataclass(frozen=True)
class RationalFunction:
    """
    有理函数 P/Q，系数按升幂排列，规范化后 Q(0) = 1。
    """

    numerator: Tuple[Fraction, ...]
    denominator: Tuple[Fraction, ...]

    @classmethod
    def of(cls, numerator: Sequence, denominator: Sequence = (1,)) -> 'RationalFunction':
        """
        构造并规范化有理函数。

        Args:
            numerator: P 的系数（升幂）
            denominator: Q 的系数（升幂）

        Returns:
            RationalFunction对象

        Raises:
            QZeroAtOriginError: Q(0) = 0
        """
        p = _strip(QQ.coerce(c) for c in numerator)
        q = _strip(QQ.coerce(c) for c in denominator)
        if not q or q[0] == 0:
            raise QZeroAtOriginError("分母在原点为零")
        q0 = q[0]
        return cls(tuple(c / q0 for c in p), tuple(c / q0 for c in q))

    @property
    def degree_numerator(self) -> int:
        return len(self.numerator) - 1

    @property
    def degree_denominator(self) -> int:
        return len(self.denominator) - 1

    def expand(self, count: int) -> List[Fraction]:
        """
        在 0 处展开的前 count 个系数：s(n) = p_n − Σ q_i·s(n−i)。

        Args:
            count: 系数个数

        Returns:
            系数列表
        """
        s: List[Fraction] = []
        for n in range(count):
            value = self.numerator[n] if n < len(self.numerator) else Fraction(0)
            for i in range(1, min(n, self.degree_denominator) + 1):
                value -= self.denominator[i] * s[n - i]
            s.append(value)
        return s

    def __str__(self) -> str:
        return f"({_format_poly(self.numerator)})/({_format_poly(self.denominator)})"


def _format_poly(coeffs: Sequence[Fraction]) -> str:
    if not coeffs:
        return '0'
    terms = []
    for i, c in enumerate(coeffs):
        if c == 0:
            continue
        power = '' if i == 0 else ('x' if i == 1 else f"x^{i}")
        if i > 0 and abs(c) == 1:
            body = power
        else:
            body = f"{abs(c)}{'*' if power else ''}{power}"
        terms.append(('-' if c < 0 else '+', body))
    text = ''.join(f"{sign}{body}" for sign, body in terms)
    return text[1:] if text.startswith('+') else text


def _parse_poly(text: str) -> Tuple[Fraction, ...]:
    text = text.strip()
    while text.startswith('(') and text.endswith(')') and _balanced(text[1:-1]):
        text = text[1:-1].strip()
    if not text:
        raise ParseError("多项式为空")
    coeffs: Dict[int, Fraction] = {}
    for term in re.findall(r'[+-]?[^+-]+', text.replace(' ', '')):
        match = _TERM_PATTERN.match(term)
        if match is None or (match.group(2) is None and match.group(3) is None):
            raise ParseError(f"无法解析的项: {term!r}")
        sign, digits, var, power = match.groups()
        c = Fraction(int(digits)) if digits is not None else Fraction(1)
        if sign == '-':
            c = -c
        degree = 0 if var is None else (int(power) if power is not None else 1)
        coeffs[degree] = coeffs.get(degree, Fraction(0)) + c
    size = max(coeffs) + 1
    return tuple(coeffs.get(i, Fraction(0)) for i in range(size))


def _balanced(text: str) -> bool:
    depth = 0
    for ch in text:
        depth += {'(': 1, ')': -1}.get(ch, 0)
        if depth < 0:
            return False
    return depth == 0


def parse_ratfun(text: str) -> RationalFunction:
    """
    解析 "P/Q" 形式的有理函数，如 "1/(1-2x)"、"(1+x)/(1-6x^2)"；没有 "/" 时 Q = 1。

    Args:
        text: 有理函数文本，变量为 x，系数为整数

    Returns:
        RationalFunction对象

    Raises:
        ParseError: 文本格式错误
        QZeroAtOriginError: Q(0) = 0
    """
    depth = 0
    split = None
    for i, ch in enumerate(text):
        if ch == '(':
            depth += 1
        elif ch == ')':
            depth -= 1
        elif ch == '/' and depth == 0:
            if split is not None:
                raise ParseError(f"有理函数中有多个 '/': {text!r}")
            split = i
    if depth != 0:
        raise ParseError(f"括号不匹配: {text!r}")
    if split is None:
        return RationalFunction.of(_parse_poly(text))
    return RationalFunction.of(_parse_poly(text[:split]), _parse_poly(text[split + 1:]))


def ratfun_from_recurrence(coeffs: Sequence, initial: Sequence) -> RationalFunction:
    """
    由线性递推 s(n) = c₁·s(n−1) + ⋯ + c_k·s(n−k)（n ≥ k）和初值得到生成函数。

    Args:
        coeffs: 递推系数 c₁..c_k
        initial: 初值 s(0)..s(k−1)

    Returns:
        RationalFunction对象，Q = 1 − Σ c_i x^i
    """
    c = [QQ.coerce(x) for x in coeffs]
    s = [QQ.coerce(x) for x in initial]
    if len(s) != len(c):
        raise ValueError(f"初值个数 {len(s)} 应等于递推阶数 {len(c)}")
    q = [Fraction(1)] + [-x for x in c]
    p = []
    for n in range(len(c)):
        value = s[n]
        for i in range(1, n + 1):
            value -= c[i - 1] * s[n - i]
        p.append(value)
    return RationalFunction.of(p, q)


def rep_from_ratfun(f: RationalFunction) -> LinearRep:
    """
    窗口（伴随矩阵）表示：状态为 (s(n), ..., s(n+N−1))，N = max(deg P + 1, deg Q)，
    u 为前 N 个系数，v = e₁。

    Args:
        f: 有理函数

    Returns:
        字母表 {x} 上的线性表示
    """
    if not f.numerator:
        return LinearRep.zero(QQ, 'x')
    n = max(f.degree_numerator + 1, f.degree_denominator, 1)
    u = f.expand(n)
    grid = [[Fraction(0)] * n for _ in range(n)]
    for j in range(n - 1):
        grid[j + 1][j] = Fraction(1)
    for i in range(1, f.degree_denominator + 1):
        grid[n - i][n - 1] = -f.denominator[i]
    v = [Fraction(1)] + [Fraction(0)] * (n - 1)
    return LinearRep.build(QQ, 'x', u, [grid], v)


@dataclass(frozen=True)
class APForm:
    """
    等差-几何形式：周期 d，例外集合 F（附带精确值），
    以及每个余数 r 的 (α_r, β_r)，使 s(kd+r) = α_r·β_r^k 对 kd+r ∉ F 成立。
    """

    d: int
    residues: Tuple[Tuple[Scalar, Scalar], ...]
    exceptions: Mapping[int, Scalar] = dataclass_field(default_factory=dict)

    def formula(self, n: int) -> Scalar:
        alpha, beta = self.residues[n % self.d]
        return alpha * beta ** (n // self.d)

    def coefficient(self, n: int) -> Scalar:
        """
        s(n)，例外下标直接取存储的值。

        Args:
            n: 下标

        Returns:
            系数
        """
        if n in self.exceptions:
            return self.exceptions[n]
        return self.formula(n)

    def polynomial_part(self) -> Dict[int, Scalar]:
        """
        分解 S = T + Σ α_r x^r / (1 − β_r x^d) 中的多项式 T（只含非零系数）。

        Returns:
            次数到系数的映射
        """
        result = {}
        for n in sorted(self.exceptions):
            c = self.exceptions[n] - self.formula(n)
            if c != 0:
                result[n] = c
        return result


def length_sets(a: WFA, bound: int) -> Dict[Tuple[str, str], List[int]]:
    """
    对每个初始状态 p 与终止状态 q，列出 [0, bound] 中存在 p 到 q 路径的长度。

    Args:
        a: 单字母自动机
        bound: 长度上界

    Returns:
        (p, q) → 升序长度列表（只含非空集合）
    """
    powers = boolean_powers(support_edges(a), bound)
    index = a.state_index
    result = {}
    for p in a.states:
        if p not in a.initial:
            continue
        for q in a.states:
            if q not in a.terminal:
                continue
            lengths = [n for n, power in enumerate(powers) if power[index[p], index[q]]]
            if lengths:
                result[(p, q)] = lengths
    return result


def cycle_lengths(a: WFA) -> Dict[str, int]:
    """
    每个位于圈上的状态 q 的最短圈长度 min{k ≥ 1 : 存在 q 到 q 的长度 k 的路径}。

    Args:
        a: 单字母自动机

    Returns:
        状态 → 圈长度（不在圈上的状态不出现）
    """
    size = len(a.states)
    powers = boolean_powers(support_edges(a), size)
    result = {}
    for q, i in a.state_index.items():
        k = next((k for k in range(1, size + 1) if powers[k][i, i]), None)
        if k is not None:
            result[q] = k
    return result


def extract_ap_form(a: WFA) -> APForm:
    """
    从单字母无歧义自动机提取 APForm。

    公差 d 取所有圈长度的最小公倍数。长度 n ≥ |Q| 的接受路径必经过恰好一个圈，
    绕圈 d/ℓ 次得到长度 n + d 的唯一路径，因此从 h = |Q| + d 起每个余数类要么全部被接受、
    要么全部不被接受，且系数按 β_r 成几何级数。扫描上界取 max(2|Q|² + |Q|, h + 3d)，
    在 [h, 上界] 内检查长度集合的周期性以及两个完整周期上的比值，h 之前与公式不符的下标
    连同精确值放入例外集合。

    Args:
        a: 单字母无歧义自动机

    Returns:
        APForm对象

    Raises:
        NotUnaryError: 字母表不止一个字母
        AmbiguousInput: 自动机有歧义
    """
    if len(a.alphabet) != 1:
        raise NotUnaryError(f"要求单字母字母表，而不是 {''.join(a.alphabet.letters)}")
    witness = ambiguity_witness(a)
    if witness is not None:
        raise AmbiguousInput(a.alphabet.format_word(witness))
    t = trim(a)
    size = len(t.states)
    zero, one = t.field.zero, t.field.one
    if size == 0:
        return APForm(1, ((zero, one),), {})

    d = lcm_all(cycle_lengths(t).values())
    start = size + d
    bound = max(2 * size * size + size, start + 3 * d)
    sets = length_sets(t, bound)
    owner: Dict[int, Tuple[str, str]] = {}
    for pair, lengths in sets.items():
        for n in lengths:
            if n in owner:
                raise RuntimeError(f"长度 {n} 同时属于 A{owner[n]} 与 A{pair}，自动机不是无歧义的")
            owner[n] = pair
        for n in range(start, bound - d + 1):
            if (n in owner and owner[n] == pair) != ((n + d) in owner and owner[n + d] == pair):
                raise RuntimeError(f"长度集合 A{pair} 在 {n} 之后不是以 {d} 为周期的")

    values = [eval_wfa(t, (0,) * n) for n in range(bound + 1)]
    residues = []
    for r in range(d):
        base = start + (r - start) % d
        if values[base] == 0:
            residues.append((zero, one))
            continue
        beta = values[base + d] / values[base]
        if values[base + 2 * d] != values[base + d] * beta:
            raise RuntimeError(f"余数 {r} 上的系数不是几何级数")
        residues.append((values[base] / beta ** (base // d), beta))
    form = APForm(d, tuple(residues), {})

    exceptions = {}
    for n, exact in enumerate(values):
        if exact != form.formula(n):
            if n >= start:
                raise RuntimeError(f"下标 {n} 处的系数与周期结构不符")
            exceptions[n] = exact
    logger.info("APForm: d=%d, 扫描上界 %d, 例外 %d 个", d, bound, len(exceptions))
    return APForm(d, form.residues, exceptions)


def univariate_polya_pipeline(f: RationalFunction, config: Optional[Config] = None) -> APForm:
    """
    有理函数 → 伴随表示 → 极小化 → 消歧 → APForm。消歧失败的异常原样抛出，
    它们是输入不是 Pólya 级数的证据。

    Args:
        f: 有理函数
        config: 配置

    Returns:
        APForm对象
    """
    config = config or default_config()
    minimal, _ = minimal_rep(rep_from_ratfun(f))
    return extract_ap_form(disambiguate(minimal, config))
