"""
精确线性代数模块

提供有理数域 ℚ（基于 Fraction）和素数域 F_p（基于 Residue）上的标量运算、
矩阵、规范（RREF）形式的行子空间以及子空间的不可约有限并。
所有对象在构造后不可变。
"""
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, List, Optional, Sequence, Tuple, Union
import re

from sympy import isprime

from pywfa.errors import DimensionMismatchError, FieldMismatchError, ParseError


_RATIONAL_PATTERN = re.compile(r'^-?\d+(/\d+)?$')
_RESIDUE_PATTERN = re.compile(r'^-?\d+$')


class Residue:
    """素数域 F_p 中的元素，取值范围 [0, p-1]。"""

    __slots__ = ('value', 'p')

    def __init__(self, value: int, p: int):
        self.value = value % p
        self.p = p

    def _coerce(self, other) -> Optional['Residue']:
        if isinstance(other, Residue):
            if other.p != self.p:
                raise FieldMismatchError(f"F{self.p} 与 F{other.p} 的元素不能混合运算")
            return other
        if isinstance(other, bool):
            return None
        if isinstance(other, int):
            return Residue(other, self.p)
        if isinstance(other, Fraction):
            raise FieldMismatchError(f"F{self.p} 的元素不能与有理数混合运算")
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Residue(self.value + o.value, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Residue(self.value - o.value, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Residue(o.value - self.value, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Residue(self.value * o.value, self.p)

    __rmul__ = __mul__

    def inverse(self) -> 'Residue':
        """
        乘法逆元。

        Returns:
            逆元

        Raises:
            ZeroDivisionError: 元素为零
        """
        if self.value == 0:
            raise ZeroDivisionError(f"F{self.p} 中零没有逆元")
        return Residue(pow(self.value, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.inverse() ** (-exponent)
        return Residue(pow(self.value, exponent, self.p), self.p)

    def __neg__(self):
        return Residue(-self.value, self.p)

    def __pos__(self):
        return self

    def __bool__(self):
        return self.value != 0

    def __eq__(self, other):
        if isinstance(other, Residue):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int) and not isinstance(other, bool):
            return self.value == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __repr__(self):
        return f"Residue({self.value}, {self.p})"

    def __str__(self):
        return str(self.value)


Scalar = Union[Fraction, Residue]
Vector = Tuple[Scalar, ...]


@dataclass(frozen=True)
class RationalField:
    """有理数域 ℚ。"""

    @property
    def tag(self) -> str:
        return 'Q'

    @property
    def zero(self) -> Fraction:
        return Fraction(0)

    @property
    def one(self) -> Fraction:
        return Fraction(1)

    def coerce(self, value) -> Fraction:
        """
        将 int、Fraction 或字符串转换为域元素。

        Args:
            value: 待转换的值

        Returns:
            Fraction 元素
        """
        if isinstance(value, Fraction):
            return value
        if isinstance(value, Residue):
            raise FieldMismatchError("有理数域不接受 F_p 元素")
        if isinstance(value, int):
            return Fraction(value)
        if isinstance(value, str):
            return self.parse(value)
        raise FieldMismatchError(f"无法将 {value!r} 转换为有理数")

    def parse(self, text: str) -> Fraction:
        """
        解析标量文本，格式为可选的 '-'、十进制整数、可选的 '/正整数'。

        Args:
            text: 标量文本

        Returns:
            约分后的 Fraction
        """
        if not _RATIONAL_PATTERN.match(text):
            raise ParseError(f"无效的有理数: {text!r}")
        try:
            return Fraction(text)
        except ZeroDivisionError as e:
            raise ParseError(f"分母为零: {text!r}") from e

    def format(self, value: Fraction) -> str:
        return str(value)

    def sort_key(self, value: Fraction):
        return value

    def __str__(self):
        return 'Q'


@dataclass(frozen=True)
class PrimeField:
    """素数域 F_p。"""

    p: int

    def __post_init__(self):
        if not isprime(self.p):
            raise ValueError(f"{self.p} 不是素数")

    @property
    def tag(self) -> str:
        return f'F{self.p}'

    @property
    def zero(self) -> Residue:
        return Residue(0, self.p)

    @property
    def one(self) -> Residue:
        return Residue(1, self.p)

    def coerce(self, value) -> Residue:
        """
        将 int、Residue 或字符串转换为域元素；分母与 p 互素的 Fraction 也被接受。

        Args:
            value: 待转换的值

        Returns:
            Residue 元素
        """
        if isinstance(value, Residue):
            if value.p != self.p:
                raise FieldMismatchError(f"F{value.p} 的元素不属于 F{self.p}")
            return value
        if isinstance(value, int):
            return Residue(value, self.p)
        if isinstance(value, Fraction):
            if value.denominator % self.p == 0:
                raise FieldMismatchError(f"{value} 在 F{self.p} 中无定义")
            return Residue(value.numerator, self.p) / Residue(value.denominator, self.p)
        if isinstance(value, str):
            return self.parse(value)
        raise FieldMismatchError(f"无法将 {value!r} 转换为 F{self.p} 元素")

    def parse(self, text: str) -> Residue:
        if not _RESIDUE_PATTERN.match(text):
            raise ParseError(f"无效的 F{self.p} 元素: {text!r}")
        return Residue(int(text), self.p)

    def format(self, value: Residue) -> str:
        return str(value.value)

    def sort_key(self, value: Residue):
        return value.value

    def __str__(self):
        return self.tag


Field = Union[RationalField, PrimeField]

QQ = RationalField()


def field_from_tag(tag: str) -> Field:
    """
    根据文本标签构造域：'Q' 或 'F<p>'。

    Args:
        tag: 域标签

    Returns:
        域对象
    """
    if tag == 'Q':
        return QQ
    match = re.match(r'^F(\d+)$', tag)
    if not match:
        raise ParseError(f"未知的域: {tag!r}")
    try:
        return PrimeField(int(match.group(1)))
    except ValueError as e:
        raise ParseError(str(e)) from e


def is_zero_vector(vec: Sequence[Scalar]) -> bool:
    return all(x == 0 for x in vec)


def dot(field: Field, a: Sequence[Scalar], b: Sequence[Scalar]) -> Scalar:
    """向量内积。"""
    if len(a) != len(b):
        raise DimensionMismatchError(f"向量长度不匹配: {len(a)} 与 {len(b)}")
    return sum((x * y for x, y in zip(a, b) if x != 0), field.zero)


def scale_vector(c: Scalar, vec: Sequence[Scalar]) -> Vector:
    return tuple(c * x for x in vec)


def add_vectors(a: Sequence[Scalar], b: Sequence[Scalar]) -> Vector:
    return tuple(x + y for x, y in zip(a, b))


def normalize_direction(vec: Sequence[Scalar]) -> Vector:
    """
    将非零向量缩放为首个非零分量等于 1，作为直线的规范代表。

    Args:
        vec: 非零向量

    Returns:
        规范化后的向量
    """
    for x in vec:
        if x != 0:
            inv = 1 / x
            return tuple(inv * y for y in vec)
    raise ValueError("零向量没有方向")


@dataclass(frozen=True)
class Matrix:
    """域上的稠密矩阵。"""

    field: Field
    rows: int
    cols: int
    entries: Tuple[Tuple[Scalar, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise DimensionMismatchError(f"矩阵条目与形状 {self.rows}×{self.cols} 不符")

    @classmethod
    def from_rows(cls, field: Field, rows: Iterable[Iterable], cols: Optional[int] = None) -> 'Matrix':
        """
        从行序列构造矩阵，条目会被转换为域元素。

        Args:
            field: 域
            rows: 行序列
            cols: 列数（行为空时必须提供）

        Returns:
            Matrix对象
        """
        entries = tuple(tuple(field.coerce(x) for x in row) for row in rows)
        if cols is None:
            cols = len(entries[0]) if entries else 0
        return cls(field, len(entries), cols, entries)

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> 'Matrix':
        zero = field.zero
        return cls(field, rows, cols, tuple((zero,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, field: Field, n: int) -> 'Matrix':
        zero, one = field.zero, field.one
        return cls(field, n, n, tuple(tuple(one if i == j else zero for j in range(n))
                                      for i in range(n)))

    @cached_property
    def sparse_rows(self) -> Tuple[Tuple[Tuple[int, Scalar], ...], ...]:
        """每行的非零条目 (列号, 值)。"""
        return tuple(tuple((j, x) for j, x in enumerate(row) if x != 0) for row in self.entries)

    def row(self, i: int) -> Vector:
        return self.entries[i]

    def column(self, j: int) -> Vector:
        return tuple(row[j] for row in self.entries)

    def transpose(self) -> 'Matrix':
        return Matrix(self.field, self.cols, self.rows,
                      tuple(self.column(j) for j in range(self.cols)))

    def __matmul__(self, other: 'Matrix') -> 'Matrix':
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.field != other.field:
            raise FieldMismatchError("矩阵乘法的两个因子属于不同的域")
        if self.cols != other.rows:
            raise DimensionMismatchError(
                f"矩阵形状不匹配: {self.rows}×{self.cols} 与 {other.rows}×{other.cols}")
        return Matrix(self.field, self.rows, other.cols,
                      tuple(vec_mat(self.field, row, other) for row in self.entries))

    def kron(self, other: 'Matrix') -> 'Matrix':
        """Kronecker 积。"""
        entries = []
        for row_a in self.entries:
            for row_b in other.entries:
                entries.append(tuple(a * b for a in row_a for b in row_b))
        return Matrix(self.field, self.rows * other.rows, self.cols * other.cols, tuple(entries))

    def is_zero(self) -> bool:
        return all(not sparse for sparse in self.sparse_rows)

    def inverse(self) -> 'Matrix':
        """
        Gauss-Jordan 消元求逆。

        Returns:
            逆矩阵

        Raises:
            ZeroDivisionError: 矩阵奇异
        """
        if self.rows != self.cols:
            raise DimensionMismatchError("只有方阵可以求逆")
        n = self.rows
        zero, one = self.field.zero, self.field.one
        work = [list(row) + [one if i == j else zero for j in range(n)]
                for i, row in enumerate(self.entries)]
        for col in range(n):
            pivot = next((r for r in range(col, n) if work[r][col] != 0), None)
            if pivot is None:
                raise ZeroDivisionError("矩阵奇异")
            work[col], work[pivot] = work[pivot], work[col]
            inv = 1 / work[col][col]
            work[col] = [inv * x for x in work[col]]
            for r in range(n):
                factor = work[r][col]
                if r != col and factor != 0:
                    work[r] = [x - factor * y for x, y in zip(work[r], work[col])]
        return Matrix(self.field, n, n, tuple(tuple(row[n:]) for row in work))


def vec_mat(field: Field, vec: Sequence[Scalar], m: Matrix) -> Vector:
    """
    行向量乘矩阵，跳过零分量。

    Args:
        field: 域
        vec: 长度为 m.rows 的行向量
        m: 矩阵

    Returns:
        长度为 m.cols 的行向量
    """
    if len(vec) != m.rows:
        raise DimensionMismatchError(f"向量长度 {len(vec)} 与矩阵行数 {m.rows} 不匹配")
    result = [field.zero] * m.cols
    for i, x in enumerate(vec):
        if x != 0:
            for j, y in m.sparse_rows[i]:
                result[j] += x * y
    return tuple(result)


def mat_vec(field: Field, m: Matrix, vec: Sequence[Scalar]) -> Vector:
    """矩阵乘列向量。"""
    if len(vec) != m.cols:
        raise DimensionMismatchError(f"向量长度 {len(vec)} 与矩阵列数 {m.cols} 不匹配")
    return tuple(sum((y * vec[j] for j, y in sparse), field.zero) for sparse in m.sparse_rows)


def _echelon_rows(field: Field, rows: Iterable[Sequence[Scalar]],
                  ncols: int) -> Tuple[Tuple[Vector, ...], Tuple[int, ...]]:
    """
    计算行的简化行阶梯形（RREF）。

    Args:
        field: 域
        rows: 行向量序列
        ncols: 列数

    Returns:
        (非零 RREF 行, 主元列)
    """
    work: List[List[Scalar]] = [[field.coerce(x) for x in r] for r in rows
                                if not is_zero_vector(r)]
    pivots: List[int] = []
    rank = 0
    for col in range(ncols):
        pivot = next((i for i in range(rank, len(work)) if work[i][col] != 0), None)
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        inv = 1 / work[rank][col]
        work[rank] = [inv * x for x in work[rank]]
        for i in range(len(work)):
            factor = work[i][col]
            if i != rank and factor != 0:
                work[i] = [x - factor * y for x, y in zip(work[i], work[rank])]
        pivots.append(col)
        rank += 1
        if rank == len(work):
            break
    return tuple(tuple(r) for r in work[:rank]), tuple(pivots)


@dataclass(frozen=True)
class Subspace:
    """
    K^{1×n} 的行子空间，基以 RREF 形式存储，因此集合相等当且仅当存储相等。
    """

    field: Field
    n: int
    basis: Tuple[Vector, ...]

    @classmethod
    def span(cls, field: Field, n: int, vectors: Iterable[Sequence[Scalar]]) -> 'Subspace':
        """
        计算向量组张成的子空间。

        Args:
            field: 域
            n: 环境维数
            vectors: 向量序列

        Returns:
            规范形式的 Subspace
        """
        vectors = list(vectors)
        for vec in vectors:
            if len(vec) != n:
                raise DimensionMismatchError(f"向量长度 {len(vec)} 与环境维数 {n} 不匹配")
        basis, _ = _echelon_rows(field, vectors, n)
        return cls(field, n, basis)

    @classmethod
    def zero_space(cls, field: Field, n: int) -> 'Subspace':
        return cls(field, n, ())

    @classmethod
    def full(cls, field: Field, n: int) -> 'Subspace':
        return cls(field, n, Matrix.identity(field, n).entries)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @cached_property
    def pivots(self) -> Tuple[int, ...]:
        return tuple(next(j for j, x in enumerate(row) if x != 0) for row in self.basis)

    def coordinates(self, vec: Sequence[Scalar]) -> Optional[Vector]:
        """
        在 RREF 基下的坐标；向量不在子空间中时返回 None。

        Args:
            vec: 行向量

        Returns:
            坐标元组或 None
        """
        if len(vec) != self.n:
            raise DimensionMismatchError(f"向量长度 {len(vec)} 与环境维数 {self.n} 不匹配")
        coords = tuple(vec[p] for p in self.pivots)
        residual = list(vec)
        for c, row in zip(coords, self.basis):
            if c != 0:
                for j, x in enumerate(row):
                    if x != 0:
                        residual[j] -= c * x
        if not is_zero_vector(residual):
            return None
        return coords

    def contains_vector(self, vec: Sequence[Scalar]) -> bool:
        return self.coordinates(vec) is not None

    def contains(self, other: 'Subspace') -> bool:
        """判断 other ⊆ self。"""
        if other.n != self.n:
            raise DimensionMismatchError(f"环境维数不匹配: {self.n} 与 {other.n}")
        if other.dim > self.dim:
            return False
        return all(self.contains_vector(row) for row in other.basis)

    def sort_key(self):
        return (-self.dim, tuple(tuple(self.field.sort_key(x) for x in row) for row in self.basis))

    def format_rows(self) -> str:
        return ' '.join('[' + ' '.join(self.field.format(x) for x in row) + ']'
                        for row in self.basis)


def rref(m: Matrix) -> Tuple[Subspace, int]:
    """
    计算矩阵的行空间。

    Args:
        m: 矩阵

    Returns:
        (行空间, 秩)
    """
    space = Subspace.span(m.field, m.cols, m.entries)
    return space, space.dim


def subspace_image(s: Subspace, m: Matrix) -> Subspace:
    """
    子空间在矩阵右乘下的像 { a·m : a ∈ s }。

    Args:
        s: 子空间
        m: 矩阵，行数等于 s 的环境维数

    Returns:
        规范形式的像子空间
    """
    if s.n != m.rows:
        raise DimensionMismatchError(f"子空间维数 {s.n} 与矩阵行数 {m.rows} 不匹配")
    return Subspace.span(m.field, m.cols, (vec_mat(m.field, row, m) for row in s.basis))


@dataclass(frozen=True)
class UnionOfSubspaces:
    """
    子空间的不可约有限并（闭集），分量按 (维数降序, 基的字典序) 排列。
    """

    field: Field
    n: int
    components: Tuple[Subspace, ...]

    @property
    def dimension(self) -> int:
        """最大分量维数；空并集返回 -1。"""
        if not self.components:
            return -1
        return max(c.dim for c in self.components)

    def is_empty(self) -> bool:
        return not self.components

    def contains_vector(self, vec: Sequence[Scalar]) -> bool:
        return any(c.contains_vector(vec) for c in self.components)

    def component_index(self, s: Subspace) -> Optional[int]:
        """返回第一个包含 s 的分量下标。"""
        for i, c in enumerate(self.components):
            if c.contains(s):
                return i
        return None

    def is_subset_of(self, other: 'UnionOfSubspaces') -> bool:
        return all(union_contains(other, c) for c in self.components)


def union_normalize(components: Iterable[Subspace], n: Optional[int] = None,
                    field: Optional[Field] = None) -> UnionOfSubspaces:
    """
    规范化子空间并集：去重、去掉被其他分量包含的分量、排序。

    Args:
        components: 子空间序列
        n: 环境维数（序列为空时必须提供）
        field: 域（序列为空时必须提供）

    Returns:
        UnionOfSubspaces对象
    """
    items = list(dict.fromkeys(components))
    if items:
        n = items[0].n if n is None else n
        field = items[0].field if field is None else field
    if n is None or field is None:
        raise ValueError("空并集需要显式给出环境维数和域")
    for c in items:
        if c.n != n:
            raise DimensionMismatchError(f"分量环境维数 {c.n} 与 {n} 不匹配")
        if c.field != field:
            raise FieldMismatchError("并集的分量属于不同的域")
    kept = []
    for i, c in enumerate(items):
        if any(j != i and d.dim > c.dim and d.contains(c) for j, d in enumerate(items)):
            continue
        kept.append(c)
    kept.sort(key=Subspace.sort_key)
    return UnionOfSubspaces(field, n, tuple(kept))


def union_contains(y: UnionOfSubspaces, s: Subspace) -> bool:
    """
    判断子空间 s 是否包含在并集 y 的某一个分量中。

    Args:
        y: 子空间并集
        s: 子空间

    Returns:
        是否包含
    """
    if y.n != s.n:
        raise DimensionMismatchError(f"环境维数不匹配: {y.n} 与 {s.n}")
    return y.component_index(s) is not None


class EchelonBasis:
    """增量维护的阶梯形基，用于广度优先的张成集搜索。"""

    def __init__(self, field: Field, n: int):
        self.field = field
        self.n = n
        self._rows: List[Tuple[int, Vector]] = []

    def __len__(self) -> int:
        return len(self._rows)

    def reduce(self, vec: Sequence[Scalar]) -> Vector:
        """
        用已有基约化向量。

        Args:
            vec: 向量

        Returns:
            约化后的余向量
        """
        residual = [self.field.coerce(x) for x in vec]
        for pivot, row in self._rows:
            factor = residual[pivot]
            if factor != 0:
                for j, x in enumerate(row):
                    if x != 0:
                        residual[j] -= factor * x
        return tuple(residual)

    def add(self, vec: Sequence[Scalar]) -> bool:
        """
        若向量不在当前张成空间中则加入。

        Args:
            vec: 向量

        Returns:
            张成空间是否增大
        """
        residual = self.reduce(vec)
        pivot = next((j for j, x in enumerate(residual) if x != 0), None)
        if pivot is None:
            return False
        inv = 1 / residual[pivot]
        self._rows.append((pivot, tuple(inv * x for x in residual)))
        return True

    def is_full(self) -> bool:
        return len(self._rows) == self.n

    def span(self) -> Subspace:
        return Subspace.span(self.field, self.n, (row for _, row in self._rows))
