"""
异常定义模块。

所有异常都继承自 PyWFAError。输入类错误同时继承 ValueError，
结构化分析失败继承 AnalysisError，并提供单行证据，供命令行以退出码 2 输出。
"""
from typing import Optional


class PyWFAError(Exception):
    """pywfa 所有异常的基类。"""


class ParseError(PyWFAError, ValueError):
    """文本格式解析失败。"""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"第 {line} 行: {message}"
        super().__init__(message)


class FieldMismatchError(PyWFAError, ValueError):
    """不同域的元素混合运算。"""


class DimensionMismatchError(PyWFAError, ValueError):
    """矩阵或向量维数不匹配。"""


class AlphabetMismatchError(PyWFAError, ValueError):
    """单词或对象的字母表不匹配。"""


class StarOnNonproperError(PyWFAError, ValueError):
    """对常数项非零的表达式取星号。"""


class EmptyWordInLanguageError(PyWFAError, ValueError):
    """语言包含空词，无法作为码。"""


class QZeroAtOriginError(PyWFAError, ValueError):
    """有理函数的分母在原点为零。"""


class NotUnaryError(PyWFAError, ValueError):
    """要求单字母字母表。"""


class NonRationalFieldError(PyWFAError, ValueError):
    """该操作只支持有理数域。"""


class NotMinimalError(PyWFAError, ValueError):
    """线性表示不是极小的。"""


class ZeroInputError(PyWFAError, ValueError):
    """输入不能为零。"""


class AnalysisError(PyWFAError):
    """结构化分析失败，携带一行可机读的证据。"""

    def evidence(self) -> str:
        """
        返回单行证据文本。

        Returns:
            证据字符串
        """
        return str(self)


class BudgetExceeded(AnalysisError):
    """单词枚举量超过配置预算。"""

    def __init__(self, required: int, budget: int):
        self.required = required
        self.budget = budget
        super().__init__(f"budget-exceeded required={required} budget={budget}")


class HullDimensionExceeded(AnalysisError):
    """线性包维数至少为 2，序列不可确定化。"""

    def __init__(self, hull):
        self.hull = hull
        super().__init__(f"hull dim {hull.dimension} components {len(hull.components)}")


class CoverConditionViolated(AnalysisError):
    """覆盖条件不成立。"""

    def __init__(self, violation):
        self.violation = violation
        super().__init__(str(violation))


class AmbiguousInput(AnalysisError):
    """输入自动机有歧义，附带见证单词。"""

    def __init__(self, witness: str):
        self.witness = witness
        super().__init__(f"ambiguous witness {witness}")


class NotUnambiguous(AnalysisError):
    """表达式中存在未被证明无歧义的运算节点。"""

    def __init__(self, node_kind: str):
        self.node_kind = node_kind
        super().__init__(f"not-unambiguous node={node_kind}")
