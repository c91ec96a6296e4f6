"""
pywfa - 非交换有理级数、Pólya 级数与加权自动机

pywfa 在精确域（有理数域 ℚ 与素数域 F_p）上处理以线性表示或加权自动机给出的有理级数，
提供极小化、线性包计算、确定化、Pólya 级数消歧、无歧义表达式、
指数公式、Hadamard 子逆以及单变量等差-几何结构的提取。

基本用法:
    >>> from pywfa import QQ, LinearRep, determinize
    >>> r = LinearRep.build(QQ, "x", [1, 0], {"x": [[0, 1], [1, 0]]}, [2, 3])
    >>> r("xxx")
    Fraction(3, 1)
    >>> a = determinize(r)
    >>> a("xx")
    Fraction(2, 1)
"""

__version__ = "0.1.0"

from pywfa.config import (
    Config,
    default_config,
    desk_scale_config,
    thorough_config
)
from pywfa.errors import AnalysisError, PyWFAError
from pywfa.linalg import QQ, PrimeField, Subspace, UnionOfSubspaces
from pywfa.series import Alphabet, LinearRep, WFA, convert, evaluate, trim
from pywfa.minimize import minimal_rep, good_basis
from pywfa.hull import linear_hull
from pywfa.transform import determinize, disambiguate
from pywfa.expressions import Poly, Prod, Star, Sum, state_elimination
from pywfa.formula import extract_formula
from pywfa.hadamard import hadamard_product, hadamard_subinverse
from pywfa.univariate import extract_ap_form, parse_ratfun, univariate_polya_pipeline
