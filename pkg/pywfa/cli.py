"""
pywfa 命令行接口

每个子命令都是对应库函数的薄包装，输出与格式化函数的结果逐字节一致。
退出码：0 成功；2 结构化分析失败（证据行输出到 stdout）；1 用法或解析错误。
"""
import argparse
import sys
from typing import Callable, Dict, List, Optional

from pywfa import __version__
from pywfa.config import Config
from pywfa.diagnostics import polya_check_q, variation_report
from pywfa.errors import AnalysisError, BudgetExceeded, PyWFAError
from pywfa.expressions import state_elimination
from pywfa.formats import (format_apform, format_coefficients, format_expr_document, format_formula,
                           format_hull, format_prime_support, format_rep, format_variation,
                           format_wfa, load_series, parse_expr_document)
from pywfa.formula import extract_formula
from pywfa.hadamard import hadamard_subinverse
from pywfa.hull import linear_hull
from pywfa.minimize import minimal_rep
from pywfa.series import (Series, WFA, ambiguity_witness, as_rep, as_wfa, coefficients, evaluate,
                          is_deterministic, words_up_to)
from pywfa.transform import determinize, disambiguate
from pywfa.univariate import extract_ap_form, parse_ratfun, univariate_polya_pipeline
from pywfa.utils import logger, set_log_level, word_count_up_to


class _ArgumentParser(argparse.ArgumentParser):
    """用法错误以退出码 1 结束，退出码 2 留给分析失败。"""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _read(path: str) -> str:
    with open(path, 'r', encoding='utf-8') as f:
        return f.read()


class PyWFACLI:
    """
    pywfa 命令行接口。
    """
    def __init__(self, config: Optional[Config] = None):
        """
        初始化命令行接口。

        Args:
            config: 配置，命令行参数会覆盖其中的对应项
        """
        self.config = config or Config()
        self.commands: Dict[str, Callable[[argparse.Namespace], str]] = {
            'eval': self.cmd_eval,
            'coeffs': self.cmd_coeffs,
            'minimize': self.cmd_minimize,
            'hull': self.cmd_hull,
            'determinize': self.cmd_determinize,
            'disambiguate': self.cmd_disambiguate,
            'to-expr': self.cmd_to_expr,
            'extract-formula': self.cmd_extract_formula,
            'hadamard-inverse': self.cmd_hadamard_inverse,
            'apform': self.cmd_apform,
            'check': self.cmd_check,
        }

    def _load(self, path: str) -> Series:
        return load_series(_read(path))

    def _maxlen(self, args: argparse.Namespace, default: int) -> int:
        return default if args.maxlen is None else args.maxlen

    def cmd_eval(self, args: argparse.Namespace) -> str:
        """计算单个系数。"""
        series = self._load(args.file)
        word = series.alphabet.parse_word(args.word)
        return series.field.format(evaluate(series, word)) + '\n'

    def cmd_coeffs(self, args: argparse.Namespace) -> str:
        """列出长度不超过 maxlen 的所有系数。"""
        series = self._load(args.file)
        maxlen = self._maxlen(args, self.config.max_word_length)
        count = word_count_up_to(len(series.alphabet), maxlen)
        if count > self.config.enumeration_budget:
            raise BudgetExceeded(count, self.config.enumeration_budget)
        return format_coefficients(coefficients(series, maxlen), series.alphabet, series.field)

    def cmd_minimize(self, args: argparse.Namespace) -> str:
        minimal, _ = minimal_rep(self._load(args.file))
        return format_rep(minimal)

    def cmd_hull(self, args: argparse.Namespace) -> str:
        hull, _ = linear_hull(as_rep(self._load(args.file)), self.config)
        return format_hull(hull)

    def cmd_determinize(self, args: argparse.Namespace) -> str:
        return format_wfa(determinize(self._load(args.file), self.config))

    def cmd_disambiguate(self, args: argparse.Namespace) -> str:
        return format_wfa(disambiguate(self._load(args.file), self.config))

    def cmd_to_expr(self, args: argparse.Namespace) -> str:
        """无歧义自动机的状态消去。"""
        return format_expr_document(state_elimination(as_wfa(self._load(args.file))))

    def cmd_extract_formula(self, args: argparse.Namespace) -> str:
        """提取指数公式，并列出支撑中长度不超过 maxlen 的单词的指数。"""
        expr = parse_expr_document(_read(args.file))
        formula = extract_formula(expr)
        maxlen = self._maxlen(args, self.config.check_length)
        return format_formula(formula, expr.alphabet, words_up_to(expr.alphabet, maxlen))

    def cmd_hadamard_inverse(self, args: argparse.Namespace) -> str:
        return format_wfa(hadamard_subinverse(as_wfa(self._load(args.file))))

    def cmd_apform(self, args: argparse.Namespace) -> str:
        """
        APForm：--ratfun 时走完整的单变量流程；
        自动机文件直接提取，线性表示先消歧再提取。
        """
        if args.ratfun is not None:
            if args.file is not None:
                raise ValueError("不能同时给出文件和 --ratfun")
            form = univariate_polya_pipeline(parse_ratfun(args.ratfun), self.config)
            return format_apform(form)
        if args.file is None:
            raise ValueError("需要文件或 --ratfun")
        series = self._load(args.file)
        if isinstance(series, WFA):
            form = extract_ap_form(series)
        else:
            minimal, _ = minimal_rep(series)
            form = extract_ap_form(disambiguate(minimal, self.config))
        return format_apform(form, series.field)

    def cmd_check(self, args: argparse.Namespace) -> str:
        """deterministic、unambiguous、polya、variation 四种检查。"""
        series = self._load(args.file)
        if args.property == 'deterministic':
            return f"deterministic {'yes' if is_deterministic(as_wfa(series)) else 'no'}\n"
        if args.property == 'unambiguous':
            a = as_wfa(series)
            witness = ambiguity_witness(a)
            if witness is None:
                return "unambiguous yes\n"
            return f"unambiguous no witness {a.alphabet.format_word(witness)}\n"
        maxlen = self._maxlen(args, self.config.check_length)
        if args.property == 'polya':
            return format_prime_support(polya_check_q(series, maxlen, self.config))
        c = self.config.variation_distance if args.c is None else args.c
        return format_variation(variation_report(series, c, maxlen, self.config), series.alphabet)

    def run(self, args: argparse.Namespace) -> int:
        """
        执行一个子命令。

        Args:
            args: 解析后的参数

        Returns:
            退出码
        """
        try:
            output = self.commands[args.command](args)
        except AnalysisError as e:
            logger.info("分析失败: %s", e)
            sys.stdout.write(e.evidence() + '\n')
            return 2
        except (PyWFAError, ValueError, OSError) as e:
            print(f"error: {e}", file=sys.stderr)
            return 1
        if args.out:
            with open(args.out, 'w', encoding='utf-8') as f:
                f.write(output)
        else:
            sys.stdout.write(output)
        return 0


def build_parser() -> argparse.ArgumentParser:
    """构造参数解析器。"""
    parser = _ArgumentParser(prog='pywfa', description="pywfa: 有理级数与加权自动机工具")
    parser.add_argument('--version', action='version', version=f"pywfa {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--maxlen', type=int, default=None, help='单词长度上界')
    common.add_argument('--budget', type=int, default=None, help='枚举预算')
    common.add_argument('--c', type=int, default=None, help='变差报告的距离上界')
    common.add_argument('--out', type=str, default=None, help='输出文件')
    common.add_argument('-v', '--verbose', action='store_true', help='输出 INFO 日志')

    sub = parser.add_subparsers(dest='command', parser_class=_ArgumentParser)
    sub.required = True
    p = sub.add_parser('eval', parents=[common], help='计算系数 S(w)')
    p.add_argument('file')
    p.add_argument('word', help="单词，'_' 表示空词")
    for name, help_text in (('coeffs', '列出系数'), ('minimize', '极小化'), ('hull', '线性包'),
                            ('determinize', '确定化'), ('disambiguate', 'Pólya 级数消歧'),
                            ('to-expr', '状态消去得到无歧义表达式'),
                            ('extract-formula', '从表达式文件提取指数公式'),
                            ('hadamard-inverse', 'Hadamard 子逆')):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument('file')
    p = sub.add_parser('apform', parents=[common], help='单变量等差-几何形式')
    p.add_argument('file', nargs='?', default=None)
    p.add_argument('--ratfun', type=str, default=None, help='有理函数 P/Q，如 "1/(1-2x)"')
    p = sub.add_parser('check', parents=[common], help='性质检查')
    p.add_argument('property', choices=['deterministic', 'unambiguous', 'polya', 'variation'])
    p.add_argument('file')
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """命令行主入口。"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 1
    for name in ('maxlen', 'budget', 'c'):
        value = getattr(args, name)
        if value is not None and value < 0:
            print(f"error: --{name} 不能为负数", file=sys.stderr)
            return 1
    config = Config()
    if args.budget is not None:
        config.enumeration_budget = args.budget
    set_log_level('INFO' if args.verbose else config.log_level)
    return PyWFACLI(config).run(args)


if __name__ == '__main__':
    sys.exit(main())
