"""
文本格式模块

加权自动机、线性表示与有理表达式的读写，以及各种报告行的格式化。
所有格式按行组织，'#' 之后为注释，空行被忽略。
"""
import re
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from pywfa.diagnostics import PrimeSupport, VariationReport
from pywfa.errors import ParseError
from pywfa.expressions import Poly, Prod, RatExpr, Star, Sum, make_prod, make_star, make_sum
from pywfa.formula import ExponentFormula
from pywfa.linalg import QQ, Field, Matrix, UnionOfSubspaces, field_from_tag
from pywfa.series import Alphabet, LinearRep, Series, WFA
from pywfa.univariate import APForm
from pywfa.utils import Word


def _content_lines(text: str) -> Iterator[Tuple[int, List[str]]]:
    for number, line in enumerate(text.splitlines(), start=1):
        line = line.split('#', 1)[0].strip()
        if line:
            yield number, line.split()


def _expect(lines: List[Tuple[int, List[str]]], position: int, keyword: str) -> Tuple[int, List[str]]:
    if position >= len(lines):
        raise ParseError(f"缺少 '{keyword}' 行")
    number, tokens = lines[position]
    if tokens[0] != keyword:
        raise ParseError(f"应为 '{keyword}'，实际为 '{tokens[0]}'", number)
    return number, tokens


def _parse_header(lines: List[Tuple[int, List[str]]], kind: str) -> Tuple[Field, Alphabet]:
    number, tokens = _expect(lines, 0, kind)
    if len(tokens) != 1:
        raise ParseError(f"'{kind}' 行不应有参数", number)
    number, tokens = _expect(lines, 1, 'field')
    if len(tokens) != 2:
        raise ParseError("field 行格式应为 'field Q' 或 'field F<p>'", number)
    try:
        field = field_from_tag(tokens[1])
    except ParseError as e:
        raise ParseError(str(e), number) from e
    number, tokens = _expect(lines, 2, 'alphabet')
    try:
        alphabet = Alphabet(tuple(tokens[1:]))
    except ValueError as e:
        raise ParseError(str(e), number) from e
    return field, alphabet


def _scalar(field: Field, text: str, number: int):
    try:
        return field.parse(text)
    except ParseError as e:
        raise ParseError(str(e), number) from e


def _letter(alphabet: Alphabet, text: str, number: int) -> int:
    if text not in alphabet.letters:
        raise ParseError(f"未知字母 {text!r}", number)
    return alphabet.index(text)


def parse_wfa(text: str) -> WFA:
    """
    解析自动机文本：

        wfa
        field Q
        alphabet a b
        state <名称> [initial <标量>] [terminal <标量>]
        edge <源> <字母> <目标> <标量>

    Args:
        text: 文本

    Returns:
        WFA对象

    Raises:
        ParseError: 格式错误、状态重复、未知字母或零权重边
    """
    lines = list(_content_lines(text))
    field, alphabet = _parse_header(lines, 'wfa')
    states: List[str] = []
    initial: Dict[str, object] = {}
    terminal: Dict[str, object] = {}
    edges: Dict[Tuple[str, int, str], object] = {}
    edge_lines: List[Tuple[int, List[str]]] = []
    for number, tokens in lines[3:]:
        if tokens[0] == 'state':
            if len(tokens) < 2 or len(tokens) % 2 != 0:
                raise ParseError("state 行格式错误", number)
            name = tokens[1]
            if name in states:
                raise ParseError(f"重复的状态 {name}", number)
            states.append(name)
            for key, value in zip(tokens[2::2], tokens[3::2]):
                if key == 'initial':
                    initial[name] = _scalar(field, value, number)
                elif key == 'terminal':
                    terminal[name] = _scalar(field, value, number)
                else:
                    raise ParseError(f"未知的状态属性 {key!r}", number)
        elif tokens[0] == 'edge':
            edge_lines.append((number, tokens))
        else:
            raise ParseError(f"未知的行类型 {tokens[0]!r}", number)
    known = set(states)
    for number, tokens in edge_lines:
        if len(tokens) != 5:
            raise ParseError("edge 行格式应为 'edge <源> <字母> <目标> <标量>'", number)
        _, src, letter, dst, weight = tokens
        for state in (src, dst):
            if state not in known:
                raise ParseError(f"未知状态 {state}", number)
        key = (src, _letter(alphabet, letter, number), dst)
        if key in edges:
            raise ParseError(f"重复的边 {src} {letter} {dst}", number)
        value = _scalar(field, weight, number)
        if value == 0:
            raise ParseError("边权重不能为零", number)
        edges[key] = value
    return WFA.build(field, alphabet, states, initial, edges, terminal)


def format_wfa(a: WFA) -> str:
    """按 parse_wfa 的格式输出自动机。"""
    fmt = a.field.format
    lines = ['wfa', f"field {a.field.tag}", 'alphabet ' + ' '.join(a.alphabet.letters)]
    for state in a.states:
        line = f"state {state}"
        if state in a.initial:
            line += f" initial {fmt(a.initial[state])}"
        if state in a.terminal:
            line += f" terminal {fmt(a.terminal[state])}"
        lines.append(line)
    for (src, letter, dst), weight in a.sorted_edges():
        lines.append(f"edge {src} {a.alphabet.letters[letter]} {dst} {fmt(weight)}")
    return '\n'.join(lines) + '\n'


def parse_rep(text: str) -> LinearRep:
    """
    解析线性表示文本：rep、field、alphabet、dim n、u、v，
    然后每个字母一段 'mu <字母>' 后接 n 行、每行 n 个标量。

    Args:
        text: 文本

    Returns:
        LinearRep对象

    Raises:
        ParseError: 格式错误
    """
    lines = list(_content_lines(text))
    field, alphabet = _parse_header(lines, 'rep')
    number, tokens = _expect(lines, 3, 'dim')
    if len(tokens) != 2 or not tokens[1].isdigit():
        raise ParseError("dim 行格式应为 'dim <n>'", number)
    n = int(tokens[1])
    vectors = {}
    for position, keyword in ((4, 'u'), (5, 'v')):
        number, tokens = _expect(lines, position, keyword)
        if len(tokens) != n + 1:
            raise ParseError(f"{keyword} 应有 {n} 个标量", number)
        vectors[keyword] = [_scalar(field, x, number) for x in tokens[1:]]
    matrices: Dict[int, Matrix] = {}
    position = 6
    while position < len(lines):
        number, tokens = _expect(lines, position, 'mu')
        if len(tokens) != 2:
            raise ParseError("mu 行格式应为 'mu <字母>'", number)
        letter = _letter(alphabet, tokens[1], number)
        if letter in matrices:
            raise ParseError(f"字母 {tokens[1]} 的矩阵重复", number)
        rows = []
        for offset in range(1, n + 1):
            if position + offset >= len(lines):
                raise ParseError(f"字母 {tokens[1]} 的矩阵行数不足", number)
            row_number, row = lines[position + offset]
            if len(row) != n:
                raise ParseError(f"矩阵行应有 {n} 个标量", row_number)
            rows.append([_scalar(field, x, row_number) for x in row])
        matrices[letter] = Matrix.from_rows(field, rows, cols=n)
        position += n + 1
    missing = [alphabet.letters[i] for i in range(len(alphabet)) if i not in matrices]
    if missing:
        raise ParseError(f"缺少字母 {' '.join(missing)} 的矩阵")
    return LinearRep(field, alphabet, tuple(vectors['u']),
                     tuple(matrices[i] for i in range(len(alphabet))), tuple(vectors['v']))


def format_rep(r: LinearRep) -> str:
    """按 parse_rep 的格式输出线性表示。"""
    fmt = r.field.format

    def row(values: Iterable) -> str:
        return ' '.join(fmt(x) for x in values)

    lines = ['rep', f"field {r.field.tag}", 'alphabet ' + ' '.join(r.alphabet.letters),
             f"dim {r.dim}", ('u ' + row(r.u)).rstrip(), ('v ' + row(r.v)).rstrip()]
    for letter, m in zip(r.alphabet.letters, r.mu):
        lines.append(f"mu {letter}")
        lines.extend(row(entries) for entries in m.entries)
    return '\n'.join(lines) + '\n'


def load_series(text: str) -> Series:
    """
    按第一行（wfa 或 rep）选择解析器。

    Args:
        text: 文本

    Returns:
        WFA 或 LinearRep
    """
    for number, tokens in _content_lines(text):
        if tokens[0] == 'wfa':
            return parse_wfa(text)
        if tokens[0] == 'rep':
            return parse_rep(text)
        raise ParseError(f"未知的文件类型 {tokens[0]!r}", number)
    raise ParseError("输入为空")


def format_series(series: Series) -> str:
    if isinstance(series, WFA):
        return format_wfa(series)
    return format_rep(series)


_TOKEN_PATTERN = re.compile(r'\(|\)|[^\s()]+')


def _tokenize(text: str) -> List[str]:
    return _TOKEN_PATTERN.findall(text)


def _read_tree(tokens: List[str]):
    position = 0

    def read():
        nonlocal position
        if position >= len(tokens):
            raise ParseError("表达式意外结束")
        token = tokens[position]
        position += 1
        if token == ')':
            raise ParseError("多余的 ')'")
        if token != '(':
            return token
        items = []
        while True:
            if position >= len(tokens):
                raise ParseError("缺少 ')'")
            if tokens[position] == ')':
                position += 1
                return items
            items.append(read())

    tree = read()
    if position != len(tokens):
        raise ParseError("表达式之后还有多余内容")
    return tree


def _collect_letters(tree, letters: set) -> None:
    if isinstance(tree, list) and tree and tree[0] == 'poly':
        for term in tree[1:]:
            if isinstance(term, list) and term and isinstance(term[0], str) and term[0] != '_':
                letters.update(term[0])
    elif isinstance(tree, list):
        for child in tree[1:]:
            _collect_letters(child, letters)


def parse_expr(text: str, field: Field = QQ, alphabet=None, certify: bool = True) -> RatExpr:
    """
    解析前缀记法的有理表达式：(poly (<单词> <标量>) ...)、(+ e1 e2)、(. e1 e2)、(* e)，
    '_' 表示空词。

    Args:
        text: 表达式文本
        field: 域
        alphabet: 字母表；None 时取表达式中出现的字母（排序后）
        certify: 是否为运算节点精确计算无歧义标记

    Returns:
        RatExpr对象

    Raises:
        ParseError: 格式错误或零系数
        StarOnNonproperError: 星号子式的常数项非零
    """
    tree = _read_tree(_tokenize(text))
    if alphabet is None:
        letters: set = set()
        _collect_letters(tree, letters)
        if not letters:
            raise ParseError("表达式中没有字母，需要 alphabet 行")
        alphabet = Alphabet(tuple(sorted(letters)))
    alphabet = Alphabet.of(alphabet)

    def build(node) -> RatExpr:
        if not isinstance(node, list) or not node or not isinstance(node[0], str):
            raise ParseError(f"无效的表达式: {node!r}")
        head, args = node[0], node[1:]
        if head == 'poly':
            terms: Dict[Word, object] = {}
            for term in args:
                if not isinstance(term, list) or len(term) != 2 or not all(isinstance(t, str) for t in term):
                    raise ParseError(f"多项式项应为 (<单词> <标量>): {term!r}")
                try:
                    word = alphabet.parse_word(term[0])
                except ValueError as e:
                    raise ParseError(str(e)) from e
                value = field.parse(term[1])
                if value == 0:
                    raise ParseError(f"多项式系数不能为零: {term[0]}")
                if word in terms:
                    raise ParseError(f"多项式中单词重复: {term[0]}")
                terms[word] = value
            return Poly.of(field, alphabet, terms)
        if head in ('+', '.'):
            if len(args) != 2:
                raise ParseError(f"'{head}' 需要两个子式")
            left, right = build(args[0]), build(args[1])
            if head == '+':
                return make_sum(left, right) if certify else Sum(left, right)
            return make_prod(left, right) if certify else Prod(left, right)
        if head == '*':
            if len(args) != 1:
                raise ParseError("'*' 需要一个子式")
            child = build(args[0])
            return make_star(child) if certify else Star(child)
        raise ParseError(f"未知的运算 {head!r}")

    return build(tree)


def parse_expr_document(text: str, certify: bool = True) -> RatExpr:
    """
    解析表达式文件：可选的 'field ...' 与 'alphabet ...' 行，其余行组成表达式。

    Args:
        text: 文件内容
        certify: 是否计算无歧义标记

    Returns:
        RatExpr对象
    """
    field: Field = QQ
    alphabet: Optional[Alphabet] = None
    body = []
    for number, tokens in _content_lines(text):
        if tokens[0] == 'field' and not body:
            if len(tokens) != 2:
                raise ParseError("field 行格式错误", number)
            field = field_from_tag(tokens[1])
        elif tokens[0] == 'alphabet' and not body:
            try:
                alphabet = Alphabet(tuple(tokens[1:]))
            except ValueError as e:
                raise ParseError(str(e), number) from e
        else:
            body.append(' '.join(tokens))
    if not body:
        raise ParseError("缺少表达式")
    return parse_expr(' '.join(body), field, alphabet, certify)


def format_expr(e: RatExpr) -> str:
    """以前缀记法输出表达式（共享子式会被重复输出）。"""
    if isinstance(e, Poly):
        terms = ''.join(f" ({e.alphabet.format_word(w)} {e.field.format(c)})" for w, c in e.terms)
        return f"(poly{terms})"
    if isinstance(e, Sum):
        return f"(+ {format_expr(e.left)} {format_expr(e.right)})"
    if isinstance(e, Prod):
        return f"(. {format_expr(e.left)} {format_expr(e.right)})"
    return f"(* {format_expr(e.child)})"


def format_expr_document(e: RatExpr) -> str:
    return (f"field {e.field.tag}\nalphabet {' '.join(e.alphabet.letters)}\n"
            f"{format_expr(e)}\n")


def format_hull(y: UnionOfSubspaces) -> str:
    """
    线性包报告：'hull dim <d> components <k>'，然后每个分量一行 RREF 基。

    Args:
        y: 子空间并集

    Returns:
        报告文本
    """
    lines = [f"hull dim {y.dimension} components {len(y.components)}"]
    for component in y.components:
        lines.append(f"component {component.format_rows()}".rstrip())
    return '\n'.join(lines) + '\n'


def format_apform(form: APForm, field: Field = QQ) -> str:
    """APForm 报告：apform、residue 行，再按下标排序的 exception 行。"""
    fmt = field.format
    lines = [f"apform d={form.d}"]
    for r, (alpha, beta) in enumerate(form.residues):
        lines.append(f"residue {r} alpha {fmt(alpha)} beta {fmt(beta)}")
    for n in sorted(form.exceptions):
        lines.append(f"exception {n} {fmt(form.exceptions[n])}")
    return '\n'.join(lines) + '\n'


def format_variation(report: VariationReport, alphabet: Alphabet) -> str:
    line = f"variation c={report.c} maxlen={report.maxlen} max={report.max_value}"
    if report.witness is not None:
        u, v = report.witness
        line += f" witness {alphabet.format_word(u)} {alphabet.format_word(v)}"
    return line + '\n'


def format_prime_support(support: PrimeSupport) -> str:
    """'polya-support' 后接素数（升序）；出现负系数时先输出 -1。"""
    tokens = ['polya-support'] + (['-1'] if support.has_sign else [])
    tokens.extend(str(p) for p in sorted(support.primes))
    return ' '.join(tokens) + '\n'


def format_coefficients(pairs: Sequence[Tuple[Word, object]], alphabet: Alphabet, field: Field) -> str:
    return ''.join(f"{alphabet.format_word(w)} {field.format(c)}\n" for w, c in pairs)


def format_formula(formula: ExponentFormula, alphabet: Alphabet, words: Iterable[Word]) -> str:
    """
    指数公式报告：lambdas 行、bound 行，然后支撑中每个单词一行指数。

    Args:
        formula: 指数公式
        alphabet: 字母表
        words: 要列出的单词

    Returns:
        报告文本
    """
    lines = ['lambdas ' + ' '.join(str(x) for x in formula.lambdas), f"bound {formula.bound}"]
    for w in words:
        if formula.support.accepts(w):
            exponents = ' '.join(str(x) for x in formula.exponents_of(w))
            lines.append(f"exponents {alphabet.format_word(w)} {exponents}")
    return '\n'.join(lines) + '\n'
