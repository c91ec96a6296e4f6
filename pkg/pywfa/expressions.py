"""
有理表达式模块

表达式树由多项式、和、积、星号节点组成，和、积、星号节点带有无歧义标记。
支撑语言用无权自动机 SupportNFA 表示，三种无歧义条件
（支撑不相交、连接分解唯一、星号子式的支撑是码）都在正则语言上精确判定。
"""
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, FrozenSet, Iterator, List, Mapping, Optional, Tuple

from pywfa.algebra import rep_polynomial, rep_product, rep_star, rep_sum
from pywfa.errors import (AlphabetMismatchError, AmbiguousInput, EmptyWordInLanguageError,
                          FieldMismatchError, StarOnNonproperError)
from pywfa.linalg import QQ, Field, Scalar
from pywfa.series import (Alphabet, LinearRep, WFA, ambiguity_witness, convert, eval_rep, trim)
from pywfa.utils import Word, logger


@dataclass(frozen=True)
class SupportNFA:
    """字母表上的无权有限自动机，状态为 0..size-1。"""

    alphabet: Alphabet
    size: int
    initial: FrozenSet[int]
    finals: FrozenSet[int]
    transitions: Mapping[Tuple[int, int], FrozenSet[int]]

    @classmethod
    def from_wfa(cls, a: WFA) -> 'SupportNFA':
        """
        取加权自动机（修剪后）的底层图。

        Args:
            a: 加权自动机

        Returns:
            SupportNFA对象
        """
        a = trim(a)
        index = a.state_index
        transitions: Dict[Tuple[int, int], set] = {}
        for src, letter, dst in a.edges:
            transitions.setdefault((index[src], letter), set()).add(index[dst])
        return cls(a.alphabet, len(a.states),
                   frozenset(index[s] for s in a.initial),
                   frozenset(index[s] for s in a.terminal),
                   {k: frozenset(v) for k, v in transitions.items()})

    @classmethod
    def empty(cls, alphabet: Alphabet) -> 'SupportNFA':
        return cls(alphabet, 0, frozenset(), frozenset(), {})

    def step(self, states: FrozenSet[int], letter: int) -> FrozenSet[int]:
        result = set()
        for s in states:
            result |= self.transitions.get((s, letter), frozenset())
        return frozenset(result)

    def accepts(self, word) -> bool:
        current = self.initial
        for letter in self.alphabet.as_word(word):
            current = self.step(current, letter)
            if not current:
                return False
        return bool(current & self.finals)

    def accepts_empty(self) -> bool:
        return bool(self.initial & self.finals)

    def is_deterministic(self) -> bool:
        return len(self.initial) <= 1 and all(len(t) <= 1 for t in self.transitions.values())

    def determinize(self) -> 'SupportNFA':
        """
        子集构造，只保留非空子集（部分确定性自动机）。

        Returns:
            确定性的 SupportNFA
        """
        return self._dfa

    @cached_property
    def _dfa(self) -> 'SupportNFA':
        start = frozenset(self.initial)
        if not start:
            return SupportNFA.empty(self.alphabet)
        index = {start: 0}
        order = [start]
        transitions = {}
        queue = deque([start])
        while queue:
            subset = queue.popleft()
            for letter in range(len(self.alphabet)):
                target = self.step(subset, letter)
                if not target:
                    continue
                if target not in index:
                    index[target] = len(order)
                    order.append(target)
                    queue.append(target)
                transitions[(index[subset], letter)] = frozenset([index[target]])
        finals = frozenset(i for i, subset in enumerate(order) if subset & self.finals)
        return SupportNFA(self.alphabet, len(order), frozenset([0]), finals, transitions)

    def is_empty(self) -> bool:
        seen = set(self.initial)
        queue = deque(seen)
        while queue:
            s = queue.popleft()
            if s in self.finals:
                return False
            for letter in range(len(self.alphabet)):
                for t in self.transitions.get((s, letter), ()):
                    if t not in seen:
                        seen.add(t)
                        queue.append(t)
        return True

    def delta(self, state: int, letter: int) -> Optional[int]:
        """确定性自动机的转移函数，无转移时返回 None。"""
        targets = self.transitions.get((state, letter))
        if not targets:
            return None
        return next(iter(targets))


def _disjoint_union(a: SupportNFA, b: SupportNFA) -> SupportNFA:
    shift = a.size
    transitions = dict(a.transitions)
    for (s, letter), targets in b.transitions.items():
        transitions[(s + shift, letter)] = frozenset(t + shift for t in targets)
    return SupportNFA(a.alphabet, a.size + b.size,
                      a.initial | frozenset(s + shift for s in b.initial),
                      a.finals | frozenset(s + shift for s in b.finals),
                      transitions)


def nfa_union(a: SupportNFA, b: SupportNFA) -> SupportNFA:
    """语言的并。"""
    return _disjoint_union(a, b)


def nfa_concat(a: SupportNFA, b: SupportNFA) -> SupportNFA:
    """
    语言的连接 L·K（不含 ε 转移的构造）。

    Args:
        a: 语言 L
        b: 语言 K

    Returns:
        接受 L·K 的 SupportNFA
    """
    joined = _disjoint_union(a, b)
    shift = a.size
    transitions = {k: set(v) for k, v in joined.transitions.items()}
    b_initial = [s + shift for s in b.initial]
    for f in a.finals:
        for letter in range(len(a.alphabet)):
            for i in b_initial:
                targets = joined.transitions.get((i, letter), ())
                if targets:
                    transitions.setdefault((f, letter), set()).update(targets)
    initial = set(a.initial)
    if a.accepts_empty():
        initial.update(b_initial)
    finals = {s + shift for s in b.finals}
    if b.accepts_empty():
        finals.update(a.finals)
    return SupportNFA(a.alphabet, joined.size, frozenset(initial), frozenset(finals),
                      {k: frozenset(v) for k, v in transitions.items()})


def nfa_star(a: SupportNFA) -> SupportNFA:
    """
    语言的星号 L*，新增的状态 0 既是初始状态也是终止状态。

    Args:
        a: 语言 L

    Returns:
        接受 L* 的 SupportNFA
    """
    shift = 1
    transitions: Dict[Tuple[int, int], set] = {}
    for (s, letter), targets in a.transitions.items():
        transitions.setdefault((s + shift, letter), set()).update(t + shift for t in targets)
    restarts: Dict[int, set] = {}
    for i in a.initial:
        for letter in range(len(a.alphabet)):
            targets = a.transitions.get((i, letter), ())
            if targets:
                restarts.setdefault(letter, set()).update(t + shift for t in targets)
    for letter, targets in restarts.items():
        transitions.setdefault((0, letter), set()).update(targets)
        for f in a.finals:
            transitions.setdefault((f + shift, letter), set()).update(targets)
    finals = frozenset([0]) | frozenset(f + shift for f in a.finals)
    return SupportNFA(a.alphabet, a.size + 1, frozenset([0]), finals,
                      {k: frozenset(v) for k, v in transitions.items()})


def common_word(a: SupportNFA, b: SupportNFA) -> Optional[Word]:
    """
    在乘积自动机上广度优先搜索两个语言的最短公共单词。

    Args:
        a: 语言 L
        b: 语言 K

    Returns:
        最短公共单词；语言不相交时返回 None
    """
    if a.alphabet != b.alphabet:
        raise AlphabetMismatchError("两个语言的字母表不一致")
    parent: Dict[Tuple[int, int], Optional[Tuple[Tuple[int, int], int]]] = {}
    queue = deque()
    for p in sorted(a.initial):
        for q in sorted(b.initial):
            parent[(p, q)] = None
            queue.append((p, q))
    while queue:
        node = queue.popleft()
        p, q = node
        if p in a.finals and q in b.finals:
            word = []
            while parent[node] is not None:
                node, letter = parent[node]
                word.append(letter)
            return tuple(reversed(word))
        for letter in range(len(a.alphabet)):
            for p2 in sorted(a.transitions.get((p, letter), ())):
                for q2 in sorted(b.transitions.get((q, letter), ())):
                    if (p2, q2) not in parent:
                        parent[(p2, q2)] = (node, letter)
                        queue.append((p2, q2))
    return None


def languages_disjoint(a: SupportNFA, b: SupportNFA) -> bool:
    """乘积自动机为空当且仅当语言不相交。"""
    return common_word(a, b) is None


def concatenation_witness(left: SupportNFA, right: SupportNFA) -> Optional[Word]:
    """
    寻找在 L·K 中有两种分解的最短单词。

    把 L 的确定化自动机和 K 的确定化自动机用跳转边连接：
    从 L 的终止状态读入 K 的第一个字母跳到 K 中；K 含空词时 L 的终止状态也接受。
    接受路径与分解一一对应，因此该自动机的歧义见证就是两种分解的单词。

    Args:
        left: 语言 L
        right: 语言 K

    Returns:
        见证单词；连接无歧义时返回 None
    """
    dl, dk = left.determinize(), right.determinize()
    if dl.size == 0 or dk.size == 0:
        return None
    alphabet = left.alphabet
    states = [f"L{s}" for s in range(dl.size)] + [f"K{t}" for t in range(dk.size)]
    edges = {}
    for (s, letter), targets in dl.transitions.items():
        for t in targets:
            edges[(f"L{s}", letter, f"L{t}")] = 1
    for (s, letter), targets in dk.transitions.items():
        for t in targets:
            edges[(f"K{s}", letter, f"K{t}")] = 1
    k_start = next(iter(dk.initial))
    for f in dl.finals:
        for letter in range(len(alphabet)):
            t = dk.delta(k_start, letter)
            if t is not None:
                edges[(f"L{f}", letter, f"K{t}")] = 1
    terminal = {f"K{t}": 1 for t in dk.finals}
    if dk.accepts_empty():
        terminal.update({f"L{f}": 1 for f in dl.finals})
    initial = {f"L{next(iter(dl.initial))}": 1}
    return ambiguity_witness(WFA.build(QQ, alphabet, states, initial, edges, terminal))


def concatenation_unambiguous(left: SupportNFA, right: SupportNFA) -> bool:
    """L·K 中每个单词至多有一种分解。"""
    return concatenation_witness(left, right) is None


def _pair_targets(dfa: SupportNFA, starts: FrozenSet[int], collect_left: bool,
                  nonempty_only: bool) -> FrozenSet[int]:
    # 从 (初始状态, t) 出发读相同单词：collect_left 时收集右侧终止时的左侧状态，否则反之
    start = next(iter(dfa.initial))
    frontier = [(start, t) for t in starts]
    seen = set()
    if nonempty_only:
        initial, frontier = frontier, []
        for a, b in initial:
            for letter in range(len(dfa.alphabet)):
                a2, b2 = dfa.delta(a, letter), dfa.delta(b, letter)
                if a2 is not None and b2 is not None:
                    frontier.append((a2, b2))
    seen.update(frontier)
    queue = deque(frontier)
    while queue:
        a, b = queue.popleft()
        for letter in range(len(dfa.alphabet)):
            a2, b2 = dfa.delta(a, letter), dfa.delta(b, letter)
            if a2 is not None and b2 is not None and (a2, b2) not in seen:
                seen.add((a2, b2))
                queue.append((a2, b2))
    if collect_left:
        return frozenset(a for a, b in seen if b in dfa.finals)
    return frozenset(b for a, b in seen if a in dfa.finals)


def is_code(language: SupportNFA) -> bool:
    """
    Sardinas–Patterson 判定：U₁ = L⁻¹L∖{ε}，U_{n+1} = L⁻¹U_n ∪ U_n⁻¹L，
    L 是码当且仅当没有 U_n 含空词。每个 U_n 表示为确定化自动机的状态集合的右语言之并。

    Args:
        language: 语言 L

    Returns:
        是否为码

    Raises:
        EmptyWordInLanguageError: L 含空词
    """
    if language.accepts_empty():
        raise EmptyWordInLanguageError("含空词的语言不是码")
    dfa = language.determinize()
    if dfa.size == 0:
        return True
    start = next(iter(dfa.initial))
    current = (_pair_targets(dfa, frozenset([start]), False, False), True)
    seen = {current}
    while True:
        states, nonempty_only = current
        if not states:
            return True
        following = (_pair_targets(dfa, states, False, False)
                     | _pair_targets(dfa, states, True, nonempty_only))
        if following & dfa.finals:
            return False
        current = (following, False)
        if current in seen:
            return True
        seen.add(current)


def code_witness(language: SupportNFA) -> Optional[Word]:
    """
    在花自动机上寻找有两种分解的最短单词。

    花自动机的状态为 (确定化状态, 是否刚重新开始)，
    接受路径与 L* 中的分解一一对应。

    Args:
        language: 语言 L

    Returns:
        见证单词；L 是码时返回 None
    """
    if language.accepts_empty():
        raise EmptyWordInLanguageError("含空词的语言不是码")
    dfa = language.determinize()
    if dfa.size == 0:
        return None
    start = next(iter(dfa.initial))
    states = ['start'] + [f"{q}:{flag}" for q in range(dfa.size) for flag in (0, 1)]
    edges = {}
    for letter in range(len(dfa.alphabet)):
        first = dfa.delta(start, letter)
        if first is not None:
            edges[('start', letter, f"{first}:1")] = 1
        for q in range(dfa.size):
            for flag in (0, 1):
                source = f"{q}:{flag}"
                target = dfa.delta(q, letter)
                if target is not None:
                    edges[(source, letter, f"{target}:0")] = 1
                if q in dfa.finals and first is not None:
                    edges[(source, letter, f"{first}:1")] = 1
    terminal = {'start': 1}
    terminal.update({f"{q}:{flag}": 1 for q in dfa.finals for flag in (0, 1)})
    return ambiguity_witness(WFA.build(QQ, dfa.alphabet, states, {'start': 1}, edges, terminal))


class RatExpr:
    """有理表达式节点的公共基类。"""

    kind = 'expr'

    @property
    def field(self) -> Field:
        raise NotImplementedError

    @property
    def alphabet(self) -> Alphabet:
        raise NotImplementedError

    def is_zero(self) -> bool:
        return False

    def children(self) -> Tuple['RatExpr', ...]:
        return ()

    @cached_property
    def constant(self) -> Scalar:
        """常数项 S(ε)。"""
        return _constant(self)

    @cached_property
    def rep(self) -> LinearRep:
        """识别该表达式的线性表示。"""
        return _build_rep(self)

    @cached_property
    def support(self) -> SupportNFA:
        """
        结构化构造的支撑自动机；节点无歧义时恰好接受支撑语言，否则可能更大。
        """
        return _build_support(self)

    def __call__(self, word) -> Scalar:
        return eval_expr(self, word)


@dataclass(frozen=True, eq=True)
class Poly(RatExpr):
    """多项式：单词到非零系数的有限映射，按长度优先顺序存储。"""

    field_: Field
    alphabet_: Alphabet
    terms: Tuple[Tuple[Word, Scalar], ...] = ()

    kind = 'poly'

    def __post_init__(self):
        for _, c in self.terms:
            if c == 0:
                raise ValueError("多项式不能含零系数")

    @classmethod
    def of(cls, field: Field, alphabet, terms: Mapping = None) -> 'Poly':
        """
        构造多项式，单词可以是字符串或下标元组，零系数被丢弃。

        Args:
            field: 域
            alphabet: 字母表
            terms: 单词到系数的映射

        Returns:
            Poly对象
        """
        alphabet = Alphabet.of(alphabet)
        collected: Dict[Word, Scalar] = {}
        for word, c in (terms or {}).items():
            word = alphabet.as_word(word)
            collected[word] = collected.get(word, field.zero) + field.coerce(c)
        items = sorted(((w, c) for w, c in collected.items() if c != 0),
                       key=lambda item: (len(item[0]), item[0]))
        return cls(field, alphabet, tuple(items))

    @classmethod
    def zero(cls, field: Field, alphabet) -> 'Poly':
        return cls(field, Alphabet.of(alphabet), ())

    @property
    def field(self) -> Field:
        return self.field_

    @property
    def alphabet(self) -> Alphabet:
        return self.alphabet_

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, word) -> Scalar:
        word = self.alphabet.as_word(word)
        return dict(self.terms).get(word, self.field.zero)


def _check_pair(left: RatExpr, right: RatExpr) -> None:
    if left.field != right.field:
        raise FieldMismatchError("表达式的两个子式属于不同的域")
    if left.alphabet != right.alphabet:
        raise AlphabetMismatchError("表达式的两个子式字母表不一致")


@dataclass(frozen=True, eq=True)
class Sum(RatExpr):
    """和节点，unambiguous 表示两个支撑不相交。"""

    left: RatExpr
    right: RatExpr
    unambiguous: bool = False

    kind = 'sum'

    def __post_init__(self):
        _check_pair(self.left, self.right)

    @property
    def field(self) -> Field:
        return self.left.field

    @property
    def alphabet(self) -> Alphabet:
        return self.left.alphabet

    def children(self):
        return (self.left, self.right)


@dataclass(frozen=True, eq=True)
class Prod(RatExpr):
    """积节点，unambiguous 表示支撑的连接中分解唯一。"""

    left: RatExpr
    right: RatExpr
    unambiguous: bool = False

    kind = 'prod'

    def __post_init__(self):
        _check_pair(self.left, self.right)

    @property
    def field(self) -> Field:
        return self.left.field

    @property
    def alphabet(self) -> Alphabet:
        return self.left.alphabet

    def children(self):
        return (self.left, self.right)


@dataclass(frozen=True, eq=True)
class Star(RatExpr):
    """星号节点，子式常数项必须为零；unambiguous 表示子式支撑是码。"""

    child: RatExpr
    unambiguous: bool = False

    kind = 'star'

    def __post_init__(self):
        if self.child.constant != 0:
            raise StarOnNonproperError("星号子式的常数项必须为零")

    @property
    def field(self) -> Field:
        return self.child.field

    @property
    def alphabet(self) -> Alphabet:
        return self.child.alphabet

    def children(self):
        return (self.child,)


def _constant(e: RatExpr) -> Scalar:
    if isinstance(e, Poly):
        return e.coefficient(())
    if isinstance(e, Sum):
        return e.left.constant + e.right.constant
    if isinstance(e, Prod):
        return e.left.constant * e.right.constant
    return e.field.one


def _build_rep(e: RatExpr) -> LinearRep:
    if isinstance(e, Poly):
        return rep_polynomial(e.field, e.alphabet, dict(e.terms))
    if isinstance(e, Sum):
        return rep_sum(e.left.rep, e.right.rep)
    if isinstance(e, Prod):
        return rep_product(e.left.rep, e.right.rep)
    return rep_star(e.child.rep)


def _build_support(e: RatExpr) -> SupportNFA:
    if isinstance(e, Poly):
        return SupportNFA.from_wfa(convert(e.rep))
    if isinstance(e, Sum):
        return nfa_union(e.left.support, e.right.support)
    if isinstance(e, Prod):
        return nfa_concat(e.left.support, e.right.support)
    return nfa_star(e.child.support)


def make_sum(left: RatExpr, right: RatExpr) -> Sum:
    """构造和节点，并精确判定两个支撑是否不相交。"""
    _check_pair(left, right)
    return Sum(left, right, languages_disjoint(left.support, right.support))


def make_prod(left: RatExpr, right: RatExpr) -> Prod:
    """构造积节点，并精确判定连接是否无歧义。"""
    _check_pair(left, right)
    return Prod(left, right, concatenation_unambiguous(left.support, right.support))


def make_star(child: RatExpr) -> Star:
    """构造星号节点，并用 Sardinas–Patterson 判定子式支撑是否为码。"""
    try:
        flag = is_code(child.support)
    except EmptyWordInLanguageError:
        flag = False
    return Star(child, flag)


def iter_nodes(e: RatExpr) -> Iterator[RatExpr]:
    """按先序遍历表达式中的不同节点（共享子式只访问一次）。"""
    seen = set()
    stack = [e]
    while stack:
        node = stack.pop()
        if id(node) in seen:
            continue
        seen.add(id(node))
        yield node
        stack.extend(reversed(node.children()))


def audit_unambiguity(e: RatExpr) -> Optional[RatExpr]:
    """
    重新精确检查每个运算节点的无歧义性。

    Args:
        e: 表达式

    Returns:
        第一个未被标记或标记不成立的节点；全部通过时返回 None
    """
    for node in iter_nodes(e):
        if isinstance(node, Poly):
            continue
        if not node.unambiguous:
            return node
        if isinstance(node, Sum):
            ok = languages_disjoint(node.left.support, node.right.support)
        elif isinstance(node, Prod):
            ok = concatenation_unambiguous(node.left.support, node.right.support)
        else:
            ok = is_code(node.child.support)
        if not ok:
            return node
    return None


def with_certificates(e: RatExpr) -> RatExpr:
    """
    重建表达式，为每个运算节点计算无歧义标记。

    Args:
        e: 表达式

    Returns:
        带标记的表达式
    """
    memo: Dict[int, RatExpr] = {}

    def rebuild(node: RatExpr) -> RatExpr:
        key = id(node)
        if key not in memo:
            if isinstance(node, Poly):
                memo[key] = node
            elif isinstance(node, Sum):
                memo[key] = make_sum(rebuild(node.left), rebuild(node.right))
            elif isinstance(node, Prod):
                memo[key] = make_prod(rebuild(node.left), rebuild(node.right))
            else:
                memo[key] = make_star(rebuild(node.child))
        return memo[key]

    return rebuild(e)


def expr_to_rep(e: RatExpr) -> LinearRep:
    """表达式的线性表示（和、积、星号分别用直和、Cauchy 积和星号构造）。"""
    return e.rep


def expr_to_wfa(e: RatExpr) -> WFA:
    """表达式的加权自动机；表达式无歧义时得到的自动机也无歧义。"""
    return convert(e.rep)


def eval_expr(e: RatExpr, word) -> Scalar:
    return eval_rep(e.rep, word)


def _scaled(c: Scalar, e: RatExpr, d: Scalar) -> RatExpr:
    # c·e·d，系数为 1 的常数因子省略
    field, alphabet = e.field, e.alphabet
    if c != 1:
        e = make_prod(Poly.of(field, alphabet, {(): c}), e)
    if d != 1:
        e = make_prod(e, Poly.of(field, alphabet, {(): d}))
    return e


def state_elimination(a: WFA) -> RatExpr:
    """
    由无歧义自动机通过状态消去得到无歧义表达式：
    S_{p,P∪{r},q} = S_{p,P,q} + S_{p,P,r}·S_{r,P,r}*·S_{r,P,q}，
    最后 S = Σ I(p)·S_{p,Q,q}·T(q) + Σ I(p)·T(p)。零多项式在构造时被丢弃。

    Args:
        a: 无歧义加权自动机

    Returns:
        每个运算节点都被标记为无歧义的表达式

    Raises:
        AmbiguousInput: 自动机有歧义
    """
    witness = ambiguity_witness(a)
    if witness is not None:
        raise AmbiguousInput(a.alphabet.format_word(witness))
    t = trim(a)
    field, alphabet = t.field, t.alphabet
    if not t.states:
        return Poly.zero(field, alphabet)

    paths: Dict[Tuple[str, str], RatExpr] = {}
    for p in t.states:
        for q in t.states:
            paths[(p, q)] = Poly.of(field, alphabet, {})
    letters: Dict[Tuple[str, str], Dict[Word, Scalar]] = {}
    for (src, letter, dst), weight in t.edges.items():
        letters.setdefault((src, dst), {})[(letter,)] = weight
    for key, terms in letters.items():
        paths[key] = Poly.of(field, alphabet, terms)

    for r in t.states:
        loop = paths[(r, r)]
        looped = None if loop.is_zero() else make_star(loop)
        updated = {}
        for p in t.states:
            into = paths[(p, r)]
            for q in t.states:
                base = paths[(p, q)]
                out = paths[(r, q)]
                if into.is_zero() or out.is_zero():
                    updated[(p, q)] = base
                    continue
                middle = into if looped is None else make_prod(into, looped)
                through = make_prod(middle, out)
                updated[(p, q)] = through if base.is_zero() else make_sum(base, through)
        paths = updated
        logger.debug("消去状态 %s", r)

    terms: List[RatExpr] = []
    for p in t.states:
        if p not in t.initial:
            continue
        for q in t.states:
            if q in t.terminal and not paths[(p, q)].is_zero():
                terms.append(_scaled(t.initial[p], paths[(p, q)], t.terminal[q]))
    constant = sum((t.initial[p] * t.terminal[p] for p in t.initial if p in t.terminal), field.zero)
    if constant != 0:
        terms.append(Poly.of(field, alphabet, {(): constant}))
    if not terms:
        return Poly.zero(field, alphabet)
    result = terms[0]
    for term in terms[1:]:
        result = make_sum(result, term)
    return result


def support_nfa(e: RatExpr) -> SupportNFA:
    """表达式的支撑自动机；表达式完全无歧义时恰好接受 supp(e)。"""
    return e.support
