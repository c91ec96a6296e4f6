"""
测试共用的示例级数。
"""
from pywfa.linalg import QQ
from pywfa.series import LinearRep, WFA


def r1() -> LinearRep:
    """S(xⁿ) = 2ⁿ。"""
    return LinearRep.build(QQ, 'x', [1], {'x': [[2]]}, [1])


def r2() -> LinearRep:
    """S(x²ᵏ) = 2, S(x²ᵏ⁺¹) = 3。"""
    return LinearRep.build(QQ, 'x', [1, 0], {'x': [[0, 1], [1, 0]]}, [2, 3])


def r4() -> LinearRep:
    """S(xⁿ) = 2ⁿ + 3ⁿ。"""
    return LinearRep.build(QQ, 'x', [1, 1], {'x': [[2, 0], [0, 3]]}, [1, 1])


def fibonacci() -> LinearRep:
    """S(xⁿ) = F(n)：0, 1, 1, 2, 3, 5, ..."""
    return LinearRep.build(QQ, 'x', [1, 0], {'x': [[0, 1], [1, 1]]}, [0, 1])


def s_mix() -> LinearRep:
    """s(2k) = 2ᵏ, s(2k+1) = 3ᵏ 的窗口表示，递推 s(n) = 5s(n−2) − 6s(n−4)。"""
    m = [[0, 0, 0, -6],
         [1, 0, 0, 0],
         [0, 1, 0, 5],
         [0, 0, 1, 0]]
    return LinearRep.build(QQ, 'x', [1, 1, 2, 3], {'x': m}, [1, 0, 0, 0])


def u_mix() -> WFA:
    """两个不相交的 2-圈，权重 2 与 3，识别 s_mix。"""
    return WFA.build(QQ, 'x', ['1', '2', '3', '4'],
                     initial={'1': 1, '2': 1},
                     edges={('1', 'x', '4'): 2, ('4', 'x', '1'): 1,
                            ('2', 'x', '3'): 1, ('3', 'x', '2'): 3},
                     terminal={'1': 1, '3': 1})


def loop(weight=2, letter: str = 'x') -> WFA:
    """单状态自环，I = T = 1。"""
    return WFA.build(QQ, letter, ['q'], initial={'q': 1},
                     edges={('q', letter, 'q'): weight}, terminal={'q': 1})


def two_letter() -> WFA:
    """字母表 {a, b} 上的确定性自动机：S(w) = 2^{#a(w)}·3^{#b(w)}，只接受 a*b*。"""
    return WFA.build(QQ, 'ab', ['p', 'q'], initial={'p': 1},
                     edges={('p', 'a', 'p'): 2, ('p', 'b', 'q'): 3, ('q', 'b', 'q'): 3},
                     terminal={'p': 1, 'q': 1})


def ambiguous() -> WFA:
    """单词 x 有两条接受路径。"""
    return WFA.build(QQ, 'x', ['p', 'q', 'r'], initial={'p': 1},
                     edges={('p', 'x', 'q'): 1, ('p', 'x', 'r'): 1},
                     terminal={'q': 1, 'r': 1})


def random_rep(rng, letters: str = 'x', field=QQ, max_dim: int = 3, low: int = -3,
               high: int = 3) -> LinearRep:
    """维数 1..max_dim、元素取自 [low, high] 的随机线性表示。"""
    n = rng.randint(1, max_dim)

    def row():
        return [rng.randint(low, high) for _ in range(n)]

    return LinearRep.build(field, letters, row(), {x: [row() for _ in range(n)] for x in letters},
                           row())


def random_wfa(rng, letters: str = 'ab', field=QQ, max_states: int = 3,
               density: float = 0.4, max_weight: int = 4) -> WFA:
    """随机加权自动机，权重取自 [1, max_weight]，状态名为 '0'、'1'、..."""
    states = [str(i) for i in range(rng.randint(1, max_states))]

    def weight():
        return rng.randint(1, max_weight)

    initial = {q: weight() for q in states if rng.random() < 0.5}
    terminal = {q: weight() for q in states if rng.random() < 0.5}
    edges = {(p, x, q): weight() for p in states for x in letters for q in states
             if rng.random() < density}
    return WFA.build(field, letters, states, initial=initial, edges=edges, terminal=terminal)


REPRESENTATIONS = {
    'r1': r1,
    'r2': r2,
    'r4': r4,
    'fibonacci': fibonacci,
    's_mix': s_mix,
}
