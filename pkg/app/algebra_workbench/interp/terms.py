"""项的抽象语法树

节点是不可变的 dataclass；Term 在根节点之外记录求值场景（setting）、
元素名（用于显示）以及插值构造出的基项 p_1..p_n。
"""
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterator, Tuple, Type

from app.utils.exceptions import TermError


class Setting(str, Enum):
    FIELD = 'field'
    RING = 'ring'
    BOOLEAN_ALGEBRA = 'boolean_algebra'
    BOOLEAN_POSET = 'boolean_poset'


@dataclass(frozen=True)
class Node:
    def children(self) -> Tuple['Node', ...]:
        return ()


@dataclass(frozen=True)
class Const(Node):
    element: int


@dataclass(frozen=True)
class Var(Node):
    pass


@dataclass(frozen=True)
class Unary(Node):
    arg: Node

    def children(self) -> Tuple[Node, ...]:
        return (self.arg,)


@dataclass(frozen=True)
class Binary(Node):
    lhs: Node
    rhs: Node

    def children(self) -> Tuple[Node, ...]:
        return (self.lhs, self.rhs)


@dataclass(frozen=True)
class Variadic(Node):
    args: Tuple[Node, ...]

    def children(self) -> Tuple[Node, ...]:
        return self.args


class Neg(Unary):
    pass


class Comp(Unary):
    pass


class Delta(Unary):
    pass


class Sub(Binary):
    pass


class Add(Binary):
    pass


class Mul(Binary):
    pass


class Join(Binary):
    pass


class Meet(Binary):
    pass


class SDiff(Binary):
    pass


class MaxL(Variadic):
    pass


class MinU(Variadic):
    pass


class Union(Variadic):
    pass


# 文本语法中的函数名
NODE_KEYWORDS = {
    Neg: 'neg', Comp: 'comp', Delta: 'delta',
    Sub: 'sub', Add: 'add', Mul: 'mul',
    Join: 'join', Meet: 'meet', SDiff: 'sdiff',
    MaxL: 'max_l', MinU: 'min_u', Union: 'union',
}

_RING_NODES = (Const, Var, Neg, Sub, Add, Mul, Delta)
ALLOWED_NODES = {
    Setting.FIELD: _RING_NODES,
    Setting.RING: _RING_NODES,
    Setting.BOOLEAN_ALGEBRA: (Const, Var, Join, Meet, Comp, Delta, SDiff),
    Setting.BOOLEAN_POSET: (Const, Var, Comp, Delta, SDiff, MaxL, MinU, Union),
}


def settings_allowing(node_type: Type[Node]) -> Tuple[Setting, ...]:
    return tuple(s for s, allowed in ALLOWED_NODES.items() if node_type in allowed)


def walk(node: Node) -> Iterator[Node]:
    yield node
    for child in node.children():
        yield from walk(child)


@dataclass(frozen=True)
class Term:
    root: Node
    setting: Setting
    names: Tuple[str, ...] = ()
    basis: Tuple['Term', ...] = field(default=(), compare=False)

    def __post_init__(self):
        allowed = ALLOWED_NODES[self.setting]
        for node in walk(self.root):
            if type(node) not in allowed:
                keyword = NODE_KEYWORDS.get(type(node), type(node).__name__)
                needed = ' | '.join(s.value for s in settings_allowing(type(node)))
                raise TermError(f"构造 {keyword} 在 {self.setting.value} 场景中无效（需要 {needed}）")
            if isinstance(node, Const) and self.names and not 0 <= node.element < len(self.names):
                raise TermError(f"常量下标越界: {node.element}")

    def __str__(self) -> str:
        return unparse(self)


def unparse(term: Term) -> str:
    """渲染为文本语法，如 sdiff(x, cprime)"""

    def render(node: Node) -> str:
        if isinstance(node, Var):
            return 'x'
        if isinstance(node, Const):
            return term.names[node.element] if term.names else str(node.element)
        inner = ', '.join(render(child) for child in node.children())
        return f"{NODE_KEYWORDS[type(node)]}({inner})"

    return render(term.root)
