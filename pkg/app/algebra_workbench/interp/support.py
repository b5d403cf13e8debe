from dataclasses import dataclass
from typing import Iterable, Sequence, Tuple

from app.utils.exceptions import SupportError


@dataclass(frozen=True)
class SupportFunction:
    """有限支撑函数 a_i ↦ f(a_i)，顺序即 a_1..a_n"""
    points: Tuple[Tuple[int, int], ...]

    def __post_init__(self):
        if not self.points:
            raise SupportError("支撑函数至少需要一个点")
        seen = set()
        for a, _ in self.points:
            if a in seen:
                raise SupportError(f"支撑点重复: {a}")
            seen.add(a)

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def arguments(self) -> Tuple[int, ...]:
        return tuple(a for a, _ in self.points)

    @property
    def values(self) -> Tuple[int, ...]:
        return tuple(v for _, v in self.points)

    def check_carrier(self, size: int) -> None:
        for a, v in self.points:
            if not (0 <= a < size and 0 <= v < size):
                raise SupportError(f"支撑点 ({a}, {v}) 不在载体中")

    def describe(self, names: Sequence[str]) -> str:
        return ', '.join(f"{names[a]}:{names[v]}" for a, v in self.points)

    @classmethod
    def from_pairs(cls, structure, pairs: Iterable[Tuple[object, object]]) -> 'SupportFunction':
        """由元素名（或下标）对构造，名称经结构解析"""
        points = []
        for a, v in pairs:
            try:
                points.append((structure.resolve(a), structure.resolve(v)))
            except KeyError as e:
                raise SupportError(f"支撑点引用了未知元素: {e.args[0]}")
        support = cls(tuple(points))
        support.check_carrier(structure.size)
        return support
