from enum import Enum
from functools import cached_property
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np

from app.config.settings import ORDER_CONFIG
from app.utils.exceptions import StructureKindError, StructureValidationError
from app.utils.logger import logger


class ConeDirection(str, Enum):
    LOWER = 'lower'
    UPPER = 'upper'


class Extremum(str, Enum):
    MAX = 'max'
    MIN = 'min'


def canonical_name(token: str) -> str:
    """把 a' 写法统一成 aprime（允许多个撇号）"""
    base = token.rstrip("'")
    return base + 'prime' * (len(token) - len(base))


def _frozen(array: np.ndarray) -> np.ndarray:
    array.flags.writeable = False
    return array


class SubsetValue:
    """载体的子集，按载体下标的布尔位向量表示

    单元素集与其元素等同：比较时可以直接与元素下标或元素名比较。
    """

    __slots__ = ('mask', 'owner')

    def __init__(self, mask: np.ndarray, owner: 'FinitePoset'):
        if mask.dtype != bool or mask.shape != (owner.size,):
            raise ValueError(f"子集位向量形状不符: {mask.shape}")
        self.mask = mask if not mask.flags.writeable else _frozen(mask.copy())
        self.owner = owner

    def indices(self) -> Tuple[int, ...]:
        return tuple(int(i) for i in np.flatnonzero(self.mask))

    def names(self) -> Tuple[str, ...]:
        return tuple(self.owner.names[i] for i in self.indices())

    @property
    def is_singleton(self) -> bool:
        return int(self.mask.sum()) == 1

    @property
    def element(self) -> int:
        """单元素集的唯一元素"""
        if not self.is_singleton:
            raise ValueError(f"{self.braced()} 不是单元素集")
        return int(np.flatnonzero(self.mask)[0])

    def union(self, *others: 'SubsetValue') -> 'SubsetValue':
        mask = self.mask.copy()
        for other in others:
            mask |= other.mask
        return SubsetValue(mask, self.owner)

    __or__ = union

    def issubset(self, other: 'SubsetValue') -> bool:
        return bool(np.all(~self.mask | other.mask))

    def braced(self) -> str:
        """始终带花括号的显示形式，如 {0} 或 {bprime, cprime}"""
        return '{' + ', '.join(self.names()) + '}'

    def __len__(self) -> int:
        return int(self.mask.sum())

    def __iter__(self) -> Iterator[int]:
        return iter(self.indices())

    def __contains__(self, item) -> bool:
        return bool(self.mask[self.owner.resolve(item)])

    def __eq__(self, other) -> bool:
        if isinstance(other, SubsetValue):
            return other.owner.size == self.owner.size and bool(np.array_equal(self.mask, other.mask))
        if isinstance(other, (int, np.integer, str)):
            return self.is_singleton and self.element == self.owner.resolve(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.mask.tobytes())

    def __str__(self) -> str:
        if self.is_singleton:
            return self.owner.names[self.element]
        return self.braced()

    def __repr__(self) -> str:
        return f"SubsetValue({self.braced()})"


ElementLike = Union[int, str]
Part = Union[int, str, SubsetValue]


class FinitePoset:
    """不可变的有限偏序集

    leq[i, j] 为 True 当且仅当 i <= j。bottom/top 自动检测，
    complement 为可选的补映射（下标元组）。
    """

    def __init__(self, names: Sequence[str], leq: np.ndarray, name: str = '',
                 complement: Optional[Sequence[int]] = None):
        self.name = name
        self.names: Tuple[str, ...] = tuple(names)
        self.size = len(self.names)
        self.leq = leq if not leq.flags.writeable else _frozen(leq.copy())
        self._index: Dict[str, int] = {n: i for i, n in enumerate(self.names)}

        rows = np.flatnonzero(self.leq.all(axis=1))
        cols = np.flatnonzero(self.leq.all(axis=0))
        self.bottom: Optional[int] = int(rows[0]) if len(rows) else None
        self.top: Optional[int] = int(cols[0]) if len(cols) else None
        self.complement: Optional[Tuple[int, ...]] = None
        if complement is not None:
            self.complement = tuple(int(c) for c in complement)
            self._validate_complement()

    # 基本访问

    @property
    def is_bounded(self) -> bool:
        return self.bottom is not None and self.top is not None

    def resolve(self, item: ElementLike) -> int:
        """元素名（接受 a' 写法）或下标 → 下标"""
        if isinstance(item, (int, np.integer)):
            if not 0 <= item < self.size:
                raise KeyError(f"下标越界: {item}")
            return int(item)
        key = canonical_name(item)
        if key not in self._index:
            raise KeyError(f"未知元素: {item}")
        return self._index[key]

    def label(self, index: int) -> str:
        return self.names[index]

    def subset(self, items: Iterable[ElementLike] = ()) -> SubsetValue:
        mask = np.zeros(self.size, dtype=bool)
        for item in items:
            mask[self.resolve(item)] = True
        return SubsetValue(mask, self)

    def singleton(self, item: ElementLike) -> SubsetValue:
        return self.subset([item])

    def full(self) -> SubsetValue:
        return SubsetValue(np.ones(self.size, dtype=bool), self)

    def union_of(self, parts: Iterable[Part]) -> SubsetValue:
        """L(A, a) / L(A, B) 约定：把元素和子集合并成一个子集"""
        mask = np.zeros(self.size, dtype=bool)
        for part in parts:
            if isinstance(part, SubsetValue):
                mask |= part.mask
            else:
                mask[self.resolve(part)] = True
        return SubsetValue(mask, self)

    def comp(self, item: ElementLike) -> int:
        if self.complement is None:
            raise StructureKindError(f"偏序集 {self.name} 没有确定的补映射")
        return self.complement[self.resolve(item)]

    def with_complement(self, complement: Sequence[int]) -> 'FinitePoset':
        return FinitePoset(self.names, self.leq, self.name, complement)

    # 派生关系

    @cached_property
    def covers(self) -> List[Tuple[int, int]]:
        """覆盖关系（传递约简），按载体下标排序"""
        return transitive_reduction(self)

    @cached_property
    def sum_table(self) -> Tuple[Tuple[SubsetValue, ...], ...]:
        """全部 x+y = Min U(L(x',y), L(x,y')) 的缓存表"""
        if self.complement is None:
            raise StructureKindError(f"偏序集 {self.name} 没有确定的补映射")
        c = self.complement
        return tuple(
            tuple(min_u(self, lower_cone(self, c[x], y), lower_cone(self, x, c[y]))
                  for y in range(self.size))
            for x in range(self.size)
        )

    def _validate_complement(self) -> None:
        if not self.is_bounded:
            raise StructureValidationError(f"偏序集 {self.name} 无界，不能带补映射")
        if len(self.complement) != self.size:
            raise StructureValidationError(f"补映射长度 {len(self.complement)} 与载体大小 {self.size} 不符")
        for x, y in enumerate(self.complement):
            if not 0 <= y < self.size:
                raise StructureValidationError(f"补映射下标越界: {y}")
            if lower_cone(self, x, y) != self.bottom or upper_cone(self, x, y) != self.top:
                logger.error(f"补映射与序矛盾: {self.names[x]} -> {self.names[y]}")
                raise StructureValidationError(
                    f"补映射与序矛盾: {self.names[y]} 不是 {self.names[x]} 的补元",
                    witness=(self.names[x], self.names[y]))

    def __repr__(self) -> str:
        return f"FinitePoset({self.name!r}, size={self.size})"


def build_poset(names: Sequence[str], covers: Iterable[Tuple[str, str]], name: str = '',
                complement: Optional[Dict[str, str]] = None) -> FinitePoset:
    """由覆盖关系（哈斯图）构造偏序集

    Args:
        names: 元素名，顺序即载体顺序
        covers: (a, b) 表示 a < b；允许冗余（传递蕴含的）覆盖
        name: 结构名
        complement: 可选的补映射 {x: x'}，必须与序相容
    Returns:
        FinitePoset
    """
    names = [canonical_name(n) for n in names]
    if not names:
        raise StructureValidationError("元素列表为空")
    if len(names) > ORDER_CONFIG['max_carrier_size']:
        raise StructureValidationError(f"载体过大: {len(names)} > {ORDER_CONFIG['max_carrier_size']}")
    seen = set()
    for n in names:
        if n in seen:
            raise StructureValidationError(f"重复的元素名: {n}", witness=(n,))
        seen.add(n)
    index = {n: i for i, n in enumerate(names)}

    size = len(names)
    leq = np.eye(size, dtype=bool)
    for lower, upper in covers:
        lower, upper = canonical_name(lower), canonical_name(upper)
        for n in (lower, upper):
            if n not in index:
                raise StructureValidationError(f"覆盖关系引用了未知元素: {n}", witness=(n,))
        if lower == upper:
            raise StructureValidationError(f"自反的覆盖关系: {lower} < {upper}", witness=(lower,))
        leq[index[lower], index[upper]] = True

    # 自反传递闭包
    while True:
        closed = leq | (leq.astype(np.int64) @ leq.astype(np.int64) > 0)
        if np.array_equal(closed, leq):
            break
        leq = closed

    both = leq & leq.T & ~np.eye(size, dtype=bool)
    if both.any():
        i, j = (int(k) for k in np.argwhere(both)[0])
        logger.error(f"偏序集 {name} 存在环: {names[i]} <-> {names[j]}")
        raise StructureValidationError(f"覆盖关系存在环: {names[i]} 与 {names[j]} 互相小于",
                                       witness=(names[i], names[j]))

    comp_indices = None
    if complement is not None:
        comp_map = {canonical_name(k): canonical_name(v) for k, v in complement.items()}
        missing = [n for n in names if n not in comp_map]
        if missing:
            raise StructureValidationError(f"补映射不完整，缺少: {', '.join(missing)}", witness=tuple(missing))
        for k, v in comp_map.items():
            if k not in index or v not in index:
                bad = k if k not in index else v
                raise StructureValidationError(f"补映射引用了未知元素: {bad}", witness=(bad,))
        comp_indices = [index[comp_map[n]] for n in names]

    poset = FinitePoset(names, leq, name, comp_indices)
    logger.info(f"已构造偏序集 {name or '<匿名>'}: {size} 个元素, "
                f"有界={poset.is_bounded}, 带补映射={poset.complement is not None}")
    return poset


def transitive_reduction(P: FinitePoset) -> List[Tuple[int, int]]:
    strict = (P.leq & ~np.eye(P.size, dtype=bool)).astype(np.int64)
    between = (strict @ strict) > 0
    child = strict.astype(bool) & ~between
    return [(int(i), int(j)) for i, j in np.argwhere(child)]


def cone(P: FinitePoset, A: SubsetValue, direction: ConeDirection) -> SubsetValue:
    """下锥 L(A) = {x | x <= a 对所有 a ∈ A}，上锥对偶；空集的锥是整个载体"""
    if direction == ConeDirection.LOWER:
        mask = np.all(P.leq[:, A.mask], axis=1)
    else:
        mask = np.all(P.leq[A.mask, :], axis=0)
    return SubsetValue(mask, P)


def extremal(P: FinitePoset, A: SubsetValue, direction: Extremum) -> SubsetValue:
    """Max A / Min A：A 的极大（极小）元；空集映到空集"""
    strict = P.leq & ~np.eye(P.size, dtype=bool)
    if direction == Extremum.MAX:
        dominated = np.any(strict[:, A.mask], axis=1)
    else:
        dominated = np.any(strict[A.mask, :], axis=0)
    return SubsetValue(A.mask & ~dominated, P)


def lower_cone(P: FinitePoset, *parts: Part) -> SubsetValue:
    return cone(P, P.union_of(parts), ConeDirection.LOWER)


def upper_cone(P: FinitePoset, *parts: Part) -> SubsetValue:
    return cone(P, P.union_of(parts), ConeDirection.UPPER)


def max_l(P: FinitePoset, *parts: Part) -> SubsetValue:
    return extremal(P, lower_cone(P, *parts), Extremum.MAX)


def min_u(P: FinitePoset, *parts: Part) -> SubsetValue:
    return extremal(P, upper_cone(P, *parts), Extremum.MIN)
