"""标准结构族：Z_n、幂集布尔代数、Z_2 上的 2×2 矩阵环"""
import itertools
import string
from enum import Enum
from typing import List, Optional, Tuple, Union

import numpy as np

from app.algebra_workbench.algebra.boolean_algebra import BooleanAlgebra
from app.algebra_workbench.algebra.ring import UnitaryRing, build_ring
from app.algebra_workbench.order.poset import FinitePoset
from app.config.settings import GENERATOR_CONFIG
from app.utils.exceptions import StructureValidationError
from app.utils.logger import logger


class StructureFamily(str, Enum):
    ZMOD = 'zmod'
    POWERSET = 'powerset'
    MATRING2 = 'matring2'


def zmod(n: int) -> UnitaryRing:
    if not 1 <= n <= GENERATOR_CONFIG['zmod_max']:
        raise StructureValidationError(f"zmod 的 n 超出范围 [1, {GENERATOR_CONFIG['zmod_max']}]: {n}")
    idx = np.arange(n)
    add = (idx[:, None] + idx[None, :]) % n
    mul = (idx[:, None] * idx[None, :]) % n
    return build_ring([str(i) for i in range(n)], add, mul, 0, 1 % n, name=f"Z{n}")


def _powerset_names(n: int) -> Tuple[List[str], List[int]]:
    """按 (秩, 位) 排列的子集命名：0、1、原子字母，互补的一对记为 s / sprime（两个原子互补时为 a / b）"""
    full = (1 << n) - 1
    masks = sorted(range(1 << n), key=lambda m: (bin(m).count('1'), [-(m >> i & 1) for i in range(n)]))
    names = {0: '0'} if n == 0 else {0: '0', full: '1'}

    def letters(m: int) -> str:
        return ''.join(string.ascii_lowercase[i] for i in range(n) if m >> i & 1)

    for m in masks:
        if m in names:
            continue
        other = full ^ m
        rank, other_rank = bin(m).count('1'), bin(other).count('1')
        # 两个原子互补时都用字母
        if rank == other_rank == 1:
            names[m], names[other] = letters(m), letters(other)
        # 秩较小的一方（同秩时含原子 a 的一方）用字母命名
        elif rank < other_rank or (rank == other_rank and m & 1):
            names[m] = letters(m)
            names[other] = letters(m) + 'prime'
    return [names[m] for m in masks], masks


def powerset(n: int) -> BooleanAlgebra:
    if not 0 <= n <= GENERATOR_CONFIG['powerset_max']:
        raise StructureValidationError(f"powerset 的 n 超出范围 [0, {GENERATOR_CONFIG['powerset_max']}]: {n}")
    names, masks = _powerset_names(n)
    bits = np.array(masks, dtype=np.int64)
    position = {m: i for i, m in enumerate(masks)}

    leq = (bits[:, None] & ~bits[None, :]) == 0
    full = (1 << n) - 1
    complement = [position[full ^ m] for m in masks]
    poset = FinitePoset(names, leq, name=f"powerset{n}", complement=complement)

    lookup = np.array([position[m] for m in range(1 << n)], dtype=np.int64)
    join = lookup[bits[:, None] | bits[None, :]]
    meet = lookup[bits[:, None] & bits[None, :]]
    join.flags.writeable = False
    meet.flags.writeable = False
    algebra = BooleanAlgebra(poset, join, meet, complement)
    logger.info(f"已生成 {1 << n} 元幂集布尔代数 powerset{n}")
    return algebra


def matring2() -> UnitaryRing:
    """Z_2 上全体 2×2 矩阵构成的 16 元非交换幺环，元素名为按行展开的四个位"""
    matrices = [np.array(entries, dtype=np.int64).reshape(2, 2)
                for entries in itertools.product((0, 1), repeat=4)]
    names = [''.join(str(v) for v in m.flatten()) for m in matrices]
    position = {name: i for i, name in enumerate(names)}

    def key(m: np.ndarray) -> int:
        return position[''.join(str(v) for v in (m % 2).flatten())]

    add = [[key(a + b) for b in matrices] for a in matrices]
    mul = [[key(a @ b) for b in matrices] for a in matrices]
    return build_ring(names, add, mul, position['0000'], position['1001'], name='matring2')


def generate(kind: Union[StructureFamily, str], n: Optional[int] = None) -> Union[UnitaryRing, BooleanAlgebra]:
    """按结构族生成标准结构

    Args:
        kind: zmod | powerset | matring2
        n: zmod 的模数或 powerset 的原子数；matring2 忽略
    """
    kind = StructureFamily(kind)
    if kind == StructureFamily.MATRING2:
        return matring2()
    if n is None:
        raise StructureValidationError(f"{kind.value} 需要参数 n")
    if kind == StructureFamily.ZMOD:
        return zmod(n)
    return powerset(n)


def parse_generator_spec(spec: str) -> Tuple[StructureFamily, Optional[int]]:
    """解析 'zmod 6'、'powerset 4'、'matring2' 形式的生成器描述"""
    parts = spec.split()
    try:
        kind = StructureFamily(parts[0])
    except (IndexError, ValueError):
        raise StructureValidationError(f"未知的结构生成器: {spec!r}")
    if kind == StructureFamily.MATRING2:
        return kind, None
    if len(parts) != 2 or not parts[1].isdigit():
        raise StructureValidationError(f"生成器 {kind.value} 需要一个整数参数: {spec!r}")
    return kind, int(parts[1])
