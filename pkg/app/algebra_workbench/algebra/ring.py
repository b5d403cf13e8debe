from typing import Optional, Sequence, Tuple, Union

import numpy as np

from app.algebra_workbench.order.poset import canonical_name
from app.utils.exceptions import RingAxiomError, StructureValidationError
from app.utils.logger import logger


class UnitaryRing:
    """由 Cayley 表给出的有限幺环，构造后不可变

    add/mul 为 N×N 只读整数矩阵，元素用载体下标表示。
    """

    def __init__(self, names: Sequence[str], add: np.ndarray, mul: np.ndarray,
                 zero: int, one: int, name: str = ''):
        self.name = name
        self.names: Tuple[str, ...] = tuple(names)
        self.size = len(self.names)
        self.add = add
        self.mul = mul
        self.zero = zero
        self.one = one
        self._index = {n: i for i, n in enumerate(self.names)}

        idx = np.arange(self.size)
        self.is_trivial = self.size == 1
        self.is_commutative = bool(np.array_equal(mul, mul.T))
        self.is_boolean_ring = bool(np.array_equal(np.diag(mul), idx)
                                    and np.all(np.diag(add) == zero))
        nonzero = [x for x in range(self.size) if x != zero]
        self.is_field = (self.is_commutative and not self.is_trivial
                         and all(np.any(mul[x] == one) for x in nonzero))

    def resolve(self, item: Union[int, str]) -> int:
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

    def plus(self, x: int, y: int) -> int:
        return int(self.add[x, y])

    def times(self, x: int, y: int) -> int:
        return int(self.mul[x, y])

    def neg(self, x: int) -> int:
        return int(np.flatnonzero(self.add[x] == self.zero)[0])

    def minus(self, x: int, y: int) -> int:
        return self.plus(x, self.neg(y))

    def inverse(self, x: int) -> Optional[int]:
        """乘法逆元（穷举搜索），不存在时返回 None"""
        for y in range(self.size):
            if self.mul[x, y] == self.one and self.mul[y, x] == self.one:
                return y
        return None

    def __repr__(self) -> str:
        return f"UnitaryRing({self.name!r}, size={self.size})"


def _first(mask: np.ndarray) -> Tuple[int, ...]:
    return tuple(int(i) for i in np.argwhere(mask)[0])


def _check(ok: np.ndarray, axiom: str, message: str, names: Sequence[str], ring_name: str) -> None:
    if not np.all(ok):
        witness = tuple(names[i] for i in _first(~ok))
        logger.error(f"环 {ring_name} 公理不成立: {axiom} at {witness}")
        raise RingAxiomError(axiom, f"{message}，反例 ({', '.join(witness)})", witness)


def build_ring(names: Sequence[str], add_table: Sequence[Sequence[int]],
               mul_table: Sequence[Sequence[int]], zero: int, one: int,
               name: str = '') -> UnitaryRing:
    """穷举验证环公理后构造 UnitaryRing

    Args:
        names: 元素名
        add_table, mul_table: 以下标表示的 Cayley 表
        zero, one: 零元与单位元下标
    Raises:
        RingAxiomError: 公理不成立，附反例元组
    """
    names = [canonical_name(n) for n in names]
    n = len(names)
    if n == 0:
        raise StructureValidationError("元素列表为空")
    if len(set(names)) != n:
        dup = next(x for x in names if names.count(x) > 1)
        raise StructureValidationError(f"重复的元素名: {dup}", witness=(dup,))
    add = np.array(add_table, dtype=np.int64)
    mul = np.array(mul_table, dtype=np.int64)
    for label, table in (('add', add), ('mul', mul)):
        if table.shape != (n, n):
            raise StructureValidationError(f"{label} 表形状 {table.shape} 与元素数 {n} 不符")
        if table.min() < 0 or table.max() >= n:
            raise StructureValidationError(f"{label} 表含有未声明的元素")
    if not (0 <= zero < n and 0 <= one < n):
        raise StructureValidationError("零元或单位元不在载体中")

    idx = np.arange(n)
    I = idx[:, None, None]

    # (R, +, 0) 为阿贝尔群
    _check(add[add] == add[I, add[None, :, :]], 'add-associativity', "加法结合律不成立", names, name)
    _check(add == add.T, 'add-commutativity', "加法交换律不成立", names, name)
    _check((add[zero] == idx) & (add[:, zero] == idx),
           'zero-identity', "zero 不是加法单位元", names, name)
    _check(np.any(add == zero, axis=1), 'add-inverse', "存在没有加法逆元的元素", names, name)

    # 乘法结合律与单位元
    _check(mul[mul] == mul[I, mul[None, :, :]], 'mul-associativity', "乘法结合律不成立", names, name)
    _check((mul[one] == idx) & (mul[:, one] == idx), 'one-identity', "one is not an identity", names, name)

    # 左右分配律：x(y+z) = xy+xz，(y+z)x = yx+zx
    left = mul[I, add[None, :, :]] == add[mul[:, :, None], mul[:, None, :]]
    _check(left, 'left-distributivity', "左分配律不成立", names, name)
    right = mul[add[None, :, :], I] == add[mul.T[:, :, None], mul.T[:, None, :]]
    _check(right, 'right-distributivity', "右分配律不成立", names, name)

    add.flags.writeable = False
    mul.flags.writeable = False
    ring = UnitaryRing(names, add, mul, zero, one, name)
    if ring.is_trivial:
        logger.warning(f"环 {name} 是平凡环 (0=1)，不能用于插值")
    logger.info(f"已构造环 {name or '<匿名>'}: {n} 个元素, 交换={ring.is_commutative}, "
                f"域={ring.is_field}, 布尔环={ring.is_boolean_ring}")
    return ring
