from typing import Sequence, Tuple, Union

import numpy as np

from app.algebra_workbench.algebra.ring import UnitaryRing, build_ring
from app.algebra_workbench.order.poset import FinitePoset, max_l, min_u
from app.algebra_workbench.order.properties import cached_classification, find_complements
from app.utils.exceptions import StructureKindError, StructureValidationError
from app.utils.logger import logger


class BooleanAlgebra:
    """布尔代数 (B, ∨, ∧, ′, 0, 1)，底层是一个带补映射的有限偏序集"""

    def __init__(self, poset: FinitePoset, join: np.ndarray, meet: np.ndarray,
                 complement: Sequence[int]):
        self.poset = poset
        self.join = join
        self.meet = meet
        self.complement: Tuple[int, ...] = tuple(complement)
        self._validate()

    @property
    def name(self) -> str:
        return self.poset.name

    @property
    def names(self) -> Tuple[str, ...]:
        return self.poset.names

    @property
    def size(self) -> int:
        return self.poset.size

    @property
    def zero(self) -> int:
        return self.poset.bottom

    @property
    def one(self) -> int:
        return self.poset.top

    def resolve(self, item: Union[int, str]) -> int:
        return self.poset.resolve(item)

    def label(self, index: int) -> str:
        return self.poset.names[index]

    def join_of(self, x: int, y: int) -> int:
        return int(self.join[x, y])

    def meet_of(self, x: int, y: int) -> int:
        return int(self.meet[x, y])

    def comp(self, x: int) -> int:
        return self.complement[x]

    def _validate(self) -> None:
        P = self.poset
        comp = np.array(self.complement)
        idx = np.arange(P.size)
        for x in range(P.size):
            for y in range(P.size):
                if min_u(P, x, y) != int(self.join[x, y]) or max_l(P, x, y) != int(self.meet[x, y]):
                    raise StructureValidationError(
                        f"∨/∧ 表与序不一致: ({P.names[x]}, {P.names[y]})", witness=(P.names[x], P.names[y]))
        # 补律与 De Morgan 律
        if not (np.all(self.meet[idx, comp] == P.bottom) and np.all(self.join[idx, comp] == P.top)):
            raise StructureValidationError("补律 x∧x′=0, x∨x′=1 不成立")
        de_morgan = comp[self.join] == self.meet[comp[:, None], comp[None, :]]
        if not np.all(de_morgan):
            x, y = (int(i) for i in np.argwhere(~de_morgan)[0])
            raise StructureValidationError(f"De Morgan 律不成立: ({P.names[x]}, {P.names[y]})",
                                           witness=(P.names[x], P.names[y]))

    def __repr__(self) -> str:
        return f"BooleanAlgebra({self.name!r}, size={self.size})"


def symmetric_difference_ba(A: BooleanAlgebra, x: int, y: int) -> int:
    """x+y := (x′∧y)∨(x∧y′)"""
    return A.join_of(A.meet_of(A.comp(x), y), A.meet_of(x, A.comp(y)))


def boolean_ring_of(A: BooleanAlgebra) -> UnitaryRing:
    """对应的布尔环 (B, +, ∧, 0, 1)，加法为对称差"""
    n = A.size
    add = [[symmetric_difference_ba(A, x, y) for y in range(n)] for x in range(n)]
    return build_ring(A.names, add, A.meet, A.zero, A.one, name=f"{A.name}-ring")


def boolean_algebra_from_poset(P: FinitePoset) -> BooleanAlgebra:
    """从 Min U / Max L 的单元素值读出 ∨ / ∧ 表"""
    result = cached_classification(P)
    if not result.is_boolean_algebra:
        if result.is_boolean_poset and not result.is_lattice:
            x, y = result.witnesses['is_lattice']
            raise StructureKindError(f"{P.name} 不是格: Min U({x},{y}) = {min_u(P, x, y).braced()}")
        failed = [f for f, ok in result.flags().items() if not ok]
        raise StructureKindError(f"{P.name} 不是布尔代数，不成立: {', '.join(failed)}")
    n = P.size
    join = np.array([[min_u(P, x, y).element for y in range(n)] for x in range(n)], dtype=np.int64)
    meet = np.array([[max_l(P, x, y).element for y in range(n)] for x in range(n)], dtype=np.int64)
    join.flags.writeable = False
    meet.flags.writeable = False
    complement = P.complement if P.complement is not None else find_complements(P).mapping
    if P.complement is None:
        P = P.with_complement(complement)
    algebra = BooleanAlgebra(P, join, meet, complement)
    logger.info(f"已由偏序集 {P.name} 得到 {n} 元布尔代数")
    return algebra
