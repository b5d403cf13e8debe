"""Baaz delta 与偏序集上的对称差算子"""
from app.algebra_workbench.algebra.ring import UnitaryRing
from app.algebra_workbench.order.poset import FinitePoset, SubsetValue
from app.utils.exceptions import EmptyConeError, StructureKindError


def baaz_delta_elem(R: UnitaryRing, x: int) -> int:
    """Δ(0) = 0，其余 Δ(x) = 1"""
    return R.zero if x == R.zero else R.one


def baaz_delta_subset(P: FinitePoset, A: SubsetValue) -> int:
    """偏序集上的 Δ 算子：Δ({0}) = 0，其余非空子集映到 1"""
    if not P.is_bounded:
        raise StructureKindError(f"偏序集 {P.name} 无界，Δ 无定义")
    if len(A) == 0:
        raise EmptyConeError("empty cone: Δ(∅) 无定义")
    return P.bottom if A == P.bottom else P.top


def sdiff_poset(P: FinitePoset, x: int, y: int) -> SubsetValue:
    """x+y := Min U(L(x′,y), L(x,y′))，结果是子集而不一定是元素"""
    return P.sum_table[x][y]
