"""插值项的构造：域上的拉格朗日基线，以及带 Baaz delta 的环、布尔代数、布尔偏序集版本"""
from functools import reduce
from typing import Callable, List, Sequence

from app.algebra_workbench.algebra.boolean_algebra import BooleanAlgebra
from app.algebra_workbench.algebra.ring import UnitaryRing
from app.algebra_workbench.interp.support import SupportFunction
from app.algebra_workbench.interp.terms import (Add, Const, Delta, Join, MaxL, Meet, MinU, Mul, Node,
                                                SDiff, Setting, Sub, Term, Union, Var)
from app.algebra_workbench.order.poset import FinitePoset
from app.algebra_workbench.order.properties import cached_classification
from app.utils.exceptions import StructureKindError
from app.utils.logger import logger


def _fold(nodes: Sequence[Node], combine: Callable[[Node, Node], Node], empty: Node) -> Node:
    """左结合折叠；空序列取单位元（空积 = 1，空交 = 1）"""
    if not nodes:
        return empty
    return reduce(combine, nodes)


def _others(support: SupportFunction, i: int) -> List[int]:
    return [a for j, a in enumerate(support.arguments) if j != i]


def _require_nontrivial_ring(R: UnitaryRing) -> None:
    if R.is_trivial:
        raise StructureKindError(f"环 {R.name} 是平凡环 (0=1)，拒绝插值")


def lagrange_field(F: UnitaryRing, support: SupportFunction) -> Term:
    """p(x) = Σ f(a_i)·Π_{j≠i} (x−a_j)·(a_i−a_j)^{-1}，逆元在 F 中穷举求得"""
    if not F.is_field:
        raise StructureKindError(f"{F.name} 不是域，拉格朗日插值需要域")
    _require_nontrivial_ring(F)
    support.check_carrier(F.size)

    basis = []
    for i, a_i in enumerate(support.arguments):
        factors = [Mul(Sub(Var(), Const(a_j)), Const(F.inverse(F.minus(a_i, a_j))))
                   for a_j in _others(support, i)]
        basis.append(_fold(factors, Mul, Const(F.one)))
    summands = [Mul(Const(f_i), p_i) for f_i, p_i in zip(support.values, basis)]
    root = _fold(summands, Add, Const(F.zero))
    logger.debug(f"已在 {F.name} 上构造 {support.n} 点拉格朗日插值")
    return Term(root, Setting.FIELD, F.names,
                basis=tuple(Term(p, Setting.FIELD, F.names) for p in basis))


def interpolate_ring(R: UnitaryRing, support: SupportFunction) -> Term:
    """p_i(x) = Π_{j≠i} Δ(x−a_j)，p(x) = Σ f(a_i)·p_i(x)（f(a_i) 左乘）"""
    _require_nontrivial_ring(R)
    support.check_carrier(R.size)

    basis = [_fold([Delta(Sub(Var(), Const(a_j))) for a_j in _others(support, i)], Mul, Const(R.one))
             for i in range(support.n)]
    summands = [Mul(Const(f_i), p_i) for f_i, p_i in zip(support.values, basis)]
    root = _fold(summands, Add, Const(R.zero))
    logger.debug(f"已在 {R.name} 上构造 {support.n} 点环插值")
    return Term(root, Setting.RING, R.names,
                basis=tuple(Term(p, Setting.RING, R.names) for p in basis))


def interpolate_boolean_algebra(A: BooleanAlgebra, support: SupportFunction, form: str = 'join') -> Term:
    """p_i(x) = ⋀_{j≠i} Δ(x+a_j)，p(x) = ⋁ (f(a_i) ∧ p_i(x))

    form='sum' 时各项改用对称差相加，在支撑点上两者取值相同。
    """
    if form not in ('join', 'sum'):
        raise ValueError(f"未知的组合形式: {form}")
    support.check_carrier(A.size)

    basis = [_fold([Delta(SDiff(Var(), Const(a_j))) for a_j in _others(support, i)], Meet, Const(A.one))
             for i in range(support.n)]
    summands = [Meet(Const(f_i), p_i) for f_i, p_i in zip(support.values, basis)]
    root = _fold(summands, Join if form == 'join' else SDiff, Const(A.zero))
    logger.debug(f"已在 {A.name} 上构造 {support.n} 点布尔代数插值 ({form})")
    return Term(root, Setting.BOOLEAN_ALGEBRA, A.names,
                basis=tuple(Term(p, Setting.BOOLEAN_ALGEBRA, A.names) for p in basis))


def interpolate_boolean_poset(P: FinitePoset, support: SupportFunction, require_boolean: bool = True) -> Term:
    """p(x) = Min U(⋃_i Max L(f(a_i), p_i(x)))，其中 p_i(x) = Max L(⋃_{j≠i} Δ(x+a_j))

    require_boolean=False 只用于在可补但不分配的偏序集上复现反例。
    """
    if isinstance(P, BooleanAlgebra):
        P = P.poset
    if require_boolean:
        result = cached_classification(P)
        if not result.is_boolean_poset:
            failed = [f for f in ('is_bounded', 'is_complemented', 'is_distributive') if not getattr(result, f)]
            raise StructureKindError(f"{P.name} 不是布尔偏序集，不成立: {', '.join(failed)}")
    if not P.is_bounded or P.complement is None:
        raise StructureKindError(f"{P.name} 需要有界且已确定补映射")
    support.check_carrier(P.size)

    basis = [MaxL(tuple(Delta(SDiff(Var(), Const(a_j))) for a_j in _others(support, i)))
             for i in range(support.n)]
    summands = tuple(MaxL((Const(f_i), p_i)) for f_i, p_i in zip(support.values, basis))
    root = MinU((Union(summands),))
    logger.debug(f"已在 {P.name} 上构造 {support.n} 点布尔偏序集插值")
    return Term(root, Setting.BOOLEAN_POSET, P.names,
                basis=tuple(Term(p, Setting.BOOLEAN_POSET, P.names) for p in basis))
