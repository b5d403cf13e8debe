"""统一的项求值器：环/域/布尔代数场景得到元素，布尔偏序集场景得到子集"""
from dataclasses import dataclass
from typing import Dict, List, Tuple, Union as TypingUnion

import numpy as np

from app.algebra_workbench.algebra.boolean_algebra import BooleanAlgebra, symmetric_difference_ba
from app.algebra_workbench.algebra.ring import UnitaryRing
from app.algebra_workbench.interp.operators import baaz_delta_elem, baaz_delta_subset, sdiff_poset
from app.algebra_workbench.interp.terms import (Add, Comp, Const, Delta, Join, MaxL, Meet, MinU, Mul,
                                                Neg, Node, SDiff, Setting, Sub, Term, Union, Var)
from app.algebra_workbench.order.poset import FinitePoset, SubsetValue, canonical_name, max_l, min_u
from app.utils.exceptions import TermError

Structure = TypingUnion[UnitaryRing, BooleanAlgebra, FinitePoset]
Value = TypingUnion[int, SubsetValue]


@dataclass(frozen=True, eq=False)
class EvalResult:
    value: Value
    setting: Setting
    names: Tuple[str, ...]

    @property
    def is_subset(self) -> bool:
        return isinstance(self.value, SubsetValue)

    def __eq__(self, other) -> bool:
        if isinstance(other, EvalResult):
            other = other.value
        if isinstance(other, str):
            key = canonical_name(other)
            if key not in self.names:
                return False
            other = self.names.index(key)
        if isinstance(self.value, SubsetValue):
            return self.value == other
        if isinstance(other, SubsetValue):
            return other == self.value
        if isinstance(other, (int, np.integer)):
            return self.value == int(other)
        return NotImplemented

    def __hash__(self) -> int:
        if isinstance(self.value, SubsetValue):
            return hash(self.value.element) if self.value.is_singleton else hash(self.value)
        return hash(self.value)

    def __str__(self) -> str:
        if isinstance(self.value, SubsetValue):
            return str(self.value)
        return self.names[self.value]


def structure_for(structure: Structure, setting: Setting) -> Structure:
    """检查结构类型与场景是否匹配，返回实际用于求值的结构"""
    if setting == Setting.BOOLEAN_POSET:
        if isinstance(structure, BooleanAlgebra):
            structure = structure.poset
        if not isinstance(structure, FinitePoset):
            raise TermError(f"场景 {setting.value} 需要偏序集，得到 {type(structure).__name__}")
        return structure
    if setting == Setting.BOOLEAN_ALGEBRA:
        if not isinstance(structure, BooleanAlgebra):
            raise TermError(f"场景 {setting.value} 需要布尔代数，得到 {type(structure).__name__}")
        return structure
    if not isinstance(structure, UnitaryRing):
        raise TermError(f"场景 {setting.value} 需要环，得到 {type(structure).__name__}")
    if setting == Setting.FIELD and not structure.is_field:
        raise TermError(f"场景 field 需要域，{structure.name} 不是域")
    return structure


def _eval_ring(R: UnitaryRing, node: Node, x: int) -> int:
    match node:
        case Const(element):
            return element
        case Var():
            return x
        case Neg(arg):
            return R.neg(_eval_ring(R, arg, x))
        case Sub(lhs, rhs):
            return R.minus(_eval_ring(R, lhs, x), _eval_ring(R, rhs, x))
        case Add(lhs, rhs):
            return R.plus(_eval_ring(R, lhs, x), _eval_ring(R, rhs, x))
        case Mul(lhs, rhs):
            return R.times(_eval_ring(R, lhs, x), _eval_ring(R, rhs, x))
        case Delta(arg):
            return baaz_delta_elem(R, _eval_ring(R, arg, x))
        case _:
            raise TermError(f"环场景无法求值节点 {node}")


def _eval_algebra(A: BooleanAlgebra, node: Node, x: int) -> int:
    match node:
        case Const(element):
            return element
        case Var():
            return x
        case Join(lhs, rhs):
            return A.join_of(_eval_algebra(A, lhs, x), _eval_algebra(A, rhs, x))
        case Meet(lhs, rhs):
            return A.meet_of(_eval_algebra(A, lhs, x), _eval_algebra(A, rhs, x))
        case Comp(arg):
            return A.comp(_eval_algebra(A, arg, x))
        case Delta(arg):
            return A.zero if _eval_algebra(A, arg, x) == A.zero else A.one
        case SDiff(lhs, rhs):
            return symmetric_difference_ba(A, _eval_algebra(A, lhs, x), _eval_algebra(A, rhs, x))
        case _:
            raise TermError(f"布尔代数场景无法求值节点 {node}")


def _singleton(P: FinitePoset, value: SubsetValue, operator: str) -> int:
    if not value.is_singleton:
        raise TermError(f"{operator} 只能作用于单元素集，得到 {value.braced()}")
    return value.element


def _eval_poset(P: FinitePoset, node: Node, x: int) -> SubsetValue:
    match node:
        case Const(element):
            return P.singleton(element)
        case Var():
            return P.singleton(x)
        case Comp(arg):
            return P.singleton(P.comp(_singleton(P, _eval_poset(P, arg, x), 'comp')))
        case Delta(arg):
            return P.singleton(baaz_delta_subset(P, _eval_poset(P, arg, x)))
        case SDiff(lhs, rhs):
            left = _singleton(P, _eval_poset(P, lhs, x), 'sdiff')
            right = _singleton(P, _eval_poset(P, rhs, x), 'sdiff')
            return sdiff_poset(P, left, right)
        case MaxL(args):
            return max_l(P, *(_eval_poset(P, a, x) for a in args))
        case MinU(args):
            return min_u(P, *(_eval_poset(P, a, x) for a in args))
        case Union(args):
            return P.union_of(_eval_poset(P, a, x) for a in args)
        case _:
            raise TermError(f"布尔偏序集场景无法求值节点 {node}")


def eval_term(structure: Structure, term: Term, x: TypingUnion[int, str]) -> EvalResult:
    """自底向上求值项 t 在 x 处的值"""
    target = structure_for(structure, term.setting)
    try:
        point = target.resolve(x)
    except KeyError as e:
        raise TermError(f"求值点不在载体中: {e.args[0]}")
    if term.setting == Setting.BOOLEAN_POSET:
        value: Value = _eval_poset(target, term.root, point)
    elif term.setting == Setting.BOOLEAN_ALGEBRA:
        value = _eval_algebra(target, term.root, point)
    else:
        value = _eval_ring(target, term.root, point)
    return EvalResult(value, term.setting, target.names)


def evaluation_table(structure: Structure, term: Term) -> List[Tuple[str, EvalResult]]:
    """在载体的每个点上求值（含支撑外的点）"""
    target = structure_for(structure, term.setting)
    return [(name, eval_term(target, term, i)) for i, name in enumerate(target.names)]


def evaluation_map(structure: Structure, term: Term) -> Dict[str, str]:
    return {name: str(result) for name, result in evaluation_table(structure, term)}
