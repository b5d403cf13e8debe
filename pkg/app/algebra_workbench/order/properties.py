"""偏序集的结构性质：分配律、补元搜索与分类"""
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from app.algebra_workbench.order.poset import FinitePoset, SubsetValue, max_l, min_u
from app.utils.exceptions import NotComplementedError, StructureKindError
from app.utils.logger import logger

IDENTITY_LABELS = (
    'L(U(x,y),z) = LU(L(x,z),L(y,z))',
    'UL(U(x,y),z) = U(L(x,z),L(y,z))',
    'U(L(x,y),z) = UL(U(x,z),U(y,z))',
    'LU(L(x,y),z) = L(U(x,z),U(y,z))',
)


@dataclass(frozen=True)
class DistributivityVerdict:
    verdict: bool
    per_identity: Tuple[bool, bool, bool, bool]
    witness: Optional[Tuple[str, str, str]] = None
    # 每条恒等式各自的第一个反例
    identity_witnesses: Tuple[Optional[Tuple[str, str, str]], ...] = ()

    @property
    def agree(self) -> bool:
        return len(set(self.per_identity)) == 1


@dataclass(frozen=True)
class ComplementSearch:
    mapping: Tuple[int, ...]
    candidates: Tuple[SubsetValue, ...]
    unique: bool


@dataclass
class StructureClassification:
    is_poset: bool = True
    is_bounded: bool = False
    is_complemented: bool = False
    complement_unique: bool = False
    is_distributive: bool = False
    is_lattice: bool = False
    is_boolean_poset: bool = False
    is_boolean_algebra: bool = False
    witnesses: Dict[str, Tuple[str, ...]] = field(default_factory=dict)

    FLAGS = ('is_poset', 'is_bounded', 'is_complemented', 'complement_unique',
             'is_distributive', 'is_lattice', 'is_boolean_poset', 'is_boolean_algebra')

    def flags(self) -> Dict[str, bool]:
        return {name: getattr(self, name) for name in self.FLAGS}


class _BatchCones:
    """对一批子集（矩阵的每一行）同时求锥"""

    def __init__(self, leq: np.ndarray):
        self.not_leq = (~leq).astype(np.int64)
        self.not_geq = (~leq.T).astype(np.int64)

    def upper(self, rows: np.ndarray) -> np.ndarray:
        # U(S)[w] 为真当且仅当不存在 s ∈ S 使 s ≰ w
        return (rows.astype(np.int64) @ self.not_leq) == 0

    def lower(self, rows: np.ndarray) -> np.ndarray:
        return (rows.astype(np.int64) @ self.not_geq) == 0


def is_distributive(P: FinitePoset) -> DistributivityVerdict:
    """对所有三元组 (x, y, z) 检查四条等价的分配恒等式

    z 方向向量化：固定 (x, y)，一次求出所有 z 的两侧。
    """
    n = P.size
    cones = _BatchCones(P.leq)
    down = P.leq.T  # down[z] 为 z 的下集
    up = P.leq      # up[z] 为 z 的上集
    holds = [True] * 4
    witnesses: List[Optional[Tuple[int, int, int]]] = [None] * 4

    def record(k: int, x: int, y: int, bad: np.ndarray) -> None:
        if bad.any() and holds[k]:
            holds[k] = False
            witnesses[k] = (x, y, int(np.flatnonzero(bad)[0]))

    for x in range(n):
        for y in range(n):
            uxy = up[x] & up[y]
            lxy = down[x] & down[y]
            # 各 z 的 L(x,z) ∪ L(y,z) 与 U(x,z) ∪ U(y,z)
            low_union = (down[x] | down[y])[None, :] & down
            up_union = (up[x] | up[y])[None, :] & up

            with_z_u = uxy[None, :] | np.eye(n, dtype=bool)  # U(x,y) ∪ {z}
            with_z_l = lxy[None, :] | np.eye(n, dtype=bool)  # L(x,y) ∪ {z}

            lhs1 = cones.lower(with_z_u)
            rhs1 = cones.lower(cones.upper(low_union))
            record(0, x, y, np.any(lhs1 != rhs1, axis=1))

            lhs2 = cones.upper(lhs1)
            rhs2 = cones.upper(low_union)
            record(1, x, y, np.any(lhs2 != rhs2, axis=1))

            lhs3 = cones.upper(with_z_l)
            rhs3 = cones.upper(cones.lower(up_union))
            record(2, x, y, np.any(lhs3 != rhs3, axis=1))

            lhs4 = cones.lower(lhs3)
            rhs4 = cones.lower(up_union)
            record(3, x, y, np.any(lhs4 != rhs4, axis=1))

    named = tuple(None if w is None else tuple(P.names[i] for i in w) for w in witnesses)
    per_identity = tuple(holds)
    verdict = per_identity[0]
    if len(set(per_identity)) != 1:
        logger.error(f"偏序集 {P.name} 上四条分配恒等式结论不一致: {per_identity}")
    return DistributivityVerdict(verdict=verdict, per_identity=per_identity,
                                 witness=named[0], identity_witnesses=named)


def _complement_candidates(P: FinitePoset) -> List[SubsetValue]:
    """对每个 x 求满足 L(x,y)={0} 且 U(x,y)={1} 的全部 y"""
    if not P.is_bounded:
        raise StructureKindError(f"偏序集 {P.name} 无界，补元无定义")
    down = P.leq.T
    up = P.leq
    result = []
    for x in range(P.size):
        only_bottom = (down[x][None, :] & down).sum(axis=1) == 1
        only_top = (up[x][None, :] & up).sum(axis=1) == 1
        result.append(SubsetValue(only_bottom & only_top, P))
    return result


def _choose_involution(candidates: Sequence[SubsetValue]) -> Optional[List[int]]:
    """按载体顺序回溯，寻找一个对合的补元选择"""
    n = len(candidates)
    choice: List[Optional[int]] = [None] * n

    def backtrack(x: int) -> bool:
        if x == n:
            return True
        if choice[x] is not None:
            return backtrack(x + 1)
        for y in candidates[x]:
            if choice[y] is not None or x not in candidates[y]:
                continue
            choice[x], choice[y] = y, x
            if backtrack(x + 1):
                return True
            choice[x] = choice[y] = None
        return False

    return choice if backtrack(0) else None


def find_complements(P: FinitePoset) -> ComplementSearch:
    candidates = _complement_candidates(P)
    for x, cand in enumerate(candidates):
        if len(cand) == 0:
            raise NotComplementedError(f"元素 {P.names[x]} 没有补元", witness=(P.names[x],))
    unique = all(len(c) == 1 for c in candidates)
    mapping = _choose_involution(candidates)
    if mapping is None:
        logger.warning(f"偏序集 {P.name} 的补元无法选成对合，按载体顺序取第一个")
        mapping = [c.indices()[0] for c in candidates]
    return ComplementSearch(mapping=tuple(mapping), candidates=tuple(candidates), unique=unique)


def resolve_complement(P: FinitePoset) -> FinitePoset:
    """若偏序集有界且可补但未带补映射，附上搜索到的补映射"""
    if P.complement is not None or not P.is_bounded:
        return P
    try:
        search = find_complements(P)
    except NotComplementedError:
        return P
    logger.info(f"已为偏序集 {P.name} 自动确定补映射 (唯一={search.unique})")
    return P.with_complement(search.mapping)


def is_involution(P: FinitePoset, comp: Sequence[int]) -> Tuple[bool, Optional[Tuple[str]]]:
    for x in range(P.size):
        if comp[comp[x]] != x:
            return False, (P.names[x],)
    return True, None


def is_antitone(P: FinitePoset, comp: Sequence[int]) -> Tuple[bool, Optional[Tuple[str, str]]]:
    for x, y in ((int(a), int(b)) for a, b in np.argwhere(P.leq)):
        if not P.leq[comp[y], comp[x]]:
            return False, (P.names[x], P.names[y])
    return True, None


def lattice_witness(P: FinitePoset) -> Optional[Tuple[str, str]]:
    """第一个 Min U 或 Max L 不是单元素集的元素对；是格时返回 None"""
    for x in range(P.size):
        for y in range(x, P.size):
            if not min_u(P, x, y).is_singleton or not max_l(P, x, y).is_singleton:
                return P.names[x], P.names[y]
    return None


def classify(P: FinitePoset) -> StructureClassification:
    """穷举检查全部结构性质"""
    result = StructureClassification()
    result.is_bounded = P.is_bounded
    if not result.is_bounded:
        result.witnesses['is_bounded'] = ()

    if result.is_bounded:
        try:
            search = find_complements(P)
            result.is_complemented = True
            result.complement_unique = search.unique
            if not search.unique:
                x = next(i for i, c in enumerate(search.candidates) if len(c) > 1)
                result.witnesses['complement_unique'] = (P.names[x],) + search.candidates[x].names()
        except NotComplementedError as e:
            result.witnesses['is_complemented'] = e.witness

    verdict = is_distributive(P)
    result.is_distributive = verdict.verdict
    if not verdict.verdict:
        result.witnesses['is_distributive'] = verdict.witness

    witness = lattice_witness(P)
    result.is_lattice = witness is None
    if witness is not None:
        result.witnesses['is_lattice'] = witness

    result.is_boolean_poset = result.is_bounded and result.is_complemented and result.is_distributive
    result.is_boolean_algebra = result.is_boolean_poset and result.is_lattice
    logger.info(f"分类 {P.name}: 布尔偏序集={result.is_boolean_poset}, 布尔代数={result.is_boolean_algebra}")
    return result


@lru_cache(maxsize=128)
def cached_classification(P: FinitePoset) -> StructureClassification:
    """按对象缓存的 classify；偏序集不可变，重复的插值构造不再重算"""
    return classify(P)
