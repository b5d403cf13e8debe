"""性质检查：插值定理、Kronecker 模式、a+b={0} ⟺ a=b、分配律、补元、布尔环桥接与拉格朗日基线

每个检查返回一个 CheckReport；检查本身不抛出"失败"，只有输入错误才抛异常。
"""
import time
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from app.algebra_workbench.algebra.boolean_algebra import (BooleanAlgebra, boolean_algebra_from_poset,
                                                           boolean_ring_of)
from app.algebra_workbench.algebra.ring import UnitaryRing
from app.algebra_workbench.interp.constructors import (interpolate_boolean_algebra, interpolate_boolean_poset,
                                                       interpolate_ring, lagrange_field)
from app.algebra_workbench.interp.evaluator import EvalResult, Structure, eval_term, evaluation_table
from app.algebra_workbench.interp.support import SupportFunction
from app.algebra_workbench.interp.terms import Term
from app.algebra_workbench.order.poset import FinitePoset
from app.algebra_workbench.order.properties import (IDENTITY_LABELS, cached_classification, find_complements,
                                                    is_antitone, is_distributive, is_involution)
from app.utils.exceptions import RingAxiomError, StructureKindError, SupportError
from app.utils.logger import logger

Seed = Union[int, Sequence[int], None]


@dataclass(frozen=True)
class CaseResult:
    label: str
    expected: str
    got: str
    ok: bool


@dataclass
class CheckReport:
    check: str
    structure: str
    passed: bool
    cases: List[CaseResult] = field(default_factory=list)
    witness: Optional[str] = None
    witness_key: Tuple[str, ...] = ()
    elapsed: float = 0.0
    detail: str = ''
    off_support: List[Tuple[str, str]] = field(default_factory=list)

    @property
    def name(self) -> str:
        return f"{self.check}/{self.structure}" + (f"/{self.detail}" if self.detail else '')

    def porcelain_line(self) -> str:
        """CHECK <name> PASS|FAIL [witness]，不含耗时"""
        line = f"CHECK {self.name} {'PASS' if self.passed else 'FAIL'}"
        if self.witness:
            line += f" {self.witness}"
        return line

    def render(self, show_cases: bool = False) -> str:
        status = '通过' if self.passed else '失败'
        lines = [f"[{status}] {self.name} ({len(self.cases)} 项, {self.elapsed * 1000:.1f} ms)"]
        if self.witness:
            lines.append(f"    反例: {self.witness}")
        for case in self.cases:
            if show_cases or not case.ok:
                mark = '✓' if case.ok else '✗'
                lines.append(f"    {mark} {case.label} = {case.got}（期望 {case.expected}）")
        if show_cases and self.off_support:
            lines.append("    支撑外取值: " + ', '.join(f"p({a})={v}" for a, v in self.off_support))
        return '\n'.join(lines)


def _finish(report: CheckReport, started: float) -> CheckReport:
    report.elapsed = time.perf_counter() - started
    first = next((c for c in report.cases if not c.ok), None)
    report.passed = first is None and report.passed
    if not report.passed:
        logger.debug(f"检查失败 {report.name}: {report.witness}")
    return report


def merge_reports(check: str, structure: str, reports: Sequence[CheckReport], detail: str = '') -> CheckReport:
    """把同一检查的多次试验合并成一份报告，反例取第一个失败的试验"""
    failed = next((r for r in reports if not r.passed), None)
    merged = CheckReport(check, structure, passed=failed is None, detail=detail,
                         cases=[c for r in reports for c in r.cases],
                         elapsed=sum(r.elapsed for r in reports))
    if failed is not None:
        merged.witness = failed.witness
        merged.witness_key = failed.witness_key
    return merged


def random_support(structure: Structure, n: int, seed: Seed = None) -> SupportFunction:
    """不放回抽取 n 个互异支撑点，取值独立抽取；同一种子结果相同"""
    size = structure.size
    if not 1 <= n <= size:
        raise SupportError(f"支撑大小 {n} 超出范围 [1, {size}]")
    rng = np.random.default_rng(seed)
    arguments = rng.choice(size, size=n, replace=False)
    values = rng.integers(0, size, size=n)
    return SupportFunction(tuple((int(a), int(v)) for a, v in zip(arguments, values)))


@lru_cache(maxsize=64)
def _promoted(P: FinitePoset) -> Union[FinitePoset, BooleanAlgebra]:
    if cached_classification(P).is_boolean_algebra:
        return boolean_algebra_from_poset(P)
    return P


def as_working_structure(structure: Structure) -> Structure:
    """是布尔代数的偏序集提升为 BooleanAlgebra，以便同时检查代数与偏序集两条路径"""
    if isinstance(structure, FinitePoset):
        return _promoted(structure)
    return structure


@dataclass(frozen=True)
class _Route:
    label: str
    term: Term
    target: Structure
    zero: int
    one: int


def interpolation_routes(structure: Structure, support: SupportFunction) -> List[_Route]:
    structure = as_working_structure(structure)
    if isinstance(structure, UnitaryRing):
        routes = [_Route('ring', interpolate_ring(structure, support), structure, structure.zero, structure.one)]
        if structure.is_field:
            routes.append(_Route('lagrange', lagrange_field(structure, support), structure,
                                 structure.zero, structure.one))
        return routes
    if isinstance(structure, BooleanAlgebra):
        P = structure.poset
        return [
            _Route('join', interpolate_boolean_algebra(structure, support, form='join'), structure,
                   structure.zero, structure.one),
            _Route('sum', interpolate_boolean_algebra(structure, support, form='sum'), structure,
                   structure.zero, structure.one),
            _Route('poset', interpolate_boolean_poset(P, support), P, P.bottom, P.top),
        ]
    if isinstance(structure, FinitePoset):
        if cached_classification(structure).is_boolean_poset:
            term = interpolate_boolean_poset(structure, support)
        else:
            logger.warning(f"{structure.name} 不是布尔偏序集，按可补偏序集构造插值项（结论可能不成立）")
            term = interpolate_boolean_poset(structure, support, require_boolean=False)
        return [_Route('poset', term, structure, structure.bottom, structure.top)]
    raise StructureKindError(f"不支持的结构类型: {type(structure).__name__}")


def _label(route: _Route, routes: Sequence[_Route], text: str) -> str:
    return text if len(routes) == 1 else f"{route.label}: {text}"


def check_interpolation(structure: Structure, support: SupportFunction,
                        off_support: bool = False) -> CheckReport:
    """构造插值项并在每个支撑点上与 f(a_k) 比较（单元素集与元素等同）"""
    started = time.perf_counter()
    routes = interpolation_routes(structure, support)
    names = routes[0].target.names
    report = CheckReport('interpolation', routes[0].target.name, passed=True)
    for route in routes:
        for a, v in support.points:
            got = eval_term(route.target, route.term, a)
            ok = got == v
            report.cases.append(CaseResult(_label(route, routes, f"p({names[a]})"), names[v], str(got), ok))
            if not ok and report.witness is None:
                report.witness = f"p({names[a]})={_braced(got)} ≠ {names[v]}"
                report.witness_key = (names[a], str(got))

    if off_support:
        on_support = set(support.arguments)
        table = evaluation_table(routes[0].target, routes[0].term)
        report.off_support = [(name, str(result)) for i, (name, result) in enumerate(table) if i not in on_support]
        logger.debug(f"{report.name} 支撑外取值: {report.off_support}")
    return _finish(report, started)


def check_kronecker(structure: Structure, support: SupportFunction) -> CheckReport:
    """每个基项 p_i 在 a_k 处应取 δ_ik（1 当且仅当 i = k）"""
    started = time.perf_counter()
    routes = interpolation_routes(structure, support)
    names = routes[0].target.names
    report = CheckReport('kronecker', routes[0].target.name, passed=True)
    for route in routes:
        for i, p_i in enumerate(route.term.basis):
            for k, a_k in enumerate(support.arguments):
                expected = route.one if i == k else route.zero
                got = eval_term(route.target, p_i, a_k)
                ok = got == expected
                text = f"p_{i + 1}({names[a_k]})"
                report.cases.append(CaseResult(_label(route, routes, text), names[expected], str(got), ok))
                if not ok and report.witness is None:
                    report.witness = f"{text}={_braced(got)} ≠ δ_{i + 1}{k + 1}={names[expected]}"
                    report.witness_key = (f"p_{i + 1}", names[a_k])
    return _finish(report, started)


def _braced(result: EvalResult) -> str:
    return result.value.braced() if result.is_subset else str(result)


def _poset_of(structure: Structure) -> FinitePoset:
    if isinstance(structure, BooleanAlgebra):
        return structure.poset
    if not isinstance(structure, FinitePoset):
        raise StructureKindError(f"需要偏序集，得到 {type(structure).__name__}")
    return structure


def check_sum_zero(structure: Structure) -> CheckReport:
    """对所有元素对检查 a+b = {0} ⟺ a = b"""
    started = time.perf_counter()
    P = _poset_of(structure)
    if not P.is_bounded or P.complement is None:
        raise StructureKindError(f"{P.name} 需要有界且可补")
    report = CheckReport('sum_zero', P.name, passed=True)
    for a in range(P.size):
        for b in range(P.size):
            total = P.sum_table[a][b]
            is_zero = total == P.bottom
            ok = is_zero == (a == b)
            label = f"{P.names[a]}+{P.names[b]}"
            report.cases.append(CaseResult(label, '{0}' if a == b else '≠{0}', total.braced(), ok))
            if not ok and report.witness is None:
                if a == b:
                    report.witness = f"{label}={total.braced()} ≠ {{{P.names[P.bottom]}}}"
                else:
                    report.witness = f"{label}={total.braced()} but {P.names[a]}≠{P.names[b]}"
                report.witness_key = (P.names[a], P.names[b])
    return _finish(report, started)


def check_distributivity(structure: Structure) -> CheckReport:
    """通过当且仅当分配且四条恒等式结论一致；反例为违反第一条恒等式的三元组"""
    started = time.perf_counter()
    P = _poset_of(structure)
    verdict = is_distributive(P)
    report = CheckReport('distributivity', P.name, passed=verdict.verdict and verdict.agree)
    for label, holds, witness in zip(IDENTITY_LABELS, verdict.per_identity, verdict.identity_witnesses):
        got = 'holds' if holds else f"fails at ({', '.join(witness)})"
        report.cases.append(CaseResult(label, 'holds' if verdict.verdict else 'fails', got, holds == verdict.verdict))
    if not verdict.agree:
        report.witness = f"identities disagree: {list(verdict.per_identity)}"
        report.witness_key = ('disagree',)
    elif not verdict.verdict:
        report.witness = f"({', '.join(verdict.witness)}) violates {IDENTITY_LABELS[0]}"
        report.witness_key = verdict.witness
    return _finish(report, started)


def check_identity_agreement(structure: Structure) -> CheckReport:
    """四条分配恒等式在该结构上给出相同结论（无论是否分配）"""
    started = time.perf_counter()
    P = _poset_of(structure)
    verdict = is_distributive(P)
    report = CheckReport('identities', P.name, passed=verdict.agree)
    for label, holds in zip(IDENTITY_LABELS, verdict.per_identity):
        report.cases.append(CaseResult(label, str(verdict.verdict), str(holds), holds == verdict.verdict))
    if not verdict.agree:
        report.witness = f"identities disagree: {list(verdict.per_identity)}"
        report.witness_key = ('disagree',)
    return _finish(report, started)


def check_complements(structure: Structure) -> CheckReport:
    """补元唯一、补映射是对合且反序"""
    started = time.perf_counter()
    P = _poset_of(structure)
    search = find_complements(P)
    comp = P.complement if P.complement is not None else search.mapping
    report = CheckReport('complements', P.name, passed=True)

    multiple = next((x for x, c in enumerate(search.candidates) if len(c) > 1), None)
    unique_got = 'unique' if multiple is None else f"{P.names[multiple]} has {search.candidates[multiple].braced()}"
    report.cases.append(CaseResult('unique', 'unique', unique_got, multiple is None))
    involutive, inv_witness = is_involution(P, comp)
    report.cases.append(CaseResult('involution', "x''=x", 'ok' if involutive else f"fails at {inv_witness}", involutive))
    antitone, anti_witness = is_antitone(P, comp)
    report.cases.append(CaseResult('antitone', "x<=y ⇒ y'<=x'", 'ok' if antitone else f"fails at {anti_witness}",
                                   antitone))

    if multiple is not None:
        report.witness = f"{P.names[multiple]} has complements {search.candidates[multiple].braced()}"
        report.witness_key = (P.names[multiple],) + search.candidates[multiple].names()
    elif not involutive:
        report.witness = f"not an involution at {inv_witness[0]}"
        report.witness_key = inv_witness
    elif not antitone:
        report.witness = f"not antitone at {anti_witness}"
        report.witness_key = anti_witness
    return _finish(report, started)


def check_ring_bridge(A: BooleanAlgebra, supports: Iterable[SupportFunction]) -> CheckReport:
    """布尔环 (B, +, ∧) 满足环公理与 x·x=x、x+x=0，且环插值与布尔代数插值在支撑点上一致"""
    started = time.perf_counter()
    report = CheckReport('bridge', A.name, passed=True)
    try:
        R = boolean_ring_of(A)
    except RingAxiomError as e:
        report.passed = False
        report.witness = f"{e.axiom} fails at ({', '.join(e.witness)})"
        report.witness_key = (e.axiom,) + tuple(e.witness)
        return _finish(report, started)

    idx = np.arange(R.size)
    idempotent = np.diag(R.mul) == idx
    nilpotent_sum = np.diag(R.add) == R.zero
    report.cases.append(CaseResult('x·x=x', 'all', 'all' if idempotent.all() else 'fails', bool(idempotent.all())))
    report.cases.append(CaseResult('x+x=0', 'all', 'all' if nilpotent_sum.all() else 'fails',
                                   bool(nilpotent_sum.all())))
    if not idempotent.all() or not nilpotent_sum.all():
        bad = int(np.flatnonzero(~(idempotent & nilpotent_sum))[0])
        report.witness = f"{A.names[bad]} is not idempotent of characteristic 2"
        report.witness_key = (A.names[bad],)

    for support in supports:
        ring_term = interpolate_ring(R, support)
        algebra_term = interpolate_boolean_algebra(A, support)
        for a in support.arguments:
            via_ring = eval_term(R, ring_term, a)
            via_algebra = eval_term(A, algebra_term, a)
            ok = via_ring.value == via_algebra.value
            report.cases.append(CaseResult(f"[{support.describe(A.names)}] p({A.names[a]})",
                                           str(via_algebra), str(via_ring), ok))
            if not ok and report.witness is None:
                report.witness = f"ring p({A.names[a]})={via_ring} ≠ algebra p({A.names[a]})={via_algebra}"
                report.witness_key = (A.names[a], str(via_ring), str(via_algebra))
    return _finish(report, started)


def check_lagrange(F: UnitaryRing, supports: Iterable[SupportFunction]) -> CheckReport:
    """域上的拉格朗日插值：p(a_k) = f(a_k) 精确成立"""
    started = time.perf_counter()
    report = CheckReport('lagrange', F.name, passed=True)
    for support in supports:
        term = lagrange_field(F, support)
        for a, v in support.points:
            got = eval_term(F, term, a)
            ok = got == v
            report.cases.append(CaseResult(f"[{support.describe(F.names)}] p({F.names[a]})", F.names[v], str(got), ok))
            if not ok and report.witness is None:
                report.witness = f"p({F.names[a]})={got} ≠ {F.names[v]}"
                report.witness_key = (F.names[a], str(got))
    return _finish(report, started)


def check_evaluation(structure: Structure, term: Term, expected: Sequence[Tuple[str, str]],
                     check: str = 'eval') -> CheckReport:
    """在给定点上求值并与期望文本比较；期望可写元素名或 {a, b} 形式的子集"""
    started = time.perf_counter()
    report = CheckReport(check, getattr(structure, 'name', ''), passed=True)
    for at, text in expected:
        got = eval_term(structure, term, at)
        ok = _matches(got, text)
        report.cases.append(CaseResult(f"{term}@{at}", text, _braced(got), ok))
        if not ok and report.witness is None:
            report.witness = f"{term} at {at} = {_braced(got)} ≠ {text}"
            report.witness_key = (str(at), str(got))
    return _finish(report, started)


def _matches(result: EvalResult, text: str) -> bool:
    text = text.strip()
    if text.startswith('{') and text.endswith('}'):
        if not result.is_subset:
            return False
        inner = [t.strip() for t in text[1:-1].split(',') if t.strip()]
        try:
            return result.value == result.value.owner.subset(inner)
        except KeyError:
            return False
    return result == text
