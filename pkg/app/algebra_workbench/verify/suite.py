"""验收套件：从 YAML 读取语料与用例，并发运行全部检查，按提交顺序汇总"""
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple, Union

import yaml

from app.algebra_workbench.algebra.boolean_algebra import BooleanAlgebra
from app.algebra_workbench.algebra.generators import generate, parse_generator_spec
from app.algebra_workbench.algebra.ring import UnitaryRing
from app.algebra_workbench.ingest.structure_format import emit_structure, load_structure, parse_structure
from app.algebra_workbench.ingest.term_parser import parse_points, parse_term
from app.algebra_workbench.interp.evaluator import Structure
from app.algebra_workbench.interp.terms import Setting
from app.algebra_workbench.order.poset import FinitePoset
from app.algebra_workbench.order.properties import cached_classification
from app.algebra_workbench.verify.checks import (CaseResult, CheckReport, as_working_structure, check_complements,
                                                 check_distributivity, check_evaluation, check_identity_agreement,
                                                 check_interpolation, check_kronecker, check_lagrange, check_sum_zero,
                                                 check_ring_bridge, interpolation_routes, merge_reports,
                                                 random_support)
from app.config.settings import STRUCTURES_DIR, SUITE_CONFIG, SUITE_CONFIG_PATH
from app.utils.exceptions import AlgebraWorkbenchException, ConfigError
from app.utils.logger import logger

# 语料条目可声明的类别
EXPECTATIONS = ('boolean_algebra', 'boolean_poset', 'complemented', 'non_distributive',
                'ring', 'noncommutative', 'field')

_EXPECT_FAIL_CHECKS = {
    'sum_zero': lambda s, support: check_sum_zero(s),
    'distributivity': lambda s, support: check_distributivity(s),
    'complements': lambda s, support: check_complements(s),
    'interpolation': lambda s, support: check_interpolation(s, support),
    'kronecker': lambda s, support: check_kronecker(s, support),
}


@dataclass
class CorpusEntry:
    ref: str
    expect: List[str] = field(default_factory=list)

    @property
    def label(self) -> str:
        return Path(self.ref).stem if self.ref.endswith('.struct') else self.ref.replace(' ', '')


@dataclass
class SuiteConfig:
    corpus: List[CorpusEntry]
    seed: int = SUITE_CONFIG['seed']
    trials: int = SUITE_CONFIG['trials']
    max_support: int = SUITE_CONFIG['max_support']
    workers: int = SUITE_CONFIG['workers']
    bridge_trials: int = SUITE_CONFIG['bridge_trials']
    bridge_powersets: List[int] = field(default_factory=lambda: [1, 2, 3])
    lagrange_trials: int = SUITE_CONFIG['lagrange_trials']
    lagrange_primes: List[int] = field(default_factory=lambda: list(SUITE_CONFIG['lagrange_primes']))
    golden: List[Dict[str, Any]] = field(default_factory=list)
    evaluations: List[Dict[str, Any]] = field(default_factory=list)
    expected_failures: List[Dict[str, Any]] = field(default_factory=list)
    base_dir: str = STRUCTURES_DIR

    def __post_init__(self):
        for key in ('trials', 'max_support', 'workers', 'bridge_trials', 'lagrange_trials'):
            value = getattr(self, key)
            if not isinstance(value, int) or isinstance(value, bool) or value < 1:
                raise ConfigError(f"配置项 {key} 必须是正整数，得到 {value!r}")
        if not self.corpus:
            raise ConfigError("语料为空")
        for entry in self.corpus:
            unknown = [e for e in entry.expect if e not in EXPECTATIONS]
            if unknown:
                raise ConfigError(f"语料 {entry.ref} 声明了未知类别: {', '.join(unknown)}")

    @classmethod
    def load(cls, path: Union[str, Path, None] = None, **overrides) -> 'SuiteConfig':
        """读取 YAML 配置；overrides 中非 None 的值覆盖文件内容"""
        path = Path(path or SUITE_CONFIG_PATH)
        if not path.exists():
            raise ConfigError(f"找不到套件配置文件: {path}")
        try:
            with open(path, encoding='utf-8') as f:
                raw = yaml.safe_load(f) or {}
        except yaml.YAMLError as e:
            raise ConfigError(f"套件配置不是合法的 YAML: {e}")
        if not isinstance(raw, dict):
            raise ConfigError("套件配置顶层必须是映射")

        raw.update({k: v for k, v in overrides.items() if v is not None})
        corpus = []
        for item in raw.pop('corpus', []) or []:
            if isinstance(item, str):
                item = {'file': item} if item.endswith('.struct') else {'generate': item}
            if not isinstance(item, dict) or not ({'file', 'generate'} & item.keys()):
                raise ConfigError(f"语料条目需要 file 或 generate: {item!r}")
            expect = item.get('expect', [])
            corpus.append(CorpusEntry(item.get('file') or item['generate'],
                                      [expect] if isinstance(expect, str) else list(expect)))
        base_dir = str(path.parent / raw.pop('structures_dir')) if 'structures_dir' in raw else STRUCTURES_DIR
        known = set(cls.__dataclass_fields__) - {'corpus', 'base_dir'}
        extra = set(raw) - known
        if extra:
            raise ConfigError(f"未知的配置项: {', '.join(sorted(extra))}")
        for key, required in (('golden', ('structure', 'points')),
                              ('evaluations', ('structure', 'term', 'at', 'expect')),
                              ('expected_failures', ('structure', 'check', 'witness'))):
            raw[key] = raw.get(key) or []
            for case in raw[key]:
                missing = [k for k in required if not isinstance(case, dict) or k not in case]
                if missing:
                    raise ConfigError(f"{key} 条目缺少字段 {', '.join(missing)}: {case!r}")
        return cls(corpus=corpus, base_dir=base_dir, **raw)


@dataclass
class SuiteResult:
    reports: List[CheckReport]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.reports)

    @property
    def exit_code(self) -> int:
        return 0 if self.passed else 1

    def porcelain(self) -> str:
        return '\n'.join(r.porcelain_line() for r in self.reports)

    def summary(self) -> str:
        failed = [r for r in self.reports if not r.passed]
        lines = [r.render() for r in failed]
        lines.append(f"共 {len(self.reports)} 项检查，通过 {len(self.reports) - len(failed)}，失败 {len(failed)}")
        return '\n'.join(lines)


class _StructureCache:
    """按引用（文件名或生成器描述）加载并缓存结构"""

    def __init__(self, base_dir: str):
        self.base_dir = base_dir
        self._loaded: Dict[str, Structure] = {}

    def path_of(self, ref: str) -> Path:
        path = Path(ref)
        return path if path.is_absolute() else Path(self.base_dir) / path

    def get(self, ref: str) -> Structure:
        if ref not in self._loaded:
            try:
                if ref.endswith('.struct'):
                    path = self.path_of(ref)
                    if not path.exists():
                        raise ConfigError(f"找不到结构文件: {path}")
                    self._loaded[ref] = load_structure(path)
                else:
                    kind, n = parse_generator_spec(ref)
                    self._loaded[ref] = generate(kind, n)
            except ConfigError:
                raise
            except AlgebraWorkbenchException as e:
                raise ConfigError(f"无法加载语料 {ref}: {e}")
        return self._loaded[ref]


def _expectation_holds(structure: Structure, expect: str) -> Tuple[bool, str]:
    if isinstance(structure, BooleanAlgebra):
        structure = structure.poset
    if isinstance(structure, UnitaryRing):
        flags = {'ring': True, 'field': structure.is_field, 'noncommutative': not structure.is_commutative}
        if expect not in flags:
            return False, f"环不可能是 {expect}"
        return flags[expect], f"{expect}={flags[expect]}"
    result = cached_classification(structure)
    flags = {
        'boolean_algebra': result.is_boolean_algebra,
        'boolean_poset': result.is_boolean_poset,
        'complemented': result.is_complemented,
        'non_distributive': not result.is_distributive,
    }
    if expect not in flags:
        return False, f"偏序集不可能是 {expect}"
    if flags[expect]:
        return True, ''
    failed = [f for f in ('is_bounded', 'is_complemented', 'is_distributive', 'is_lattice')
              if not getattr(result, f) and f in result.witnesses]
    detail = '; '.join(f"{f} fails at ({', '.join(result.witnesses[f])})" for f in failed)
    return False, detail or f"not {expect}"


def check_validation(entry: CorpusEntry, structure: Structure) -> CheckReport:
    report = CheckReport('validate', entry.label, passed=True)
    for expect in entry.expect:
        ok, detail = _expectation_holds(structure, expect)
        report.cases.append(CaseResult(expect, 'true', 'true' if ok else 'false', ok))
        if not ok and report.witness is None:
            report.witness = f"not {expect}: {detail}"
            report.witness_key = (expect,)
    report.passed = all(c.ok for c in report.cases)
    return report


def check_roundtrip(entry: CorpusEntry, structure: Structure, cache: _StructureCache) -> CheckReport:
    """emit∘parse∘emit = emit；规范文件上 emit∘parse 与原文逐字节相同"""
    report = CheckReport('roundtrip', entry.label, passed=True)
    emitted = emit_structure(structure)
    again = emit_structure(parse_structure(emitted))
    report.cases.append(CaseResult('emit∘parse∘emit', 'emit', 'emit' if again == emitted else 'differs',
                                   again == emitted))
    if entry.ref.endswith('.struct'):
        original = cache.path_of(entry.ref).read_text(encoding='utf-8')
        report.cases.append(CaseResult('canonical file', 'byte-identical',
                                       'byte-identical' if original == emitted else 'differs', original == emitted))
    report.passed = all(c.ok for c in report.cases)
    if not report.passed:
        report.witness = next(c.label for c in report.cases if not c.ok)
    return report


def expect_failure(report: CheckReport, witness: Sequence[str]) -> CheckReport:
    """把"应当失败"的检查包装成一份报告：当且仅当以给定反例失败时通过"""
    witness = tuple(str(w) for w in witness)
    matched = not report.passed and tuple(report.witness_key) == witness
    wrapped = CheckReport(f"expect-fail:{report.check}", report.structure, passed=matched,
                          cases=[CaseResult('witness', ','.join(witness), ','.join(report.witness_key), matched)],
                          elapsed=report.elapsed, detail=report.detail)
    if report.passed:
        wrapped.witness = "check unexpectedly passed"
    elif not matched:
        wrapped.witness = f"unexpected witness {report.witness}"
    else:
        logger.warning(f"预期失败已复现 {report.name}: {report.witness}")
    return wrapped


def _sweepable(structure: Structure) -> bool:
    if isinstance(structure, (UnitaryRing, BooleanAlgebra)):
        return not (isinstance(structure, UnitaryRing) and structure.is_trivial)
    return cached_classification(structure).is_boolean_poset


def _boolean_poset(structure: Structure) -> Optional[FinitePoset]:
    if isinstance(structure, BooleanAlgebra):
        return structure.poset
    if isinstance(structure, FinitePoset) and cached_classification(structure).is_boolean_poset:
        return structure
    return None


def _sweep(structure: Structure, label: str, index: int, size: int, config: SuiteConfig) -> List[CheckReport]:
    interpolation, kronecker = [], []
    for trial in range(config.trials):
        support = random_support(structure, size, seed=[config.seed, index, size, trial])
        interpolation.append(check_interpolation(structure, support))
        kronecker.append(check_kronecker(structure, support))
    return [merge_reports('interpolation', label, interpolation, detail=f"n={size}"),
            merge_reports('kronecker', label, kronecker, detail=f"n={size}")]


def _supports(structure: Structure, trials: int, max_support: int, seed: Sequence[int]):
    cap = min(max_support, structure.size)
    return [random_support(structure, 1 + trial % cap, seed=list(seed) + [trial]) for trial in range(trials)]


def _resolve_setting(structure: Structure, setting: Optional[str]) -> Structure:
    if setting == Setting.BOOLEAN_ALGEBRA.value and isinstance(structure, FinitePoset):
        return as_working_structure(structure)
    return structure


def _golden_task(case: Dict[str, Any], cache: _StructureCache) -> Callable[[], List[CheckReport]]:
    def run() -> List[CheckReport]:
        structure = _resolve_setting(cache.get(case['structure']), case.get('setting'))
        label = CorpusEntry(case['structure']).label
        support = parse_points(case['points'], structure)
        reports = [check_interpolation(structure, support, off_support=True)]
        reports[0].check, reports[0].structure = 'golden', label
        if 'table' in case:
            setting = Setting(case.get('setting') or ('ring' if isinstance(structure, UnitaryRing)
                                                      else 'boolean_poset'))
            route = next(r for r in interpolation_routes(structure, support) if r.term.setting == setting)
            expected = [(str(k), str(v)) for k, v in case['table'].items()]
            reports.append(check_evaluation(route.target, route.term, expected, check='golden-table'))
            reports[1].structure = label
        return reports
    return run


def run_suite(config: SuiteConfig) -> SuiteResult:
    """运行完整验收套件；结果按提交顺序排列，与线程调度无关"""
    cache = _StructureCache(config.base_dir)
    tasks: List[Callable[[], List[CheckReport]]] = []

    for index, entry in enumerate(config.corpus):
        structure = cache.get(entry.ref)
        label = entry.label
        tasks.append(lambda e=entry, s=structure: [check_validation(e, s)])
        tasks.append(lambda e=entry, s=structure: [check_roundtrip(e, s, cache)])
        if not isinstance(structure, UnitaryRing):
            tasks.append(lambda s=structure, lbl=label: [_relabel(check_identity_agreement(s), lbl)])
        poset = _boolean_poset(structure)
        if poset is not None:
            tasks.append(lambda p=poset, lbl=label: [_relabel(check_sum_zero(p), lbl)])
            tasks.append(lambda p=poset, lbl=label: [_relabel(check_complements(p), lbl)])
        if _sweepable(structure):
            working = as_working_structure(structure)
            for size in range(1, min(config.max_support, structure.size) + 1):
                tasks.append(lambda s=working, lbl=label, i=index, n=size: _sweep(s, lbl, i, n, config))

    for n in config.bridge_powersets:
        algebra = generate('powerset', n)
        supports = _supports(algebra, config.bridge_trials, config.max_support, [config.seed, 1000, n])
        tasks.append(lambda a=algebra, ss=supports: [check_ring_bridge(a, ss)])
    for p in config.lagrange_primes:
        field_ = generate('zmod', p)
        if not field_.is_field:
            raise ConfigError(f"lagrange_primes 中的 {p} 不是素数")
        supports = _supports(field_, config.lagrange_trials, config.max_support, [config.seed, 2000, p])
        tasks.append(lambda f=field_, ss=supports: [check_lagrange(f, ss)])

    for case in config.golden + config.evaluations + config.expected_failures:
        cache.get(case['structure'])
    for case in config.golden:
        tasks.append(_golden_task(case, cache))
    for case in config.evaluations:
        tasks.append(lambda c=case: [_evaluation(c, cache)])
    for case in config.expected_failures:
        tasks.append(lambda c=case: [_expected_failure(c, cache)])

    logger.info(f"验收套件: {len(tasks)} 个任务, {config.workers} 个线程, seed={config.seed}")
    with ThreadPoolExecutor(max_workers=config.workers) as executor:
        batches = list(executor.map(lambda task: task(), tasks))
    result = SuiteResult([report for batch in batches for report in batch])
    logger.info(f"验收套件结束: 通过={result.passed}")
    return result


def _relabel(report: CheckReport, label: str) -> CheckReport:
    report.structure = label
    return report


def _evaluation(case: Dict[str, Any], cache: _StructureCache) -> CheckReport:
    structure = _resolve_setting(cache.get(case['structure']), case.get('setting'))
    setting = case.get('setting') or ('ring' if isinstance(structure, UnitaryRing) else 'boolean_poset')
    term = parse_term(case['term'], setting, structure)
    report = check_evaluation(structure, term, [(str(case['at']), str(case['expect']))], check='golden-eval')
    return _relabel(report, CorpusEntry(case['structure']).label)


def _expected_failure(case: Dict[str, Any], cache: _StructureCache) -> CheckReport:
    check = case.get('check')
    if check not in _EXPECT_FAIL_CHECKS:
        raise ConfigError(f"未知的预期失败检查: {check!r}")
    structure = cache.get(case['structure'])
    support = parse_points(case['points'], structure) if 'points' in case else None
    if check in ('interpolation', 'kronecker') and support is None:
        raise ConfigError(f"预期失败检查 {check} 需要 points")
    report = _EXPECT_FAIL_CHECKS[check](structure, support)
    report.structure = CorpusEntry(case['structure']).label
    return expect_failure(report, case.get('witness', ()))

