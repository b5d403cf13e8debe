import argparse
import sys
from pathlib import Path
from typing import List, Optional

from app.algebra_workbench.algebra.boolean_algebra import BooleanAlgebra
from app.algebra_workbench.algebra.generators import generate
from app.algebra_workbench.algebra.ring import UnitaryRing
from app.algebra_workbench.ingest.structure_format import emit_structure, load_structure, save_structure
from app.algebra_workbench.ingest.term_parser import parse_points, parse_term
from app.algebra_workbench.interp.constructors import (interpolate_boolean_algebra, interpolate_boolean_poset,
                                                       interpolate_ring, lagrange_field)
from app.algebra_workbench.interp.evaluator import Structure, eval_term, evaluation_table
from app.algebra_workbench.interp.terms import Setting, Term
from app.algebra_workbench.order.properties import cached_classification
from app.algebra_workbench.verify.checks import (CheckReport, as_working_structure, check_complements,
                                                 check_distributivity, check_interpolation, check_kronecker,
                                                 check_sum_zero, merge_reports, random_support)
from app.algebra_workbench.verify.suite import SuiteConfig, run_suite
from app.config.settings import LOG_CONFIG, SUITE_CONFIG
from app.utils.exceptions import AlgebraWorkbenchException, StructureKindError, TermError
from app.utils.logger import logger, set_level

"""
# 校验与分类
python -m app.algebra_workbench.tools.workbench_cli validate data/structures/boolean_poset10.struct
python -m app.algebra_workbench.tools.workbench_cli classify data/structures/complemented10.struct

# 生成标准结构
python -m app.algebra_workbench.tools.workbench_cli gen --powerset 3 -o powerset3.struct

# 插值与求值
python -m app.algebra_workbench.tools.workbench_cli interpolate data/structures/boolean_poset10.struct --points 0:a,a:c,b:dprime,cprime:1
python -m app.algebra_workbench.tools.workbench_cli eval data/structures/boolean_poset10.struct --term "sdiff(x,cprime)" --at b

# 性质检查与验收套件
python -m app.algebra_workbench.tools.workbench_cli check data/structures/complemented10.struct --prop prop1
python -m app.algebra_workbench.tools.workbench_cli suite --porcelain
"""

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2
PROPERTIES = ('sum_zero', 'interpolation', 'kronecker', 'distributivity', 'complements')
# 命令行上的别名
PROPERTY_ALIASES = {'prop1': 'sum_zero'}


def _default_setting(structure: Structure) -> Setting:
    return Setting.RING if isinstance(structure, UnitaryRing) else Setting.BOOLEAN_POSET


def _with_setting(structure: Structure, setting: Optional[str]):
    """按场景准备结构：boolean_algebra 场景下把偏序集提升为布尔代数"""
    setting = Setting(setting) if setting else _default_setting(structure)
    if setting == Setting.BOOLEAN_ALGEBRA:
        structure = as_working_structure(structure)
        if not isinstance(structure, BooleanAlgebra):
            raise StructureKindError(f"{structure.name} 不是布尔代数，不能使用 boolean_algebra 场景")
    return structure, setting


def _interpolant(structure: Structure, setting: Setting, support, form: str) -> Term:
    if setting in (Setting.FIELD, Setting.RING) and not isinstance(structure, UnitaryRing):
        raise TermError(f"{setting.value} 场景需要环文件")
    if setting == Setting.FIELD:
        return lagrange_field(structure, support)
    if setting == Setting.RING:
        return interpolate_ring(structure, support)
    if setting == Setting.BOOLEAN_ALGEBRA:
        return interpolate_boolean_algebra(structure, support, form=form)
    if isinstance(structure, UnitaryRing):
        raise TermError("boolean_poset 场景需要偏序集文件")
    return interpolate_boolean_poset(structure, support)


def _print_report(report: CheckReport, args) -> int:
    print(report.porcelain_line() if args.porcelain else report.render(show_cases=args.verbose))
    return EXIT_OK if report.passed else EXIT_FAILED


def cmd_validate(args) -> int:
    structure = load_structure(args.file)
    if args.porcelain:
        print(f"CHECK validate/{structure.name or Path(args.file).stem} PASS")
        return EXIT_OK
    if isinstance(structure, UnitaryRing):
        print(f"环 {structure.name}: {structure.size} 个元素，公理全部成立")
    else:
        print(f"偏序集 {structure.name}: {structure.size} 个元素，"
              f"有界={structure.is_bounded}，补映射={'已确定' if structure.complement is not None else '无'}")
    return EXIT_OK


def cmd_classify(args) -> int:
    structure = load_structure(args.file)
    if isinstance(structure, UnitaryRing):
        flags = {'is_trivial': structure.is_trivial, 'is_commutative': structure.is_commutative,
                 'is_boolean_ring': structure.is_boolean_ring, 'is_field': structure.is_field}
        witnesses = {}
    else:
        result = cached_classification(structure)
        flags = result.flags()
        witnesses = result.witnesses
    label = structure.name or Path(args.file).stem
    for flag, value in flags.items():
        witness = f"({', '.join(witnesses[flag])})" if witnesses.get(flag) else ''
        if args.porcelain:
            line = f"CHECK classify/{label}/{flag} {'PASS' if value else 'FAIL'}"
        else:
            line = f"{flag:<20} {value}"
        print(f"{line} {witness}" if witness else line)
    return EXIT_OK


def cmd_gen(args) -> int:
    if args.powerset is not None:
        structure = generate('powerset', args.powerset)
    elif args.zmod is not None:
        structure = generate('zmod', args.zmod)
    else:
        structure = generate('matring2')
    if args.output:
        save_structure(structure, args.output)
        print(f"已写入 {args.output}")
    else:
        sys.stdout.write(emit_structure(structure))
    return EXIT_OK


def cmd_interpolate(args) -> int:
    structure, setting = _with_setting(load_structure(args.file), args.setting)
    support = parse_points(args.points, structure)
    term = _interpolant(structure, setting, support, args.form)
    expected = dict(support.points)
    label = structure.name or Path(args.file).stem
    failures = []

    if not args.porcelain:
        print(f"p(x) = {term}")
    for i, (name, result) in enumerate(evaluation_table(structure, term)):
        if i not in expected:
            if not args.porcelain:
                print(f"p({name}) = {result}")
            continue
        ok = result == expected[i]
        witness = ''
        if not ok:
            shown = result.value.braced() if result.is_subset else str(result)
            witness = f"p({name})={shown} ≠ {structure.names[expected[i]]}"
            failures.append(witness)
        if args.porcelain:
            line = f"CHECK interpolate/{label}/p({name}) {'PASS' if ok else 'FAIL'}"
            print(f"{line} {witness}" if witness else line)
        else:
            print(f"p({name}) = {result}  [{'ok' if ok else 'FAIL'}: f({name}) = {structure.names[expected[i]]}]")
    if failures:
        if not args.porcelain:
            print(f"反例: {failures[0]}")
        return EXIT_FAILED
    return EXIT_OK


def cmd_eval(args) -> int:
    structure, setting = _with_setting(load_structure(args.file), args.setting)
    term = parse_term(args.term, setting, structure)
    print(eval_term(structure, term, args.at))
    return EXIT_OK


def cmd_check(args) -> int:
    prop = PROPERTY_ALIASES.get(args.prop, args.prop)
    structure = load_structure(args.file)
    if prop == 'sum_zero':
        return _print_report(check_sum_zero(structure), args)
    if prop == 'distributivity':
        return _print_report(check_distributivity(structure), args)
    if prop == 'complements':
        return _print_report(check_complements(structure), args)

    check = check_interpolation if prop == 'interpolation' else check_kronecker
    if args.points:
        return _print_report(check(structure, parse_points(args.points, structure)), args)
    seed = SUITE_CONFIG['seed'] if args.seed is None else args.seed
    if args.size is not None:
        sizes = [args.size]
    else:
        sizes = range(1, min(SUITE_CONFIG['max_support'], structure.size) + 1)
    reports = []
    for size in sizes:
        trials = [check(structure, random_support(structure, size, seed=[seed, size, trial]))
                  for trial in range(args.trials)]
        reports.append(merge_reports(prop, structure.name, trials, detail=f"n={size}"))
    return max(_print_report(report, args) for report in reports)


def cmd_suite(args) -> int:
    config = SuiteConfig.load(args.config, trials=args.trials, seed=args.seed,
                              max_support=args.max_support, workers=args.workers)
    result = run_suite(config)
    print(result.porcelain() if args.porcelain else result.summary())
    return result.exit_code


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--porcelain', action='store_true', help='每行一个结果的机器可读输出')
    common.add_argument('--verbose', action='store_true', help='输出调试日志与全部检查项')

    parser = argparse.ArgumentParser(prog='workbench_cli', description='有限代数结构插值工作台')
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('validate', parents=[common], help='解析并校验结构文件')
    p.add_argument('file')
    p.set_defaults(handler=cmd_validate)

    p = sub.add_parser('classify', parents=[common], help='输出结构的全部性质')
    p.add_argument('file')
    p.set_defaults(handler=cmd_classify)

    p = sub.add_parser('gen', parents=[common], help='生成标准结构')
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument('--powerset', type=int, metavar='N', help='N 个原子的幂集布尔代数')
    group.add_argument('--zmod', type=int, metavar='N', help='整数模 N 环')
    group.add_argument('--matring2', action='store_true', help='Z_2 上的 2×2 矩阵环')
    p.add_argument('-o', '--output', help='输出文件（默认标准输出）')
    p.set_defaults(handler=cmd_gen)

    settings = [s.value for s in Setting]
    p = sub.add_parser('interpolate', parents=[common], help='构造插值项并输出求值表')
    p.add_argument('file')
    p.add_argument('--points', required=True, help='支撑函数，如 a:v,b:w')
    p.add_argument('--setting', choices=settings, help='项的场景（默认按文件类型）')
    p.add_argument('--form', choices=['join', 'sum'], default='join', help='布尔代数插值的组合形式')
    p.set_defaults(handler=cmd_interpolate)

    p = sub.add_parser('eval', parents=[common], help='在一点上对项求值')
    p.add_argument('file')
    p.add_argument('--term', required=True)
    p.add_argument('--at', required=True)
    p.add_argument('--setting', choices=settings)
    p.set_defaults(handler=cmd_eval)

    p = sub.add_parser('check', parents=[common], help='检查单个性质')
    p.add_argument('file')
    p.add_argument('--prop', choices=PROPERTIES + tuple(PROPERTY_ALIASES), required=True)
    p.add_argument('--trials', type=int, default=SUITE_CONFIG['trials'])
    p.add_argument('--size', type=int, help='支撑大小（默认扫描 1..5）')
    p.add_argument('--seed', type=int)
    p.add_argument('--points', help='使用固定支撑代替随机支撑')
    p.set_defaults(handler=cmd_check)

    p = sub.add_parser('suite', parents=[common], help='运行完整验收套件')
    p.add_argument('--config', help='套件 YAML 配置（默认 data/suite.yaml）')
    p.add_argument('--trials', type=int)
    p.add_argument('--seed', type=int)
    p.add_argument('--max-support', type=int, dest='max_support')
    p.add_argument('--workers', type=int)
    p.set_defaults(handler=cmd_suite)
    return parser


def run_cli(argv: Optional[List[str]] = None) -> int:
    """执行命令行，返回退出码：0 全部通过，1 检查失败，2 输入或用法错误"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE

    if args.verbose:
        set_level('DEBUG')
    if getattr(args, 'trials', None) is not None and args.trials < 1:
        print("错误: --trials 必须至少为 1", file=sys.stderr)
        return EXIT_USAGE
    if getattr(args, 'size', None) is not None and args.size < 1:
        print("错误: --size 必须至少为 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.handler(args)
    except AlgebraWorkbenchException as e:
        logger.error(f"{args.command} 失败: {e}")
        print(f"错误: {e}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print(f"错误: {e}", file=sys.stderr)
        return EXIT_USAGE
    finally:
        if args.verbose:
            set_level(LOG_CONFIG['level'])


def main():
    sys.exit(run_cli())


if __name__ == '__main__':
    main()
