"""结构描述文件的解析与规范输出

格式为按行的文本：

    kind poset
    name boolean_poset10
    elements 0 a b c d aprime bprime cprime dprime 1
    cover 0 < a
    complement a -> aprime      # 可选

    kind ring
    name Z3
    elements 0 1 2
    zero 0
    one 1
    add 0 : 0 1 2
    mul 0 : 0 0 0

# 之后为注释；元素名可写 a' 或 aprime。
"""
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

from app.algebra_workbench.algebra.boolean_algebra import BooleanAlgebra
from app.algebra_workbench.algebra.ring import UnitaryRing, build_ring
from app.algebra_workbench.order.poset import FinitePoset, build_poset, canonical_name
from app.algebra_workbench.order.properties import resolve_complement
from app.utils.exceptions import ParseError, StructureKindError
from app.utils.logger import logger

Parsed = Union[FinitePoset, UnitaryRing]

_POSET_KEYS = {'cover', 'complement'}
_RING_KEYS = {'zero', 'one', 'add', 'mul'}


class _Lines:
    """去掉注释和空行后的 (行号, 关键字, 其余部分)"""

    def __init__(self, text: str):
        self.items: List[Tuple[int, str, str]] = []
        for number, raw in enumerate(text.splitlines(), start=1):
            line = raw.split('#', 1)[0].strip()
            if not line:
                continue
            keyword, _, rest = line.partition(' ')
            self.items.append((number, keyword, rest.strip()))


def _single(lines: _Lines, keyword: str, required: bool = True) -> Optional[Tuple[int, str]]:
    found = [(n, rest) for n, k, rest in lines.items if k == keyword]
    if len(found) > 1:
        raise ParseError(f"关键字 {keyword} 重复出现", line=found[1][0])
    if not found:
        if required:
            raise ParseError(f"缺少 {keyword} 行")
        return None
    return found[0]


def parse_structure(text: str) -> Parsed:
    """解析结构文件，经 build_poset / build_ring 校验

    Raises:
        ParseError: 语法错误（带行号）
        StructureValidationError: 构造器报告的语义错误
    """
    lines = _Lines(text)
    known = {'kind', 'name', 'elements'} | _POSET_KEYS | _RING_KEYS
    for number, keyword, _ in lines.items:
        if keyword not in known:
            raise ParseError(f"未知关键字: {keyword}", line=number)

    kind_line, kind = _single(lines, 'kind')
    if kind not in ('poset', 'ring'):
        raise ParseError(f"kind 必须是 poset 或 ring，得到 {kind!r}", line=kind_line)
    named = _single(lines, 'name', required=False)
    name = named[1] if named else ''
    elements_line, elements_text = _single(lines, 'elements')
    names = [canonical_name(t) for t in elements_text.split()]
    if not names:
        raise ParseError("elements 为空", line=elements_line)

    foreign = _RING_KEYS if kind == 'poset' else _POSET_KEYS
    for number, keyword, _ in lines.items:
        if keyword in foreign:
            raise ParseError(f"{kind} 文件中不能出现 {keyword}", line=number)

    if kind == 'poset':
        return _parse_poset(lines, names, name)
    return _parse_ring(lines, names, name)


def _parse_poset(lines: _Lines, names: List[str], name: str) -> FinitePoset:
    covers = []
    complement: Dict[str, str] = {}
    for number, keyword, rest in lines.items:
        if keyword == 'cover':
            parts = rest.split()
            if len(parts) != 3 or parts[1] != '<':
                raise ParseError(f"cover 行格式应为 'cover a < b': {rest!r}", line=number)
            covers.append((parts[0], parts[2]))
        elif keyword == 'complement':
            parts = rest.split()
            if len(parts) != 3 or parts[1] != '->':
                raise ParseError(f"complement 行格式应为 'complement x -> y': {rest!r}", line=number)
            key = canonical_name(parts[0])
            if key in complement:
                raise ParseError(f"元素 {parts[0]} 的补元重复给出", line=number)
            complement[key] = canonical_name(parts[2])

    poset = build_poset(names, covers, name=name, complement=complement or None)
    if complement:
        return poset
    return resolve_complement(poset)


def _parse_ring(lines: _Lines, names: List[str], name: str) -> UnitaryRing:
    index = {n: i for i, n in enumerate(names)}

    def lookup(token: str, number: int) -> int:
        key = canonical_name(token)
        if key not in index:
            raise ParseError(f"未知元素: {token}", line=number)
        return index[key]

    zero_line, zero = _single(lines, 'zero')
    one_line, one = _single(lines, 'one')
    tables: Dict[str, Dict[int, List[int]]] = {'add': {}, 'mul': {}}
    for number, keyword, rest in lines.items:
        if keyword not in tables:
            continue
        row_text, sep, cells_text = rest.partition(':')
        if not sep:
            raise ParseError(f"{keyword} 行格式应为 '{keyword} <row> : <names>'", line=number)
        row = lookup(row_text.strip(), number)
        if row in tables[keyword]:
            raise ParseError(f"{keyword} 表的行 {names[row]} 重复", line=number)
        cells = [lookup(t, number) for t in cells_text.split()]
        if len(cells) != len(names):
            raise ParseError(f"{keyword} 行应有 {len(names)} 个元素，得到 {len(cells)}", line=number)
        tables[keyword][row] = cells

    for keyword, rows in tables.items():
        missing = [names[i] for i in range(len(names)) if i not in rows]
        if missing:
            raise ParseError(f"{keyword} 表缺少行: {', '.join(missing)}")
    add = [tables['add'][i] for i in range(len(names))]
    mul = [tables['mul'][i] for i in range(len(names))]
    return build_ring(names, add, mul, lookup(zero, zero_line), lookup(one, one_line), name=name)


def emit_structure(structure: Union[FinitePoset, UnitaryRing, BooleanAlgebra]) -> str:
    """规范输出：载体顺序的元素、按下标排序的覆盖关系、完整补表"""
    if isinstance(structure, BooleanAlgebra):
        structure = structure.poset
    out = []
    if isinstance(structure, FinitePoset):
        out.append('kind poset')
        if structure.name:
            out.append(f"name {structure.name}")
        out.append('elements ' + ' '.join(structure.names))
        for lower, upper in structure.covers:
            out.append(f"cover {structure.names[lower]} < {structure.names[upper]}")
        if structure.complement is not None:
            for x, y in enumerate(structure.complement):
                out.append(f"complement {structure.names[x]} -> {structure.names[y]}")
    elif isinstance(structure, UnitaryRing):
        names = structure.names
        out.append('kind ring')
        if structure.name:
            out.append(f"name {structure.name}")
        out.append('elements ' + ' '.join(names))
        out.append(f"zero {names[structure.zero]}")
        out.append(f"one {names[structure.one]}")
        for keyword, table in (('add', structure.add), ('mul', structure.mul)):
            for i, row in enumerate(table):
                out.append(f"{keyword} {names[i]} : " + ' '.join(names[int(v)] for v in row))
    else:
        raise StructureKindError(f"无法输出的结构类型: {type(structure).__name__}")
    return '\n'.join(out) + '\n'


def load_structure(path: Union[str, Path]) -> Parsed:
    path = Path(path)
    logger.info(f"正在读取结构文件: {path}")
    return parse_structure(path.read_text(encoding='utf-8'))


def save_structure(structure, path: Union[str, Path]) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(emit_structure(structure), encoding='utf-8')
    logger.info(f"结构已写入: {path}")
