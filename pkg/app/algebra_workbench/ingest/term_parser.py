"""项的文本语法与 --points 参数的解析

语法：
    term := 'x' | <元素名> | <关键字> '(' term (',' term)* ')'
关键字见 terms.NODE_KEYWORDS；元素名按目标结构解析，x 永远是变量。
"""
import re
from typing import List, Tuple, Union

from app.algebra_workbench.interp.evaluator import Structure, structure_for
from app.algebra_workbench.interp.support import SupportFunction
from app.algebra_workbench.interp.terms import (NODE_KEYWORDS, ALLOWED_NODES, Binary, Const, Node, Setting,
                                                Term, Unary, Var, settings_allowing)
from app.utils.exceptions import ParseError, TermError

_TOKEN = re.compile(r"\s*(?:(?P<name>[A-Za-z0-9_']+)|(?P<punct>[(),]))")
_KEYWORD_NODES = {keyword: node_type for node_type, keyword in NODE_KEYWORDS.items()}
VARIABLE = 'x'


def _tokenize(text: str) -> List[Tuple[str, int]]:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if match is None:
            raise ParseError(f"无法识别的字符 {text[pos:].strip()[:1]!r}（位置 {pos}）")
        token = match.group('name') or match.group('punct')
        tokens.append((token, match.start(match.lastgroup)))
        pos = match.end()
    return tokens


class _TermParser:
    """递归下降解析器"""

    def __init__(self, text: str, setting: Setting, target: Structure):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.setting = setting
        self.target = target

    def peek(self) -> Union[str, None]:
        return self.tokens[self.pos][0] if self.pos < len(self.tokens) else None

    def take(self, expected: Union[str, None] = None) -> str:
        if self.pos >= len(self.tokens):
            suffix = f"，期望 {expected!r}" if expected else ''
            raise ParseError(f"表达式意外结束{suffix}")
        token, column = self.tokens[self.pos]
        if expected is not None and token != expected:
            raise ParseError(f"期望 {expected!r}，得到 {token!r}（位置 {column}）")
        self.pos += 1
        return token

    def parse(self) -> Node:
        node = self.term()
        if self.pos != len(self.tokens):
            token, column = self.tokens[self.pos]
            raise ParseError(f"多余的输入 {token!r}（位置 {column}）")
        return node

    def term(self) -> Node:
        token = self.take()
        if token in ('(', ')', ','):
            raise ParseError(f"期望项，得到 {token!r}")
        if self.peek() == '(':
            return self.call(token)
        if token == VARIABLE:
            return Var()
        try:
            return Const(self.target.resolve(token))
        except KeyError:
            raise TermError(f"未知元素名: {token}（结构 {self.target.name}）")

    def call(self, keyword: str) -> Node:
        node_type = _KEYWORD_NODES.get(keyword)
        if node_type is None:
            raise TermError(f"未知的构造: {keyword}")
        if node_type not in ALLOWED_NODES[self.setting]:
            needed = ' | '.join(s.value for s in settings_allowing(node_type))
            raise TermError(f"构造 {keyword} 在 {self.setting.value} 场景中无效（需要 {needed}）")
        self.take('(')
        args = [self.term()]
        while self.peek() == ',':
            self.take(',')
            args.append(self.term())
        self.take(')')

        if issubclass(node_type, Unary):
            arity = 1
        elif issubclass(node_type, Binary):
            arity = 2
        else:
            return node_type(tuple(args))
        if len(args) != arity:
            raise TermError(f"{keyword} 需要 {arity} 个参数，得到 {len(args)}")
        return node_type(*args)


def parse_term(text: str, setting: Union[Setting, str], structure: Structure) -> Term:
    """解析项文本，元素名按 structure 解析

    Raises:
        ParseError: 语法错误
        TermError: 未知名称、参数个数不符、构造与场景不匹配
    """
    try:
        setting = Setting(setting)
    except ValueError:
        raise TermError(f"未知的场景: {setting}")
    target = structure_for(structure, setting)
    if not text.strip():
        raise ParseError("项为空")
    root = _TermParser(text, setting, target).parse()
    return Term(root, setting, target.names)


def parse_points(text: str, structure: Structure) -> SupportFunction:
    """解析 'a:v,b:w,…'，顺序即 a_1..a_n"""
    pairs = []
    for number, chunk in enumerate(text.split(','), start=1):
        chunk = chunk.strip()
        argument, sep, value = chunk.partition(':')
        if not sep or not argument.strip() or not value.strip() or ':' in value:
            raise ParseError(f"第 {number} 个支撑点格式应为 name:name，得到 {chunk!r}")
        pairs.append((argument.strip(), value.strip()))
    return SupportFunction.from_pairs(structure, pairs)
