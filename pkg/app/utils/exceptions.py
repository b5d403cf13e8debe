from typing import Optional, Tuple


class AlgebraWorkbenchException(Exception):
    """基础异常类"""
    pass


class StructureValidationError(AlgebraWorkbenchException):
    """结构构造校验失败（重复名称、环、公理不成立等）"""

    def __init__(self, message: str, witness: Optional[Tuple] = None):
        super().__init__(message)
        self.witness = witness


class RingAxiomError(StructureValidationError):
    """环公理不成立，witness 为反例元组"""

    def __init__(self, axiom: str, message: str, witness: Optional[Tuple] = None):
        super().__init__(message, witness)
        self.axiom = axiom


class NotComplementedError(StructureValidationError):
    """存在没有补元的元素"""
    pass


class StructureKindError(AlgebraWorkbenchException):
    """结构类型不满足操作要求（非域、非布尔偏序集、非格等）"""
    pass


class SupportError(AlgebraWorkbenchException):
    """支撑函数相关错误"""
    pass


class TermError(AlgebraWorkbenchException):
    """项构造或求值错误"""
    pass


class EmptyConeError(TermError):
    """对空集求 Baaz delta"""
    pass


class ParseError(AlgebraWorkbenchException):
    """输入文本语法错误"""

    def __init__(self, message: str, line: Optional[int] = None):
        if line is not None:
            message = f"第 {line} 行: {message}"
        super().__init__(message)
        self.line = line


class ConfigError(AlgebraWorkbenchException):
    """配置相关错误"""
    pass
