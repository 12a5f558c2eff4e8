"""
错误类型
所有库内错误都继承自 ValueError，调用方可以只捕获 ZmlpError
"""
from typing import Optional


class ZmlpError(ValueError):
    """库内所有错误的基类"""


class EmptyPolynomialError(ZmlpError):
    """零多项式没有切片、牛顿多边形等结构"""

    def __init__(self, what: str = "empty polynomial"):
        super().__init__(f"空多项式 (empty polynomial): {what}")


class NotCollinearError(ZmlpError):
    """支撑集不在方向 m 的直线上"""


class InvalidMutationSpecError(ZmlpError):
    """(φ, h) 不是合法的变异数据"""


class NotMutableError(ZmlpError):
    """
    某个负层的切片不能被 h^{-k} 整除

    属性:
    - level: 出问题的层 k
    """

    def __init__(self, level: int, detail: Optional[str] = None):
        self.level = level
        msg = f"not mutable: 第 {level} 层切片不能被 h^{-level} 整除"
        if detail:
            msg = f"{msg} ({detail})"
        super().__init__(msg)


class NotTriangularError(ZmlpError):
    """支撑不是直角三角形 △(a,b)"""


class NotInDomainError(ZmlpError):
    """对偶划分对不在初等变换的定义域内"""


class ReducibleInputError(ZmlpError):
    """可约输入需要提供因式分解"""

    def __init__(self, detail: str = ""):
        msg = "reducible input, factorization required"
        if detail:
            msg = f"{msg}: {detail}"
        super().__init__(msg)


class ConeError(ZmlpError):
    """锥退化、不尖或射线不在支撑内"""


class NonCyclicQuotientError(ZmlpError):
    """ℤ³ 模生成元格不是循环群"""
