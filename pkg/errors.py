#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
异常定义模块
所有计算异常都继承自 ComputationError，CLI 据此区分检查失败与内部错误
"""

from typing import Optional


class ComputationError(Exception):
    """计算异常基类"""

    def __init__(self, message: str = "", anchor: Optional[str] = None):
        """
        :param message: 错误信息
        :param anchor: 出错检查对应的报告锚点
        """
        super().__init__(message)
        self.anchor = anchor

    def __str__(self) -> str:
        text = super().__str__()
        if self.anchor:
            return f"{text} [{self.anchor}]"
        return text


# 数域算术
class NotMonic(ComputationError):
    pass


class DegreeTooSmall(ComputationError):
    pass


class NotAField(ComputationError):
    """求逆时遇到零因子，说明极小多项式可约"""


class DivisionByZero(ComputationError, ZeroDivisionError):
    pass


class PrecisionExhausted(ComputationError):
    pass


class TowerMismatch(ComputationError, TypeError):
    """两个元素所在的域塔互不包含"""


# 有理函数
class IndeterminateForm(ComputationError):
    pass


class ZeroFunction(ComputationError):
    pass


class NotInSubfield(ComputationError):
    pass


# 曲线
class PointNotOnCurve(ComputationError):
    pass


class SingularCurve(ComputationError):
    pass


class ZeroScale(ComputationError):
    pass


class SingularPoint(ComputationError):
    pass


# 构造
class SingularMember(ComputationError):
    pass


class SingularInput(ComputationError):
    pass


class UnsupportedN(ComputationError):
    pass


# 截面求解
class DegenerateSystem(ComputationError):
    pass


class ResidualNotRational(ComputationError):
    pass


class ImageOffCurve(ComputationError):
    pass


# 格
class UnhandledType(ComputationError):
    pass


# 编排
class CheckFailed(ComputationError):
    """某个命名检查结果为假"""
