#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
工具函数模块
"""

import time
import random
from typing import Dict, Optional

# 导入 colorama
try:
    from colorama import init, Fore, Back, Style
except ImportError:
    # 如果 colorama 不可用，创建虚拟类
    class DummyColor:
        def __getattr__(self, name):
            return ""

    Fore = DummyColor()
    Back = DummyColor()
    Style = DummyColor()

    def init(**kwargs):
        pass

# 初始化colorama
init(autoreset=True)

# 控制台开关，由 main.py 根据 --quiet / --no-color 设置
_CONSOLE = {'quiet': False, 'color': True}


def configure_console(quiet: bool = False, color: bool = True) -> None:
    """
    设置控制台输出模式
    :param quiet: 只输出错误
    :param color: 是否使用彩色
    """
    _CONSOLE['quiet'] = quiet
    _CONSOLE['color'] = color


class ProgressBar:
    """
    高度配对的进度条
    total 为要计算的配对数；quiet 模式或 enabled=False 时不输出
    """

    def __init__(self, total: int, desc: str = "Heights", enabled: bool = True, unit: str = "pairs"):
        self.total = max(total, 1)
        self.desc = desc
        self.unit = unit
        self.done = 0
        self.width = 30
        self.enabled = enabled and not _CONSOLE['quiet']
        self._start = time.perf_counter()

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        self.close()
        return False

    def update(self, n: int = 1):
        self.done = min(self.done + n, self.total)
        if self.enabled:
            self._draw()

    def _draw(self):
        filled = self.width * self.done // self.total
        bar = '#' * filled + '.' * (self.width - filled)
        elapsed = time.perf_counter() - self._start
        label = paint(f"{self.desc}:", Fore.CYAN)
        print(f"\r{label} [{bar}] {self.done}/{self.total} {self.unit} {elapsed:.1f}s",
              end="", flush=True)

    def close(self):
        if self.enabled and self.done:
            print()


class Timer:
    """
    计时上下文管理器
    用法: with Timer(timings, 'conic'): ...
    """

    def __init__(self, sink: Optional[Dict[str, float]] = None, label: str = "elapsed"):
        self.sink = sink if sink is not None else {}
        self.label = label
        self.elapsed = 0.0
        self._start = 0.0

    def __enter__(self):
        self._start = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        self.elapsed = time.perf_counter() - self._start
        self.sink[self.label] = self.sink.get(self.label, 0.0) + self.elapsed
        return False


def seeded_rng(seed: Optional[int] = None) -> random.Random:
    """返回固定种子的随机数生成器"""
    if seed is None:
        from config import RUN_CONFIG
        seed = RUN_CONFIG['seed']
    return random.Random(seed)


def paint(text: str, color: str) -> str:
    """返回带颜色的文本；禁用彩色时原样返回"""
    if not _CONSOLE['color']:
        return text
    return f"{color}{text}{Fore.RESET}"


def print_color(text: str, color: str = Fore.WHITE, style: str = Style.NORMAL) -> None:
    """彩色打印"""
    if _CONSOLE['color']:
        print(f"{style}{color}{text}{Style.RESET_ALL}")
    else:
        print(text)


def print_success(text: str) -> None:
    """打印成功信息"""
    if not _CONSOLE['quiet']:
        print_color(f"[+] {text}", Fore.GREEN)


def print_error(text: str) -> None:
    """打印错误信息"""
    print_color(f"[-] {text}", Fore.RED)


def print_warning(text: str) -> None:
    """打印警告信息"""
    if not _CONSOLE['quiet']:
        print_color(f"[!] {text}", Fore.YELLOW)


def print_info(text: str) -> None:
    """打印信息"""
    if not _CONSOLE['quiet']:
        print_color(f"[*] {text}", Fore.CYAN)
