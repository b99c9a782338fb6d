#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
极值集族工具箱 - 命令行启动脚本
用法: python run.py verify --thm eqfull2 --n 10 --k 4
"""

import sys
import os

# 设置控制台编码
if sys.platform == "win32":
    os.system("chcp 65001 >nul")

from cli import run

if __name__ == "__main__":
    sys.exit(run(sys.argv[1:]))
