#!/usr/bin/env python3
"""
运行所有 pywfa 测试。
"""

import unittest
import sys
import os
import argparse

# 添加父目录到路径，以便可以导入 pywfa 与 tests 包
ROOT = os.path.abspath(os.path.join(os.path.dirname(__file__), '..'))
sys.path.insert(0, ROOT)


def run_tests(pattern=None, verbose=False):
    """
    运行测试套件。

    Args:
        pattern: 用于匹配测试模块的模式，例如 "test_hull"
        verbose: 是否显示详细输出
    """
    test_suite = unittest.defaultTestLoader.discover(
        start_dir=os.path.dirname(os.path.abspath(__file__)),
        pattern=f"{pattern}*.py" if pattern else "test_*.py",
        top_level_dir=ROOT
    )

    verbosity = 2 if verbose else 1
    runner = unittest.TextTestRunner(verbosity=verbosity)
    result = runner.run(test_suite)

    # 返回状态码，如果有测试失败则为非零
    return not result.wasSuccessful()


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description="运行 pywfa 测试")
    parser.add_argument(
        "-p", "--pattern",
        help="用于匹配测试模块的模式，例如 'test_hull' 将运行 test_hull.py"
    )
    parser.add_argument(
        "-v", "--verbose",
        action="store_true",
        help="显示详细输出"
    )

    args = parser.parse_args()
    sys.exit(run_tests(args.pattern, args.verbose))
