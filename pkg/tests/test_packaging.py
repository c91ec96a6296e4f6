"""
测试安装脚本声明的依赖。
"""
import os
import runpy
import unittest
from unittest import mock

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))


class TestSetupScript(unittest.TestCase):
    """测试运行时依赖与开发依赖分开声明。"""

    def setUp(self):
        cwd = os.getcwd()
        os.chdir(ROOT)
        try:
            with mock.patch('setuptools.setup') as setup:
                runpy.run_path(os.path.join(ROOT, 'setup.py'))
        finally:
            os.chdir(cwd)
        self.kwargs = setup.call_args.kwargs

    def test_runtime_requirements(self):
        names = [r.split('>=')[0] for r in self.kwargs['install_requires']]
        self.assertEqual(names, ['numpy', 'sympy'])

    def test_dev_extras(self):
        names = {r.split('>=')[0] for r in self.kwargs['extras_require']['dev']}
        self.assertEqual(names, {'pytest', 'pytest-cov', 'black', 'isort', 'mypy', 'flake8'})

    def test_console_script(self):
        self.assertIn('pywfa=pywfa.cli:main', self.kwargs['entry_points']['console_scripts'])


if __name__ == '__main__':
    unittest.main()
