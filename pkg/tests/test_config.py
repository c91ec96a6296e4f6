"""
测试配置模块。
"""
import unittest

from pywfa.config import Config, default_config, desk_scale_config, thorough_config


class TestConfig(unittest.TestCase):
    """测试配置模块的功能。"""

    def test_default_values(self):
        """测试默认配置值是否正确。"""
        config = Config()

        # 单词枚举
        self.assertEqual(config.max_word_length, 10)
        self.assertEqual(config.enumeration_budget, 10 ** 6)
        self.assertEqual(config.check_length, 8)

        # 线性包搜索
        self.assertIsNone(config.hull_initial_depth)
        self.assertIsNone(config.hull_depth_step)
        self.assertEqual(config.hull_max_depth, 24)
        self.assertEqual(config.hull_max_components, 6)

        self.assertEqual(config.variation_distance, 2)
        self.assertEqual(config.log_level, 'WARNING')
        self.assertEqual(default_config(), config)

    def test_custom_values(self):
        """测试自定义配置值是否正确设置。"""
        config = Config(enumeration_budget=500, hull_max_components=2, log_level='info')
        self.assertEqual(config.enumeration_budget, 500)
        self.assertEqual(config.hull_max_components, 2)
        self.assertEqual(config.log_level, 'INFO')

        # 未自定义的值应该保持默认
        self.assertEqual(config.hull_max_depth, 24)

    def test_depth_helpers(self):
        """测试轨道深度的默认取维数。"""
        config = Config()
        self.assertEqual(config.get_initial_depth(4), 4)
        self.assertEqual(config.get_depth_step(3), 3)
        self.assertEqual(config.get_initial_depth(0), 1)
        self.assertEqual(config.get_depth_step(0), 1)

        config = Config(hull_initial_depth=2, hull_depth_step=5)
        self.assertEqual(config.get_initial_depth(10), 2)
        self.assertEqual(config.get_depth_step(10), 5)

    def test_invalid_values(self):
        """测试负数与空分量数被拒绝。"""
        with self.assertRaises(ValueError):
            Config(enumeration_budget=-1)
        with self.assertRaises(ValueError):
            Config(hull_max_components=0)
        with self.assertRaises(ValueError):
            Config.from_dict({'check_length': -3})

    def test_from_dict(self):
        """测试从字典创建配置，未知选项只记录警告。"""
        with self.assertLogs('pywfa', level='WARNING') as logs:
            config = Config.from_dict({'hull_max_depth': 8, 'no_such_option': 1})
        self.assertEqual(config.hull_max_depth, 8)
        self.assertFalse(hasattr(config, 'no_such_option'))
        self.assertIn('no_such_option', logs.output[0])

    def test_presets(self):
        """测试预设配置。"""
        desk = desk_scale_config()
        self.assertEqual(desk.enumeration_budget, 10 ** 5)
        self.assertEqual(desk.hull_max_depth, 12)
        self.assertEqual(desk.hull_max_components, 4)

        thorough = thorough_config(budget=123)
        self.assertEqual(thorough.enumeration_budget, 123)
        self.assertEqual(thorough.hull_max_depth, 40)
        self.assertGreater(thorough.hull_max_components, desk.hull_max_components)


if __name__ == '__main__':
    unittest.main()
