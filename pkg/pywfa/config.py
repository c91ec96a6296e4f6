"""
pywfa配置模块。

该模块定义了各个分析流程的可配置参数和默认值。
"""
from dataclasses import dataclass
from typing import Dict, Any, Optional

from pywfa.utils import logger


@dataclass
class Config:
    """分析流程配置类。"""

    # 单词枚举相关
    max_word_length: int = 10  # 命令行 coeffs 等默认最大单词长度
    enumeration_budget: int = 10 ** 6  # 单词/向量枚举预算
    check_length: int = 8  # 内部一致性检查使用的单词长度

    # 线性包搜索相关
    hull_initial_depth: Optional[int] = None  # 初始轨道深度，None 表示取维数 n
    hull_depth_step: Optional[int] = None  # 深度增量，None 表示取维数 n
    hull_max_depth: int = 24  # 轨道深度上限
    hull_max_components: int = 6  # 候选并集的最大分量数

    # 诊断相关
    variation_distance: int = 2  # 变差报告的默认距离 c

    # 日志
    log_level: str = 'WARNING'

    def __post_init__(self):
        """初始化后处理，确保配置一致性。"""
        for name in ('max_word_length', 'enumeration_budget', 'check_length',
                     'hull_max_depth', 'hull_max_components', 'variation_distance'):
            if getattr(self, name) < 0:
                raise ValueError(f"配置项 {name} 不能为负数")
        if self.hull_max_components < 1:
            raise ValueError("hull_max_components 至少为 1")
        self.log_level = self.log_level.upper()

    def get_initial_depth(self, dim: int) -> int:
        """
        获取线性包搜索的初始轨道深度。

        Args:
            dim: 线性表示的维数

        Returns:
            初始深度（至少为1）
        """
        depth = self.hull_initial_depth if self.hull_initial_depth is not None else dim
        return max(1, depth)

    def get_depth_step(self, dim: int) -> int:
        """
        获取线性包搜索的深度增量。

        Args:
            dim: 线性表示的维数

        Returns:
            深度增量（至少为1）
        """
        step = self.hull_depth_step if self.hull_depth_step is not None else dim
        return max(1, step)

    @classmethod
    def from_dict(cls, config_dict: Dict[str, Any]) -> 'Config':
        """
        从字典创建配置对象。

        Args:
            config_dict: 包含配置选项的字典

        Returns:
            Config对象
        """
        config = cls()
        for key, value in config_dict.items():
            if hasattr(config, key):
                setattr(config, key, value)
            else:
                logger.warning("未知的配置选项 '%s'", key)
        config.__post_init__()
        return config


def default_config() -> Config:
    """
    获取默认配置。

    Returns:
        默认的Config对象
    """
    return Config()


def desk_scale_config(budget: int = 10 ** 5) -> Config:
    """
    获取适合小规模实验的配置：较小的预算和较浅的搜索。

    Args:
        budget: 枚举预算

    Returns:
        Config对象
    """
    config = Config()
    config.enumeration_budget = budget
    config.hull_max_depth = 12
    config.hull_max_components = 4
    config.check_length = 6
    return config


def thorough_config(budget: int = 10 ** 7) -> Config:
    """
    获取更彻底的配置：更大的预算、更深的轨道和更多的候选分量。

    Args:
        budget: 枚举预算

    Returns:
        Config对象
    """
    config = Config()
    config.enumeration_budget = budget
    config.hull_max_depth = 40
    config.hull_max_components = 10
    config.check_length = 10
    return config
