"""
공통 유틸리티: 로깅과 설정 로딩
"""

from .logger import get_logger, setup_logging
from .config import Limits, load_config, load_limits, data_dir

__all__ = ['get_logger', 'setup_logging', 'Limits', 'load_config', 'load_limits', 'data_dir']
