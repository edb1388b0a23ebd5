"""
로깅 유틸리티
indexcoding 네임스페이스 아래의 로거를 생성하고 핸들러를 한 번만 설치합니다.
"""

import logging
from typing import Optional

ROOT_LOGGER_NAME = "indexcoding"
LOG_FORMAT = "%(asctime)s [%(levelname)s] %(name)s: %(message)s"

_configured = False


def setup_logging(level: Optional[str] = None) -> logging.Logger:
    """
    네임스페이스 루트 로거를 설정합니다.

    Args:
        level: 로그 레벨 이름 (None이면 설정 파일의 값 사용)

    Returns:
        루트 로거
    """
    global _configured
    root = logging.getLogger(ROOT_LOGGER_NAME)

    if level is None:
        # 순환 import 방지
        from utils.config import load_config
        level = load_config().get('logging', {}).get('level', 'WARNING')

    if not _configured:
        handler = logging.StreamHandler()
        handler.setFormatter(logging.Formatter(LOG_FORMAT))
        root.addHandler(handler)
        root.propagate = False
        _configured = True

    root.setLevel(getattr(logging, str(level).upper(), logging.WARNING))
    return root


def get_logger(name: str) -> logging.Logger:
    """
    모듈별 로거를 반환합니다.

    Args:
        name: 모듈 이름 (보통 __name__)

    Returns:
        indexcoding 네임스페이스 아래의 로거
    """
    if not _configured:
        setup_logging()
    short = name.rsplit('.', 1)[-1]
    return logging.getLogger(f"{ROOT_LOGGER_NAME}.{short}")
