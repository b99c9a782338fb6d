import os
import logging
from typing import Optional

logger = logging.getLogger(__name__)

DEFAULT_SEED = 20240611
DEFAULT_CLIQUE_GUARD = 220
DEFAULT_SEARCH_GUARD = 495


def _env_flag(name: str, default: str = "false") -> bool:
    return os.getenv(name, default).lower() in ("true", "1", "yes")


def _env_int(name: str, default: Optional[int]) -> Optional[int]:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return int(raw)
    except ValueError:
        logger.warning(f"环境变量 {name}={raw!r} 不是整数，使用默认值 {default}")
        return default


class OracleConfig:
    """运行配置（环境变量）"""

    def __init__(self):
        self.threads = _env_int("EXTREMAL_THREADS", None) or os.cpu_count() or 1
        self.seed = _env_int("EXTREMAL_SEED", DEFAULT_SEED)
        self.clique_guard = _env_int("EXTREMAL_CLIQUE_GUARD", DEFAULT_CLIQUE_GUARD)
        self.clique_budget = _env_int("EXTREMAL_CLIQUE_BUDGET", None)
        self.search_guard = _env_int("EXTREMAL_SEARCH_GUARD", DEFAULT_SEARCH_GUARD)
        self.anchored = _env_flag("EXTREMAL_ANCHORED", "true")
        self.log_level = os.getenv("EXTREMAL_LOG_LEVEL", "WARNING").upper()

    def override(self, threads: Optional[int] = None, seed: Optional[int] = None) -> None:
        """Apply per-run CLI overrides"""
        if threads is not None:
            self.threads = max(1, threads)
        if seed is not None:
            self.seed = seed


settings = OracleConfig()
