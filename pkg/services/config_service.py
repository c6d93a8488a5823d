# ============================================================
# config_service.py – Paths and runtime settings
# ============================================================

from __future__ import annotations

import logging
import os
from dataclasses import dataclass
from pathlib import Path

BASE_DIR = Path(__file__).resolve().parent.parent
ASSETS_DIR = BASE_DIR / "assets"
DATA_DIR = BASE_DIR / "data"

DEFAULT_LISTEN = "127.0.0.1:8750"
DEFAULT_P_AC = 0.01


@dataclass(frozen=True)
class Settings:
    listen: str = DEFAULT_LISTEN
    store_dir: Path = DATA_DIR / "records"
    log_dir: Path = DATA_DIR / "log"
    advisories: Path = ASSETS_DIR / "advisories.json"
    p_ac: float = DEFAULT_P_AC
    log_level: str = "INFO"

    @property
    def host(self) -> str:
        return self.listen.rsplit(":", 1)[0] or "127.0.0.1"

    @property
    def port(self) -> int:
        return int(self.listen.rsplit(":", 1)[1])


def load_settings(environ: dict[str, str] | None = None) -> Settings:
    """Settings from ZKSBOM_* environment variables, falling back to defaults."""
    env = os.environ if environ is None else environ
    defaults = Settings()
    return Settings(
        listen=env.get("ZKSBOM_LISTEN", defaults.listen),
        store_dir=Path(env.get("ZKSBOM_STORE_DIR", defaults.store_dir)),
        log_dir=Path(env.get("ZKSBOM_LOG_DIR", defaults.log_dir)),
        advisories=Path(env.get("ZKSBOM_ADVISORIES", defaults.advisories)),
        p_ac=float(env.get("ZKSBOM_P_AC", defaults.p_ac)),
        log_level=env.get("ZKSBOM_LOG_LEVEL", defaults.log_level).upper(),
    )


def configure_logging(settings: Settings) -> None:
    level = getattr(logging, settings.log_level, logging.INFO)
    logging.basicConfig(level=level)
    logging.getLogger().setLevel(level)
