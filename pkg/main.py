"""
fanoblow Main Entry Point
"""
import sys

from fanoblow.cli.app import main, setup_logging
from fanoblow.config.settings import get_settings

# ロギングを設定
logger = setup_logging()

if __name__ == "__main__":
    settings = get_settings()
    logger.debug(f"Starting fanoblow with log level: {settings.log_level}")
    sys.exit(main())
