import logging
from datetime import datetime
from colorama import Fore, Style, init

from config.settings import LOGS_DIR, LOG_LEVEL, LOG_TO_FILE

init()

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'

LEVEL_COLORS = {
    logging.DEBUG: Fore.CYAN,
    logging.INFO: Fore.GREEN,
    logging.WARNING: Fore.YELLOW,
    logging.ERROR: Fore.RED,
    logging.CRITICAL: Fore.MAGENTA,
}

TRIAL_COLOR = Fore.BLUE


class ColorFormatter(logging.Formatter):
    """控制台着色，日志文件保持纯文本"""

    def format(self, record):
        text = super().format(record)
        color = getattr(record, 'color', None) or LEVEL_COLORS.get(record.levelno, "")
        return f"{color}{text}{Style.RESET_ALL}"


class Logger:
    def __init__(self, name="QDT", log_level=None):
        self.logger = logging.getLogger(name)
        self.logger.setLevel(log_level if log_level is not None else getattr(logging, LOG_LEVEL, logging.INFO))

        if not self.logger.handlers:
            self._setup_handlers()

    def _setup_handlers(self):
        console_handler = logging.StreamHandler()
        console_handler.setFormatter(ColorFormatter(LOG_FORMAT))
        self.logger.addHandler(console_handler)

        if LOG_TO_FILE:
            LOGS_DIR.mkdir(parents=True, exist_ok=True)
            log_filename = LOGS_DIR / f"qdt_{datetime.now().strftime('%Y%m%d_%H%M%S')}.log"
            file_handler = logging.FileHandler(log_filename, encoding='utf-8')
            file_handler.setFormatter(logging.Formatter(LOG_FORMAT))
            self.logger.addHandler(file_handler)

    def info(self, message):
        self.logger.info(message)

    def warning(self, message):
        self.logger.warning(message)

    def error(self, message):
        self.logger.error(message)

    def debug(self, message):
        self.logger.debug(message)

    def critical(self, message):
        self.logger.critical(message)

    def trial_log(self, action, details=""):
        # 逐试验记录
        self.logger.info(f"[试验日志] {action}: {details}", extra={'color': TRIAL_COLOR})
