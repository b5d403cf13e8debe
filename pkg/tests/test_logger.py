import logging
import sys
from logging.handlers import RotatingFileHandler

from app.config.settings import LOG_CONFIG
from app.utils.logger import logger, set_level


def console_handlers():
    return [h for h in logger.handlers if isinstance(h, logging.StreamHandler)
            and not isinstance(h, RotatingFileHandler)]


class TestLogger:
    def test_console_never_writes_to_stdout(self):
        handlers = console_handlers()
        assert len(handlers) == 1
        assert handlers[0].stream not in (sys.stdout, sys.__stdout__)

    def test_rotating_file_handler(self):
        files = [h for h in logger.handlers if isinstance(h, RotatingFileHandler)]
        assert len(files) == 1
        assert files[0].maxBytes == LOG_CONFIG['max_bytes']

    def test_set_level_reaches_handlers(self):
        try:
            set_level('DEBUG')
            assert logger.level == logging.DEBUG
            assert all(h.level == logging.DEBUG for h in logger.handlers)
        finally:
            set_level(LOG_CONFIG['level'])
        assert all(h.level == logging.getLevelName(LOG_CONFIG['level']) for h in logger.handlers)
