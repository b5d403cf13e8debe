import logging
import os
import sys
from logging.handlers import RotatingFileHandler
from datetime import datetime

from app.config.settings import LOG_DIR, LOG_CONFIG


class Logger:
    def __init__(self):
        # 创建logs目录（如果不存在）
        if not os.path.exists(LOG_DIR):
            os.makedirs(LOG_DIR)

        # 设置日志文件名（包含日期）
        log_file = os.path.join(LOG_DIR, datetime.now().strftime(LOG_CONFIG['file_pattern']))

        # 创建logger实例
        self.logger = logging.getLogger(LOG_CONFIG['logger_name'])
        self.logger.setLevel(LOG_CONFIG['level'])
        self.logger.propagate = False

        # 创建控制台处理器，写到stderr
        console_handler = logging.StreamHandler(sys.stderr)
        console_handler.setLevel(LOG_CONFIG['level'])

        # 创建文件处理器
        file_handler = RotatingFileHandler(
            log_file,
            maxBytes=LOG_CONFIG['max_bytes'],
            backupCount=LOG_CONFIG['backup_count'],
            encoding='utf-8'
        )
        file_handler.setLevel(LOG_CONFIG['level'])

        # 设置日志格式
        formatter = logging.Formatter(
            '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
        )
        console_handler.setFormatter(formatter)
        file_handler.setFormatter(formatter)

        # 添加处理器到logger
        self.logger.addHandler(console_handler)
        self.logger.addHandler(file_handler)

    def get_logger(self):
        return self.logger


def set_level(level: str) -> None:
    """调整全局logger及其处理器的级别（命令行 --verbose 使用）"""
    logger.setLevel(level)
    for handler in logger.handlers:
        handler.setLevel(level)


# 创建全局logger实例
logger = Logger().get_logger()
