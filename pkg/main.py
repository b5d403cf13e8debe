import sys

from app.algebra_workbench.tools.workbench_cli import run_cli
from app.utils.logger import logger


def main():
    logger.debug("启动有限代数结构插值工作台...")
    code = run_cli(sys.argv[1:])
    logger.debug(f"程序结束运行，退出码 {code}")
    sys.exit(code)


if __name__ == "__main__":
    main()
