import os
from pathlib import Path

# 项目根目录
BASE_DIR = Path(__file__).resolve().parent.parent.parent

# 数据目录
DATA_DIR = os.path.join(BASE_DIR, 'data')
STRUCTURES_DIR = os.path.join(DATA_DIR, 'structures')
SUITE_CONFIG_PATH = os.path.join(DATA_DIR, 'suite.yaml')

# 日志配置
LOG_DIR = os.path.join(BASE_DIR, 'logs')

LOG_CONFIG = {
    'logger_name': 'AlgebraWorkbench',
    'level': 'INFO',
    'file_pattern': 'app_%Y%m%d.log',  # 按日期分割
    'max_bytes': 10 * 1024 * 1024,     # 10MB
    'backup_count': 5
}

# 偏序集配置
ORDER_CONFIG = {
    'max_carrier_size': 64,  # 分配律检查按 O(N^3) 运行
}

# 结构生成器配置
GENERATOR_CONFIG = {
    'zmod_max': 64,      # Z_n 的最大 n
    'powerset_max': 6,   # 幂集代数的最大原子数（载体 2^n）
}

# 验收套件默认配置
SUITE_CONFIG = {
    'seed': 42,
    'trials': 100,           # 每个结构每个支撑大小的随机试验次数
    'max_support': 5,        # 支撑大小扫描 1..min(5, |载体|)
    'workers': min(8, (os.cpu_count() or 4)),  # 线程数
    'bridge_trials': 50,     # 布尔环桥接检查的随机支撑数
    'lagrange_trials': 50,   # 拉格朗日基线的随机支撑数
    'lagrange_primes': [2, 3, 5, 7, 11],
}
