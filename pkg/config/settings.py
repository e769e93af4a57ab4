from pathlib import Path

PROJECT_ROOT = Path(__file__).parent.parent
DATA_DIR = PROJECT_ROOT / "data"
RESULTS_DIR = PROJECT_ROOT / "results"
BANKS_DIR = RESULTS_DIR / "banks"
LOGS_DIR = PROJECT_ROOT / "logs"

# 稠密态向量预算
MAX_HAAR_QUBITS = 14
MAX_DENSE_QUBITS = 12
MAX_ITERATIVE_QUBITS = 16
MIN_CHAIN_QUBITS = 3

NORM_TOLERANCE = 1e-10
IMAG_TOLERANCE = 1e-10
RESIDUAL_TOLERANCE = 1e-8
LANCZOS_TOLERANCE = 1e-10
LANCZOS_MAX_ITERATIONS = 20000
PHASE_CUTOFF = 1e-8
EVIDENCE_FLOOR = 1e-300
GAIN_CLAMP = 1e-12
PROBABILITY_TOLERANCE = 1e-9

# 决策循环默认值
DEFAULT_P_THRESHOLD = 0.99
DEFAULT_MAX_SHOTS = 300
DEFAULT_PROB_FLOOR = 0.0
DEFAULT_MASTER_SEED = 20240601
DEFAULT_WORKERS = 1

# 基态分类
TRAIN_STATES_PER_CLASS = 75
GRID_POINTS_PER_FAMILY = 100

LOG_LEVEL = "INFO"
LOG_TO_FILE = True

# 报告输出
REPORT_SCHEMA_VERSION = 1
REPORT_CSV_ENCODING = 'utf-8'
REPORT_CSV_LINE_TERMINATOR = '\n'
SVG_HASH_SALT = "qdt"
