import os
from pathlib import Path
from dotenv import load_dotenv

load_dotenv()

BASE_DIR = Path(__file__).resolve().parent.parent
DATA_DIR = Path(os.getenv("ICX_DATA_DIR", BASE_DIR / "data"))

TABLE_PATH = os.getenv("ICX_TABLE")  # prebuilt table file, optional
DEFAULT_LIMIT = int(os.getenv("ICX_LIMIT", "10000"))
DEFAULT_FORMAT = os.getenv("ICX_FORMAT", "json")
DEFAULT_THREADS = int(os.getenv("ICX_THREADS", str(os.cpu_count() or 1)))
LOG_LEVEL = os.getenv("ICX_LOG_LEVEL", "WARNING")

# Table + smallest-prime-factor sieve must fit in this many bytes
MAX_TABLE_BYTES = int(os.getenv("ICX_MAX_TABLE_BYTES", str(2 * 1024 ** 3)))
# Bases above this need --huge
HUGE_BASE_THRESHOLD = int(os.getenv("ICX_HUGE_BASE", "100000"))

# Table file format
TABLE_MAGIC = b"ICX1"
TABLE_VERSION = 1
HEADER_SIZE = 16
ABSOLUTE_LIMIT = 2 ** 85  # 3*log2(n) < 256 below this

# Numerics
PRUNE_EPSILON = 1e-9
BOUNDARY_GUARD = 1e-6
DEFECT_DPS = 40  # mpmath digits for single and near-boundary defects
SETTLE_RESOLUTION = 1e-20  # a DEFECT_DPS defect closer than this to a boundary is not binned
SIGMA = 0.48

# Synthesizer defaults
DEFAULT_SYNTH_BASE = 24
DEFAULT_K_RANGE = (1, 64)

OUTPUT_FORMATS = ("json", "csv", "text")
