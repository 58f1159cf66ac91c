import os
from dotenv import load_dotenv

load_dotenv()

RANDOM_SEED = int(os.getenv("MWLINKS_RANDOM_SEED", "20260417"))
RANDOM_HOPF_CONFIGS = int(os.getenv("MWLINKS_RANDOM_HOPF_CONFIGS", "200"))
RANDOM_CHECK_B = int(os.getenv("MWLINKS_RANDOM_CHECK_B", "200"))
CUSP_THRESHOLD = float(os.getenv("MWLINKS_CUSP_THRESHOLD", "0.05"))
CLOSURE_TOLERANCE = float(os.getenv("MWLINKS_CLOSURE_TOLERANCE", "1e-6"))
SYMMETRY_TOLERANCE = float(os.getenv("MWLINKS_SYMMETRY_TOLERANCE", "1e-6"))
DEGENERATE_PLANE_THRESHOLD = float(os.getenv("MWLINKS_DEGENERATE_PLANE_THRESHOLD", "1e-9"))
DEFAULT_SAMPLES = int(os.getenv("MWLINKS_DEFAULT_SAMPLES", "2048"))
MAX_CANONICAL_BRUTE_FORCE = int(os.getenv("MWLINKS_MAX_CANONICAL_BRUTE_FORCE", "40320"))
HTTP_HOST = os.getenv("MWLINKS_HTTP_HOST", "127.0.0.1")
HTTP_PORT = int(os.getenv("MWLINKS_HTTP_PORT", "5000"))
TANGENT_CACHE_SIZE = int(os.getenv("MWLINKS_TANGENT_CACHE_SIZE", "64"))
