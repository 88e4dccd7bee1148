# Configuration for the ABC marching solver
import os
from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()

# Output locations
OUTPUT_DIR = os.getenv('MARCH_OUTPUT_DIR', 'data/runs')
RUN_LOG_PATH = os.getenv('MARCH_RUN_LOG', 'data/run_logs.jsonl')
RUN_LOG_ENABLED = os.getenv('MARCH_RUN_LOG_ENABLED', 'true').lower() == 'true'

# Logging
LOG_LEVEL = os.getenv('MARCH_LOG_LEVEL', 'INFO').upper()
RUN_LOG_TIMEZONE = os.getenv('MARCH_TIMEZONE', 'UTC')

# Run defaults
SNAPSHOT_EVERY = int(os.getenv('MARCH_SNAPSHOT_EVERY', 0))
TABLE_WORKERS = int(os.getenv('MARCH_TABLE_WORKERS', 2))

# HTTP API (for CORS)
FRONTEND_URL = os.getenv('MARCH_FRONTEND_URL', 'http://localhost:5173')
API_PORT = int(os.getenv('MARCH_API_PORT', 5000))

# Linear algebra
PIVOT_FLOOR = 1e-300

# Output floor for log10|u| matrices
LOG_FLOOR = 1e-300

# Hopf-Lax phase search
HOPF_LAX_N_COARSE = 4001
HOPF_LAX_TOL = 1e-10
HOPF_LAX_SPAN = 5.0  # search interval half-padding, in units of the y-extent

# Reference (enlarged-domain) runs
REFERENCE_EDGE_TOL = 1e-8
