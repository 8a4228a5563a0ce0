import os
import sys
from pathlib import Path

os.environ.setdefault('QWALK_TESTING', 'true')
os.environ.setdefault('QWALK_REDIS_HOST', 'localhost')
os.environ.setdefault('QWALK_REDIS_PORT', '6379')
os.environ.setdefault('QWALK_LOG_LEVEL', 'WARNING')

repo_root = Path(__file__).resolve().parents[1]
if str(repo_root) not in sys.path:
    sys.path.insert(0, str(repo_root))
os.environ.setdefault('QWALK_ROOT_DIR', str(repo_root))
