import os
import logging
from pathlib import Path

import sentry_sdk
from flask import Config
from sentry_sdk.integrations.rq import RqIntegration

ROOT_DIR = os.environ.get('QWALK_ROOT_DIR', os.getcwd())
_PACKAGE_ROOT = str(Path(__file__).resolve().parents[1])


def load_config(root_dir=ROOT_DIR):
    for candidate_root in (root_dir, _PACKAGE_ROOT):
        for name in ('config_local.py', 'config.py'):
            if os.path.exists(os.path.join(candidate_root, name)):
                config = Config(candidate_root)
                config.from_pyfile(name)
                return config
    raise RuntimeError(f'No config.py found in {root_dir} or {_PACKAGE_ROOT}')


config = load_config()

logging.basicConfig(
    format='%(asctime)s %(levelname)s %(message)s',
    level=getattr(logging, config.get('LOG_LEVEL', 'INFO'), logging.INFO),
)

# Sentry setup
if config.get('SENTRY_DSN') and not config.get('TESTING', False):
    sentry_sdk.init(
        dsn=config['SENTRY_DSN'],
        integrations=[RqIntegration()],
        environment=config['SENTRY_ENV'],
    )
