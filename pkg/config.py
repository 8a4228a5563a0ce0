from os import environ

# Logging / error reporting
LOG_LEVEL = environ.get('QWALK_LOG_LEVEL', 'INFO').upper()
TESTING = environ.get('QWALK_TESTING', 'False').lower() in ('true', '1', 't')

# SENTRY
# If you set the sentry dsn locally, make sure you use the local-dev or some
# other local environment, so we can separate local errors from production
SENTRY_DSN = environ.get('QWALK_SENTRY_DSN', '')
SENTRY_ENV = environ.get('QWALK_SENTRY_ENV', 'local-dev')

# REDIS / RQ
REDIS_HOST = environ.get('QWALK_REDIS_HOST', 'localhost')
REDIS_PORT = int(environ.get('QWALK_REDIS_PORT', '6379'))
RQ_QUEUE = environ.get('QWALK_RQ_QUEUE', 'qwalk')
JOB_TIMEOUT = int(environ.get('QWALK_JOB_TIMEOUT', '600'))
JOB_POLL_INTERVAL = float(environ.get('QWALK_JOB_POLL_INTERVAL', '1'))
JOB_WAIT_TIMEOUT = float(environ.get('QWALK_JOB_WAIT_TIMEOUT', '3600'))

# Walk defaults (operating point of the inhomogeneous walk)
DEFAULT_THETA = environ.get('QWALK_DEFAULT_THETA', 'pi/2')
DEFAULT_PHI = environ.get('QWALK_DEFAULT_PHI', 'pi/4')
DEFAULT_STEPS = int(environ.get('QWALK_DEFAULT_STEPS', '11'))
SWEEP_STEPS = int(environ.get('QWALK_SWEEP_STEPS', '9'))
SWEEP_GRID_SIZE = int(environ.get('QWALK_SWEEP_GRID_SIZE', '101'))

# Measurement simulation
DEFAULT_N0 = float(environ.get('QWALK_DEFAULT_N0', '1e6'))
DEFAULT_LOSS_DB = float(environ.get('QWALK_DEFAULT_LOSS_DB', '0'))
DEFAULT_SEED = int(environ.get('QWALK_DEFAULT_SEED', '0'))
DEFAULT_SEEDS = int(environ.get('QWALK_DEFAULT_SEEDS', '100'))

# Power-law fitting
FIT_T_MIN = int(environ.get('QWALK_FIT_T_MIN', '10'))
FIT_T_MAX = int(environ.get('QWALK_FIT_T_MAX', '1000'))
VARIANCE_FIT_T_MIN = int(environ.get('QWALK_VARIANCE_FIT_T_MIN', '100'))

# Verification suite
VERIFY_INSTANCES = int(environ.get('QWALK_VERIFY_INSTANCES', '200'))
