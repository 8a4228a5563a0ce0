import logging
import time

from redis import Redis
from rq import Queue, get_current_job
from rq.job import JobStatus
from tenacity import RetryError, retry, retry_if_exception_type, stop_after_delay, wait_fixed

from qwalk import config
from qwalk.analysis import sweep_column
from qwalk.coin import iqw_coin_map
from qwalk.errors import JobFailed
from qwalk.measurement import measure_step, tomography_series
from qwalk.util import default_repr
from qwalk.walk import balanced_initial_state, evolve


class JobPending(Exception):
    pass


def set_job_status(job, status):
    if job is None:
        return
    job.meta['status'] = status
    job.save_meta()


def sweep_column_task(t, theta_grid, phi):
    job = get_current_job()
    set_job_status(job, 'evolving')
    try:
        column = sweep_column(t, theta_grid, phi)
    except Exception:
        logging.error('[sweep t=%s phi=%s] column failed', t, phi)
        set_job_status(job, 'failed: evolve')
        raise
    set_job_status(job, 'complete')
    return column


def measure_step_task(theta, phi, t, n0, loss, seeds):
    job = get_current_job()
    set_job_status(job, 'evolving')
    state = evolve(balanced_initial_state(theta), iqw_coin_map(phi), t)
    set_job_status(job, 'measuring')
    try:
        stats = measure_step(state, n0, loss, seeds)
    except Exception:
        logging.error('[tomography t=%s] measurement failed', t)
        set_job_status(job, 'failed: measure')
        raise
    set_job_status(job, 'complete')
    return stats


def connect_queue():
    redis_conn = Redis(config['REDIS_HOST'], config['REDIS_PORT'])
    return Queue(config['RQ_QUEUE'], connection=redis_conn, default_timeout=config['JOB_TIMEOUT'])


def _job_result(job):
    status = job.get_status(refresh=True)
    if status == JobStatus.FINISHED:
        return job.return_value()
    if status in (JobStatus.FAILED, JobStatus.STOPPED, JobStatus.CANCELED):
        raise JobFailed(f'job {job.id} ended with status {status}')
    raise JobPending(job.id)


def wait_for_job(job, poll_interval=None, timeout=None):
    poll_interval = config['JOB_POLL_INTERVAL'] if poll_interval is None else poll_interval
    timeout = config['JOB_WAIT_TIMEOUT'] if timeout is None else timeout

    @retry(
        retry=retry_if_exception_type(JobPending),
        wait=wait_fixed(poll_interval),
        stop=stop_after_delay(timeout),
    )
    def _poll():
        return _job_result(job)

    try:
        return _poll()
    except RetryError as e:
        raise JobFailed(f'job {job.id} did not finish within {timeout}s') from e


@default_repr
class JobRunner:
    """
    Runs independent calls of one task function either in-process or on the rq
    queue. Results come back in call order either way.
    """

    def __init__(self, use_queue=False, queue=None):
        self.use_queue = use_queue
        self.queue = queue

    def map(self, func, calls, timeout=None):
        calls = list(calls)
        if not self.use_queue:
            return [func(*args) for args in calls]
        if self.queue is None:
            self.queue = connect_queue()
        jobs = [self.queue.enqueue(func, *args) for args in calls]
        logging.info('enqueued %s %s jobs on %s', len(jobs), func.__name__, self.queue.name)
        # one deadline shared by the whole batch
        timeout = config['JOB_WAIT_TIMEOUT'] if timeout is None else timeout
        deadline = time.monotonic() + timeout
        return [
            wait_for_job(job, timeout=max(deadline - time.monotonic(), 0.0)) for job in jobs
        ]

    def sweep_columns(self, t, theta_grid, phi_grid):
        return self.map(sweep_column_task, [(t, theta_grid, phi) for phi in phi_grid])

    def measure_steps(self, theta, phi, t_max, n0, loss, seeds):
        seeds = list(seeds)
        if not self.use_queue:
            return tomography_series(theta, phi, t_max, n0, loss, seeds)
        calls = [(theta, phi, t, n0, loss, seeds) for t in range(1, t_max + 1)]
        return self.map(measure_step_task, calls)
