from celery import shared_task
import logging

from .verification import run_chunk

# Configure logger
logger = logging.getLogger(__name__)


@shared_task
def run_suite_chunk(suite, lo, hi):
    """
    Run one verification suite over [lo, hi].
    Args:
        suite: key into verification.SUITES
        lo, hi: inclusive integer range
    Returns the chunk result as a JSON-serialisable dict.
    """
    try:
        result = run_chunk(suite, lo, hi)
    except Exception as e:
        logger.error(f"Suite {suite} failed on [{lo}, {hi}]: {str(e)}", exc_info=True)
        raise
    if result.failures:
        logger.warning(f"Suite {suite} on [{lo}, {hi}]: {result.failures} failures")
    return result.to_dict()
