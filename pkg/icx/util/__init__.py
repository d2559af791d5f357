import time
from functools import wraps

from loguru import logger


def logging(func):
    @wraps(func)
    def wrapper(*args, **kwargs):
        logger.debug(f"Calling function {func.__name__}")
        started = time.perf_counter()
        result = func(*args, **kwargs)
        logger.debug(f"Function {func.__name__} completed in {time.perf_counter() - started:.3f}s")
        return result
    return wrapper
