# Built-in imports
import logging
import os
import sys
from typing import Optional

# External imports
from aws_lambda_powertools import Logger


LOG_LEVEL = os.environ.get("LOG_LEVEL", "INFO")


def custom_logger(
    correlation_id: Optional[str] = None,
) -> Logger:
    """
    Returns a custom <aws_lambda_powertools.Logger> Object.

    Logs go to stderr so that stdout stays clean for CLI output.
    """
    return Logger(
        service="shotlab",
        level=LOG_LEVEL,
        log_uncaught_exceptions=True,
        owner="shotlab",
        correlation_id=correlation_id,
        logger_handler=logging.StreamHandler(sys.stderr),
    )
