from dotenv import load_dotenv
import logging
import os
import sys

load_dotenv()

DEFAULT_LOG_FORMAT = '%(asctime)s %(levelname)s %(name)s: %(message)s'

log_level = str(os.environ.get('LOG_LEVEL', 'INFO')).strip().upper()
log_format = str(os.environ.get('LOG_FORMAT', DEFAULT_LOG_FORMAT))
if not isinstance(logging.getLevelName(log_level), int):
    raise ValueError(f"LOG_LEVEL={log_level!r} is not a logging level")

# stdout carries the solver reports
logging.basicConfig(format=log_format, level=log_level, stream=sys.stderr)

logger = logging.getLogger(__name__)
logger.debug(f"Logging configured: level {log_level}, format {log_format!r}")
