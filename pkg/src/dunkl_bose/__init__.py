from . import logger_utils
from .config import settings
from .logger_utils import get_logger

__version__ = "0.1.0"

logger_utils.configure_logging(settings.LOG_LEVEL)

__all__ = ["get_logger", "logger_utils", "settings", "__version__"]
