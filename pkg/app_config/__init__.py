from .logs import logging
from . import settings
