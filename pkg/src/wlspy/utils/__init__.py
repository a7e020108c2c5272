from __future__ import absolute_import, division, print_function, unicode_literals

"""
Logging helpers shared by the wlspy drivers.
"""

__all__ = ["MyFormatter", "TqdmLoggingHandler", "MultiprocessLoggingHandler",
           "setup_module_logger", "setup_logger", "get_logger",
           "has_handlers", "add_file_handler", "add_screen_handler"]

from .logger import setup_module_logger, setup_logger, get_logger
from .logger import has_handlers, add_file_handler, add_screen_handler
from .logger import MyFormatter, TqdmLoggingHandler, MultiprocessLoggingHandler
