from __future__ import absolute_import, division, print_function, unicode_literals

import logging
import os
import sys
import threading
import traceback
import queue

import tqdm
import multiprocess


ROOT_LOGGER = "wlspy"


class MyFormatter(logging.Formatter):
    """
    Level dependent formatter. Info messages are printed bare, everything
    else carries the level name and, for debugging and errors, the origin.
    """
    formats = {logging.DEBUG: "%(levelname)s - %(name)s - %(funcName)s - %(lineno)d - %(message)s",
               logging.INFO: "%(message)s",
               logging.WARNING: "%(levelname)s - %(message)s",
               logging.ERROR: "%(levelname)s - %(module)s - %(lineno)d - %(message)s",
               logging.CRITICAL: "%(levelname)s - %(name)s - %(funcName)s - %(lineno)d - %(message)s"}

    def __init__(self, fmt="%(levelno)s: %(msg)s"):
        super(MyFormatter, self).__init__(fmt)

        self.formatters = {}
        for level in self.formats:
            self.formatters[level] = logging.Formatter(self.formats[level])


    def format(self, record):
        formatter = self.formatters.get(record.levelno, self.formatters[logging.WARNING])
        return formatter.format(record)



class TqdmLoggingHandler(logging.StreamHandler):
    """
    Stream handler that writes through ``tqdm.write``, so log messages do
    not break running progress bars. Messages go to the handler stream,
    standard error by default, leaving standard output to the tables.
    """
    def emit(self, record):
        try:
            tqdm.tqdm.write(self.format(record), file=self.stream)
        except (KeyboardInterrupt, SystemExit):
            raise
        except Exception:
            self.handleError(record)



class MultiprocessLoggingHandler(logging.Handler):
    """
    File handler that can receive records from worker processes.

    Records are put on a managed queue and written to `filename` by a
    daemon thread in the parent process.

    Parameters
    ----------
    filename : str
        Name of the log file.
    mode : str, optional
        File mode. Default is "w".
    """
    def __init__(self, filename, mode="w"):
        logging.Handler.__init__(self)

        self.handler = logging.FileHandler(filename, mode)
        self.queue = multiprocess.Manager().Queue(-1)
        self.is_closed = False

        self.thread = threading.Thread(target=self.receive)
        self.thread.daemon = True
        self.thread.start()


    @property
    def filename(self):
        return self.handler.baseFilename


    def setFormatter(self, fmt):
        logging.Handler.setFormatter(self, fmt)
        self.handler.setFormatter(fmt)


    def receive(self):
        while not (self.is_closed and self.queue.empty()):
            try:
                record = self.queue.get()
                self.handler.emit(record)
            except (KeyboardInterrupt, SystemExit):
                raise
            except EOFError:
                break
            except queue.Empty:
                pass
            except Exception:
                traceback.print_exc(file=sys.stderr)


    def _format_record(self, record):
        # Records crossing process boundaries must be picklable.
        if record.args:
            record.msg = record.msg % record.args
            record.args = None
        if record.exc_info:
            self.format(record)
            record.exc_info = None

        return record


    def emit(self, record):
        try:
            self.queue.put_nowait(self._format_record(record))
        except (KeyboardInterrupt, SystemExit):
            raise
        except Exception:
            self.handleError(record)


    def close(self):
        if not self.is_closed:
            self.is_closed = True

            self.thread.join(5.0)
            self.handler.close()
            logging.Handler.close(self)



def has_handlers(logger):
    """
    Check if `logger` or any of its parents has handlers attached.

    The search stops at the first logger with ``propagate`` set to False.

    Parameters
    ----------
    logger : Logger object
        The logger to start the search from.

    Returns
    -------
    bool
        True if a handler was found.
    """
    current_logger = logger
    while current_logger:
        if current_logger.handlers:
            return True
        if not current_logger.propagate:
            break
        current_logger = current_logger.parent

    return False


def logger_name(class_instance):
    """
    Logger name for `class_instance`, placed below the wlspy root logger.

    Parameters
    ----------
    class_instance : instance
        Class instance used to get the logger name.

    Returns
    -------
    name : str
        ``class_instance.__module__ + "." + class_instance.__class__.__name__``,
        prefixed with "wlspy." if the module is not part of wlspy.
    """
    name = class_instance.__module__ + "." + class_instance.__class__.__name__

    if not name.startswith(ROOT_LOGGER + "."):
        name = ROOT_LOGGER + "." + name

    return name


def get_logger(class_instance):
    """
    Get the logger belonging to `class_instance`.

    Parameters
    ----------
    class_instance : instance
        Class instance used to get the logger name.

    Returns
    -------
    logger : Logger object
        The logger object.
    """
    return logging.getLogger(logger_name(class_instance))


def setup_module_logger(class_instance, level="info"):
    """
    Set the level of the logger belonging to `class_instance` and make sure
    the wlspy root logger prints to screen.

    Parameters
    ----------
    class_instance : instance
        Class instance used to set the logger name.
    level : {"info", "debug", "warning", "error", "critical", None}, optional
        Threshold for the logging level. If None, nothing is set up.
        Default is "info".
    """
    if level is None:
        return

    setup_logger(logger_name(class_instance), level=level)
    add_screen_handler()


def setup_logger(name, level="info"):
    """
    Set the level of the logger with `name`.

    Parameters
    ----------
    name : str
        Name of the logger.
    level : {"info", "debug", "warning", "error", "critical", None}, optional
        Threshold for the logging level. If None, nothing is set up.
        Default is "info".

    Raises
    ------
    ValueError
        If `level` is not a known logging level.
    """
    if level is None:
        return

    numeric_level = getattr(logging, level.upper(), None)
    if not isinstance(numeric_level, int):
        raise ValueError("Invalid log level: {}".format(level))

    logging.getLogger(name).setLevel(numeric_level)


def add_screen_handler(name=ROOT_LOGGER):
    """
    Add a TqdmLoggingHandler to the logger with `name`, unless one exists.

    Parameters
    ----------
    name : str, optional
        Name of the logger. Default is "wlspy".
    """
    logger = logging.getLogger(name)

    for handler in logger.handlers:
        if isinstance(handler, TqdmLoggingHandler):
            return

    console = TqdmLoggingHandler()
    console.setFormatter(MyFormatter())
    logger.addHandler(console)


def add_file_handler(name=ROOT_LOGGER, filename="wlspy.log"):
    """
    Log to `filename` from the logger with `name`.

    An existing file handler for another file is replaced.

    Parameters
    ----------
    name : str, optional
        Name of the logger. Default is "wlspy".
    filename : str, None
        Name of the log file. If None, nothing is done.
        Default is "wlspy.log".
    """
    if filename is None:
        return

    logger = logging.getLogger(name)

    for handler in logger.handlers:
        if isinstance(handler, MultiprocessLoggingHandler):
            if handler.filename == os.path.abspath(filename):
                return

            logger.removeHandler(handler)
            handler.close()
            break

    file_handler = MultiprocessLoggingHandler(filename=filename, mode="w")
    file_handler.setFormatter(MyFormatter())
    logger.addHandler(file_handler)
