import logging
from logging.config import dictConfig


def setup_logging(level: str = "WARNING", log_file: str = ""):
    handlers = {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'default',
            'level': level,
            # stdout carries the JSON records
            'stream': 'ext://sys.stderr',
        },
    }
    if log_file:
        handlers['file'] = {
            'class': 'logging.FileHandler',
            'filename': log_file,
            'formatter': 'default',
            'level': level,
        }

    dictConfig({
        'version': 1,
        'disable_existing_loggers': False,
        'formatters': {
            'default': {
                'format': '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
            },
        },
        'handlers': handlers,
        'loggers': {
            'glasnerkit': {
                'handlers': list(handlers),
                'level': level,
                'propagate': False,
            },
        }
    })
    logging.getLogger('glasnerkit').debug(f"Logging configured at {level}")
