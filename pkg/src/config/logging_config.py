import logging
import logging.config
from src.core.settings import settings
from src.config.structured_formatter import StructuredFormatter


def configure_logging():
    formatter_name = "structured" if settings.LOG_STRUCTURED else "default"
    logging_config = {
        'version': 1,
        'disable_existing_loggers': False,
        'formatters': {
            'structured': {
                '()': StructuredFormatter,
                'format': '[%(asctime)s] %(levelname)s in %(module)s: %(message)s'
            },
            'default': {
                'format': '[%(asctime)s] %(levelname)s in %(module)s: %(message)s'
            },
        },
        'handlers': {
            # stdout 은 JSON 응답 전용이므로 로그는 stderr 로 보낸다
            'console': {
                'class': 'logging.StreamHandler',
                'formatter': formatter_name,
                'stream': 'ext://sys.stderr',
                'level': settings.LOG_LEVEL
            },
        },
        'loggers': {
            'src': {
                'handlers': ['console'],
                'level': settings.LOG_LEVEL,
                'propagate': False
            }
        }
    }
    logging.config.dictConfig(logging_config)
