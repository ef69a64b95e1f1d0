"""
Django settings for the breadthlab project.

The project hosts the algebra apps, the campaign runner and its management
commands. There is no web front end; the database only stores recorded
campaign runs.
"""
import os
from pathlib import Path

from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

# Only Django internals use it; nothing here is served
SECRET_KEY = os.environ.get('SECRET_KEY', 'breadthlab-local')

DEBUG = os.environ.get('DEBUG') == '1'

ALLOWED_HOSTS = [h for h in os.environ.get('ALLOWED_HOSTS', '').split(',') if h]

# Application definition

INSTALLED_APPS = [
    'django.contrib.contenttypes',
    'rest_framework',
    'fields',
    'linalg',
    'lie',
    'bivectors',
    'camina',
    'normalform',
    'groupcorr',
    'campaigns',
]


# Database
# Use PostgreSQL if POSTGRES_HOST is set (Docker), otherwise use SQLite (local runs)
if os.environ.get('POSTGRES_HOST'):
    DATABASES = {
        'default': {
            'ENGINE': 'django.db.backends.postgresql',
            'NAME': os.environ.get('POSTGRES_DB', 'breadthlab_db'),
            'USER': os.environ.get('POSTGRES_USER', 'breadthlab_user'),
            'PASSWORD': os.environ.get('POSTGRES_PASSWORD', 'breadthlab_password'),
            'HOST': os.environ.get('POSTGRES_HOST', 'localhost'),
            'PORT': os.environ.get('POSTGRES_PORT', '5432'),
        }
    }
else:
    DATABASES = {
        'default': {
            'ENGINE': 'django.db.backends.sqlite3',
            'NAME': BASE_DIR / 'db.sqlite3',
        }
    }

REST_FRAMEWORK = {
    'DEFAULT_AUTHENTICATION_CLASSES': [],
    'DEFAULT_PERMISSION_CLASSES': [],
    'UNAUTHENTICATED_USER': None,
}

# Computation defaults (each one can be overridden per command)
BREADTHLAB_JOBS = int(os.environ.get('BREADTHLAB_JOBS', 1))
BREADTHLAB_COSET_BUDGET = int(os.environ.get('BREADTHLAB_COSET_BUDGET', 3 ** 10))
BREADTHLAB_SAMPLE_SIZE = int(os.environ.get('BREADTHLAB_SAMPLE_SIZE', 10_000))
BREADTHLAB_SEED = int(os.environ.get('BREADTHLAB_SEED', 0))
BREADTHLAB_SEARCH_BUDGET = int(os.environ.get('BREADTHLAB_SEARCH_BUDGET', 2_000_000))
BREADTHLAB_WITNESS_LIMIT = int(os.environ.get('BREADTHLAB_WITNESS_LIMIT', 20))
BREADTHLAB_LOG_LEVEL = os.environ.get('BREADTHLAB_LOG_LEVEL', 'INFO')

# Redis configuration (supports Docker and local runs)
REDIS_HOST = os.environ.get('REDIS_HOST', '127.0.0.1')
REDIS_PORT = int(os.environ.get('REDIS_PORT', 6379))

CELERY_BROKER_URL = os.environ.get('CELERY_BROKER_URL', f'redis://{REDIS_HOST}:{REDIS_PORT}/0')
CELERY_RESULT_BACKEND = os.environ.get('CELERY_RESULT_BACKEND', f'redis://{REDIS_HOST}:{REDIS_PORT}/0')

# Without a broker in the environment, shards run in-process
CELERY_TASK_ALWAYS_EAGER = not os.environ.get('CELERY_BROKER_URL')
CELERY_TASK_EAGER_PROPAGATES = True
CELERY_TASK_SERIALIZER = 'json'
CELERY_RESULT_SERIALIZER = 'json'
CELERY_ACCEPT_CONTENT = ['json']

# Celery logging configuration
CELERY_WORKER_HIJACK_ROOT_LOGGER = False  # Don't hijack root logger, use Django's logging config
CELERY_WORKER_LOG_FORMAT = '[%(levelname)s/%(processName)s] %(asctime)s %(name)s %(message)s'
CELERY_WORKER_TASK_LOG_FORMAT = '[%(levelname)s/%(processName)s] %(asctime)s [%(task_name)s(%(task_id)s)] %(message)s'

# Internationalization

LANGUAGE_CODE = 'en-us'

TIME_ZONE = 'UTC'

CELERY_TIMEZONE = TIME_ZONE

USE_I18N = False

USE_TZ = True

# Default primary key field type

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'

# Logging configuration
# Create logs directory if it doesn't exist
LOGS_DIR = BASE_DIR / 'logs'
LOGS_DIR.mkdir(exist_ok=True)

LOG_LEVEL = BREADTHLAB_LOG_LEVEL


def _rotating(name):
    return {
        'class': 'logging.handlers.RotatingFileHandler',
        'filename': str(LOGS_DIR / name),
        'maxBytes': 10 * 1024 * 1024,  # 10MB
        'backupCount': 5,
        'formatter': 'verbose',
    }


def _app_logger(*handlers):
    return {
        'handlers': ['console', *handlers],
        'level': LOG_LEVEL,
        'propagate': False,
    }


LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': '[{levelname}] {asctime} {name} {message}',
            'style': '{',
            'datefmt': '%Y-%m-%d %H:%M:%S',
        },
        'simple': {
            'format': '[{levelname}] {message}',
            'style': '{',
        },
    },
    'handlers': {
        # stdout carries the JSON output of the commands
        'console': {
            'class': 'logging.StreamHandler',
            'stream': 'ext://sys.stderr',
            'formatter': 'verbose',
        },
        'campaigns_file': _rotating('campaigns.log'),
        'celery_file': _rotating('celery.log'),
        'algebra_file': _rotating('algebra.log'),
    },
    'root': {
        'handlers': ['console'],
        'level': 'WARNING',
    },
    'loggers': {
        'django': {
            'handlers': ['console'],
            'level': 'WARNING',
            'propagate': False,
        },
        'celery': _app_logger('celery_file'),
        'campaigns': _app_logger('campaigns_file'),
        'fields': _app_logger('algebra_file'),
        'linalg': _app_logger('algebra_file'),
        'lie': _app_logger('algebra_file'),
        'bivectors': _app_logger('algebra_file'),
        'camina': _app_logger('algebra_file'),
        'normalform': _app_logger('algebra_file'),
        'groupcorr': _app_logger('algebra_file'),
    },
}
