"""
Django settings for the cosmotoy project.

cosmotoy is a command-line numerics project: there is no database, no HTTP
surface and no task queue. Django provides the settings layer, logging
configuration, the management-command CLI and the test runner.
"""

import os
import environ

from pathlib import Path

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

# Initialize environment variables
env = environ.Env(
    DEBUG=(bool, True),
    COSMOTOY_SEED=(int, 20240601),
    COSMOTOY_LOG_LEVEL=(str, 'INFO'),
)
env_file = os.path.join(BASE_DIR.parent.parent, ".env")

if os.path.exists(env_file):
    env.read_env(env_file)

# Create logs directory if it doesn't exist
LOGS_DIR = BASE_DIR.parent.parent / 'logs'
LOGS_DIR.mkdir(exist_ok=True)

COSMOTOY_LOG_LEVEL = env('COSMOTOY_LOG_LEVEL')

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': '{levelname} {asctime} {module} {process:d} {thread:d} {message}',
            'style': '{',
        },
        'simple': {
            'format': '{levelname} {asctime} {message}',
            'style': '{',
        },
    },
    'filters': {
        'require_debug_true': {
            '()': 'django.utils.log.RequireDebugTrue',
        },
        'require_debug_false': {
            '()': 'django.utils.log.RequireDebugFalse',
        },
    },
    'handlers': {
        'console': {
            'level': 'INFO',
            'filters': ['require_debug_true'],
            'class': 'logging.StreamHandler',
            'formatter': 'simple'
        },
        'file': {
            'level': 'INFO',
            'class': 'logging.FileHandler',
            'filename': LOGS_DIR / 'cosmotoy.log',
            'formatter': 'verbose',
        },
        'rotating_file': {
            'level': 'DEBUG',
            'class': 'logging.handlers.RotatingFileHandler',
            'filename': LOGS_DIR / 'cosmotoy_rotating.log',
            'maxBytes': 1024*1024*5,  # 5 MB
            'backupCount': 5,
            'formatter': 'verbose',
        },
    },
    'root': {
        'level': 'INFO',
        'handlers': ['console', 'file'],
    },
    'loggers': {
        'django': {
            'handlers': ['console', 'file'],
            'level': 'INFO',
            'propagate': False,
        },
        'apps': {
            'handlers': ['console', 'rotating_file'],
            'level': COSMOTOY_LOG_LEVEL,
            'propagate': False,
        },
    }
}

# Not used by any cosmotoy feature, but Django refuses to start without one.
SECRET_KEY = env('SECRET_KEY', default='cosmotoy-insecure-local-key')

DEBUG = env('DEBUG')

ALLOWED_HOSTS = []

# Application definition

INSTALLED_APPS = [
    'django.contrib.contenttypes',
    'django.contrib.auth',

    'rest_framework',

    'apps.core',
    'apps.vacuum',
    'apps.wormhole',
    'apps.scale',
    'apps.info',
    'apps.burst',
    'apps.fields',
    'apps.quintessence',
    'apps.wdw',
]

MIDDLEWARE = []

DATABASES = {}

LANGUAGE_CODE = 'en-us'
TIME_ZONE = 'UTC'
USE_I18N = False
USE_TZ = True

# Django REST framework is used for config validation and JSON rendering only

REST_FRAMEWORK = {
    'DEFAULT_RENDERER_CLASSES': (
        'rest_framework.renderers.JSONRenderer',
    ),
    'UNAUTHENTICATED_USER': None,
    'COERCE_DECIMAL_TO_STRING': False,
}

# Run configuration
# Path of the JSON run config used when `cosmo --config` is not given.
COSMOTOY_CONFIG = env('COSMOTOY_CONFIG', default=None)

# Seed for the randomized property suites.
COSMOTOY_SEED = env('COSMOTOY_SEED')
