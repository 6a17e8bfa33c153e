import os
from pathlib import Path

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

SECRET_KEY = os.environ.get('DJANGO_SECRET_KEY', 'rigidity-toolkit-local-key')  # nothing is signed; Django still requires one

DEBUG = os.environ.get('DJANGO_DEBUG', '') == '1'

# Application definition
INSTALLED_APPS = [
    # Third-party apps
    'rest_framework',

    # Local apps
    'utils',
    'exact',
    'polys',
    'crmaps',
    'rigidity',
    'identity',
    'cli',
]

# Every computation is pure; nothing is persisted.
DATABASES = {}

# Internationalization
LANGUAGE_CODE = 'en-us'
TIME_ZONE = 'UTC'
USE_I18N = False
USE_TZ = True

# DRF Configuration (serializers, JSON parser and renderer only)
REST_FRAMEWORK = {
    'DEFAULT_RENDERER_CLASSES': [
        'rest_framework.renderers.JSONRenderer',
    ],
    'DEFAULT_PARSER_CLASSES': [
        'rest_framework.parsers.JSONParser',
    ],
    'UNAUTHENTICATED_USER': None,
}

# Toolkit tunables
RIGIDITY_TOOLKIT = {
    'DEFAULT_TRIALS': 3,
    'DEFAULT_SEED': 0,
    'SAMPLE_HEIGHT': 7,  # bound on numerators/denominators of sampled directions
    'MAX_SAMPLE_ATTEMPTS': 64,
    'APPROX_DIGITS': 6,
    'CAMPAIGN_WORKERS': 4,
}

# Logging: diagnostics go to stderr, reports go to stdout
LOG_LEVEL = os.environ.get('RIGIDITY_TOOLKIT_LOG_LEVEL', 'WARNING').upper()

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': '{levelname} {name}: {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'stream': 'ext://sys.stderr',
            'formatter': 'verbose',
        },
    },
    'root': {
        'handlers': ['console'],
        'level': LOG_LEVEL,
    },
    'loggers': {
        'django': {
            'handlers': ['console'],
            'level': 'WARNING',
            'propagate': False,
        },
    },
}
