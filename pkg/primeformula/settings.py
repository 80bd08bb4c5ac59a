"""
Django settings for the primeformula project.

The project has no web surface: it is driven entirely through management
commands (see cli/management/commands). Settings are read from the environment
and an optional .env file next to manage.py.
"""

import os
from pathlib import Path
import environ

# Initialize environ
env = environ.Env()

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

# Take environment variables from .env file
environ.Env.read_env(os.path.join(BASE_DIR, ".env"))

# Nothing is signed or served; a fixed development key keeps Django happy.
SECRET_KEY = env("SECRET_KEY", default="primeformula-insecure-development-key")

DEBUG = env.bool("DEBUG", False)

ALLOWED_HOSTS = []

# Application definition

INSTALLED_APPS = [
    "formulas.apps.FormulasConfig",
    "wheel.apps.WheelConfig",
    "oracle.apps.OracleConfig",
    "cli.apps.CliConfig",
]

# All computation is in memory; no app defines models.
DATABASES = {}

LANGUAGE_CODE = "en-us"

TIME_ZONE = "UTC"

USE_I18N = False

USE_TZ = True

# Input caps. PRIMEFORMULA_MAX_X / PRIMEFORMULA_MAX_N replace the per-strategy
# defaults for every strategy when set; the commands' --cap flag wins over both.
PRIMEFORMULA_MAX_X = env.int("PRIMEFORMULA_MAX_X", default=None)
PRIMEFORMULA_MAX_N = env.int("PRIMEFORMULA_MAX_N", default=None)

PRIMEFORMULA = {
    "PI_CAPS": {
        "naive": PRIMEFORMULA_MAX_X or 10**6,
        "sqrt": PRIMEFORMULA_MAX_X or 10**8,
        "recursive": PRIMEFORMULA_MAX_X or 10**8,
        "wheel": PRIMEFORMULA_MAX_X or 10**8,
    },
    "NTH_PRIME_CAPS": {
        "naive": PRIMEFORMULA_MAX_N or 5 * 10**4,
        "sqrt": PRIMEFORMULA_MAX_N or 10**6,
        "recursive": PRIMEFORMULA_MAX_N or 10**6,
        "wheel": PRIMEFORMULA_MAX_N or 10**6,
    },
    "DIVISOR_CAP": 2**32,
    "TOTIENT_CAP": 2**32,
    "SEARCH_BOUND_CAP": 10**7,
    "SIEVE_CAP": 10**8,
    "VERIFY_CHUNKS": env.int("PRIMEFORMULA_VERIFY_CHUNKS", default=4),
}

# Logging
# Project loggers go to stderr through rich so stdout stays machine-readable.
PRIMEFORMULA_LOG_LEVEL = env("PRIMEFORMULA_LOG_LEVEL", default="WARNING")

LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "rich": {"format": "%(name)s: %(message)s", "datefmt": "[%X]"},
    },
    "handlers": {
        "console": {
            "class": "rich.logging.RichHandler",
            "formatter": "rich",
            "console": "ext://primeformula.console.stderr_console",
            "show_path": False,
        },
    },
    "loggers": {
        app: {"handlers": ["console"], "level": PRIMEFORMULA_LOG_LEVEL, "propagate": False}
        for app in ("formulas", "wheel", "oracle", "cli")
    },
}

# Celery
# verify fans range chunks out as a group; eager mode runs them in-process.
CELERY_BROKER_URL = env("CELERY_BROKER_URL", default="memory://")
CELERY_RESULT_BACKEND = env("CELERY_RESULT_BACKEND", default="cache+memory://")
CELERY_TASK_ALWAYS_EAGER = env.bool("CELERY_TASK_ALWAYS_EAGER", default=True)
CELERY_TASK_EAGER_PROPAGATES = True
CELERY_TASK_TRACK_STARTED = True
CELERY_ACCEPT_CONTENT = ["json"]
CELERY_TASK_SERIALIZER = "json"
CELERY_RESULT_SERIALIZER = "json"

CELERY_BROKER_CONNECTION_RETRY = True
CELERY_BROKER_CONNECTION_RETRY_ON_STARTUP = True
CELERY_BROKER_CONNECTION_MAX_RETRIES = 10
