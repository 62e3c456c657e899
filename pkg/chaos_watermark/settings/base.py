"""
Django settings for chaos_watermark project.
"""
import os

env = os.environ.copy()

# Build paths inside the project like this: os.path.join(BASE_DIR, ...)

PROJECT_DIR = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
BASE_DIR = os.path.dirname(PROJECT_DIR)


# Switch off DEBUG mode explicitly in the base settings.
# https://docs.djangoproject.com/en/stable/ref/settings/#debug
DEBUG = False


# Nothing here is signed, but Django refuses to start without a key. Set it in
# the environment outside of dev/test.
if "SECRET_KEY" in env:
    SECRET_KEY = env["SECRET_KEY"]


# Application definition

INSTALLED_APPS = [
    "chaos_watermark.chaos",
    "chaos_watermark.tensor_store",
    "chaos_watermark.watermark",
    "chaos_watermark.verification",
    "chaos_watermark.nn",
    "chaos_watermark.detect",
    "chaos_watermark.cli",
    "chaos_watermark.utils",
    "rest_framework",
]


# The toolkit keeps all of its state in files, there is no database.
DATABASES: dict = {}


# Internationalisation
# https://docs.djangoproject.com/en/stable/topics/i18n/

LANGUAGE_CODE = "en-gb"

TIME_ZONE = "UTC"

USE_I18N = False

USE_TZ = True


# Django REST framework is only used for its serializers.
REST_FRAMEWORK = {
    "UNAUTHENTICATED_USER": None,
    "DEFAULT_AUTHENTICATION_CLASSES": [],
    "DEFAULT_PERMISSION_CLASSES": [],
}


# Logging
# This logging is configured to be used with Sentry and console logs. Console
# logs are the only visible output of the management commands besides the
# files they write.
LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "handlers": {
        # Send logs with at least INFO level to the console.
        "console": {
            "level": "DEBUG",
            "class": "logging.StreamHandler",
            "formatter": "verbose",
        },
    },
    "formatters": {
        "verbose": {
            "format": "[%(asctime)s][%(process)d][%(levelname)s][%(name)s] %(message)s"
        }
    },
    "loggers": {
        "chaos_watermark": {
            "handlers": ["console"],
            "level": env.get("CHAOS_WATERMARK_LOG_LEVEL", "INFO"),
            "propagate": False,
        },
    },
}


# Every management command appends one JSON line to this file.
RUN_LOG_PATH = env.get(
    "CHAOS_WATERMARK_RUN_LOG", os.path.join(os.getcwd(), "runs.jsonl")
)


# Sentry configuration.
# Only enabled when the DSN is set, e.g. on shared verification hosts.
if "SENTRY_DSN" in env:
    import sentry_sdk
    from sentry_sdk.integrations.django import DjangoIntegration

    SENTRY_CONFIG = {
        "dsn": env["SENTRY_DSN"],
        "integrations": [DjangoIntegration()],
        # Manifests and weights are secret material, never attach them.
        "send_default_pii": False,
    }

    if "SENTRY_ENVIRONMENT" in env:
        SENTRY_CONFIG["environment"] = env["SENTRY_ENVIRONMENT"]

    sentry_sdk.init(**SENTRY_CONFIG)  # type: ignore
