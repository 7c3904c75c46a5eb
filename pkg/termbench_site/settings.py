"""Django settings for the termbench project.

Values come from the environment (or a ``.env`` file) through django-environ.
"""

from pathlib import Path

import environ

BASE_DIR = Path(__file__).resolve().parent.parent

env = environ.Env(
    DEBUG=(bool, False),
    TERMBENCH_DETERMINISTIC_IDS=(bool, False),
    TERMBENCH_DEPTH_LIMIT=(int, 2**20),
    TERMBENCH_DEFAULT_BUDGET=(int, 10**7),
    TERMBENCH_BUCKET_COUNT=(int, 4096),
    TERMBENCH_PURITY_MODE=(str, "accelerated"),
    TERMBENCH_SCALING_THRESHOLD=(float, 2.5),
    TERMBENCH_LOG_LEVEL=(str, "WARNING"),
)
if (BASE_DIR / ".env").exists():
    environ.Env.read_env(BASE_DIR / ".env")

SECRET_KEY = env("SECRET_KEY", default="termbench-insecure-local-key")
DEBUG = env("DEBUG")
ALLOWED_HOSTS = env.list("ALLOWED_HOSTS", default=["localhost", "127.0.0.1"])

INSTALLED_APPS = [
    "django.contrib.admin",
    "django.contrib.auth",
    "django.contrib.contenttypes",
    "django.contrib.sessions",
    "django.contrib.messages",
    "django.contrib.staticfiles",
    "terms",
    "caching",
    "evaluators",
    "bench",
]

MIDDLEWARE = [
    "django.middleware.security.SecurityMiddleware",
    "django.contrib.sessions.middleware.SessionMiddleware",
    "django.middleware.common.CommonMiddleware",
    "django.middleware.csrf.CsrfViewMiddleware",
    "django.contrib.auth.middleware.AuthenticationMiddleware",
    "django.contrib.messages.middleware.MessageMiddleware",
    "django.middleware.clickjacking.XFrameOptionsMiddleware",
]

ROOT_URLCONF = "termbench_site.urls"

TEMPLATES = [
    {
        "BACKEND": "django.template.backends.django.DjangoTemplates",
        "DIRS": [],
        "APP_DIRS": True,
        "OPTIONS": {
            "context_processors": [
                "django.template.context_processors.request",
                "django.contrib.auth.context_processors.auth",
                "django.contrib.messages.context_processors.messages",
            ],
        },
    },
]

WSGI_APPLICATION = "termbench_site.wsgi.application"

DATABASES = {
    "default": env.db("DATABASE_URL", default=f"sqlite:///{BASE_DIR / 'termbench.sqlite3'}"),
}

DEFAULT_AUTO_FIELD = "django.db.models.BigAutoField"

LANGUAGE_CODE = "en-gb"
TIME_ZONE = "UTC"
USE_I18N = True
USE_TZ = True

STATIC_URL = "static/"

# Term toolkit knobs.
TERMBENCH_DETERMINISTIC_IDS = env("TERMBENCH_DETERMINISTIC_IDS")
TERMBENCH_DEPTH_LIMIT = env("TERMBENCH_DEPTH_LIMIT")
TERMBENCH_DEFAULT_BUDGET = env("TERMBENCH_DEFAULT_BUDGET")
TERMBENCH_BUCKET_COUNT = env("TERMBENCH_BUCKET_COUNT")
TERMBENCH_PURITY_MODE = env("TERMBENCH_PURITY_MODE")
TERMBENCH_SCALING_THRESHOLD = env("TERMBENCH_SCALING_THRESHOLD")

LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "plain": {"format": "%(levelname)s %(name)s: %(message)s"},
    },
    "handlers": {
        "stderr": {
            "class": "logging.StreamHandler",
            "formatter": "plain",
        },
    },
    "loggers": {
        name: {"handlers": ["stderr"], "level": env("TERMBENCH_LOG_LEVEL"), "propagate": False}
        for name in ("terms", "caching", "evaluators", "bench")
    },
}
