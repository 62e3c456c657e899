from .base import *  # noqa

# Debugging to be enabled locally only
DEBUG = True

# This key to be used locally only.
SECRET_KEY = "foo"

# Import settings from local.py file if it exists. Please use it to keep
# settings that are not meant to be checked into Git and never check it in.
try:
    from .local import *  # noqa
except ImportError:
    pass
