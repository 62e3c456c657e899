# If you want to avoid weird side effects, do not import dev settings here.
#
# It's better to explicitly specify settings file by setting the
# `DJANGO_SETTINGS_MODULE` environment variable or passing the --settings
# argument into your manage commands, when possible.
