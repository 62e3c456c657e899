import os

import django

os.environ.setdefault("DJANGO_SETTINGS_MODULE", "chaos_watermark.settings.test")
django.setup()
