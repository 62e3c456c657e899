from django.apps import AppConfig


class UtilsConfig(AppConfig):
    name = "chaos_watermark.utils"
    label = "utils"
