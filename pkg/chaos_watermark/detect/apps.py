from django.apps import AppConfig


class DetectConfig(AppConfig):
    name = "chaos_watermark.detect"
    label = "detect"
