from django.apps import AppConfig


class WatermarkConfig(AppConfig):
    name = "chaos_watermark.watermark"
    label = "watermark"
