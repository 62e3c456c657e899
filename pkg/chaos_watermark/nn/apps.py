from django.apps import AppConfig


class NNConfig(AppConfig):
    name = "chaos_watermark.nn"
    label = "nn"
