from django.apps import AppConfig


class VerificationConfig(AppConfig):
    name = "chaos_watermark.verification"
    label = "verification"
