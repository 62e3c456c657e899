from django.apps import AppConfig


class CLIConfig(AppConfig):
    name = "chaos_watermark.cli"
    label = "cli"
