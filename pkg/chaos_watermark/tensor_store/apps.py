from django.apps import AppConfig


class TensorStoreConfig(AppConfig):
    name = "chaos_watermark.tensor_store"
    label = "tensor_store"
