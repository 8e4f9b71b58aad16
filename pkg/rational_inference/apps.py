from django.apps import AppConfig


class RationalInferenceConfig(AppConfig):
    name = "rational_inference"
