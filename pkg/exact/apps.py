from django.apps import AppConfig


class ExactConfig(AppConfig):
    name = 'exact'
