from django.apps import AppConfig


class PolysConfig(AppConfig):
    name = 'polys'
