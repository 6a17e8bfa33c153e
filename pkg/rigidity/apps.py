from django.apps import AppConfig


class RigidityConfig(AppConfig):
    name = 'rigidity'
