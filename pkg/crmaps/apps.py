from django.apps import AppConfig


class CrmapsConfig(AppConfig):
    name = 'crmaps'
