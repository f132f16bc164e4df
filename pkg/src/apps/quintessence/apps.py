from django.apps import AppConfig


class QuintessenceConfig(AppConfig):
    name = 'apps.quintessence'
    label = 'quintessence'
    verbose_name = 'Quintessence Dynamics'
