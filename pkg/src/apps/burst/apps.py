from django.apps import AppConfig


class BurstAppConfig(AppConfig):
    name = 'apps.burst'
    label = 'burst'
    verbose_name = 'Relic Graviton Burst'
