from django.apps import AppConfig


class InfoConfig(AppConfig):
    name = 'apps.info'
    label = 'info'
    verbose_name = 'Computation and Entropy Bounds'
