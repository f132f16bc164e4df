from django.apps import AppConfig


class WdwAppConfig(AppConfig):
    name = 'apps.wdw'
    label = 'wdw'
    verbose_name = 'Wheeler-DeWitt Solver'
