from django.apps import AppConfig


class VacuumConfig(AppConfig):
    name = 'apps.vacuum'
    label = 'vacuum'
    verbose_name = 'Vacuum Energy'
