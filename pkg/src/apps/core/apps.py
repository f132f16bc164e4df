from django.apps import AppConfig
from django.core.exceptions import ImproperlyConfigured


class CoreConfig(AppConfig):
    name = 'apps.core'
    label = 'core'
    verbose_name = 'Core Application'

    def ready(self):
        from cosmotoy.routers import subcommands

        names = [command.name for command in subcommands()]
        duplicates = sorted({name for name in names if names.count(name) > 1})
        if duplicates:
            raise ImproperlyConfigured(f"Duplicate cosmo subcommands: {duplicates}")
