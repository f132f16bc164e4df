from django.apps import AppConfig


class WormholeConfig(AppConfig):
    name = 'apps.wormhole'
    label = 'wormhole'
    verbose_name = 'Wormhole Bridge'
