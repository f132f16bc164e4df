from django.utils.module_loading import import_string

SUBCOMMAND_MODULES = [
    'apps.core.subcommands',  # constants
    'apps.vacuum.subcommands',  # lambda, hh
    'apps.wormhole.subcommands',  # wormhole, theorem1
    'apps.scale.subcommands',  # causal-scan, roots
    'apps.info.subcommands',  # lloyd, entropy
    'apps.burst.subcommands',  # burst-table
    'apps.fields.subcommands',  # axion, rs-potential
    'apps.quintessence.subcommands',  # quintessence, bifurcation
    'apps.wdw.subcommands',  # wdw
]


def subcommands():
    """Every registered `cosmo` subcommand, in dispatch-table order."""
    registered = []
    for module in SUBCOMMAND_MODULES:
        registered.extend(import_string(f'{module}.subcommands'))
    return registered
