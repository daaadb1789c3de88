"""Exact K-theoretic shadows of perverse schobers on disks and surfaces."""
import logging
import os

__version__ = '0.3.0'

_HANDLER_NAME = 'schober-stream'


def configure(config_name=None):
    """Select a configuration class and set up package logging"""
    from schober.config.config import config

    if config_name is None:
        config_name = os.environ.get('SCHOBER_CONFIG', 'default')
    if config_name not in config:
        raise KeyError(f"Unknown configuration '{config_name}'; expected one of {sorted(config)}")
    settings = config[config_name]

    logger = logging.getLogger('schober')
    logger.setLevel(settings.LOG_LEVEL)
    if not any(getattr(h, 'name', None) == _HANDLER_NAME for h in logger.handlers):
        # stderr only: stdout carries the --json report
        handler = logging.StreamHandler()
        handler.name = _HANDLER_NAME
        handler.setFormatter(logging.Formatter('%(levelname)s %(name)s: %(message)s'))
        logger.addHandler(handler)

    settings.init_app(settings)
    return settings
