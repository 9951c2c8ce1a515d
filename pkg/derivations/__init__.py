"""
Explicit bases for logarithmic derivation modules of braid multiarrangements
and of coned Catalan/Shi arrangements of type A, with exact certification.
"""

import logging

__version__ = '1.0.0'

SCHEMA = 'catalog-derivations/1'

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'


def configure_logging(level: str = 'WARNING') -> None:
    """Configure root logging once, on stderr, with the service-wide format"""
    logging.basicConfig(
        level=level,
        format=LOG_FORMAT
    )
    logging.getLogger().setLevel(level)
