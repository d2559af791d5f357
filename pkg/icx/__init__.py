"""
Integer complexity workbench: exact tables, digit bounds, expression synthesis
and verification of the finite facts behind the lower-bound argument.
"""

__version__ = '0.1.0'
