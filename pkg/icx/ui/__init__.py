from .parser import Config, build_parser, resolve_config
from .report import Output, render_output
from .commands import COMMANDS, TableSource

__all__ = [
    "Config",
    "build_parser",
    "resolve_config",
    "Output",
    "render_output",
    "COMMANDS",
    "TableSource",
    ]
