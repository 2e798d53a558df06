from .commands import CommandResult, analyze_collection, load_collection, load_system
from .main import build_parser, main

__all__ = ["CommandResult", "analyze_collection", "build_parser", "load_collection", "load_system", "main"]
