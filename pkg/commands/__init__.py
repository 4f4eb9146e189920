from commands.cli import cli

__all__ = ["cli"]
