import argparse
import importlib
import pkgutil
from collections.abc import Callable
from types import ModuleType

from loguru import logger

type Register = Callable[[argparse._SubParsersAction], None]


def discover_commands(package_name: str = "cli.commands") -> list[tuple[str, Register]]:
    """
    Discover every command module in a package.

    A command module exposes ``register(subparsers)``, which adds its sub-parser
    and binds the handler with ``set_defaults(handler=...)``.

    Args:
        package_name: The package to scan for command modules.

    Returns:
        (module name, register function) pairs sorted by module name.
    """
    commands: list[tuple[str, Register]] = []

    package = importlib.import_module(package_name)
    package_path = getattr(package, "__path__", None)

    if not package_path:
        logger.warning(f"Cannot scan {package_name} for commands as it's not a package")
        return commands

    for _, module_name, is_pkg in sorted(pkgutil.iter_modules(package_path), key=lambda m: m.name):
        if is_pkg or module_name.startswith("_"):
            continue
        full_module_name = f"{package_name}.{module_name}"
        module: ModuleType = importlib.import_module(full_module_name)
        register = getattr(module, "register", None)
        if callable(register):
            commands.append((module_name, register))
            logger.debug(f"Discovered command module {full_module_name}")
        else:
            logger.warning(f"{full_module_name} has no register() function")

    return commands


def register_commands(
    subparsers: argparse._SubParsersAction, package_name: str = "cli.commands"
) -> list[str]:
    """
    Register all discovered commands on an argparse sub-parser collection.

    Args:
        subparsers: Result of ``ArgumentParser.add_subparsers()``.
        package_name: The package to scan for command modules.

    Returns:
        Names of the registered command modules.
    """
    names = []
    for name, register in discover_commands(package_name):
        register(subparsers)
        names.append(name)
    return names
