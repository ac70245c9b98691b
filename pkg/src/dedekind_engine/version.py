"""Version information for dedekind-engine."""

from importlib.metadata import PackageNotFoundError, version

# Fallback when running from a source checkout without installed metadata
__version__ = "0.1.0"


def get_version() -> str:
    """Installed distribution version, or the source fallback."""
    try:
        return version("dedekind-engine")
    except PackageNotFoundError:
        return __version__
