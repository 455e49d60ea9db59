"""Error types shared across the engine.

Pure math helpers raise plain ValueError for domain violations; the
classes here cover artifact-level failures that the gateway turns into
user-actionable messages.
"""


class BotrfError(Exception):
    """Base class for engine errors with a user-presentable message."""


class MissingTileError(BotrfError):
    """A required DEM tile file is not present under the tile directory."""

    def __init__(self, tile_name: str, path: str):
        super().__init__(
            f"missing DEM tile {tile_name}: expected file {path}"
        )
        self.tile_name = tile_name
        self.path = path


class MalformedTileError(BotrfError):
    """A .hgt file has a byte length matching no known SRTM grid size."""


class VoidDataError(BotrfError):
    """All DEM samples around the queried point carry the void sentinel."""


class PathTooShortError(BotrfError):
    """Link endpoints are too close to build a sampled terrain profile."""


class UnknownSiteError(BotrfError):
    """A command referenced a site name the owner has not stored."""

    def __init__(self, name: str):
        super().__init__(f"unknown site: {name} (use `list` to see stored sites)")
        self.name = name


class UnsupportedFrequencyError(BotrfError):
    """Frequency outside the 20 MHz .. 20 GHz band the models support."""
