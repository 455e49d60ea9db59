"""BotRf: self-hosted radio link planning engine.

Terrain profiles from SRTM elevation tiles, Fresnel-zone clearance,
free-space / knife-edge / Longley-Rice path loss, link budgets, text
reports and SVG charts, served through a command gateway (REPL, HTTP
API, optional Telegram adapter).
"""

__version__ = "0.1.0"
