"""Utility modules for ratchet_junction."""

from ratchet_junction.utils.logging_control import LoggingControl
from ratchet_junction.utils.output import (
    format_number,
    sidecar_path,
    write_csv,
    write_json_table,
    write_sidecar,
)

__all__ = [
    "LoggingControl",
    "format_number",
    "sidecar_path",
    "write_csv",
    "write_json_table",
    "write_sidecar",
]
