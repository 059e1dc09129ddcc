"""Configuration module for ratchet_junction."""

from ratchet_junction.config.config import Config

__all__ = ["Config"]
