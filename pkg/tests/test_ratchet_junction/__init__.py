"""Tests for ratchet_junction."""
