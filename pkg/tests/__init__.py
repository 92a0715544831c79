"""Tests for afrelay."""
