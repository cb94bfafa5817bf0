"""Tests for the qi4wop package."""
