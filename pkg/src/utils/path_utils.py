"""
Path Utilities Module
------------------
This module provides utility functions for locating the bundled knot fixtures.
"""
import os
import logging
from pathlib import Path

from ..config import FIXTURES_DIR

# Configure logging
logger = logging.getLogger(__name__)

def get_fixture_path(fixture_name):
    """
    Get the absolute path to a bundled fixture.
    
    Args:
        fixture_name (str): File name inside the fixtures directory, e.g. '4_1.pd'
    
    Returns:
        str: Absolute path, or None if the fixture does not exist
    """
    fixture_path = os.path.join(FIXTURES_DIR, fixture_name)
    
    if not os.path.exists(fixture_path):
        logger.warning(f"Fixture not found: {fixture_path}")
        return None
    
    return str(Path(fixture_path))

def list_fixtures(suffix=".pd"):
    """
    List the bundled knots.
    
    Returns:
        list: Fixture names without the suffix, sorted
    """
    if not os.path.isdir(FIXTURES_DIR):
        logger.warning(f"Fixtures directory not found: {FIXTURES_DIR}")
        return []
    return sorted(name[:-len(suffix)] for name in os.listdir(FIXTURES_DIR) if name.endswith(suffix))
