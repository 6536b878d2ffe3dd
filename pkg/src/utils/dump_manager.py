"""
Dump Manager Module
----------------
This module provides JSON save and load for reports, potentials and
triangulations written by the command-line tool.
"""
import logging
import json
import os

from ..potential import PotentialFunction
from ..triangulation import Triangulation

# Configure logging
logger = logging.getLogger(__name__)


def save_json(data, path):
    """
    Write a dictionary as JSON.
    
    Args:
        data (dict): Serializable data
        path (str): Output file
    
    Returns:
        bool: True on success
    """
    try:
        with open(path, 'w') as f:
            json.dump(data, f, indent=2, sort_keys=True)
            f.write("\n")
        logger.debug(f"Saved {path}")
        return True
    except Exception as e:
        logger.error(f"Error saving {path}: {str(e)}")
        return False


def load_json(path):
    """Read a JSON file; None if it is missing or unreadable."""
    if not os.path.exists(path):
        logger.debug(f"File {path} does not exist")
        return None
    
    try:
        with open(path, 'r') as f:
            return json.load(f)
    except Exception as e:
        logger.error(f"Error loading {path}: {str(e)}")
        return None


def load_potentials(path):
    """
    Read a potential dump.
    
    Returns:
        dict: Name ('V', 'W' or a single potential) -> PotentialFunction, or None
    """
    data = load_json(path)
    if data is None:
        return None
    try:
        if 'dilog_terms' in data:
            return {'potential': PotentialFunction.from_dict(data)}
        return {key: PotentialFunction.from_dict(data[key]) for key in ('V', 'W') if key in data}
    except Exception as e:
        logger.error(f"Error loading potentials from {path}: {str(e)}")
        return None


def load_triangulations(path):
    """Read a triangulation dump into {'thurston': ..., 'yokota': ...}, or None."""
    data = load_json(path)
    if data is None:
        return None
    try:
        return {key: Triangulation.from_dict(value) for key, value in data.items()}
    except Exception as e:
        logger.error(f"Error loading triangulations from {path}: {str(e)}")
        return None
