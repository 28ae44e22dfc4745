"""
Utils package - numeric policy, logging and run configuration
"""
from .config import Config, config
from .logger import setup_logger

__all__ = ["Config", "config", "setup_logger"]
