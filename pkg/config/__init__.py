"""Configuration modules"""

from .settings import *
