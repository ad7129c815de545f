#!/usr/bin/python3
"""
reflex version
"""
__version__ = '0.3.0'
