"""
Tests package for backend-aplicaciones
"""
