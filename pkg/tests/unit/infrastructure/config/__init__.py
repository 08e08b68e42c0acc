"""Unit tests: configuration"""
