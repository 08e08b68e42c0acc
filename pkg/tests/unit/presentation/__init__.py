"""Unit tests: presentation"""
