"""Unit tests: application"""
