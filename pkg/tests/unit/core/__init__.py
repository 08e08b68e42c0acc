"""Unit tests: core"""
