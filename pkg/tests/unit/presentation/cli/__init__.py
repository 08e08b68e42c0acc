"""Unit tests: presentation cli"""
