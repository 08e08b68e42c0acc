"""Unit tests: infrastructure simulation"""
