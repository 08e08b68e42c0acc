"""Unit tests: infrastructure storage"""
