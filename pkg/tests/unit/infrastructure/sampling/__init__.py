"""Unit tests: infrastructure sampling"""
