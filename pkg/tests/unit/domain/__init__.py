"""Unit tests: domain"""
