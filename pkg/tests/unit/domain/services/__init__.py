"""Unit tests: domain services"""
