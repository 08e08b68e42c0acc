"""Unit tests: domain entities"""
