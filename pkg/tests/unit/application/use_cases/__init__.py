"""Unit tests: application use_cases"""
