"""Unit tests: presentation middleware"""
