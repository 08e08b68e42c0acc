"""Unit tests: application dtos"""
