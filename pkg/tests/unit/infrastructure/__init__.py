"""Unit tests: infrastructure"""
