"""Integration tests package (full Monte Carlo runs)"""
