"""
Test suite for the conservative bandit benchmark.
"""
