"""
Conservative Bandit Benchmark
Safe-exploration bandit algorithms, an independent constraint auditor and an experiment harness
"""

__version__ = "1.0.0"
