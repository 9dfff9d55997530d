"""
Unit tests for Hyperpack
"""
