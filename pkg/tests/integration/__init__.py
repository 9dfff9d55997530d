"""
Integration tests for the packing pipeline
"""
