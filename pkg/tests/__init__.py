"""
Hyperpack tests package
"""
