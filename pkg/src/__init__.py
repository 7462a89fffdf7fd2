"""
Higman Toolkit
Presentations, coset enumeration and normal forms for Higman-type groups
"""

__version__ = "0.1.0"
__author__ = "Higman Toolkit Team"
