"""
figlab - Exact computations with finitely generated FI_G-modules.
"""

__version__ = "0.1.0"
__author__ = "figlab Team"
__description__ = "Exact engine for FI_G-modules: functors, homology and local cohomology"
