# QNA Toolkit - Quantitative Narrative Analysis of English poetry
__version__ = "1.0.0"
