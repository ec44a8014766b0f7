"""
Utilitários de aritmética racional exata
"""
