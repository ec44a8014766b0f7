"""
Núcleo: configurações e exceções
"""
