"""
Nerve Forge
Construção e verificação de partições com nervo prescrito (árvores e ciclos)
"""

__version__ = "1.0.0"
__author__ = "Nerve Forge Developers"
__description__ = "Partições de Tverberg com nervo prescrito em aritmética racional exata"
