"""
Tipos de domínio e schemas
"""
