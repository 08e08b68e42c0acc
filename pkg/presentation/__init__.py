"""
Presentation Layer - Command-line interface

Esta capa contiene:
- CLI: comandos, esquemas de configuración y cableado de dependencias
- Middleware: conversión de errores a códigos de salida

Depende de: application/, infrastructure/
"""
