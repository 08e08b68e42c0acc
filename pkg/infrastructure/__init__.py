"""
Infrastructure Layer - External Implementations

Esta capa contiene implementaciones concretas de las interfaces del dominio:
- Sampling: Algoritmos MCMC (imputación y datos observados), griddy Gibbs, diagnósticos
- Simulation: Escenarios, generadores, ajuste oráculo y réplicas
- Storage: Archivos CSV (pandas) y gráficos SVG (matplotlib)
- Config: Configuración y settings

Depende de: domain/ (interfaces)
No depende de: application/, presentation/
"""
