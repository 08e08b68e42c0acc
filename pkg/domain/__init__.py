"""
Domain Layer - Business Logic Core

Esta capa contiene:
- Entities: Modelos del dominio (ModelSpec, TrialDataset, PosteriorDraws)
- Services: Álgebra gaussiana y métricas de validación del sustituto
- Interfaces: Contratos abstractos para muestreadores, almacenamiento y gráficos

Regla: Esta capa NO depende de infrastructure ni presentation
"""
