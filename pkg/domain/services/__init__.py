"""Domain services: Gaussian algebra, surrogacy metrics and CEP curves"""
