"""Core engines: numerics, series, paths, iterated integrals, zeta, continuation, monodromy"""
