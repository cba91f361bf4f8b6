# -*- coding: utf-8 -*-
"""
Verification suites of the laboratory

This module declares the named verification suites, their descriptions and the
parameters each one accepts, as consumed by the command-line front end and the
verification page of the web front end.
"""


SUITES = [
    {
        "name": "chain",
        "title": "Cadena de desigualdades",
        "description": "Cotas inferiores de Δ(ρ^γ) sobre el disco explícito z ↦ (z, u(Re z)),"
        + " sistema polar de g = f^{1−α} y equivalencia con el sistema real.",
        "parameters": {"alpha": 0.5, "b": 0.01, "gamma": None},
    },
    {
        "name": "nss",
        "title": "No existen soluciones pequeñas",
        "description": "u(0) = 0 o sup u > M para soluciones no negativas de Δu ≥ B u^ε.",
        "parameters": {
            "family": "example22",
            "B": 1.0,
            "epsilon": 0.5,
            "c1": 0.2,
            "c2": 0.5,
            "n": None,
            "points": None,
        },
    },
    {
        "name": "maxprinciple",
        "title": "Principio del máximo",
        "description": "El máximo de u se alcanza en la capa frontera del retículo.",
        "parameters": {"B": 1.0, "epsilon": 0.0},
    },
    {
        "name": "ode",
        "title": "Desigualdad diferencial ordinaria",
        "description": "Positividad y sup u > M para u u'' ≥ B|u|^{1+ε} + C(u')², su inmersión"
        + " como campo en dimensión uno y búsqueda aleatoria de contraejemplos.",
        "parameters": {
            "B": None,
            "C": None,
            "epsilon": None,
            "u0": None,
            "du0": 0.0,
            "mode": "equality",
            "trials": 20,
        },
    },
    {
        "name": "kobayashi",
        "title": "Experimento de Kobayashi–Royden",
        "description": "Un disco de radio r por (0, b) tangente a (1, 0) no cabe en D_2 × D_S."
        + " Las iteraciones que no convergen se repiten con relajación 0.5 y 0.25.",
        "parameters": {"alpha": 0.5, "b": 0.01, "r": 1.9, "relaxation": 1.0, "max_iter": 500},
    },
    {
        "name": "inverse",
        "title": "Inversa cuantitativa",
        "description": "Inversa de Z₁ en el disco unidad cerrado con certificados de inyectividad.",
        "parameters": {"r": 1.9, "targets": 100, "coefficients": None},
    },
    {
        "name": "dbar",
        "title": "Operador ∂̄",
        "description": "Convergencia de la transformada de Cauchy y barrido sup|f| > S_α.",
        "parameters": {"levels": (64, 128, 256), "relaxation": 1.0, "max_iter": 500},
    },
]

SUITE_NAMES = [suite["name"] for suite in SUITES]
SUITES_BY_NAME = {suite["name"]: suite for suite in SUITES}


def suite_parameters(name: str) -> set:
    """Parameter keys accepted by a suite (the union of all suites for `all`)."""
    if name == "all":
        return {key for suite in SUITES for key in suite["parameters"]}
    return set(SUITES_BY_NAME[name]["parameters"])
