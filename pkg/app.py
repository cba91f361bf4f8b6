# -*- coding: utf-8 -*-
"""
Interactive ∂̄ Laboratory Web Application

This module implements a Streamlit web application for the numerical study of the equation ∂f/∂z̄ = |f|^α on the unit
disk, of the bounds that forbid its small solutions and of the resulting failure of upper semicontinuity of the
Kobayashi–Royden pseudonorm. The command-line entry point lives in src/cli.py.
"""

import streamlit as st


def main():
    """Main function to run the laboratory web application."""
    # Set the page configuration
    st.set_page_config(
        layout="wide",
        initial_sidebar_state="auto",
    )

    # Set up the Streamlit page configuration
    pg = st.navigation(
        position="top",
        pages=[
            st.Page(
                "./pages/home.py",
                title="Inicio",
                icon="🏠",
                default=True,
            ),
            st.Page(
                "./pages/constants.py",
                title="Constantes",
                icon="🧮",
            ),
            st.Page(
                "./pages/explicit-solutions.py",
                title="Soluciones explícitas",
                icon="📈",
            ),
            st.Page(
                "./pages/dbar-solver.py",
                title="Resolver ∂̄",
                icon="🌀",
                url_path="solver",
            ),
            st.Page(
                "./pages/verification.py",
                title="Verificación",
                icon="✅",
            ),
        ],
    )
    pg.run()


if __name__ == "__main__":
    main()
