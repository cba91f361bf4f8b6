# -*- coding: utf-8 -*-
"""
Interactive ∂̄ Laboratory Web Application

This file implements the home page of the laboratory. It introduces the
equation ∂f/∂z̄ = |f|^α, the "no small solutions" bounds that the laboratory
verifies and links to the rest of the pages.
"""


import streamlit as st


try:
    from src.params_constants import (
        PSEUDONORM_LOWER_BOUND,
        PSEUDONORM_UPPER_BOUND_AT_ZERO,
        salpha,
    )
except ImportError:
    from ..src.params_constants import (
        PSEUDONORM_LOWER_BOUND,
        PSEUDONORM_UPPER_BOUND_AT_ZERO,
        salpha,
    )


def main():
    """Main function to run the home page of the laboratory."""

    set_streamlit_page_config()

    show_intro_section()
    st.markdown("---")
    show_how_it_works_section()
    st.markdown("---")
    show_fast_navigation_section()
    st.markdown("---")
    show_key_numbers_section()


def set_streamlit_page_config():
    """Set up the Streamlit page configuration for this page only."""

    st.set_page_config(
        layout="centered",
    )


def show_intro_section():
    """Display the introduction section of the home page."""

    st.title("∂̄ Laboratorio de soluciones pequeñas")
    st.subheader("La ecuación ∂f/∂z̄ = |f|^α no admite soluciones pequeñas")

    st.write(
        "Si f resuelve ∂f/∂z̄ = |f|^α en el disco unidad con 0 < α < 1 y f(0) ≠ 0,"
        + " entonces sup|f| supera una constante S_α que solo depende de α."
        + " Esta falta de soluciones pequeñas hace que la pseudonorma de"
        + " Kobayashi–Royden de una estructura casi compleja Hölder continua no sea"
        + " semicontinua superiormente."
    )
    st.write(
        "Este laboratorio reproduce numéricamente los mecanismos de la demostración:"
        + " resuelve la ecuación, construye las soluciones explícitas y comprueba cada"
        + " desigualdad sobre objetos discretos, informando siempre del margen y de la"
        + " tolerancia."
    )

    if st.button(
        "EMPEZAR A VERIFICAR",
        type="primary",
        use_container_width=True,
    ):
        st.switch_page("./pages/verification.py")


def show_how_it_works_section():
    """Display the 'How it works' section of the home page."""

    st.header("¿Cómo funciona?")

    st.subheader("🧮 1. Constantes")
    st.write("\t- S_α, las cotas M de cada desigualdad, κ_n y los radios de la inversa")

    st.subheader("📈 2. Testigos")
    st.write("\t- Soluciones explícitas, soluciones de Picard y trayectorias de la EDO")

    st.subheader("✅ 3. Verificación")
    st.write("\t- Primero se comprueban las hipótesis y después la conclusión")
    st.write("\t- Un informe sin hipótesis válidas nunca cuenta como aprobado")


def show_fast_navigation_section():
    """Display the fast navigation section of the home page."""

    st.header("Navegación rápida")

    left_column_1, right_column_1 = st.columns(2, border=True)

    with left_column_1:
        st.subheader("🧮 Constantes")
        st.write("Explora S_α y las cotas M en función de los parámetros")
        if st.button(
            "Ver constantes",
            use_container_width=True,
        ):
            st.switch_page("./pages/constants.py")

    with right_column_1:
        st.subheader("📈 Soluciones explícitas")
        st.write("Familias cerradas y función de comparación radial")
        if st.button(
            "Ver soluciones",
            use_container_width=True,
        ):
            st.switch_page("./pages/explicit-solutions.py")

    left_column_2, right_column_2 = st.columns(2, border=True)

    with left_column_2:
        st.subheader("🌀 Resolver ∂̄")
        st.write("Iteración de Picard con la transformada de Cauchy")
        if st.button(
            "Resolver",
            use_container_width=True,
        ):
            st.switch_page("./pages/dbar-solver.py")

    with right_column_2:
        st.subheader("✅ Verificación")
        st.write("Ejecuta las baterías de comprobaciones")
        if st.button(
            "Verificar",
            use_container_width=True,
        ):
            st.switch_page("./pages/verification.py")


def show_key_numbers_section():
    """Display the key numbers of the laboratory."""

    st.header("Cifras clave")

    left, middle, right = st.columns(3)
    left.metric("S_½", f"{salpha(0.5):.6g}")
    middle.metric("Cota inferior (b ≠ 0)", f"{PSEUDONORM_LOWER_BOUND:.4g}")
    right.metric("Cota superior (b = 0)", f"{PSEUDONORM_UPPER_BOUND_AT_ZERO:.4g}")

    st.write(
        "Para b ≠ 0 la pseudonorma de ((0, b), (1, 0)) es al menos 3/(4√2) ≈ 0.53,"
        + " mientras que en b = 0 es a lo sumo ½."
    )


if __name__ == "__main__":
    main()
