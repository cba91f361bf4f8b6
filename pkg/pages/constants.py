# -*- coding: utf-8 -*-
"""
Interactive ∂̄ Laboratory Web Application

This file implements the constants explorer page: the sweep table of derived
constants and the plot of S_α with its two branches.
"""

import matplotlib.pyplot as plt
import numpy as np
import seaborn as sns
import streamlit as st


try:
    from src.params_constants import (
        ParameterRegimeError,
        constants_table,
        eq20_bound,
        gamma_star,
        salpha,
        salpha_branches,
    )
except ImportError:
    from ..src.params_constants import (
        ParameterRegimeError,
        constants_table,
        eq20_bound,
        gamma_star,
        salpha,
        salpha_branches,
    )


def main():
    """Main function to run the constants page of the laboratory."""

    set_streamlit_page_config()
    set_seaborn_style()

    show_title_and_description()
    st.write("---")
    show_constants_table()
    st.write("---")
    show_salpha_plot()


def set_streamlit_page_config():
    """Set up the Streamlit page configuration for this page only."""

    st.set_page_config(
        layout="centered",
    )


def set_seaborn_style():
    """Set the Seaborn style for visualizations."""

    sns.set_theme(
        context="paper",
        style="white",
        font_scale=1.2,
        rc={
            "axes.labelsize": 14,
            "axes.titlesize": 16,
            "xtick.labelsize": 12,
            "ytick.labelsize": 12,
        },
    )


def show_title_and_description():
    """Display the title and description of the constants page."""

    st.title("Constantes derivadas")
    st.write(
        "Cada cota del laboratorio depende solo de los parámetros de la desigualdad:"
        + " el exponente α, la dimensión n y los coeficientes B, C y ε."
    )


def show_constants_table():
    """Display the constants table for the chosen parameters."""

    st.subheader("Tabla de constantes")

    left, middle, right = st.columns(3)
    B = left.number_input("B", min_value=0.01, value=1.0, step=0.1)
    C = middle.number_input("C", min_value=-1.0, max_value=0.99, value=0.0, step=0.1)
    epsilon = right.number_input("ε", min_value=-5.0, max_value=0.99, value=0.0, step=0.1)
    r = st.slider("Radio r del disco candidato", min_value=1.9, max_value=2.0, value=1.9, step=0.01)

    try:
        table = constants_table(B=B, C=C, epsilon=epsilon, r=r)
    except ParameterRegimeError as error:
        st.error(f"Parámetros fuera de régimen: {error.constraint}")
        return

    st.dataframe(table, use_container_width=True, hide_index=True)
    st.download_button(
        "Descargar CSV",
        data=table.to_csv(index=False, float_format="%.12g"),
        file_name="constants.csv",
        mime="text/csv",
        use_container_width=True,
    )


def show_salpha_plot():
    """Display S_α, both of its branches and the bound for a larger exponent γ."""

    st.subheader("S_α en función de α")

    alphas = np.linspace(0.02, 0.98, 193)
    first, second = np.array([salpha_branches(a) for a in alphas]).T
    gamma = st.slider("γ de comparación", min_value=2.0, max_value=10.0, value=4.0, step=0.5)
    larger = [eq20_bound(a, max(gamma, gamma_star(a))) for a in alphas]

    fig, ax = plt.subplots(figsize=(8, 6))
    palette = sns.color_palette("pastel", n_colors=3)
    ax.plot(alphas, [salpha(a) for a in alphas], color="black", linewidth=2, label="S_α")
    ax.plot(alphas, first, color=palette[0], linestyle="--", label="rama γ = 2")
    ax.plot(alphas, second, color=palette[1], linestyle="--", label="rama γ = (2−α)/(2−2α)")
    ax.plot(alphas, larger, color=palette[2], label=f"cota con γ = {gamma:g}")
    ax.axvline(2.0 / 3.0, color="grey", linewidth=0.8)

    ax.set_xlabel("α")
    ax.set_ylabel("Cota")
    ax.set_ylim(0.0, 1.0)
    ax.legend(loc="upper left")

    plt.tight_layout()
    st.pyplot(fig)


if __name__ == "__main__":
    main()
