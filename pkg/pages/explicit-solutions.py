# -*- coding: utf-8 -*-
"""
Interactive ∂̄ Laboratory Web Application

This file implements the explicit solutions page: plots of the closed-form
families that vanish on an interval, of the radial comparison function and of
the real profile of the explicit J-holomorphic disk.
"""

import matplotlib.pyplot as plt
import numpy as np
import pandas as pd
import seaborn as sns
import streamlit as st


try:
    from src.explicit_solutions import (
        example22_family,
        example25_family,
        example44_profile,
        radial_comparison,
    )
    from src.params_constants import (
        InequalityParams,
        ParameterRegimeError,
        comparison_bound_M,
        salpha,
    )
except ImportError:
    from ..src.explicit_solutions import (
        example22_family,
        example25_family,
        example44_profile,
        radial_comparison,
    )
    from ..src.params_constants import (
        InequalityParams,
        ParameterRegimeError,
        comparison_bound_M,
        salpha,
    )


def main():
    """Main function to run the explicit solutions page of the laboratory."""

    set_streamlit_page_config()
    set_seaborn_style()

    show_title_and_description()
    st.write("---")
    show_vanishing_families()
    st.write("---")
    show_radial_comparison()
    st.write("---")
    show_explicit_disk_profile()


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
    """Display the title and description of the explicit solutions page."""

    st.title("Soluciones explícitas")
    st.write(
        "Las ecuaciones u'' = B|u|^ε y u' = B|u|^α admiten soluciones que se anulan"
        + " exactamente en un intervalo [c₁, c₂]: la continuación única falla, y por"
        + " eso las cotas inferiores sobre sup u son posibles."
    )


def show_vanishing_families():
    """Plot both families that vanish on [c₁, c₂]."""

    st.subheader("Familias que se anulan en un intervalo")

    left, right = st.columns(2)
    B = left.number_input("B", min_value=0.1, value=1.0, step=0.1)
    exponent = right.slider("Exponente ε / α", min_value=0.05, max_value=0.95, value=0.5, step=0.05)
    c1, c2 = st.slider("Intervalo [c₁, c₂]", min_value=-1.0, max_value=1.0, value=(-0.2, 0.3), step=0.05)

    x = np.linspace(-1.0, 1.0, 801)
    try:
        second_order = example22_family(B, exponent, c1, c2)
        first_order = example25_family(B, exponent, B * c1, B * c2)
    except ParameterRegimeError as error:
        st.error(f"Parámetros fuera de régimen: {error.constraint}")
        return

    frame = pd.concat(
        [
            pd.DataFrame({"x": x, "u": second_order(x), "familia": "u'' = B|u|^ε"}),
            pd.DataFrame({"x": x, "u": first_order(x), "familia": "u' = B|u|^α"}),
        ]
    )

    fig, ax = plt.subplots(figsize=(8, 6))
    sns.lineplot(data=frame, x="x", y="u", hue="familia", palette="pastel", linewidth=2, ax=ax)
    ax.axvspan(c1, c2, color="grey", alpha=0.15)
    ax.set_xlabel("x")
    ax.set_ylabel("u(x)")

    plt.tight_layout()
    st.pyplot(fig)

    residual = np.max(np.abs(second_order.ode_residual(x[(x < c1) | (x > c2)])))
    st.write(f"Residuo máximo de u'' − B|u|^ε fuera de [c₁, c₂]: `{residual:.3e}`")


def show_radial_comparison():
    """Plot the radial comparison function v = M|x|^{2/(1−ε)} for several dimensions."""

    st.subheader("Función de comparación radial")

    epsilon = st.slider("ε", min_value=0.0, max_value=0.9, value=0.0, step=0.05)
    r = np.linspace(0.0, 1.0, 201)

    fig, ax = plt.subplots(figsize=(8, 6))
    palette = sns.color_palette("pastel", n_colors=3)
    for color, n in zip(palette, (1, 2, 3)):
        p = InequalityParams(epsilon=epsilon, n=n)
        v = radial_comparison(p)
        ax.plot(r, v.value(r[None, :]), color=color, linewidth=2, label=f"n = {n}, M = {comparison_bound_M(p):.4g}")
    ax.set_xlabel("|x|")
    ax.set_ylabel("v")
    ax.legend(loc="upper left")

    plt.tight_layout()
    st.pyplot(fig)


def show_explicit_disk_profile():
    """Plot the real profile u(x) of the disk z ↦ (z, u(Re z)) against S_α."""

    st.subheader("Perfil del disco explícito")

    left, right = st.columns(2)
    alpha = left.slider("α", min_value=0.05, max_value=0.95, value=0.5, step=0.05)
    b = right.number_input("b = u(0)", min_value=0.001, max_value=0.5, value=0.01, step=0.005, format="%.3f")

    x = np.linspace(-1.0, 1.0, 801)
    profile = example44_profile(b, alpha)

    fig, ax = plt.subplots(figsize=(8, 6))
    ax.plot(x, profile(x), color=sns.color_palette("pastel")[0], linewidth=2, label="u(x)")
    ax.axhline(salpha(alpha), color="black", linestyle="--", label="S_α")
    ax.set_xlabel("x = Re z")
    ax.set_ylabel("u")
    ax.legend(loc="upper left")

    plt.tight_layout()
    st.pyplot(fig)


if __name__ == "__main__":
    main()
