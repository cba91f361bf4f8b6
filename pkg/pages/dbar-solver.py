# -*- coding: utf-8 -*-
"""
Interactive ∂̄ Laboratory Web Application

This file implements the solver page: it runs the Picard iteration for
∂f/∂z̄ = |f|^α with f(0) = b, and shows |f| on the disk, the convergence trace
and the comparison of sup|f| with S_α.
"""

import matplotlib.pyplot as plt
import numpy as np
import pandas as pd
import seaborn as sns
import streamlit as st


try:
    from src.dbar_solver import PicardConfig, solve_picard
    from src.grid_field import PolarGrid
    from src.params_constants import ParameterRegimeError, salpha
except ImportError:
    from ..src.dbar_solver import PicardConfig, solve_picard
    from ..src.grid_field import PolarGrid
    from ..src.params_constants import ParameterRegimeError, salpha


def main():
    """Main function to run the solver page of the laboratory."""

    set_streamlit_page_config()
    set_seaborn_style()
    init_session_state_variables()

    show_title_and_description()
    show_solver_form()

    if st.session_state.solution is not None:
        st.write("---")
        show_solution_summary()
        st.write("---")
        show_magnitude_heatmap()
        st.write("---")
        show_convergence_trace()


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


def init_session_state_variables():
    """Initialize session state variables for the solver page."""

    # Last computed solution, kept across reruns
    if "solution" not in st.session_state:
        st.session_state.solution = None


def show_title_and_description():
    """Display the title and description of the solver page."""

    st.title("Resolver ∂f/∂z̄ = |f|^α 🌀")
    st.write(
        "La solución se obtiene iterando f ← b + T(|f|^α) − T(|f|^α)(0), donde T es la"
        + " transformada de Cauchy del disco unidad, inversa por la derecha de ∂̄."
    )


def show_solver_form():
    """Display the solver form and run the solver on submission."""

    with st.form("solver_form"):
        left, right = st.columns(2)
        alpha = left.slider("α", min_value=0.05, max_value=0.95, value=0.5, step=0.05)
        b_real = right.number_input("Re b", value=0.01, step=0.005, format="%.4f")
        b_imag = right.number_input("Im b", value=0.0, step=0.005, format="%.4f")
        n_r = left.select_slider("Anillos n_r", options=[16, 32, 48, 64], value=32)
        n_t = left.select_slider("Ángulos n_t", options=[16, 32, 64, 128], value=64)
        max_iter = right.number_input("Iteraciones máximas", min_value=1, value=200, step=50)

        submitted = st.form_submit_button(
            "RESOLVER",
            use_container_width=True,
            type="primary",
        )

    if not submitted:
        return

    try:
        config = PicardConfig(alpha, complex(b_real, b_imag), int(max_iter), grid=PolarGrid(1.0, n_r, n_t))
    except ParameterRegimeError as error:
        st.error(f"Parámetros fuera de régimen: {error.constraint}")
        return

    with st.status("Iterando...", expanded=False) as status:
        st.session_state.solution = solve_picard(config)
        state = "complete" if st.session_state.solution.converged else "error"
        status.update(label=f"Iteración terminada ({st.session_state.solution.reason})", state=state)


def show_solution_summary():
    """Display the main numbers of the solution and the CSV download."""

    solution = st.session_state.solution
    S = salpha(solution.alpha)

    st.subheader("Resumen")
    left, middle, right = st.columns(3)
    left.metric("sup|f|", f"{solution.sup:.6g}")
    middle.metric("S_α", f"{S:.6g}")
    right.metric("Residuo", f"{solution.residual_sup:.2e}")

    if not solution.converged:
        st.warning("La iteración no ha convergido: el resultado no cuenta como verificación.")
    elif solution.config.b == 0:
        st.info("Con b = 0 la solución es f ≡ 0.")
    elif solution.sup > S:
        st.success("sup|f| > S_α, como predice la cota.")
    else:
        st.error("sup|f| ≤ S_α: contradice la cota.")

    st.download_button(
        "Descargar campo (CSV)",
        data=solution.field.to_frame().to_csv(index=False, float_format="%.12g"),
        file_name="solution_field.csv",
        mime="text/csv",
        use_container_width=True,
    )


def show_magnitude_heatmap():
    """Display |f| over the disk."""

    st.subheader("Módulo de la solución")

    solution = st.session_state.solution
    frame = solution.field.to_frame()

    fig, ax = plt.subplots(figsize=(7, 6))
    contour = ax.tricontourf(frame["x"], frame["y"], frame["abs"], levels=30, cmap="OrRd")
    fig.colorbar(contour, ax=ax, shrink=0.8, label="|f|")
    ax.set_aspect("equal")
    plt.axis("off")

    plt.tight_layout()
    st.pyplot(fig)


def show_convergence_trace():
    """Display the successive change and the residual per iteration."""

    st.subheader("Convergencia")

    trace = pd.DataFrame(st.session_state.solution.trace)
    if trace.empty:
        st.write("Sin iteraciones.")
        return
    trace = trace.melt(id_vars="iteration", value_vars=["sup_change", "residual"])
    trace["value"] = np.maximum(trace["value"], np.finfo(float).tiny)

    fig, ax = plt.subplots(figsize=(8, 6))
    sns.lineplot(data=trace, x="iteration", y="value", hue="variable", palette="pastel", linewidth=2, ax=ax)
    ax.set_yscale("log")
    ax.set_xlabel("Iteración")
    ax.set_ylabel("Norma del sup")
    ax.legend(title="", loc="upper right")

    plt.tight_layout()
    st.pyplot(fig)


if __name__ == "__main__":
    main()
