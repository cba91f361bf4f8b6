# -*- coding: utf-8 -*-
"""
Interactive ∂̄ Laboratory Web Application

This file implements the verification page: the choice of a verification
suite and its parameters, the execution of the suite and the display of its
reports one by one.
"""

import streamlit as st


try:
    from src.encodings import STATUS_ICONS, STATUS_LABELS, STATUS_PASS
    from src.params_constants import ParameterRegimeError
    from src.reports import summary_frame, to_serializable
    from src.suites import SUITES, SUITES_BY_NAME
    from src.verify_harness import run_suite
except ImportError:
    from ..src.encodings import STATUS_ICONS, STATUS_LABELS, STATUS_PASS
    from ..src.params_constants import ParameterRegimeError
    from ..src.reports import summary_frame, to_serializable
    from ..src.suites import SUITES, SUITES_BY_NAME
    from ..src.verify_harness import run_suite


def main():
    """Define the view of the verification page, including the suite form."""

    set_streamlit_page_config()
    init_session_state_variables()

    show_title_and_description()
    show_verification_form()

    success = check_form_submission()
    if success:
        run_and_show_reports()


def set_streamlit_page_config():
    """Set up the Streamlit page configuration for this page only."""

    st.set_page_config(
        layout="centered",
    )


def init_session_state_variables():
    """Initialize session state variables for the verification page."""

    # Initialize the chosen suite and its parameters
    if "suite_name" not in st.session_state:
        st.session_state.suite_name = SUITES[0]["name"]
    if "suite_parameters" not in st.session_state:
        st.session_state.suite_parameters = {}
    if "seed" not in st.session_state:
        st.session_state.seed = 0

    if "form_submitted" not in st.session_state:
        st.session_state.form_submitted = False

    # Initialize the reports list
    if "reports" not in st.session_state:
        st.session_state.reports = []

    # Set the initial report ID to 0
    if "current_report_id" not in st.session_state:
        st.session_state.current_report_id = 0

    # Set the initial state for navigation buttons
    if "next_report" not in st.session_state:
        st.session_state.next_report = False
    if "previous_report" not in st.session_state:
        st.session_state.previous_report = False


def show_title_and_description():
    """Display the title and description of the verification page."""

    st.title("Verificación ✅")
    st.subheader("*Cada comprobación verifica primero las hipótesis y después la conclusión*")
    st.write(
        "Elige una batería de comprobaciones y sus parámetros. Cada informe indica el"
        + " margen con signo hasta la violación, la tolerancia con la que se juzga y el"
        + " nodo o punto donde se alcanza."
    )
    st.write(
        "Un informe con hipótesis no satisfechas o no concluyente nunca cuenta como"
        + " aprobado."
    )


def show_verification_form():
    """Display the suite selector and the parameters of the chosen suite."""

    st.session_state.suite_name = st.selectbox(
        "Batería",
        options=[suite["name"] for suite in SUITES],
        format_func=lambda name: SUITES_BY_NAME[name]["title"],
    )
    suite = SUITES_BY_NAME[st.session_state.suite_name]
    st.write(suite["description"])

    with st.form("verification_form"):
        st.subheader("Parámetros:")

        parameters = {}
        for key, default in suite["parameters"].items():
            if isinstance(default, bool) or default is None or isinstance(default, (tuple, list)):
                # Optional parameters keep the suite default
                continue
            if isinstance(default, str):
                parameters[key] = st.text_input(key, value=default)
            elif isinstance(default, int):
                parameters[key] = int(st.number_input(key, value=default, step=1))
            else:
                parameters[key] = st.number_input(key, value=float(default), format="%.6g")

        st.session_state.seed = int(st.number_input("Semilla", value=0, step=1))
        st.session_state.suite_parameters = parameters

        st.write("---")
        st.session_state.form_submitted = st.form_submit_button(
            "VERIFICAR",
            use_container_width=True,
            type="primary",
            on_click=lambda: st.session_state.update(
                form_submitted=True,
                next_report=False,
                previous_report=False,
                current_report_id=0,
            ),
        )


def check_form_submission() -> bool:
    """Check if the form has been submitted or a report is being browsed."""

    if not (
        st.session_state.form_submitted
        or st.session_state.next_report
        or st.session_state.previous_report
    ):
        # If the form has not been submitted, do not run anything
        return False
    return True


def run_and_show_reports():
    """Run the chosen suite and display its reports."""

    if not (st.session_state.next_report or st.session_state.previous_report):
        try:
            with st.status("Ejecutando comprobaciones...", expanded=False) as status:
                st.session_state.reports = run_suite(
                    st.session_state.suite_name,
                    st.session_state.suite_parameters,
                    seed=st.session_state.seed,
                )
                status.update(label="Comprobaciones terminadas", state="complete")
        except ParameterRegimeError as error:
            st.error(f"Parámetros fuera de régimen: {error.constraint}")
            st.session_state.reports = []
            return

    reports = st.session_state.reports
    if not reports:
        return

    passed = sum(report.status == STATUS_PASS for report in reports)
    if passed == len(reports):
        st.success(f"Todas las comprobaciones superadas ({passed} de {len(reports)}).")
    else:
        st.warning(f"Superadas {passed} de {len(reports)} comprobaciones.")
    st.dataframe(summary_frame(reports), use_container_width=True, hide_index=True)

    st.write("---")
    show_navigation_section()
    st.write("---")

    # Assert that the current report ID is within the valid range
    if st.session_state.current_report_id < 0 or st.session_state.current_report_id >= len(reports):
        st.error("Informe fuera de rango, vuelve a ejecutar la batería.")
        return

    display_report(reports[st.session_state.current_report_id])


def show_navigation_section():
    """Display navigation buttons for previous and next reports."""

    st.header(
        f"Informe {st.session_state.current_report_id + 1} de "
        f"{len(st.session_state.reports)}"
    )

    left, right = st.columns(2)

    with left:
        st.session_state.previous_report = st.button(
            "Informe anterior",
            use_container_width=True,
            disabled=(st.session_state.current_report_id <= 0),
            on_click=lambda: st.session_state.update(
                current_report_id=st.session_state.current_report_id - 1,
                next_report=False,
                previous_report=True,
            ),
        )

    with right:
        st.session_state.next_report = st.button(
            "Siguiente informe",
            use_container_width=True,
            disabled=(
                st.session_state.current_report_id
                >= (len(st.session_state.reports) - 1)
            ),
            on_click=lambda: st.session_state.update(
                current_report_id=st.session_state.current_report_id + 1,
                next_report=True,
                previous_report=False,
            ),
        )


def display_report(report):
    """Display one verification report."""

    st.title(report.check_id)
    st.subheader(f"{STATUS_ICONS[report.status]} {STATUS_LABELS[report.status]}")

    left, right = st.columns(2, border=True)
    with left:
        st.metric("Margen", f"{report.margin:.6g}")
    with right:
        st.metric("Tolerancia", f"{report.tolerance:.6g}")

    st.write(report.notes)
    if report.witness is not None:
        st.write("Testigo:")
        st.json(to_serializable(report.witness))

    with st.expander("Parámetros"):
        st.json(to_serializable(report.params))
    with st.expander("Detalles"):
        st.json(to_serializable(report.details))

    st.download_button(
        "Descargar informe (JSON)",
        data=report.to_json(),
        file_name=f"{report.check_id}.json",
        mime="application/json",
        use_container_width=True,
    )


if __name__ == "__main__":
    main()
