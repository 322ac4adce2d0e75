"""Hypothesis/event graphs with exact Bayesian queries."""

from ._mdse import (  # noqa: F401
    MdseError,
    GraphBuilder,
    MdseGraph,
    full_probability,
    posterior,
    prob_and_case,
    joint_probability,
    map_hypothesis,
    prob_event,
    prob_event_expanded,
    prob_event_and,
    posterior_for_event,
    priors_from_counts,
    priors_uniform,
    priors_explicit,
    update_group,
    validate,
    degree_bounds,
    handshake_report,
    max_edge_bound,
    parse_graph,
    serialize_graph,
    generate_graph,
    oracle_full_probability,
    oracle_posterior,
    check_mixture_expansion,
    fit_scaling_exponent,
    run_cli,
    __version__,
)
