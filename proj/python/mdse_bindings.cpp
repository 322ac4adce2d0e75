#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <string>
#include <vector>

#include "mdse/bench.hpp"
#include "mdse/cli.hpp"
#include "mdse/document.hpp"
#include "mdse/error.hpp"
#include "mdse/generator.hpp"
#include "mdse/inference.hpp"
#include "mdse/oracle.hpp"
#include "mdse/priors.hpp"
#include "mdse/validation.hpp"

namespace py = pybind11;

namespace {

// Vertex and group ids cross the boundary as plain ints.
std::vector<std::uint32_t> ids(const std::vector<mdse::NodeId>& nodes) {
  std::vector<std::uint32_t> out;
  out.reserve(nodes.size());
  for (auto n : nodes) out.push_back(n.value);
  return out;
}

py::dict query_result(const mdse::QueryResult& r) {
  py::list terms;
  for (const auto& t : r.terms) {
    py::object via = t.via ? py::object(py::int_(t.via->value)) : py::object(py::none());
    terms.append(py::make_tuple(t.source.value, via, t.contribution));
  }
  py::dict d;
  d["value"] = r.value;
  d["formula"] = std::string(mdse::to_string(r.formula));
  d["terms"] = terms;
  d["in_range"] = r.in_range;
  return d;
}

py::dict shape_dict(const mdse::GraphShape& s) {
  py::dict d;
  d["n"] = s.n;
  d["m"] = s.m;
  d["i"] = s.i;
  d["k"] = s.k;
  d["e"] = s.e;
  d["v"] = s.v;
  return d;
}

mdse::ValidationMode parse_mode(const std::string& mode) {
  if (mode == "strict") return mdse::ValidationMode::Strict;
  if (mode == "relaxed") return mdse::ValidationMode::Relaxed;
  throw py::value_error("mode must be 'relaxed' or 'strict'");
}

}  // namespace

PYBIND11_MODULE(_mdse, m) {
  m.doc() = "Hypothesis/event graphs with exact Bayesian queries";

  static py::exception<mdse::Error> error_type(m, "MdseError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const mdse::Error& e) {
      const std::string msg = "[" + std::string(mdse::to_string(e.code())) + "] " + e.what();
      PyErr_SetString(error_type.ptr(), msg.c_str());
    }
  });

  py::class_<mdse::MdseGraph>(m, "MdseGraph")
      .def(py::init<>())
      .def_property_readonly("shape", [](const mdse::MdseGraph& g) { return shape_dict(g.shape()); })
      .def_property_readonly("relaxed_valid", &mdse::MdseGraph::relaxed_valid)
      .def("priors", [](const mdse::MdseGraph& g, std::uint32_t group) {
        std::vector<double> out;
        for (const auto& h : g.group(mdse::GroupId{group}).members) out.push_back(h.prior);
        return out;
      })
      .def("edges", [](const mdse::MdseGraph& g) {
        py::list out;
        for (const auto& e : g.edges()) out.append(py::make_tuple(e.src.value, e.dst.value, e.weight));
        return out;
      });

  py::class_<mdse::GraphBuilder>(m, "GraphBuilder")
      .def(py::init([](bool deferred) {
             return mdse::GraphBuilder(deferred ? mdse::ConstructionChecks::Deferred
                                                : mdse::ConstructionChecks::Enforced);
           }),
           py::arg("deferred") = false)
      .def("add_hypothesis_group",
           [](mdse::GraphBuilder& b, const std::vector<double>& priors, const std::string& role) {
             if (role != "star" && role != "prime") throw py::value_error("role must be 'star' or 'prime'");
             return ids(b.add_hypothesis_group(priors, role == "star" ? mdse::GroupRole::Star
                                                                      : mdse::GroupRole::Prime));
           },
           py::arg("priors"), py::arg("role") = "star")
      .def("add_event",
           [](mdse::GraphBuilder& b, const std::string& kind, std::optional<std::string> label) {
             if (kind != "star" && kind != "prime") throw py::value_error("kind must be 'star' or 'prime'");
             return b.add_event(kind == "star" ? mdse::EventKind::Star : mdse::EventKind::Prime,
                                std::move(label))
                 .value;
           },
           py::arg("kind"), py::arg("label") = py::none())
      .def("add_edge",
           [](mdse::GraphBuilder& b, std::uint32_t src, std::uint32_t dst, double w) {
             b.add_edge(mdse::NodeId{src}, mdse::NodeId{dst}, w);
           })
      .def("freeze", &mdse::GraphBuilder::freeze);

  m.def("full_probability", [](const std::vector<double>& p, const std::vector<double>& l) {
    return mdse::full_probability(p, l);
  });
  m.def("posterior", [](const std::vector<double>& p, const std::vector<double>& l) {
    return mdse::posterior(p, l);
  });
  m.def("prob_and_case", [](const std::vector<double>& p, const std::vector<double>& l) {
    return mdse::prob_and_case(p, l);
  });
  m.def("joint_probability", [](const std::vector<double>& c, double base) {
    return mdse::joint_probability(c, base);
  });
  m.def("map_hypothesis", [](const std::vector<double>& p, const std::vector<double>& l) {
    const auto choice = mdse::map_hypothesis(p, l);
    return py::make_tuple(choice.index, choice.posterior);
  });

  m.def(
      "prob_event",
      [](const mdse::MdseGraph& g, std::uint32_t target, const std::string& mode, bool checked) {
        mdse::ProbQuery q;
        q.target = mdse::NodeId{target};
        q.mode = mode == "and" ? mdse::CombineMode::AndProduct : mdse::CombineMode::OrMixture;
        q.normalization = checked ? mdse::Normalization::Checked : mdse::Normalization::Literal;
        return query_result(mdse::prob_event(g, q));
      },
      py::arg("graph"), py::arg("target"), py::arg("mode") = "or", py::arg("checked") = false);
  m.def("prob_event_expanded", [](const mdse::MdseGraph& g, std::uint32_t target) {
    return query_result(mdse::prob_event_expanded(g, mdse::NodeId{target}));
  });
  m.def("prob_event_and", [](const mdse::MdseGraph& g, std::uint32_t target) {
    return query_result(mdse::prob_event_and(g, mdse::NodeId{target}));
  });
  m.def("posterior_for_event", [](const mdse::MdseGraph& g, std::uint32_t group, std::uint32_t event) {
    const auto post = mdse::posterior_for_event(g, mdse::GroupId{group}, mdse::NodeId{event});
    std::vector<std::pair<std::uint32_t, double>> out;
    for (const auto& e : post.entries) out.emplace_back(e.hypothesis.value, e.probability);
    return out;
  });

  m.def("priors_from_counts", [](const std::vector<std::uint64_t>& c) { return mdse::priors_from_counts(c); });
  m.def("priors_uniform", &mdse::priors_uniform);
  m.def("priors_explicit", [](const std::vector<double>& v) { return mdse::priors_explicit(v); });
  m.def("update_group", [](const mdse::MdseGraph& g, std::uint32_t group, std::uint32_t event) {
    return mdse::update_group(g, mdse::GroupId{group}, mdse::NodeId{event});
  });

  m.def(
      "validate",
      [](const mdse::MdseGraph& g, const std::string& mode) {
        const auto report = mdse::validate(g, parse_mode(mode));
        py::dict d;
        d["passed"] = report.passed;
        d["rules"] = report.rule_ids();
        return d;
      },
      py::arg("graph"), py::arg("mode") = "relaxed");
  m.def("degree_bounds", [](const mdse::MdseGraph& g, std::uint32_t id) {
    const auto b = mdse::degree_bounds(g, mdse::NodeId{id});
    return py::make_tuple(b.indegree, b.outdegree, b.min_allowed, b.max_allowed);
  });
  m.def("handshake_report", [](const mdse::MdseGraph& g) {
    const auto r = mdse::handshake_report(g);
    py::dict d;
    d["sum_indegree"] = r.sum_indegree;
    d["sum_outdegree"] = r.sum_outdegree;
    d["edge_count"] = r.edge_count;
    d["paper_lhs"] = r.paper_lhs;
    d["paper_rhs"] = r.paper_rhs;
    return d;
  });
  m.def("max_edge_bound", &mdse::max_edge_bound);

  m.def(
      "parse_graph",
      [](const std::string& text, bool deferred) {
        return mdse::parse_graph(text, deferred ? mdse::ConstructionChecks::Deferred
                                                : mdse::ConstructionChecks::Enforced);
      },
      py::arg("text"), py::arg("deferred") = false);
  m.def("serialize_graph", &mdse::serialize_graph);
  m.def(
      "generate_graph",
      [](std::uint64_t seed, std::size_t n_star, std::size_t n_prime, std::size_t groups_star,
         std::size_t groups_prime, std::size_t max_group_size, double density, bool strict) {
        mdse::GeneratorConfig c;
        c.seed = seed;
        c.n_star_events = n_star;
        c.n_prime_events = n_prime;
        c.groups_star = groups_star;
        c.groups_prime = groups_prime;
        c.max_group_size = max_group_size;
        c.edge_density = density;
        c.strict = strict;
        return mdse::generate_graph(c);
      },
      py::arg("seed"), py::arg("n_star") = 1, py::arg("n_prime") = 1, py::arg("groups_star") = 1,
      py::arg("groups_prime") = 1, py::arg("max_group_size") = 1, py::arg("density") = 0.5,
      py::arg("strict") = true);

  m.def("oracle_full_probability", [](const std::vector<double>& p, const std::vector<double>& l) {
    return mdse::oracle::enumerate_full_probability(p, l);
  });
  m.def("oracle_posterior", [](const std::vector<double>& p, const std::vector<double>& l) {
    return mdse::oracle::enumerate_posterior(p, l);
  });
  m.def("check_mixture_expansion", [](const mdse::MdseGraph& g, std::uint32_t target) {
    const auto c = mdse::oracle::check_mixture_expansion(g, mdse::NodeId{target});
    return py::make_tuple(c.lhs, c.rhs, c.delta);
  });

  m.def(
      "fit_scaling_exponent",
      [](const std::vector<std::size_t>& sizes, const std::vector<std::int64_t>& times_ns) {
        if (sizes.size() != times_ns.size()) throw py::value_error("sizes and times differ in length");
        std::vector<mdse::bench::BenchPoint> points;
        for (std::size_t j = 0; j < sizes.size(); ++j) {
          mdse::bench::BenchPoint p;
          p.e = sizes[j];
          p.median_ns = times_ns[j];
          points.push_back(p);
        }
        const auto fit = mdse::bench::fit_scaling_exponent(points, mdse::bench::SizeAxis::Edges);
        return py::make_tuple(fit.exponent, fit.r_squared);
      },
      py::arg("edge_counts"), py::arg("times_ns"));

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = mdse::cli::run_cli(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  });

  m.attr("__version__") = "0.1.0";
}
