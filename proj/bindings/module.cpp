#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nlswap/errors.hpp"
#include "nlswap/json_io.hpp"
#include "nlswap/protocols.hpp"

#include <string>
#include <utility>
#include <vector>

namespace py = pybind11;
using namespace nlswap;

namespace {

py::object to_fraction(const Rational& value) {
    return py::module_::import("fractions").attr("Fraction")(to_fraction_string(value));
}

Rational rational_from_py(py::handle value) {
    if (py::isinstance<py::float_>(value)) {
        return Rational(value.cast<double>());  // exact dyadic conversion
    }
    // ints, "num/den" strings, and fractions.Fraction all round-trip via str().
    return parse_rational(py::str(value).cast<std::string>());
}

Box box_from_nested(const py::sequence& p) {
    std::array<Rational, Box::kEntries> entries;
    if (py::len(p) != 2) throw ParseError("expected a 2x2x2x2 nested sequence");
    for (int x = 0; x < 2; ++x) {
        const py::sequence px = p[x].cast<py::sequence>();
        if (py::len(px) != 2) throw ParseError("expected a 2x2x2x2 nested sequence");
        for (int y = 0; y < 2; ++y) {
            const py::sequence py_ = px[y].cast<py::sequence>();
            if (py::len(py_) != 2) throw ParseError("expected a 2x2x2x2 nested sequence");
            for (int a = 0; a < 2; ++a) {
                const py::sequence pa = py_[a].cast<py::sequence>();
                if (py::len(pa) != 2) throw ParseError("expected a 2x2x2x2 nested sequence");
                for (int b = 0; b < 2; ++b) {
                    entries[Box::index(x, y, a, b)] = rational_from_py(pa[b]);
                }
            }
        }
    }
    return Box::from_entries(std::move(entries));
}

py::list box_entries(const Box& box) {
    py::list p;
    for (int x = 0; x < 2; ++x) {
        py::list px;
        for (int y = 0; y < 2; ++y) {
            py::list py_;
            for (int a = 0; a < 2; ++a) {
                py::list pa;
                for (int b = 0; b < 2; ++b) pa.append(to_fraction(box.entry(x, y, a, b)));
                py_.append(std::move(pa));
            }
            px.append(std::move(py_));
        }
        p.append(std::move(px));
    }
    return p;
}

std::span<const VertexId> vertex_set_by_name(const std::string& which) {
    if (which == "local") return VertexId::local_set();
    if (which == "genuine") return VertexId::genuine_set();
    throw std::invalid_argument("vertex set must be \"local\" or \"genuine\"");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact calculus for genuine non-signalling boxes: CH values, polytope "
              "membership, the coupler, non-locality swapping, and teleportation.";

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<NotGenuineError>(m, "NotGenuineError", PyExc_ValueError);
    py::register_exception<InvalidOutputError>(m, "InvalidOutputError", PyExc_ValueError);
    py::register_exception<InvalidProbabilityError>(m, "InvalidProbabilityError",
                                                    PyExc_ValueError);
    py::register_exception<DegenerateBranchError>(m, "DegenerateBranchError",
                                                  PyExc_ValueError);
    py::register_exception<InfeasibleError>(m, "InfeasibleError", PyExc_RuntimeError);

    py::enum_<Tier>(m, "Tier")
        .value("Local", Tier::Local)
        .value("GenuineNonlocal", Tier::GenuineNonlocal)
        .value("NonSignallingNonGenuine", Tier::NonSignallingNonGenuine)
        .value("Invalid", Tier::Invalid);

    py::enum_<TlmStatus>(m, "TlmStatus")
        .value("Satisfied", TlmStatus::Satisfied)
        .value("Violated", TlmStatus::Violated)
        .value("Boundary", TlmStatus::Boundary);

    py::enum_<SliceVerdict>(m, "SliceVerdict")
        .value("Useless", SliceVerdict::Useless)
        .value("Useful", SliceVerdict::Useful);

    py::class_<Box>(m, "Box")
        .def_static("local_vertex", &make_local_vertex, py::arg("alpha"), py::arg("beta"),
                    py::arg("gamma"), py::arg("delta"))
        .def_static("pr", &make_pr_box)
        .def_static("pr_variant", &make_pr_variant, py::arg("cx"), py::arg("cy"),
                    py::arg("c1"))
        .def_static("anti_pr", &make_anti_pr_box)
        .def_static("identity", &make_identity_box)
        .def_static(
            "noisy",
            [](py::handle xi, py::handle gamma) {
                return make_noisy_box({rational_from_py(xi), rational_from_py(gamma)});
            },
            py::arg("xi"), py::arg("gamma"))
        .def_static("from_entries", &box_from_nested, py::arg("p"))
        .def_static("from_json", &box_from_json, py::arg("text"))
        .def("entry",
             [](const Box& box, int x, int y, int a, int b) {
                 return to_fraction(box.entry(x, y, a, b));
             })
        .def("entries", &box_entries)
        .def("to_json", &box_to_json)
        .def("__eq__", [](const Box& lhs, const Box& rhs) { return lhs == rhs; })
        .def("__repr__", [](const Box& box) {
            return "Box(ch=" + to_fraction_string(ch_value(box)) + ")";
        });

    py::class_<SingleBox>(m, "SingleBox")
        .def_static("local", &make_single_local, py::arg("alpha"), py::arg("beta"))
        .def_static("from_entries",
                    [](const py::sequence& p) {
                        std::array<Rational, SingleBox::kEntries> entries;
                        if (py::len(p) != 2) throw ParseError("expected a 2x2 sequence");
                        for (int y = 0; y < 2; ++y) {
                            const py::sequence row = p[y].cast<py::sequence>();
                            if (py::len(row) != 2) throw ParseError("expected a 2x2 sequence");
                            for (int b = 0; b < 2; ++b) {
                                entries[SingleBox::index(y, b)] = rational_from_py(row[b]);
                            }
                        }
                        return SingleBox::from_entries(std::move(entries));
                    })
        .def_static("from_json", &single_box_from_json, py::arg("text"))
        .def("entry", [](const SingleBox& box, int y,
                         int b) { return to_fraction(box.entry(y, b)); })
        .def("is_valid", [](const SingleBox& box) { return is_valid(box); })
        .def("to_json", &single_box_to_json)
        .def("__eq__",
             [](const SingleBox& lhs, const SingleBox& rhs) { return lhs == rhs; });

    py::class_<ValidationReport>(m, "ValidationReport")
        .def_readonly("positivity", &ValidationReport::positivity)
        .def_readonly("normalization", &ValidationReport::normalization)
        .def_readonly("alice_marginal_ns", &ValidationReport::alice_marginal_ns)
        .def_readonly("bob_marginal_ns", &ValidationReport::bob_marginal_ns)
        .def("ok", &ValidationReport::ok);

    py::class_<MembershipCertificate>(m, "MembershipCertificate")
        .def_property_readonly("is_member", &MembershipCertificate::is_member)
        .def_property_readonly("weights", [](const MembershipCertificate& cert) {
            py::dict weights;
            for (const auto& [id, w] : cert.weights) {
                weights[py::str(id.name())] = to_fraction(w);
            }
            return weights;
        });

    py::class_<Classification>(m, "Classification")
        .def_readonly("tier", &Classification::tier)
        .def_readonly("tlm", &Classification::tlm)
        .def_property_readonly(
            "ch", [](const Classification& c) { return to_fraction(c.ch); })
        .def("to_json", &classification_to_json);

    py::class_<CouplerTensor>(m, "CouplerTensor")
        .def_static("synthesize", &synthesize_coupler)
        .def_static("from_json", &coupler_from_json, py::arg("text"))
        .def("coefficient",
             [](const CouplerTensor& t, int bprime, int y1, int y2, int b1, int b2) {
                 return to_fraction(t.coefficient(bprime, y1, y2, b1, b2));
             })
        .def("scaled",
             [](const CouplerTensor& t, py::handle factor) {
                 return t.scaled(rational_from_py(factor));
             })
        .def("to_json", &coupler_to_json)
        .def("__eq__", [](const CouplerTensor& lhs, const CouplerTensor& rhs) {
            return lhs == rhs;
        });

    py::class_<TripartiteBox>(m, "TripartiteBox")
        .def("entry", [](const TripartiteBox& tri, int x, int z, int a, int bprime, int c) {
            return to_fraction(tri.entry(x, z, a, bprime, c));
        });

    py::class_<SwapOutcome>(m, "SwapOutcome")
        .def_property_readonly("q", [](const SwapOutcome& o) { return to_fraction(o.q); })
        .def_readonly("success_box", &SwapOutcome::success_box)
        .def_readonly("failure_box", &SwapOutcome::failure_box)
        .def("to_json", &swap_outcome_to_json);

    py::class_<SweepRecord>(m, "SweepRecord")
        .def_property_readonly("xi", [](const SweepRecord& r) { return to_fraction(r.xi); })
        .def_property_readonly("gamma",
                               [](const SweepRecord& r) { return to_fraction(r.gamma); })
        .def_property_readonly("ch_in",
                               [](const SweepRecord& r) { return to_fraction(r.ch_in); })
        .def_property_readonly("q", [](const SweepRecord& r) { return to_fraction(r.q); })
        .def_property_readonly(
            "ch_out_success",
            [](const SweepRecord& r) { return to_fraction(r.ch_out_success); })
        .def_readonly("swappable", &SweepRecord::swappable)
        .def_readonly("tlm", &SweepRecord::tlm);

    py::class_<TeleportResult>(m, "TeleportResult")
        .def_property_readonly("q",
                               [](const TeleportResult& r) { return to_fraction(r.q); })
        .def_readonly("alice_box", &TeleportResult::alice_box)
        .def("to_json", &teleport_result_to_json);

    py::class_<VerificationCheck>(m, "VerificationCheck")
        .def_readonly("name", &VerificationCheck::name)
        .def_readonly("pass_", &VerificationCheck::pass)
        .def_readonly("witness", &VerificationCheck::witness);

    py::class_<VerificationReport>(m, "VerificationReport")
        .def_readonly("checks", &VerificationReport::checks)
        .def_readonly("solution_space_dim", &VerificationReport::solution_space_dim)
        .def("all_pass", &VerificationReport::all_pass)
        .def("to_json", &verification_report_to_json);

    py::class_<InconsistencyReport>(m, "InconsistencyReport")
        .def_property_readonly(
            "unscaled_pr_value",
            [](const InconsistencyReport& r) { return to_fraction(r.unscaled_pr_value); })
        .def_readonly("unscaled_pr_invalid", &InconsistencyReport::unscaled_pr_invalid)
        .def_property_readonly(
            "anti_pr_value",
            [](const InconsistencyReport& r) { return to_fraction(r.anti_pr_value); })
        .def_readonly("anti_pr_invalid", &InconsistencyReport::anti_pr_invalid)
        .def("to_json", &inconsistency_report_to_json);

    m.def("ch_value", [](const Box& box) { return to_fraction(ch_value(box)); },
          py::arg("box"));
    m.def(
        "correlator",
        [](const Box& box, int x, int y) { return to_fraction(correlator(box, x, y)); },
        py::arg("box"), py::arg("x"), py::arg("y"));
    m.def(
        "mix",
        [](const py::sequence& terms) {
            std::vector<std::pair<Rational, Box>> converted;
            for (py::handle item : terms) {
                const py::sequence pair = item.cast<py::sequence>();
                converted.emplace_back(rational_from_py(pair[0]), pair[1].cast<Box>());
            }
            return mix(converted);
        },
        py::arg("terms"), "Convex combination of (weight, Box) pairs.");
    m.def("validate", [](const Box& box) { return validate(box); }, py::arg("box"));

    m.def(
        "member_of_hull",
        [](const Box& box, const std::string& vertices) {
            return member_of_hull(box, vertex_set_by_name(vertices));
        },
        py::arg("box"), py::arg("vertices") = "genuine",
        "Exact hull membership against the \"local\" or \"genuine\" vertex set.");
    m.def("is_local", &is_local, py::arg("box"));
    m.def("is_genuine", &is_genuine, py::arg("box"));
    m.def("classify", &classify, py::arg("box"), py::arg("tol") = kDefaultTlmTolerance);
    m.def("tlm_satisfied", &tlm_satisfied, py::arg("box"),
          py::arg("tol") = kDefaultTlmTolerance);
    m.def(
        "slice_boundary_check",
        [](py::handle xi, py::handle gamma) {
            return slice_boundary_check({rational_from_py(xi), rational_from_py(gamma)});
        },
        py::arg("xi"), py::arg("gamma"));

    m.def("canonical_coupler", [] { return canonical_coupler(); },
          "The canonical coupler tensor, synthesized once per process.");
    m.def("apply_to_pair", &apply_to_pair, py::arg("t"), py::arg("ab"), py::arg("bc"));
    m.def("condition_on_outcome", &condition_on_outcome, py::arg("tri"));
    m.def(
        "apply_to_single",
        [](const CouplerTensor& t, const Box& box) {
            const auto p = apply_to_single(t, box);
            return py::make_tuple(to_fraction(p[0]), to_fraction(p[1]));
        },
        py::arg("t"), py::arg("box"));
    m.def(
        "single_outcome_raw",
        [](const CouplerTensor& t, const Box& box) {
            const auto p = single_outcome_raw(t, box);
            return py::make_tuple(to_fraction(p[0]), to_fraction(p[1]));
        },
        py::arg("t"), py::arg("box"));
    m.def("failure_box", &failure_box);
    m.def("verify_coupler", &verify_coupler, py::arg("t"),
          py::arg("random_mixtures") = 1000, py::arg("seed") = 0x6e6c73776170ULL);

    m.def("swap_boxes", &swap_boxes, py::arg("t"), py::arg("ab"), py::arg("bc"),
          py::arg("check_genuine") = true);
    m.def(
        "sweep_noisy_family",
        [](const CouplerTensor& t, py::handle step, double tol, int jobs) {
            return sweep_noisy_family(t, rational_from_py(step), tol, jobs);
        },
        py::arg("t"), py::arg("step") = "1/20", py::arg("tol") = kDefaultTlmTolerance,
        py::arg("jobs") = 1);
    m.def(
        "sweep_to_csv",
        [](const std::vector<SweepRecord>& records) { return sweep_to_csv(records); },
        py::arg("records"));
    m.def(
        "teleport",
        [](const CouplerTensor& t, const SingleBox& bob_box, py::object channel) {
            const Box channel_box =
                channel.is_none() ? make_pr_box() : channel.cast<Box>();
            return teleport(t, bob_box, channel_box);
        },
        py::arg("t"), py::arg("bob_box"), py::arg("channel") = py::none());
    m.def("demonstrate_inconsistencies", &demonstrate_inconsistencies, py::arg("t"));
    m.def("verify_d1_identity", &verify_d1_identity, py::arg("t"));
    m.def("facet_centre_from_vertices", &facet_centre_from_vertices);
    m.def("facet_centre_from_pr", &facet_centre_from_pr);
}
