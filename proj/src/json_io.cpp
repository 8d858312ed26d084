#include "nlswap/json_io.hpp"

#include "nlswap/errors.hpp"

#include <json.hpp>

#include <sstream>

namespace nlswap {

namespace {

using ordered_json = nlohmann::ordered_json;

Rational rational_from_json(const ordered_json& node, const std::string& where) {
    if (node.is_string()) {
        auto value = try_parse_rational(node.get<std::string>());
        if (!value) {
            throw ParseError(where + ": malformed rational \"" + node.get<std::string>() +
                             "\"");
        }
        return *value;
    }
    if (node.is_number_integer()) return Rational(node.get<long long>());
    throw ParseError(where + ": expected a \"num/den\" string");
}

int bit_from_json(const ordered_json& node, const std::string& where) {
    if (node.is_number_integer()) {
        const long long value = node.get<long long>();
        if (value == 0 || value == 1) return static_cast<int>(value);
    }
    throw ParseError(where + ": expected 0 or 1");
}

ordered_json parse_document(const std::string& text, const std::string& what) {
    ordered_json doc = ordered_json::parse(text, nullptr, /*allow_exceptions=*/false);
    if (doc.is_discarded()) throw ParseError(what + ": not valid JSON");
    return doc;
}

ordered_json box_to_node(const Box& box) {
    ordered_json p = ordered_json::array();
    for (int x = 0; x < 2; ++x) {
        ordered_json px = ordered_json::array();
        for (int y = 0; y < 2; ++y) {
            ordered_json py = ordered_json::array();
            for (int a = 0; a < 2; ++a) {
                ordered_json pa = ordered_json::array();
                for (int b = 0; b < 2; ++b) {
                    pa.push_back(to_fraction_string(box.entry(x, y, a, b)));
                }
                py.push_back(std::move(pa));
            }
            px.push_back(std::move(py));
        }
        p.push_back(std::move(px));
    }
    ordered_json doc;
    doc["p"] = std::move(p);
    return doc;
}

Box box_from_node(const ordered_json& doc, const std::string& where) {
    if (!doc.is_object()) throw ParseError(where + ": expected a JSON object");

    if (doc.contains("p")) {
        const auto& p = doc["p"];
        std::array<Rational, Box::kEntries> entries;
        if (!p.is_array() || p.size() != 2) throw ParseError(where + ".p: expected 2x2x2x2 array");
        for (int x = 0; x < 2; ++x) {
            if (!p[x].is_array() || p[x].size() != 2) throw ParseError(where + ".p: expected 2x2x2x2 array");
            for (int y = 0; y < 2; ++y) {
                if (!p[x][y].is_array() || p[x][y].size() != 2) throw ParseError(where + ".p: expected 2x2x2x2 array");
                for (int a = 0; a < 2; ++a) {
                    if (!p[x][y][a].is_array() || p[x][y][a].size() != 2) throw ParseError(where + ".p: expected 2x2x2x2 array");
                    for (int b = 0; b < 2; ++b) {
                        std::ostringstream path;
                        path << where << ".p[" << x << "][" << y << "][" << a << "][" << b << "]";
                        entries[Box::index(x, y, a, b)] = rational_from_json(p[x][y][a][b], path.str());
                    }
                }
            }
        }
        return Box::from_entries(std::move(entries));
    }
    if (doc.contains("vertex")) {
        const auto& v = doc["vertex"];
        if (!v.is_object()) throw ParseError(where + ".vertex: expected an object");
        for (const char* key : {"alpha", "beta", "gamma", "delta"}) {
            if (!v.contains(key)) throw ParseError(where + ".vertex: missing \"" + key + "\"");
        }
        return make_local_vertex(bit_from_json(v["alpha"], where + ".vertex.alpha"),
                                 bit_from_json(v["beta"], where + ".vertex.beta"),
                                 bit_from_json(v["gamma"], where + ".vertex.gamma"),
                                 bit_from_json(v["delta"], where + ".vertex.delta"));
    }
    if (doc.contains("pr")) {
        if (!doc["pr"].is_boolean() || !doc["pr"].get<bool>()) {
            throw ParseError(where + ".pr: expected true");
        }
        return make_pr_box();
    }
    if (doc.contains("noisy")) {
        const auto& n = doc["noisy"];
        if (!n.is_object() || !n.contains("xi") || !n.contains("gamma")) {
            throw ParseError(where + ".noisy: expected {\"xi\": ..., \"gamma\": ...}");
        }
        const NoisyBoxParams params{rational_from_json(n["xi"], where + ".noisy.xi"),
                                    rational_from_json(n["gamma"], where + ".noisy.gamma")};
        try {
            return make_noisy_box(params);
        } catch (const std::invalid_argument& error) {
            throw ParseError(where + ".noisy: " + error.what());
        }
    }
    throw ParseError(where + ": expected one of \"p\", \"vertex\", \"pr\", \"noisy\"");
}

}  // namespace

std::string box_to_json(const Box& box) { return box_to_node(box).dump(2) + "\n"; }

Box box_from_json(const std::string& text) {
    return box_from_node(parse_document(text, "box"), "box");
}

std::string single_box_to_json(const SingleBox& box) {
    ordered_json p = ordered_json::array();
    for (int y = 0; y < 2; ++y) {
        ordered_json py = ordered_json::array();
        for (int b = 0; b < 2; ++b) py.push_back(to_fraction_string(box.entry(y, b)));
        p.push_back(std::move(py));
    }
    ordered_json doc;
    doc["p"] = std::move(p);
    return doc.dump(2) + "\n";
}

SingleBox single_box_from_json(const std::string& text) {
    const ordered_json doc = parse_document(text, "single-box");
    if (!doc.is_object()) throw ParseError("single-box: expected a JSON object");
    if (doc.contains("p")) {
        const auto& p = doc["p"];
        if (!p.is_array() || p.size() != 2) throw ParseError("single-box.p: expected 2x2 array");
        std::array<Rational, SingleBox::kEntries> entries;
        for (int y = 0; y < 2; ++y) {
            if (!p[y].is_array() || p[y].size() != 2) throw ParseError("single-box.p: expected 2x2 array");
            for (int b = 0; b < 2; ++b) {
                std::ostringstream path;
                path << "single-box.p[" << y << "][" << b << "]";
                entries[SingleBox::index(y, b)] = rational_from_json(p[y][b], path.str());
            }
        }
        return SingleBox::from_entries(std::move(entries));
    }
    if (doc.contains("local")) {
        const auto& v = doc["local"];
        if (!v.is_object() || !v.contains("alpha") || !v.contains("beta")) {
            throw ParseError("single-box.local: expected {\"alpha\": 0|1, \"beta\": 0|1}");
        }
        return make_single_local(bit_from_json(v["alpha"], "single-box.local.alpha"),
                                 bit_from_json(v["beta"], "single-box.local.beta"));
    }
    throw ParseError("single-box: expected \"p\" or \"local\"");
}

std::string coupler_to_json(const CouplerTensor& tensor) {
    ordered_json doc;
    doc["schema_version"] = 1;
    doc["canonicalization"] = "min-norm";
    ordered_json coefficients = ordered_json::array();
    for (const auto& c : tensor.coefficients()) {
        coefficients.push_back(to_fraction_string(c));
    }
    doc["coefficients"] = std::move(coefficients);
    return doc.dump(2) + "\n";
}

CouplerTensor coupler_from_json(const std::string& text) {
    const ordered_json doc = parse_document(text, "coupler");
    if (!doc.is_object() || !doc.contains("schema_version")) {
        throw ParseError("coupler: missing \"schema_version\"");
    }
    if (!doc["schema_version"].is_number_integer() ||
        doc["schema_version"].get<int>() != 1) {
        throw ParseError("coupler: unsupported schema version");
    }
    if (!doc.contains("coefficients") || !doc["coefficients"].is_array() ||
        doc["coefficients"].size() != CouplerTensor::kCoefficients) {
        throw ParseError("coupler: expected 32 coefficients");
    }
    std::array<Rational, CouplerTensor::kCoefficients> coefficients;
    for (int i = 0; i < CouplerTensor::kCoefficients; ++i) {
        coefficients[i] = rational_from_json(doc["coefficients"][i],
                                             "coupler.coefficients[" + std::to_string(i) + "]");
    }
    return CouplerTensor::from_coefficients(std::move(coefficients));
}

std::string classification_to_json(const Classification& classification) {
    ordered_json doc;
    doc["tier"] = to_string(classification.tier);
    doc["tlm"] = to_string(classification.tlm);
    doc["ch"] = to_fraction_string(classification.ch);
    return doc.dump(2) + "\n";
}

std::string swap_outcome_to_json(const SwapOutcome& outcome) {
    ordered_json doc;
    doc["q"] = to_fraction_string(outcome.q);
    doc["success_box"] = box_to_node(outcome.success_box);
    doc["failure_box"] =
        outcome.failure_box ? box_to_node(*outcome.failure_box) : ordered_json(nullptr);
    return doc.dump(2) + "\n";
}

std::string single_outcome_to_json(const std::array<Rational, 2>& outcome) {
    ordered_json doc;
    doc["p"] = {to_fraction_string(outcome[0]), to_fraction_string(outcome[1])};
    return doc.dump(2) + "\n";
}

std::string teleport_result_to_json(const TeleportResult& result) {
    ordered_json alice = ordered_json::array();
    for (int x = 0; x < 2; ++x) {
        ordered_json row = ordered_json::array();
        for (int a = 0; a < 2; ++a) {
            row.push_back(to_fraction_string(result.alice_box.entry(x, a)));
        }
        alice.push_back(std::move(row));
    }
    ordered_json doc;
    doc["q"] = to_fraction_string(result.q);
    doc["alice_box"]["p"] = std::move(alice);
    return doc.dump(2) + "\n";
}

std::string verification_report_to_json(const VerificationReport& report) {
    ordered_json checks = ordered_json::array();
    for (const auto& check : report.checks) {
        ordered_json node;
        node["name"] = check.name;
        node["pass"] = check.pass;
        if (!check.witness.empty()) node["witness"] = check.witness;
        checks.push_back(std::move(node));
    }
    ordered_json doc;
    doc["all_pass"] = report.all_pass();
    doc["solution_space_dim"] = report.solution_space_dim;
    doc["checks"] = std::move(checks);
    return doc.dump(2) + "\n";
}

std::string inconsistency_report_to_json(const InconsistencyReport& report) {
    ordered_json doc;
    doc["unscaled_coupler_on_pr"]["value"] = to_fraction_string(report.unscaled_pr_value);
    doc["unscaled_coupler_on_pr"]["invalid"] = report.unscaled_pr_invalid;
    doc["coupler_on_anti_pr"]["value"] = to_fraction_string(report.anti_pr_value);
    doc["coupler_on_anti_pr"]["invalid"] = report.anti_pr_invalid;
    return doc.dump(2) + "\n";
}

std::string sweep_to_csv(std::span<const SweepRecord> records) {
    std::ostringstream out;
    out << "xi,gamma,ch_in,q,ch_out_success,swappable,tlm\n";
    for (const auto& record : records) {
        out << to_fraction_string(record.xi) << ',' << to_fraction_string(record.gamma)
            << ',' << to_fraction_string(record.ch_in) << ',' << to_fraction_string(record.q)
            << ',' << to_fraction_string(record.ch_out_success) << ','
            << (record.swappable ? "true" : "false") << ',' << to_string(record.tlm) << '\n';
    }
    return out.str();
}

}  // namespace nlswap
