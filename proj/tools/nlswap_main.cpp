#include "nlswap/errors.hpp"
#include "nlswap/json_io.hpp"
#include "nlswap/protocols.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

using namespace nlswap;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open \"" + path + "\"");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_output(const std::optional<std::string>& path, const std::string& content) {
    if (!path) {
        std::cout << content;
        return;
    }
    std::ofstream out(*path, std::ios::binary);
    if (!out) throw ParseError("cannot write \"" + *path + "\"");
    out << content;
}

Box load_box(const std::string& path) {
    try {
        return box_from_json(read_file(path));
    } catch (const ParseError& error) {
        throw ParseError(path + ": " + error.what());
    }
}

SingleBox load_single_box(const std::string& path) {
    try {
        return single_box_from_json(read_file(path));
    } catch (const ParseError& error) {
        throw ParseError(path + ": " + error.what());
    }
}

CouplerTensor load_coupler(const std::optional<std::string>& path) {
    if (!path) return canonical_coupler();
    try {
        return coupler_from_json(read_file(*path));
    } catch (const ParseError& error) {
        throw ParseError(*path + ": " + error.what());
    }
}

int run_verify(const std::optional<std::string>& coupler_path) {
    const CouplerTensor tensor = load_coupler(coupler_path);
    bool all_pass = true;
    const auto line = [&all_pass](bool pass, const std::string& text) {
        std::cout << (pass ? "[PASS] " : "[FAIL] ") << text << "\n";
        all_pass = all_pass && pass;
    };

    const VerificationReport report = verify_coupler(tensor);
    for (const auto& check : report.checks) {
        line(check.pass, check.witness.empty() ? check.name : check.name + " (" + check.witness + ")");
    }
    std::cout << "solution space dimension: " << report.solution_space_dim << "\n";

    line(verify_d1_identity(tensor), "facet-centre-decomposition-identity");

    const InconsistencyReport demos = demonstrate_inconsistencies(tensor);
    line(demos.unscaled_pr_invalid,
         "unscaled coupler on PR yields invalid probability " +
             to_fraction_string(demos.unscaled_pr_value));
    line(demos.anti_pr_invalid, "coupler on anti-PR yields invalid probability " +
                                    to_fraction_string(demos.anti_pr_value));

    std::cout << (all_pass ? "verification passed" : "verification FAILED") << "\n";
    return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact calculus for genuine non-signalling boxes: CH values, polytope"
                 " membership, the coupler, non-locality swapping, and teleportation"};
    app.require_subcommand(1);

    std::string box_path, ab_path, bc_path, single_path;
    std::optional<std::string> out_path, coupler_path, channel_path;
    double tol = kDefaultTlmTolerance;
    std::string step = "1/20";
    int jobs = 1;
    bool unchecked = false;

    auto* ch_cmd = app.add_subcommand("ch", "Print the CH value of a box");
    ch_cmd->add_option("box", box_path, "box JSON file")->required();

    auto* classify_cmd = app.add_subcommand("classify", "Classify a box against the local and genuine polytopes");
    classify_cmd->add_option("box", box_path, "box JSON file")->required();
    classify_cmd->add_option("--tol", tol, "correlator-criterion boundary tolerance");

    auto* synthesize_cmd = app.add_subcommand("synthesize", "Emit the canonical coupler tensor");
    synthesize_cmd->add_option("-o,--output", out_path, "output file (default stdout)");

    auto* swap_cmd = app.add_subcommand("swap", "Swap non-locality between two boxes");
    swap_cmd->add_option("ab", ab_path, "Alice-Bob box JSON file")->required();
    swap_cmd->add_option("bc", bc_path, "Bob-Charlie box JSON file")->required();
    swap_cmd->add_option("--coupler", coupler_path, "coupler JSON file (default: synthesize)");
    swap_cmd->add_flag("--unchecked", unchecked, "skip the genuineness gate");

    auto* single_cmd = app.add_subcommand("single", "Apply the coupler to both ends of one box");
    single_cmd->add_option("box", box_path, "box JSON file")->required();
    single_cmd->add_option("--coupler", coupler_path, "coupler JSON file (default: synthesize)");

    auto* sweep_cmd = app.add_subcommand("sweep", "Swap identical noisy boxes over the parameter grid");
    sweep_cmd->add_option("--step", step, "rational grid step, 0 < step <= 1/4 (default 1/20)");
    sweep_cmd->add_option("-o,--output", out_path, "output CSV file (default stdout)");
    sweep_cmd->add_option("--tol", tol, "correlator-criterion boundary tolerance");
    sweep_cmd->add_option("--jobs", jobs, "parallel workers (output order is unchanged)");

    auto* teleport_cmd = app.add_subcommand("teleport", "Teleport a one-party box through a genuine channel");
    teleport_cmd->add_option("box", single_path, "one-party box JSON file")->required();
    teleport_cmd->add_option("--channel", channel_path, "channel box JSON file (default: PR)");
    teleport_cmd->add_option("--coupler", coupler_path, "coupler JSON file (default: synthesize)");

    auto* verify_cmd = app.add_subcommand("verify", "Run the full consistency suite");
    verify_cmd->add_option("--coupler", coupler_path, "coupler JSON file (default: synthesize)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& error) {
        const int code = app.exit(error);
        return code == 0 ? 0 : 2;
    }

    try {
        if (ch_cmd->parsed()) {
            std::cout << to_fraction_string(ch_value(load_box(box_path))) << "\n";
        } else if (classify_cmd->parsed()) {
            std::cout << classification_to_json(classify(load_box(box_path), tol));
        } else if (synthesize_cmd->parsed()) {
            write_output(out_path, coupler_to_json(synthesize_coupler()));
        } else if (swap_cmd->parsed()) {
            const CouplerTensor tensor = load_coupler(coupler_path);
            const SwapOutcome outcome =
                swap_boxes(tensor, load_box(ab_path), load_box(bc_path), !unchecked);
            std::cout << swap_outcome_to_json(outcome);
        } else if (single_cmd->parsed()) {
            const CouplerTensor tensor = load_coupler(coupler_path);
            std::cout << single_outcome_to_json(apply_to_single(tensor, load_box(box_path)));
        } else if (sweep_cmd->parsed()) {
            const auto step_value = try_parse_rational(step);
            if (!step_value) throw ParseError("--step: malformed rational \"" + step + "\"");
            const auto records =
                sweep_noisy_family(load_coupler(coupler_path), *step_value, tol, jobs);
            write_output(out_path, sweep_to_csv(records));
        } else if (teleport_cmd->parsed()) {
            const CouplerTensor tensor = load_coupler(coupler_path);
            const Box channel = channel_path ? load_box(*channel_path) : make_pr_box();
            std::cout << teleport_result_to_json(
                teleport(tensor, load_single_box(single_path), channel));
        } else if (verify_cmd->parsed()) {
            return run_verify(coupler_path);
        }
    } catch (const ParseError& error) {
        std::cerr << "error: " << error.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& error) {
        std::cerr << "error: " << error.what() << "\n";
        return 2;
    } catch (const std::exception& error) {
        std::cerr << "error: " << error.what() << "\n";
        return 1;
    }
    return 0;
}
