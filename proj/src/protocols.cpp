#include "nlswap/protocols.hpp"

#include "nlswap/errors.hpp"

#include <stdexcept>
#include <thread>

namespace nlswap {

SwapOutcome swap_boxes(const CouplerTensor& t, const Box& ab, const Box& bc,
                       bool check_genuine) {
    if (check_genuine) {
        if (!validate(ab).ok() || !is_genuine(ab)) {
            throw NotGenuineError("left input is not a genuine box");
        }
        if (!validate(bc).ok() || !is_genuine(bc)) {
            throw NotGenuineError("right input is not a genuine box");
        }
    }
    return condition_on_outcome(apply_to_pair(t, ab, bc));
}

std::vector<SweepRecord> sweep_noisy_family(const CouplerTensor& t, const Rational& step,
                                            double tol, int jobs) {
    if (step <= 0 || step > frac(1, 4)) {
        throw std::invalid_argument("sweep step must satisfy 0 < step <= 1/4");
    }

    std::vector<NoisyBoxParams> grid;
    for (Rational xi = 0; xi <= 1; xi += step) {
        for (Rational gamma = 0; xi + gamma <= 1; gamma += step) {
            const Box box = make_noisy_box({xi, gamma});
            if (is_genuine(box)) grid.push_back({xi, gamma});
        }
    }

    std::vector<SweepRecord> records(grid.size());
    const auto run_range = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const auto& [xi, gamma] = grid[i];
            const Box box = make_noisy_box({xi, gamma});
            const SwapOutcome outcome = swap_boxes(t, box, box, /*check_genuine=*/false);
            SweepRecord record;
            record.xi = xi;
            record.gamma = gamma;
            record.ch_in = ch_value(box);
            record.q = outcome.q;
            record.ch_out_success = ch_value(outcome.success_box);
            if (record.ch_out_success != xi * xi + gamma * gamma + frac(1, 2)) {
                throw std::logic_error("swapped CH value deviates from xi^2 + gamma^2 + 1/2");
            }
            record.swappable = record.ch_out_success > 1;
            record.tlm = tlm_satisfied(box, tol);
            records[i] = std::move(record);
        }
    };

    const std::size_t worker_count =
        std::min<std::size_t>(std::max(jobs, 1), grid.size() == 0 ? 1 : grid.size());
    if (worker_count <= 1) {
        run_range(0, grid.size());
    } else {
        std::vector<std::thread> workers;
        std::vector<std::exception_ptr> errors(worker_count);
        const std::size_t chunk = (grid.size() + worker_count - 1) / worker_count;
        for (std::size_t w = 0; w < worker_count; ++w) {
            const std::size_t begin = w * chunk;
            const std::size_t end = std::min(grid.size(), begin + chunk);
            if (begin >= end) break;
            workers.emplace_back([&run_range, &errors, w, begin, end] {
                try {
                    run_range(begin, end);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
        for (auto& worker : workers) worker.join();
        for (const auto& error : errors) {
            if (error) std::rethrow_exception(error);
        }
    }
    return records;
}

TeleportResult teleport(const CouplerTensor& t, const SingleBox& bob_box,
                        const Box& channel) {
    if (!is_valid(bob_box)) {
        throw std::invalid_argument("teleport input is not a one-party distribution");
    }
    if (!validate(channel).ok() || !is_genuine(channel)) {
        throw NotGenuineError("teleportation channel is not a genuine box");
    }

    // Port 1 sees Bob's end of the channel, port 2 Bob's own box.
    std::array<std::array<Rational, 2>, 4> raw{};  // [x][a] -> success mass
    for (int x = 0; x < 2; ++x) {
        for (int a = 0; a < 2; ++a) {
            Rational sum = 0;
            for (int y1 = 0; y1 < 2; ++y1) {
                for (int y2 = 0; y2 < 2; ++y2) {
                    for (int b1 = 0; b1 < 2; ++b1) {
                        for (int b2 = 0; b2 < 2; ++b2) {
                            sum += t.coefficient(0, y1, y2, b1, b2) *
                                   channel.entry(x, y1, a, b1) * bob_box.entry(y2, b2);
                        }
                    }
                }
            }
            raw[x * 2 + a][0] = sum;  // only success masses are needed
        }
    }

    const Rational q = raw[0][0] + raw[1][0];
    if (raw[2][0] + raw[3][0] != q) {
        throw InvalidOutputError("teleport success probability depends on Alice's input");
    }
    if (q == 0) throw DegenerateBranchError("teleport success branch has probability zero");

    std::array<Rational, SingleBox::kEntries> entries;
    for (int x = 0; x < 2; ++x) {
        for (int a = 0; a < 2; ++a) entries[SingleBox::index(x, a)] = raw[x * 2 + a][0] / q;
    }
    return TeleportResult{q, SingleBox::from_entries(std::move(entries))};
}

InconsistencyReport demonstrate_inconsistencies(const CouplerTensor& t) {
    InconsistencyReport report;

    const CouplerTensor unscaled = t.scaled(frac(3, 2));
    report.unscaled_pr_value = single_outcome_raw(unscaled, make_pr_box())[0];
    report.unscaled_pr_invalid =
        report.unscaled_pr_value < 0 || report.unscaled_pr_value > 1;

    report.anti_pr_value = single_outcome_raw(t, make_anti_pr_box())[0];
    report.anti_pr_invalid = report.anti_pr_value < 0 || report.anti_pr_value > 1;

    return report;
}

Box facet_centre_from_vertices() {
    std::vector<std::pair<Rational, Box>> terms;
    for (int alpha = 0; alpha < 2; ++alpha) {
        for (int beta = 0; beta < 2; ++beta) {
            for (int gamma = 0; gamma < 2; ++gamma) {
                const int delta = (alpha & gamma) ^ beta;
                terms.emplace_back(frac(1, 8), make_local_vertex(alpha, beta, gamma, delta));
            }
        }
    }
    return mix(terms);
}

Box facet_centre_from_pr() {
    const std::vector<std::pair<Rational, Box>> terms = {
        {frac(1, 2), make_pr_box()},
        {frac(1, 2), make_identity_box()},
    };
    return mix(terms);
}

bool verify_d1_identity(const CouplerTensor& t) {
    const Box from_vertices = facet_centre_from_vertices();
    const Box from_pr = facet_centre_from_pr();
    if (from_vertices != from_pr) return false;

    // Coupler output on the vertex decomposition, using only the action on
    // deterministic boxes.
    Rational via_vertices = 0;
    for (int alpha = 0; alpha < 2; ++alpha) {
        for (int beta = 0; beta < 2; ++beta) {
            for (int gamma = 0; gamma < 2; ++gamma) {
                const int delta = (alpha & gamma) ^ beta;
                const Box vertex = make_local_vertex(alpha, beta, gamma, delta);
                via_vertices += frac(1, 8) * single_outcome_raw(t, vertex)[0];
            }
        }
    }

    // The PR weight in the second decomposition is 1/2, so equating the two
    // outputs determines the coupler's success probability on PR.
    const Rational on_identity = single_outcome_raw(t, make_identity_box())[0];
    const Rational implied_pr = 2 * (via_vertices - frac(1, 2) * on_identity);
    if (implied_pr != 1) return false;

    // The tensor's direct action must match the linear derivation.
    return single_outcome_raw(t, from_pr)[0] == via_vertices;
}

}  // namespace nlswap
