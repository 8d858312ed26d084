#include "nlswap/coupler.hpp"

#include "nlswap/errors.hpp"
#include "nlswap/linsys.hpp"
#include "nlswap/membership.hpp"

#include <random>
#include <set>
#include <sstream>

namespace nlswap {

CouplerTensor CouplerTensor::from_coefficients(
    std::array<Rational, kCoefficients> coefficients) {
    CouplerTensor t;
    t.c_ = std::move(coefficients);
    return t;
}

CouplerTensor CouplerTensor::scaled(const Rational& factor) const {
    std::array<Rational, kCoefficients> scaled = c_;
    for (auto& coefficient : scaled) coefficient *= factor;
    return from_coefficients(std::move(scaled));
}

TripartiteBox TripartiteBox::from_entries(std::array<Rational, kEntries> entries) {
    TripartiteBox tri;
    tri.p_ = std::move(entries);
    return tri;
}

bool VerificationReport::all_pass() const {
    for (const auto& check : checks) {
        if (!check.pass) return false;
    }
    return true;
}

const VerificationCheck* VerificationReport::find(const std::string& name) const {
    for (const auto& check : checks) {
        if (check.name == name) return &check;
    }
    return nullptr;
}

namespace {

std::array<Rational, TripartiteBox::kEntries> pair_contraction_raw(const CouplerTensor& t,
                                                                   const Box& ab,
                                                                   const Box& bc) {
    std::array<Rational, TripartiteBox::kEntries> p{};
    for (int x = 0; x < 2; ++x) {
        for (int z = 0; z < 2; ++z) {
            for (int a = 0; a < 2; ++a) {
                for (int bp = 0; bp < 2; ++bp) {
                    for (int c = 0; c < 2; ++c) {
                        Rational sum = 0;
                        for (int y1 = 0; y1 < 2; ++y1) {
                            for (int y2 = 0; y2 < 2; ++y2) {
                                for (int b1 = 0; b1 < 2; ++b1) {
                                    for (int b2 = 0; b2 < 2; ++b2) {
                                        sum += t.coefficient(bp, y1, y2, b1, b2) *
                                               ab.entry(x, y1, a, b1) *
                                               bc.entry(y2, z, b2, c);
                                    }
                                }
                            }
                        }
                        p[TripartiteBox::index(x, z, a, bp, c)] = std::move(sum);
                    }
                }
            }
        }
    }
    return p;
}

Rational branch_mass(const std::array<Rational, TripartiteBox::kEntries>& p, int x, int z,
                     int bp) {
    Rational mass = 0;
    for (int a = 0; a < 2; ++a) {
        for (int c = 0; c < 2; ++c) mass += p[TripartiteBox::index(x, z, a, bp, c)];
    }
    return mass;
}

/// Bob-side marginal of ab and Alice-side marginal of bc are the outer
/// parties' product marginal; no-signalling makes them input-independent.
Rational product_marginal(const Box& ab, const Box& bc, int x, int a, int z, int c) {
    const Rational alice = ab.entry(x, 0, a, 0) + ab.entry(x, 0, a, 1);
    const Rational charlie = bc.entry(0, z, 0, c) + bc.entry(0, z, 1, c);
    return alice * charlie;
}

struct ConstraintSystem {
    linsys::Matrix a;
    linsys::Vector b;
};

void add_unique_row(ConstraintSystem& sys, std::set<linsys::Vector>& seen,
                    linsys::Vector row, Rational rhs) {
    row.push_back(std::move(rhs));
    if (!seen.insert(row).second) return;
    sys.b.push_back(row.back());
    row.pop_back();
    sys.a.push_back(std::move(row));
}

/// The coupler's defining equalities over the 32 coefficients:
///  - branch-exact action on the PR pair with success probability 1/3,
///  - single-box action (2/3)*CH on every genuine vertex,
///  - the non-signalling marginal identity over all vertex pairs.
ConstraintSystem build_constraint_system() {
    ConstraintSystem sys;
    std::set<linsys::Vector> seen;
    const auto& vertices = VertexId::genuine_set();
    const Box pr = make_pr_box();
    const Box pf = failure_box();
    const Rational two_thirds = frac(2, 3);

    for (const auto& id : vertices) {
        const Box v = id.to_box();
        linsys::Vector row(CouplerTensor::kCoefficients, Rational(0));
        for (int y1 = 0; y1 < 2; ++y1) {
            for (int y2 = 0; y2 < 2; ++y2) {
                for (int b1 = 0; b1 < 2; ++b1) {
                    for (int b2 = 0; b2 < 2; ++b2) {
                        row[CouplerTensor::index(0, y1, y2, b1, b2)] =
                            v.entry(y1, y2, b1, b2);
                    }
                }
            }
        }
        add_unique_row(sys, seen, std::move(row), two_thirds * ch_value(v));
    }

    for (int bp = 0; bp < 2; ++bp) {
        for (int x = 0; x < 2; ++x) {
            for (int z = 0; z < 2; ++z) {
                for (int a = 0; a < 2; ++a) {
                    for (int c = 0; c < 2; ++c) {
                        linsys::Vector row(CouplerTensor::kCoefficients, Rational(0));
                        for (int y1 = 0; y1 < 2; ++y1) {
                            for (int y2 = 0; y2 < 2; ++y2) {
                                for (int b1 = 0; b1 < 2; ++b1) {
                                    for (int b2 = 0; b2 < 2; ++b2) {
                                        row[CouplerTensor::index(bp, y1, y2, b1, b2)] =
                                            pr.entry(x, y1, a, b1) * pr.entry(y2, z, b2, c);
                                    }
                                }
                            }
                        }
                        const Rational rhs = bp == 0
                                                 ? frac(1, 3) * pr.entry(x, z, a, c)
                                                 : two_thirds * pf.entry(x, z, a, c);
                        add_unique_row(sys, seen, std::move(row), rhs);
                    }
                }
            }
        }
    }

    for (const auto& left : vertices) {
        const Box v = left.to_box();
        for (const auto& right : vertices) {
            const Box w = right.to_box();
            for (int x = 0; x < 2; ++x) {
                for (int z = 0; z < 2; ++z) {
                    for (int a = 0; a < 2; ++a) {
                        for (int c = 0; c < 2; ++c) {
                            linsys::Vector row(CouplerTensor::kCoefficients, Rational(0));
                            for (int y1 = 0; y1 < 2; ++y1) {
                                for (int y2 = 0; y2 < 2; ++y2) {
                                    for (int b1 = 0; b1 < 2; ++b1) {
                                        for (int b2 = 0; b2 < 2; ++b2) {
                                            const Rational weight =
                                                v.entry(x, y1, a, b1) * w.entry(y2, z, b2, c);
                                            row[CouplerTensor::index(0, y1, y2, b1, b2)] = weight;
                                            row[CouplerTensor::index(1, y1, y2, b1, b2)] = weight;
                                        }
                                    }
                                }
                            }
                            add_unique_row(sys, seen, std::move(row),
                                           product_marginal(v, w, x, a, z, c));
                        }
                    }
                }
            }
        }
    }
    return sys;
}

std::string describe(const Rational& value) { return to_fraction_string(value); }

/// Runs the defining checks; mixtures > 0 adds the CH-proportionality law
/// on random rational mixtures of genuine vertices.
std::vector<VerificationCheck> run_constraint_checks(const CouplerTensor& t, int mixtures,
                                                     std::uint64_t seed) {
    std::vector<VerificationCheck> checks;
    const auto& vertices = VertexId::genuine_set();
    const Rational two_thirds = frac(2, 3);
    constexpr int kMaxWitnesses = 3;

    const auto finish = [&checks](std::string name, const std::vector<std::string>& failures) {
        VerificationCheck check;
        check.name = std::move(name);
        check.pass = failures.empty();
        std::ostringstream witness;
        for (std::size_t i = 0; i < failures.size() && i < kMaxWitnesses; ++i) {
            if (i) witness << "; ";
            witness << failures[i];
        }
        if (failures.size() > kMaxWitnesses) witness << "; ...";
        check.witness = witness.str();
        checks.push_back(std::move(check));
    };

    {
        std::vector<std::string> failures;
        const Box pr = make_pr_box();
        const Box pf = failure_box();
        const auto tri = pair_contraction_raw(t, pr, pr);
        for (int x = 0; x < 2; ++x) {
            for (int z = 0; z < 2; ++z) {
                for (int a = 0; a < 2; ++a) {
                    for (int c = 0; c < 2; ++c) {
                        const Rational success =
                            tri[TripartiteBox::index(x, z, a, 0, c)];
                        const Rational failure =
                            tri[TripartiteBox::index(x, z, a, 1, c)];
                        const Rational want_success = frac(1, 3) * pr.entry(x, z, a, c);
                        const Rational want_failure = two_thirds * pf.entry(x, z, a, c);
                        if (success != want_success || failure != want_failure) {
                            std::ostringstream item;
                            item << "entry(" << x << z << a << c << ") b'=0 "
                                 << describe(success) << " vs " << describe(want_success)
                                 << ", b'=1 " << describe(failure) << " vs "
                                 << describe(want_failure);
                            failures.push_back(item.str());
                        }
                    }
                }
            }
        }
        finish("pr-pair-action", failures);
    }

    {
        std::vector<std::string> law_failures;
        std::vector<std::string> norm_failures;
        for (const auto& id : vertices) {
            const auto outcome = single_outcome_raw(t, id.to_box());
            const Rational expected = two_thirds * ch_value(id.to_box());
            if (outcome[0] != expected) {
                law_failures.push_back(id.name() + ": expected " + describe(expected) +
                                       ", got " + describe(outcome[0]));
            }
            if (outcome[0] + outcome[1] != 1) {
                norm_failures.push_back(id.name() + ": branches sum to " +
                                        describe(outcome[0] + outcome[1]));
            }
        }
        finish("single-box-vertex-law", law_failures);
        finish("single-box-normalization", norm_failures);
    }

    {
        std::vector<std::string> marginal_failures;
        std::vector<std::string> positivity_failures;
        std::vector<std::string> independence_failures;
        std::vector<std::string> closure_failures;
        for (const auto& left : vertices) {
            const Box v = left.to_box();
            for (const auto& right : vertices) {
                const Box w = right.to_box();
                const auto tri = pair_contraction_raw(t, v, w);
                const std::string pair_name = left.name() + "*" + right.name();

                for (int e = 0; e < TripartiteBox::kEntries; ++e) {
                    if (tri[e] < 0) {
                        positivity_failures.push_back(pair_name + ": entry " +
                                                      std::to_string(e) + " = " +
                                                      describe(tri[e]));
                        break;
                    }
                }
                for (int x = 0; x < 2; ++x) {
                    for (int z = 0; z < 2; ++z) {
                        for (int a = 0; a < 2; ++a) {
                            for (int c = 0; c < 2; ++c) {
                                const Rational total =
                                    tri[TripartiteBox::index(x, z, a, 0, c)] +
                                    tri[TripartiteBox::index(x, z, a, 1, c)];
                                if (total != product_marginal(v, w, x, a, z, c)) {
                                    marginal_failures.push_back(
                                        pair_name + " at (" + std::to_string(x) + "," +
                                        std::to_string(z) + "," + std::to_string(a) + "," +
                                        std::to_string(c) + ")");
                                }
                            }
                        }
                    }
                }

                const Rational q = branch_mass(tri, 0, 0, 0);
                bool independent = true;
                for (int x = 0; x < 2 && independent; ++x) {
                    for (int z = 0; z < 2; ++z) {
                        if (branch_mass(tri, x, z, 0) != q) {
                            independence_failures.push_back(pair_name);
                            independent = false;
                            break;
                        }
                    }
                }
                if (!independent) continue;

                for (int bp = 0; bp < 2; ++bp) {
                    const Rational mass = bp == 0 ? q : Rational(1) - q;
                    if (mass == 0) continue;
                    if (mass < 0) {
                        closure_failures.push_back(pair_name + ": negative branch mass");
                        continue;
                    }
                    std::array<Rational, Box::kEntries> conditioned{};
                    for (int x = 0; x < 2; ++x) {
                        for (int z = 0; z < 2; ++z) {
                            for (int a = 0; a < 2; ++a) {
                                for (int c = 0; c < 2; ++c) {
                                    conditioned[Box::index(x, z, a, c)] =
                                        tri[TripartiteBox::index(x, z, a, bp, c)] / mass;
                                }
                            }
                        }
                    }
                    const Box box = Box::from_entries(std::move(conditioned));
                    if (!validate(box).ok() || !is_genuine(box)) {
                        closure_failures.push_back(pair_name + " b'=" + std::to_string(bp));
                    }
                }
            }
        }
        finish("pair-marginal-identity", marginal_failures);
        finish("output-positivity", positivity_failures);
        finish("success-probability-input-independence", independence_failures);
        finish("branch-closure", closure_failures);
    }

    if (mixtures > 0) {
        std::vector<std::string> failures;
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<int> dist(0, 60);
        for (int trial = 0; trial < mixtures; ++trial) {
            std::vector<long> raw(vertices.size());
            long total = 0;
            for (auto& value : raw) {
                value = dist(rng);
                total += value;
            }
            if (total == 0) {
                raw[0] = 1;
                total = 1;
            }
            std::vector<std::pair<Rational, Box>> terms;
            terms.reserve(raw.size());
            for (std::size_t i = 0; i < raw.size(); ++i) {
                terms.emplace_back(frac(raw[i], total), vertices[i].to_box());
            }
            const Box box = mix(terms);
            const auto outcome = single_outcome_raw(t, box);
            if (outcome[0] != two_thirds * ch_value(box)) {
                failures.push_back("trial " + std::to_string(trial) + ": got " +
                                   describe(outcome[0]));
            }
        }
        finish("ch-proportionality-on-mixtures", failures);
    }

    return checks;
}

}  // namespace

CouplerTensor synthesize_coupler() {
    const ConstraintSystem sys = build_constraint_system();
    const auto family = linsys::solve_affine(sys.a, sys.b);
    if (!family) {
        throw InfeasibleError("coupler equality constraints are inconsistent");
    }
    const linsys::Vector point = linsys::min_norm_point(*family);

    std::array<Rational, CouplerTensor::kCoefficients> coefficients;
    for (int i = 0; i < CouplerTensor::kCoefficients; ++i) coefficients[i] = point[i];
    const CouplerTensor tensor = CouplerTensor::from_coefficients(std::move(coefficients));

    for (const auto& check : run_constraint_checks(tensor, 0, 0)) {
        if (!check.pass) {
            throw InfeasibleError("synthesized coupler failed gate '" + check.name +
                                  "': " + check.witness);
        }
    }
    return tensor;
}

const CouplerTensor& canonical_coupler() {
    static const CouplerTensor tensor = synthesize_coupler();
    return tensor;
}

TripartiteBox apply_to_pair(const CouplerTensor& t, const Box& ab, const Box& bc) {
    auto p = pair_contraction_raw(t, ab, bc);
    for (int x = 0; x < 2; ++x) {
        for (int z = 0; z < 2; ++z) {
            for (int a = 0; a < 2; ++a) {
                for (int bp = 0; bp < 2; ++bp) {
                    for (int c = 0; c < 2; ++c) {
                        const Rational& value = p[TripartiteBox::index(x, z, a, bp, c)];
                        if (value < 0) {
                            std::ostringstream what;
                            what << "coupler output entry (x=" << x << ", z=" << z
                                 << ", a=" << a << ", b'=" << bp << ", c=" << c
                                 << ") is negative: " << to_fraction_string(value)
                                 << "; the inputs are not genuine boxes";
                            throw InvalidOutputError(what.str());
                        }
                    }
                }
            }
        }
    }
    return TripartiteBox::from_entries(std::move(p));
}

SwapOutcome condition_on_outcome(const TripartiteBox& tri) {
    const Rational q = branch_mass(tri.entries(), 0, 0, 0);
    for (int x = 0; x < 2; ++x) {
        for (int z = 0; z < 2; ++z) {
            if (branch_mass(tri.entries(), x, z, 0) != q) {
                throw InvalidOutputError(
                    "success probability depends on the outer inputs; "
                    "the tripartite distribution signals to Bob");
            }
        }
    }
    if (q == 0) {
        throw DegenerateBranchError("success branch has probability zero");
    }

    const auto conditioned = [&tri](int bp, const Rational& mass) {
        std::array<Rational, Box::kEntries> entries{};
        for (int x = 0; x < 2; ++x) {
            for (int z = 0; z < 2; ++z) {
                for (int a = 0; a < 2; ++a) {
                    for (int c = 0; c < 2; ++c) {
                        entries[Box::index(x, z, a, c)] = tri.entry(x, z, a, bp, c) / mass;
                    }
                }
            }
        }
        return Box::from_entries(std::move(entries));
    };

    SwapOutcome outcome{q, conditioned(0, q), std::nullopt};
    if (q != 1) outcome.failure_box = conditioned(1, Rational(1) - q);
    return outcome;
}

std::array<Rational, 2> single_outcome_raw(const CouplerTensor& t, const Box& box) {
    std::array<Rational, 2> p{Rational(0), Rational(0)};
    for (int bp = 0; bp < 2; ++bp) {
        for (int y1 = 0; y1 < 2; ++y1) {
            for (int y2 = 0; y2 < 2; ++y2) {
                for (int b1 = 0; b1 < 2; ++b1) {
                    for (int b2 = 0; b2 < 2; ++b2) {
                        p[bp] += t.coefficient(bp, y1, y2, b1, b2) * box.entry(y1, y2, b1, b2);
                    }
                }
            }
        }
    }
    return p;
}

std::array<Rational, 2> apply_to_single(const CouplerTensor& t, const Box& box) {
    const auto p = single_outcome_raw(t, box);
    for (int bp = 0; bp < 2; ++bp) {
        if (p[bp] < 0 || p[bp] > 1) {
            throw InvalidProbabilityError(
                "coupler branch b'=" + std::to_string(bp) + " has invalid probability " +
                    to_fraction_string(p[bp]),
                p[bp]);
        }
    }
    return p;
}

Box failure_box() {
    const Box pr = make_pr_box();
    const Rational three_halves = frac(3, 2);
    const Rational quarter = frac(1, 4);
    std::array<Rational, Box::kEntries> entries;
    for (int e = 0; e < Box::kEntries; ++e) {
        entries[e] = three_halves * (quarter - pr.entries()[e] / 3);
    }
    return Box::from_entries(std::move(entries));
}

VerificationReport verify_coupler(const CouplerTensor& t, int random_mixtures,
                                  std::uint64_t seed) {
    VerificationReport report;
    report.checks = run_constraint_checks(t, random_mixtures, seed);
    const ConstraintSystem sys = build_constraint_system();
    const auto family = linsys::solve_affine(sys.a, sys.b);
    report.solution_space_dim =
        family ? static_cast<int>(family->nullspace.size()) : -1;
    return report;
}

}  // namespace nlswap
