#pragma once

#include "nlswap/box.hpp"
#include "nlswap/coupler.hpp"
#include "nlswap/membership.hpp"
#include "nlswap/protocols.hpp"

#include <span>
#include <string>

namespace nlswap {

/// {"p": [[[["num/den" x2] x2] x2] x2]} in [x][y][a][b] order.
std::string box_to_json(const Box& box);

/// Accepts {"p": ...} or the named constructors
/// {"vertex": {"alpha":0,"beta":0,"gamma":0,"delta":0}}, {"pr": true},
/// {"noisy": {"xi":"1/2","gamma":"0"}}. Throws ParseError.
Box box_from_json(const std::string& text);

/// {"p": [["num/den" x2] x2]} in [y][b] order; also accepts
/// {"local": {"alpha":0,"beta":0}}.
std::string single_box_to_json(const SingleBox& box);
SingleBox single_box_from_json(const std::string& text);

/// {"schema_version":1,"canonicalization":"min-norm","coefficients":[32 x
/// "num/den"]} in [b'][y1][y2][b1][b2] row-major order.
std::string coupler_to_json(const CouplerTensor& tensor);
CouplerTensor coupler_from_json(const std::string& text);

std::string classification_to_json(const Classification& classification);
std::string swap_outcome_to_json(const SwapOutcome& outcome);
std::string single_outcome_to_json(const std::array<Rational, 2>& outcome);
std::string teleport_result_to_json(const TeleportResult& result);
std::string verification_report_to_json(const VerificationReport& report);
std::string inconsistency_report_to_json(const InconsistencyReport& report);

/// Header xi,gamma,ch_in,q,ch_out_success,swappable,tlm; one row per grid
/// point in sweep order; rationals as "num/den".
std::string sweep_to_csv(std::span<const SweepRecord> records);

}  // namespace nlswap
