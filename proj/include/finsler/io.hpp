#pragma once

// Metric specification files and machine-readable reports.

#include <cstdint>
#include <string>
#include <string_view>

#include "json.hpp"

#include "finsler/holonomy.hpp"
#include "finsler/metrics.hpp"

namespace finsler {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "0.3.0";

/// Raised for malformed or inconsistent metric specification files.
class SpecParseError : public Error {
 public:
  using Error::Error;
};

/// Builds a MetricSpec from
///   {family, n, a, sign, alpha, c, lambda, profile: {F: {c0, cos, sin}, P: {...}},
///    F0: {quadratic, linear}, P0: {quadratic, linear}, label}
/// Custom F0 / P0 are sqrt(y^T Q y) + <b, y> (the root is dropped when Q is absent).
MetricSpec parse_metric_spec(const Json& j);
MetricSpec load_metric_spec(const std::string& path);

/// Condition-C parameters carried by a spec file (a, sign), if any.
CertifyParams randers_params_from(const Json& j, CertifyParams base);

Json hypothesis_to_json(const Hypothesis& h);
Json certificate_to_json(const GramCertificate& c);
Json report_to_json(const CertificationReport& r);

/// %.17g formatting, used for every number written to CSV.
std::string format_double(double v);

std::uint64_t fnv1a64(std::string_view data);
std::string hex64(std::uint64_t v);

}  // namespace finsler
