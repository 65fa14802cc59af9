#include "finsler/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace finsler {

namespace {

template <class T>
T field_or(const Json& j, const char* key, T fallback) {
  if (!j.contains(key) || j.at(key).is_null()) return fallback;
  return j.at(key).get<T>();
}

std::vector<double> vector_field(const Json& j, const char* key) {
  if (!j.contains(key)) return {};
  if (!j.at(key).is_array()) throw SpecParseError(std::string("'") + key + "' must be an array of numbers");
  return j.at(key).get<std::vector<double>>();
}

PolarProfile profile_from_json(const Json& j, const char* which) {
  if (!j.is_object()) throw SpecParseError(std::string("profile.") + which + " must be an object");
  return PolarProfile::fourier(field_or<double>(j, "c0", 0.0), vector_field(j, "cos"), vector_field(j, "sin"));
}

// sqrt(y^T Q y) + <b, y>
ScalarProgram norm_program(const Json& j, int n, const char* which) {
  if (!j.is_object()) throw SpecParseError(std::string(which) + " must be an object");
  std::vector<double> Q;
  const bool has_q = j.contains("quadratic");
  if (has_q) {
    const auto rows = j.at("quadratic").get<std::vector<std::vector<double>>>();
    if (static_cast<int>(rows.size()) != n) throw SpecParseError(std::string(which) + ".quadratic must be n x n");
    for (const auto& r : rows) {
      if (static_cast<int>(r.size()) != n) throw SpecParseError(std::string(which) + ".quadratic must be n x n");
      Q.insert(Q.end(), r.begin(), r.end());
    }
  }
  std::vector<double> b = vector_field(j, "linear");
  if (!b.empty() && static_cast<int>(b.size()) != n) throw SpecParseError(std::string(which) + ".linear must have n entries");
  if (b.empty()) b.assign(static_cast<std::size_t>(n), 0.0);
  return ScalarProgram([Q, b, n, has_q](auto x, auto y) {
    using T = elem_t<decltype(x)>;
    T out = dot(b, y);
    if (has_q) {
      T q(0.0);
      for (int i = 0; i < n; ++i) {
        for (int k = 0; k < n; ++k) {
          const double c = Q[static_cast<std::size_t>(i * n + k)];
          if (c != 0.0) q += y[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(k)] * c;
        }
      }
      out += sqrt(q);
    }
    return out;
  });
}

}  // namespace

MetricSpec parse_metric_spec(const Json& j) {
  try {
    if (!j.is_object()) throw SpecParseError("metric spec must be a JSON object");
    if (!j.contains("family")) throw SpecParseError("metric spec needs a 'family' field");
    const Family family = parse_family(j.at("family").get<std::string>());
    const std::vector<double> a = vector_field(j, "a");
    int n = field_or<int>(j, "n", a.empty() ? 2 : static_cast<int>(a.size()));
    if (n < 2) throw SpecParseError("'n' must be >= 2");
    std::optional<double> lambda;
    if (j.contains("lambda") && !j.at("lambda").is_null()) lambda = j.at("lambda").get<double>();

    switch (family) {
      case Family::Euclidean:
        return MetricSpec::euclidean(n).with_lambda(lambda.value_or(0.0));
      case Family::Klein:
        return MetricSpec::klein(n).with_lambda(lambda.value_or(-1.0));
      case Family::RandersShen: {
        std::vector<double> av = a.empty() ? std::vector<double>(static_cast<std::size_t>(n), 0.0) : a;
        if (static_cast<int>(av.size()) != n) throw SpecParseError("'a' must have n entries");
        return MetricSpec::randers_shen(av, field_or<int>(j, "sign", 1), lambda.value_or(-0.25));
      }
      case Family::BryantShenPointwise:
        return MetricSpec::bryant_shen_pointwise(n, field_or<double>(j, "alpha", 0.0), lambda.value_or(1.0));
      case Family::PolarProfilePointwise: {
        if (!j.contains("profile")) throw SpecParseError("PolarProfilePointwise needs a 'profile' object");
        const Json& p = j.at("profile");
        if (!p.contains("F") || !p.contains("P")) throw SpecParseError("profile needs 'F' and 'P'");
        if (n != 2) throw SpecParseError("PolarProfilePointwise is two-dimensional");
        return MetricSpec::polar_profile_pointwise(profile_from_json(p.at("F"), "F"), profile_from_json(p.at("P"), "P"),
                                                   lambda.value_or(0.0));
      }
      case Family::CustomPointwise: {
        if (!j.contains("F0") || !j.contains("P0")) throw SpecParseError("CustomPointwise needs 'F0' and 'P0'");
        return MetricSpec::custom_pointwise(n, norm_program(j.at("F0"), n, "F0"), norm_program(j.at("P0"), n, "P0"),
                                            lambda.value_or(0.0), field_or<std::string>(j, "label", "custom"));
      }
    }
    throw SpecParseError("unknown family");
  } catch (const SpecParseError&) {
    throw;
  } catch (const nlohmann::json::exception& e) {
    throw SpecParseError(std::string("metric spec: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw SpecParseError(std::string("metric spec: ") + e.what());
  }
}

MetricSpec load_metric_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecParseError("cannot open metric spec '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw SpecParseError("malformed JSON in '" + path + "': " + e.what());
  }
  return parse_metric_spec(j);
}

CertifyParams randers_params_from(const Json& j, CertifyParams base) {
  if (!base.randers_a && j.contains("a") && j.at("a").is_array()) {
    base.randers_a = j.at("a").get<std::vector<double>>();
    base.randers_sign = field_or<int>(j, "sign", 1);
  }
  return base;
}

namespace {

// JSON has no NaN or infinity; keep them visible as strings.
Json number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

}  // namespace

Json hypothesis_to_json(const Hypothesis& h) {
  Json j;
  j["name"] = h.name;
  j["pass"] = h.pass;
  j["residual"] = number(h.residual);
  return j;
}

Json certificate_to_json(const GramCertificate& c) {
  Json j;
  Json sv = Json::array();
  for (double s : c.singular_values) sv.push_back(number(s));
  j["singular_values"] = sv;
  j["rank"] = c.rank;
  j["rel_gap"] = number(c.rel_gap);
  j["N"] = c.grid_size;
  j["verdict"] = std::string(gram_verdict_name(c.verdict));
  return j;
}

Json report_to_json(const CertificationReport& r) {
  Json j;
  j["condition"] = std::string(condition_name(r.condition));
  Json hs = Json::array();
  for (const auto& h : r.hypotheses) hs.push_back(hypothesis_to_json(h));
  j["hypotheses"] = hs;
  Json sv = Json::array();
  for (double s : r.certificate.singular_values) sv.push_back(number(s));
  j["singular_values"] = sv;
  j["rank"] = r.certificate.rank;
  j["rel_gap"] = number(r.certificate.rel_gap);
  j["grid"] = {{"N", r.certificate.grid_size},
               {"doubled_N_consistent", r.doubled_N_consistent},
               {"doubled", certificate_to_json(r.certificate_doubled)}};
  if (r.recovered_c) j["recovered_c"] = number(*r.recovered_c);
  j["verdict"] = r.verdict;
  return j;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char ch : data) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace finsler
