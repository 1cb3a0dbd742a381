#pragma once

// JSON encodings. Big integers are always decimal strings; small machine
// integers (x, y, k, A, scan bounds, fold multipliers) are JSON numbers.

#include <string>
#include <vector>

#include <json.hpp>

#include "zaremba/engines.hpp"

namespace zaremba::json {

using nlohmann::json;

inline json quotients_to_json(const ContinuedFraction& cf) {
  json out = json::array();
  for (const Integer& a : cf.quotients()) out.push_back(to_decimal(a));
  return out;
}

inline ContinuedFraction quotients_from_json(const json& j) {
  if (!j.is_array()) throw MalformedSequence("quotients must be a JSON array");
  std::vector<Integer> q;
  q.reserve(j.size());
  for (const json& item : j) {
    if (!item.is_string()) throw MalformedSequence("quotients must be decimal strings");
    q.push_back(parse_decimal(item.get<std::string>()));
  }
  return ContinuedFraction(std::move(q));
}

inline json fraction_to_json(const ProperFraction& f) {
  return {{"num", to_decimal(f.numerator())}, {"den", to_decimal(f.denominator())}};
}

inline ProperFraction fraction_from_json(const json& j) {
  if (!j.is_object() || !j.contains("num") || !j.contains("den") || !j["num"].is_string() ||
      !j["den"].is_string())
    throw InvalidFraction("expected {\"num\": \"...\", \"den\": \"...\"}");
  return ProperFraction(parse_decimal(j["num"].get<std::string>()),
                        parse_decimal(j["den"].get<std::string>()));
}

inline json scan_report_to_json(const ScanReport& r) {
  return {{"A", to_u64(r.bound)}, {"lo", r.lo}, {"hi", r.hi}, {"exceptions", r.exceptions}};
}

inline ScanReport scan_report_from_json(const json& j) {
  ScanReport r;
  r.bound = j.at("A").get<std::uint64_t>();
  r.lo = j.at("lo").get<std::uint64_t>();
  r.hi = j.at("hi").get<std::uint64_t>();
  r.exceptions = j.at("exceptions").get<std::vector<std::uint64_t>>();
  return r;
}

/// Certificate schema. "seed_exponent" is written only when it differs from 1.
inline json certificate_to_json(const Certificate& c) {
  json steps = json::array();
  for (const ScheduledFold& s : c.schedule.steps) steps.push_back(to_u64(s.multiplier));
  json schedule = {{"seed", std::string(seed_name(c.schedule.seed))}, {"steps", steps}};
  if (c.schedule.seed_exponent != 1) schedule["seed_exponent"] = c.schedule.seed_exponent;
  return {{"x", c.x},
          {"y", c.y},
          {"k", c.k},
          {"A", to_u64(c.bound)},
          {"quotients", quotients_to_json(c.cf)},
          {"numerator", to_decimal(c.numerator)},
          {"denominator", to_decimal(c.denominator)},
          {"schedule", schedule}};
}

inline Certificate certificate_from_json(const json& j) {
  try {
    const auto positive = [&](const char* key) {
      const json& v = j.at(key);
      if (!v.is_number_unsigned() || v.get<std::uint64_t>() == 0)
        throw MalformedCertificate(std::string("\"") + key + "\" must be a positive integer");
      return v.get<std::uint64_t>();
    };
    const auto decimal = [&](const char* key) {
      const json& v = j.at(key);
      if (!v.is_string())
        throw MalformedCertificate(std::string("\"") + key + "\" must be a decimal string");
      return parse_decimal(v.get<std::string>());
    };

    const std::uint64_t x = positive("x");
    const std::uint64_t y = positive("y");
    const std::uint64_t k = positive("k");
    const Integer bound = positive("A");

    const json& js = j.at("schedule");
    FoldSchedule schedule;
    schedule.k = k;
    const std::string seed = js.at("seed").get<std::string>();
    if (seed == "d")
      schedule.seed = SeedSelector::D;
    else if (seed == "xd")
      schedule.seed = SeedSelector::XD;
    else
      throw MalformedCertificate("schedule.seed must be \"d\" or \"xd\"");
    if (js.contains("seed_exponent")) schedule.seed_exponent = js["seed_exponent"].get<std::uint64_t>();
    for (const json& z : js.at("steps")) {
      if (!z.is_number_unsigned() || z.get<std::uint64_t>() == 0)
        throw MalformedCertificate("fold multipliers must be positive integers");
      const Integer m = z.get<std::uint64_t>();
      schedule.steps.push_back({m, detail::tag_for(m, x, y)});
    }

    return Certificate{x, y, k, bound, quotients_from_json(j.at("quotients")),
                       decimal("numerator"), decimal("denominator"), std::move(schedule)};
  } catch (const MalformedCertificate&) {
    throw;
  } catch (const std::exception& e) {
    throw MalformedCertificate(e.what());
  }
}

}  // namespace zaremba::json
