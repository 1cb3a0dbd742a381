#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "zaremba/engines.hpp"
#include "zaremba/json_io.hpp"

namespace zaremba::cli {

enum class Command { Expand, Fold, Check, Scan, Certify, CertifyOld, Verify, Corollary };
enum class Format { Text, Json };

enum ExitCode : int { kSuccess = 0, kFailure = 1, kUsage = 2 };

/// Parsed command line. Big-integer arguments stay as text until run()
/// validates them.
struct RunConfig {
  Command command = Command::Expand;
  Format format = Format::Text;
  std::string output_path;

  std::string numerator, denominator;  // expand
  std::string quotients, z;            // fold
  std::string d, bound;                // check
  bool all_witnesses = false;          // check --all
  std::uint64_t lo = 0, hi = 0;        // scan
  std::string scan_bound;
  unsigned jobs = 1;
  std::uint64_t x = 0, y = 0, k = 0;   // certify, certify-old
  std::uint64_t old_d = 0;
  std::uint64_t base_depth = 3;
  std::string input_path;              // verify
  std::uint64_t corollary = 0;         // corollary
  std::uint64_t kmax = 64;
};

struct ParseResult {
  std::optional<RunConfig> config;
  int exit_code = kSuccess;
};

namespace detail {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline Integer parse_arg(const std::string& text, const char* what) {
  try {
    return parse_decimal(text);
  } catch (const std::invalid_argument&) {
    throw UsageError(std::string(what) + " must be a non-negative decimal integer, got '" +
                     text + "'");
  }
}

inline std::vector<Integer> parse_list(const std::string& text) {
  std::vector<Integer> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(parse_arg(item, "--cf entry"));
  if (out.empty()) throw UsageError("--cf needs at least one quotient");
  return out;
}

// Writes to a sibling temp file and renames, so a failed run leaves nothing.
inline void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  const std::filesystem::path target(path);
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream file(tmp, std::ios::binary | std::ios::trunc);
    if (!file) throw UsageError("cannot open '" + tmp.string() + "' for writing");
    file << text;
    if (!file.flush()) throw UsageError("failed writing '" + tmp.string() + "'");
  }
  std::filesystem::rename(tmp, target);
}

struct CorollaryRow {
  std::uint64_t k = 0;
  std::string method;
  std::optional<Certificate> certificate;
  std::optional<ZarembaWitness> witness;
  bool verified = false;
  std::string note;
};

// (x, y) with base = x^2 y for the bases certified by the (x, y) algorithm.
inline std::optional<std::pair<std::uint64_t, std::uint64_t>> corollary_xy(std::uint64_t base) {
  switch (base) {
    case 12: return std::pair<std::uint64_t, std::uint64_t>{2, 3};
    case 18: return std::pair<std::uint64_t, std::uint64_t>{3, 2};
    case 5: return std::pair<std::uint64_t, std::uint64_t>{1, 5};
    default: return std::nullopt;
  }
}

// Which construction covers powers of `base` with quotients <= 5 (4 for 5).
inline CorollaryRow corollary_row(std::uint64_t base, std::uint64_t k,
                                  const std::optional<SeedPair>& seed) {
  CorollaryRow row{k, "", std::nullopt, std::nullopt, false, ""};
  auto from_certificate = [&](Certificate c) {
    row.verified = verify_certificate(c).ok();
    row.certificate = std::move(c);
  };
  switch (base) {
    case 12:
    case 18:
    case 5: {
      if (!seed) throw std::logic_error("missing seed pair");
      row.method = "alg2(x=" + std::to_string(seed->x) + ",y=" + std::to_string(seed->y) + ")";
      from_certificate(certify_alg2(*seed, k));
      break;
    }
    case 2:
    case 3:
    case 6: {
      const std::uint64_t depth = base == 2 ? 5 : 3;
      row.method = "alg1(d=" + std::to_string(base) + ",base_depth=" + std::to_string(depth) + ")";
      try {
        from_certificate(certify_alg1(base, k, depth, Integer(5)));
      } catch (const NoBaseWitness&) {
        // 6 itself has only [0;6] and [0;1,5]: 5-Zaremba but with no
        // conditioned expansion, so it is settled by the exhaustive search.
        row.method = "exhaustive";
        row.witness = is_zaremba(power(Integer(base), k), 5);
        row.verified = row.witness && evaluate(row.witness->cf) == row.witness->fraction() &&
                       row.witness->cf.max_quotient() <= 5;
        row.note = "no conditioned seed";
      }
      break;
    }
    default:
      throw UsageError("corollary base must be one of 12, 18, 2, 3, 5, 6");
  }
  return row;
}

inline int run_corollary(const RunConfig& cfg, std::ostream& out) {
  std::optional<SeedPair> seed;
  if (const auto xy = corollary_xy(cfg.corollary)) seed = check_seed(xy->first, xy->second);
  std::vector<CorollaryRow> rows;
  for (std::uint64_t k = 1; k <= cfg.kmax; ++k)
    rows.push_back(corollary_row(cfg.corollary, k, seed));
  const bool all_ok = std::all_of(rows.begin(), rows.end(), [](const auto& r) { return r.verified; });

  std::ostringstream text;
  if (cfg.format == Format::Json) {
    json::json arr = json::json::array();
    for (const auto& r : rows) {
      json::json item = {{"k", r.k}, {"method", r.method}, {"verified", r.verified}};
      if (r.certificate) item["certificate"] = json::certificate_to_json(*r.certificate);
      if (r.witness) {
        item["witness"] = json::fraction_to_json(r.witness->fraction());
        item["quotients"] = json::quotients_to_json(r.witness->cf);
      }
      arr.push_back(std::move(item));
    }
    text << json::json{{"base", cfg.corollary}, {"kmax", cfg.kmax}, {"all_verified", all_ok},
                       {"rows", arr}}
                .dump(2)
         << '\n';
  } else {
    text << "powers of " << cfg.corollary << ", k = 1.." << cfg.kmax << '\n';
    text << std::left << std::setw(5) << "k" << std::setw(28) << "method" << std::setw(8) << "A"
         << std::setw(8) << "digits" << std::setw(8) << "length" << std::setw(6) << "max"
         << "verify\n";
    for (const auto& r : rows) {
      const ContinuedFraction& cf = r.certificate ? r.certificate->cf : r.witness->cf;
      const Integer& den = r.certificate ? r.certificate->denominator : r.witness->d;
      const Integer bound = r.certificate ? r.certificate->bound : Integer(5);
      text << std::left << std::setw(5) << r.k << std::setw(28) << r.method << std::setw(8)
           << to_decimal(bound) << std::setw(8) << to_decimal(den).size() << std::setw(8)
           << cf.size() << std::setw(6) << to_decimal(cf.max_quotient())
           << (r.verified ? "ok" : "FAIL");
      if (!r.note.empty()) text << "  (" << r.note << ")";
      text << '\n';
    }
    text << (all_ok ? "all " : "NOT all ") << rows.size() << " powers verified\n";
  }
  write_output(cfg.output_path, text.str(), out);
  return all_ok ? kSuccess : kFailure;
}

inline int run_unchecked(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const bool as_json = cfg.format == Format::Json;
  switch (cfg.command) {
    case Command::Expand: {
      const Integer b = parse_arg(cfg.numerator, "b");
      const Integer d = parse_arg(cfg.denominator, "d");
      std::optional<ProperFraction> f;
      try {
        f.emplace(b, d);
      } catch (const InvalidFraction& e) {
        throw UsageError(e.what());
      }
      const ContinuedFraction cf = expand(*f);
      if (as_json)
        write_output(cfg.output_path, json::quotients_to_json(cf).dump() + "\n", out);
      else
        write_output(cfg.output_path, cf.str() + "\n", out);
      return kSuccess;
    }

    case Command::Fold: {
      std::optional<ContinuedFraction> cf;
      std::optional<FoldStep> step;
      try {
        cf.emplace(parse_list(cfg.quotients));
        step.emplace(parse_arg(cfg.z, "z"));
      } catch (const Error& e) {
        throw UsageError(e.what());
      }
      ContinuedFraction folded = [&] {
        try {
          return z_fold(*cf, *step);
        } catch (const FoldPreconditionViolated& e) {
          throw UsageError(e.what());
        }
      }();
      const ProperFraction value = folded_value(evaluate(*cf), parity_of(*cf), *step);
      std::string text;
      if (as_json) {
        text = json::json{{"quotients", json::quotients_to_json(folded)},
                          {"fraction", json::fraction_to_json(value)}}
                   .dump() +
               "\n";
      } else {
        text = folded.str() + "\nnumerator " + to_decimal(value.numerator()) + "\ndenominator " +
               to_decimal(value.denominator()) + "\n";
      }
      write_output(cfg.output_path, text, out);
      return kSuccess;
    }

    case Command::Check: {
      const Integer d = parse_arg(cfg.d, "d");
      const Integer bound = parse_arg(cfg.bound, "A");
      if (d < 2) throw UsageError("d must be >= 2");
      if (bound < 1) throw UsageError("A must be >= 1");
      std::vector<ZarembaWitness> found;
      if (cfg.all_witnesses) {
        found = all_witnesses(d, bound);
      } else if (auto w = is_zaremba(d, bound)) {
        found.push_back(std::move(*w));
      }
      std::string text;
      if (as_json) {
        json::json list = json::json::array();
        for (const auto& w : found)
          list.push_back({{"fraction", json::fraction_to_json(w.fraction())},
                          {"quotients", json::quotients_to_json(w.cf)}});
        json::json doc = {{"d", to_decimal(d)}, {"A", to_decimal(bound)}};
        if (cfg.all_witnesses)
          doc["witnesses"] = list;
        else
          doc["witness"] = found.empty() ? json::json(nullptr) : list.front();
        text = doc.dump() + "\n";
      } else if (found.empty()) {
        text = "none\n";
      } else {
        for (const auto& w : found) text += w.fraction().str() + " = " + w.cf.str() + "\n";
      }
      write_output(cfg.output_path, text, out);
      return found.empty() ? kFailure : kSuccess;
    }

    case Command::Scan: {
      const Integer bound = parse_arg(cfg.scan_bound, "A");
      if (cfg.lo < 2 || cfg.lo > cfg.hi) throw UsageError("scan needs 2 <= lo <= hi");
      if (bound < 1) throw UsageError("A must be >= 1");
      const ScanReport report = scan_range(cfg.lo, cfg.hi, bound, cfg.jobs);
      write_output(cfg.output_path, json::scan_report_to_json(report).dump() + "\n", out);
      return report.exceptions.empty() ? kSuccess : kFailure;
    }

    case Command::Certify: {
      if (cfg.x < 1 || cfg.y < 1 || Integer(cfg.x) * cfg.y < 4)
        throw UsageError("certify needs positive x, y with x*y >= 4");
      if (cfg.k < 1) throw UsageError("k must be >= 1");
      const auto seed = check_seed(cfg.x, cfg.y);
      if (!seed) {
        err << "no seed pair for x=" << cfg.x << ", y=" << cfg.y << '\n';
        return kFailure;
      }
      const Certificate c = certify_alg2(*seed, cfg.k);
      write_output(cfg.output_path, json::certificate_to_json(c).dump(2) + "\n", out);
      return kSuccess;
    }

    case Command::CertifyOld: {
      if (cfg.old_d < 3) throw UsageError("certify-old needs d >= 3 (A = d - 1 >= 2)");
      if (cfg.k < 1) throw UsageError("k must be >= 1");
      if (cfg.base_depth < 1) throw UsageError("--base-depth must be >= 1");
      try {
        const Certificate c = certify_alg1(cfg.old_d, cfg.k, cfg.base_depth);
        write_output(cfg.output_path, json::certificate_to_json(c).dump(2) + "\n", out);
      } catch (const NoBaseWitness& e) {
        err << e.what() << '\n';
        return kFailure;
      }
      return kSuccess;
    }

    case Command::Verify: {
      std::ifstream file(cfg.input_path, std::ios::binary);
      if (!file) throw UsageError("cannot read '" + cfg.input_path + "'");
      std::optional<Certificate> c;
      try {
        c = json::certificate_from_json(json::json::parse(file));
      } catch (const std::exception& e) {
        err << "malformed certificate: " << e.what() << '\n';
        out << "FAIL Malformed\n";
        return kFailure;
      }
      const VerifyResult r = verify_certificate(*c);
      out << (r ? "ok" : "FAIL " + std::string(reason_name(r.reason))) << '\n';
      return r ? kSuccess : kFailure;
    }

    case Command::Corollary:
      if (cfg.kmax < 1) throw UsageError("--kmax must be >= 1");
      return run_corollary(cfg, out);
  }
  return kUsage;
}

}  // namespace detail

/// Parses argv-style arguments (program name excluded).
inline ParseResult parse_command_line(const std::vector<std::string>& args, std::ostream& out,
                                      std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Exact continued fractions and bounded-quotient certificates for powers"};
  app.name("zaremba");
  app.require_subcommand(1);
  app.fallthrough();

  std::string format = "text";
  app.add_option("--format", format, "Output format for ad hoc commands")
      ->check(CLI::IsMember({"text", "json"}));
  app.add_option("-o,--output", cfg.output_path, "Write output to this file");

  auto* expand_cmd = app.add_subcommand("expand", "Canonical expansion of b/d");
  expand_cmd->add_option("b", cfg.numerator)->required();
  expand_cmd->add_option("d", cfg.denominator)->required();

  auto* fold_cmd = app.add_subcommand("fold", "Apply a z-fold to an expansion");
  fold_cmd->add_option("--cf", cfg.quotients, "Comma-separated quotients a1,a2,...")->required();
  fold_cmd->add_option("--z", cfg.z, "Fold multiplier")->required();

  auto* check_cmd = app.add_subcommand("check", "Smallest witness that d is A-Zaremba");
  check_cmd->add_option("d", cfg.d)->required();
  check_cmd->add_option("A", cfg.bound)->required();
  check_cmd->add_flag("--all", cfg.all_witnesses, "List every witness");

  auto* scan_cmd = app.add_subcommand("scan", "Exceptions to A-Zaremba in [lo, hi]");
  scan_cmd->add_option("lo", cfg.lo)->required();
  scan_cmd->add_option("hi", cfg.hi)->required();
  scan_cmd->add_option("A", cfg.scan_bound)->required();
  cfg.jobs = std::max(1u, std::thread::hardware_concurrency());
  scan_cmd->add_option("-j,--jobs", cfg.jobs, "Worker threads")->check(CLI::PositiveNumber);

  auto* certify_cmd = app.add_subcommand("certify", "Certificate for (x^2 y)^k, bound xy - 1");
  certify_cmd->add_option("x", cfg.x)->required();
  certify_cmd->add_option("y", cfg.y)->required();
  certify_cmd->add_option("k", cfg.k)->required();

  auto* old_cmd = app.add_subcommand("certify-old", "Certificate for d^k, bound d - 1");
  old_cmd->add_option("d", cfg.old_d)->required();
  old_cmd->add_option("k", cfg.k)->required();
  old_cmd->add_option("--base-depth", cfg.base_depth, "Exponents settled by search");

  auto* verify_cmd = app.add_subcommand("verify", "Re-check a certificate file");
  verify_cmd->add_option("path", cfg.input_path)->required();

  auto* corollary_cmd = app.add_subcommand("corollary", "Certify and verify d^1..d^K");
  corollary_cmd->add_option("base", cfg.corollary)
      ->required()
      ->check(CLI::IsMember({12, 18, 2, 3, 5, 6}));
  corollary_cmd->add_option("--kmax", cfg.kmax, "Largest exponent");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return {std::nullopt, code == 0 ? kSuccess : kUsage};
  }

  cfg.format = format == "json" ? Format::Json : Format::Text;
  if (expand_cmd->parsed()) cfg.command = Command::Expand;
  if (fold_cmd->parsed()) cfg.command = Command::Fold;
  if (check_cmd->parsed()) cfg.command = Command::Check;
  if (scan_cmd->parsed()) cfg.command = Command::Scan;
  if (certify_cmd->parsed()) cfg.command = Command::Certify;
  if (old_cmd->parsed()) cfg.command = Command::CertifyOld;
  if (verify_cmd->parsed()) cfg.command = Command::Verify;
  if (corollary_cmd->parsed()) cfg.command = Command::Corollary;
  return {std::move(cfg), kSuccess};
}

inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    return detail::run_unchecked(cfg, out, err);
  } catch (const detail::UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
}

inline int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  ParseResult parsed = parse_command_line(args, out, err);
  if (!parsed.config) return parsed.exit_code;
  return run(*parsed.config, out, err);
}

}  // namespace zaremba::cli
