// Command dispatch shared by the command-line tool and its tests.
//
// Exit status: 0 when every item verified, 1 when any item failed, 2 on a
// usage or domain error.

#ifndef ALMOSTID_CLI_HPP
#define ALMOSTID_CLI_HPP

#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "almostid/gallery.hpp"
#include "almostid/mellin.hpp"
#include "almostid/report.hpp"
#include "almostid/series.hpp"

namespace almostid {

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Command { verify, scan, mellin, dual, lemma, gallery };

inline constexpr int kDefaultDigits = 40;
inline constexpr const char* kDigitsEnv = "ALMOSTID_DIGITS";

inline Command parse_command(std::string_view s) {
  if (s == "verify") return Command::verify;
  if (s == "scan") return Command::scan;
  if (s == "mellin") return Command::mellin;
  if (s == "dual") return Command::dual;
  if (s == "lemma") return Command::lemma;
  if (s == "gallery") return Command::gallery;
  throw UsageError("unknown command '" + std::string(s) + "'");
}

struct RunConfig {
  Command command = Command::verify;
  std::vector<int> ns;
  std::vector<long> bases{2};
  int digits = kDefaultDigits;
  int guard = PrecisionContext::kDefaultGuard;
  Format format = Format::text;
  std::optional<std::string> out_path;

  // verify / scan
  std::optional<std::string> tail_tol;
  bool strict = false;

  // mellin
  std::vector<std::string> functions;
  std::vector<std::string> s_values;
  bool harmonic = false;

  // dual
  std::vector<std::string> xs;

  // lemma
  std::vector<long> ks;
  std::vector<std::string> us;
  std::optional<std::string> h;

  // gallery
  std::vector<std::string> items;
};

/// Default digits: ALMOSTID_DIGITS when set to a positive integer, else 40.
inline int default_digits() {
  if (const char* env = std::getenv(kDigitsEnv)) {
    try {
      std::size_t used = 0;
      const int d = std::stoi(env, &used);
      if (used == std::string_view(env).size() && d > 0) return d;
    } catch (const std::exception&) {
    }
    throw UsageError(std::string(kDigitsEnv) + " must be a positive integer, got '" + env + "'");
  }
  return kDefaultDigits;
}

namespace detail {

inline std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.emplace_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

inline long parse_long(std::string_view s, std::string_view what) {
  std::string t(s);
  try {
    std::size_t used = 0;
    const long v = std::stol(t, &used);
    if (used == t.size()) return v;
  } catch (const std::exception&) {
  }
  throw UsageError("invalid " + std::string(what) + " '" + t + "'");
}

}  // namespace detail

/// "4", "1..6", "1,3,5..7".
inline std::vector<int> parse_n_spec(std::string_view spec) {
  std::vector<int> out;
  if (spec.empty()) return out;
  for (const auto& part : detail::split(spec, ',')) {
    const auto dots = part.find("..");
    if (dots == std::string::npos) {
      out.push_back(static_cast<int>(detail::parse_long(part, "n")));
      continue;
    }
    const long lo = detail::parse_long(std::string_view(part).substr(0, dots), "n range start");
    const long hi = detail::parse_long(std::string_view(part).substr(dots + 2), "n range end");
    if (hi - lo > 100000) throw UsageError("n range too large: " + part);
    for (long n = lo; n <= hi; ++n) out.push_back(static_cast<int>(n));
  }
  return out;
}

/// "2", "2,4,9".
inline std::vector<long> parse_bases(std::string_view spec) {
  std::vector<long> out;
  for (const auto& part : detail::split(spec, ',')) out.push_back(detail::parse_long(part, "base"));
  return out;
}

/// "1/4" as an exact ratio, anything else as a decimal string.
inline BigReal parse_real(std::string_view text, const PrecisionContext& ctx) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return ctx.parse(text);
  const ExactRational q = ExactRational::parse(text);
  return q.to_real(ctx);
}

inline void validate(const RunConfig& c) {
  if (c.digits < 1) throw UsageError("--digits must be positive");
  if (c.guard < PrecisionContext::kMinGuard) {
    throw UsageError("--guard must be at least " + std::to_string(PrecisionContext::kMinGuard));
  }
  switch (c.command) {
    case Command::verify:
    case Command::scan:
      if (c.digits < 20) throw UsageError("verify/scan need --digits >= 20");
      if (c.command == Command::verify && c.ns.size() != 1) throw UsageError("verify takes exactly one --n");
      if (c.command == Command::verify && c.bases.size() != 1) throw UsageError("verify takes exactly one --base");
      for (int n : c.ns) {
        if (n < 1) throw UsageError("n must be >= 1, got " + std::to_string(n));
      }
      for (long m : c.bases) {
        if (m < 2) throw UsageError("bases must be >= 2, got " + std::to_string(m));
      }
      if (c.command == Command::scan && c.bases.empty()) throw UsageError("scan needs at least one base");
      break;
    case Command::mellin:
      if (c.functions.empty() || c.s_values.empty()) throw UsageError("mellin needs --function and --s");
      break;
    case Command::dual:
      if (c.ns.empty() || c.xs.empty()) throw UsageError("dual needs --n and --x");
      break;
    case Command::lemma:
      if (c.ns.empty() || c.ks.empty() || c.us.empty()) throw UsageError("lemma needs --n, --k and --u");
      break;
    case Command::gallery:
      if (c.items.empty()) throw UsageError("gallery needs --item");
      break;
  }
}

namespace detail {

inline Table run_table(const RunConfig& c, bool& all_passed) {
  PrecisionContext ctx(c.digits, c.guard);
  if (c.tail_tol) ctx = ctx.with_tail_tol(ctx.parse(*c.tail_tol));
  Table t;
  auto note = [&all_passed](bool ok) { all_passed = all_passed && ok; };

  switch (c.command) {
    case Command::verify:
    case Command::scan: {
      t.columns = columns::identity;
      const VerifyPolicy policy{!c.strict};
      for (const auto& cell : scan(c.ns, c.bases, ctx, policy)) {
        note(cell.report && cell.report->passed);
        t.rows.push_back(to_json(cell, ctx.digits(), ctx.guard()));
      }
      break;
    }
    case Command::mellin: {
      t.columns = columns::mellin;
      for (const auto& id : c.functions) {
        const MellinFunction fn = MellinFunction::parse(id);
        for (const auto& sv : c.s_values) {
          const BigReal s = parse_real(sv, ctx);
          const MellinCheck m = mellin_check(fn, s, ctx);
          note(m.passed);
          t.rows.push_back(to_json(m, "mellin", ctx));
          if (c.harmonic) {
            const MellinCheck h = harmonic_factor_check(fn, s, ctx);
            note(h.passed);
            t.rows.push_back(to_json(h, "harmonic", ctx));
          }
        }
      }
      break;
    }
    case Command::dual: {
      t.columns = columns::dual;
      for (int n : c.ns) {
        for (const auto& xv : c.xs) {
          const DualCheck d = dual_check(n, parse_real(xv, ctx), ctx);
          note(d.passed);
          t.rows.push_back(to_json(d, ctx));
        }
      }
      break;
    }
    case Command::lemma: {
      t.columns = columns::lemma;
      for (int n : c.ns) {
        for (long k : c.ks) {
          for (const auto& uv : c.us) {
            const BigReal u = parse_real(uv, ctx);
            const LemmaCheck l =
                c.h ? lemma_check(n, k, u, parse_real(*c.h, ctx), ctx) : lemma_check(n, k, u, ctx);
            note(l.passed);
            t.rows.push_back(to_json(l, ctx));
          }
        }
      }
      break;
    }
    case Command::gallery: {
      t.columns = columns::gallery;
      std::vector<std::string> ids;
      for (const auto& item : c.items) {
        if (item == "all") {
          for (const auto& id : gallery_ids()) ids.push_back(id);
        } else {
          ids.push_back(item);
        }
      }
      for (const auto& id : ids) {
        const GalleryEntry e = gallery_item(id, ctx);
        note(e.passed);
        t.rows.push_back(to_json(e));
      }
      break;
    }
  }
  return t;
}

}  // namespace detail

/// Executes the command and writes the report to config.out_path, or to
/// `out` when no path is given. Diagnostics go to `err`.
inline int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    validate(config);
    bool all_passed = true;
    const Table table = detail::run_table(config, all_passed);
    const std::string text = serialize(table, config.format, config.command == Command::verify);
    if (config.out_path) {
      std::ofstream f(*config.out_path, std::ios::binary);
      if (!f) {
        err << "error: cannot open output file '" << *config.out_path << "'\n";
        return 2;
      }
      f << text;
    } else {
      out << text;
    }
    return all_passed ? 0 : 1;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return 2;
  } catch (const ConvergenceError& e) {
    err << "convergence error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace almostid

#endif  // ALMOSTID_CLI_HPP
