// JSON / CSV / text rendering of verification results. Every real number
// crosses this boundary as a decimal string in the [-]0.ddd e+/-x form;
// field order is fixed so output is byte-for-byte reproducible.

#ifndef ALMOSTID_REPORT_HPP
#define ALMOSTID_REPORT_HPP

#include <json.hpp>

#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "almostid/gallery.hpp"
#include "almostid/mellin.hpp"
#include "almostid/series.hpp"

namespace almostid {

using Json = nlohmann::ordered_json;

enum class Format { json, csv, text };

inline Format parse_format(std::string_view s) {
  if (s == "json") return Format::json;
  if (s == "csv") return Format::csv;
  if (s == "text") return Format::text;
  throw DomainError("unknown format '" + std::string(s) + "' (expected json, csv or text)");
}

/// A homogeneous list of records plus its column order.
struct Table {
  std::vector<std::string> columns;
  std::vector<Json> rows;
};

namespace columns {
inline const std::vector<std::string> identity = {"n",        "base",        "digits",   "guard",      "u",
                                                   "target_rational", "target_has_pi", "delta", "r_predicted",
                                                   "residual", "tail_bounds", "terms_used", "pass", "error"};
inline const std::vector<std::string> mellin = {"kind", "function", "s", "numeric", "closed", "abs_err",
                                                 "tolerance", "digits", "pass"};
inline const std::vector<std::string> dual = {"n", "x", "direct", "expansion", "abs_err", "tolerance", "digits", "pass"};
inline const std::vector<std::string> lemma = {"n", "k", "u", "h", "residual", "bound", "digits", "pass"};
inline const std::vector<std::string> gallery = {"id",    "description", "value", "reference", "exact_reference",
                                                  "delta", "expectation", "digits", "pass"};
}  // namespace columns

inline Json to_json(const IdentityReport& r) {
  Json j;
  j["n"] = r.n;
  j["base"] = r.base_m;
  j["digits"] = r.digits;
  j["guard"] = r.guard;
  j["u"] = r.u.value.to_decimal();
  j["target_rational"] = r.target.q.to_string();
  j["target_has_pi"] = r.target.has_pi;
  j["delta"] = r.delta.to_decimal();
  j["r_predicted"] = r.r_predicted.value.to_decimal();
  j["residual"] = r.residual.to_decimal();
  j["tail_bounds"] = Json::array({r.u.tail_bound.to_decimal(), r.r_predicted.tail_bound.to_decimal()});
  j["terms_used"] = Json::array({r.u.terms_used, r.r_predicted.terms_used});
  j["pass"] = r.passed;
  j["error"] = "";
  return j;
}

/// Inverse of to_json(IdentityReport). Values are re-read at the precision
/// recorded in the digits/guard fields, which reproduces them bit for bit.
inline IdentityReport identity_report_from_json(const Json& j) {
  try {
    const PrecisionContext ctx(j.at("digits").get<int>(), j.at("guard").get<int>());
    IdentityReport r;
    r.n = j.at("n").get<int>();
    r.base_m = j.at("base").get<long>();
    r.digits = ctx.digits();
    r.guard = ctx.guard();
    r.u.value = ctx.parse(j.at("u").get<std::string>());
    r.u.tail_bound = ctx.parse(j.at("tail_bounds").at(0).get<std::string>());
    r.u.terms_used = j.at("terms_used").at(0).get<long>();
    r.target.q = ExactRational::parse(j.at("target_rational").get<std::string>());
    r.target.has_pi = j.at("target_has_pi").get<bool>();
    r.delta = ctx.parse(j.at("delta").get<std::string>());
    r.r_predicted.value = ctx.parse(j.at("r_predicted").get<std::string>());
    r.r_predicted.tail_bound = ctx.parse(j.at("tail_bounds").at(1).get<std::string>());
    r.r_predicted.terms_used = j.at("terms_used").at(1).get<long>();
    r.residual = ctx.parse(j.at("residual").get<std::string>());
    r.passed = j.at("pass").get<bool>();
    return r;
  } catch (const Json::exception& e) {
    throw DomainError(std::string("malformed identity report: ") + e.what());
  }
}

inline Json to_json(const ScanCell& c, int digits, int guard) {
  if (c.report) return to_json(*c.report);
  Json j;
  for (const auto& col : columns::identity) j[col] = nullptr;
  j["n"] = c.n;
  j["base"] = c.base_m;
  j["digits"] = digits;
  j["guard"] = guard;
  j["pass"] = false;
  j["error"] = c.error;
  return j;
}

inline Json to_json(const MellinCheck& c, std::string_view kind, const PrecisionContext& ctx) {
  Json j;
  j["kind"] = kind;
  j["function"] = c.function.id();
  j["s"] = c.s.to_decimal();
  j["numeric"] = c.numeric.to_decimal();
  j["closed"] = c.closed.to_decimal();
  j["abs_err"] = c.abs_err.to_decimal();
  j["tolerance"] = detail::check_tol(ctx).to_decimal();
  j["digits"] = ctx.digits();
  j["pass"] = c.passed;
  return j;
}

inline Json to_json(const DualCheck& c, const PrecisionContext& ctx) {
  Json j;
  j["n"] = c.n;
  j["x"] = c.x.to_decimal();
  j["direct"] = c.direct.to_decimal();
  j["expansion"] = c.expansion.to_decimal();
  j["abs_err"] = c.abs_err.to_decimal();
  j["tolerance"] = detail::check_tol(ctx).to_decimal();
  j["digits"] = ctx.digits();
  j["pass"] = c.passed;
  return j;
}

inline Json to_json(const LemmaCheck& c, const PrecisionContext& ctx) {
  Json j;
  j["n"] = c.n;
  j["k"] = c.k;
  j["u"] = c.u.to_decimal();
  j["h"] = c.h.to_decimal();
  j["residual"] = c.residual.to_decimal();
  j["bound"] = c.bound.to_decimal();
  j["digits"] = ctx.digits();
  j["pass"] = c.passed;
  return j;
}

inline Json to_json(const GalleryEntry& e) {
  Json j;
  j["id"] = e.id;
  j["description"] = e.description;
  j["value"] = e.value.to_decimal();
  j["reference"] = e.reference.to_decimal();
  j["exact_reference"] = e.exact_reference ? Json(e.exact_reference->get_str()) : Json(nullptr);
  j["delta"] = e.delta.to_decimal();
  j["expectation"] = e.expectation;
  j["digits"] = e.digits;
  j["pass"] = e.passed;
  return j;
}

namespace detail {

inline std::string cell_text(const Json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_array()) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) s += ';';
      s += cell_text(v[i]);
    }
    return s;
  }
  return v.dump();
}

// RFC 4180: quote fields containing a comma, quote or line break; double
// embedded quotes.
inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + '"';
}

}  // namespace detail

/// JSON: a single object when `single` is set and there is exactly one row,
/// otherwise an array. CSV: header row then one row per record, CRLF line
/// ends. Text: "key = value" blocks separated by blank lines.
inline std::string serialize(const Table& t, Format format, bool single = false) {
  std::ostringstream out;
  switch (format) {
    case Format::json: {
      if (single && t.rows.size() == 1) {
        out << t.rows.front().dump(2) << '\n';
      } else {
        Json arr = Json::array();
        for (const auto& r : t.rows) arr.push_back(r);
        out << arr.dump(2) << '\n';
      }
      break;
    }
    case Format::csv: {
      for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << detail::csv_field(t.columns[i]);
      out << "\r\n";
      for (const auto& r : t.rows) {
        for (std::size_t i = 0; i < t.columns.size(); ++i) {
          const auto it = r.find(t.columns[i]);
          out << (i ? "," : "") << detail::csv_field(it == r.end() ? std::string() : detail::cell_text(*it));
        }
        out << "\r\n";
      }
      break;
    }
    case Format::text: {
      bool first = true;
      for (const auto& r : t.rows) {
        if (!first) out << '\n';
        first = false;
        for (const auto& col : t.columns) {
          const auto it = r.find(col);
          if (it == r.end()) continue;
          const std::string v = detail::cell_text(*it);
          if (col == "error" && v.empty()) continue;
          out << col << " = " << v << '\n';
        }
      }
      break;
    }
  }
  return out.str();
}

}  // namespace almostid

#endif  // ALMOSTID_REPORT_HPP
