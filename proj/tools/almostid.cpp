// almostid: verify almost identities u_n ~ t_n, their Mellin-transform
// ingredients, and a gallery of classic near-integers.

#include <CLI11.hpp>

#include <iostream>
#include <string>

#include "almostid/almostid.hpp"

namespace {

struct RawOptions {
  std::string n;
  std::string bases = "2";
  std::string format = "text";
  std::string out;
  std::string tail_tol;
  std::string functions;
  std::string s;
  std::string x;
  std::string k;
  std::string u;
  std::string h;
  std::string items;
};

void add_common(CLI::App* sub, almostid::RunConfig& cfg, RawOptions& raw) {
  sub->add_option("--digits", cfg.digits, "Requested decimal digits (default $ALMOSTID_DIGITS or 40)");
  sub->add_option("--guard", cfg.guard, "Guard digits added to the working precision")->capture_default_str();
  sub->add_option("--format", raw.format, "Output format: json, csv or text")->capture_default_str();
  sub->add_option("--out", raw.out, "Write the report to this file instead of stdout");
}

}  // namespace

int main(int argc, char** argv) {
  using namespace almostid;

  RunConfig cfg;
  RawOptions raw;
  try {
    cfg.digits = default_digits();
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  }

  CLI::App app{"Arbitrary-precision verification of almost identities"};
  app.require_subcommand(1);

  auto* verify = app.add_subcommand("verify", "Check u_n(m) - t_n against the correction series");
  verify->add_option("--n", raw.n, "Index n >= 1")->required();
  verify->add_option("--base", raw.bases, "Base m >= 2")->capture_default_str();
  verify->add_option("--tail-tol", raw.tail_tol, "Override the series truncation tolerance");
  verify->add_flag("--strict", cfg.strict, "Do not credit tail bounds in the pass rule");
  add_common(verify, cfg, raw);

  auto* scan_cmd = app.add_subcommand("scan", "Verify a grid of (n, m)");
  scan_cmd->add_option("--n", raw.n, "Values and inclusive ranges, e.g. 1..6 or 1,3,5..9")->required();
  scan_cmd->add_option("--bases", raw.bases, "Comma-separated bases")->capture_default_str();
  scan_cmd->add_option("--tail-tol", raw.tail_tol, "Override the series truncation tolerance");
  scan_cmd->add_flag("--strict", cfg.strict, "Do not credit tail bounds in the pass rule");
  add_common(scan_cmd, cfg, raw);

  auto* mellin = app.add_subcommand("mellin", "Quadrature vs closed-form Mellin transforms");
  mellin->add_option("--function", raw.functions, "Comma list of g1, g2, fn(N)")->required();
  mellin->add_option("--s", raw.s, "Comma list of s in (0, 1/2), e.g. 1/8,1/4")->required();
  mellin->add_flag("--harmonic", cfg.harmonic, "Also check the harmonic-sum factor 1/(2^s - 1)");
  add_common(mellin, cfg, raw);

  auto* dual = app.add_subcommand("dual", "Direct sum vs residue expansion of G_1, G_2");
  dual->add_option("--n", raw.n, "1, 2 or 1,2")->required();
  dual->add_option("--x", raw.x, "Comma list of x in (0, 1/2)")->required();
  add_common(dual, cfg, raw);

  auto* lemma = app.add_subcommand("lemma", "Finite-difference check of the antiderivative recurrence");
  lemma->add_option("--n", raw.n, "n >= 3 (list or range)")->required();
  lemma->add_option("--k", raw.k, "Comma list of integers k")->required();
  lemma->add_option("--u", raw.u, "Comma list of evaluation points")->required();
  lemma->add_option("--step", raw.h, "Finite-difference step (default 10^-(digits/3))");
  add_common(lemma, cfg, raw);

  auto* gallery = app.add_subcommand("gallery", "Classic almost identities");
  gallery->add_option("--item", raw.items,
                      "Comma list of ramanujan37|58|163, triangle_l, e_pi_minus_pi, borwein, hickerson1..17, all")
      ->required();
  add_common(gallery, cfg, raw);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    cfg.command = parse_command(app.get_subcommands().front()->get_name());
    cfg.format = parse_format(raw.format);
    if (!raw.out.empty()) cfg.out_path = raw.out;
    if (!raw.tail_tol.empty()) cfg.tail_tol = raw.tail_tol;
    if (!raw.h.empty()) cfg.h = raw.h;
    cfg.ns = parse_n_spec(raw.n);
    cfg.bases = parse_bases(raw.bases);
    if (!raw.functions.empty()) cfg.functions = detail::split(raw.functions, ',');
    if (!raw.s.empty()) cfg.s_values = detail::split(raw.s, ',');
    if (!raw.x.empty()) cfg.xs = detail::split(raw.x, ',');
    if (!raw.u.empty()) cfg.us = detail::split(raw.u, ',');
    if (!raw.items.empty()) cfg.items = detail::split(raw.items, ',');
    for (const auto& k : detail::split(raw.k, ',')) {
      if (!k.empty()) cfg.ks.push_back(detail::parse_long(k, "k"));
    }
  } catch (const std::exception& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  }

  return run(cfg, std::cout, std::cerr);
}
