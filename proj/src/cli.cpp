#include "p8q/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "CLI11.hpp"
#include "json.hpp"

#include "p8q/congruences.hpp"
#include "p8q/eta.hpp"
#include "p8q/identities.hpp"
#include "p8q/tables.hpp"

namespace p8q::cli {

namespace {

using nlohmann::json;

struct Common {
  std::string format = "text";
  std::string output;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void add_common(CLI::App* sub, Common& common)
{
  sub->add_option("--format", common.format, "Output format")
      ->check(CLI::IsMember({"text", "json", "csv"}))
      ->capture_default_str();
  sub->add_option("-o,--output", common.output, "Write output to this file instead of stdout");
}

// Emits to the --output file when given, otherwise to the caller's stream.
class Sink {
public:
  Sink(const Common& common, std::ostream& fallback)
  {
    if (common.output.empty()) {
      stream_ = &fallback;
      return;
    }
    file_.open(common.output);
    if (!file_)
      throw UsageError("cannot open output file '" + common.output + "'");
    stream_ = &file_;
  }
  std::ostream& get() { return *stream_; }

private:
  std::ofstream file_;
  std::ostream* stream_ = nullptr;
};

// ------------------------------------------------------------------ p8

struct P8Args {
  Common common;
  std::size_t n_max = 100;
  std::string ring = "exact";
  bool check_oracle = false;
};

int cmd_p8(const P8Args& a, std::ostream& out, std::ostream& err)
{
  const CoeffRing ring = parse_ring(a.ring);
  const TruncSeries p8 = p8_series(ring, a.n_max);

  if (a.check_oracle) {
    const auto oracle = p8_oracle(a.n_max);
    for (std::size_t n = 0; n <= a.n_max; ++n) {
      const bool same = ring == CoeffRing::exact_integer ? p8.coeff(n) == oracle[n]
                                                         : p8.coeff_mod2w(n) == reduce_mod2w(oracle[n]);
      if (!same) {
        fmt::print(err, "p8 mismatch at n={}: series {} vs oracle {}\n", n, p8.coeff(n).get_str(),
                   oracle[n].get_str());
        return counterexample;
      }
    }
  }

  Sink sink(a.common, out);
  auto& os = sink.get();
  if (a.common.format == "json") {
    json rows = json::array();
    for (std::size_t n = 0; n <= a.n_max; ++n)
      rows.push_back({{"n", n}, {"value", p8.coeff(n).get_str()}});
    os << rows.dump(2) << "\n";
  } else if (a.common.format == "csv") {
    os << "n,value\n";
    for (std::size_t n = 0; n <= a.n_max; ++n)
      fmt::print(os, "{},{}\n", n, p8.coeff(n).get_str());
  } else {
    for (std::size_t n = 0; n <= a.n_max; ++n)
      fmt::print(os, "{} {}\n", n, p8.coeff(n).get_str());
  }
  return ok;
}

// ------------------------------------------------------------------ verify

struct VerifyArgs {
  Common common;
  std::vector<std::string> tags;
  bool all = false;
  bool list = false;
  std::size_t order = 200;
  unsigned alpha = 1;
  std::size_t j_max = 12;
  std::string ring = "mod64";
};

int cmd_verify(const VerifyArgs& a, std::ostream& out, std::ostream& err)
{
  if (a.list) {
    for (const auto& c : verification_cases())
      fmt::print(out, "{:<10} {}{}\n", c.tag, c.summary, c.in_all ? "" : "  (not in --all)");
    return ok;
  }
  if (a.all == !a.tags.empty())
    throw UsageError("verify: give either --all or at least one --tag");
  for (const auto& t : a.tags)
    if (!is_known_case(t))
      throw UsageError("verify: unknown tag '" + t + "' (see verify --list)");
  if (a.alpha == 0)
    throw UsageError("verify: --alpha must be at least 1");

  VerifyOptions opts;
  opts.order = a.order;
  opts.alpha_max = a.alpha;
  opts.j_max = a.j_max;
  opts.congruence_ring = parse_ring(a.ring);

  std::vector<Report> reports;
  if (a.all) {
    reports = run_all(opts);
  } else {
    for (const auto& t : a.tags) {
      auto part = run_case(t, opts);
      reports.insert(reports.end(), part.begin(), part.end());
    }
  }

  Sink sink(a.common, out);
  auto& os = sink.get();
  if (a.common.format == "json") {
    os << json(reports).dump(2) << "\n";
  } else if (a.common.format == "csv") {
    os << "tag,order,mode,ring,pass,first_fail_index\n";
    for (const auto& r : reports)
      fmt::print(os, "{},{},{},{},{},{}\n", r.tag, r.order, mode_string(r), to_string(r.ring),
                 r.pass ? "pass" : "fail",
                 r.first_fail_index ? std::to_string(*r.first_fail_index) : std::string());
  } else {
    for (const auto& r : reports)
      os << to_text(r) << "\n";
  }
  for (const auto& r : reports)
    if (!r.pass) {
      fmt::print(err, "counterexample: {}\n", to_text(r));
      return counterexample;
    }
  return ok;
}

// ------------------------------------------------------------------ scan

struct ScanArgs {
  Common common;
  unsigned alpha_max = 1;
  std::uint64_t n_max = 100;
  std::string ring = "mod64";
  bool exact = false;
  bool no_exceptions = false;
  std::size_t max_order = std::size_t{1} << 20;
};

int cmd_scan(const ScanArgs& a, std::ostream& out, std::ostream& err)
{
  if (a.alpha_max == 0)
    throw UsageError("scan: --alpha-max must be at least 1");
  ScanOptions opts;
  opts.ring = a.exact ? CoeffRing::exact_integer : parse_ring(a.ring);
  opts.apply_exceptions = !a.no_exceptions;
  opts.max_order = a.max_order;

  std::vector<ScanResult> results;
  try {
    results = scan_all(a.alpha_max, a.n_max, opts);
  } catch (const SeriesError& e) {
    throw UsageError(e.what());
  } catch (const OrderOverflow& e) {
    throw UsageError(e.what());
  }

  Sink sink(a.common, out);
  auto& os = sink.get();
  if (a.common.format == "json") {
    os << json(results).dump(2) << "\n";
  } else if (a.common.format == "csv") {
    os << "id,alpha,step,residue,mod_exponent,n_max,verdict,counterexample_n,counterexample_v2\n";
    for (const auto& r : results)
      fmt::print(os, "{},{},{},{},{},{},{},{},{}\n", r.id, r.alpha, r.step, r.residue, r.mod_exponent,
                 r.n_max, r.pass ? "pass" : "fail",
                 r.counterexample ? std::to_string(r.counterexample->n) : std::string(),
                 r.counterexample ? r.counterexample->v2.to_string() : std::string());
  } else {
    for (const auto& r : results)
      os << to_text(r) << "\n";
  }
  for (const auto& r : results)
    if (!r.pass) {
      fmt::print(err, "counterexample: {}\n", to_text(r));
      return counterexample;
    }
  return ok;
}

// ------------------------------------------------------------------ table

struct TableArgs {
  Common common;
  std::string which;
  std::size_t rows = 8;
  std::size_t cols = 8;
  bool raw = false;
};

int cmd_table(const TableArgs& a, std::ostream& out, std::ostream&)
{
  if (a.rows == 0 || a.cols == 0)
    throw UsageError("table: --rows and --cols must be positive");
  if (a.which == "x" && a.rows > XTable::max_alpha)
    throw UsageError("table: the x table is available for at most " + std::to_string(XTable::max_alpha)
                     + " rows");

  std::vector<std::vector<std::string>> cells(a.rows, std::vector<std::string>(a.cols));
  for (std::size_t r = 1; r <= a.rows; ++r)
    for (std::size_t c = 1; c <= a.cols; ++c) {
      const mpz_class v = a.which == "m" ? m_entry(r, c) : x_entry(static_cast<unsigned>(r), c);
      cells[r - 1][c - 1] = a.raw ? v.get_str() : factored(v);
    }

  Sink sink(a.common, out);
  auto& os = sink.get();
  if (a.common.format == "json") {
    json doc{{"table", a.which}, {"rows", a.rows}, {"cols", a.cols},
             {"form", a.raw ? "decimal" : "factored"}, {"entries", cells}};
    os << doc.dump(2) << "\n";
  } else if (a.common.format == "csv") {
    os << "j,k,value\n";
    for (std::size_t r = 0; r < a.rows; ++r)
      for (std::size_t c = 0; c < a.cols; ++c)
        fmt::print(os, "{},{},{}\n", r + 1, c + 1, cells[r][c]);
  } else {
    std::vector<std::size_t> width(a.cols, 1);
    for (const auto& row : cells)
      for (std::size_t c = 0; c < a.cols; ++c)
        width[c] = std::max(width[c], row[c].size());
    for (const auto& row : cells) {
      for (std::size_t c = 0; c < a.cols; ++c)
        fmt::print(os, "{}{:>{}}", c == 0 ? "" : "  ", row[c], width[c]);
      os << "\n";
    }
  }
  return ok;
}

} // namespace

std::string factored(const mpz_class& n)
{
  if (sgn(n) == 0)
    return "0";
  const mpz_class mag = abs(n);
  const auto a = mpz_scan1(mag.get_mpz_t(), 0);
  mpz_class odd;
  mpz_tdiv_q_2exp(odd.get_mpz_t(), mag.get_mpz_t(), a);
  const char* sign = sgn(n) < 0 ? "-" : "";
  if (a == 0)
    return n.get_str();
  if (odd == 1)
    return fmt::format("{}2^{}", sign, a);
  return fmt::format("{}2^{}*{}", sign, a, odd.get_str());
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
  CLI::App app{"Exact q-series engine for 8-colour partitions"};
  app.require_subcommand(1);

  std::string default_format = "text";
  if (const char* env = std::getenv(format_env); env && *env) {
    const std::string f = env;
    if (f != "text" && f != "json" && f != "csv") {
      fmt::print(err, "error: {}='{}' is not one of text, json, csv\n", format_env, f);
      return usage_error;
    }
    default_format = f;
  }

  P8Args p8_args;
  VerifyArgs verify_args;
  ScanArgs scan_args;
  TableArgs table_args;
  for (Common* c : {&p8_args.common, &verify_args.common, &scan_args.common, &table_args.common})
    c->format = default_format;

  auto* p8 = app.add_subcommand("p8", "List p_8(n) for n <= n_max");
  add_common(p8, p8_args.common);
  p8->add_option("--n-max", p8_args.n_max, "Largest n")->capture_default_str();
  p8->add_option("--ring", p8_args.ring, "Coefficient ring")
      ->check(CLI::IsMember({"exact", "mod64"}))
      ->capture_default_str();
  p8->add_flag("--check-oracle", p8_args.check_oracle, "Cross-check against the partition-counting oracle");

  auto* verify = app.add_subcommand("verify", "Verify series identities and congruence steps");
  add_common(verify, verify_args.common);
  verify->add_option("--tag", verify_args.tags, "Case to run (repeatable)");
  verify->add_flag("--all", verify_args.all, "Run every case");
  verify->add_flag("--list", verify_args.list, "List the available tags");
  verify->add_option("--order", verify_args.order, "Truncation order")->capture_default_str();
  verify->add_option("--alpha", verify_args.alpha, "Largest alpha for parametrised cases")
      ->capture_default_str();
  verify->add_option("--j-max", verify_args.j_max, "Largest power of S")->capture_default_str();
  verify->add_option("--ring", verify_args.ring, "Ring for congruence cases")
      ->check(CLI::IsMember({"exact", "mod64"}))
      ->capture_default_str();

  auto* scan = app.add_subcommand("scan", "Scan the congruence families");
  add_common(scan, scan_args.common);
  scan->add_option("--alpha-max", scan_args.alpha_max, "Largest alpha")->capture_default_str();
  scan->add_option("--n-max", scan_args.n_max, "Largest n per family")->capture_default_str();
  scan->add_option("--ring", scan_args.ring, "Coefficient ring")
      ->check(CLI::IsMember({"exact", "mod64"}))
      ->capture_default_str();
  scan->add_flag("--exact", scan_args.exact, "Shorthand for --ring exact");
  scan->add_flag("--no-exceptions", scan_args.no_exceptions,
                 "Do not skip generalised pentagonal n for E102");
  scan->add_option("--max-order", scan_args.max_order, "Largest p_8 index to compute")
      ->capture_default_str();

  auto* table = app.add_subcommand("table", "Dump a window of the m or x table");
  add_common(table, table_args.common);
  table->add_option("which", table_args.which, "m or x")->required()->check(CLI::IsMember({"m", "x"}));
  table->add_option("--rows", table_args.rows, "Number of rows")->capture_default_str();
  table->add_option("--cols", table_args.cols, "Number of columns")->capture_default_str();
  table->add_flag("--raw", table_args.raw, "Print decimal integers instead of 2^a*b");

  std::vector<const char*> argv{"p8q"};
  for (const auto& s : args)
    argv.push_back(s.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return ok;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return ok;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return usage_error;
  }

  try {
    if (*p8)
      return cmd_p8(p8_args, out, err);
    if (*verify)
      return cmd_verify(verify_args, out, err);
    if (*scan)
      return cmd_scan(scan_args, out, err);
    if (*table)
      return cmd_table(table_args, out, err);
  } catch (const UsageError& e) {
    fmt::print(err, "error: {}\n", e.what());
    return usage_error;
  } catch (const std::invalid_argument& e) {
    fmt::print(err, "error: {}\n", e.what());
    return usage_error;
  } catch (const std::exception& e) {
    fmt::print(err, "error: {}\n", e.what());
    return usage_error;
  }
  return usage_error;
}

} // namespace p8q::cli
