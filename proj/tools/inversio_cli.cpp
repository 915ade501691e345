// inversio command-line front end. Links only the C API.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "inversio/inversio.h"

namespace {

using Json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;
constexpr int kDefaultPrecision = 15;

enum class Format { Table, Csv, Json };

struct OutputSpec {
  Format format = Format::Table;
  int precision = kDefaultPrecision;
  bool exact = false;
};

struct CommonOptions {
  std::string format = "table";
  std::optional<int> precision;
  bool exact = false;
  bool floating = false;
  std::string out_path;
};

struct ResultDeleter {
  void operator()(inv_result* r) const { inv_result_free(r); }
};
using ResultPtr = std::unique_ptr<inv_result, ResultDeleter>;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CallError : public std::runtime_error {
 public:
  CallError(inv_status status, const std::string& what) : std::runtime_error(what), status_(status) {}
  inv_status status() const { return status_; }

 private:
  inv_status status_;
};

// Takes the out-pointer by reference: argument order is unspecified, so the
// pointer must be read only after the call has filled it.
ResultPtr check(inv_status status, inv_result*& raw) {
  ResultPtr owned(raw);
  if (status != INV_OK) throw CallError(status, inv_last_error());
  return owned;
}

std::string format_float(double v, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", precision, v);
  return buf;
}

std::string field_display(const inv_result* r, size_t row, size_t i, const OutputSpec& spec) {
  switch (inv_result_field_kind(r, row, i)) {
    case INV_KIND_FLOAT:
      return format_float(inv_result_field_double(r, row, i), spec.precision);
    default:
      return inv_result_field_text(r, row, i);
  }
}

Json field_json(const inv_result* r, size_t row, size_t i, const OutputSpec& spec) {
  const char* text = inv_result_field_text(r, row, i);
  switch (inv_result_field_kind(r, row, i)) {
    case INV_KIND_NULL:
      return nullptr;
    case INV_KIND_RATIONAL:
    case INV_KIND_TEXT:
      return std::string(text);
    case INV_KIND_INTEGER:
      return std::stoull(text);
    case INV_KIND_BOOL:
      return std::string(text) == "true";
    case INV_KIND_FLOAT:
      // Round to the requested significant digits, then let the JSON writer
      // print the shortest round-trip form so re-rendering is stable.
      return std::strtod(format_float(inv_result_field_double(r, row, i), spec.precision).c_str(),
                         nullptr);
  }
  return nullptr;
}

Json fields_json(const inv_result* r, size_t row, const OutputSpec& spec) {
  Json obj = Json::object();
  for (size_t i = 0; i < inv_result_field_count(r, row); ++i) {
    obj[inv_result_field_name(r, row, i)] = field_json(r, row, i, spec);
  }
  return obj;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

/// One invocation's outcome: either a single result, a grid of results
/// sharing a shape, or a result with table rows.
struct Outcome {
  std::string command;
  Json inputs = Json::object();
  std::vector<ResultPtr> results;
  bool grid = false;
  std::string rows_key = "rows";
};

std::string mode_of(const Outcome& o) {
  std::string mode;
  for (const auto& r : o.results) {
    const std::string m = inv_result_mode(r.get());
    if (mode.empty()) {
      mode = m;
    } else if (mode != m) {
      return "mixed";
    }
  }
  return mode;
}

std::string render_json(const Outcome& o, const OutputSpec& spec) {
  Json doc;
  doc["command"] = o.command;
  doc["inputs"] = o.inputs;
  if (o.grid) {
    Json arr = Json::array();
    for (const auto& r : o.results) arr.push_back(fields_json(r.get(), INV_SUMMARY, spec));
    doc["result"] = arr;
  } else {
    const inv_result* r = o.results.front().get();
    if (const char* payload = inv_result_payload(r)) {
      doc["result"] = Json::parse(payload);
    } else {
      Json res = fields_json(r, INV_SUMMARY, spec);
      if (inv_result_row_count(r) > 0) {
        Json rows = Json::array();
        for (size_t row = 0; row < inv_result_row_count(r); ++row) rows.push_back(fields_json(r, row, spec));
        res[o.rows_key] = rows;
      }
      doc["result"] = res;
    }
  }
  doc["mode"] = mode_of(o);
  return doc.dump(2) + "\n";
}

std::string render_csv(const Outcome& o, const OutputSpec& spec) {
  std::ostringstream os;
  const inv_result* first = o.results.front().get();
  const bool use_rows = !o.grid && inv_result_row_count(first) > 0;
  const size_t header_row = use_rows ? 0 : INV_SUMMARY;
  for (size_t i = 0; i < inv_result_field_count(first, header_row); ++i) {
    os << (i ? "," : "") << inv_result_field_name(first, header_row, i);
  }
  os << "\n";
  const auto line = [&](const inv_result* r, size_t row) {
    for (size_t i = 0; i < inv_result_field_count(r, row); ++i) {
      os << (i ? "," : "") << csv_escape(field_display(r, row, i, spec));
    }
    os << "\n";
  };
  if (use_rows) {
    for (size_t row = 0; row < inv_result_row_count(first); ++row) line(first, row);
  } else {
    for (const auto& r : o.results) line(r.get(), INV_SUMMARY);
  }
  return os.str();
}

std::string render_aligned(const std::vector<std::string>& header,
                           const std::vector<std::vector<std::string>>& body) {
  std::vector<size_t> width(header.size());
  for (size_t c = 0; c < header.size(); ++c) width[c] = header[c].size();
  for (const auto& line : body) {
    for (size_t c = 0; c < line.size() && c < width.size(); ++c) width[c] = std::max(width[c], line[c].size());
  }
  std::ostringstream os;
  const auto emit = [&](const std::vector<std::string>& cells) {
    for (size_t c = 0; c < cells.size(); ++c) {
      os << cells[c];
      if (c + 1 < cells.size()) os << std::string(width[c] - cells[c].size() + 2, ' ');
    }
    os << "\n";
  };
  emit(header);
  std::vector<std::string> rule;
  for (size_t w : width) rule.emplace_back(w, '-');
  emit(rule);
  for (const auto& line : body) emit(line);
  return os.str();
}

std::string render_table(const Outcome& o, const OutputSpec& spec) {
  std::ostringstream os;
  if (o.grid) {
    const inv_result* first = o.results.front().get();
    std::vector<std::string> header;
    for (size_t i = 0; i < inv_result_field_count(first, INV_SUMMARY); ++i) {
      header.emplace_back(inv_result_field_name(first, INV_SUMMARY, i));
    }
    std::vector<std::vector<std::string>> body;
    for (const auto& r : o.results) {
      std::vector<std::string> line;
      for (size_t i = 0; i < inv_result_field_count(r.get(), INV_SUMMARY); ++i) {
        line.push_back(field_display(r.get(), INV_SUMMARY, i, spec));
      }
      body.push_back(std::move(line));
    }
    os << render_aligned(header, body);
  } else {
    const inv_result* r = o.results.front().get();
    size_t name_width = 0;
    for (size_t i = 0; i < inv_result_field_count(r, INV_SUMMARY); ++i) {
      name_width = std::max(name_width, std::string(inv_result_field_name(r, INV_SUMMARY, i)).size());
    }
    for (size_t i = 0; i < inv_result_field_count(r, INV_SUMMARY); ++i) {
      const std::string name = inv_result_field_name(r, INV_SUMMARY, i);
      os << name << std::string(name_width - name.size() + 2, ' ') << field_display(r, INV_SUMMARY, i, spec)
         << "\n";
    }
    if (inv_result_row_count(r) > 0) {
      std::vector<std::string> header;
      for (size_t i = 0; i < inv_result_field_count(r, 0); ++i) header.emplace_back(inv_result_field_name(r, 0, i));
      std::vector<std::vector<std::string>> body;
      for (size_t row = 0; row < inv_result_row_count(r); ++row) {
        std::vector<std::string> line;
        for (size_t i = 0; i < inv_result_field_count(r, row); ++i) line.push_back(field_display(r, row, i, spec));
        body.push_back(std::move(line));
      }
      os << "\n" << render_aligned(header, body);
    }
    if (const char* payload = inv_result_payload(r)) {
      const Json report = Json::parse(payload);
      if (report.contains("notes")) {
        os << "\n";
        for (const auto& note : report["notes"]) os << "note: " << note.get<std::string>() << "\n";
      }
    }
  }
  return os.str();
}

std::string render(const Outcome& o, const OutputSpec& spec) {
  switch (spec.format) {
    case Format::Json:
      return render_json(o, spec);
    case Format::Csv:
      return render_csv(o, spec);
    case Format::Table:
      return render_table(o, spec);
  }
  return {};
}

int default_precision() {
  const char* env = std::getenv("INVERSIO_FLOAT_PRECISION");
  if (env == nullptr || *env == '\0') return kDefaultPrecision;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 1 || v > 30) {
    throw UsageError("INVERSIO_FLOAT_PRECISION must be an integer in [1, 30]");
  }
  return static_cast<int>(v);
}

OutputSpec output_spec(const CommonOptions& common) {
  OutputSpec spec;
  if (common.format == "table") {
    spec.format = Format::Table;
  } else if (common.format == "csv") {
    spec.format = Format::Csv;
  } else if (common.format == "json") {
    spec.format = Format::Json;
  } else {
    throw UsageError("--format must be one of table, csv, json");
  }
  spec.precision = common.precision ? *common.precision : default_precision();
  if (spec.precision < 1 || spec.precision > 30) throw UsageError("--precision must lie in [1, 30]");
  spec.exact = common.exact;
  return spec;
}

inv_mode mode_of(const CommonOptions& common) {
  if (common.exact) return INV_MODE_EXACT;
  if (common.floating) return INV_MODE_FLOAT;
  return INV_MODE_AUTO;
}

struct Command {
  CLI::App* app = nullptr;
  std::function<Outcome(const CommonOptions&)> run;
};

void add_common(CLI::App* sub, CommonOptions& common) {
  sub->add_option("--format", common.format, "Output format: table, csv or json")
      ->check(CLI::IsMember({"table", "csv", "json"}));
  sub->add_option("--precision", common.precision,
                  "Significant digits for floats (default 15, or INVERSIO_FLOAT_PRECISION)");
  auto* exact = sub->add_flag("--exact", common.exact, "Force exact rational arithmetic");
  auto* fl = sub->add_flag("--float", common.floating, "Force double-precision arithmetic");
  exact->excludes(fl);
  sub->add_option("--out", common.out_path, "Write output to this file instead of stdout");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"inversio: direct and inverse probability calculator"};
  app.require_subcommand(1);
  CommonOptions common;
  std::vector<Command> commands;

  // direct-prob --------------------------------------------------------------
  std::uint64_t dp_n = 0;
  std::vector<std::uint64_t> dp_grid;
  std::string dp_theta, dp_eps;
  std::optional<std::uint64_t> dp_k, dp_lo, dp_hi;
  {
    auto* sub = app.add_subcommand(
        "direct-prob",
        "Binomial probabilities: pmf (--k), count interval (--lo/--hi) or eps-band (--eps).\n"
        "CSV columns: n,theta,eps,lo,hi,prob");
    auto* n_opt = sub->add_option("--n", dp_n, "Number of trials");
    auto* grid = sub->add_option("--n-grid", dp_grid, "Comma-separated list of n values")->delimiter(',');
    n_opt->excludes(grid);
    sub->add_option("--theta", dp_theta, "Success probability (a/b or decimal)")->required();
    auto* eps = sub->add_option("--eps", dp_eps, "Half-width of the band around theta");
    auto* k = sub->add_option("--k", dp_k, "Success count for the pmf");
    auto* lo = sub->add_option("--lo", dp_lo, "Lower count");
    auto* hi = sub->add_option("--hi", dp_hi, "Upper count");
    lo->needs(hi);
    hi->needs(lo);
    k->excludes(lo)->excludes(eps);
    eps->excludes(lo);
    add_common(sub, common);
    commands.push_back({sub, [&, n_opt, grid](const CommonOptions& c) {
                          if (n_opt->count() == 0 && grid->count() == 0) throw UsageError("--n or --n-grid is required");
                          if (!dp_k && !dp_lo && dp_eps.empty()) throw UsageError("one of --k, --lo/--hi, --eps is required");
                          Outcome o;
                          o.command = "direct-prob";
                          const std::vector<std::uint64_t> ns = grid->count() ? dp_grid : std::vector<std::uint64_t>{dp_n};
                          o.grid = grid->count() > 0;
                          o.inputs["theta"] = dp_theta;
                          if (o.grid) {
                            o.inputs["n_grid"] = ns;
                          } else {
                            o.inputs["n"] = dp_n;
                          }
                          for (std::uint64_t n : ns) {
                            inv_result* r = nullptr;
                            inv_status st;
                            if (dp_k) {
                              o.inputs["k"] = *dp_k;
                              st = inv_pmf(n, dp_theta.c_str(), *dp_k, mode_of(c), &r);
                            } else if (dp_lo) {
                              o.inputs["lo"] = *dp_lo;
                              o.inputs["hi"] = *dp_hi;
                              st = inv_interval_prob(n, dp_theta.c_str(), *dp_lo, *dp_hi, mode_of(c), &r);
                            } else {
                              o.inputs["eps"] = dp_eps;
                              st = inv_deviation_prob(n, dp_theta.c_str(), dp_eps.c_str(), mode_of(c), &r);
                            }
                            o.results.push_back(check(st, r));
                          }
                          return o;
                        }});
  }

  // bernoulli-n -------------------------------------------------------------
  std::string bn_theta, bn_eps, bn_target;
  std::optional<std::uint64_t> bn_odds;
  {
    auto* sub = app.add_subcommand(
        "bernoulli-n",
        "Bernoulli's conservative sample size for theta = r/t, eps = 1/t and odds c:1.\n"
        "CSV columns: r,s,t,c,theta,eps,target,m1,n1,m2,n2,n,achieved_prob,method");
    sub->add_option("--theta", bn_theta, "Success probability r/t")->required();
    sub->add_option("--eps", bn_eps, "Band half-width 1/t")->required();
    auto* odds = sub->add_option("--odds", bn_odds, "Moral-certainty odds c (c:1)");
    auto* target = sub->add_option("--target", bn_target, "Target probability, converted to c = round(P/(1-P))");
    odds->excludes(target);
    add_common(sub, common);
    commands.push_back({sub, [&](const CommonOptions&) {
                          if (!bn_odds && bn_target.empty()) throw UsageError("--odds or --target is required");
                          std::uint64_t c = 0;
                          if (bn_odds) {
                            c = *bn_odds;
                          } else if (const inv_status st = inv_odds_from_target(bn_target.c_str(), &c); st != INV_OK) {
                            throw CallError(st, inv_last_error());
                          }
                          Outcome o;
                          o.command = "bernoulli-n";
                          o.inputs["theta"] = bn_theta;
                          o.inputs["eps"] = bn_eps;
                          o.inputs["odds"] = c;
                          inv_result* r = nullptr;
                          o.results.push_back(check(inv_bernoulli_bound_theta(bn_theta.c_str(), bn_eps.c_str(), c, &r), r));
                          return o;
                        }});
  }

  // search-n ----------------------------------------------------------------
  std::string sn_theta, sn_eps, sn_target;
  std::uint64_t sn_nmax = 0;
  {
    auto* sub = app.add_subcommand(
        "search-n",
        "Least n whose eps-band probability reaches the target (first crossing).\n"
        "CSV columns: theta,eps,target,n,achieved_prob,achieved_exact,falls_back_below,fallback_n,method");
    sub->add_option("--theta", sn_theta, "Success probability")->required();
    sub->add_option("--eps", sn_eps, "Band half-width")->required();
    sub->add_option("--target", sn_target, "Target probability")->required();
    sub->add_option("--n-max", sn_nmax, "Search bound (default 1000000)");
    add_common(sub, common);
    commands.push_back({sub, [&](const CommonOptions&) {
                          Outcome o;
                          o.command = "search-n";
                          o.inputs = {{"theta", sn_theta}, {"eps", sn_eps}, {"target", sn_target}, {"n_max", sn_nmax}};
                          inv_result* r = nullptr;
                          o.results.push_back(check(
                              inv_search_n(sn_theta.c_str(), sn_eps.c_str(), sn_target.c_str(), sn_nmax, &r), r));
                          return o;
                        }});
  }

  // demoivre ----------------------------------------------------------------
  std::uint64_t dm_n = 0;
  std::vector<std::uint64_t> dm_grid;
  std::string dm_theta, dm_eps;
  bool dm_raw = false;
  {
    auto* sub = app.add_subcommand(
        "demoivre",
        "Normal approximation of the eps-band probability against the exact binomial value.\n"
        "CSV columns: n,theta,eps,continuity_correction,exact,approx,abs_error,rel_error");
    auto* n_opt = sub->add_option("--n", dm_n, "Number of trials");
    auto* grid = sub->add_option("--n-grid", dm_grid, "Comma-separated list of n values")->delimiter(',');
    n_opt->excludes(grid);
    sub->add_option("--theta", dm_theta, "Success probability")->required();
    sub->add_option("--eps", dm_eps, "Band half-width")->required();
    sub->add_flag("--no-correction", dm_raw, "Use the raw form without continuity correction");
    add_common(sub, common);
    commands.push_back({sub, [&, n_opt, grid](const CommonOptions&) {
                          if (n_opt->count() == 0 && grid->count() == 0) throw UsageError("--n or --n-grid is required");
                          Outcome o;
                          o.command = "demoivre";
                          o.grid = grid->count() > 0;
                          const std::vector<std::uint64_t> ns = o.grid ? dm_grid : std::vector<std::uint64_t>{dm_n};
                          o.inputs["theta"] = dm_theta;
                          o.inputs["eps"] = dm_eps;
                          if (o.grid) {
                            o.inputs["n_grid"] = ns;
                          } else {
                            o.inputs["n"] = dm_n;
                          }
                          o.inputs["continuity_correction"] = !dm_raw;
                          for (std::uint64_t n : ns) {
                            inv_result* r = nullptr;
                            o.results.push_back(check(
                                inv_normal_approx(n, dm_theta.c_str(), dm_eps.c_str(), dm_raw ? 0 : 1, &r), r));
                          }
                          return o;
                        }});
  }

  // middle-term -------------------------------------------------------------
  std::uint64_t mt_n = 0;
  {
    auto* sub = app.add_subcommand(
        "middle-term",
        "C(n, n/2)/2^n against 2/sqrt(2 pi n).\nCSV columns: n,exact,exact_value,approx,abs_error,rel_error");
    sub->add_option("--n", mt_n, "Even number of trials")->required();
    add_common(sub, common);
    commands.push_back({sub, [&](const CommonOptions&) {
                          Outcome o;
                          o.command = "middle-term";
                          o.inputs["n"] = mt_n;
                          inv_result* r = nullptr;
                          o.results.push_back(check(inv_middle_term(mt_n, &r), r));
                          return o;
                        }});
  }

  // stirling-terms ----------------------------------------------------------
  std::uint64_t st_n = 0;
  std::uint64_t st_kmax = 10;
  {
    auto* sub = app.add_subcommand(
        "stirling-terms",
        "Terms of the log-factorial correction series with divergence metadata.\n"
        "CSV columns (one row per term): k,term,abs_value,truncation_error");
    sub->add_option("--n", st_n, "Evaluation point")->required();
    sub->add_option("--k-max", st_kmax, "Number of terms (default 10)");
    add_common(sub, common);
    commands.push_back({sub, [&](const CommonOptions&) {
                          Outcome o;
                          o.command = "stirling-terms";
                          o.rows_key = "terms";
                          o.inputs = {{"n", st_n}, {"k_max", st_kmax}};
                          inv_result* r = nullptr;
                          o.results.push_back(check(inv_stirling_terms(st_n, st_kmax, &r), r));
                          return o;
                        }});
  }

  // bayes-interval ----------------------------------------------------------
  std::string bi_a = "1", bi_b = "1", bi_l1, bi_l2;
  std::uint64_t bi_p = 0, bi_q = 0;
  {
    auto* sub = app.add_subcommand(
        "bayes-interval",
        "Posterior probability that theta lies in [l1, l2] after p successes and q failures.\n"
        "CSV columns: a,b,p,q,post_a,post_b,l1,l2,prob");
    sub->add_option("--a", bi_a, "Prior Beta shape a (default 1)");
    sub->add_option("--b", bi_b, "Prior Beta shape b (default 1)");
    sub->add_option("--p", bi_p, "Observed successes")->required();
    sub->add_option("--q", bi_q, "Observed failures")->required();
    sub->add_option("--l1", bi_l1, "Lower limit")->required();
    sub->add_option("--l2", bi_l2, "Upper limit")->required();
    add_common(sub, common);
    commands.push_back({sub, [&](const CommonOptions& c) {
                          Outcome o;
                          o.command = "bayes-interval";
                          o.inputs = {{"a", bi_a}, {"b", bi_b}, {"p", bi_p}, {"q", bi_q}, {"l1", bi_l1}, {"l2", bi_l2}};
                          inv_result* r = nullptr;
                          o.results.push_back(check(inv_posterior_interval(bi_a.c_str(), bi_b.c_str(), bi_p, bi_q,
                                                                           bi_l1.c_str(), bi_l2.c_str(), mode_of(c), &r),
                                                    r));
                          return o;
                        }});
  }

  // hartley -----------------------------------------------------------------
  std::string hy_a = "1", hy_b = "1", hy_eps;
  std::uint64_t hy_p = 0, hy_q = 0;
  {
    auto* sub = app.add_subcommand(
        "hartley",
        "Posterior probability that theta lies within eps of the observed ratio p/(p+q).\n"
        "CSV columns: a,b,p,q,post_a,post_b,eps,l1,l2,prob");
    sub->add_option("--a", hy_a, "Prior Beta shape a (default 1)");
    sub->add_option("--b", hy_b, "Prior Beta shape b (default 1)");
    sub->add_option("--p", hy_p, "Observed successes")->required();
    sub->add_option("--q", hy_q, "Observed failures")->required();
    sub->add_option("--eps", hy_eps, "Band half-width")->required();
    add_common(sub, common);
    commands.push_back({sub, [&](const CommonOptions& c) {
                          Outcome o;
                          o.command = "hartley";
                          o.inputs = {{"a", hy_a}, {"b", hy_b}, {"p", hy_p}, {"q", hy_q}, {"eps", hy_eps}};
                          inv_result* r = nullptr;
                          o.results.push_back(check(
                              inv_hartley(hy_a.c_str(), hy_b.c_str(), hy_p, hy_q, hy_eps.c_str(), mode_of(c), &r), r));
                          return o;
                        }});
  }

  // runs --------------------------------------------------------------------
  std::uint64_t rn_n = 0, rn_r = 0;
  std::string rn_theta;
  bool rn_brute = false;
  {
    auto* sub = app.add_subcommand(
        "runs", "Probability of at least one run of r successes in n trials.\nCSV columns: n,r,theta,prob,method");
    sub->add_option("--n", rn_n, "Number of trials")->required();
    sub->add_option("--r", rn_r, "Run length")->required();
    sub->add_option("--theta", rn_theta, "Success probability")->required();
    sub->add_flag("--bruteforce", rn_brute, "Enumerate all 2^n outcomes (n <= 22)");
    add_common(sub, common);
    commands.push_back({sub, [&](const CommonOptions& c) {
                          Outcome o;
                          o.command = "runs";
                          o.inputs = {{"n", rn_n}, {"r", rn_r}, {"theta", rn_theta}};
                          inv_result* r = nullptr;
                          const inv_status st = rn_brute ? inv_run_prob_bruteforce(rn_n, rn_r, rn_theta.c_str(), &r)
                                                         : inv_run_prob(rn_n, rn_r, rn_theta.c_str(), mode_of(c), &r);
                          o.results.push_back(check(st, r));
                          return o;
                        }});
  }

  // trichotomy --------------------------------------------------------------
  std::string tr_theta, tr_eps, tr_target, tr_a = "1", tr_b = "1", tr_scenario;
  std::uint64_t tr_p = 0, tr_q = 0, tr_nmax = 1'000'000;
  {
    auto* sub = app.add_subcommand(
        "trichotomy",
        "Direct law, inverse use and Bayes's posterior answer side by side.\n"
        "CSV columns: direct_n,direct_prob,xbar,band_lo,band_hi,post_a,post_b,bayes_prob");
    sub->add_option("--theta-true", tr_theta, "Known theta (enables the direct answer)");
    sub->add_option("--p", tr_p, "Observed successes");
    sub->add_option("--q", tr_q, "Observed failures");
    auto* eps = sub->add_option("--eps", tr_eps, "Band half-width");
    auto* target = sub->add_option("--target", tr_target, "Target probability for the direct answer");
    sub->add_option("--a", tr_a, "Prior Beta shape a (default 1)");
    sub->add_option("--b", tr_b, "Prior Beta shape b (default 1)");
    sub->add_option("--n-max", tr_nmax, "Search bound for the direct answer");
    auto* scen = sub->add_option("--scenario", tr_scenario, "Read the scenario from a JSON file");
    scen->excludes(eps)->excludes(target);
    add_common(sub, common);
    commands.push_back({sub, [&, scen](const CommonOptions&) {
                          std::string scenario_text;
                          if (scen->count()) {
                            std::ifstream in(tr_scenario);
                            if (!in) throw UsageError("cannot read scenario file '" + tr_scenario + "'");
                            std::ostringstream ss;
                            ss << in.rdbuf();
                            scenario_text = ss.str();
                          } else {
                            if (tr_eps.empty() || tr_target.empty()) throw UsageError("--eps and --target are required");
                            Json s;
                            s["theta_true"] = tr_theta.empty() ? Json(nullptr) : Json(tr_theta);
                            s["counts"] = {{"p", tr_p}, {"q", tr_q}};
                            s["eps"] = tr_eps;
                            s["target"] = tr_target;
                            s["prior"] = {{"a", tr_a}, {"b", tr_b}};
                            s["n_max"] = tr_nmax;
                            scenario_text = s.dump();
                          }
                          Outcome o;
                          o.command = "trichotomy";
                          try {
                            o.inputs = Json::parse(scenario_text);
                          } catch (const nlohmann::json::parse_error&) {
                            o.inputs = scenario_text;
                          }
                          inv_result* r = nullptr;
                          o.results.push_back(check(inv_trichotomy(scenario_text.c_str(), &r), r));
                          return o;
                        }});
  }

  const auto active_help = [&]() -> std::string {
    for (const auto& c : commands) {
      if (c.app->parsed()) return c.app->help();
    }
    return app.help();
  };

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << active_help();
    return kExitUsage;
  }

  for (const auto& c : commands) {
    if (!c.app->parsed()) continue;
    try {
      const OutputSpec spec = output_spec(common);
      const Outcome outcome = c.run(common);
      const std::string text = render(outcome, spec);
      if (common.out_path.empty()) {
        std::cout << text;
      } else {
        std::ofstream out(common.out_path);
        if (!out) throw UsageError("cannot write '" + common.out_path + "'");
        out << text;
      }
      return kExitOk;
    } catch (const UsageError& e) {
      std::cerr << "error: " << e.what() << "\n\n" << c.app->help();
      return kExitUsage;
    } catch (const CallError& e) {
      std::cerr << "error (" << inv_status_name(e.status()) << "): " << e.what() << "\n";
      if (e.status() == INV_ERR_PARSE || e.status() == INV_ERR_INVALID_ARGUMENT) {
        std::cerr << "\n" << c.app->help();
        return kExitUsage;
      }
      return kExitDomain;
    }
  }
  std::cerr << app.help();
  return kExitUsage;
}
