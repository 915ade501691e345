#include "inversio/inversio.h"

#include <cmath>
#include <cstdio>
#include <limits>
#include <new>
#include <string>
#include <vector>

#include "inversio/bayes_inverse.hpp"
#include "inversio/bernoulli_direct.hpp"
#include "inversio/demoivre_approx.hpp"
#include "inversio/errors.hpp"
#include "inversio/exact_binomial.hpp"
#include "inversio/runs.hpp"
#include "inversio/trichotomy.hpp"

using namespace inversio;

namespace {

constexpr std::uint64_t kAutoExactTrials = 5000;
constexpr double kAutoExactShapeSum = 62.0;

struct Field {
  std::string name;
  inv_value_kind kind = INV_KIND_NULL;
  std::string text;
  double number = std::numeric_limits<double>::quiet_NaN();
};

std::string float_text(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

class FieldList {
 public:
  FieldList& rational(std::string name, const Rational& q) {
    return add({std::move(name), INV_KIND_RATIONAL, q.str(), q.to_double()});
  }
  FieldList& real(std::string name, double v) {
    return add({std::move(name), INV_KIND_FLOAT, float_text(v), v});
  }
  FieldList& integer(std::string name, std::uint64_t v) {
    return add({std::move(name), INV_KIND_INTEGER, std::to_string(v), static_cast<double>(v)});
  }
  FieldList& boolean(std::string name, bool v) {
    return add({std::move(name), INV_KIND_BOOL, v ? "true" : "false", v ? 1.0 : 0.0});
  }
  FieldList& text(std::string name, std::string v) {
    return add({std::move(name), INV_KIND_TEXT, std::move(v)});
  }
  FieldList& null(std::string name) { return add({std::move(name), INV_KIND_NULL, ""}); }
  FieldList& probability(std::string name, const Probability& p) {
    return p.exact ? rational(std::move(name), *p.exact) : real(std::move(name), p.value);
  }

  std::vector<Field> fields;

 private:
  FieldList& add(Field f) {
    fields.push_back(std::move(f));
    return *this;
  }
};

thread_local std::string g_last_error;

Rational parse_arg(const char* text, const char* what) {
  if (text == nullptr) throw std::invalid_argument(std::string("null ") + what);
  try {
    return Rational::parse(text);
  } catch (const ParseError& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
}

double parse_shape(const char* text, const char* what) {
  if (text == nullptr) return 1.0;
  return parse_arg(text, what).to_double();
}

NumericMode resolve(inv_mode mode, bool exact_is_cheap) {
  switch (mode) {
    case INV_MODE_EXACT:
      return NumericMode::exact();
    case INV_MODE_FLOAT:
      return NumericMode::floating();
    case INV_MODE_AUTO:
      return exact_is_cheap ? NumericMode::exact() : NumericMode::floating();
  }
  throw std::invalid_argument("unknown inv_mode");
}

const char* mode_name(NumericMode mode) { return mode.is_exact() ? "exact" : "float"; }

void set_error(std::string message) { g_last_error = std::move(message); }

template <class Fn>
inv_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return INV_OK;
  } catch (const ParseError& e) {
    set_error(e.what());
    return INV_ERR_PARSE;
  } catch (const DomainError& e) {
    set_error(e.what());
    return INV_ERR_DOMAIN;
  } catch (const UnsupportedError& e) {
    set_error(e.what());
    return INV_ERR_UNSUPPORTED;
  } catch (const NotFoundError& e) {
    set_error(std::string(e.what()) + " (best n=" + std::to_string(e.best_n()) +
              ", prob=" + float_text(e.best_prob()) + ")");
    return INV_ERR_NOT_FOUND;
  } catch (const NumericalError& e) {
    set_error(std::string(e.what()) + " (partial value " + float_text(e.partial()) + ")");
    return INV_ERR_NUMERICAL;
  } catch (const ResourceError& e) {
    set_error(e.what());
    return INV_ERR_RESOURCE;
  } catch (const std::invalid_argument& e) {
    set_error(e.what());
    return INV_ERR_INVALID_ARGUMENT;
  } catch (const std::bad_alloc&) {
    set_error("out of memory");
    return INV_ERR_RESOURCE;
  } catch (const std::exception& e) {
    set_error(e.what());
    return INV_ERR_INTERNAL;
  } catch (...) {
    set_error("unknown error");
    return INV_ERR_INTERNAL;
  }
}

}  // namespace

struct inv_result {
  std::string mode = "float";
  std::vector<Field> summary;
  std::vector<std::vector<Field>> rows;
  std::string payload;

  const std::vector<Field>* fields(size_t row) const {
    if (row == INV_SUMMARY) return &summary;
    return row < rows.size() ? &rows[row] : nullptr;
  }
  const Field* field(size_t row, size_t index) const {
    const auto* list = fields(row);
    return list != nullptr && index < list->size() ? &(*list)[index] : nullptr;
  }
};

namespace {

void emit(inv_result** out, std::string mode, FieldList summary,
          std::vector<FieldList> rows = {}, std::string payload = {}) {
  if (out == nullptr) throw std::invalid_argument("null result pointer");
  auto* r = new inv_result;
  r->mode = std::move(mode);
  r->summary = std::move(summary.fields);
  for (auto& row : rows) r->rows.push_back(std::move(row.fields));
  r->payload = std::move(payload);
  *out = r;
}

void require_out(inv_result** out) {
  if (out == nullptr) throw std::invalid_argument("null result pointer");
  *out = nullptr;
}

FieldList posterior_fields(double a, double b, std::uint64_t p, std::uint64_t q,
                           const BetaParams& post) {
  FieldList f;
  f.real("a", a).real("b", b).integer("p", p).integer("q", q);
  f.real("post_a", post.a()).real("post_b", post.b());
  return f;
}

bool cheap_posterior(const BetaParams& post) {
  return post.integer_shapes() && post.a() + post.b() <= kAutoExactShapeSum;
}

void emit_bound(const MoralCertaintySpec& spec, inv_result** out) {
  const SampleSizeResult res = bernoulli_bound_n(spec);
  FieldList f;
  f.integer("r", spec.r).integer("s", spec.s).integer("t", spec.t()).integer("c", spec.c);
  f.rational("theta", spec.theta()).rational("eps", spec.eps()).rational("target", spec.target());
  f.integer("m1", res.bound->m1).integer("n1", res.bound->n1);
  f.integer("m2", res.bound->m2).integer("n2", res.bound->n2);
  f.integer("n", res.n).real("achieved_prob", res.achieved_prob).text("method", "bernoulli-bound");
  emit(out, "exact", std::move(f));
}

}  // namespace

extern "C" {

const char* inv_version(void) { return "0.1.0"; }

const char* inv_status_name(inv_status status) {
  switch (status) {
    case INV_OK: return "ok";
    case INV_ERR_INVALID_ARGUMENT: return "invalid-argument";
    case INV_ERR_PARSE: return "parse-error";
    case INV_ERR_DOMAIN: return "domain-error";
    case INV_ERR_UNSUPPORTED: return "unsupported";
    case INV_ERR_NOT_FOUND: return "not-found";
    case INV_ERR_NUMERICAL: return "numerical-error";
    case INV_ERR_RESOURCE: return "resource-error";
    case INV_ERR_INTERNAL: return "internal-error";
  }
  return "unknown";
}

const char* inv_last_error(void) { return g_last_error.c_str(); }

void inv_result_free(inv_result* result) { delete result; }

const char* inv_result_mode(const inv_result* result) {
  return result != nullptr ? result->mode.c_str() : nullptr;
}

size_t inv_result_row_count(const inv_result* result) {
  return result != nullptr ? result->rows.size() : 0;
}

size_t inv_result_field_count(const inv_result* result, size_t row) {
  if (result == nullptr) return 0;
  const auto* list = result->fields(row);
  return list != nullptr ? list->size() : 0;
}

const char* inv_result_field_name(const inv_result* result, size_t row, size_t index) {
  const Field* f = result != nullptr ? result->field(row, index) : nullptr;
  return f != nullptr ? f->name.c_str() : nullptr;
}

inv_value_kind inv_result_field_kind(const inv_result* result, size_t row, size_t index) {
  const Field* f = result != nullptr ? result->field(row, index) : nullptr;
  return f != nullptr ? f->kind : INV_KIND_NULL;
}

const char* inv_result_field_text(const inv_result* result, size_t row, size_t index) {
  const Field* f = result != nullptr ? result->field(row, index) : nullptr;
  return f != nullptr ? f->text.c_str() : nullptr;
}

double inv_result_field_double(const inv_result* result, size_t row, size_t index) {
  const Field* f = result != nullptr ? result->field(row, index) : nullptr;
  return f != nullptr ? f->number : std::numeric_limits<double>::quiet_NaN();
}

inv_status inv_result_lookup(const inv_result* result, const char* name, const char** text,
                             double* value) {
  if (result == nullptr || name == nullptr) {
    set_error("null argument to inv_result_lookup");
    return INV_ERR_INVALID_ARGUMENT;
  }
  for (const auto& f : result->summary) {
    if (f.name == name) {
      if (text != nullptr) *text = f.text.c_str();
      if (value != nullptr) *value = f.number;
      return INV_OK;
    }
  }
  set_error(std::string("no field named '") + name + "'");
  return INV_ERR_INVALID_ARGUMENT;
}

const char* inv_result_payload(const inv_result* result) {
  return result != nullptr && !result->payload.empty() ? result->payload.c_str() : nullptr;
}

inv_status inv_pmf(uint64_t n, const char* theta, uint64_t k, inv_mode mode, inv_result** out) {
  return guarded([&] {
    require_out(out);
    const BinomialModel model(n, parse_arg(theta, "theta"));
    const NumericMode m = resolve(mode, n <= kAutoExactTrials);
    FieldList f;
    f.integer("n", n).rational("theta", model.theta()).null("eps").integer("lo", k).integer("hi", k);
    f.probability("prob", pmf(model, k, m));
    emit(out, mode_name(m), std::move(f));
  });
}

inv_status inv_interval_prob(uint64_t n, const char* theta, uint64_t lo, uint64_t hi,
                             inv_mode mode, inv_result** out) {
  return guarded([&] {
    require_out(out);
    const BinomialModel model(n, parse_arg(theta, "theta"));
    const NumericMode m = resolve(mode, n <= kAutoExactTrials);
    FieldList f;
    f.integer("n", n).rational("theta", model.theta()).null("eps").integer("lo", lo).integer("hi", hi);
    f.probability("prob", interval_count_prob(model, lo, hi, m));
    emit(out, mode_name(m), std::move(f));
  });
}

inv_status inv_deviation_prob(uint64_t n, const char* theta, const char* eps, inv_mode mode,
                              inv_result** out) {
  return guarded([&] {
    require_out(out);
    const BinomialModel model(n, parse_arg(theta, "theta"));
    const Rational e = parse_arg(eps, "eps");
    const NumericMode m = resolve(mode, n <= kAutoExactTrials);
    const auto band = deviation_band(n, model.theta(), e);
    FieldList f;
    f.integer("n", n).rational("theta", model.theta()).rational("eps", e);
    if (band) {
      f.integer("lo", band->first).integer("hi", band->second);
    } else {
      f.null("lo").null("hi");
    }
    f.probability("prob", deviation_prob(model, e, m));
    emit(out, mode_name(m), std::move(f));
  });
}

inv_status inv_bernoulli_bound(uint64_t r, uint64_t s, uint64_t c, inv_result** out) {
  return guarded([&] {
    require_out(out);
    emit_bound(MoralCertaintySpec(r, s, c), out);
  });
}

inv_status inv_bernoulli_bound_theta(const char* theta, const char* eps, uint64_t c,
                                     inv_result** out) {
  return guarded([&] {
    require_out(out);
    emit_bound(MoralCertaintySpec::from_theta_eps(parse_arg(theta, "theta"), parse_arg(eps, "eps"), c),
               out);
  });
}

inv_status inv_odds_from_target(const char* target, uint64_t* odds) {
  return guarded([&] {
    if (odds == nullptr) throw std::invalid_argument("null odds pointer");
    *odds = odds_from_target(parse_arg(target, "target"));
  });
}

inv_status inv_search_n(const char* theta, const char* eps, const char* target, uint64_t n_max,
                        inv_result** out) {
  return guarded([&] {
    require_out(out);
    const Rational th = parse_arg(theta, "theta");
    const Rational e = parse_arg(eps, "eps");
    const Rational tg = parse_arg(target, "target");
    SearchOptions options;
    if (n_max != 0) options.n_max = n_max;
    const SampleSizeResult res = exact_search_n(th, e, tg, options);
    FieldList f;
    f.rational("theta", th).rational("eps", e).rational("target", tg);
    f.integer("n", res.n).real("achieved_prob", res.achieved_prob);
    f.boolean("achieved_exact", res.achieved_exact.has_value());
    f.boolean("falls_back_below", res.falls_back_below);
    if (res.fallback_n) {
      f.integer("fallback_n", *res.fallback_n);
    } else {
      f.null("fallback_n");
    }
    f.text("method", "exact-search");
    emit(out, res.achieved_exact ? "exact" : "float", std::move(f));
  });
}

inv_status inv_log_factorial(uint64_t n, uint64_t k_terms, inv_result** out) {
  return guarded([&] {
    require_out(out);
    const auto k = static_cast<std::size_t>(k_terms);
    FieldList f;
    f.integer("n", n).integer("k_terms", k_terms);
    f.real("value", log_factorial(n, k)).real("abs_error", log_factorial_truncation_error(n, k));
    emit(out, "float", std::move(f));
  });
}

inv_status inv_stirling_terms(uint64_t n, uint64_t k_max, inv_result** out) {
  return guarded([&] {
    require_out(out);
    const SeriesExpansion s = series_terms(n, static_cast<std::size_t>(k_max));
    FieldList f;
    f.integer("n", n).integer("k_max", k_max).integer("min_abs_index", s.min_abs_index);
    if (s.diverges_after) {
      f.integer("diverges_after", *s.diverges_after);
    } else {
      f.null("diverges_after");
    }
    std::vector<FieldList> rows;
    for (std::size_t i = 0; i < s.terms.size(); ++i) {
      FieldList row;
      row.integer("k", i + 1).rational("term", s.terms[i]).real("abs_value", std::fabs(s.terms[i].to_double()));
      row.real("truncation_error", log_factorial_truncation_error(n, i + 1));
      rows.push_back(std::move(row));
    }
    emit(out, "exact", std::move(f), std::move(rows));
  });
}

inv_status inv_middle_term(uint64_t n, inv_result** out) {
  return guarded([&] {
    require_out(out);
    const ApproxComparison cmp = middle_term_ratio(n);
    FieldList f;
    f.integer("n", n).rational("exact", *cmp.exact_rational).real("exact_value", cmp.exact);
    f.real("approx", cmp.approx).real("abs_error", cmp.abs_error).real("rel_error", cmp.rel_error);
    emit(out, "exact", std::move(f));
  });
}

inv_status inv_normal_approx(uint64_t n, const char* theta, const char* eps,
                             int continuity_correction, inv_result** out) {
  return guarded([&] {
    require_out(out);
    const BinomialModel model(n, parse_arg(theta, "theta"));
    const Rational e = parse_arg(eps, "eps");
    const ApproxComparison cmp = normal_deviation_approx(model, e, continuity_correction != 0);
    FieldList f;
    f.integer("n", n).rational("theta", model.theta()).rational("eps", e);
    f.boolean("continuity_correction", continuity_correction != 0);
    f.real("exact", cmp.exact).real("approx", cmp.approx);
    f.real("abs_error", cmp.abs_error).real("rel_error", cmp.rel_error);
    emit(out, cmp.exact_rational ? "exact" : "float", std::move(f));
  });
}

inv_status inv_posterior(const char* a, const char* b, uint64_t p, uint64_t q, inv_result** out) {
  return guarded([&] {
    require_out(out);
    const BetaParams prior(parse_shape(a, "a"), parse_shape(b, "b"));
    emit(out, "exact", posterior_fields(prior.a(), prior.b(), p, q, posterior(prior, {p, q})));
  });
}

inv_status inv_posterior_interval(const char* a, const char* b, uint64_t p, uint64_t q,
                                  const char* l1, const char* l2, inv_mode mode, inv_result** out) {
  return guarded([&] {
    require_out(out);
    const BetaParams prior(parse_shape(a, "a"), parse_shape(b, "b"));
    const ObservedCounts data{p, q};
    const BetaParams post = posterior(prior, data);
    const IntervalQuery query(parse_arg(l1, "l1"), parse_arg(l2, "l2"));
    const NumericMode m = resolve(mode, cheap_posterior(post));
    FieldList f = posterior_fields(prior.a(), prior.b(), p, q, post);
    f.rational("l1", query.l1()).rational("l2", query.l2());
    f.probability("prob", posterior_interval_prob(prior, data, query, m));
    emit(out, mode_name(m), std::move(f));
  });
}

inv_status inv_hartley(const char* a, const char* b, uint64_t p, uint64_t q, const char* eps,
                       inv_mode mode, inv_result** out) {
  return guarded([&] {
    require_out(out);
    const BetaParams prior(parse_shape(a, "a"), parse_shape(b, "b"));
    const ObservedCounts data{p, q};
    const BetaParams post = posterior(prior, data);
    const Rational e = parse_arg(eps, "eps");
    const IntervalQuery band = hartley_band(data, e);
    const NumericMode m = resolve(mode, cheap_posterior(post));
    FieldList f = posterior_fields(prior.a(), prior.b(), p, q, post);
    f.rational("eps", e).rational("l1", band.l1()).rational("l2", band.l2());
    f.probability("prob", hartley_deviation(prior, data, e, m));
    emit(out, mode_name(m), std::move(f));
  });
}

inv_status inv_incomplete_beta(double x, double a, double b, double* value) {
  return guarded([&] {
    if (value == nullptr) throw std::invalid_argument("null value pointer");
    *value = regularized_incomplete_beta(x, a, b);
  });
}

inv_status inv_run_prob(uint64_t n, uint64_t r, const char* theta, inv_mode mode,
                        inv_result** out) {
  return guarded([&] {
    require_out(out);
    const RunQuery query(n, r, parse_arg(theta, "theta"));
    const NumericMode m = resolve(mode, n <= kAutoExactTrials);
    FieldList f;
    f.integer("n", n).integer("r", r).rational("theta", query.theta());
    f.probability("prob", run_prob(query, m)).text("method", "recurrence");
    emit(out, mode_name(m), std::move(f));
  });
}

inv_status inv_run_prob_bruteforce(uint64_t n, uint64_t r, const char* theta, inv_result** out) {
  return guarded([&] {
    require_out(out);
    const RunQuery query(n, r, parse_arg(theta, "theta"));
    FieldList f;
    f.integer("n", n).integer("r", r).rational("theta", query.theta());
    f.rational("prob", run_prob_bruteforce(query)).text("method", "bruteforce");
    emit(out, "exact", std::move(f));
  });
}

inv_status inv_trichotomy(const char* scenario_json, inv_result** out) {
  return guarded([&] {
    require_out(out);
    if (scenario_json == nullptr) throw std::invalid_argument("null scenario");
    const Scenario scenario = scenario_from_json(scenario_json);
    const TrichotomyReport report = run_trichotomy(scenario);
    FieldList f;
    if (report.direct) {
      f.integer("direct_n", report.direct->n).real("direct_prob", report.direct->achieved_prob);
    } else {
      f.null("direct_n").null("direct_prob");
    }
    if (report.inverse_use) {
      f.rational("xbar", report.inverse_use->xbar);
      f.rational("band_lo", report.inverse_use->band_lo).rational("band_hi", report.inverse_use->band_hi);
    } else {
      f.null("xbar").null("band_lo").null("band_hi");
    }
    f.real("post_a", report.bayes.posterior.a()).real("post_b", report.bayes.posterior.b());
    if (report.bayes.prob) {
      f.real("bayes_prob", *report.bayes.prob);
    } else {
      f.null("bayes_prob");
    }
    const bool exact = report.bayes.prob_exact.has_value() || (report.direct && report.direct->exact);
    emit(out, exact ? "exact" : "float", std::move(f), {}, report_to_json(report));
  });
}

}  // extern "C"
