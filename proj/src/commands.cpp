#include "incompat/commands.hpp"

#include <chrono>
#include <cmath>
#include <fstream>

namespace incompat {

int exit_code_for(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::BoundViolation:
      return 3;
    case ErrorCode::InvalidInput:
    case ErrorCode::NotHermitian:
    case ErrorCode::DegenerateSpectrum:
    case ErrorCode::DimMismatch:
    case ErrorCode::NotPrime:
    case ErrorCode::TooManyBases:
    case ErrorCode::ItemCount:
      return 2;
    default:
      return 1;
  }
}

namespace {

using Clock = std::chrono::steady_clock;

json envelope(const std::string& command, json arguments, json report, Clock::time_point started) {
  const double wall = std::chrono::duration<double>(Clock::now() - started).count();
  return {{"command", command},
          {"arguments", std::move(arguments)},
          {"report", std::move(report)},
          {"tool_version", kToolVersion},
          {"wall_time_s", wall}};
}

struct SuiteResult {
  std::string name;
  long checks = 0;
  long failures = 0;
  double worst = 0.0;  // largest observed deviation
  json to_json() const {
    return {{"name", name}, {"checks", checks}, {"failures", failures}, {"worst_deviation", worst},
            {"passed", failures == 0}};
  }
};

SuiteResult lemma1_suite(long samples, std::uint64_t seed) {
  SuiteResult r{"lemma1"};
  for (long d : {2L, 3L, 5L}) {
    for (long n = 1; n <= d + 1; ++n) {
      const ObservableSet bases = mub_bases(d, n);
      Rng rng = make_stream(seed, static_cast<std::uint64_t>(d * 100 + n));
      for (long s = 0; s < samples; ++s) {
        const LemmaOneResult res = lemma1_sum(random_unit_vector(d, rng), bases);
        ++r.checks;
        r.worst = std::max(r.worst, res.sum - res.bound);
        if (!res.holds) ++r.failures;
      }
      const LemmaOneResult sat = lemma1_sum(bases[0].vectors()[0], bases);
      ++r.checks;
      if (std::abs(sat.sum - sat.bound) > 1e-12) ++r.failures;
    }
  }
  return r;
}

SuiteResult theorem2_suite(long samples, std::uint64_t seed) {
  SuiteResult r{"theorem2"};
  Rng rng = make_stream(seed, 7001);
  for (long s = 0; s < samples; ++s) {
    const Index d = 2 + s % 3;
    const Index n = 1 + (s / 3) % 3;
    std::vector<Eigenbasis> members;
    for (Index i = 0; i < n; ++i) members.push_back(random_basis(d, rng));
    const SignalEnsemble ens{ObservableSet(std::move(members))};
    const Povm m = random_povm(d, static_cast<int>(d * d), rng);
    const double eig_form = achievable_fidelity(ens, m).value;
    const double pq_form = theorem2_fidelity(ens, m);
    const double explicit_form = average_fidelity(ens, m, optimal_reconstruction(ens, m));
    const double dev = std::max(std::abs(eig_form - pq_form), std::abs(eig_form - explicit_form));
    r.worst = std::max(r.worst, dev);
    ++r.checks;
    if (dev > 1e-10) ++r.failures;
  }
  return r;
}

SuiteResult phi_suite(long samples, std::uint64_t seed) {
  SuiteResult r{"phi"};
  Rng rng = make_stream(seed, 7002);
  for (long s = 0; s < samples; ++s) {
    const Index d = 2 + s % 4;
    const Index n = 1 + s % 3;
    std::vector<Eigenbasis> members;
    for (Index i = 0; i < n; ++i) members.push_back(random_basis(d, rng));
    const SignalEnsemble ens{ObservableSet(std::move(members))};
    const ComplexMatrix out = phi_map(ens, random_density_matrix(d, rng));
    const double trace_dev = std::abs(out.trace().real() - 1.0 / static_cast<double>(d));
    const ComplexMatrix scaled = static_cast<double>(d) * phi_map(ens, random_unit_vector(d, rng));
    const EigenDecomposition eig = herm_eig(scaled);
    const double min_eig = eig.eigenvalues[d - 1];
    const double unit_dev = std::abs(scaled.trace().real() - 1.0);
    r.worst = std::max({r.worst, trace_dev, unit_dev, -min_eig});
    ++r.checks;
    if (trace_dev > 1e-10 || unit_dev > 1e-10 || min_eig < -1e-10) ++r.failures;
  }
  return r;
}

SuiteResult bounds_suite(long samples, const OptimizerConfig& cfg) {
  SuiteResult r{"bounds"};
  Rng rng = make_stream(cfg.seed, 7003);
  for (long s = 0; s < samples; ++s) {
    const Index d = 2 + s % 3;
    const Index n = 2 + s % 2;
    std::vector<Eigenbasis> members;
    for (Index i = 0; i < n; ++i) members.push_back(random_basis(d, rng, "r" + std::to_string(i)));
    ++r.checks;
    try {
      const QReport q = q_measure(ObservableSet(std::move(members)), cfg);
      r.worst = std::max(r.worst, q.lower_bound_eq8 - q.optimal_fidelity);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::BoundViolation) throw;
      ++r.failures;
    }
  }
  return r;
}

}  // namespace

CommandOutput cmd_q(const std::string& input_path, const OptimizerConfig& cfg) {
  const auto started = Clock::now();
  const ObservableSet set = to_observable_set(load_input(input_path), 1e-8);
  const QReport report = q_measure(set, cfg);
  return {envelope("q", {{"input", input_path}, {"config", to_json(cfg)}}, to_json(report), started), 0};
}

CommandOutput cmd_mub(long d, long n, const std::optional<std::string>& out_path) {
  const auto started = Clock::now();
  const ObservableSet set = mub_bases(d, n);
  const bool unbiased = is_mutually_unbiased(set, 1e-10);
  if (!unbiased) throw Error(ErrorCode::NotMutuallyUnbiased, "constructed bases failed validation");
  const json doc = to_json(basis_document(set));
  if (out_path) {
    std::ofstream out(*out_path);
    if (!out) throw Error(ErrorCode::InvalidInput, "cannot write " + *out_path);
    out << doc.dump(2) << '\n';
  }
  json report = {{"dim", d}, {"count", n}, {"mutually_unbiased", unbiased}, {"labels", set.labels()},
                 {"document", doc}};
  json args = {{"d", d}, {"n", n}};
  if (out_path) args["out"] = *out_path;
  return {envelope("mub", std::move(args), std::move(report), started), 0};
}

CommandOutput cmd_bounds(long n, long d) {
  const auto started = Clock::now();
  const TheoremOneBounds b = theorem1_bounds(n, d);
  json report = {{"upper_bound_eq5", b.few_observables},
                 {"upper_bound_eq6", b.many_observables},
                 {"lower_bound_eq8", projective_lower_bound(n, d)},
                 {"fuchs_floor", fuchs_lower_bound(d)},
                 {"eq5_applies", n <= d + 1}};
  return {envelope("bounds", {{"n", n}, {"d", d}}, std::move(report), started), 0};
}

CommandOutput cmd_entropic(const std::string& input_path, const OptimizerConfig& cfg) {
  const auto started = Clock::now();
  const ObservableSet set = to_observable_set(load_input(input_path), 1e-8);
  if (set.count() != 2) {
    throw Error(ErrorCode::ItemCount, "entropic comparison needs exactly two items, got " + std::to_string(set.count()));
  }
  const EntropicReport report = entropic_report(set[0], set[1], cfg);
  return {envelope("entropic", {{"input", input_path}, {"config", to_json(cfg)}}, to_json(report), started), 0};
}

CommandOutput cmd_verify(const VerifyOptions& opts) {
  const auto started = Clock::now();
  const auto wants = [&](const char* name) { return opts.suite == "all" || opts.suite == name; };
  if (!(wants("lemma1") || wants("theorem2") || wants("phi") || wants("bounds"))) {
    throw Error(ErrorCode::InvalidInput, "unknown suite '" + opts.suite + "'");
  }
  const std::uint64_t seed = opts.cfg.seed;
  std::vector<SuiteResult> results;
  if (wants("lemma1")) results.push_back(lemma1_suite(opts.samples.value_or(10000), seed));
  if (wants("theorem2")) results.push_back(theorem2_suite(opts.samples.value_or(100), seed));
  if (wants("phi")) results.push_back(phi_suite(opts.samples.value_or(100), seed));
  if (wants("bounds")) results.push_back(bounds_suite(opts.samples.value_or(6), opts.cfg));

  bool all = true;
  json suites = json::array();
  for (const auto& r : results) {
    all = all && r.failures == 0;
    suites.push_back(r.to_json());
  }
  json args = {{"suite", opts.suite}, {"config", to_json(opts.cfg)}};
  if (opts.samples) args["samples"] = *opts.samples;
  return {envelope("verify", std::move(args), {{"suites", suites}, {"all_passed", all}}, started), all ? 0 : 1};
}

}  // namespace incompat
