#include "orbitlab/cli/commands.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "orbitlab/cli/corpus.hpp"

namespace orbitlab::cli {

namespace {

FinVec e(Index k) { return FinVec::basis(k); }

struct Context {
  const json& config;
  Node root;
  std::string hash;
  std::vector<SoundnessCheck> checks;

  explicit Context(const json& c) : config(c), root(c, ""), hash(config_hash(c)) {}

  void check(std::string name, bool passed, std::string detail = {}) {
    checks.push_back({std::move(name), passed, std::move(detail)});
  }

  CommandOutput finish(const std::string& subcommand, std::size_t horizon, ordered_json result,
                       std::optional<std::string> csv = std::nullopt) {
    CommandOutput out;
    out.sound = std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
    out.report = envelope(subcommand, hash, horizon, std::move(result), checks);
    out.csv = std::move(csv);
    return out;
  }
};

ordered_json gap_json(std::span<const Index> indices) {
  if (indices.size() < 2) return nullptr;
  auto g = gap_stats(indices);
  ordered_json hist = ordered_json::object();
  for (const auto& [gap, count] : g.histogram) hist[std::to_string(gap)] = count;
  return ordered_json{{"gaps", index_list(g.gaps)},
                      {"max_gap", g.max_gap},
                      {"strictly_increasing", g.strictly_increasing_gaps},
                      {"histogram", std::move(hist)}};
}

ordered_json mode_json(const ZeroMode& zm) {
  if (zm.exact) return "exact";
  return ordered_json{{"epsilon", rational_json(zm.epsilon)}};
}

ordered_json verdict_json(const StabilityVerdict& v) {
  ordered_json evidence = ordered_json::array();
  for (const auto& ev : v.evidence) {
    evidence.push_back({{"functional", ev.functional},
                        {"tail_min", rational_json(ev.tail_min)},
                        {"tail_max", rational_json(ev.tail_max)},
                        {"argmax", index_list(ev.argmax)},
                        {"zero_count", ev.zero_count}});
  }
  std::vector<Index> witness(v.witness_indices.begin(), v.witness_indices.end());
  ordered_json out{{"mode", to_string(v.mode)},
                   {"verdict", to_string(v.verdict)},
                   {"verdict_scope", kEvidenceLabel},
                   {"window_start", v.window_start},
                   {"simultaneous_zero_count", v.simultaneous_zeros.size()},
                   {"witness_indices", index_list(v.witness_indices)},
                   {"witness_gaps", gap_json(witness)},
                   {"evidence", std::move(evidence)}};
  if (v.nondecay) {
    out["nondecay"] = {{"functional", v.nondecay->functional}, {"hit_count", v.nondecay->indices.size()},
                       {"indices", index_list(v.nondecay->indices)}};
  } else {
    out["nondecay"] = nullptr;
  }
  return out;
}

ordered_json certificate_json(const SubseqCertificate& c) {
  ordered_json windows = ordered_json::array();
  for (const auto& w : c.windows) {
    ordered_json blockers = ordered_json::array();
    for (const auto& [n, f] : w.blockers) blockers.push_back({n, f});
    windows.push_back({{"start", w.start},
                       {"end", w.end},
                       {"witness_hits", w.witness_hits},
                       {"blockers", std::move(blockers)}});
  }
  ordered_json out{{"kind", to_string(c.kind)},
                   {"max_gap", c.max_gap},
                   {"burn_in", c.burn_in},
                   {"horizon", c.horizon},
                   {"note", c.note}};
  out["subsequence"] = index_list(c.subsequence.indices());
  out["witness_functional"] = c.witness_functional ? ordered_json(*c.witness_functional) : ordered_json(nullptr);
  out["windows"] = std::move(windows);
  out["first_barrier"] = c.first_barrier ? ordered_json{c.first_barrier->first, c.first_barrier->second}
                                         : ordered_json(nullptr);
  return out;
}

std::vector<std::vector<Rational>> rows_of(std::span<const PairingSeries> series) {
  std::vector<std::vector<Rational>> rows;
  for (const auto& s : series) rows.push_back(s.values);
  return rows;
}

void check_certificates(Context& ctx, std::span<const PairingSeries> series, const SubseqCertificate& cert,
                        const ZeroMode& zm) {
  const auto rows = rows_of(series);
  const std::string tag = "M=" + std::to_string(cert.max_gap);
  if (cert.kind == SubseqKind::Certificate) {
    ctx.check("certificate re-verified (" + tag + ")", verify_certificate(cert, rows, zm));
  } else if (cert.kind == SubseqKind::Refutation) {
    ctx.check("refutation re-verified (" + tag + ")", verify_refutation(cert, rows, zm));
  }
}

void check_witness_zeros(Context& ctx, std::span<const PairingSeries> series, const StabilityVerdict& v,
                         const ZeroMode& zm) {
  bool ok = true;
  for (auto n : v.simultaneous_zeros)
    for (const auto& s : series) ok = ok && zm.vanishes(s.values[n]);
  ctx.check("simultaneous zeros vanish on every family member", ok);
}

void check_recompute(Context& ctx, std::span<const PairingSeries> series) {
  bool ok = std::all_of(series.begin(), series.end(), [](const auto& s) { return recompute_matches(s); });
  ctx.check("series recompute exactly", ok, std::to_string(series.size()) + " series");
}

SparseIndexSet base_set(const Node& root) {
  const auto base = root.uint_or("base", 3);
  try {
    return make_geometric_set(base, 1u << 16);
  } catch (const DoublingViolation& err) {
    root.at("base").fail(err.what());
  }
}

CommandOutput foguel_demo(const json& config) {
  Context ctx(config);
  const auto& root = ctx.root;
  const auto set = base_set(root);
  const std::size_t horizon = parse_horizon(root, 500);
  const auto gaps = parse_max_gaps(root, 8);
  const Index family_bound = root.uint_or("family_bound", 12);
  const std::size_t window_start = root.uint_or("window_start", 10);
  const Index burn_in = root.uint_or("burn_in", 10);
  if (window_start > horizon) root.at("window_start").fail("past the horizon");

  const auto f = foguel(set);
  const Vector x = PairVec{{}, e(0)};
  const Vector z = PairVec{e(0), {}};
  const auto witness = pairing_series(f, x, z, horizon);

  std::vector<Index> hits;
  ordered_json hit_values = ordered_json::array();
  for (std::size_t n = 0; n <= horizon; ++n) {
    if (sgn(witness.values[n]) == 0) continue;
    hits.push_back(n);
    hit_values.push_back(rational_json(witness.values[n]));
  }

  bool recursion_ok = true;
  bool closed_ok = true;
  for (std::size_t n = 0; n <= horizon; ++n) {
    recursion_ok = recursion_ok && witness.values[n] == pn_recursive(set, n, e(0)).coeff(0);
    closed_ok = closed_ok && witness.values[n] == pn_closed_form(set, n, 0).coeff(0);
  }
  ctx.check("witness series equals the P_n recursion", recursion_ok);
  ctx.check("witness series equals the P_n closed form", closed_ok);
  std::vector<Index> expected;
  for (Index m : set.enumerate(horizon)) {
    if (2 * m + 1 <= horizon) expected.push_back(2 * m + 1);
  }
  ctx.check("hit set is {2m+1 : m in J}", hits == expected);

  std::vector<Vector> family;
  for (Index k = 0; k <= family_bound; ++k) family.emplace_back(PairVec{e(k), {}});
  for (Index k = 0; k <= family_bound; ++k) family.emplace_back(PairVec{{}, e(k)});
  const auto series = pairing_family(f, x, family, horizon);
  WeakOptions wopts;
  wopts.window_start = window_start;
  const auto verdict = classify_weak(series, wopts);
  check_witness_zeros(ctx, series, verdict, wopts.zero_mode);

  DetectorOptions dopts;
  dopts.burn_in = burn_in;
  ordered_json gap_results = ordered_json::array();
  for (Index m : gaps) {
    const auto cert = find_bounded_gap_zero_subseq(series, m, dopts);
    check_certificates(ctx, series, cert, wopts.zero_mode);
    gap_results.push_back(certificate_json(cert));
  }

  ordered_json result;
  result["operator"] = f.describe();
  result["base_set"] = set.description();
  result["x"] = vector_json(x);
  result["z"] = vector_json(z);
  result["witness_series"] = {{"hit_set", index_list(hits)},
                              {"hit_values", std::move(hit_values)},
                              {"hit_gaps", gap_json(hits)},
                              {"zero_elsewhere", true}};
  result["weak_classification"] = verdict_json(verdict);
  result["weak_classification"]["family"] = "coordinate pairs (e_k,0), (0,e_k) for k <= " +
                                            std::to_string(family_bound);
  result["gap_analysis"] = std::move(gap_results);
  return ctx.finish("foguel-demo", horizon, std::move(result));
}

CommandOutput pairing(const json& config) {
  Context ctx(config);
  const auto& root = ctx.root;
  const auto op = parse_operator(root.at("operator"));
  const Vector x = parse_vector(root.at("x"), op.domain());
  const Vector z = parse_vector(root.at("z"), op.domain());
  const std::size_t horizon = parse_horizon(root, 100);
  const std::size_t window_start = root.uint_or("window_start", 0);
  if (window_start > horizon) root.at("window_start").fail("past the horizon");

  const auto s = pairing_series(op, x, z, horizon);
  std::vector<PairingSeries> one{s};
  check_recompute(ctx, one);

  std::vector<Index> nonzero;
  for (std::size_t n = 0; n <= horizon; ++n)
    if (sgn(s.values[n]) != 0) nonzero.push_back(n);
  const auto tail = tail_extrema(s, window_start);

  ordered_json result;
  result["operator"] = op.describe();
  result["x"] = vector_json(x);
  result["z"] = vector_json(z);
  result["nonzero_indices"] = index_list(nonzero);
  result["tail"] = {{"window_start", window_start},
                    {"min_abs", rational_json(tail.min)},
                    {"max_abs", rational_json(tail.max)},
                    {"argmin", index_list(tail.argmin)},
                    {"argmax", index_list(tail.argmax)}};
  return ctx.finish("pairing", horizon, std::move(result), series_csv(s.values));
}

CommandOutput classify(const json& config) {
  Context ctx(config);
  const auto& root = ctx.root;
  const auto op = parse_operator(root.at("operator"));
  const Vector x = parse_vector(root.at("x"), op.domain());
  const auto family = parse_family(root.at("family"), op.domain());
  const std::size_t horizon = parse_horizon(root, 500);

  WeakOptions opts;
  opts.zero_mode = parse_zero_mode(root);
  opts.window_start = root.uint_or("window_start", opts.window_start);
  opts.min_zero_hits = root.uint_or("min_zero_hits", opts.min_zero_hits);
  opts.delta = root.rational_or("delta", opts.delta);
  if (sgn(opts.delta) <= 0) root.at("delta").fail("delta must be positive");
  if (opts.window_start > horizon) root.at("window_start").fail("past the horizon");
  if (auto cands = root.find("candidate_subsequences")) {
    for (std::size_t i = 0; i < cands->size(); ++i) {
      auto list = cands->at(i).as_uint_list();
      opts.candidate_subsequences.emplace_back(list.begin(), list.end());
    }
  }

  const auto series = pairing_family(op, x, family, horizon);
  const auto verdict = classify_weak(series, opts);
  check_recompute(ctx, series);
  check_witness_zeros(ctx, series, verdict, opts.zero_mode);
  if (verdict.verdict == Verdict::InstabilityWitnessed && verdict.nondecay) {
    bool ok = true;
    for (auto n : verdict.nondecay->indices) ok = ok && abs(series[verdict.nondecay->functional].values[n]) >= opts.delta;
    ctx.check("non-decay witness stays at or above delta", ok);
  }

  ordered_json result;
  result["operator"] = op.describe();
  result["x"] = vector_json(x);
  result["family_size"] = family.size();
  result["zero_mode"] = mode_json(opts.zero_mode);
  result["classification"] = verdict_json(verdict);
  return ctx.finish("classify", horizon, std::move(result));
}

CommandOutput gaps(const json& config) {
  Context ctx(config);
  const auto& root = ctx.root;
  const auto op = parse_operator(root.at("operator"));
  const Vector x = parse_vector(root.at("x"), op.domain());
  const auto family = parse_family(root.at("family"), op.domain());
  const std::size_t horizon = parse_horizon(root, 2000);
  const auto gap_bounds = parse_max_gaps(root, 8);
  DetectorOptions opts;
  opts.zero_mode = parse_zero_mode(root);
  opts.burn_in = root.uint_or("burn_in", opts.burn_in);
  opts.span_fraction = root.double_or("span_fraction", opts.span_fraction);
  if (opts.span_fraction < 0.0 || opts.span_fraction > 1.0) root.at("span_fraction").fail("must lie in [0, 1]");

  const auto series = pairing_family(op, x, family, horizon);
  ordered_json certs = ordered_json::array();
  for (Index m : gap_bounds) {
    const auto cert = find_bounded_gap_zero_subseq(series, m, opts);
    check_certificates(ctx, series, cert, opts.zero_mode);
    certs.push_back(certificate_json(cert));
  }

  ordered_json result;
  result["operator"] = op.describe();
  result["x"] = vector_json(x);
  result["family_size"] = family.size();
  result["zero_mode"] = mode_json(opts.zero_mode);
  result["results"] = std::move(certs);
  return ctx.finish("gaps", horizon, std::move(result));
}

CommandOutput transfer(const json& config) {
  Context ctx(config);
  const auto& root = ctx.root;
  std::vector<Rational> values;
  std::string source;
  if (auto s = root.find("series")) {
    for (std::size_t i = 0; i < s->size(); ++i) values.push_back(s->at(i).as_rational());
    if (values.empty()) s->fail("series is empty");
    source = "explicit series";
  } else {
    const auto op = parse_operator(root.at("operator"));
    const Vector x = parse_vector(root.at("x"), op.domain());
    const Vector z = parse_vector(root.at("z"), op.domain());
    values = pairing_series(op, x, z, parse_horizon(root, 200)).values;
    source = "pairing series of " + op.describe();
  }
  const Index horizon = values.size() - 1;

  const Node sub = root.at("subsequence");
  std::vector<Index> indices;
  if (sub.has("indices")) {
    indices = sub.at("indices").as_uint_list();
  } else {
    const Index step = sub.at("step").as_uint();
    if (step == 0) sub.at("step").fail("step must be >= 1");
    for (Index n = sub.uint_or("start", 0); n <= horizon; n += step) indices.push_back(n);
  }
  const auto gap_bounds = parse_max_gaps(root, 0);
  if (gap_bounds.size() != 1 || gap_bounds.front() == 0) root.fail("transfer needs a single \"max_gap\"");
  IndexSubsequence n_k;
  try {
    n_k = IndexSubsequence::with_gap_bound(indices, gap_bounds.front());
  } catch (const PreconditionError& err) {
    sub.fail(err.what());
  }

  const Rational alpha = root.rational_or("alpha", Rational(0));
  Rational eps;
  if (root.has("tolerance")) {
    eps = root.at("tolerance").as_rational();
  } else {
    const auto zm = parse_zero_mode(root);
    if (zm.exact) root.fail("transfer needs \"tolerance\" or an epsilon mode");
    eps = zm.epsilon;
  }
  if (sgn(eps) <= 0) root.fail("tolerance must be positive");
  const Index burn_in = root.uint_or("burn_in", 10);

  TransferReport rep;
  try {
    rep = transfer_convergence(values, n_k, alpha, eps, burn_in);
  } catch (const PreconditionError& err) {
    sub.fail(err.what());
  }
  ctx.check("no transfer violation", !rep.violation,
            rep.violation ? "violation at n = " + std::to_string(*rep.violation) : "");

  ordered_json result;
  result["source"] = source;
  result["subsequence_size"] = n_k.size();
  result["max_gap"] = gap_bounds.front();
  result["alpha"] = rational_json(alpha);
  result["tolerance"] = rational_json(eps);
  result["burn_in"] = burn_in;
  result["hypothesis_holds"] = rep.hypothesis_holds;
  if (rep.hypothesis_failure) {
    result["hypothesis_failure"] = {{"n_k", rep.hypothesis_failure->n_k},
                                    {"j", rep.hypothesis_failure->j},
                                    {"n", rep.hypothesis_failure->n}};
  } else {
    result["hypothesis_failure"] = nullptr;
  }
  result["transfer_from"] = rep.transfer_from ? ordered_json(*rep.transfer_from) : ordered_json(nullptr);
  result["conclusion_holds"] = rep.conclusion_holds;
  result["conclusion_asserted"] = rep.hypothesis_holds;
  result["violation"] = rep.violation ? ordered_json(*rep.violation) : ordered_json(nullptr);
  return ctx.finish("transfer", horizon, std::move(result));
}

std::vector<FiniteMatrix> load_matrices(const Node& root) {
  std::vector<FiniteMatrix> out;
  if (auto list = root.find("matrices")) {
    for (std::size_t i = 0; i < list->size(); ++i) {
      const Node m = list->at(i);
      std::vector<std::vector<Rational>> rows;
      for (std::size_t r = 0; r < m.size(); ++r) {
        rows.emplace_back();
        for (std::size_t c = 0; c < m.at(r).size(); ++c) rows.back().push_back(m.at(r).at(c).as_rational());
      }
      try {
        out.push_back(FiniteMatrix::from_rows(rows));
      } catch (const std::invalid_argument& err) {
        m.fail(err.what());
      }
    }
  }
  if (auto corpus = root.find("corpus")) {
    const auto seed = corpus->uint_or("seed", root.uint_or("seed", 1));
    const auto count = corpus->at("count").as_uint();
    const auto dim = corpus->at("dim").as_uint();
    if (dim == 0) corpus->at("dim").fail("dim must be >= 1");
    const auto bound = corpus->uint_or("entry_bound", 1);
    const auto den = corpus->uint_or("max_denominator", 8);
    if (den == 0) corpus->at("max_denominator").fail("must be >= 1");
    auto more = seeded_random_corpus(seed, count, dim, bound, den);
    out.insert(out.end(), more.begin(), more.end());
  }
  if (out.empty()) root.fail("give \"matrices\" and/or a \"corpus\"");
  return out;
}

ordered_json matrix_json(const FiniteMatrix& m) {
  ordered_json rows = ordered_json::array();
  for (std::size_t r = 0; r < m.dim(); ++r) {
    ordered_json row = ordered_json::array();
    for (std::size_t c = 0; c < m.dim(); ++c) row.push_back(to_string(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

CommandOutput matrix_stability(const json& config) {
  Context ctx(config);
  const auto& root = ctx.root;
  const auto matrices = load_matrices(root);
  const std::size_t horizon = parse_horizon(root, 40);
  if (horizon < 4) root.at("horizon").fail("matrix-stability needs horizon >= 4");
  const double tol = root.double_or("tol", 1e-9);
  if (!(tol > 0.0)) root.at("tol").fail("tol must be positive");

  ordered_json reports = ordered_json::array();
  std::size_t uniform_failures = 0;
  std::size_t strong_failures = 0;
  std::size_t norm_failures = 0;
  for (std::size_t i = 0; i < matrices.size(); ++i) {
    const auto& m = matrices[i];
    std::vector<FinVec> probes;
    if (auto p = root.find("probes")) {
      for (std::size_t k = 0; k < p->size(); ++k)
        probes.push_back(std::get<FinVec>(parse_vector(p->at(k), Domain::finite(m.dim()))));
    } else {
      FinVec ones;
      for (std::size_t k = 0; k < m.dim(); ++k) {
        probes.push_back(e(k));
        ones += e(k);
      }
      probes.push_back(ones);
    }

    ordered_json entry;
    entry["index"] = i;
    entry["entries"] = matrix_json(m);
    try {
      const auto u = uniform_equivalence_check(m, horizon, tol);
      ordered_json envelope_checks = ordered_json::array();
      for (const auto& c : u.envelope)
        envelope_checks.push_back({{"multiple", c.multiple}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"ok", c.ok}});
      entry["uniform"] = {{"norms", u.norms},
                          {"n0", u.n0},
                          {"min_norm", u.min_norm},
                          {"quasistability_witnessed", u.quasistability_witnessed},
                          {"envelope", std::move(envelope_checks)},
                          {"gelfand", u.gelfand},
                          {"gelfand_below_one", u.gelfand_below_one},
                          {"pass", u.pass},
                          {"summary", u.summary}};
      if (!u.pass) ++uniform_failures;
    } catch (const NormNonConvergence& err) {
      ++norm_failures;
      entry["uniform"] = {{"error", err.what()}, {"last_estimate", err.last_estimate}};
    }
    ordered_json strong = ordered_json::array();
    const auto reps = strong_equivalence_check(m, probes, horizon);
    for (std::size_t k = 0; k < reps.size(); ++k) {
      const auto& r = reps[k];
      if (!r.inequality_holds) ++strong_failures;
      strong.push_back({{"probe", vector_json(probes[k])},
                        {"argmin", r.argmin},
                        {"min_sq", rational_json(r.min_sq)},
                        {"bound_sq", rational_json(r.bound_sq)},
                        {"margin", rational_json(r.margin)},
                        {"inequality_holds", r.inequality_holds},
                        {"status", to_string(r.status)}});
    }
    entry["strong"] = std::move(strong);
    reports.push_back(std::move(entry));
  }
  ctx.check("power norms converged", norm_failures == 0, std::to_string(norm_failures) + " failures");
  ctx.check("uniform quasistability implies decay", uniform_failures == 0,
            std::to_string(uniform_failures) + " failures");
  ctx.check("strong tail inequality (exact)", strong_failures == 0, std::to_string(strong_failures) + " failures");

  ordered_json result;
  result["matrix_count"] = matrices.size();
  result["tol"] = tol;
  result["matrices"] = std::move(reports);
  return ctx.finish("matrix-stability", horizon, std::move(result));
}

FitOptions fit_options(const Node& root, std::size_t family_size) {
  FitOptions opts;
  opts.threshold = root.rational_or("threshold", Rational(0));
  if (sgn(opts.threshold) < 0) root.at("threshold").fail("threshold must be non-negative");
  if (auto fb = root.find("fallback_anchors")) {
    for (auto a : fb->as_uint_list()) {
      if (a >= family_size) fb->fail("anchor " + std::to_string(a) + " not in the family");
      opts.fallback_anchors.push_back(a);
    }
  }
  return opts;
}

bool anchors_exact(const OperatorExpr& op, const ProbeReport& r) {
  for (const auto& row : r.rows) {
    if (!row.alpha) continue;
    const Vector fitted = difference(scaled(apply_power(op, row.n, r.y), *row.alpha), r.x);
    if (sgn(inner(fitted, r.family[*row.anchor_used])) != 0) return false;
  }
  return true;
}

ordered_json probe_json(const ProbeReport& r) {
  std::size_t defined = 0;
  for (const auto& row : r.rows) defined += row.alpha ? 1 : 0;
  return ordered_json{{"defined_rows", defined},
                      {"orbit_annihilated", r.orbit_annihilated},
                      {"threshold", rational_json(r.threshold)},
                      {"candidate_subsequence", index_list(r.candidate_subsequence)},
                      {"alpha_sup", r.alpha_sup ? rational_json(*r.alpha_sup) : ordered_json(nullptr)},
                      {"candidate_gaps", gap_json(r.candidate_subsequence)}};
}

ordered_json alpha_json(const std::optional<AlphaDiagnostic>& a) {
  if (!a) return nullptr;
  return ordered_json{{"flag", to_string(a->flag)},
                      {"first_quarter_max", rational_json(a->first_quarter_max)},
                      {"last_quarter_max", rational_json(a->last_quarter_max)},
                      {"message", a->message}};
}

ordered_json hit_json(const std::optional<OrbitHit>& h) {
  if (!h) return nullptr;
  return ordered_json{{"alpha", rational_json(h->alpha)}, {"n", h->n}};
}

Vector nonzero_vector(const Node& n, const Domain& d) {
  Vector v = parse_vector(n, d);
  if (is_zero(v)) n.fail("must be nonzero");
  return v;
}

CommandOutput probe_supercyclic(const json& config) {
  Context ctx(config);
  const auto& root = ctx.root;
  const auto op = parse_operator(root.at("operator"));
  const Vector y = nonzero_vector(root.at("y"), op.domain());
  const Vector x = parse_vector(root.at("x"), op.domain());
  const auto family = parse_family(root.at("family"), op.domain());
  const std::size_t horizon = parse_horizon(root, 200);
  const std::size_t anchor = root.uint_or("anchor", 0);
  if (anchor >= family.size()) root.at("anchor").fail("anchor not in the family");
  const auto opts = fit_options(root, family.size());

  const auto hit = is_zero(x) ? std::nullopt : orbit_membership(op, y, x, horizon);
  const auto report = projective_fit(op, y, x, family, horizon, anchor, opts);
  std::optional<AlphaDiagnostic> alpha;
  if (!report.candidate_subsequence.empty()) alpha = alpha_boundedness_report(report, hit.has_value());
  ctx.check("residuals recompute exactly", verify_residuals(op, report));
  ctx.check("anchor pairing of the fit vanishes", anchors_exact(op, report));

  ordered_json result;
  result["operator"] = op.describe();
  result["y"] = vector_json(y);
  result["x"] = vector_json(x);
  result["family_size"] = family.size();
  result["anchor"] = anchor;
  result["orbit_membership"] = hit_json(hit);
  result["probe"] = probe_json(report);
  result["alpha_diagnostic"] = alpha_json(alpha);
  result["question_status"] = "open; this probe gathers evidence only";
  return ctx.finish("probe-supercyclic", horizon, std::move(result), probe_csv(report.rows));
}

CommandOutput dichotomy(const json& config) {
  Context ctx(config);
  const auto& root = ctx.root;
  const auto op = parse_operator(root.at("operator"));
  const Vector y = nonzero_vector(root.at("y"), op.domain());
  const auto targets = parse_family(root.at("targets"), op.domain());
  const auto family = parse_family(root.at("family"), op.domain());
  const std::size_t horizon = parse_horizon(root, 200);
  std::vector<Index> gap_bounds;
  if (root.has("max_gaps") || root.has("max_gap")) {
    gap_bounds = parse_max_gaps(root, 1);
  } else {
    for (Index m = 1; m <= 10; ++m) gap_bounds.push_back(m);
  }
  const std::size_t anchor = root.uint_or("anchor", 0);
  if (anchor >= family.size()) root.at("anchor").fail("anchor not in the family");
  const auto opts = fit_options(root, family.size());

  const auto rep = dichotomy_report(op, y, targets, family, horizon, gap_bounds, anchor, opts);
  bool residuals = true;
  for (const auto& row : rep.rows) {
    if (row.probe) residuals = residuals && verify_residuals(op, *row.probe) && anchors_exact(op, *row.probe);
  }
  ctx.check("residuals recompute exactly", residuals);

  ordered_json rows = ordered_json::array();
  for (const auto& row : rep.rows) {
    ordered_json cells = ordered_json::array();
    for (const auto& c : row.cells) {
      cells.push_back({{"max_gap", c.max_gap},
                       {"bounded_gap_walk", c.bounded_gap_walk},
                       {"alternative", to_string(c.alternative)}});
    }
    rows.push_back({{"target", vector_json(targets[row.target])},
                    {"in_orbit", hit_json(row.in_orbit)},
                    {"probe", row.probe ? probe_json(*row.probe) : ordered_json(nullptr)},
                    {"alpha_diagnostic", alpha_json(row.alpha)},
                    {"cells", std::move(cells)}});
  }
  ordered_json result;
  result["operator"] = op.describe();
  result["y"] = vector_json(y);
  result["power_bounded_precondition"] = rep.power_bounded_precondition;
  if (!rep.power_bounded_precondition) {
    result["precondition_note"] = "growth flagged on y or a target; the alternatives assume power boundedness";
  }
  result["rows"] = std::move(rows);
  return ctx.finish("dichotomy", horizon, std::move(result));
}

using Handler = std::function<CommandOutput(const json&)>;

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> table{
      {"foguel-demo", foguel_demo}, {"pairing", pairing},
      {"classify", classify},       {"gaps", gaps},
      {"transfer", transfer},       {"matrix-stability", matrix_stability},
      {"probe-supercyclic", probe_supercyclic}, {"dichotomy", dichotomy},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"foguel-demo", "pairing", "classify", "gaps",
                                              "transfer", "matrix-stability", "probe-supercyclic",
                                              "dichotomy"};
  return names;
}

CommandOutput run_command(const std::string& name, const json& config) {
  auto it = handlers().find(name);
  if (it == handlers().end()) throw ConfigError("", "unknown subcommand \"" + name + "\"");
  if (!config.is_object()) throw ConfigError("", "config root must be an object");
  return it->second(config);
}

}  // namespace orbitlab::cli
