#include "rauzy_io/serialize.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "rauzy/error.hpp"

namespace rauzy::io {

namespace {

ordered_json words_json(const std::vector<Word>& ws) {
  ordered_json a = ordered_json::array();
  for (const Word& w : ws) a.push_back(w.str());
  return a;
}

ordered_json array3(const std::array<double, 3>& v) { return ordered_json::array({v[0], v[1], v[2]}); }

}  // namespace

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

ordered_json to_json(const CartanVec& k) { return ordered_json::array({k.k1, k.k2, k.k3}); }

ordered_json to_json(const PressureReport& r) {
  ordered_json j;
  j["s"] = r.s;
  j["fit"] = to_string(r.fit);
  j["slope"] = r.slope;
  j["slope_stderr"] = r.slope_stderr;
  j["depths"] = r.depths;
  j["log_sums"] = r.log_sums;
  j["fit_depths"] = r.fit_depths;
  return j;
}

ordered_json to_json(const ExponentEstimate& e) {
  ordered_json j;
  j["s_hat"] = e.s_hat;
  j["bracket"] = {e.lo, e.hi};
  j["n_min"] = e.n_min;
  j["n_max"] = e.n_max;
  ordered_json ev = ordered_json::array();
  for (const auto& p : e.evaluations) ev.push_back({{"s", p.s}, {"slope", p.slope}, {"slope_stderr", p.slope_stderr}});
  j["evaluations"] = ev;
  return j;
}

ordered_json to_json(const CoverReport& r) {
  ordered_json j;
  j["delta"] = r.delta;
  j["s"] = r.s;
  j["triangles"] = r.triangles;
  j["cost"] = r.cost;
  j["boxes"] = r.boxes;
  j["truncated"] = r.truncated;
  j["repeated_tail"] = r.repeated_tail;
  j["max_depth"] = r.max_depth;
  return j;
}

ordered_json to_json(const BoxCountResult& r) {
  ordered_json j;
  j["slope"] = r.slope;
  j["slope_stderr"] = r.slope_stderr;
  j["r2"] = r.r2;
  ordered_json rows = ordered_json::array();
  for (std::size_t i = 0; i < r.deltas.size(); ++i)
    rows.push_back({{"delta", r.deltas[i]}, {"boxes", r.counts[i]}, {"leaves", r.leaves[i]}});
  j["scales"] = rows;
  return j;
}

ordered_json to_json(const EpsilonEstimate& e) {
  return {{"epsilon", e.epsilon},
          {"attained_by", e.attained_by.str()},
          {"depth_attained", e.depth_attained},
          {"words_checked", e.words_checked}};
}

ordered_json to_json(const MeasureSpec& m) {
  ordered_json sup = ordered_json::array();
  for (const Atom& a : m.support) sup.push_back({{"word", a.word.str()}, {"weight", a.weight}});
  return {{"support", sup}, {"provenance", to_string(m.provenance)}};
}

ordered_json to_json(const LyapunovEstimate& l) {
  return {{"lambda", array3(l.lambda)},   {"stderr", array3(l.stderr_)},
          {"steps", l.steps},             {"trials", l.trials},
          {"seed", l.seed},               {"renorm_period", l.renorm_period},
          {"max_trial_sum", l.max_trial_sum}};
}

ordered_json to_json(const EntropyReport& e) {
  return {{"h", e.h}, {"branch", to_string(e.branch)}, {"per_k", e.per_k}, {"nonincreasing", e.nonincreasing}};
}

ordered_json to_json(const DimReport& d) {
  ordered_json j{{"h", d.h}, {"chi", {d.chi1, d.chi2}}, {"d", d.d}, {"dim_ly", d.dim}, {"clamped", d.clamped}};
  if (!d.entropy_branch.empty()) j["entropy_branch"] = d.entropy_branch;
  j["chi_stderr"] = {d.chi_stderr[0], d.chi_stderr[1]};
  return j;
}

ordered_json to_json(const SearchResult& r) {
  ordered_json j;
  j["report"] = to_json(r.report);
  j["lyapunov"] = to_json(r.lyapunov);
  j["center"] = {r.center[0], r.center[1]};
  j["window_words"] = r.window_words;
  if (r.mixed) j["mixed"] = to_json(*r.mixed);
  ordered_json cands = ordered_json::array();
  for (const auto& c : r.candidates) {
    ordered_json cj{{"center", {c.center[0], c.center[1]}},
                    {"cluster_size", c.cluster_size},
                    {"support_size", c.support_size},
                    {"simple_spectrum", c.simple_spectrum},
                    {"lambda", array3(c.lyapunov.lambda)},
                    {"stderr", array3(c.lyapunov.stderr_)}};
    if (c.simple_spectrum) cj["dim_ly"] = c.report.dim;
    if (c.mixed) cj["mixed_dim_ly"] = c.mixed->dim;
    cands.push_back(cj);
  }
  j["candidates"] = cands;
  j["measure"] = to_json(r.best);
  return j;
}

ordered_json to_json(const LoxodromyCert& c) {
  return {{"r", c.r},
          {"eps", c.eps},
          {"gap12", c.gap12},
          {"gap23", c.gap23},
          {"dist", c.dist},
          {"wedge_dist", c.wedge_dist},
          {"gap12_ok", to_string(c.gap12_ok)},
          {"gap23_ok", to_string(c.gap23_ok)},
          {"dist_ok", to_string(c.dist_ok)},
          {"wedge_dist_ok", to_string(c.wedge_dist_ok)},
          {"verdict", to_string(c.verdict)},
          {"reason", c.reason}};
}

ordered_json to_json(const SchottkyCert& c) {
  ordered_json members = ordered_json::array();
  for (const auto& m : c.members) members.push_back(to_json(m));
  return {{"r", c.r},
          {"eps", c.eps},
          {"verdict", to_string(c.verdict)},
          {"reason", c.reason},
          {"min_pair_dist", c.min_pair_dist},
          {"min_slack", c.min_slack},
          {"dist", c.dist},
          {"wedge_dist", c.wedge_dist},
          {"members", members}};
}

ordered_json to_json(const NarrowCert& c) {
  return {{"eta", c.eta},
          {"narrow", c.narrow},
          {"attracting_diam", c.attracting_diam},
          {"repelling_diam", c.repelling_diam},
          {"wedge_attracting_diam", c.wedge_attracting_diam},
          {"wedge_repelling_diam", c.wedge_repelling_diam},
          {"reason", c.reason}};
}

ordered_json to_json(const TilingReport& t) {
  return {{"n", t.n},
          {"arcs", t.arcs},
          {"max_endpoint_gap", t.max_endpoint_gap},
          {"angular_sum", t.angular_sum},
          {"chordal_sum", t.chordal_sum},
          {"ordered", t.ordered},
          {"pass", t.pass}};
}

ordered_json to_json(const LemmaA1Report& r) {
  ordered_json levels = ordered_json::array();
  for (const auto& L : r.levels)
    levels.push_back({{"depth", L.depth}, {"min_s2", L.min_s2}, {"min_ratio", L.min_ratio}, {"eps_hat", L.eps_hat}});
  return {{"eps_hat", r.eps_hat},
          {"worst_word", r.worst_word.str()},
          {"worst_term", r.worst_term},
          {"words", r.words},
          {"min_phi_margin", r.min_phi_margin},
          {"levels", levels}};
}

ordered_json to_json(const EvidenceReport& r) {
  ordered_json levels = ordered_json::array();
  for (const auto& L : r.levels)
    levels.push_back({{"n", L.n},
                      {"count", L.count},
                      {"level_sum", L.level_sum},
                      {"cumulative", L.cumulative},
                      {"eps_hat", L.eps_hat}});
  return {{"strictly_increasing", r.strictly_increasing}, {"tail_slope", r.tail_slope}, {"levels", levels}};
}

MeasureSpec measure_from_json(const ordered_json& j) {
  try {
    MeasureSpec m;
    for (const auto& a : j.at("support")) m.support.push_back({Word::parse(a.at("word").get<std::string>()), a.at("weight").get<double>()});
    if (j.contains("provenance")) m.provenance = provenance_from_string(j.at("provenance").get<std::string>());
    m.validate();
    return m;
  } catch (const ordered_json::exception& e) {
    throw InputError(std::string("malformed measure JSON: ") + e.what());
  }
}

MeasureSpec read_measure(const std::filesystem::path& p) {
  std::ifstream f(p);
  if (!f) throw InputError("cannot open measure file " + p.string());
  try {
    return measure_from_json(ordered_json::parse(f));
  } catch (const ordered_json::parse_error& e) {
    throw InputError(p.string() + ": " + e.what());
  }
}

std::string box_count_csv(const BoxCountResult& r) {
  std::ostringstream os;
  os << "delta,boxes,leaves\n";
  for (std::size_t i = 0; i < r.deltas.size(); ++i)
    os << format_double(r.deltas[i]) << ',' << r.counts[i] << ',' << r.leaves[i] << '\n';
  return os.str();
}

std::string pressure_csv(const PressureReport& r) {
  std::ostringstream os;
  os << "n,log_z\n";
  for (std::size_t i = 0; i < r.depths.size(); ++i) os << r.depths[i] << ',' << format_double(r.log_sums[i]) << '\n';
  return os.str();
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

void write_text(const std::filesystem::path& p, const std::string& text) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw InputError("cannot open " + p.string() + " for writing");
  f << text;
  if (!f) throw InputError("failed writing " + p.string());
}

}  // namespace rauzy::io
