#include "run.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "rauzy/appendix.hpp"
#include "rauzy/error.hpp"
#include "rauzy/gasket.hpp"
#include "rauzy/poincare.hpp"
#include "rauzy/random_walk.hpp"
#include "rauzy/schottky.hpp"
#include "rauzy_io/serialize.hpp"
#include "selftest.hpp"

#ifndef RAUZY_VERSION
#define RAUZY_VERSION "0.0.0"
#endif

namespace rauzy::cli {

namespace {

using io::ordered_json;

std::vector<Word> parse_words(const std::string& list) {
  std::vector<Word> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(), [](unsigned char c) { return std::isspace(c); }),
               item.end());
    if (item.empty()) throw InputError("empty word in list '" + list + "'");
    out.push_back(Word::parse(item));
  }
  if (out.empty()) throw InputError("word list is empty");
  return out;
}

std::vector<double> parse_doubles(const std::string& list) {
  std::vector<double> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw InputError("not a number: '" + item + "'");
    }
  }
  return out;
}

SlopeFit parse_fit(const std::string& s) {
  if (s == "linear") return SlopeFit::Linear;
  if (s == "log" || s == "log-corrected") return SlopeFit::LogCorrected;
  throw InputError("--fit must be 'linear' or 'log'");
}

// Result of one subcommand: the primary output document plus a summary line.
struct Outcome {
  ordered_json result;
  std::string summary;
  int code = kOk;
};

struct Measure {
  std::string file;
  std::string words;
  std::string weights;

  void add_to(CLI::App* sub) {
    sub->add_option("--measure", file, "measure JSON file");
    sub->add_option("--words", words, "comma-separated support words (uniform unless --weights)");
    sub->add_option("--weights", weights, "comma-separated weights matching --words");
  }

  MeasureSpec get() const {
    if (!file.empty()) return io::read_measure(file);
    if (words.empty()) throw InputError("give a measure with --measure or --words");
    const auto ws = parse_words(words);
    if (weights.empty()) return MeasureSpec::uniform(ws);
    const auto p = parse_doubles(weights);
    if (p.size() != ws.size()) throw InputError("--weights must match --words in length");
    MeasureSpec m;
    for (std::size_t i = 0; i < ws.size(); ++i) m.support.push_back({ws[i], p[i]});
    m.validate();
    return m;
  }
};

// Numbers and booleans echo as JSON scalars, everything else as text.
ordered_json typed(const std::string& v) {
  if (v == "true" || v == "false") return v == "true";
  char* end = nullptr;
  const long long i = std::strtoll(v.c_str(), &end, 10);
  if (!v.empty() && end == v.c_str() + v.size()) return i;
  const double x = std::strtod(v.c_str(), &end);
  if (!v.empty() && end == v.c_str() + v.size() && std::isfinite(x)) return x;
  return v;
}

ordered_json config_echo(const CLI::App* sub, unsigned threads) {
  ordered_json cfg;
  for (const CLI::Option* opt : sub->get_options()) {
    if (opt->get_name() == "--help" || opt->get_name().empty()) continue;
    if (opt->count() == 0 && opt->get_default_str().empty()) continue;
    const std::string key = opt->get_name().substr(opt->get_name().find_first_not_of('-'));
    if (opt->get_type_size() == 0) {
      cfg[key] = opt->count() > 0;
    } else {
      cfg[key] = typed(opt->count() > 0 ? opt->as<std::string>() : opt->get_default_str());
    }
  }
  cfg["threads"] = threads;
  return cfg;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerics for the Rauzy gasket and its affinity exponent", "rauzy"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "key=value file merged below command-line flags");
  unsigned threads = 0;
  app.add_option("--threads", threads, "worker threads (0 = available parallelism)");
  std::string out_path;

  std::function<Outcome()> action;
  auto enum_opts = [&] {
    EnumOptions o;
    o.threads = threads;
    return o;
  };

  // exponent
  auto* exp_cmd = app.add_subcommand("exponent", "estimate the affinity exponent by bisection");
  int exp_nmax = 14, exp_nmin = 4;
  double exp_tol = 0.02, exp_lo = 1.0, exp_hi = 2.0, exp_discard = 0.25;
  std::string exp_fit = "log";
  exp_cmd->add_option("--nmax", exp_nmax, "deepest word length")->capture_default_str();
  exp_cmd->add_option("--nmin", exp_nmin, "shallowest word length")->capture_default_str();
  exp_cmd->add_option("--tol", exp_tol, "bisection tolerance")->capture_default_str();
  exp_cmd->add_option("--lo", exp_lo, "lower end of the bracket")->capture_default_str();
  exp_cmd->add_option("--hi", exp_hi, "upper end of the bracket")->capture_default_str();
  exp_cmd->add_option("--fit", exp_fit, "slope model: log or linear")->capture_default_str();
  exp_cmd->add_option("--discard", exp_discard, "fraction of shallow depths dropped")->capture_default_str();
  exp_cmd->add_option("--out", out_path, "JSON output file");
  exp_cmd->callback([&] {
    action = [&] {
      ExponentOptions o;
      o.n_min = exp_nmin;
      o.lo = exp_lo;
      o.hi = exp_hi;
      o.pressure.fit = parse_fit(exp_fit);
      o.pressure.discard_fraction = exp_discard;
      o.pressure.enumeration = enum_opts();
      const ExponentEstimate e = estimate_affinity_exponent(exp_nmax, exp_tol, o);
      return Outcome{io::to_json(e), "s_hat=" + io::format_double(e.s_hat) + " bracket=[" +
                                         io::format_double(e.lo) + ", " + io::format_double(e.hi) + "]"};
    };
  });

  // pressure
  auto* pr_cmd = app.add_subcommand("pressure", "growth rate of the level sums Z_n(s)");
  double pr_s = 1.7, pr_discard = 0.25;
  int pr_nmin = 4, pr_nmax = 12;
  std::string pr_fit = "log", pr_csv;
  pr_cmd->add_option("--s", pr_s, "exponent s in (0, 2]")->capture_default_str();
  pr_cmd->add_option("--nmin", pr_nmin)->capture_default_str();
  pr_cmd->add_option("--nmax", pr_nmax)->capture_default_str();
  pr_cmd->add_option("--fit", pr_fit, "slope model: log or linear")->capture_default_str();
  pr_cmd->add_option("--discard", pr_discard)->capture_default_str();
  pr_cmd->add_option("--out", out_path, "JSON output file");
  pr_cmd->add_option("--csv", pr_csv, "CSV of (n, log Z_n)");
  pr_cmd->callback([&] {
    action = [&] {
      PressureOptions o;
      o.fit = parse_fit(pr_fit);
      o.discard_fraction = pr_discard;
      o.enumeration = enum_opts();
      const PressureReport r = pressure_slope(pr_s, pr_nmin, pr_nmax, o);
      if (!pr_csv.empty()) io::write_text(pr_csv, io::pressure_csv(r));
      return Outcome{io::to_json(r), "slope=" + io::format_double(r.slope) + " stderr=" +
                                         io::format_double(r.slope_stderr)};
    };
  });

  // cover
  auto* cov_cmd = app.add_subcommand("cover", "adaptive cover of the gasket by image triangles");
  double cov_delta = 0.05, cov_s = 1.7;
  int cov_max_length = 1'000'000, cov_tail_run = 8;
  bool cov_keep_tail = false;
  cov_cmd->add_option("--delta", cov_delta, "leaf diameter")->capture_default_str();
  cov_cmd->add_option("--s", cov_s, "cost exponent")->capture_default_str();
  cov_cmd->add_option("--max-length", cov_max_length)->capture_default_str();
  cov_cmd->add_flag("--any-tail", cov_keep_tail, "allow leaves ending in a repeated symbol");
  cov_cmd->add_option("--tail-run", cov_tail_run, "constant tails of this length end as leaves anyway")
      ->capture_default_str();
  cov_cmd->add_option("--out", out_path, "JSON output file");
  cov_cmd->callback([&] {
    action = [&] {
      CoverOptions o;
      o.enumeration = enum_opts();
      o.max_length = cov_max_length;
      o.distinct_tail = !cov_keep_tail;
      o.max_tail_run = cov_tail_run;
      const CoverReport r = adaptive_cover(cov_delta, cov_s, o);
      return Outcome{io::to_json(r), "triangles=" + std::to_string(r.triangles) + " cost=" +
                                         io::format_double(r.cost) + " boxes=" + std::to_string(r.boxes)};
    };
  });

  // boxdim
  auto* box_cmd = app.add_subcommand("boxdim", "box-counting dimension over dyadic scales");
  int box_kmin = 4, box_kmax = 10;
  double box_leaf = 0.25;
  std::string box_deltas, box_csv;
  box_cmd->add_option("--kmin", box_kmin, "coarsest scale 2^-kmin")->capture_default_str();
  box_cmd->add_option("--kmax", box_kmax, "finest scale 2^-kmax")->capture_default_str();
  box_cmd->add_option("--deltas", box_deltas, "explicit comma-separated scales (overrides kmin/kmax)");
  box_cmd->add_option("--leaf-fraction", box_leaf, "leaf diameter as a fraction of delta")->capture_default_str();
  box_cmd->add_option("--out", out_path, "JSON output file");
  box_cmd->add_option("--csv", box_csv, "CSV of (delta, N(delta))");
  box_cmd->callback([&] {
    action = [&] {
      std::vector<double> deltas;
      if (!box_deltas.empty()) {
        deltas = parse_doubles(box_deltas);
      } else {
        if (box_kmin < 0 || box_kmax > 16 || box_kmin >= box_kmax) throw InputError("need 0 <= kmin < kmax <= 16");
        for (int k = box_kmin; k <= box_kmax; ++k) deltas.push_back(std::ldexp(1.0, -k));
      }
      BoxCountOptions o;
      o.enumeration = enum_opts();
      o.leaf_fraction = box_leaf;
      const BoxCountResult r = box_count_dimension(deltas, o);
      if (!box_csv.empty()) io::write_text(box_csv, io::box_count_csv(r));
      return Outcome{io::to_json(r), "slope=" + io::format_double(r.slope) + " r2=" + io::format_double(r.r2)};
    };
  });

  // render
  auto* ren_cmd = app.add_subcommand("render", "raster image of image triangles (binary PPM)");
  std::optional<int> ren_depth;
  std::optional<double> ren_delta;
  int ren_size = 1024, ren_height = 0;
  std::string ren_out;
  ren_cmd->add_option("--depth", ren_depth, "all words of this length");
  ren_cmd->add_option("--delta", ren_delta, "adaptive cover leaves at this diameter");
  ren_cmd->add_option("--size", ren_size, "image width in pixels")->capture_default_str();
  ren_cmd->add_option("--height", ren_height, "image height (0: width * sqrt(3)/2)")->capture_default_str();
  ren_cmd->add_option("--out", ren_out, "PPM output file")->required();
  ren_cmd->callback([&] {
    action = [&] {
      if (ren_depth.has_value() == ren_delta.has_value()) throw InputError("give exactly one of --depth and --delta");
      RenderOptions o;
      o.width = ren_size;
      o.height = ren_height;
      std::vector<CoverLeaf> leaves;
      if (ren_depth) {
        leaves = depth_triangles(*ren_depth, enum_opts());
      } else {
        CoverOptions co;
        co.enumeration = enum_opts();
        co.collect_leaves = true;
        co.max_leaves = 2e7;
        leaves = adaptive_cover(*ren_delta, 1.7, co).leaves;
      }
      write_file(ren_out, render_ppm(leaves, o));
      ordered_json j{{"image", ren_out}, {"triangles", leaves.size()}};
      return Outcome{j, "wrote " + ren_out + " (" + std::to_string(leaves.size()) + " triangles)"};
    };
  });

  // lyapunov
  auto* lya_cmd = app.add_subcommand("lyapunov", "Monte-Carlo Lyapunov spectrum of a measure");
  Measure lya_m;
  long lya_steps = 100000;
  int lya_trials = 32, lya_period = 16;
  std::optional<std::uint64_t> lya_seed;
  lya_m.add_to(lya_cmd);
  lya_cmd->add_option("--steps", lya_steps)->capture_default_str();
  lya_cmd->add_option("--trials", lya_trials)->capture_default_str();
  lya_cmd->add_option("--seed", lya_seed, "random seed (required)");
  lya_cmd->add_option("--period", lya_period, "renormalization period")->capture_default_str();
  lya_cmd->add_option("--out", out_path, "JSON output file");
  lya_cmd->callback([&] {
    action = [&] {
      LyapunovOptions o;
      o.renorm_period = lya_period;
      o.threads = threads;
      const LyapunovEstimate l = lyapunov_spectrum(lya_m.get(), lya_steps, lya_trials, lya_seed, o);
      return Outcome{io::to_json(l), "lambda=(" + io::format_double(l.lambda[0]) + ", " +
                                         io::format_double(l.lambda[1]) + ", " + io::format_double(l.lambda[2]) + ")"};
    };
  });

  // entropy
  auto* ent_cmd = app.add_subcommand("entropy", "random-walk entropy of a measure");
  Measure ent_m;
  int ent_kmax = 6;
  ent_m.add_to(ent_cmd);
  ent_cmd->add_option("--kmax", ent_kmax, "largest convolution power")->capture_default_str();
  ent_cmd->add_option("--out", out_path, "JSON output file");
  ent_cmd->callback([&] {
    action = [&] {
      const EntropyReport e = rw_entropy(ent_m.get(), ent_kmax);
      return Outcome{io::to_json(e), "h=" + io::format_double(e.h) + " branch=" + to_string(e.branch)};
    };
  });

  // lydim
  auto* lyd_cmd = app.add_subcommand("lydim", "Lyapunov dimension from (h, chi) or from a measure");
  std::optional<double> lyd_h, lyd_chi1, lyd_chi2;
  Measure lyd_m;
  long lyd_steps = 100000;
  int lyd_trials = 32, lyd_kmax = 6;
  std::optional<std::uint64_t> lyd_seed;
  lyd_cmd->add_option("--entropy", lyd_h, "random-walk entropy h");
  lyd_cmd->add_option("--chi1", lyd_chi1, "lambda1 - lambda2");
  lyd_cmd->add_option("--chi2", lyd_chi2, "lambda1 - lambda3");
  lyd_m.add_to(lyd_cmd);
  lyd_cmd->add_option("--steps", lyd_steps)->capture_default_str();
  lyd_cmd->add_option("--trials", lyd_trials)->capture_default_str();
  lyd_cmd->add_option("--kmax", lyd_kmax)->capture_default_str();
  lyd_cmd->add_option("--seed", lyd_seed, "random seed (required with a measure)");
  lyd_cmd->add_option("--out", out_path, "JSON output file");
  lyd_cmd->callback([&] {
    action = [&] {
      DimReport d;
      if (lyd_h || lyd_chi1 || lyd_chi2) {
        if (!(lyd_h && lyd_chi1 && lyd_chi2)) throw InputError("give all of --entropy, --chi1, --chi2");
        d = lyapunov_dimension(*lyd_h, *lyd_chi1, *lyd_chi2);
      } else {
        const MeasureSpec m = lyd_m.get();
        LyapunovOptions o;
        o.threads = threads;
        const LyapunovEstimate l = lyapunov_spectrum(m, lyd_steps, lyd_trials, lyd_seed, o);
        const EntropyReport e = rw_entropy(m, lyd_kmax);
        d = lyapunov_dimension(e.h, l.lambda[0] - l.lambda[1], l.lambda[0] - l.lambda[2]);
        d.entropy_branch = to_string(e.branch);
        d.chi_stderr = {l.stderr_[0] + l.stderr_[1], l.stderr_[0] + l.stderr_[2]};
      }
      return Outcome{io::to_json(d), "dim_ly=" + io::format_double(d.dim) + (d.clamped ? " (clamped)" : "")};
    };
  });

  // varsearch
  auto* vs_cmd = app.add_subcommand("varsearch", "search for measures of large Lyapunov dimension");
  double vs_s = 1.6, vs_beta = 0.1;
  int vs_n = 12;
  SearchBudget vs_budget;
  std::optional<std::uint64_t> vs_seed;
  std::string vs_boosters, vs_measure_out;
  vs_cmd->add_option("--s", vs_s)->capture_default_str();
  vs_cmd->add_option("--beta", vs_beta)->capture_default_str();
  vs_cmd->add_option("--n", vs_n)->capture_default_str();
  vs_cmd->add_option("--max-length", vs_budget.max_length, "enumeration depth")->capture_default_str();
  vs_cmd->add_option("--candidates", vs_budget.max_candidates, "grid cells evaluated")->capture_default_str();
  vs_cmd->add_option("--steps", vs_budget.steps)->capture_default_str();
  vs_cmd->add_option("--trials", vs_budget.trials)->capture_default_str();
  vs_cmd->add_option("--seed", vs_seed, "random seed (required)");
  vs_cmd->add_option("--boosters", vs_boosters, "comma-separated words mixed in with weight beta");
  vs_cmd->add_option("--measure-out", vs_measure_out, "write the selected measure as JSON");
  vs_cmd->add_option("--out", out_path, "JSON output file");
  vs_cmd->callback([&] {
    action = [&] {
      if (!vs_seed) throw InputError("a seed is required (--seed)");
      vs_budget.seed = *vs_seed;
      vs_budget.threads = threads;
      if (!vs_boosters.empty()) vs_budget.boosters = parse_words(vs_boosters);
      const SearchResult r = variational_search(vs_s, vs_beta, vs_n, vs_budget);
      if (!vs_measure_out.empty()) io::write_text(vs_measure_out, io::dump(io::to_json(r.best)));
      return Outcome{io::to_json(r), "dim_ly=" + io::format_double(r.report.dim) +
                                         " support=" + std::to_string(r.best.support.size())};
    };
  });

  // schottky
  auto* sch_cmd = app.add_subcommand("schottky", "certify a finite family as (r, eps)-Schottky");
  std::string sch_words;
  std::optional<double> sch_r, sch_eps, sch_eta;
  double sch_ratio = 4.0;
  bool sch_strict = false;
  sch_cmd->add_option("--words", sch_words, "comma-separated family members")->required();
  sch_cmd->add_option("--r", sch_r, "distance parameter");
  sch_cmd->add_option("--eps", sch_eps, "gap parameter");
  sch_cmd->add_option("--ratio", sch_ratio, "grid search requires r > ratio * eps")->capture_default_str();
  sch_cmd->add_option("--eta", sch_eta, "also check eta-narrowness");
  sch_cmd->add_flag("--strict", sch_strict, "exit 4 unless certified");
  sch_cmd->add_option("--out", out_path, "JSON output file");
  sch_cmd->callback([&] {
    action = [&] {
      std::vector<Mat3> family;
      for (const Word& w : parse_words(sch_words)) family.push_back(word_to_matrix(w));
      ordered_json j;
      Verdict v = Verdict::Fail;
      std::string summary;
      if (sch_r.has_value() != sch_eps.has_value()) throw InputError("give both --r and --eps, or neither");
      if (sch_r) {
        const SchottkyCert c = certify_schottky(family, *sch_r, *sch_eps);
        v = c.verdict;
        j["certificate"] = io::to_json(c);
        summary = std::string("verdict=") + to_string(v);
      } else {
        const auto p = find_schottky_parameters(family, sch_ratio);
        if (p) {
          v = Verdict::Pass;
          j["certificate"] = io::to_json(p->cert);
          summary = "certified r=" + io::format_double(p->r) + " eps=" + io::format_double(p->eps);
        } else {
          j["certificate"] = nullptr;
          summary = "no (r, eps) on the grid with r > " + io::format_double(sch_ratio) + " eps";
        }
      }
      if (sch_eta) j["narrow"] = io::to_json(certify_narrow(family, *sch_eta));
      j["verdict"] = to_string(v);
      return Outcome{j, summary, sch_strict && v != Verdict::Pass ? kCertificationFailed : kOk};
    };
  });

  // lowerbound
  auto* lb_cmd = app.add_subcommand("lowerbound", "edge-arc evidence for the lower bound 3/2");
  int lb_depth = 20, lb_a1 = 14, lb_tiling = 12;
  std::string lb_csv;
  lb_cmd->add_option("--depth", lb_depth, "levels of phi_{3/2} sums")->capture_default_str();
  lb_cmd->add_option("--a1-depth", lb_a1, "depth for the eps_hat scan")->capture_default_str();
  lb_cmd->add_option("--tiling", lb_tiling, "tiling checks for n <= this")->capture_default_str();
  lb_cmd->add_option("--csv", lb_csv, "per-level CSV");
  lb_cmd->add_option("--out", out_path, "JSON output file");
  lb_cmd->callback([&] {
    action = [&] {
      const EvidenceReport ev = lower_bound_evidence(lb_depth, enum_opts());
      const LemmaA1Report a1 = lemma_a1_check(lb_a1, enum_opts());
      ordered_json tilings = ordered_json::array();
      bool tiles = true;
      for (int n = 0; n <= lb_tiling; ++n) {
        const TilingReport t = tiling_check(n, enum_opts());
        tiles = tiles && t.pass;
        tilings.push_back(io::to_json(t));
      }
      if (!lb_csv.empty()) io::write_text(lb_csv, evidence_csv(ev));
      ordered_json j{{"evidence", io::to_json(ev)}, {"lemma_a1", io::to_json(a1)}, {"tilings", tilings}};
      return Outcome{j, "eps_hat=" + io::format_double(a1.eps_hat) + " tail_slope=" + io::format_double(ev.tail_slope) +
                            " tilings=" + (tiles ? "ok" : "FAILED")};
    };
  });

  // eps-n
  auto* eps_cmd = app.add_subcommand("eps-n", "empirical column-norm constant");
  int eps_n = 2, eps_depth = 12;
  eps_cmd->add_option("--n", eps_n)->capture_default_str();
  eps_cmd->add_option("--depth", eps_depth)->capture_default_str();
  eps_cmd->add_option("--out", out_path, "JSON output file");
  eps_cmd->callback([&] {
    action = [&] {
      const EpsilonEstimate e = estimate_epsilon_n(eps_n, eps_depth, enum_opts());
      return Outcome{io::to_json(e), "epsilon=" + io::format_double(e.epsilon) + " word=" + e.attained_by.str()};
    };
  });

  // selftest
  auto* self_cmd = app.add_subcommand("selftest", "run the built-in example checks");
  self_cmd->callback([&] {
    action = [&] {
      std::ostringstream log;
      const int failures = run_selftest(log);
      out << log.str();
      return Outcome{ordered_json{{"failures", failures}}, std::to_string(failures) + " failures",
                     failures == 0 ? kOk : kFailure};
    };
  });

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success)) {
      app.exit(e, out, err);
      return kOk;
    }
    err << e.what() << "\n\n";
    const CLI::App* failed = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    err << failed->help();
    return kInputError;
  }

  const auto* sub = app.get_subcommands().front();
  const auto t0 = std::chrono::steady_clock::now();
  try {
    Outcome o = action();
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const ordered_json config = config_echo(sub, resolve_threads(threads));
    if (!out_path.empty()) {
      ordered_json doc{{"version", RAUZY_VERSION}, {"subcommand", sub->get_name()}, {"config", config},
                       {"result", o.result}};
      io::write_text(out_path, io::dump(doc));
    }
    out << sub->get_name() << ": " << o.summary << '\n';
    ordered_json meta{{"version", RAUZY_VERSION},
                      {"subcommand", sub->get_name()},
                      {"config", config},
                      {"wall_time_s", wall},
                      {"threads", resolve_threads(threads)}};
    out << meta.dump() << '\n';
    return o.code;
  } catch (const ResourceError& e) {
    err << "resource limit: " << e.what() << '\n';
    return kResourceError;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const DomainError& e) {
    err << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
}

}  // namespace rauzy::cli
