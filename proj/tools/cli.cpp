#include "cli.hpp"

#include <openssl/evp.h>

#include <CLI11.hpp>
#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <json.hpp>
#include <sstream>
#include <thread>
#include <vector>

#include "wdiv/congruence.hpp"
#include "wdiv/constants.hpp"
#include "wdiv/moments.hpp"
#include "wdiv/voronoi.hpp"
#include "wdiv/weighted_sum.hpp"

namespace wdiv::cli {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

std::string format_number(double v) {
  if (v == 0.0) return "0.0";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 15);
  std::string s(buf, res.ptr);
  if (std::isfinite(v) && s.find_first_of(".e") == std::string::npos) s += ".0";
  return s;
}

namespace {

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("SHA-256 digest failed");
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

class Csv {
 public:
  explicit Csv(std::initializer_list<const char*> header) {
    bool first = true;
    for (const char* h : header) {
      if (!first) text_ += ',';
      text_ += h;
      first = false;
    }
    text_ += '\n';
  }
  template <class... Ts>
  void row(const Ts&... cells) {
    bool first = true;
    ((text_ += (first ? "" : ","), text_ += cell(cells), first = false), ...);
    text_ += '\n';
  }
  const std::string& text() const { return text_; }

 private:
  static std::string cell(double v) { return format_number(v); }
  static std::string cell(i64 v) { return std::to_string(v); }
  static std::string cell(int v) { return std::to_string(v); }
  static std::string cell(const std::string& v) { return v; }
  static std::string cell(const char* v) { return v; }
  std::string text_;
};

struct Context {
  std::ostream& out;
  std::ostream& err;
  std::string out_dir;
  int threads = 1;
  json outputs = json::array();

  fs::path resolve(const std::string& name) const {
    const fs::path p(name);
    return p.is_absolute() ? p : fs::path(out_dir) / p;
  }

  void write(const std::string& name, const std::string& content) {
    const fs::path path = resolve(name);
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
    f << content;
    if (!f) throw std::runtime_error("write failed: " + path.string());
    outputs.push_back({{"file", path.string()}, {"sha256", sha256_hex(content)}});
  }

  void print(const std::string& key, double v) { out << key << '=' << format_number(v) << '\n'; }
  void print(const std::string& key, i64 v) { out << key << '=' << v << '\n'; }
  void print(const std::string& key, const std::string& v) { out << key << '=' << v << '\n'; }
};

struct PhaseArgs {
  i64 a1 = 1, q1 = 2, a2 = 1, q2 = 3;

  void attach(CLI::App* app) {
    app->add_option("--a1", a1, "numerator of the cosine phase")->capture_default_str();
    app->add_option("--q1", q1, "denominator of the cosine phase")->capture_default_str();
    app->add_option("--a2", a2, "numerator of the sine phase")->capture_default_str();
    app->add_option("--q2", q2, "denominator of the sine phase")->capture_default_str();
  }
  PhasePair phases() const { return PhasePair{RationalPhase(a1, q1), RationalPhase(a2, q2)}; }
};

struct SpecArgs {
  i64 r1 = 1, q1 = 2, r2 = 1, q2 = 3;

  void attach(CLI::App* app) {
    app->add_option("--r1", r1, "residue of n1")->capture_default_str();
    app->add_option("--q1", q1, "modulus of n1")->capture_default_str();
    app->add_option("--r2", r2, "residue of n2")->capture_default_str();
    app->add_option("--q2", q2, "modulus of n2")->capture_default_str();
  }
  CongruenceSpec spec() const { return CongruenceSpec(r1, q1, r2, q2); }
};

double main_term_midpoint(double t, const CongruenceSpec& spec) {
  return congruence_main_term(t, spec, RangePolicy::allow_below_modulus);
}

std::vector<MomentReport> parallel_reports(const StepSeries& series, const std::vector<double>& Ts,
                                           const std::vector<int>& ks, const std::vector<double>& Bs,
                                           const PhasePair& phases, int threads) {
  const size_t n = Ts.size() * ks.size();
  std::vector<MomentReport> results(n);
  std::atomic<size_t> next{0};
  auto work = [&] {
    for (size_t i = next++; i < n; i = next++) {
      const size_t ti = i / ks.size(), ki = i % ks.size();
      results[i] = moment_report(series, Ts[ti], ks[ki], phases, Bs[ki]);
    }
  };
  const size_t workers = std::min<size_t>(static_cast<size_t>(std::max(1, threads)), n);
  std::vector<std::jthread> pool;
  for (size_t w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  return results;
}

double constant_for(int k, const PhasePair& phases, i64 y) {
  if (k == 1) return 0.0;
  if (k == 2) return mean_square_constant(phases, y).value;
  return moment_constant(k, phases, y).value;
}

void moment_row(Csv& csv, const MomentReport& r) {
  csv.row(r.T, static_cast<int>(r.order), r.empirical, r.main_term, r.ratio, r.B_used);
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Weighted divisor sums, congruence divisor problems and their moments", "wdiv"};
  app.set_version_flag("--version", std::string(WDIV_VERSION));
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value file; [subcommand] sections or subcommand.key names");

  Context ctx{out, err, ".", 1};
  if (const char* env = std::getenv("WDIV_OUT_DIR"); env && *env) ctx.out_dir = env;
  app.add_option("--out-dir", ctx.out_dir, "directory for output files (default $WDIV_OUT_DIR or .)");
  app.add_option("--threads", ctx.threads, "maximum worker threads")->check(CLI::PositiveNumber);
  bool manifest = true;
  app.add_flag("!--no-manifest", manifest, "skip the JSON run manifest");

  std::function<void()> action;
  std::string command;

  // dsum
  auto* dsum = app.add_subcommand("dsum", "summatory function D, main term and error term");
  SpecArgs dsum_spec;
  double dsum_x = 0.0;
  std::string dsum_mode = "hyperbola";
  bool dsum_below = false;
  dsum->add_option("--x", dsum_x, "argument x")->required();
  dsum_spec.attach(dsum);
  dsum->add_option("--mode", dsum_mode, "counting algorithm")
      ->check(CLI::IsMember({"brute", "hyperbola"}))
      ->capture_default_str();
  dsum->add_flag("--allow-below-modulus", dsum_below, "accept 1 <= x < q1 q2 for the main term");
  dsum->callback([&] {
    command = "dsum";
    action = [&] {
      const CongruenceSpec spec = dsum_spec.spec();
      const WeightedCount D =
          congruence_summatory(dsum_x, spec, dsum_mode == "brute" ? CountMode::brute : CountMode::hyperbola);
      const double main = congruence_main_term(
          dsum_x, spec, dsum_below ? RangePolicy::allow_below_modulus : RangePolicy::strict);
      ctx.print("D", D.value());
      ctx.print("main", main);
      ctx.print("delta", D.value() - main);
      const double u = dsum_x / static_cast<double>(spec.modulus_product());
      if (u >= 1.0) ctx.print("psi_form", congruence_error_psi_form(u, spec));
    };
  });

  // weighted
  auto* weighted = app.add_subcommand("weighted", "the weighted sum S and its step series");
  PhaseArgs w_phases;
  double w_t = 0.0, w_T = 0.0;
  std::string w_out;
  weighted->add_option("--t", w_t, "evaluate S(t) directly");
  w_phases.attach(weighted);
  weighted->add_option("--T", w_T, "write the step series for x in [1, T]");
  weighted->add_option("--out", w_out, "series CSV (t_left,S,D,delta)");
  weighted->callback([&] {
    command = "weighted";
    action = [&] {
      const PhasePair p = w_phases.phases();
      const double Q = static_cast<double>(p.modulus_product());
      if (w_t == 0.0 && w_T == 0.0) throw std::invalid_argument("weighted: give --t or --T");
      if (w_t != 0.0) {
        ctx.print("S", weighted_sum_direct(w_t, p));
        if (w_t >= Q) ctx.print("S_via_error_terms", weighted_sum_via_error_terms(w_t / Q, p));
      }
      if (w_T != 0.0) {
        if (w_out.empty()) w_out = "series.csv";
        const i64 Qi = p.modulus_product();
        const i64 n = steps_needed(w_T, Qi);
        const StepSeries s = weighted_sum_steps(n, p);
        const CongruenceSpec spec(p.theta1.a(), p.theta1.q(), p.theta2.a(), p.theta2.q());
        const auto counts = congruence_step_counts(n, spec);
        Csv csv{"t_left", "S", "D", "delta"};
        const i64 last = std::min(s.t_end(), static_cast<i64>(counts.size()));
        for (i64 m = std::max(Qi, s.t_min); m < last; ++m) {
          const double D = static_cast<double>(counts[m]);
          csv.row(m, s.on_interval(m), D, D - main_term_midpoint(static_cast<double>(m) + 0.5, spec));
        }
        ctx.write(w_out, csv.text());
        ctx.print("rows", last - std::max(Qi, s.t_min));
      }
    };
  });

  // voronoi
  auto* voronoi = app.add_subcommand("voronoi", "truncated expansion of S: head, tails, residual");
  PhaseArgs v_phases;
  double v_x = 0.0, v_y = 100.0, v_H = 0.0, v_T = 0.0;
  int v_J = -1;
  bool v_uncollapsed = false;
  voronoi->add_option("--x", v_x, "argument x (S is taken at q1 q2 x)");
  voronoi->add_option("--y", v_y, "head length")->capture_default_str();
  v_phases.attach(voronoi);
  voronoi->add_flag("--uncollapsed", v_uncollapsed, "also evaluate the residue double sum");
  voronoi->add_option("--H", v_H, "tail parameter H >= 2");
  voronoi->add_option("--J", v_J, "tail parameter J (default from T)");
  voronoi->add_option("--T", v_T, "report the residual ratio over [1, T]");
  voronoi->callback([&] {
    command = "voronoi";
    action = [&] {
      const PhasePair p = v_phases.phases();
      if (v_x == 0.0 && v_T == 0.0) throw std::invalid_argument("voronoi: give --x or --T");
      if (v_x != 0.0) {
        ctx.print("head", voronoi_head(v_x, v_y, p));
        if (v_uncollapsed) ctx.print("head_uncollapsed", voronoi_head_uncollapsed(v_x, v_y, p));
        ctx.print("S", weighted_sum_direct(static_cast<double>(p.modulus_product()) * v_x, p));
        if (v_H != 0.0) {
          const int J = v_J >= 0 ? v_J
                                 : TruncationParams::default_J(std::max(v_T, std::max(v_x, 3.0)), p.modulus_product());
          const TruncationParams params(v_y, v_H, J);
          ctx.print("J", static_cast<i64>(J));
          ctx.print("tail12", voronoi_tail(v_x, params, p, TailKind::k12));
          ctx.print("tail21", voronoi_tail(v_x, params, p, TailKind::k21));
          for (const auto& w : params.regime_warnings(std::max(v_T, v_x), p.modulus_product()))
            ctx.err << "warning: " << w << '\n';
        }
      }
      if (v_T != 0.0) {
        const StepSeries s = weighted_sum_steps(steps_needed(v_T, p.modulus_product()), p);
        const ResidualReport r = voronoi_residual(s, v_T, v_y, p);
        ctx.print("residual", r.residual);
        ctx.print("total", r.total);
        ctx.print("residual_ratio", r.ratio);
      }
    };
  });

  // constants
  auto* constants = app.add_subcommand("constants", "series constants B_k and exponent bookkeeping");
  PhaseArgs c_phases;
  int c_k = 2;
  i64 c_y = 1000;
  double c_tail = kDefaultTailConstant;
  std::string c_out, c_A0;
  constants->add_option("--k", c_k, "moment order 2..4")->check(CLI::Range(2, 4))->capture_default_str();
  constants->add_option("--y", c_y, "head cut")->capture_default_str();
  c_phases.attach(constants);
  constants->add_option("--c-tail", c_tail, "tail envelope constant")->capture_default_str();
  constants->add_option("--A0", c_A0, "rational A0 > 2 (p/q): report K0 and s(K0)");
  constants->add_option("--out", c_out, "constants CSV (name,y,head,tail_envelope)");
  constants->callback([&] {
    command = "constants";
    action = [&] {
      const PhasePair p = c_phases.phases();
      const SeriesConstant c =
          c_k == 2 ? mean_square_constant(p, c_y, c_tail) : moment_constant(c_k, p, c_y, c_tail);
      const std::string name = "B" + std::to_string(c_k);
      ctx.print("name", name);
      ctx.print("y", c_y);
      ctx.print("head", c.value);
      ctx.print("tail_envelope", c.tail_envelope);
      if (!c_A0.empty()) {
        const auto slash = c_A0.find('/');
        i64 num = 0, den = 1;
        try {
          num = std::stoll(c_A0.substr(0, slash));
          if (slash != std::string::npos) den = std::stoll(c_A0.substr(slash + 1));
        } catch (const std::exception&) {
          throw std::invalid_argument("--A0 must look like p or p/q");
        }
        if (den <= 0) throw std::invalid_argument("--A0 denominator must be positive");
        const i64 K0 = even_ceiling(Rational(num, den));
        const Rational s = bookkeeping_exponent(static_cast<int>(K0));
        ctx.print("K0", K0);
        ctx.print("s_K0", std::to_string(s.numerator()) + (s.denominator() == 1 ? "" : "/" + std::to_string(s.denominator())));
      }
      if (!c_out.empty()) {
        Csv csv{"name", "y", "head", "tail_envelope"};
        csv.row(name, c_y, c.value, c.tail_envelope);
        ctx.write(c_out, csv.text());
      }
    };
  });

  // moments
  auto* moments = app.add_subcommand("moments", "int_1^T S^k(q1 q2 x) dx against its main term");
  PhaseArgs m_phases;
  double m_T = 0.0;
  int m_k = 2;
  i64 m_y = 100000;
  std::string m_out;
  moments->add_option("--T", m_T, "upper limit")->required();
  moments->add_option("--k", m_k, "power 1..4")->check(CLI::Range(1, 4))->capture_default_str();
  m_phases.attach(moments);
  moments->add_option("--y", m_y, "head cut for the constant")->capture_default_str();
  moments->add_option("--out", m_out, "moments CSV (T,k,empirical,main_term,ratio,B_used)");
  moments->callback([&] {
    command = "moments";
    action = [&] {
      const MomentReport r = moment_report(m_T, m_k, m_phases.phases(), m_y);
      ctx.print("T", r.T);
      ctx.print("k", static_cast<i64>(m_k));
      ctx.print("empirical", r.empirical);
      ctx.print("main_term", r.main_term);
      ctx.print("ratio", r.ratio);
      ctx.print("B_used", r.B_used);
      if (!m_out.empty()) {
        Csv csv{"T", "k", "empirical", "main_term", "ratio", "B_used"};
        moment_row(csv, r);
        ctx.write(m_out, csv.text());
      }
    };
  });

  // census
  auto* census = app.add_subcommand("census", "well-spaced large values of |Delta| on [T/2, T]");
  SpecArgs n_spec;
  double n_T = 0.0, n_factor = 1.0;
  std::vector<double> n_V;
  int n_count = 9;
  std::string n_out;
  census->add_option("--T", n_T, "upper end of the window")->required();
  n_spec.attach(census);
  census->add_option("--V", n_V, "thresholds (default: geometric grid on [0.25, 0.75] max|Delta|)");
  census->add_option("--V-count", n_count, "points in the default grid")->check(CLI::Range(1, 10000))->capture_default_str();
  census->add_option("--spacing-factor", n_factor, "spacing = factor * V (>= 1)")
      ->check(CLI::Range(1.0, 1e9))
      ->capture_default_str();
  census->add_option("--out", n_out, "census CSV (V,spacing,M)");
  census->callback([&] {
    command = "census";
    action = [&] {
      const ErrorGrid grid = ErrorGrid::build(n_T, n_spec.spec());
      const double top = grid.max_abs();
      std::vector<double> Vs = n_V;
      if (Vs.empty()) {
        for (int i = 0; i < n_count; ++i)
          Vs.push_back(top * 0.25 * (n_count == 1 ? 1.0 : std::pow(3.0, static_cast<double>(i) / (n_count - 1))));
      }
      ctx.print("max_abs_delta", top);
      Csv csv{"V", "spacing", "M"};
      for (double V : Vs) {
        const CensusReport r = large_value_census(grid, V, n_factor * V);
        csv.row(r.V, r.spacing, r.M);
      }
      ctx.out << csv.text();
      if (!n_out.empty()) ctx.write(n_out, csv.text());
    };
  });

  // sweep
  auto* sweep = app.add_subcommand("sweep", "moments over dyadic T = T_min, 2 T_min, ..., T_max");
  PhaseArgs s_phases;
  double s_Tmin = 1024.0, s_Tmax = 131072.0;
  std::vector<int> s_k{2};
  i64 s_y = 100000;
  std::string s_out = "moments.csv";
  sweep->add_option("--T-min", s_Tmin, "first T")->capture_default_str();
  sweep->add_option("--T-max", s_Tmax, "last T (inclusive when on the dyadic grid)")->capture_default_str();
  sweep->add_option("--k", s_k, "powers 1..4")->check(CLI::Range(1, 4));
  s_phases.attach(sweep);
  sweep->add_option("--y", s_y, "head cut for the constants")->capture_default_str();
  sweep->add_option("--out", s_out, "moments CSV")->capture_default_str();
  sweep->callback([&] {
    command = "sweep";
    action = [&] {
      if (!(s_Tmin >= 1.0) || !(s_Tmax >= s_Tmin)) throw std::invalid_argument("sweep: need 1 <= T-min <= T-max");
      const PhasePair p = s_phases.phases();
      std::vector<double> Ts;
      for (double T = s_Tmin; T <= s_Tmax * (1.0 + 1e-12); T *= 2.0) Ts.push_back(T);
      std::vector<double> Bs;
      for (int k : s_k) Bs.push_back(constant_for(k, p, s_y));
      const StepSeries series = weighted_sum_steps(steps_needed(Ts.back(), p.modulus_product()), p);
      const auto reports = parallel_reports(series, Ts, s_k, Bs, p, ctx.threads);
      Csv csv{"T", "k", "empirical", "main_term", "ratio", "B_used"};
      for (const auto& r : reports) moment_row(csv, r);
      ctx.out << csv.text();
      ctx.write(s_out, csv.text());
    };
  });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  const auto t0 = std::chrono::steady_clock::now();
  try {
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    action();
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  if (manifest && !ctx.outputs.empty()) {
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    json params = json::object();
    for (const CLI::App* scope : std::vector<const CLI::App*>{&app, app.get_subcommand(command)}) {
      for (const CLI::Option* opt : scope->get_options()) {
        const std::string name = opt->get_name(false, true);
        if (name.empty() || name == "--help" || name == "--version" || name == "--config") continue;
        const std::string key = name.substr(name.find_first_not_of('-'));
        if (opt->count() > 0) {
          const auto& res = opt->results();
          params[key] = res.size() == 1 ? json(res.front()) : json(res);
        } else {
          params[key] = opt->get_default_str();
        }
      }
    }
    json m;
    m["command"] = command;
    m["argv"] = std::vector<std::string>(args.begin(), args.end());
    m["parameters"] = params;
    m["version"] = WDIV_VERSION;
    m["duration_seconds"] = seconds;
    m["outputs"] = ctx.outputs;
    try {
      std::ofstream f(ctx.resolve(command + ".manifest.json"));
      f << m.dump(2) << '\n';
    } catch (const std::exception& e) {
      err << "warning: manifest not written: " << e.what() << '\n';
    }
  }
  return 0;
}

int run(std::span<const std::string> args) { return run(args, std::cout, std::cerr); }

}  // namespace wdiv::cli
