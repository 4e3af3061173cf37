// qhecke: command-line front end.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qhecke/cli/cache.hpp"
#include "qhecke/cli/parse.hpp"
#include "qhecke/cli/report.hpp"
#include "qhecke/harness/experiments.hpp"
#include "qhecke/lfun/lcache.hpp"
#include "qhecke/series_probe.hpp"
#include "qhecke/symbols.hpp"

namespace {

using namespace qhecke;
using qhecke::cli::json;

/// JSON config: top-level keys are global options, nested objects are subcommands.
class json_config : public CLI::Config {
 public:
  std::string to_config(const CLI::App*, bool, bool, std::string) const override { return "{}"; }

  std::vector<CLI::ConfigItem> from_config(std::istream& in) const override {
    json j;
    try {
      j = json::parse(in);
    } catch (const json::exception& e) {
      throw CLI::ConversionError(std::string("config: ") + e.what());
    }
    std::vector<CLI::ConfigItem> out;
    walk(j, {}, out);
    return out;
  }

 private:
  static std::string scalar(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    return v.dump();
  }

  static void walk(const json& j, std::vector<std::string> parents, std::vector<CLI::ConfigItem>& out) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (it->is_object()) {
        auto p = parents;
        p.push_back(it.key());
        // entering a subcommand section
        out.push_back(CLI::ConfigItem{parents, it.key(), {}});
        out.back().name = "++";
        out.back().parents = p;
        walk(*it, p, out);
        out.push_back(CLI::ConfigItem{p, "--", {}});
        continue;
      }
      CLI::ConfigItem item{parents, it.key(), {}};
      if (it->is_array()) {
        for (const auto& v : *it) item.inputs.push_back(scalar(v));
      } else {
        item.inputs.push_back(scalar(*it));
      }
      out.push_back(std::move(item));
    }
  }
};

struct global_options {
  unsigned threads = 1;
  int precision_bits = 53;
  std::string out;
  std::string csv;
  bool timing = false;
  std::string cache_dir = ".qhecke-cache";
  double tolerance = 1e-6;
};

void emit(const global_options& g, const json& j) {
  const std::string text = j.dump(2) + "\n";
  if (g.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream os(g.out, std::ios::trunc);
    require(static_cast<bool>(os), "output file not writable");
    os << text;
  }
}

void emit_csv(const global_options& g, const std::string& text) {
  if (g.csv.empty()) return;
  std::ofstream os(g.csv, std::ios::trunc);
  require(static_cast<bool>(os), "csv file not writable");
  os << text;
}

eval_options eval_from(const global_options& g) {
  eval_options e;
  e.precision_bits = g.precision_bits;
  e.tolerance = g.tolerance;
  return e;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

shift_params shifts(const std::string& alpha, const std::string& beta, const std::string& r) {
  shift_params p;
  p.alpha = cli::parse_complex(alpha);
  p.beta = cli::parse_complex(beta);
  p.r = cli::parse_complex(r);
  return p;
}

/// CSV columns: theorem,variant,scale,lhs_re,lhs_im,rhs_re,rhs_im,ratio_re,ratio_im,lhs_error_bound,primes
std::string experiment_csv(const std::vector<experiment_report>& reps) {
  std::string s = "theorem,variant,scale,lhs_re,lhs_im,rhs_re,rhs_im,ratio_re,ratio_im,lhs_error_bound,primes\n";
  for (const auto& r : reps) {
    s += r.theorem + "," + r.variant + "," + fmt(r.scale) + "," + fmt(r.lhs.real()) + "," + fmt(r.lhs.imag()) + "," +
         fmt(r.rhs.real()) + "," + fmt(r.rhs.imag()) + "," + fmt(r.ratio.real()) + "," + fmt(r.ratio.imag()) + "," +
         fmt(r.lhs_error) + "," + std::to_string(r.primes) + "\n";
  }
  return s;
}

/// CSV columns: context,Z,value_re,value_im,running_max
std::string sample_csv(const series_sample& s) {
  std::string out = "context,Z,value_re,value_im,running_max\n";
  for (std::size_t i = 0; i < s.grid.size(); ++i)
    out += s.context + "," + fmt(s.grid[i]) + "," + fmt(s.values[i].real()) + "," + fmt(s.values[i].imag()) + "," +
           fmt(s.running_max[i]) + "\n";
  return out;
}

int fail(const std::string& kind, const std::string& message, int code) {
  std::cerr << cli::error_json(kind, message, code).dump() << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qhecke: quartic Hecke characters over Z[i]"};
  app.config_formatter(std::make_shared<json_config>());
  app.set_config("--config", "", "JSON config file");
  app.require_subcommand(1);

  global_options g;
  app.add_option("--threads", g.threads, "worker threads")->check(CLI::Range(1U, 256U));
  app.add_option("--precision-bits", g.precision_bits, "working precision (53 only)");
  app.add_option("--tolerance", g.tolerance, "L-value smoothing agreement tolerance");
  app.add_option("--out", g.out, "write the JSON report here instead of stdout");
  app.add_option("--csv", g.csv, "also write a CSV table");
  app.add_flag("--timing", g.timing, "include runtimes in reports");
  app.add_option("--cache-dir", g.cache_dir, "cache directory (QHECKE_CACHE_DIR overrides)");

  std::function<void()> action;

  // symbol
  std::string sym_a = "1", sym_n = "1";
  int sym_l = 4;
  auto* symbol = app.add_subcommand("symbol", "residue symbol (a/n)_l");
  symbol->add_option("--a", sym_a)->required();
  symbol->add_option("--n", sym_n)->required();
  symbol->add_option("--l", sym_l)->check(CLI::IsMember({2, 4}));
  symbol->callback([&] {
    action = [&] {
      gint a = cli::parse_gint(sym_a), n = cli::parse_gint(sym_n);
      auto v = residue_symbol(a, n, sym_l);
      json j = cli::report_header("symbol");
      j["a"] = to_string(a);
      j["n"] = to_string(n);
      j["l"] = sym_l;
      j["value"] = v.str();
      j["error"] = "exact";
      emit(g, j);
    };
  });

  // gauss-sum
  std::string gs_k = "1", gs_c = "1", gs_variant = "K", gs_method = "fast";
  int gs_l = 4;
  auto* gauss = app.add_subcommand("gauss-sum", "Gauss sum g_l(k, c)");
  gauss->add_option("--k", gs_k);
  gauss->add_option("--c", gs_c)->required();
  gauss->add_option("--l", gs_l)->check(CLI::IsMember({2, 4}));
  gauss->add_option("--variant", gs_variant)->check(CLI::IsMember({"K", "plain"}));
  gauss->add_option("--method", gs_method)->check(CLI::IsMember({"fast", "direct"}));
  gauss->callback([&] {
    action = [&] {
      gint k = cli::parse_gint(gs_k), c = cli::parse_gint(gs_c);
      auto variant = gs_variant == "K" ? gauss_variant::K : gauss_variant::plain;
      auto v = gs_method == "fast" ? gauss_sum_fast(k, c, gs_l, variant) : gauss_sum_direct(k, c, gs_l, variant);
      json j = cli::report_header("gauss-sum");
      j["k"] = to_string(k);
      j["c"] = to_string(c);
      j["l"] = gs_l;
      j["variant"] = gs_variant;
      j["method"] = gs_method;
      j["value"] = cli::cjson(to_cd(v.value));
      j["abs"] = static_cast<double>(std::abs(v.value));
      j["error_bound"] = 1e-9 * std::sqrt(static_cast<double>(c.norm()));
      emit(g, j);
    };
  });

  // lfun-eval
  std::string lf_w, lf_s = "0.5", lf_family = "hecke", lf_method = "afe";
  bool lf_conj = false, lf_use_cache = false;
  auto* lfun = app.add_subcommand("lfun-eval", "L(s, chi_w) for a family prime w");
  lfun->add_option("--w", lf_w)->required();
  lfun->add_option("--s", lf_s);
  lfun->add_option("--family", lf_family)->check(CLI::IsMember({"hecke", "dirichlet"}));
  lfun->add_option("--method", lf_method)->check(CLI::IsMember({"afe", "direct"}));
  lfun->add_flag("--conjugate", lf_conj);
  lfun->add_flag("--use-cache", lf_use_cache, "read and write the L-value cache");
  lfun->callback([&] {
    action = [&] {
      gint w = cli::parse_gint(lf_w);
      cd s = cli::parse_complex(lf_s);
      auto opts = eval_from(g);
      opts.method = lf_method == "afe" ? eval_method::afe : eval_method::direct;
      lvalue_cache cache;
      const auto path = cli::cache_dir(g.cache_dir) / "lvalues.txt";
      lvalue_key key{w, lf_conj, s.real(), s.imag(), opts.method};
      std::optional<l_value> v;
      bool hit = false;
      if (lf_use_cache && lf_family == "hecke") {
        cache.load(path);
        v = cache.find(key);
        hit = v.has_value();
      }
      if (!v) {
        auto L = lf_family == "hecke" ? make_hecke_l(w, lf_conj) : make_quartic_dirichlet_l(w, lf_conj);
        v = L.eval(s, opts);
        if (lf_use_cache && lf_family == "hecke") {
          cache.put(key, *v);
          std::filesystem::create_directories(path.parent_path());
          cache.save(path);
        }
      }
      json j = cli::report_header("lfun-eval");
      j["w"] = to_string(w);
      j["family"] = lf_family;
      j["conjugate"] = lf_conj;
      j["s"] = cli::cjson(s);
      j["method"] = lf_method;
      j["value"] = cli::cjson(v->value);
      j["error_estimate"] = v->error_estimate;
      j["terms"] = v->terms;
      j["cache_hit"] = hit;
      emit(g, j);
    };
  });

  // zeros
  std::string zr_w;
  std::uint64_t zr_upto = 0, zr_norm_limit = 5000;
  double zr_T = 20.0, zr_step = 0.1;
  auto* zeros = app.add_subcommand("zeros", "critical-line zeros of L(s, chi_w)");
  zeros->add_option("--w", zr_w, "single family prime");
  zeros->add_option("--up-to", zr_upto, "every family prime of norm <= this");
  zeros->add_option("--T", zr_T)->check(CLI::Range(0.0, 40.0));
  zeros->add_option("--grid-step", zr_step);
  zeros->add_option("--norm-limit", zr_norm_limit);
  zeros->callback([&] {
    action = [&] {
      require(!zr_w.empty() || zr_upto > 0, "zeros: give --w or --up-to");
      std::vector<gint> ws;
      if (!zr_w.empty()) ws.push_back(cli::parse_gint(zr_w));
      if (zr_upto > 0)
        for (const auto& w : enumerate_primary_primes(zr_upto, gint{1, 0})) ws.push_back(w);
      zero_search_options zo;
      zo.grid_step = zr_step;
      zo.eval = eval_from(g);
      std::vector<zero_list> lists(ws.size());
      parallel_for(ws.size(), g.threads, [&](std::size_t i) { lists[i] = find_zeros(ws[i], zr_T, zo, zr_norm_limit); });
      json j = cli::report_header("zeros");
      json arr = json::array();
      for (std::size_t i = 0; i < ws.size(); ++i) {
        auto z = cli::to_json(lists[i]);
        z["w"] = to_string(ws[i]);
        arr.push_back(z);
      }
      j["lists"] = arr;
      emit(g, j);
      std::ostringstream csv;
      write_zeros_csv(csv, lists);
      emit_csv(g, csv.str());
    };
  });

  // moment / ratio / logderiv / rational
  std::vector<double> mo_X{65536};
  std::string mo_alpha = "0", mo_beta = "0.5", mo_r = "0.3", mo_variant = "first", mo_weight = "bump";
  auto add_moment_opts = [&](CLI::App* sub, bool with_variant) {
    sub->add_option("--X,--Q", mo_X, "scale(s)");
    sub->add_option("--alpha", mo_alpha);
    sub->add_option("--beta", mo_beta);
    sub->add_option("--r", mo_r);
    sub->add_option("--weight", mo_weight);
    if (with_variant)
      sub->add_option("--variant", mo_variant)->check(CLI::IsMember({"first", "ratio", "negative", "logderiv"}));
  };
  auto run_moment = [&](const std::string& command, moment_variant v, bool rational) {
    auto w = weight_function::by_name(mo_weight);
    auto p = shifts(mo_alpha, mo_beta, mo_r);
    experiment_options eo;
    eo.threads = g.threads;
    eo.eval = eval_from(g);
    std::vector<experiment_report> reps;
    for (double X : mo_X) reps.push_back(rational ? rational_experiment(X, v, p, w, eo) : moment_experiment(X, v, p, w, eo));
    json j = cli::report_header(command);
    j["weight"] = w.name();
    j["alpha"] = cli::cjson(p.alpha);
    j["beta"] = cli::cjson(p.beta);
    j["r"] = cli::cjson(p.r);
    json arr = json::array();
    for (const auto& r : reps) arr.push_back(cli::to_json(r, g.timing));
    j["reports"] = arr;
    emit(g, j);
    emit_csv(g, experiment_csv(reps));
  };
  auto* moment = app.add_subcommand("moment", "smoothed first moment (or --variant) over Q(i)");
  add_moment_opts(moment, true);
  moment->callback([&] { action = [&] { run_moment("moment", parse_moment_variant(mo_variant), false); }; });
  auto* ratio = app.add_subcommand("ratio", "smoothed ratio L(1/2+alpha)/L(1/2+beta)");
  add_moment_opts(ratio, false);
  ratio->callback([&] { action = [&] { run_moment("ratio", moment_variant::ratio, false); }; });
  auto* logderiv = app.add_subcommand("logderiv", "smoothed L'/L(1/2+r)");
  add_moment_opts(logderiv, false);
  logderiv->callback([&] { action = [&] { run_moment("logderiv", moment_variant::logderiv, false); }; });
  auto* rational = app.add_subcommand("rational", "quartic Dirichlet family over Q");
  add_moment_opts(rational, true);
  rational->callback([&] { action = [&] { run_moment("rational", parse_moment_variant(mo_variant), true); }; });

  // density
  std::vector<double> de_X{1024};
  double de_a = 0.8, de_T = 40.0;
  bool de_rational = false;
  std::uint64_t de_norm_limit = 5000;
  auto* density = app.add_subcommand("density", "one-level density of low-lying zeros");
  density->add_option("--X,--Q", de_X);
  density->add_option("--a", de_a);
  density->add_option("--T", de_T)->check(CLI::Range(0.0, 40.0));
  density->add_option("--norm-limit", de_norm_limit);
  density->add_option("--weight", mo_weight);
  density->add_flag("--rational", de_rational);
  density->callback([&] {
    action = [&] {
      auto w = weight_function::by_name(mo_weight);
      density_test_function h(de_a);
      density_options o;
      o.T = de_T;
      o.threads = g.threads;
      o.norm_limit = de_norm_limit;
      o.zeros.eval = eval_from(g);
      std::vector<experiment_report> reps;
      for (double X : de_X) reps.push_back(density_experiment(X, h, w, o, de_rational));
      json j = cli::report_header("density");
      j["a"] = de_a;
      j["T"] = de_T;
      json arr = json::array();
      for (const auto& r : reps) arr.push_back(cli::to_json(r, g.timing));
      j["reports"] = arr;
      emit(g, j);
      emit_csv(g, experiment_csv(reps));
    };
  });

  // series
  std::string se_r = "-3", se_a = "1", se_r1 = "1", se_r2 = "1", se_r3 = "1", se_s = "1.75";
  std::size_t se_psi = 0;
  double se_lo = 1000, se_hi = 100000, se_Z = 10000, se_u = 100, se_ref = 0.875;
  std::size_t se_points = 12;
  std::uint64_t se_cap = 100000;
  bool se_all_psi = false;
  auto* series = app.add_subcommand("series", "partial sums of Gauss-sum series");
  series->require_subcommand(1);
  auto* sH = series->add_subcommand("H", "H_Z(r; psi) sample and exponent fit");
  auto* sF = series->add_subcommand("F", "F_a(z, r, psi) sample and exponent fit");
  auto* sV = series->add_subcommand("vaughan", "Vaughan decomposition of H_2Z - H_Z");
  auto* sR = series->add_subcommand("relations", "relations between the h series");
  auto* vaughan_top = app.add_subcommand("vaughan", "same as series vaughan");
  for (auto* sub : {sH, sF}) {
    sub->add_option("--r", se_r);
    sub->add_option("--psi", se_psi);
    sub->add_option("--from", se_lo);
    sub->add_option("--to", se_hi);
    sub->add_option("--points", se_points);
    sub->add_option("--reference", se_ref);
  }
  sF->add_option("--a", se_a);
  for (auto* sub : {sV, vaughan_top}) {
    sub->add_option("--Z", se_Z);
    sub->add_option("--u", se_u);
    sub->add_option("--r", se_r);
    sub->add_option("--psi", se_psi);
    sub->add_flag("--all-characters", se_all_psi);
  }
  sR->add_option("--r1", se_r1);
  sR->add_option("--r2", se_r2);
  sR->add_option("--r3", se_r3);
  sR->add_option("--psi", se_psi);
  sR->add_option("--s", se_s);
  sR->add_option("--cap", se_cap);
  auto run_sample = [&](bool is_h) {
    gint r = cli::parse_gint(se_r);
    auto grid = geometric_grid(se_lo, se_hi, se_points);
    series_sample s = is_h ? H_sample(r, se_psi, grid, g.threads)
                           : F_sample(cli::parse_gint(se_a), r, se_psi, grid, g.threads);
    auto fit = exponent_fit(s, is_h ? se_ref : 0.75);
    json j = cli::report_header(is_h ? "series H" : "series F");
    j["sample"] = cli::to_json(s);
    j["fit"] = cli::to_json(fit);
    emit(g, j);
    emit_csv(g, sample_csv(s));
  };
  sH->callback([&] { action = [&] { run_sample(true); }; });
  sF->callback([&] { action = [&] { run_sample(false); }; });
  auto run_vaughan = [&] {
    gint r = cli::parse_gint(se_r);
    json j = cli::report_header("series vaughan");
    json arr = json::array();
    auto all = vaughan_decompose_all(se_Z, r, se_u, g.threads);
    require(se_psi < all.size(), "vaughan: character index out of range");
    double worst = 0;
    for (std::size_t k = 0; k < all.size(); ++k) {
      worst = std::max(worst, all[k].identity_residual());
      if (se_all_psi || k == se_psi) arr.push_back(cli::to_json(all[k]));
    }
    j["decompositions"] = arr;
    j["max_identity_residual"] = worst;
    emit(g, j);
  };
  sV->callback([&] { action = run_vaughan; });
  vaughan_top->callback([&] { action = run_vaughan; });
  sR->callback([&] {
    action = [&] {
      h_series hs(se_cap, g.threads);
      auto rep = h_relations_check(cli::parse_gint(se_r1), cli::parse_gint(se_r2), cli::parse_gint(se_r3), se_psi,
                                   cli::parse_complex(se_s), hs);
      json j = cli::report_header("series relations");
      j["report"] = cli::to_json(rep);
      emit(g, j);
    };
  });

  // sieve-diag
  std::uint64_t sd_M = 50, sd_N = 50, sd_seed = 1;
  int sd_trials = 20;
  auto* sieve = app.add_subcommand("sieve-diag", "quadratic large sieve constant diagnostic");
  sieve->add_option("--M", sd_M);
  sieve->add_option("--N", sd_N);
  sieve->add_option("--trials", sd_trials);
  sieve->add_option("--seed", sd_seed);
  sieve->callback([&] {
    action = [&] {
      auto r = large_sieve_ratio(sd_M, sd_N, sd_trials, sd_seed);
      json j = cli::report_header("sieve-diag");
      j["M"] = sd_M;
      j["N"] = sd_N;
      j["seed"] = sd_seed;
      j["m_count"] = r.m_count;
      j["n_count"] = r.n_count;
      j["ratios"] = r.ratios;
      j["max_ratio"] = r.max_ratio;
      emit(g, j);
    };
  });

  // mds
  std::string md_s = "1.25", md_w = "0.75", md_z = "0.8";
  std::uint64_t md_cap = 20000;
  auto* mds = app.add_subcommand("mds", "truncated multiple Dirichlet series A(s, w, z)");
  mds->add_option("--s", md_s);
  mds->add_option("--w", md_w);
  mds->add_option("--z", md_z);
  mds->add_option("--cap", md_cap);
  mds->callback([&] {
    action = [&] {
      experiment_options eo;
      eo.threads = g.threads;
      eo.eval = eval_from(g);
      auto v = mds_eval(cli::parse_complex(md_s), cli::parse_complex(md_w), cli::parse_complex(md_z), md_cap, eo);
      json j = cli::report_header("mds");
      j["value"] = cli::cjson(v.value);
      j["tail_bound"] = v.tail_bound;
      j["primes"] = v.primes;
      j["norm_cap"] = md_cap;
      emit(g, j);
    };
  });

  // cache
  std::string ca_kind = "primes";
  std::uint64_t ca_limit = 100000;
  auto* cache = app.add_subcommand("cache", "build or verify a cache");
  cache->add_option("--kind", ca_kind)->check(CLI::IsMember({"primes", "gauss"}));
  cache->add_option("--limit", ca_limit);
  cache->callback([&] {
    action = [&] {
      cli::cache_manifest m(cli::cache_dir(g.cache_dir));
      cli::cache_status st;
      if (ca_kind == "primes") {
        cli::cached_primes(m, ca_limit, &st);
      } else {
        cli::cached_gauss_sums(m, ca_limit, &st);
      }
      if (!st.warning.empty()) std::cerr << "warning: " << st.warning << "\n";
      json j = cli::report_header("cache");
      j["kind"] = st.kind;
      j["limit"] = st.limit;
      j["loaded"] = st.loaded;
      j["regenerated"] = st.regenerated;
      j["records"] = st.records;
      j["spot_checked"] = st.spot_checked;
      j["spot_max_error"] = st.spot_max_error;
      j["manifest_version"] = cli::kManifestVersion;
      emit(g, j);
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail("usage", e.what(), 2);
  } catch (const qhecke::domain_error& e) {
    return fail("domain", e.what(), 2);
  }
  try {
    if (g.precision_bits > 53) throw qhecke::domain_error("precision: only 53-bit evaluation is available");
    if (action) action();
  } catch (const qhecke::domain_error& e) {
    return fail("domain", e.what(), 2);
  } catch (const qhecke::convergence_error& e) {
    return fail("convergence", e.what(), 3);
  } catch (const std::exception& e) {
    return fail("internal", e.what(), 1);
  }
  return 0;
}
