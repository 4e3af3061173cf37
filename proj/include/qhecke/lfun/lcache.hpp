#pragma once

// L-value cache records and zero-list CSV export.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <tuple>

#include "qhecke/lfun/zeros.hpp"

namespace qhecke {

struct lvalue_key {
  gint prime;
  bool conjugate = false;
  double s_re = 0.0;
  double s_im = 0.0;
  eval_method method = eval_method::afe;

  friend bool operator<(const lvalue_key& a, const lvalue_key& b) {
    return std::tie(a.prime, a.conjugate, a.s_re, a.s_im, a.method) <
           std::tie(b.prime, b.conjugate, b.s_re, b.s_im, b.method);
  }
};

class lvalue_cache {
 public:
  static constexpr int kVersion = 1;

  std::optional<l_value> find(const lvalue_key& k) const {
    std::lock_guard lock(mu_);
    auto it = map_.find(k);
    if (it == map_.end()) return std::nullopt;
    return it->second;
  }
  void put(const lvalue_key& k, const l_value& v) {
    std::lock_guard lock(mu_);
    map_[k] = v;
  }
  std::size_t size() const {
    std::lock_guard lock(mu_);
    return map_.size();
  }

  /// Header "qhecke-lvalues <version> <count>", then one record per line:
  /// a b conj s_re s_im method re im error terms (hex floats).
  void save(const std::filesystem::path& path) const {
    std::lock_guard lock(mu_);
    std::ofstream f(path);
    require(static_cast<bool>(f), "lvalue_cache: cannot write cache file");
    f << "qhecke-lvalues " << kVersion << ' ' << map_.size() << '\n';
    char buf[256];
    for (const auto& [k, v] : map_) {
      std::snprintf(buf, sizeof buf, "%lld %lld %d %a %a %s %a %a %a %zu\n", static_cast<long long>(k.prime.re),
                    static_cast<long long>(k.prime.im), k.conjugate ? 1 : 0, k.s_re, k.s_im,
                    k.method == eval_method::afe ? "afe" : "direct", v.value.real(), v.value.imag(), v.error_estimate,
                    v.terms);
      f << buf;
    }
  }

  /// False (and the cache untouched) on any version or format mismatch.
  bool load(const std::filesystem::path& path) {
    std::ifstream f(path);
    if (!f) return false;
    std::string magic;
    int version = 0;
    std::size_t count = 0;
    if (!(f >> magic >> version >> count) || magic != "qhecke-lvalues" || version != kVersion) return false;
    std::map<lvalue_key, l_value> loaded;
    std::string line;
    std::getline(f, line);
    for (std::size_t i = 0; i < count; ++i) {
      if (!std::getline(f, line)) return false;
      std::istringstream in(line);
      long long a, b;
      int conj;
      std::string sre, sim, method, vre, vim, err;
      std::size_t terms;
      if (!(in >> a >> b >> conj >> sre >> sim >> method >> vre >> vim >> err >> terms)) return false;
      lvalue_key k{gint{a, b}, conj != 0, std::strtod(sre.c_str(), nullptr), std::strtod(sim.c_str(), nullptr),
                   method == "afe" ? eval_method::afe : eval_method::direct};
      loaded[k] = {cd(std::strtod(vre.c_str(), nullptr), std::strtod(vim.c_str(), nullptr)),
                   std::strtod(err.c_str(), nullptr), terms};
    }
    std::lock_guard lock(mu_);
    map_ = std::move(loaded);
    return true;
  }

 private:
  mutable std::mutex mu_;
  std::map<lvalue_key, l_value> map_;
};

/// CSV columns: conductor, gamma.
inline void write_zeros_csv(std::ostream& out, const std::vector<zero_list>& lists, bool header = true) {
  if (header) out << "conductor,gamma\n";
  char buf[64];
  for (const auto& z : lists) {
    for (double g : z.ordinates) {
      std::snprintf(buf, sizeof buf, "%llu,%.10f\n", static_cast<unsigned long long>(z.conductor), g);
      out << buf;
    }
  }
}

}  // namespace qhecke
