#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace qsp {

/// odd: simple roots indexed by -r..r (the iota pair, with generator t);
/// even: simple roots indexed by -r+1/2..r-1/2 (the jota pair).
enum class Parity { odd, even };

std::string parity_name(Parity p);
Parity parity_from_name(const std::string& s);

/// Weights are finite maps from doubled module indices 2a to integers.
struct Weight {
  std::map<int, int> c;
  int at(int a2) const {
    auto it = c.find(a2);
    return it == c.end() ? 0 : it->second;
  }
  void add(int a2, int v) {
    if ((c[a2] += v) == 0) c.erase(a2);
  }
  Weight& operator+=(const Weight& o) {
    for (auto& [k, v] : o.c) add(k, v);
    return *this;
  }
  Weight& operator-=(const Weight& o) {
    for (auto& [k, v] : o.c) add(k, -v);
    return *this;
  }
  friend Weight operator+(Weight a, const Weight& b) { return a += b; }
  friend Weight operator-(Weight a, const Weight& b) { return a -= b; }
  friend bool operator==(const Weight& a, const Weight& b) { return a.c == b.c; }
  friend bool operator<(const Weight& a, const Weight& b) { return a.c < b.c; }
  bool is_zero() const { return c.empty(); }
};

int pairing(const Weight& a, const Weight& b);
Weight epsilon(int a2);
nlohmann::json to_json(const Weight& w);

/// canonical representative of the class of a weight modulo theta-fixed weights
using ThetaClass = std::map<int, int>;

class RankData {
 public:
  RankData(int r, Parity parity);

  int r() const { return r_; }
  Parity parity() const { return parity_; }
  bool is_iota() const { return parity_ == Parity::odd; }

  /// number of simple roots and of module indices
  int n() const { return n_; }
  int m() const { return n_ + 1; }

  // Simple roots are addressed by position 0..n-1, module indices by position
  // 0..n; alpha at position p is eps(p) - eps(p+1) in module positions.
  int root_index2(int p) const { return 2 * p - (n_ - 1); }
  int root_pos(int i2) const;
  int module_index2(int k) const { return 2 * k - n_; }
  int module_pos(int a2) const;
  bool valid_root2(int i2) const;
  bool valid_module2(int a2) const;
  int theta_root(int p) const { return n_ - 1 - p; }
  int center() const { return is_iota() ? r_ : -1; }
  /// (alpha_p, alpha_q)
  int root_pair(int p, int q) const {
    int d = p - q;
    return d == 0 ? 2 : (d == 1 || d == -1) ? -1 : 0;
  }
  /// (alpha_p, eps at module position k)
  int root_eps(int p, int k) const { return (k == p) - (k == p + 1); }

  Weight alpha(int i2) const;
  Weight theta(const Weight& w) const;
  ThetaClass theta_class(const Weight& w) const;
  /// simple-root coordinates (by position) of w in Z Pi; nullopt if w is not in the root lattice
  std::optional<std::vector<int>> root_coords(const Weight& w) const;
  Weight weight_of(const std::vector<int>& coords) const;
  /// mu <= nu: same theta class and nu - mu in N Pi
  bool order_preceq(const Weight& mu, const Weight& nu) const;

  std::vector<int> root_indices2() const;
  std::vector<int> module_indices2() const;
  std::string root_label(int p) const;
  std::string module_label(int k) const;

 private:
  void check_weight(const Weight& w) const;
  int r_;
  Parity parity_;
  int n_;
};

/// half-integer label of a doubled index, e.g. -1 -> "-1/2", 4 -> "2"
std::string half_label(int a2);

}  // namespace qsp
