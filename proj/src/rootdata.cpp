#include "qsp/rootdata.hpp"

#include <stdexcept>

namespace qsp {

std::string parity_name(Parity p) { return p == Parity::odd ? "iota" : "jota"; }

Parity parity_from_name(const std::string& s) {
  if (s == "iota" || s == "odd") return Parity::odd;
  if (s == "jota" || s == "even") return Parity::even;
  throw std::invalid_argument("parity_from_name: unknown pair kind '" + s + "'");
}

int pairing(const Weight& a, const Weight& b) {
  int s = 0;
  for (auto& [k, v] : a.c) s += v * b.at(k);
  return s;
}

Weight epsilon(int a2) {
  Weight w;
  w.add(a2, 1);
  return w;
}

nlohmann::json to_json(const Weight& w) {
  nlohmann::json j = nlohmann::json::object();
  for (auto& [k, v] : w.c) j[std::to_string(k)] = v;
  return j;
}

std::string half_label(int a2) {
  if (a2 % 2 == 0) return std::to_string(a2 / 2);
  return std::to_string(a2) + "/2";
}

RankData::RankData(int r, Parity parity) : r_(r), parity_(parity) {
  if (r < 0) throw std::invalid_argument("RankData: negative rank");
  if (parity == Parity::even && r == 0) throw std::invalid_argument("RankData: even parity needs rank >= 1");
  n_ = parity == Parity::odd ? 2 * r + 1 : 2 * r;
}

bool RankData::valid_root2(int i2) const {
  int p2 = i2 + (n_ - 1);
  return p2 % 2 == 0 && p2 >= 0 && p2 / 2 < n_;
}

bool RankData::valid_module2(int a2) const {
  int k2 = a2 + n_;
  return k2 % 2 == 0 && k2 >= 0 && k2 / 2 <= n_;
}

int RankData::root_pos(int i2) const {
  if (!valid_root2(i2)) throw std::out_of_range("root_pos: index out of range: " + half_label(i2));
  return (i2 + n_ - 1) / 2;
}

int RankData::module_pos(int a2) const {
  if (!valid_module2(a2)) throw std::out_of_range("module_pos: index out of range: " + half_label(a2));
  return (a2 + n_) / 2;
}

void RankData::check_weight(const Weight& w) const {
  for (auto& [k, v] : w.c)
    if (!valid_module2(k)) throw std::out_of_range("theta: index out of range: " + half_label(k));
}

Weight RankData::alpha(int i2) const {
  root_pos(i2);
  Weight w;
  w.add(i2 - 1, 1);
  w.add(i2 + 1, -1);
  return w;
}

Weight RankData::theta(const Weight& w) const {
  check_weight(w);
  Weight t;
  for (auto& [k, v] : w.c) t.add(-k, -v);
  return t;
}

ThetaClass RankData::theta_class(const Weight& w) const {
  // w - theta(w) has equal coordinates at a and -a; keep a >= 0
  Weight d = w - theta(w);
  ThetaClass c;
  for (auto& [k, v] : d.c)
    if (k >= 0) c[k] = v;
  return c;
}

std::optional<std::vector<int>> RankData::root_coords(const Weight& w) const {
  check_weight(w);
  std::vector<int> c(n_, 0);
  int run = 0;
  for (int p = 0; p < n_; ++p) {
    run += w.at(module_index2(p));
    c[p] = run;
  }
  if (run + w.at(module_index2(n_)) != 0) return std::nullopt;
  return c;
}

Weight RankData::weight_of(const std::vector<int>& coords) const {
  Weight w;
  for (int p = 0; p < n_; ++p)
    if (coords[p]) {
      w.add(module_index2(p), coords[p]);
      w.add(module_index2(p + 1), -coords[p]);
    }
  return w;
}

bool RankData::order_preceq(const Weight& mu, const Weight& nu) const {
  if (theta_class(mu) != theta_class(nu)) return false;
  auto c = root_coords(nu - mu);
  if (!c) return false;
  for (int x : *c)
    if (x < 0) return false;
  return true;
}

std::vector<int> RankData::root_indices2() const {
  std::vector<int> v;
  for (int p = 0; p < n_; ++p) v.push_back(root_index2(p));
  return v;
}

std::vector<int> RankData::module_indices2() const {
  std::vector<int> v;
  for (int k = 0; k <= n_; ++k) v.push_back(module_index2(k));
  return v;
}

std::string RankData::root_label(int p) const { return half_label(root_index2(p)); }
std::string RankData::module_label(int k) const { return half_label(module_index2(k)); }

}  // namespace qsp
