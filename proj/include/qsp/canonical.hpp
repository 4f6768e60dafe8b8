#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "qsp/intertwiner.hpp"
#include "qsp/tensorrep.hpp"

namespace qsp {

/// Lusztig's bar involution psi on a tensor space, psi(x (x) v) = Theta(psi(x) (x) v),
/// with psi fixing every single-factor basis vector.
class TypeABar {
 public:
  TypeABar(FAlgebra& fa, TensorSpace s);
  const TensorSpace& space() const { return s_; }
  const TensorVector& column(const Idx& f);
  TensorVector apply(const TensorVector& v);

 private:
  FAlgebra& fa_;
  TensorSpace s_;
  std::unique_ptr<TypeABar> head_;
  std::unique_ptr<ModuleTheta> theta_;
  std::map<Idx, TensorVector> cols_;
};

/// The bar involution of the coideal side: Upsilon o psi.
class IotaBar {
 public:
  IotaBar(UpsilonEngine& eng, TensorSpace s);
  const TensorSpace& space() const { return s_; }
  const TensorVector& column(const Idx& f);
  TensorVector apply(const TensorVector& v);
  TypeABar& type_a() { return psi_; }

 private:
  TensorSpace s_;
  TypeABar psi_;
  ModuleUpsilon up_;
  std::map<Idx, TensorVector> cols_;
};

/// Columns bar(M_f) for f in a finite index set, listed in a linear order.
struct BarMatrix {
  std::vector<Idx> order;
  std::map<Idx, TensorVector> cols;
  LaurentPoly entry(const Idx& g, const Idx& f) const;
};

BarMatrix make_bar_matrix(const std::vector<Idx>& order, const std::function<TensorVector(const Idx&)>& bar_of);

enum class KLKind { canonical, dual };
std::string kl_kind_name(KLKind k);

/// Basis elements T_f = sum_g t_{gf} M_g (or the dual L_f) over an ordered index set.
struct KLTable {
  KLKind kind = KLKind::canonical;
  std::vector<Idx> order;
  std::map<Idx, TensorVector> cols;
  LaurentPoly entry(const Idx& g, const Idx& f) const;
  nlohmann::json to_json() const;
  std::string to_latex() const;
  friend bool operator==(const KLTable& a, const KLTable& b) { return a.kind == b.kind && a.cols == b.cols; }
};

/// Lusztig's triangular algorithm.  Throws std::domain_error if the bar
/// matrix is not unitriangular in the given order, or if a right-hand side
/// fails to be bar-antisymmetric.
KLTable triangular_solve(const BarMatrix& bm, KLKind kind);

/// r . bar(r) = 1
CheckReport check_bar_involutive(const BarMatrix& bm);
/// r_{gf} != 0 implies g <= f
CheckReport check_bar_triangular(const BarMatrix& bm, const std::function<bool(const Idx&, const Idx&)>& leq);
/// diagonal 1, entries in qZ[q] (q^{-1}Z[q^{-1}]), every basis vector bar-invariant
CheckReport check_kl_table(const KLTable& t, const BarMatrix& bm);

/// g <= f: same Lambda_theta class and wt(f) - wt(g) in N Pi
bool tensor_preceq(const TensorSpace& s, const Idx& g, const Idx& f);
/// height of lambda_f in simple-root coordinates of Pi_b, up to a constant
/// depending only on b: g < f in the b-Bruhat ordering forces a smaller value
int super_height(const std::vector<int>& b, const Idx& f);
/// sort by (class key, height of the weight descending, lexicographic); on
/// spaces with W factors the height is replaced by -super_height
std::vector<Idx> tensor_order(const TensorSpace& s, std::vector<Idx> idx);

struct CanonicalResult {
  BarMatrix bar;
  KLTable canonical, dual;
};
CanonicalResult canonical_from_bar(BarMatrix bm);
/// iota-canonical and dual iota-canonical bases of a tensor space
CanonicalResult icanonical_tensor(UpsilonEngine& eng, const TensorSpace& s);

// ---------------------------------------------------------------- rank one

/// The rank-one module ^omega L(s) with basis E^{(a)} xi_{-s}, 0 <= a <= s.
struct Rank1Module {
  int s;
  using Vec = std::vector<LaurentPoly>;
  Vec basis(int a) const;
  Vec act_E(const Vec& v) const;
  Vec act_F(const Vec& v) const;
  Vec act_K(const Vec& v, int sign) const;
  /// t = E + q F K^{-1} + K^{-1}
  Vec act_t(const Vec& v) const;
};

/// c_k with Upsilon_{k alpha_0} = c_k F^{(k)}, by the rank-one recursion
std::vector<LaurentPoly> rank1_c(int kmax);
BarMatrix rank1_bar_matrix(int s);
KLTable rank1_icanonical(int s);

/// polynomial in t with coefficients in Q(q), lowest degree first
using TPoly = std::vector<RationalFn>;
std::string tpoly_str(const TPoly& p);
nlohmann::json tpoly_json(const TPoly& p);
/// u(t) xi_{-s}
std::vector<RationalFn> tpoly_apply(const Rank1Module& mod, const TPoly& u);

struct DividedPower {
  int a = 0;
  bool odd = true;
  TPoly poly;
  std::vector<int> s_values;
  TPoly conjecture;
  bool conjecture_agrees = false;
  bool leading_ok = false;
  nlohmann::json to_json() const;
};
/// the conjectured product formula
TPoly divided_power_conjecture(int a, bool odd);
/// solves u(t) xi_{-s} = T^s_a for three values of s of the given parity and
/// requires agreement; throws std::runtime_error on a stabilization failure
DividedPower rank1_divided_power(int a, bool odd);

}  // namespace qsp
