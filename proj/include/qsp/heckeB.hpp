#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "qsp/intertwiner.hpp"
#include "qsp/linalg.hpp"
#include "qsp/tensorrep.hpp"

namespace qsp {

/// Element of W_{B_m} in window notation: w[i] is the signed image of i+1.
/// Right multiplication by s_0 negates the first entry, by s_a (a > 0) swaps
/// entries a and a+1.
class SignedPerm {
 public:
  SignedPerm() = default;
  explicit SignedPerm(std::vector<int> w);
  static SignedPerm identity(int m);
  static SignedPerm generator(int m, int a);

  int m() const { return int(w_.size()); }
  const std::vector<int>& window() const { return w_; }
  int length() const { return len_; }
  /// lexicographically least reduced word (generator indices 0..m-1)
  const std::vector<int>& reduced_word() const { return word_; }

  SignedPerm operator*(const SignedPerm& o) const;  // composition, (x*y)(i) = x(y(i))
  SignedPerm inverse() const;
  SignedPerm times_gen(int a) const;  // x * s_a
  SignedPerm gen_times(int a) const;  // s_a * x
  std::string str() const;

  friend bool operator==(const SignedPerm& a, const SignedPerm& b) { return a.w_ == b.w_; }
  friend bool operator<(const SignedPerm& a, const SignedPerm& b) { return a.w_ < b.w_; }

 private:
  std::vector<int> w_;
  int len_ = 0;
  std::vector<int> word_;
};

/// length by the inversion-count formula
int bm_length(const std::vector<int>& w);
/// all of W_{B_m}, sorted by (length, window)
std::vector<SignedPerm> all_signed_perms(int m);

using HeckeElement = std::map<SignedPerm, LaurentPoly>;

HeckeElement hecke_basis(const SignedPerm& s, const LaurentPoly& c = 1);
HeckeElement hecke_gen(int m, int a);
HeckeElement hecke_add(HeckeElement a, const HeckeElement& b, const LaurentPoly& s = 1);
HeckeElement hecke_mul(const HeckeElement& a, const HeckeElement& b);
HeckeElement hecke_bar(const HeckeElement& x);
nlohmann::json hecke_json(const HeckeElement& x);

/// Right action of H_a on a pure V-tensor space (iota: five cases, jota: six).
TensorVector act_hecke(const TensorSpace& s, const TensorVector& v, int a);
TensorVector act_hecke(const TensorSpace& s, const TensorVector& v, const HeckeElement& h);
/// f . sigma with f(-i) = -f(i)
Idx act_index(const Idx& f, const SignedPerm& s);
bool anti_dominant(const RankData& rd, const Idx& f);

/// Type-A generators H_i (1 <= i) acting on factors i, i+1 of equal type of an
/// arbitrary mixed space; V-pairs use the explicit formula, W-pairs the
/// corresponding formula for the dual module.
TensorVector act_hecke_typeA(const TensorSpace& s, const TensorVector& v, int i);

/// The bar involution on V^{(x)m} fixed by anti-dominant monomials and
/// compatible with the Hecke bar; computed orbit by orbit.
class HeckeBar {
 public:
  explicit HeckeBar(TensorSpace s);
  const TensorSpace& space() const { return s_; }
  const TensorVector& column(const Idx& f);
  TensorVector apply(const TensorVector& v);

 private:
  void build_orbit(const Idx& f0);
  TensorSpace s_;
  std::map<Idx, TensorVector> cols_;
};

/// R^{-1} = P^{-1} g^{-1} Theta-bar on two adjacent factors of a tensor space,
/// computed from the quasi-R-matrix.
class TypeARMatrix {
 public:
  TypeARMatrix(FAlgebra& fa, const TensorSpace& s);
  TensorVector apply_inverse(const TensorVector& v, int i);
  TensorVector apply(const TensorVector& v, int i);

 private:
  TensorVector local(const TensorVector& v, int i, bool inverse);
  FAlgebra& fa_;
  TensorSpace s_;
  std::map<std::pair<int, int>, std::unique_ptr<ModuleTheta>> th_;
};

struct OperatorT {
  std::vector<int> index;  // module indices (doubled) labelling rows and columns
  RMatrix T, Tinv;  // T[row][col]
};

/// T^{-1} from its eigenspaces V_- (eigenvalue -q) and V_+ (q^{-1}), and T
/// independently as Upsilon o zeta~ o T_{w0}; throws std::runtime_error if
/// the two constructions are not mutually inverse.
OperatorT operator_T(UpsilonEngine& eng);
/// (T^{-1} (x) id) applied to a vector of V^{(x)m}
TensorVector apply_T_inverse_first(const OperatorT& t, const TensorSpace& s, const TensorVector& v);

}  // namespace qsp
