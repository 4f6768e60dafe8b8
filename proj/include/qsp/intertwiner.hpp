#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "qsp/falg.hpp"
#include "qsp/tensorrep.hpp"

namespace qsp {

/// Evaluates the functional Upsilon^* on words of 'f.  Values are stored
/// scaled: star(w) = (q^{-1}-q)^{len w} Upsilon^*(F_w), which is integral.
class UpsilonEngine {
 public:
  explicit UpsilonEngine(RankData rd);
  const RankData& rank() const { return rd_; }
  FAlgebra& algebra() { return fa_; }

  /// value from the recursion peeling the leading letter
  const ZPoly& star(const Word& w);
  /// value from the recursion peeling the trailing letter
  const ZPoly& star_R(const Word& w);
  ZPoly star_combo(const ZElement& y);
  bool theta_fixed(const std::vector<int>& mu) const;
  size_t memo_size() const { return L_.size() + R_.size(); }
  /// negative control: flip the sign of the generator-0 clause
  void corrupt_for_testing() { corrupt_ = true; L_.clear(); }

 private:
  ZPoly compute_L(const Word& w);
  ZPoly compute_R(const Word& w);
  RankData rd_;
  FAlgebra fa_;
  bool corrupt_ = false;
  std::unordered_map<Word, ZPoly> L_, R_;
};

struct UpsilonTable {
  Parity pair;
  int rank;
  int cutoff;
  /// weight (root coordinates) -> Upsilon_mu expanded in the chosen word basis
  std::map<std::vector<int>, FElement> comps;
  nlohmann::json to_json(const FAlgebra& fa) const;
};

/// all theta-fixed weights in N Pi with height <= cutoff (root coordinates)
std::vector<std::vector<int>> theta_fixed_weights(const RankData& rd, int cutoff);
UpsilonTable compute_upsilon(UpsilonEngine& eng, int cutoff);

/// Matrix coefficients of U^- elements on a tensor space, realized through
/// explicit elements y of 'f with <g|x|f> = (x, y).
struct DualElt {
  ZElement words;         // Y
  int qexp = 0;           // y = q^qexp (q^{-1}-q)^nontrivial Y
  int nontrivial = 0;
  std::vector<int> mu;    // weight consumed
  int height = 0;
};
/// F-side: <g|F_w|f> = (F_w, y); barred selects the bar-conjugated coproduct
std::optional<DualElt> f_dual(const TensorSpace& s, const Idx& f, const Idx& g, bool barred);
/// E-side: <g|E_{w reversed}|f> = (F_w, y)
std::optional<DualElt> e_dual(const TensorSpace& s, const Idx& f, const Idx& g);
/// (F_w, y) computed from a dual element, for oracle comparisons
LaurentPoly pair_word_dual(FAlgebra& fa, const Word& w, const DualElt& d);

/// targets g for which a chain from f exists on every factor (F-direction)
std::vector<Idx> f_targets(const TensorSpace& s, const Idx& f);
std::vector<Idx> e_targets(const TensorSpace& s, const Idx& f);

/// Upsilon and its coefficient-barred counterpart acting on a tensor space.
class ModuleUpsilon {
 public:
  ModuleUpsilon(UpsilonEngine& eng, TensorSpace space) : eng_(eng), s_(std::move(space)) {}
  const TensorSpace& space() const { return s_; }
  LaurentPoly coefficient(const Idx& g, const Idx& f, bool barred);
  const TensorVector& column(const Idx& f, bool barred = false);
  TensorVector apply(const TensorVector& v, bool barred = false);

 private:
  UpsilonEngine& eng_;
  TensorSpace s_;
  std::map<Idx, TensorVector> cols_, bar_cols_;
};

/// Quasi-R-matrix of U acting on (first m-1 factors) (x) (last factor).
class ModuleTheta {
 public:
  ModuleTheta(FAlgebra& fa, TensorSpace space);
  const TensorSpace& space() const { return s_; }
  static LaurentPoly kappa(const FAlgebra& fa, const std::vector<int>& mu);
  const TensorVector& column(const Idx& f);
  TensorVector apply(const TensorVector& v);
  /// coefficient-barred Theta; valid when the first part is a single factor
  TensorVector apply_bar(const TensorVector& v);

 private:
  FAlgebra& fa_;
  TensorSpace s_, head_;
  std::map<Idx, TensorVector> cols_;
};

struct CheckReport {
  bool ok = true;
  std::string detail;
  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

CheckReport verify_intertwining(ModuleUpsilon& up);
CheckReport check_upsilon_inverse(ModuleUpsilon& up);
/// L- and R-recursions agree on every word of theta-fixed weight up to the cutoff
CheckReport check_star_LR(UpsilonEngine& eng, int cutoff);
/// Upsilon^* vanishes on u S_ij v up to the cutoff
CheckReport check_star_serre(UpsilonEngine& eng, int cutoff);

struct ThetaTable {
  int rank;
  int cutoff;
  /// weight -> coefficient matrix over (E-word basis) x (F-word basis)
  std::map<std::vector<int>, std::vector<std::vector<RationalFn>>> comps;
};
/// solves the defining recursions weight by weight; bound (if nonempty) caps each coordinate
ThetaTable compute_theta(FAlgebra& fa, int cutoff, const std::vector<int>& bound = {});
/// action of a solved table on V (x) V style spaces with two factors
TensorVector theta_table_apply(FAlgebra& fa, const ThetaTable& tab, const TensorSpace& s, const TensorVector& v);

/// Theta^iota = Delta(Upsilon) Theta (Upsilon^{-1} (x) 1) on (first m-1 factors) (x) last factor;
/// Upsilon^{-1} is applied as the coefficient-barred Upsilon.
class ModuleThetaIota {
 public:
  ModuleThetaIota(UpsilonEngine& eng, TensorSpace space);
  TensorVector apply(const TensorVector& v);
  /// the coefficient-barred Theta^iota (two-factor spaces)
  TensorVector apply_bar(const TensorVector& v);
  /// bar-conjugated coproduct of a coideal generator on head (x) last factor
  TensorVector act_bar_coproduct(const CoidealElt& u, const TensorVector& v) const;
  /// Delta(u) Theta^iota = Theta^iota bar-Delta(u) for every coideal generator
  CheckReport check_intertwining();

 private:
  TensorVector head_upsilon(const TensorVector& v, bool barred);
  TensorSpace s_;
  std::unique_ptr<ModuleUpsilon> head_, full_;
  std::unique_ptr<ModuleTheta> theta_;
};

}  // namespace qsp
