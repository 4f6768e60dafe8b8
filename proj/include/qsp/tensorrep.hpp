#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "qsp/falg.hpp"
#include "qsp/qlaurent.hpp"
#include "qsp/rootdata.hpp"

namespace qsp {

/// Tensor factor entries as doubled module indices.
using Idx = std::vector<int>;

/// Sparse vector over standard monomials.  Coefficients live in Z[q,q^{-1}]
/// (possibly with rational coefficients); every operator used here preserves
/// this lattice.
struct TensorVector {
  std::map<Idx, LaurentPoly> terms;

  void add(const Idx& f, const LaurentPoly& c);
  TensorVector& operator+=(const TensorVector& o);
  TensorVector& operator-=(const TensorVector& o);
  TensorVector scaled(const LaurentPoly& c) const;
  /// coefficient-wise bar
  TensorVector bar_coeffs() const;
  LaurentPoly coeff(const Idx& f) const;
  bool is_zero() const { return terms.empty(); }
  friend bool operator==(const TensorVector& a, const TensorVector& b) { return a.terms == b.terms; }
  friend bool operator!=(const TensorVector& a, const TensorVector& b) { return !(a == b); }
  friend TensorVector operator+(TensorVector a, const TensorVector& b) { return a += b; }
  friend TensorVector operator-(TensorVector a, const TensorVector& b) { return a -= b; }
  static TensorVector basis(const Idx& f) {
    TensorVector v;
    v.add(f, 1);
    return v;
  }
};

/// The coideal generators; e, f, k carry an index i > 0.
enum class CoidealGen { e, f, k, kinv, t };
struct CoidealElt {
  CoidealGen g;
  int i2 = 0;  // doubled index, positive
  std::string str() const;
};

/// The mixed tensor space T^b = M_1 (x) ... (x) M_m at finite rank with
/// M_k = V when b_k = 0 and M_k = W when b_k = 1.
class TensorSpace {
 public:
  TensorSpace(RankData rd, std::vector<int> b);
  static TensorSpace power_of_V(RankData rd, int m) { return TensorSpace(rd, std::vector<int>(size_t(m), 0)); }

  const RankData& rank() const { return rd_; }
  const std::vector<int>& b() const { return b_; }
  size_t m() const { return b_.size(); }
  std::string b_string() const;
  bool pure_V() const;

  /// all standard indices in lexicographic order
  std::vector<Idx> basis() const;
  bool valid(const Idx& f) const;
  Weight weight(const Idx& f) const;
  /// weight of factor k at entry a2, as module-position coordinates of eps
  int factor_sign(size_t k) const { return b_[k] ? -1 : 1; }
  /// (alpha_p, wt of factors [from, to))
  int alpha_pair(int p, const Idx& f, size_t from, size_t to) const;

  /// barred = true uses the bar-conjugated coproduct (K and K^{-1} swapped)
  TensorVector act_E(int p, const TensorVector& v, bool barred = false) const;
  TensorVector act_F(int p, const TensorVector& v, bool barred = false) const;
  TensorVector act_K(int p, int sign, const TensorVector& v) const;
  /// apply the word F_{w_1}...F_{w_k} (rightmost letter first); E-version likewise
  TensorVector act_F_word(const Word& w, const TensorVector& v) const;
  TensorVector act_E_word(const Word& w, const TensorVector& v) const;
  TensorVector act_coideal(const CoidealElt& u, const TensorVector& v) const;
  /// the image of u under the bar involution of U composed with the embedding,
  /// i.e. bar(embedding(ubar)); used by the intertwining check
  TensorVector act_coideal_barred(const CoidealElt& u, const TensorVector& v) const;
  std::vector<CoidealElt> coideal_generators() const;

  /// single-factor chains used by the pairing realization of module actions:
  /// the word w with <g|F_w|f> = 1 on factor k, or nullopt-like empty flag
  bool f_chain(size_t k, int from2, int to2, Word& w) const;
  bool e_chain(size_t k, int from2, int to2, Word& w) const;

  nlohmann::json vector_json(const TensorVector& v) const;

 private:
  // single-factor actions; return false if the result is zero
  bool E1(size_t k, int p, int a2, int& out) const;
  bool F1(size_t k, int p, int a2, int& out) const;
  RankData rd_;
  std::vector<int> b_;
};

std::string idx_label(const Idx& f);

/// Dual element of a chain word w (consecutive letters adjacent, all distinct):
/// returns Y with (F_u, (q^{-1}-q) Y) = delta_{u,w} for every word u.
ZElement chain_dual(const Word& w, const RankData& rd);

}  // namespace qsp
