#pragma once

#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qsp/qlaurent.hpp"
#include "qsp/rootdata.hpp"

namespace qsp {

/// A word in the generators F_i; each char is a simple-root position.
using Word = std::string;
/// Homogeneous or not, a finite combination of words.
using FElement = std::map<Word, RationalFn>;
/// Combination of words with integral coefficients (engine representation).
using ZElement = std::vector<std::pair<Word, ZPoly>>;

struct WeightBasis {
  std::vector<int> mu;            // simple-root coordinates
  std::vector<Word> words;        // chosen basis words B_mu
  std::vector<std::vector<RationalFn>> gram;      // (b_i, b_j)
  std::vector<std::vector<RationalFn>> gram_inv;
};

struct GramRankReport {
  size_t n_words = 0;
  size_t rank_lower = 0;  // certified by a nonvanishing minor at a specialization
  size_t rank_upper = 0;  // certified by independent Serre-ideal vectors in the radical
  long kostant = 0;
  bool exact() const { return rank_lower == rank_upper; }
};

class FAlgebra {
 public:
  explicit FAlgebra(RankData rd) : rd_(rd) {}
  const RankData& rank() const { return rd_; }

  std::vector<int> weight(const Word& w) const;
  int height(const std::vector<int>& mu) const;
  /// (alpha_p, mu) for mu in root coordinates
  int pair_root(int p, const std::vector<int>& mu) const;
  int pair(const std::vector<int>& a, const std::vector<int>& b) const;
  Word word_from_indices(const std::vector<int>& idx2) const;
  std::vector<int> indices_of(const Word& w) const;
  std::string word_label(const Word& w) const;

  /// r_p and _pr on a single word: list of (subword, exponent of q)
  std::vector<std::pair<Word, int>> r_word(int p, const Word& w) const;
  std::vector<std::pair<Word, int>> l_word(int p, const Word& w) const;
  FElement r_map(int p, const FElement& x) const;
  FElement l_map(int p, const FElement& x) const;

  /// (F_w, F_v) = (q^{-1}-q)^{-len} * word_pairing(w, v)
  const ZPoly& word_pairing(const Word& w, const Word& v);
  RationalFn bilinear_form(const FElement& x, const FElement& y);
  /// sum_{w,v} a_w b_v word_pairing(w,v), both sides of one common length
  ZPoly pairing_scaled(const ZElement& x, const ZElement& y);

  FElement serre_relator(int i2, int j2) const;
  std::vector<Word> words_of_weight(const std::vector<int>& mu) const;
  long kostant_count(const std::vector<int>& mu) const;
  GramRankReport gram_rank(const std::vector<int>& mu);
  const WeightBasis& weight_basis(const std::vector<int>& mu);
  std::vector<FElement> dual_basis(const std::vector<int>& mu);
  /// coordinates of x (homogeneous of weight mu) in the chosen basis of f_mu
  std::vector<RationalFn> expand(const FElement& x, const std::vector<int>& mu);

 private:
  RankData rd_;
  std::unordered_map<std::string, ZPoly> pair_cache_;
  std::map<std::vector<int>, WeightBasis> basis_cache_;
};

FElement operator*(const FElement& a, const FElement& b);
FElement& add_to(FElement& a, const FElement& b, const RationalFn& s = RationalFn(1));
FElement felement_word(const Word& w, const RationalFn& c = RationalFn(1));

}  // namespace qsp
