#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qsp/canonical.hpp"
#include "qsp/heckeB.hpp"

namespace qsp {

/// A 0^m 1^n sequence: b_i = 0 marks a copy of V, b_i = 1 a copy of W.
class ZeroOneSeq {
 public:
  ZeroOneSeq() = default;
  explicit ZeroOneSeq(std::vector<int> b);
  /// "0101" or "0,1,0,1"
  static ZeroOneSeq parse(const std::string& s);

  const std::vector<int>& bits() const { return b_; }
  size_t size() const { return b_.size(); }
  int operator[](size_t i) const { return b_[i]; }
  int m() const;
  int n() const;
  /// (-1)^{b_i}
  int sign(size_t i) const { return b_[i] ? -1 : 1; }
  /// position i carries eps_{slot+1} (b_i = 0) or eps_{bar(slot+1)} (b_i = 1)
  int slot(size_t i) const;
  ZeroOneSeq extended(int bit, int k) const;
  std::string str() const;
  friend bool operator==(const ZeroOneSeq& a, const ZeroOneSeq& b) { return a.b_ == b.b_; }

 private:
  std::vector<int> b_;
};

/// Weight of osp(2m+1|2n): doubled coordinates on eps_1..eps_m and eps_{1bar}..eps_{nbar}.
struct SuperWeight {
  std::vector<int> even2, odd2;

  static SuperWeight zero(int m, int n);
  /// "1,0|2" or "1/2,-1/2|3/2"; an empty side is allowed ("1|")
  static SuperWeight parse(const std::string& s);
  /// every coordinate an integer (X(m|n)) or every coordinate in Z+1/2
  bool integral() const;
  bool half_integral() const;
  /// coordinates in the order of b (the eps^{b_i}_i basis), doubled
  std::vector<int> b_coords(const ZeroOneSeq& b) const;
  static SuperWeight from_b_coords(const ZeroOneSeq& b, const std::vector<int>& c2);
  std::string str() const;
  nlohmann::json to_json() const;
  friend bool operator==(const SuperWeight& a, const SuperWeight& b) { return a.even2 == b.even2 && a.odd2 == b.odd2; }
  friend SuperWeight operator+(const SuperWeight& a, const SuperWeight& b);
  friend SuperWeight operator-(const SuperWeight& a, const SuperWeight& b);
};

/// A root of osp(2m+1|2n) in eps^b coordinates (integers), with its parity.
struct SuperRoot {
  std::vector<int> c;
  bool odd = false;
};
std::vector<SuperRoot> super_roots(const ZeroOneSeq& b);
/// coefficients of an eps^b-coordinate vector on Pi_b (unique since Pi_b is a basis)
std::vector<int> pi_b_coords(const std::vector<int>& u);
/// positive for the system Pi_b
bool is_positive(const std::vector<int>& u);

/// half the even positive roots minus half the odd positive roots
SuperWeight rho(const ZeroOneSeq& b);

/// f(i) = (lambda + rho_b | eps^{b_i}_i); integral weights go with iota
/// (I = Z+1/2), half-integral weights with jota (I = Z).  Throws
/// std::invalid_argument on a lattice mismatch.
Idx lambda_to_f(const SuperWeight& lambda, const ZeroOneSeq& b, Parity p);
SuperWeight f_to_lambda(const Idx& f, const ZeroOneSeq& b, Parity p);
/// smallest rank whose index set contains every entry of f
int min_rank(const Idx& f, Parity p);

/// sum_i (-1)^{b_i} [eps_{f(i)}] in Lambda_theta
ThetaClass wt_b(const Idx& f, const ZeroOneSeq& b);
bool linked(const Idx& f, const Idx& g, const ZeroOneSeq& b);
/// g <=_b f: linked and lambda_f - lambda_g in N Pi_b
bool bruhat_leq(const Idx& g, const Idx& f, const ZeroOneSeq& b);
/// height of lambda_f - lambda_g in Pi_b coordinates (meaningful when g <=_b f)
int bruhat_height(const Idx& g, const Idx& f, const ZeroOneSeq& b);
/// linear extension of the b-Bruhat ordering: ascending super height, then lexicographic
std::vector<Idx> fock_order(const ZeroOneSeq& b, std::vector<Idx> idx);
/// every g at rank rd with g <=_b f, by brute force over I_r^{m+n}, in fock_order
std::vector<Idx> interval_below(const Idx& f, const ZeroOneSeq& b, const RankData& rd);

/// the adjacent-sequence shifts lambda^L and lambda^U for b = (b1,0,1,b2) with
/// the pair 0,1 at positions kappa, kappa+1 (0-based kappa)
SuperWeight adjacent_L(const SuperWeight& lambda, const ZeroOneSeq& b, size_t kappa);
SuperWeight adjacent_U(const SuperWeight& lambda, const ZeroOneSeq& b, size_t kappa);
/// (b1,0,1,b2) -> (b1,1,0,b2)
ZeroOneSeq adjacent_seq(const ZeroOneSeq& b, size_t kappa);

// ---------------------------------------------------------------- q-wedges

using Partition = std::vector<int>;
Partition conjugate(const Partition& la);
/// drops zero parts; throws std::invalid_argument unless weakly decreasing and nonnegative
Partition normalize_partition(Partition la);

/// An index of T^b (x) wedge^infinity V (kind 0) or T^b (x) wedge^infinity W
/// (kind 1); the tail is |lambda, d> or |lambda_*, d>.
struct InfFockIndex {
  Idx head;
  int kind = 0;
  Partition lambda;
  int d = 0;
  /// doubled tail entry at position j >= 1
  int tail(int j) const;
  std::string str() const;
  friend bool operator==(const InfFockIndex& a, const InfFockIndex& b) {
    return a.head == b.head && a.kind == b.kind && a.lambda == b.lambda && a.d == b.d;
  }
};

/// |lambda, d> -> |lambda'_*, d> on the tail, head unchanged (and back for kind 1)
InfFockIndex natural_map(const InfFockIndex& f);
/// head followed by the first k tail entries, or nullopt when the tail is
/// not in its ground state beyond k
std::optional<Idx> truncate(const InfFockIndex& f, int k);
/// recovers the partition from a finite tail in sector d, or nullopt if the
/// entries are not the start of a |lambda, d> tail
std::optional<InfFockIndex> untruncate(const Idx& f, size_t head_len, int kind, int d);

/// T^b (x) wedge^k V (kind 0) or T^b (x) wedge^k W (kind 1), realized inside
/// T^{(b, kind^k)} by M^{b,kind}_f = M_{f.w0} L_{w0}.
class WedgeSpace {
 public:
  WedgeSpace(RankData rd, ZeroOneSeq b, int k, int kind);
  const ZeroOneSeq& b() const { return b_; }
  const ZeroOneSeq& full_b() const { return full_; }
  int k() const { return k_; }
  int kind() const { return kind_; }
  const TensorSpace& tensor() const { return ts_; }
  /// tail strictly decreasing (V) or strictly increasing (W)
  bool is_wedge_index(const Idx& f) const;
  /// f composed with the reversal of the tail
  Idx reverse_tail(const Idx& f) const;
  TensorVector embed(const Idx& f) const;
  /// coordinates on wedge monomials of a vector in the image of embed;
  /// throws std::invalid_argument for anything outside the image
  TensorVector project(const TensorVector& v) const;
  std::vector<Idx> interval_below(const Idx& f) const;

 private:
  RankData rd_;
  ZeroOneSeq b_, full_;
  int k_, kind_;
  TensorSpace ts_;
  std::vector<std::pair<std::vector<int>, int>> l_w0_;  // reduced words of S_k with exponents l(w) - l(w0)
};

/// bar on T^b_r restricted to an index set closed under the order
BarMatrix fock_bar_matrix(IotaBar& bar, const std::vector<Idx>& order);
/// bar on a wedge space: coordinates of bar(M^{b,kind}_f) on wedge monomials
BarMatrix wedge_bar_matrix(IotaBar& bar, const WedgeSpace& w, const std::vector<Idx>& order);
/// checks that bar(M^{b,kind}_f) is exactly sum_g r_gf M^{b,kind}_g
CheckReport check_wedge_bar(IotaBar& bar, const WedgeSpace& w, const BarMatrix& bm);

/// iota-canonical and dual bases of T^b_r over the interval below f
CanonicalResult fock_icanonical(UpsilonEngine& eng, const ZeroOneSeq& b, const Idx& f);
CanonicalResult wedge_icanonical(UpsilonEngine& eng, const WedgeSpace& w, const Idx& f);

enum class StabilizationStatus { stabilized, inconclusive };

struct IklReport {
  ZeroOneSeq b;
  SuperWeight lambda;
  Parity parity = Parity::odd;
  Idx f;
  std::vector<int> ranks;
  int stabilized_at = -1;
  StabilizationStatus status = StabilizationStatus::inconclusive;
  /// the dual column L_f agreed as well (it is often an infinite sum)
  bool dual_stable = false;
  CanonicalResult result;  // at stabilized_at, or at the last rank tried
  nlohmann::json to_json() const;
};

/// KL tables over interval_below(f) at consecutive ranks until the canonical
/// column T_f agrees between two consecutive ranks; inconclusive past max_rank.
/// Columns near the rank boundary keep changing, so only T_f is certified.
/// Throws std::invalid_argument if f is not representable at start_rank.
IklReport ikl_stabilized(const ZeroOneSeq& b, const SuperWeight& lambda, Parity p, int start_rank, int max_rank);
/// true if every column indexed by the first table appears unchanged in the second
bool columns_agree(const KLTable& small, const KLTable& big);

/// tensor-versus-wedge identities for one wedge index f at rank rd:
/// l^{b,kind}_{gf} = l^{(b,kind^k)}_{gf} and
/// t^{b,kind}_{gf} = sum_tau (-q)^{l(w0 tau)} t^{(b,kind^k)}_{g.tau, f.w0}
CheckReport check_tensor_vs_wedge(UpsilonEngine& eng, const WedgeSpace& w, const Idx& f);

/// t^{b,0}_{gf} = t^{b,1}_{g# f#} (and the same for l) for every pair of
/// tails |mu, d>, |la, d> with partitions inside the k x k box, heads at rank rd
CheckReport check_super_duality(UpsilonEngine& eng, const ZeroOneSeq& b, int k, int d, const Idx& head);

std::vector<Partition> partitions_in_box(int rows, int cols);

}  // namespace qsp
