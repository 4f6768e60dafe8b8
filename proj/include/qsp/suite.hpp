#pragma once

#include <functional>
#include <string>
#include <vector>

#include "qsp/intertwiner.hpp"

namespace qsp {

/// Scale of a verification run: quick stays at rank <= 1, full uses the
/// acceptance sizes.
enum class Depth { quick, full };
Depth depth_from_name(const std::string& s);

/// One named verification item; run() is self-contained (own engines, own
/// random generator) so items may execute concurrently.
struct SuiteItem {
  std::string module;
  std::string name;
  std::function<CheckReport()> run;
};

struct SuiteResult {
  std::string module, name;
  CheckReport report;
};

/// every invariant of every module at the given depth
std::vector<SuiteItem> selftest_items(Depth d);
/// runs items on up to `workers` threads; results keep the item order
std::vector<SuiteResult> run_items(const std::vector<SuiteItem>& items, int workers);
/// fixed-width pass/fail matrix, one row per module, deterministic
std::string render_matrix(const std::vector<SuiteResult>& results);

// The numbered acceptance criteria; each takes its scale explicitly.

CheckReport crit_bilinear_form(int max_rank, int pairs, int max_height, unsigned seed);
CheckReport crit_gram_kostant(int max_rank, int max_height);
CheckReport crit_upsilon_anchors(int kmax);
CheckReport crit_intertwining(int max_rank, int max_m);
CheckReport crit_integrality(int max_rank, int max_m);
CheckReport crit_hecke(int max_m, int max_rank);
CheckReport crit_compatible_bars(int max_rank, int max_m);
CheckReport crit_closed_form_V(int min_rank, int max_rank);
CheckReport crit_rank_one(int max_s, int max_a);
/// bijection round trips, Bruhat axioms, tensor-versus-wedge, super duality
/// and one (1|1) stabilization; max_rank bounds the finite ranks used
CheckReport crit_fock(int max_rank, int trips, unsigned seed);

}  // namespace qsp
