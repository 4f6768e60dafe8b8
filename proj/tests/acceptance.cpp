// Acceptance run: one PASS/FAIL line per numbered criterion, exact comparisons only.

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iomanip>
#include <iostream>
#include <memory>

#include "qsp/suite.hpp"

using namespace qsp;

namespace {

struct Criterion {
  int number;
  std::string title;
  double budget_s;  // <= 0 means no runtime bound
  std::function<CheckReport()> run;
};

// stdout of a child process, or nullopt-like empty flag on failure
bool capture(const std::string& cmd, std::string& out, int& status) {
  std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(cmd.c_str(), "r"), pclose);
  if (!pipe) return false;
  std::array<char, 4096> buf;
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe.get())) > 0) out.append(buf.data(), n);
  status = pclose(pipe.release());
  return true;
}

CheckReport determinism() {
  CheckReport rep;
  auto items = selftest_items(Depth::quick);
  std::string a = render_matrix(run_items(items, 1));
  std::string b = render_matrix(run_items(items, 4));
  if (a != b) rep.fail("in-process reports differ between 1 and 4 workers");
  std::string cmd = std::string("\"") + QSP_CLI_PATH + "\" selftest --depth quick";
  std::string c1, c2;
  int s1 = -1, s2 = -1;
  if (!capture(cmd, c1, s1) || !capture(cmd, c2, s2)) {
    rep.fail("cannot run " + cmd);
    return rep;
  }
  if (s1 != 0 || s2 != 0) rep.fail("CLI selftest exited with a nonzero status");
  if (c1 != c2) rep.fail("two CLI selftest runs differ");
  if (c1 != a) rep.fail("CLI report differs from the in-process report");
  if (rep.ok) rep.detail = "2 in-process and 2 CLI reports identical (" + std::to_string(a.size()) + " bytes)";
  return rep;
}

}  // namespace

int main() {
  const unsigned seed = 20261016;
  std::vector<Criterion> crits = {
      {1, "bilinear form ground truth", 30, [=] { return crit_bilinear_form(2, 500, 6, seed); }},
      {2, "Gram rank vs Kostant count", 120, [] { return crit_gram_kostant(2, 6); }},
      {3, "Upsilon anchors", 10, [] { return crit_upsilon_anchors(8); }},
      {4, "intertwining and involutivity", 120, [] { return crit_intertwining(2, 3); }},
      {5, "integrality", 60, [] { return crit_integrality(2, 3); }},
      {6, "Hecke suite", 120, [] { return crit_hecke(3, 2); }},
      {7, "compatible bars", 120, [] { return crit_compatible_bars(2, 3); }},
      {8, "closed-form iota-canonical basis of V", 10, [] { return crit_closed_form_V(1, 3); }},
      {9, "rank-one suite", 180, [] { return crit_rank_one(6, 4); }},
      {10, "Fock suite", 600, [=] { return crit_fock(4, 1000, seed); }},
      {11, "determinism", 0, [] { return determinism(); }},
  };
  int failed = 0;
  for (auto& c : crits) {
    auto t0 = std::chrono::steady_clock::now();
    CheckReport rep;
    try {
      rep = c.run();
    } catch (const std::exception& e) {
      rep.fail(std::string("exception: ") + e.what());
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.budget_s > 0 && s > c.budget_s) {
      std::ostringstream os;
      os << "runtime " << std::fixed << std::setprecision(1) << s << " s exceeds the budget";
      rep.fail(os.str());
    }
    failed += !rep.ok;
    std::cout << "criterion " << std::setw(2) << c.number << "  " << (rep.ok ? "PASS" : "FAIL") << "  " << std::fixed << std::setprecision(2)
              << std::setw(7) << s << " s";
    if (c.budget_s > 0) std::cout << " / " << std::setprecision(0) << c.budget_s << " s";
    std::cout << "  " << c.title << ": " << rep.detail << std::endl;
  }
  std::cout << (failed ? std::to_string(failed) + " criteria failed" : "all criteria passed") << std::endl;
  return failed ? 1 : 0;
}
