// qsp: command-line front end for the symmetric-pair computations.
// Exit codes: 0 success, 1 verification failure, 2 usage error, 3 inconclusive.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "qsp/canonical.hpp"
#include "qsp/fock.hpp"
#include "qsp/suite.hpp"

namespace {

using namespace qsp;

constexpr int exit_ok = 0, exit_verify = 1, exit_usage = 2, exit_inconclusive = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string pair = "iota";
  int rank = 1;
  int cutoff = -1;
  std::string b;
  std::string lambda;
  int start_rank = -1, max_rank = 4;
  std::string parity = "odd";
  int degree = 0;
  std::string format = "json";
  std::string output;
  std::string depth = "quick";
};

int default_cutoff(int rank) { return rank <= 2 ? 8 : 6; }

Parity pair_of(const RunConfig& c) {
  if (c.pair != "iota" && c.pair != "jota") throw UsageError("--pair must be iota or jota");
  Parity p = parity_from_name(c.pair);
  if (c.rank < (p == Parity::odd ? 0 : 1)) throw UsageError("--rank is below the smallest rank of the " + c.pair + " pair");
  return p;
}

ZeroOneSeq seq_of(const std::string& s) {
  try {
    return ZeroOneSeq::parse(s);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("--b: ") + e.what());
  }
}

void emit(const RunConfig& c, const std::string& text) {
  if (c.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream os(c.output, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open output file " + c.output);
  os << text;
}

std::string csv_table(const KLTable& t) {
  std::ostringstream os;
  os << "kind,g,f,poly\n";
  for (auto& f : t.order)
    for (auto& g : t.order) {
      LaurentPoly p = t.entry(g, f);
      if (!p.is_zero()) os << kl_kind_name(t.kind) << ",\"" << idx_label(g) << "\",\"" << idx_label(f) << "\",\"" << p.str() << "\"\n";
    }
  return os.str();
}

int cmd_upsilon(const RunConfig& c) {
  Parity p = pair_of(c);
  int cutoff = c.cutoff;
  if (cutoff < 0) cutoff = default_cutoff(c.rank);
  else if (cutoff > default_cutoff(c.rank))
    std::cerr << "warning: cutoff " << cutoff << " exceeds the default " << default_cutoff(c.rank) << " for rank " << c.rank
              << "; Gram matrices grow quickly\n";
  UpsilonEngine eng(RankData(c.rank, p));
  UpsilonTable tab = compute_upsilon(eng, cutoff);
  const FAlgebra& fa = eng.algebra();
  if (c.format == "json") {
    emit(c, tab.to_json(fa).dump(2) + "\n");
  } else if (c.format == "csv") {
    std::ostringstream os;
    os << "weight,word,coefficient\n";
    for (auto& [mu, x] : tab.comps)
      for (auto& [w, coef] : x) {
        std::string wt;
        for (size_t i = 0; i < mu.size(); ++i) wt += (i ? " " : "") + std::to_string(mu[i]);
        os << "\"" << wt << "\",\"" << fa.word_label(w) << "\",\"" << coef.str() << "\"\n";
      }
    emit(c, os.str());
  } else {
    std::ostringstream os;
    os << "\\begin{tabular}{ll}\nweight & $\\Upsilon_\\mu$ \\\\\n\\hline\n";
    for (auto& [mu, x] : tab.comps) {
      os << "(";
      for (size_t i = 0; i < mu.size(); ++i) os << (i ? "," : "") << mu[i];
      os << ") & $";
      bool first = true;
      for (auto& [w, coef] : x) {
        os << (first ? "" : " + ") << "(" << coef.str() << ")\\," << fa.word_label(w);
        first = false;
      }
      os << "$ \\\\\n";
    }
    os << "\\end{tabular}\n";
    emit(c, os.str());
  }
  CheckReport lr = check_star_LR(eng, cutoff);
  if (!lr.ok) {
    std::cerr << "verification failed: " << lr.detail << "\n";
    return exit_verify;
  }
  return exit_ok;
}

int cmd_icanonical(const RunConfig& c) {
  Parity p = pair_of(c);
  ZeroOneSeq b = seq_of(c.b);
  UpsilonEngine eng(RankData(c.rank, p));
  TensorSpace s(eng.rank(), b.bits());
  CanonicalResult res = icanonical_tensor(eng, s);
  if (c.format == "json") {
    nlohmann::json j = {{"pair", c.pair}, {"rank", c.rank}, {"b", b.str()}, {"canonical", res.canonical.to_json()}, {"dual", res.dual.to_json()}};
    emit(c, j.dump(2) + "\n");
  } else if (c.format == "csv") {
    std::string d = csv_table(res.dual);
    emit(c, csv_table(res.canonical) + d.substr(d.find('\n') + 1));
  } else {
    emit(c, res.canonical.to_latex() + "\n" + res.dual.to_latex());
  }
  for (auto& r : {check_bar_involutive(res.bar), check_kl_table(res.canonical, res.bar), check_kl_table(res.dual, res.bar)})
    if (!r.ok) {
      std::cerr << "verification failed: " << r.detail << "\n";
      return exit_verify;
    }
  return exit_ok;
}

int cmd_ikl(const RunConfig& c) {
  Parity p = pair_of(c);
  ZeroOneSeq b = seq_of(c.b);
  SuperWeight la;
  Idx f;
  try {
    la = SuperWeight::parse(c.lambda);
    f = lambda_to_f(la, b, p);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("--lambda: ") + e.what());
  }
  int start = c.start_rank >= 0 ? c.start_rank : min_rank(f, p);
  if (start < min_rank(f, p)) throw UsageError("--start-rank: f = " + idx_label(f) + " needs rank at least " + std::to_string(min_rank(f, p)));
  if (c.max_rank < start) throw UsageError("--max-rank is below the start rank");
  IklReport rep = ikl_stabilized(b, la, p, start, c.max_rank);
  if (c.format == "json") emit(c, rep.to_json().dump(2) + "\n");
  else if (c.format == "csv") emit(c, csv_table(rep.result.canonical));
  else emit(c, rep.result.canonical.to_latex());
  CheckReport kl = check_kl_table(rep.result.canonical, rep.result.bar);
  if (!kl.ok) {
    std::cerr << "verification failed: " << kl.detail << "\n";
    return exit_verify;
  }
  if (rep.status == StabilizationStatus::inconclusive) {
    std::cerr << "inconclusive: no two consecutive ranks up to " << c.max_rank << " agree\n";
    return exit_inconclusive;
  }
  return exit_ok;
}

int cmd_rank1(const RunConfig& c) {
  if (c.parity != "odd" && c.parity != "ev") throw UsageError("--parity must be odd or ev");
  if (c.degree < 0) throw UsageError("--degree must be nonnegative");
  DividedPower d = rank1_divided_power(c.degree, c.parity == "odd");
  if (c.format == "json") {
    emit(c, d.to_json().dump(2) + "\n");
  } else if (c.format == "csv") {
    std::ostringstream os;
    os << "parity,degree,power,coefficient\n";
    for (size_t k = 0; k < d.poly.size(); ++k)
      if (!d.poly[k].is_zero()) os << c.parity << "," << c.degree << "," << k << ",\"" << d.poly[k].str() << "\"\n";
    emit(c, os.str());
  } else {
    emit(c, "$T^{\\mathrm{" + c.parity + "}}_{" + std::to_string(c.degree) + "} = " + tpoly_str(d.poly) + "$\n");
  }
  if (!d.leading_ok) {
    std::cerr << "verification failed: leading term is not t^a/[a]!\n";
    return exit_verify;
  }
  if (!d.conjecture_agrees) std::cerr << "note: the conjectured product formula disagrees\n";
  return exit_ok;
}

int workers_from_env() {
  if (const char* w = std::getenv("QSP_WORKERS")) {
    try {
      int n = std::stoi(w);
      if (n >= 1) return n;
    } catch (const std::exception&) {
    }
    throw UsageError("QSP_WORKERS must be a positive integer");
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

int cmd_selftest(const RunConfig& c) {
  Depth d;
  try {
    d = depth_from_name(c.depth);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  auto results = run_items(selftest_items(d), workers_from_env());
  emit(c, render_matrix(results));
  for (auto& r : results)
    if (!r.report.ok) return exit_verify;
  return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum symmetric pairs: intertwiners, iota-canonical bases, type-B KL polynomials"};
  app.require_subcommand(1);
  RunConfig c;
  auto add_output = [&](CLI::App* s) {
    s->add_option("--format", c.format, "json, csv or latex")->check(CLI::IsMember({"json", "csv", "latex"}));
    s->add_option("--output,-o", c.output, "output file (default stdout)");
  };
  auto add_pair = [&](CLI::App* s) {
    s->add_option("--pair", c.pair, "iota or jota")->check(CLI::IsMember({"iota", "jota"}));
    s->add_option("--rank", c.rank, "rank r");
  };

  auto* up = app.add_subcommand("upsilon", "components of the intertwiner Upsilon up to a height cutoff");
  add_pair(up);
  up->add_option("--cutoff", c.cutoff, "height cutoff (default 8 at rank <= 2, else 6)");
  add_output(up);

  auto* ic = app.add_subcommand("icanonical", "iota-canonical and dual bases of a tensor space");
  add_pair(ic);
  ic->add_option("--b", c.b, "0/1 sequence, 0 = V, 1 = W")->required();
  add_output(ic);

  auto* ik = app.add_subcommand("ikl", "stabilized iota-KL polynomials for a weight of gl(m|n)");
  ik->add_option("--pair", c.pair, "iota or jota")->check(CLI::IsMember({"iota", "jota"}));
  ik->add_option("--b", c.b, "0/1 sequence")->required();
  ik->add_option("--lambda", c.lambda, "weight 'even|odd', e.g. --lambda=-1|-1")->required();
  ik->add_option("--start-rank", c.start_rank, "first rank (default: smallest admissible)");
  ik->add_option("--max-rank", c.max_rank, "last rank tried before reporting inconclusive");
  add_output(ik);

  auto* r1 = app.add_subcommand("rank1", "rank-one divided powers as polynomials in t");
  r1->add_option("--parity", c.parity, "odd or ev")->check(CLI::IsMember({"odd", "ev"}));
  r1->add_option("--degree", c.degree, "degree a")->required();
  add_output(r1);

  auto* st = app.add_subcommand("selftest", "run every invariant check and print a pass/fail matrix");
  st->add_option("--depth", c.depth, "quick or full")->check(CLI::IsMember({"quick", "full"}));
  st->add_option("--output,-o", c.output, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? exit_ok : exit_usage;
  }

  try {
    if (up->parsed()) return cmd_upsilon(c);
    if (ic->parsed()) return cmd_icanonical(c);
    if (ik->parsed()) return cmd_ikl(c);
    if (r1->parsed()) return cmd_rank1(c);
    return cmd_selftest(c);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return exit_usage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return exit_usage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_verify;
  }
}
