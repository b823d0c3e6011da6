// knomial: command-line front end.
//
// Exit codes: 0 success, 1 verification or convergence failure, 2 usage or
// input error.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "CLI11.hpp"
#include "knomial/knomial.hpp"

using namespace knomial;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

/// Usage or input problem detected after parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void write_atomic(const std::string& path, const std::string& text) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw UsageError("cannot write " + tmp.string());
    out << text;
    out.flush();
    if (!out) throw UsageError("write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw UsageError("cannot rename onto " + path + ": " + ec.message());
  }
}

/// Writes to path, or to stdout when path is empty.
void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
  } else {
    write_atomic(path, text);
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Dim checked_dim(long long N) {
  if (N < 1) throw UsageError("--dim must be >= 1");
  return make_dim(N);
}

// ------------------------------------------------------------------ gen --

struct GenOpts {
  std::string kind;
  long long dim = 0;
  std::vector<long long> p;
  std::vector<long long> f;
  std::string basis = "standard";
  std::string format = "json";
  std::string output;
};

int run_gen(const GenOpts& o) {
  const Dim d = checked_dim(o.dim);
  CMat m;
  std::optional<AntiU> anti;
  if (o.kind == "X") {
    m = build_X(d.N);
  } else if (o.kind == "Z") {
    m = build_Z(d.N);
  } else if (o.kind == "T") {
    m = change_of_basis(d);
  } else if (o.kind == "D") {
    if (o.p.size() != 2) throw UsageError("--kind D needs --p p1,p2");
    m = displacement(d, make_pvec(o.p[0], o.p[1], d.Nbar));
  } else if (o.kind == "UF") {
    if (o.f.size() != 4) throw UsageError("--kind UF needs --f alpha,beta,gamma,delta");
    SL2 f = SL2::identity(d.Nbar);
    try {
      f = SL2(o.f[0], o.f[1], o.f[2], o.f[3], d.Nbar);
    } catch (const InvalidArgument& e) {
      throw UsageError(e.what());
    }
    if (f.symplectic()) {
      m = symplectic_unitary(d, f);
    } else {
      anti = antisymplectic_antiunitary(d, f);
      m = {anti->mat, Basis::standard};
    }
  } else {
    throw UsageError("unknown --kind " + o.kind);
  }
  if (o.basis == "knomial") {
    if (anti) throw UsageError("anti-unitaries are emitted in the standard basis only");
    if (o.kind != "T") m = to_knomial(m, d);
  }
  if (o.format == "csv") {
    emit(o.output, to_csv(m.mat));
  } else {
    emit(o.output, (anti ? to_json(*anti) : to_json(m)).dump() + "\n");
  }
  return kExitOk;
}

// ------------------------------------------------- verify-imprimitivity --

struct ImprimOpts {
  long long dim = 0;
  int samples = 50;
  std::uint64_t seed = 0;
};

int run_verify_imprimitivity(const ImprimOpts& o, double tol) {
  const Dim d = checked_dim(o.dim);
  if (o.samples < 1) throw UsageError("--samples must be >= 1");
  std::mt19937_64 rng(o.seed);
  int failed = 0;
  std::printf("N=%lld k=%lld n=%lld Nbar=%lld samples=%d tolerance=%.3g\n", d.N, d.k, d.n, d.Nbar, o.samples, tol);
  for (int i = 0; i < o.samples; ++i) {
    const SL2 f = random_symplectic(d.Nbar, rng);
    std::string status;
    try {
      const BlockMap bm = block_structure(to_knomial(symplectic_unitary(d, f), d), d, tol);
      const auto expect = eigenspace_permutation(f, d);
      if (bm.perm != expect) {
        status = "FAIL permutation differs from eigenspace map";
      } else {
        char buf[64];
        std::snprintf(buf, sizeof buf, "ok off-block %.2e", bm.off_block_max);
        status = buf;
      }
    } catch (const NotKNomial& e) {
      status = std::string("FAIL ") + e.what() + " (block row " + std::to_string(e.row) + ", block col " +
               std::to_string(e.col) + ")";
    }
    if (status.rfind("FAIL", 0) == 0) ++failed;
    std::printf("sample %d F=%s %s\n", i, f.str().c_str(), status.c_str());
  }
  std::printf("%d of %d samples passed\n", o.samples - failed, o.samples);
  return failed ? kExitFail : kExitOk;
}

// ----------------------------------------------------------- sic-verify --

int run_sic_verify(const std::string& input, double tol) {
  const json j = parse_json(read_file(input));
  if (j.is_object() && j.contains("meta") && j["meta"].value("basis", "") == "dim12-adapted") {
    throw UsageError("vector refers to the dimension-12 adapted basis; use dim12-eval");
  }
  CVec psi = fiducial_psi_from_json(j);
  if (psi.basis == Basis::knomial) psi = to_standard(psi, make_dim(psi.dim()));
  const FidCand f = sic_defect(psi);
  const long long N = f.dim();
  const double target = 1.0 / static_cast<double>(N + 1);
  double lo = 1.0, hi = 0.0;
  long long within = 0;
  for (std::size_t i = 1; i < f.overlaps.size(); ++i) {
    lo = std::min(lo, f.overlaps[i]);
    hi = std::max(hi, f.overlaps[i]);
    within += std::abs(f.overlaps[i] - target) < tol;
  }
  std::printf("dim %lld\ndefect %.6e\nworst_p %lld,%lld\n", N, f.defect, f.worst_p.p1, f.worst_p.p2);
  std::printf("overlaps min %.17g max %.17g target %.17g\n", lo, hi, target);
  std::printf("overlaps within tolerance %lld of %lld\n", within, N * N - 1);
  const bool ok = f.defect < tol;
  std::printf("%s\n", ok ? "SIC fiducial" : "not a SIC fiducial");
  return ok ? kExitOk : kExitFail;
}

// ----------------------------------------------------------- sic-search --

struct SearchOpts {
  long long dim = 0;
  int restarts = 10;
  int max_iters = 5000;
  int threads = 1;
  std::uint64_t seed = 0;
  bool zauner = false;
  std::string output;
  std::string log;
};

std::string log_lines(const std::vector<SearchLogRecord>& log) {
  std::string out;
  for (const auto& r : log) {
    out += json{{"restart", r.restart}, {"iter", r.iter}, {"objective", r.objective}}.dump();
    out += '\n';
  }
  return out;
}

int run_sic_search(const SearchOpts& o, double tol) {
  const Dim d = checked_dim(o.dim);
  SearchCfg cfg;
  cfg.restarts = o.restarts;
  cfg.max_iters = o.max_iters;
  cfg.threads = o.threads;
  cfg.rng_seed = o.seed;
  cfg.tol = tol;
  std::vector<SearchLogRecord> log;
  FidCand best;
  int code = kExitOk;
  try {
    best = o.zauner ? search_fiducial_zauner(d, cfg, &log) : search_fiducial(d, cfg, &log);
  } catch (const NoConvergence& e) {
    best = e.best();
    code = kExitFail;
  } catch (const InvalidArgument& e) {
    throw UsageError(e.what());
  }
  emit(o.output, to_json(best).dump() + "\n");
  if (!o.log.empty()) write_atomic(o.log, log_lines(log));
  std::fprintf(stderr, "defect %.6e (%s)\n", best.defect, code == kExitOk ? "converged" : "no convergence");
  return code;
}

// ----------------------------------------------------------------- dim8 --

struct Dim8Opts {
  std::string orbit = "S1";
  std::vector<int> s;
  int r = -1;
  std::string output;
};

int run_dim8(const Dim8Opts& o) {
  Dim8Selector sel;
  try {
    if (o.orbit == "S1" || o.orbit == "S2") {
      if (o.r >= 0) throw UsageError("--r applies to S0 only");
      const std::vector<int> s = o.s.empty() ? std::vector<int>{1, 1, 1} : o.s;
      if (s.size() != 3) throw UsageError("--s needs three signs");
      sel = Dim8Selector::s1_branch(s[0], s[1], s[2]);
    } else if (o.orbit == "S0") {
      if (!o.s.empty()) throw UsageError("--s applies to S1 and S2 only");
      sel = Dim8Selector::s0_branch(o.r < 0 ? 0 : o.r);
    } else {
      throw UsageError("--orbit must be S0, S1 or S2");
    }
  } catch (const InvalidArgument& e) {
    throw UsageError(e.what());
  }
  const FidCand f = o.orbit == "S2" ? dim8_orbit_S2(sel) : dim8_fiducial(sel);
  emit(o.output, to_json(f).dump() + "\n");
  return kExitOk;
}

// ----------------------------------------------------------- dim12-eval --

int run_dim12(int root, const std::string& output, double tol) {
  if (root < -1 || root > 2) throw UsageError("--root must be 0, 1 or 2");
  std::optional<FidCand> best;
  for (int r = 0; r < 3; ++r) {
    if (root >= 0 && r != root) continue;
    FidCand f = dim12_fiducial_numeric(r);
    std::printf("root %d t1 %s defect %.6e\n", r, f.meta["t1"].c_str(), f.defect);
    if (!best || f.defect < best->defect) best = std::move(f);
  }
  if (!output.empty()) write_atomic(output, to_json(*best).dump() + "\n");
  return best->defect < tol ? kExitOk : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"k-nomial Clifford representations and SIC fiducials"};
  app.require_subcommand(1);
  double tol = 1e-10;
  app.add_option("--tolerance", tol, "Numerical tolerance (env KNOM_TOL)")
      ->envname("KNOM_TOL")
      ->check(CLI::PositiveNumber);

  GenOpts gen;
  auto* g = app.add_subcommand("gen", "Write an operator as CMat JSON or CSV");
  g->add_option("--kind", gen.kind, "X, Z, D, UF or T")->required()->check(CLI::IsMember({"X", "Z", "D", "UF", "T"}));
  g->add_option("--dim", gen.dim, "Dimension N")->required();
  g->add_option("--p", gen.p, "Displacement p1,p2")->delimiter(',');
  g->add_option("--f", gen.f, "Matrix entries alpha,beta,gamma,delta")->delimiter(',');
  g->add_option("--basis", gen.basis, "Output basis")->check(CLI::IsMember({"standard", "knomial"}));
  g->add_option("--format", gen.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  g->add_option("-o,--output", gen.output, "Output file (stdout if omitted)");

  ImprimOpts imp;
  auto* vi = app.add_subcommand("verify-imprimitivity", "Check k-nomial block structure of random U_F");
  vi->add_option("--dim", imp.dim, "Dimension N")->required();
  vi->add_option("--samples", imp.samples, "Number of random symplectic matrices");
  vi->add_option("--seed", imp.seed, "RNG seed");

  std::string verify_input;
  auto* sv = app.add_subcommand("sic-verify", "Compute the SIC defect of a vector");
  sv->add_option("input,--input", verify_input, "CVec or FidCand JSON file")->required();

  SearchOpts search;
  auto* ss = app.add_subcommand("sic-search", "Numerical fiducial search");
  ss->add_option("--dim", search.dim, "Dimension N")->required();
  ss->add_option("--restarts", search.restarts, "Random restarts");
  ss->add_option("--max-iters", search.max_iters, "Iterations per restart");
  ss->add_option("--threads", search.threads, "Worker threads");
  ss->add_option("--seed", search.seed, "RNG seed");
  ss->add_flag("--zauner", search.zauner, "Restrict to Zauner eigenspaces");
  ss->add_option("-o,--output", search.output, "FidCand output file (stdout if omitted)");
  ss->add_option("--log", search.log, "Line-delimited JSON search log");

  Dim8Opts d8;
  auto* c8 = app.add_subcommand("dim8", "Closed-form dimension-8 fiducial");
  c8->add_option("--orbit", d8.orbit, "S1, S2 or S0");
  c8->add_option("--s", d8.s, "Signs s1,s2,s3")->delimiter(',');
  c8->add_option("--r", d8.r, "S0 index r in 0..3");
  c8->add_option("-o,--output", d8.output, "Output file (stdout if omitted)");

  int root = -1;
  std::string d12_out;
  auto* c12 = app.add_subcommand("dim12-eval", "Evaluate the dimension-12 fiducial for each cubic root");
  c12->add_option("--root", root, "Only this root (0, 1, 2)");
  c12->add_option("-o,--output", d12_out, "Write the best candidate as FidCand JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*g) return run_gen(gen);
    if (*vi) return run_verify_imprimitivity(imp, tol);
    if (*sv) return run_sic_verify(verify_input, tol);
    if (*ss) return run_sic_search(search, tol);
    if (*c8) return run_dim8(d8);
    if (*c12) return run_dim12(root, d12_out, tol);
  } catch (const UsageError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const ParseError& e) {
    std::fprintf(stderr, "error: malformed input: %s\n", e.what());
    return kExitUsage;
  } catch (const NotNormalized& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const knomial::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  }
  return kExitUsage;
}
