#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "braidgen/certify.hpp"
#include "braidgen/garside.hpp"
#include "braidgen/genset.hpp"
#include "braidgen/lk.hpp"
#include "braidgen/suite.hpp"
#include "braidgen/word.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using namespace braidgen;

constexpr int kExitOk = 0;
constexpr int kExitDisproved = 1;
constexpr int kExitUsage = 2;

bool log_enabled() {
  const char* env = std::getenv("BRAIDGEN_LOG");
  return env != nullptr && *env != '\0';
}

void log_line(const std::string& msg) {
  if (log_enabled()) std::cerr << "[braidgen] " << msg << "\n";
}

// Word arguments accept "@path" to read the text from a file.
std::string resolve_word_arg(const std::string& arg) {
  if (arg.empty() || arg[0] != '@') return arg;
  std::ifstream in(arg.substr(1));
  if (!in) throw ParseError("cannot read word file '" + arg.substr(1) + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct CommonFlags {
  bool json = false;
  int jobs = 0;
  unsigned long long max_flat_len = 1000000;
  std::size_t lk_bound = 64;
  std::uint64_t seed = 12345;
};

int cmd_nf(int n, const std::string& word_arg, const CommonFlags& flags) {
  const BraidWord w = parse_word(n, resolve_word_arg(word_arg));
  const auto t0 = std::chrono::steady_clock::now();
  const NormalForm nf = normal_form(w);
  log_line("nf: " + std::to_string(w.size()) + " letters in " +
           std::to_string(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()) + " s");
  if (flags.json) {
    nlohmann::json j;
    j["n"] = n;
    j["delta_power"] = nf.delta_power;
    j["canonical_length"] = nf.canonical_length();
    j["nf"] = nf.to_string();
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << nf.to_string() << "\n";
  }
  return kExitOk;
}

int cmd_eq(int n, const std::string& w1_arg, const std::string& w2_arg, const CommonFlags& flags) {
  const BraidWord w1 = parse_word(n, resolve_word_arg(w1_arg));
  const BraidWord w2 = parse_word(n, resolve_word_arg(w2_arg));
  const bool eq = equal(w1, w2);
  if (flags.json) {
    nlohmann::json j;
    j["equal"] = eq;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << (eq ? "equal" : "not equal") << "\n";
  }
  return eq ? kExitOk : kExitDisproved;
}

int cmd_rewrite(int n, int k, int target, const std::string& word_arg, std::string out_path,
                const CommonFlags& flags) {
  std::string why;
  if (!RewriteParams::valid(n, k, &why)) {
    std::cerr << "error: invalid (n, k): " << why << "\n";
    return kExitUsage;
  }
  const RewriteParams params = RewriteParams::make(n, k);

  Certificate cert;
  TwoGenSLP slp;
  const auto t0 = std::chrono::steady_clock::now();
  if (target > 0) {
    slp = theorem1_factor(params, target);
    cert = build_certificate(params, target);
    if (out_path.empty())
      out_path = "cert_n" + std::to_string(n) + "_k" + std::to_string(k) + "_i" + std::to_string(target) + ".json";
  } else {
    const BraidWord w = parse_word(n, resolve_word_arg(word_arg));
    const RewritePipeline pipe = rewrite_full_pipeline(params, w);
    slp = pipe.slp;
    cert = build_rewrite_certificate(params, w, pipe);
    if (out_path.empty()) out_path = "cert_n" + std::to_string(n) + "_k" + std::to_string(k) + "_word.json";
  }

  log_line("rewrite: built " + std::to_string(cert.claims.size()) + " claims in " +
           std::to_string(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()) +
           " s");
  std::ofstream out(out_path);
  if (!out) {
    std::cerr << "error: cannot write '" << out_path << "'\n";
    return kExitUsage;
  }
  out << emit_json(cert) << "\n";

  const unsigned long long flat_len = slp_flat_length(slp);
  if (flags.json) {
    nlohmann::json j;
    j["slp"] = nlohmann::json::array();
    std::istringstream lines(slp.to_text());
    std::string line;
    while (std::getline(lines, line))
      if (!line.empty()) j["slp"].push_back(line);
    j["flat_length"] = flat_len;
    j["certificate"] = out_path;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << slp.to_text();
    std::cout << "flat length: " << flat_len;
    if (flat_len > flags.max_flat_len) std::cout << " (beyond --max-flat-len; verify via the certificate)";
    std::cout << "\ncertificate: " << out_path << "\n";
  }
  return kExitOk;
}

int cmd_certify(const std::string& path, const CommonFlags& flags) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "error: cannot read '" << path << "'\n";
    return kExitUsage;
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  const Certificate cert = parse_json(ss.str());
  const VerificationReport rep = verify_certificate(cert, flags.jobs);
  log_line("certify: " + std::to_string(cert.claims.size()) + " claims in " +
           std::to_string(rep.total_ms) + " ms");
  if (flags.json) {
    nlohmann::json j;
    j["pass"] = rep.pass;
    j["structural_error"] = rep.structural_error;
    j["total_ms"] = rep.total_ms;
    j["claims"] = nlohmann::json::array();
    for (const auto& c : rep.claims) {
      nlohmann::json jc;
      jc["pass"] = c.pass;
      jc["reason"] = c.reason;
      jc["ms"] = c.ms;
      jc["lhs_len"] = c.lhs_len;
      jc["rhs_len"] = c.rhs_len;
      j["claims"].push_back(std::move(jc));
    }
    std::cout << j.dump(2) << "\n";
  } else {
    for (std::size_t i = 0; i < rep.claims.size(); ++i) {
      const auto& c = rep.claims[i];
      std::cout << "claim " << i << " [" << rule_name(cert.claims[i].rule) << "] "
                << (c.pass ? "pass" : "FAIL") << " (" << c.lhs_len << "/" << c.rhs_len << " letters, "
                << c.ms << " ms)";
      if (!c.pass) std::cout << " - " << c.reason;
      std::cout << "\n";
    }
    if (!rep.structural_error.empty()) std::cout << "structural: " << rep.structural_error << "\n";
    std::cout << (rep.pass ? "VERIFIED" : "FAILED") << " in " << rep.total_ms << " ms\n";
  }
  return rep.pass ? kExitOk : kExitDisproved;
}

int cmd_suite(int n, bool all_small, const CommonFlags& flags) {
  SuiteOptions opts;
  if (all_small)
    opts.strand_counts = {4, 5, 6, 7};
  else
    opts.strand_counts = {n};
  opts.seed = flags.seed;
  opts.jobs = flags.jobs;
  opts.lk_bound = flags.lk_bound;
  const auto results = run_suite(opts);
  if (flags.json) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& r : results) {
      nlohmann::json jc;
      jc["name"] = r.name;
      jc["pass"] = r.pass;
      jc["detail"] = r.detail;
      jc["ms"] = r.ms;
      j.push_back(std::move(jc));
    }
    std::cout << j.dump(2) << "\n";
  } else {
    for (const auto& r : results) {
      std::cout << (r.pass ? "pass" : "FAIL") << "  " << r.name;
      if (!r.pass && !r.detail.empty()) std::cout << " - " << r.detail;
      std::cout << "\n";
    }
    std::cout << (suite_all_pass(results) ? "all checks passed" : "SUITE FAILED") << "\n";
  }
  return suite_all_pass(results) ? kExitOk : kExitDisproved;
}

int cmd_bench(int n, const std::string& lengths_csv, const CommonFlags& flags) {
  std::vector<std::size_t> lengths;
  std::istringstream is(lengths_csv);
  std::string tok;
  while (std::getline(is, tok, ',')) {
    if (tok.empty()) continue;
    lengths.push_back(static_cast<std::size_t>(std::stoull(tok)));
  }
  if (lengths.empty()) {
    std::cerr << "error: --lengths must list at least one word length\n";
    return kExitUsage;
  }
  std::mt19937_64 rng(flags.seed);
  std::uniform_int_distribution<int> idx(1, n - 1);
  nlohmann::json jout = nlohmann::json::array();
  if (!flags.json)
    std::cout << "length      naive[s]     serial[s]   parallel[s]  canonical\n";
  for (std::size_t len : lengths) {
    BraidWord w{n, {}};
    w.letters.reserve(len);
    for (std::size_t i = 0; i < len; ++i) {
      const int g = idx(rng);
      w.letters.push_back((rng() & 1) ? g : -g);
    }
    auto time_engine = [&](Engine e) {
      const auto t0 = std::chrono::steady_clock::now();
      const NormalForm nf = normal_form(w, e);
      const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      return std::pair<double, NormalForm>(s, nf);
    };
    const auto [ts, nfs] = time_engine(Engine::Serial);
    const auto [tp, nfp] = time_engine(Engine::Parallel);
    double tn = -1.0;
    if (len <= 20000) {
      const auto [t, nfn] = time_engine(Engine::Naive);
      tn = t;
      if (!(nfn == nfs)) {
        std::cerr << "engine mismatch at length " << len << "\n";
        return kExitDisproved;
      }
    }
    if (!(nfs == nfp)) {
      std::cerr << "engine mismatch at length " << len << "\n";
      return kExitDisproved;
    }
    if (flags.json) {
      nlohmann::json j;
      j["length"] = len;
      j["naive_s"] = tn;
      j["serial_s"] = ts;
      j["parallel_s"] = tp;
      j["canonical_length"] = nfs.canonical_length();
      jout.push_back(std::move(j));
    } else {
      std::ostringstream line;
      line.width(8);
      line << len;
      auto cell = [&](double v) {
        line << "  ";
        line.width(11);
        if (v < 0)
          line << "-";
        else
          line << v;
      };
      cell(tn);
      cell(ts);
      cell(tp);
      line << "  ";
      line << nfs.canonical_length();
      std::cout << line.str() << "\n";
    }
  }
  if (flags.json) std::cout << jout.dump(2) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"braidgen: exact braid-group computations, generating-set rewriting, certificates"};
  app.require_subcommand(1);

  CommonFlags flags;
  int n = 0, k = 0, target = 0;
  std::string word1, word2, in_path, out_path, lengths = "1000,10000,100000";
  bool all_small = false;

  auto add_common = [&flags](CLI::App* cmd) {
    cmd->add_flag("--json", flags.json, "machine-readable output");
    cmd->add_option("--jobs", flags.jobs, "parallel workers (0 = default)");
    cmd->add_option("--seed", flags.seed, "seed for randomized cases");
    cmd->add_option("--max-flat-len", flags.max_flat_len, "flat SLP expansion bound");
    cmd->add_option("--lk-bound", flags.lk_bound, "Lawrence-Krammer word-length bound");
  };

  CLI::App* nf = app.add_subcommand("nf", "print the Garside left normal form");
  nf->add_option("--n", n, "strand count")->required();
  nf->add_option("word", word1, "braid word (or @file)")->required();
  add_common(nf);

  CLI::App* eq = app.add_subcommand("eq", "decide equality of two words");
  eq->add_option("--n", n, "strand count")->required();
  eq->add_option("word1", word1)->required();
  eq->add_option("word2", word2)->required();
  add_common(eq);

  CLI::App* rewrite = app.add_subcommand("rewrite", "factor over the two-element generating set");
  rewrite->add_option("--n", n, "strand count")->required();
  rewrite->add_option("--k", k, "step, coprime to n, 2 <= k <= n-2")->required();
  rewrite->add_option("--target", target, "factor sigma_1 sigma_i^{-1} (i in 2..n-1)");
  rewrite->add_option("--word", word1, "factor an arbitrary zero-exponent-sum word (or @file)");
  rewrite->add_option("--out", out_path, "certificate output path");
  add_common(rewrite);

  CLI::App* rewrite_any = app.add_subcommand("rewrite-any", "factor an arbitrary zero-sum word");
  rewrite_any->add_option("--n", n, "strand count")->required();
  rewrite_any->add_option("--k", k, "step, coprime to n, 2 <= k <= n-2")->required();
  rewrite_any->add_option("--word", word1, "zero-exponent-sum word (or @file)")->required();
  rewrite_any->add_option("--out", out_path, "certificate output path");
  add_common(rewrite_any);

  CLI::App* certify = app.add_subcommand("certify", "verify a certificate file");
  certify->add_option("--in", in_path, "certificate JSON path")->required();
  add_common(certify);

  CLI::App* suite = app.add_subcommand("suite", "run the identity battery");
  suite->add_option("--n", n, "strand count");
  suite->add_flag("--all-small", all_small, "run for n = 4..7");
  add_common(suite);

  CLI::App* bench = app.add_subcommand("bench", "normal-form engine timing table");
  bench->add_option("--n", n, "strand count")->default_val(7);
  bench->add_option("--lengths", lengths, "comma-separated word lengths");
  add_common(bench);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (nf->parsed()) return cmd_nf(n, word1, flags);
    if (eq->parsed()) return cmd_eq(n, word1, word2, flags);
    if (rewrite->parsed()) {
      if ((target > 0) == !word1.empty()) {
        std::cerr << "error: pass exactly one of --target or --word\n";
        return kExitUsage;
      }
      return cmd_rewrite(n, k, target, word1, out_path, flags);
    }
    if (rewrite_any->parsed()) return cmd_rewrite(n, k, 0, word1, out_path, flags);
    if (certify->parsed()) return cmd_certify(in_path, flags);
    if (suite->parsed()) {
      if (!all_small && n < 2) {
        std::cerr << "error: pass --n or --all-small\n";
        return kExitUsage;
      }
      return cmd_suite(n, all_small, flags);
    }
    if (bench->parsed()) return cmd_bench(n, lengths, flags);
  } catch (const BraidError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
