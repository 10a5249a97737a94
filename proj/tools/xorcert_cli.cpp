// Command-line front end over the C API.

#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "xorcert/xorcert.h"

namespace {

constexpr int kExitRefuted = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitInputError = 2;
constexpr int kExitInternal = 3;
constexpr int kExitUnknown = 10;

const char* kCsvHeader = "family,n,k_or_ell,m,eps,seed,outcome,bound,m_light,m_heavy,wall_ms";

bool g_quiet = false;

void log(const std::string& msg) {
  if (!g_quiet) std::cerr << "xorcert: " << msg << '\n';
}

struct CliError {
  int code;
  std::string message;
};

void check(xc_status s, const std::string& context) {
  if (s == XC_OK) return;
  const int code = s == XC_ERR_INTERNAL ? kExitInternal : kExitInputError;
  throw CliError{code, context + ": " + xc_status_string(s) + ": " + xc_last_error()};
}

template <typename T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using Instance = std::unique_ptr<xc_instance, Deleter<xc_instance, xc_instance_free>>;
using Certificate = std::unique_ptr<xc_certificate, Deleter<xc_certificate, xc_certificate_free>>;
using Config = std::unique_ptr<xc_config, Deleter<xc_config, xc_config_free>>;

std::string take_string(char* s) {
  std::string out = s ? s : "";
  xc_string_free(s);
  return out;
}

Instance load_instance(const std::string& path) {
  xc_instance* p = nullptr;
  check(xc_instance_load(path.c_str(), &p), "loading " + path);
  return Instance(p);
}

struct ConfigArgs {
  std::string file;
  std::vector<std::string> overrides;  // key=value
};

void add_config_options(CLI::App* cmd, ConfigArgs& args) {
  cmd->add_option("--config", args.file, "JSON config file")->check(CLI::ExistingFile);
  cmd->add_option("--set", args.overrides, "Override one config key, key=value (repeatable)");
}

Config make_config(const ConfigArgs& args) {
  xc_config* p = nullptr;
  if (args.file.empty()) {
    check(xc_config_new(&p), "creating config");
  } else {
    check(xc_config_load(args.file.c_str(), &p), "loading " + args.file);
  }
  Config cfg(p);
  for (const std::string& kv : args.overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw CliError{kExitInputError, "--set expects key=value: " + kv};
    check(xc_config_set(cfg.get(), kv.substr(0, eq).c_str(), kv.substr(eq + 1).c_str()),
          "--set " + kv);
  }
  return cfg;
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw CliError{kExitInputError, "cannot write " + path};
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
}

// ---- generate ----

struct GenerateArgs {
  std::string kind = "random";
  std::string target = "kxor";
  std::size_t n = 0;
  std::size_t k = 3;
  std::size_t ell = 0;
  std::size_t m = 0;
  std::uint64_t seed = 0;
  std::uint64_t graph_seed = 0;
  std::size_t group_size = 8;
  std::size_t groups = 1;
  std::size_t cluster_size = 0;
  std::string out;
};

xc_gen_spec to_spec(const GenerateArgs& a) {
  xc_gen_spec s;
  xc_gen_spec_init(&s);
  s.family = a.kind.c_str();
  s.partitioned = a.target == "p2xor" ? 1 : 0;
  s.n = a.n;
  s.k_or_ell = s.partitioned ? a.ell : a.k;
  s.m = a.m;
  s.seed = a.seed;
  s.graph_seed = a.graph_seed;
  s.group_size = a.group_size;
  s.groups = a.groups;
  s.cluster_size = a.cluster_size;
  return s;
}

int run_generate(const GenerateArgs& a) {
  const xc_gen_spec spec = to_spec(a);
  xc_instance* p = nullptr;
  check(xc_generate(&spec, &p), "generate");
  Instance inst(p);
  if (a.out.empty()) {
    char* text = nullptr;
    check(xc_instance_to_json(inst.get(), &text), "serializing instance");
    write_output("", take_string(text));
  } else {
    check(xc_instance_save(inst.get(), a.out.c_str()), "writing " + a.out);
    log("wrote " + a.out);
  }
  return 0;
}

// ---- reduce / decompose ----

int run_reduce(const std::string& in, const std::string& out) {
  Instance inst = load_instance(in);
  xc_instance* p = nullptr;
  check(xc_reduce(inst.get(), &p), "reduce");
  Instance reduced(p);
  xc_instance_info info;
  check(xc_instance_info_get(reduced.get(), &info), "reduce");
  if (out.empty()) {
    char* text = nullptr;
    check(xc_instance_to_json(reduced.get(), &text), "serializing instance");
    write_output("", take_string(text));
  } else {
    check(xc_instance_save(reduced.get(), out.c_str()), "writing " + out);
  }
  log("reduced instance: n=" + std::to_string(info.n) + " ell=" + std::to_string(info.k_or_ell) +
      " m=" + std::to_string(info.m));
  return 0;
}

int run_decompose(const std::string& in, double eps, const ConfigArgs& cargs,
                  const std::string& out) {
  Instance inst = load_instance(in);
  Config cfg = make_config(cargs);
  char* text = nullptr;
  check(xc_decompose_json(inst.get(), eps, cfg.get(), &text), "decompose");
  write_output(out, take_string(text));
  return 0;
}

// ---- refute / verify ----

std::string format_summary(const xc_cert_summary& s) {
  std::ostringstream ss;
  ss << (s.outcome == XC_REFUTED ? "REFUTED" : "UNKNOWN") << " val <= " << s.certified_val_upper
     << " (eps " << s.eps << ", m " << s.m << ", light " << s.m_light << ", heavy " << s.m_heavy
     << ", d_cap " << s.d_cap << ", " << s.combination << ")";
  return ss.str();
}

int run_refute(const std::string& in, double eps, std::uint64_t seed, const ConfigArgs& cargs,
               const std::string& out) {
  Instance inst = load_instance(in);
  Config cfg = make_config(cargs);
  xc_certificate* p = nullptr;
  check(xc_refute(inst.get(), eps, cfg.get(), seed, &p), "refute");
  Certificate cert(p);
  xc_cert_summary s;
  check(xc_certificate_summary(cert.get(), &s), "refute");
  if (out.empty()) {
    char* text = nullptr;
    check(xc_certificate_to_json(cert.get(), &text), "serializing certificate");
    write_output("", take_string(text));
  } else {
    check(xc_certificate_save(cert.get(), out.c_str()), "writing " + out);
    if (!g_quiet) std::cout << format_summary(s) << '\n';
  }
  return s.outcome == XC_REFUTED ? kExitRefuted : kExitUnknown;
}

int run_verify(const std::string& inst_path, const std::string& cert_path, bool brute) {
  Instance inst = load_instance(inst_path);
  xc_certificate* p = nullptr;
  check(xc_certificate_load(cert_path.c_str(), &p), "loading " + cert_path);
  Certificate cert(p);
  int ok = 0;
  char* failures = nullptr;
  check(xc_verify(inst.get(), cert.get(), brute ? 1 : 0, &ok, &failures), "verify");
  const std::string text = take_string(failures);
  if (ok) {
    if (!g_quiet) std::cout << "certificate verified\n";
    return 0;
  }
  std::cerr << "certificate rejected:\n" << text;
  return kExitVerifyFailed;
}

// ---- experiment ----

struct ExperimentArgs {
  std::vector<std::string> families = {"random"};
  std::string target = "kxor";
  std::vector<std::size_t> ns;
  std::vector<std::size_t> ks;
  std::vector<std::size_t> ms;
  std::vector<double> epss;
  std::size_t seeds = 1;
  std::uint64_t seed = 0;
  std::size_t jobs = 1;
  std::size_t group_size = 8;
  std::size_t groups = 1;
  std::string out;
  std::string summary;
};

struct Cell {
  std::string family;
  std::size_t n, k, m;
  double eps;
  std::uint64_t cell_seed;
};

struct Row {
  std::uint64_t seed = 0;
  std::string outcome;
  double bound = 0.0;
  std::uint64_t m_light = 0;
  std::uint64_t m_heavy = 0;
  double wall_ms = 0.0;
  std::string error;
};

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

Row run_one(const Cell& c, std::uint64_t run_seed, const ExperimentArgs& a, const xc_config* cfg) {
  Row row;
  row.seed = run_seed;
  const auto start = std::chrono::steady_clock::now();
  GenerateArgs g;
  g.kind = c.family;
  g.target = a.target;
  g.n = c.n;
  g.k = c.k;
  g.ell = c.k;
  g.m = c.m;
  g.seed = run_seed;
  g.graph_seed = c.cell_seed;
  g.group_size = a.group_size;
  g.groups = a.groups;
  const xc_gen_spec spec = to_spec(g);
  xc_instance* ip = nullptr;
  xc_status s = xc_generate(&spec, &ip);
  if (s != XC_OK) {
    row.outcome = "ERROR";
    row.error = xc_last_error();
    return row;
  }
  Instance inst(ip);
  xc_certificate* cp = nullptr;
  s = xc_refute(inst.get(), c.eps, cfg, run_seed, &cp);
  if (s != XC_OK) {
    row.outcome = "ERROR";
    row.error = xc_last_error();
    return row;
  }
  Certificate cert(cp);
  xc_cert_summary sum;
  xc_certificate_summary(cert.get(), &sum);
  row.outcome = sum.outcome == XC_REFUTED ? "REFUTED" : "UNKNOWN";
  row.bound = sum.certified_val_upper;
  row.m_light = sum.m_light;
  row.m_heavy = sum.m_heavy;
  row.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                    .count();
  return row;
}

int run_experiment(const ExperimentArgs& a, const ConfigArgs& cargs) {
  Config cfg = make_config(cargs);
  std::vector<Cell> cells;
  for (const auto& fam : a.families) {
    for (std::size_t n : a.ns) {
      for (std::size_t k : a.ks) {
        for (std::size_t m : a.ms) {
          for (double eps : a.epss) {
            cells.push_back({fam, n, k, m, eps, a.seed ^ static_cast<std::uint64_t>(cells.size())});
          }
        }
      }
    }
  }
  const std::size_t runs = cells.size() * a.seeds;
  std::vector<Row> rows(runs);
  std::atomic<std::size_t> next{0};
  std::mutex log_mutex;
  auto worker = [&] {
    for (std::size_t job = next++; job < runs; job = next++) {
      const Cell& c = cells[job / a.seeds];
      const std::uint64_t run_seed = c.cell_seed * 1000003ULL + job % a.seeds;
      rows[job] = run_one(c, run_seed, a, cfg.get());
      if (!rows[job].error.empty()) {
        std::lock_guard<std::mutex> lock(log_mutex);
        log("cell " + c.family + " n=" + std::to_string(c.n) + " m=" + std::to_string(c.m) +
            ": " + rows[job].error);
      }
    }
  };
  const std::size_t jobs = std::max<std::size_t>(1, std::min(a.jobs, runs));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::ostringstream csv;
  csv << kCsvHeader << '\n';
  for (std::size_t job = 0; job < runs; ++job) {
    const Cell& c = cells[job / a.seeds];
    const Row& r = rows[job];
    csv << c.family << ',' << c.n << ',' << c.k << ',' << c.m << ',' << fmt_double(c.eps) << ','
        << r.seed << ',' << r.outcome << ',' << fmt_double(r.bound) << ',' << r.m_light << ','
        << r.m_heavy << ',' << fmt_double(r.wall_ms) << '\n';
  }
  write_output(a.out, csv.str());

  if (!a.summary.empty()) {
    std::ostringstream sum;
    sum << "family,n,k_or_ell,m,eps,runs,success_rate,mean_bound,mean_m_light,mean_m_heavy,"
           "mean_wall_ms\n";
    for (std::size_t ci = 0; ci < cells.size(); ++ci) {
      const Cell& c = cells[ci];
      double ok = 0, bound = 0, ml = 0, mh = 0, wall = 0;
      for (std::size_t s = 0; s < a.seeds; ++s) {
        const Row& r = rows[ci * a.seeds + s];
        ok += r.outcome == "REFUTED";
        bound += r.bound;
        ml += static_cast<double>(r.m_light);
        mh += static_cast<double>(r.m_heavy);
        wall += r.wall_ms;
      }
      const double k = static_cast<double>(a.seeds);
      sum << c.family << ',' << c.n << ',' << c.k << ',' << c.m << ',' << fmt_double(c.eps) << ','
          << a.seeds << ',' << fmt_double(ok / k) << ',' << fmt_double(bound / k) << ','
          << fmt_double(ml / k) << ',' << fmt_double(mh / k) << ',' << fmt_double(wall / k)
          << '\n';
    }
    write_output(a.summary, sum.str());
  }
  for (const Row& r : rows) {
    if (!r.error.empty()) return kExitInputError;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Refutation certificates for semi-random k-XOR and partitioned 2-XOR"};
  app.set_version_flag("--version", std::string(xc_version()));
  app.require_subcommand(1);
  app.add_flag("--quiet", g_quiet, "Suppress log and summary output");

  GenerateArgs gen;
  auto* cmd_gen = app.add_subcommand("generate", "Generate an instance");
  cmd_gen->add_option("--kind", gen.kind, "random, semi-random, star, cluster or heavy-group")
      ->capture_default_str();
  cmd_gen->add_option("--target", gen.target, "kxor or p2xor")
      ->check(CLI::IsMember({"kxor", "p2xor"}))
      ->capture_default_str();
  cmd_gen->add_option("--n", gen.n, "Variable count")->required();
  cmd_gen->add_option("--k", gen.k, "Arity (kxor)")->capture_default_str();
  cmd_gen->add_option("--ell", gen.ell, "Part count (p2xor)");
  cmd_gen->add_option("--m", gen.m, "Constraint count")->required();
  cmd_gen->add_option("--seed", gen.seed, "Sign seed")->capture_default_str();
  cmd_gen->add_option("--graph-seed", gen.graph_seed, "Hypergraph seed")->capture_default_str();
  cmd_gen->add_option("--group-size", gen.group_size, "heavy-group: clauses per group");
  cmd_gen->add_option("--groups", gen.groups, "heavy-group: number of groups");
  cmd_gen->add_option("--cluster-size", gen.cluster_size, "cluster: vertex count (0 = default)");
  cmd_gen->add_option("-o,--out", gen.out, "Output file (stdout when absent)");

  std::string red_in, red_out;
  double red_eps = 0.0;
  auto* cmd_red = app.add_subcommand("reduce", "Reduce k-XOR to partitioned 2-XOR");
  cmd_red->add_option("--in", red_in, "k-XOR instance")->required()->check(CLI::ExistingFile);
  cmd_red->add_option("--eps", red_eps, "Accepted for symmetry with refute; unused");
  cmd_red->add_option("-o,--out", red_out, "Output file (stdout when absent)");

  std::string dec_in, dec_out;
  double dec_eps = 0.0;
  ConfigArgs dec_cfg;
  auto* cmd_dec = app.add_subcommand("decompose", "Heavy/light split of a partitioned instance");
  cmd_dec->add_option("--in", dec_in, "Partitioned instance")->required()->check(CLI::ExistingFile);
  cmd_dec->add_option("--eps", dec_eps, "Target eps")->required();
  cmd_dec->add_option("-o,--out", dec_out, "Output file (stdout when absent)");
  add_config_options(cmd_dec, dec_cfg);

  std::string ref_in, ref_out;
  double ref_eps = 0.0;
  std::uint64_t ref_seed = 0;
  ConfigArgs ref_cfg;
  auto* cmd_ref = app.add_subcommand("refute", "Certify val <= 1/2 + eps");
  cmd_ref->add_option("--in", ref_in, "Instance")->required()->check(CLI::ExistingFile);
  cmd_ref->add_option("--eps", ref_eps, "Target eps in (0, 1/2)")->required();
  cmd_ref->add_option("--seed", ref_seed, "Seed of the SDP ascent")->capture_default_str();
  cmd_ref->add_option("-o,--out", ref_out, "Certificate file (stdout when absent)");
  add_config_options(cmd_ref, ref_cfg);

  std::string ver_inst, ver_cert;
  bool ver_brute = false;
  auto* cmd_ver = app.add_subcommand("verify", "Re-check a certificate against its instance");
  cmd_ver->add_option("--inst", ver_inst, "Instance")->required()->check(CLI::ExistingFile);
  cmd_ver->add_option("--cert", ver_cert, "Certificate")->required()->check(CLI::ExistingFile);
  cmd_ver->add_flag("--brute", ver_brute, "Also compare against exhaustive val");

  ExperimentArgs exp;
  ConfigArgs exp_cfg;
  auto* cmd_exp = app.add_subcommand("experiment", "Sweep a parameter grid and write CSV");
  cmd_exp->add_option("--family", exp.families, "Generator families")->delimiter(',');
  cmd_exp->add_option("--target", exp.target, "kxor or p2xor")
      ->check(CLI::IsMember({"kxor", "p2xor"}));
  cmd_exp->add_option("--n", exp.ns, "Variable counts")->required()->delimiter(',');
  cmd_exp->add_option("--k", exp.ks, "Arities (kxor) or part counts (p2xor)")
      ->required()
      ->delimiter(',');
  cmd_exp->add_option("--m", exp.ms, "Constraint counts")->required()->delimiter(',');
  cmd_exp->add_option("--eps", exp.epss, "Target eps values")->required()->delimiter(',');
  cmd_exp->add_option("--seeds", exp.seeds, "Runs per cell")->check(CLI::PositiveNumber);
  cmd_exp->add_option("--seed", exp.seed, "Base seed; cell c uses seed xor c");
  cmd_exp->add_option("--jobs", exp.jobs, "Worker threads")->check(CLI::PositiveNumber);
  cmd_exp->add_option("--group-size", exp.group_size, "heavy-group: clauses per group");
  cmd_exp->add_option("--groups", exp.groups, "heavy-group: number of groups");
  cmd_exp->add_option("-o,--out", exp.out, "CSV output (stdout when absent)");
  cmd_exp->add_option("--summary", exp.summary, "Per-cell summary CSV");
  add_config_options(cmd_exp, exp_cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInputError;
  }

  try {
    if (*cmd_gen) return run_generate(gen);
    if (*cmd_red) return run_reduce(red_in, red_out);
    if (*cmd_dec) return run_decompose(dec_in, dec_eps, dec_cfg, dec_out);
    if (*cmd_ref) return run_refute(ref_in, ref_eps, ref_seed, ref_cfg, ref_out);
    if (*cmd_ver) return run_verify(ver_inst, ver_cert, ver_brute);
    if (*cmd_exp) return run_experiment(exp, exp_cfg);
  } catch (const CliError& e) {
    std::cerr << "xorcert: " << e.message << '\n';
    return e.code;
  }
  return kExitInputError;
}
