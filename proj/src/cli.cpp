#include "abelmoments/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "abelmoments/group_oracle.hpp"
#include "abelmoments/hall_littlewood.hpp"
#include "abelmoments/inversion.hpp"
#include "abelmoments/json_io.hpp"
#include "abelmoments/simulator.hpp"
#include "abelmoments/verify.hpp"

namespace abelmoments::cli {

namespace {

using io::json;

json read_json_source(const std::string& path, const std::string& inline_text, const char* what) {
  std::string text;
  if (!inline_text.empty()) {
    text = inline_text;
  } else if (path == "-") {
    std::ostringstream buffer;
    buffer << std::cin.rdbuf();
    text = buffer.str();
  } else if (!path.empty()) {
    std::ifstream file(path);
    if (!file) throw DomainError(std::string("cannot open ") + what + " file '" + path + "'");
    std::ostringstream buffer;
    buffer << file.rdbuf();
    text = buffer.str();
  } else {
    throw DomainError(std::string("no ") + what + " given");
  }
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw DomainError(std::string("malformed ") + what + " JSON: " + e.what());
  }
}

// Writes to --output when given, otherwise to the command's stream.
class Sink {
 public:
  Sink(std::ostream& fallback, const std::string& path) : out_(&fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw DomainError("cannot write output file '" + path + "'");
      out_ = &file_;
    }
  }
  std::ostream& stream() { return *out_; }

 private:
  std::ofstream file_;
  std::ostream* out_;
};

struct TruncationFlags {
  std::string mode;
  int cap = -1;
  std::string tolerance = "1/1000000000";
  int window = 3;
  int hard_cap = 200;

  void attach(CLI::App* app) {
    app->add_option("--mode", mode, "exact | cap | adaptive (default: exact for finite tables, cap otherwise)")
        ->check(CLI::IsMember({"exact", "cap", "adaptive"}));
    app->add_option("--cap", cap, "first-column cap for cap mode");
    app->add_option("--tolerance", tolerance, "adaptive mode: per-block tolerance as a rational");
    app->add_option("--window", window, "adaptive mode: consecutive quiet blocks required");
    app->add_option("--hard-cap", hard_cap, "adaptive mode: largest first column tried");
  }

  TruncationPolicy policy(bool finite_table) const {
    std::string chosen = mode;
    if (chosen.empty()) chosen = finite_table ? "exact" : "cap";
    if (chosen == "exact") return TruncationPolicy::exact();
    if (chosen == "cap") {
      if (cap < 0) throw DomainError("cap mode needs --cap");
      return TruncationPolicy::capped(cap);
    }
    return TruncationPolicy::adaptive_until(Rational::parse(tolerance), window, hard_cap);
  }
};

struct OutputFlags {
  std::string output;
  bool as_json = false;
  int decimal_digits = -1;

  void attach(CLI::App* app) {
    app->add_option("--output,-o", output, "write the result to this file");
    app->add_flag("--json", as_json, "print the value with its diagnostics as JSON");
    app->add_option("--decimal", decimal_digits, "also print a truncated decimal preview with this many digits");
  }

  void emit(std::ostream& out, const InversionResult& result) const {
    Sink sink(out, output);
    if (as_json) {
      json j = io::to_json(result);
      if (decimal_digits >= 0) {
        j["decimal_preview"] = {{"digits", decimal_digits}, {"value", result.value.decimal(decimal_digits)}};
      }
      sink.stream() << j.dump(2) << '\n';
      return;
    }
    sink.stream() << result.value.str() << '\n';
    if (decimal_digits >= 0) {
      sink.stream() << "decimal(" << decimal_digits << " digits, truncated): " << result.value.decimal(decimal_digits)
                    << '\n';
    }
  }
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact moment inversion for random finite abelian p-groups", "abelmoments"};
  app.require_subcommand(1);

  // sur-count
  std::string sur_lambda, sur_mu;
  long sur_p = 2;
  bool sur_brute = false;
  auto* sur = app.add_subcommand("sur-count", "print #Sur(G_lambda, G_mu)");
  sur->add_option("--lambda", sur_lambda, "source group type as a JSON array")->required();
  sur->add_option("--mu", sur_mu, "target group type as a JSON array")->required();
  sur->add_option("--p", sur_p, "prime (or residue field size)");
  sur->add_flag("--brute", sur_brute, "count by brute-force enumeration instead of the closed form");

  // moments
  std::string mom_dist, mom_dist_json, mom_mus, mom_output;
  auto* moments = app.add_subcommand("moments", "compute a moment table from a distribution file");
  moments->add_option("--dist", mom_dist, "distribution JSON file ('-' for stdin)");
  moments->add_option("--dist-json", mom_dist_json, "distribution JSON given inline");
  moments->add_option("--mu-list", mom_mus, "JSON array of partitions (default: every nonzero moment)");
  moments->add_option("--output,-o", mom_output, "write the table to this file");

  // invert / invert-fixed-level
  std::string inv_moments, inv_moments_json, inv_nu;
  int inv_level = 1;
  TruncationFlags inv_trunc;
  OutputFlags inv_out;
  auto* invert_cmd = app.add_subcommand("invert", "recover Pr(G = G_nu) from a moment table");
  auto* fixed_cmd = app.add_subcommand("invert-fixed-level", "recover Pr(G/p^d G = G_nu) from a moment table");
  for (auto* cmd : {invert_cmd, fixed_cmd}) {
    cmd->add_option("--moments", inv_moments, "moment table JSON file ('-' for stdin)");
    cmd->add_option("--moments-json", inv_moments_json, "moment table JSON given inline");
    cmd->add_option("--nu", inv_nu, "target group type as a JSON array")->required();
    inv_trunc.attach(cmd);
    inv_out.attach(cmd);
  }
  fixed_cmd->add_option("--level,-d", inv_level, "torsion level d")->required();

  // invert-multi
  std::string multi_moments, multi_moments_json, multi_nu;
  TruncationFlags multi_trunc;
  OutputFlags multi_out;
  auto* multi_cmd = app.add_subcommand("invert-multi", "recover Pr(G = G_{nu(1),...,nu(k)}(P)) from a multi-prime table");
  multi_cmd->add_option("--moments", multi_moments, "multi-prime moment table JSON file ('-' for stdin)");
  multi_cmd->add_option("--moments-json", multi_moments_json, "multi-prime moment table JSON given inline");
  multi_cmd->add_option("--nu", multi_nu, "JSON array of partitions, one per prime")->required();
  multi_trunc.attach(multi_cmd);
  multi_out.attach(multi_cmd);

  // verify
  std::vector<std::string> ver_suites;
  verify::SuiteOptions ver_options;
  std::string ver_t = "1/2", ver_q = "1/3", ver_u = "2/7", ver_alphabet = "[\"1/2\",\"1/3\"]";
  bool ver_details = false;
  auto* verify_cmd = app.add_subcommand("verify", "run identity suites and print pass counts");
  verify_cmd->add_option("--suite", ver_suites, "suite name, or 'all'")->required();
  verify_cmd->add_option("--max-size", ver_options.max_size, "largest |lambda| swept");
  verify_cmd->add_option("--t", ver_t, "parameter t");
  verify_cmd->add_option("--q", ver_q, "parameter q (Macdonald suites)");
  verify_cmd->add_option("--u", ver_u, "parameter u (specs-cancel)");
  verify_cmd->add_option("--p", ver_options.p, "prime (surjection suite)");
  verify_cmd->add_option("--alphabet", ver_alphabet, "JSON array of rationals (beta-duality)");
  verify_cmd->add_flag("--details", ver_details, "list failing cases");

  // simulate
  std::string sim_config_path, sim_output;
  sim::SimConfig sim_config;
  int sim_probe_depth = 3;
  std::string sim_gap = "1/50";
  auto* simulate = app.add_subcommand("simulate", "sample random cokernels and invert their empirical moments");
  simulate->add_option("--config", sim_config_path, "JSON config file; flags given explicitly override it");
  simulate->add_option("--p", sim_config.p, "prime");
  simulate->add_option("--d", sim_config.d, "matrices are taken over Z/p^d");
  simulate->add_option("--n", sim_config.n, "matrix dimension");
  simulate->add_option("--samples", sim_config.sample_count, "number of matrices");
  simulate->add_option("--seed", sim_config.seed, "stream seed");
  simulate->add_option("--shards", sim_config.shard_count, "number of shards (does not change the result)");
  simulate->add_option("--threads", sim_config.threads, "worker threads (default: ABELMOMENTS_THREADS or all cores)");
  simulate->add_option("--moment-cap", sim_config.moment_cap, "largest len(mu) in the empirical moment probe set");
  simulate->add_option("--probe-depth", sim_probe_depth, "invert at every nu with |nu| up to this size");
  simulate->add_option("--gap-tolerance", sim_gap, "flag rows whose gap exceeds this rational");
  simulate->add_option("--output,-o", sim_output, "write the report to this file");

  // partitions
  int part_max = -1, part_cap = -1;
  std::string part_conjugate, part_interlacing;
  auto* parts = app.add_subcommand("partitions", "partition enumeration utilities");
  parts->add_option("--max-size", part_max, "list every partition up to this size");
  parts->add_option("--conjugate", part_conjugate, "print the conjugate of a partition");
  parts->add_option("--interlacing", part_interlacing, "list mu with mu' interlacing above nu' (needs --cap)");
  parts->add_option("--cap", part_cap, "first-column cap for --interlacing");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }

  try {
    if (sur->parsed()) {
      const Partition lambda = io::parse_partition(sur_lambda);
      const Partition mu = io::parse_partition(sur_mu);
      const BigInt count =
          sur_brute ? oracle::brute_sur_count(lambda, mu, sur_p) : hl::surjection_count(lambda, mu, sur_p);
      out << count.get_str() << '\n';
      return kExitOk;
    }

    if (moments->parsed()) {
      const Distribution dist = io::distribution_from_json(read_json_source(mom_dist, mom_dist_json, "distribution"));
      MomentTable table;
      if (mom_mus.empty()) {
        table = moments_from_distribution(dist);
      } else {
        json list;
        try {
          list = json::parse(mom_mus);
        } catch (const json::exception&) {
          throw DomainError("--mu-list must be a JSON array of partitions");
        }
        std::vector<Partition> mus;
        for (const json& p : list) mus.push_back(io::partition_from_json(p));
        table = moments_from_distribution(dist, mus);
      }
      Sink sink(out, mom_output);
      sink.stream() << io::to_json(table).dump(2) << '\n';
      return kExitOk;
    }

    if (invert_cmd->parsed() || fixed_cmd->parsed()) {
      const MomentTable table =
          io::moment_table_from_json(read_json_source(inv_moments, inv_moments_json, "moment table"));
      const Partition nu = io::parse_partition(inv_nu);
      const TruncationPolicy policy = inv_trunc.policy(table.finite());
      const InversionResult result = invert_cmd->parsed() ? invert(table, nu, policy)
                                                          : invert_fixed_level(table, nu, inv_level, policy);
      inv_out.emit(out, result);
      return kExitOk;
    }

    if (multi_cmd->parsed()) {
      const MultiMomentTable table =
          io::multi_moment_table_from_json(read_json_source(multi_moments, multi_moments_json, "moment table"));
      json nu_json;
      try {
        nu_json = json::parse(multi_nu);
      } catch (const json::exception&) {
        throw DomainError("--nu must be a JSON array of partitions such as [[1],[1]]");
      }
      if (!nu_json.is_array()) throw DomainError("--nu must be a JSON array of partitions");
      PartitionTuple nus;
      for (const json& p : nu_json) nus.push_back(io::partition_from_json(p));
      multi_out.emit(out, invert_multi(table, nus, multi_trunc.policy(table.finite())));
      return kExitOk;
    }

    if (verify_cmd->parsed()) {
      ver_options.t = Rational::parse(ver_t);
      ver_options.q = Rational::parse(ver_q);
      ver_options.u = Rational::parse(ver_u);
      ver_options.alphabet.clear();
      json alphabet;
      try {
        alphabet = json::parse(ver_alphabet);
      } catch (const json::exception&) {
        throw DomainError("--alphabet must be a JSON array of rationals");
      }
      for (const json& c : alphabet) ver_options.alphabet.push_back(io::rational_from_json(c));
      std::vector<std::string> names = ver_suites;
      if (names.size() == 1 && names.front() == "all") names = verify::suite_names();
      bool all_ok = true;
      for (const std::string& name : names) {
        const verify::SuiteResult result = verify::run_suite(name, ver_options);
        out << name << ": passed " << result.passed << "/" << result.total << '\n';
        if (ver_details) {
          for (const auto& f : result.failures) out << "  FAIL " << f.first << " " << f.second << ": " << f.detail << '\n';
        }
        all_ok = all_ok && result.ok();
      }
      return all_ok ? kExitOk : kExitError;
    }

    if (simulate->parsed()) {
      sim::SimConfig config = sim_config;
      if (!sim_config_path.empty()) {
        config = io::sim_config_from_json(read_json_source(sim_config_path, "", "simulation config"));
        // Flags given on the command line win over the file.
        for (const auto& [flag, apply] : std::vector<std::pair<std::string, std::function<void()>>>{
                 {"--p", [&] { config.p = sim_config.p; }},
                 {"--d", [&] { config.d = sim_config.d; }},
                 {"--n", [&] { config.n = sim_config.n; }},
                 {"--samples", [&] { config.sample_count = sim_config.sample_count; }},
                 {"--seed", [&] { config.seed = sim_config.seed; }},
                 {"--shards", [&] { config.shard_count = sim_config.shard_count; }},
                 {"--threads", [&] { config.threads = sim_config.threads; }},
                 {"--moment-cap", [&] { config.moment_cap = sim_config.moment_cap; }}}) {
          if (simulate->count(flag) > 0) apply();
        }
      }
      const sim::ClosedLoopReport report = sim::closed_loop_report(config, sim_probe_depth, Rational::parse(sim_gap));
      Sink sink(out, sim_output);
      sink.stream() << io::to_json(report).dump(2) << '\n';
      return kExitOk;
    }

    if (parts->parsed()) {
      json result = json::array();
      if (part_max >= 0) {
        for (const Partition& p : enumerate_up_to(part_max)) result.push_back(io::to_json(p));
      } else if (!part_conjugate.empty()) {
        result = io::to_json(io::parse_partition(part_conjugate).conjugate());
      } else if (!part_interlacing.empty()) {
        if (part_cap < 0) throw DomainError("--interlacing needs --cap");
        for (const Partition& p : enumerate_conjugate_interlacing(io::parse_partition(part_interlacing), part_cap)) {
          result.push_back(io::to_json(p));
        }
      } else {
        throw DomainError("partitions needs one of --max-size, --conjugate, --interlacing");
      }
      out << result.dump() << '\n';
      return kExitOk;
    }
  } catch (const NonConvergence& e) {
    err << "non-convergence: " << e.what() << '\n';
    out << io::json{{"converged", false}, {"diagnostics", io::to_json(e.diagnostics())}}.dump(2) << '\n';
    return kExitNonConvergence;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}

}  // namespace abelmoments::cli
