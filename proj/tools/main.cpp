#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "experiments.hpp"
#include "reclab/errors.hpp"

namespace {

using namespace reclab;
using namespace reclab::cli;

int resolve_threads(int flag_value) {
  if (flag_value > 0) return flag_value;
  if (const char* env = std::getenv("RECLAB_THREADS")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  return 1;
}

void write_atomic(const std::string& path, const std::string& content) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp);
    out << content;
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::runtime_error("cannot rename " + tmp + " to " + path);
}

void write_window_csv(const std::string& path, const Json& window) {
  std::string csv = "n\n";
  for (const auto& v : window.at("members"))
    csv += std::to_string(v.get<std::int64_t>()) + "\n";
  write_atomic(path, csv);
}

int cmd_run(const std::string& config_path, const std::string& out_path,
            const std::string& csv_path, bool require_witness, bool strict_precision,
            int threads) {
  ConfigNode config;
  try {
    config = parse_config_file(config_path);
    config.get("experiment");
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }
  RunOutcome res;
  try {
    res = run_experiment(config, resolve_threads(threads));
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }
  std::string dump = res.report.dump(2);
  if (out_path.empty()) {
    std::cout << dump << "\n";
  } else {
    write_atomic(out_path, dump + "\n");
  }
  if (!csv_path.empty()) {
    const Json& outcome = res.report.at("outcome");
    if (outcome.contains("window"))
      write_window_csv(csv_path, outcome.at("window"));
    else if (outcome.contains("definite"))
      write_window_csv(csv_path, outcome.at("definite"));
    else
      std::cerr << "note: this experiment kind has no window to flatten\n";
  }
  if (res.precision_exhausted) {
    std::cerr << "precision exhaustion reported in payload\n";
    if (strict_precision) return 1;
  }
  if (require_witness && res.witness_missing) return 1;
  return 0;
}

int cmd_verify(const std::string& report_path) {
  Json report;
  try {
    std::ifstream in(report_path);
    if (!in) throw std::runtime_error("cannot read " + report_path);
    in >> report;
  } catch (const std::exception& e) {
    std::cerr << "verify: " << e.what() << "\n";
    return 1;
  }
  VerifyOutcome out = verify_report(report);
  if (!out.ok) {
    std::cerr << "verify FAILED: " << out.first_failure << "\n";
    return 1;
  }
  std::cout << "verify OK: " << report.value("canonical_hash", std::string("?")) << "\n";
  return 0;
}

int cmd_gen(const std::string& kind, const std::string& p, int d, std::int64_t q,
            std::int64_t r, const std::string& members, const std::string& window,
            const std::string& out_path) {
  try {
    ConfigNode set;
    set.values["kind"] = kind;
    if (kind == "fs" || kind == "sg") set.values["p"] = p;
    if (kind == "sg") set.values["d"] = std::to_string(d);
    if (kind == "ap") {
      set.values["modulus"] = std::to_string(q);
      set.values["residue"] = std::to_string(r);
    }
    if (kind == "explicit") {
      set.values["members"] = members;
      set.values["window"] = window;
    }
    auto [lo, hi] = parse_range(window);
    auto w = eval_window(build_descriptor(set), lo, hi);
    std::string csv = "n\n";
    for (auto v : w.members()) csv += std::to_string(v) + "\n";
    if (out_path.empty())
      std::cout << csv;
    else
      write_atomic(out_path, csv);
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "gen error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"recurrence-set laboratory: windowed generators, return-time sets and witness searches"};
  app.require_subcommand(1);

  std::string config_path, out_path, csv_path, report_path;
  bool require_witness = false, strict_precision = false;
  int threads = 0;

  auto* run = app.add_subcommand("run", "run one experiment config and emit a report");
  run->add_option("config", config_path, "experiment config file")->required();
  run->add_option("-o,--output", out_path, "report path (stdout when omitted)");
  run->add_option("--csv", csv_path, "flatten the resulting window to CSV");
  run->add_flag("--require-witness", require_witness,
                "exit 1 when the search comes back empty");
  run->add_flag("--strict-precision", strict_precision,
                "exit 1 on precision exhaustion");
  run->add_option("--threads", threads, "worker threads (RECLAB_THREADS also honored)");

  auto* verify = app.add_subcommand("verify", "recheck every certificate in a report");
  verify->add_option("report", report_path, "report file")->required();

  std::string gen_kind = "sg", gen_p = "1,2,4", gen_members, gen_window = "0:100";
  int gen_d = 1;
  std::int64_t gen_q = 1, gen_r = 0;
  auto* gen = app.add_subcommand("gen", "generate one set and dump it as CSV");
  gen->add_option("--kind", gen_kind, "fs | sg | ap | explicit")->required();
  gen->add_option("--p", gen_p, "sequence: terms or super-lacunary:s,k,n or geometric:f,r,n");
  gen->add_option("--d", gen_d, "gap parameter for sg");
  gen->add_option("--q", gen_q, "modulus for ap");
  gen->add_option("--r", gen_r, "residue for ap");
  gen->add_option("--members", gen_members, "explicit member list");
  gen->add_option("--window", gen_window, "evaluation window lo:hi")->required();
  gen->add_option("-o,--output", out_path, "CSV path (stdout when omitted)");

  CLI11_PARSE(app, argc, argv);

  if (run->parsed())
    return cmd_run(config_path, out_path, csv_path, require_witness, strict_precision,
                   threads);
  if (verify->parsed()) return cmd_verify(report_path);
  if (gen->parsed())
    return cmd_gen(gen_kind, gen_p, gen_d, gen_q, gen_r, gen_members, gen_window,
                   out_path);
  return 2;
}
